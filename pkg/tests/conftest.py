import csv
import pathlib

import pytest

from supergauss import QuadratureSpec
from supergauss.zeros import extended_zero_pool, scan_real_zeros

DATA = pathlib.Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def golden_zeros():
    """Oracle-pinned zeros of the quartic-kernel transform (index, alpha, f')."""
    with (DATA / "f4_zero_goldens.csv").open() as fh:
        return [(int(r["index"]), float(r["alpha"]), float(r["f_prime"]))
                for r in csv.DictReader(fh)]


@pytest.fixture(scope="session")
def scanned_zeros_n2():
    """First 10 zeros certified live by the scanner (shared across tests)."""
    return scan_real_zeros(2, 26.5, QuadratureSpec(tol=1e-10))


@pytest.fixture(scope="session")
def zero_pool_40():
    return extended_zero_pool(2, 40)
