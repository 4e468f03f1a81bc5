"""Zero-table persistence: cache files, atomic writes, round-trip format.

The on-disk format is one CSV per (n, tol) key with the fixed header
``n,index,alpha,f_prime,residual`` and ascending indices.  Floats are written
with repr (shortest round-trip decimal, at most 17 significant digits), so
emit -> parse -> emit is byte-identical.  The cache directory defaults to
~/.cache/supergauss and is overridden by the POLYA_CACHE_DIR environment
variable.  All writes go through a temp file and an atomic rename.
"""

from __future__ import annotations

import csv
import io
import os
import tempfile
from pathlib import Path

from .transform import QuadratureSpec
from .zeros import ZeroRecord, scan_real_zeros

CACHE_ENV = "POLYA_CACHE_DIR"
HEADER = ["n", "index", "alpha", "f_prime", "residual"]


def cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "supergauss"


def zero_cache_path(n: int, tol: float) -> Path:
    return cache_dir() / f"zeros_n{n}_tol{tol!r}.csv"


def format_zero_cache(records: list[ZeroRecord]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(HEADER)
    for r in records:
        writer.writerow([r.n, r.index, repr(r.alpha), repr(r.f_prime), repr(r.residual)])
    return buf.getvalue()


def parse_zero_cache(text: str) -> list[ZeroRecord]:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or rows[0] != HEADER:
        raise ValueError(f"zero cache header must be {','.join(HEADER)}")
    records = []
    for row in rows[1:]:
        if not row:
            continue
        records.append(ZeroRecord(n=int(row[0]), index=int(row[1]),
                                  alpha=float(row[2]), f_prime=float(row[3]),
                                  residual=float(row[4])))
    for a, b in zip(records, records[1:]):
        if b.index != a.index + 1:
            raise ValueError("zero cache indices must be ascending without gaps")
    return records


def atomic_write_text(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_zero_cache(path: Path, records: list[ZeroRecord]) -> None:
    atomic_write_text(Path(path), format_zero_cache(records))


def read_zero_cache(path: Path) -> list[ZeroRecord]:
    return parse_zero_cache(Path(path).read_text())


def cached_zeros(n: int, w_max: float, q: QuadratureSpec) -> list[ZeroRecord]:
    """Zeros up to w_max, reusing the per-(n, tol) cache when it covers them.

    A cached table is reused when its coverage (last zero plus twice the
    local spacing) reaches w_max; otherwise the range is rescanned and the
    cache rewritten.  Stale tolerances land in a different file entirely.
    """
    path = zero_cache_path(n, q.tol)
    if path.exists():
        records = read_zero_cache(path)
        if records:
            alphas = [r.alpha for r in records]
            spacing = (alphas[-1] - alphas[-2]) if len(alphas) > 1 else alphas[-1]
            if alphas[-1] + 2 * spacing >= w_max:
                return [r for r in records if r.alpha <= w_max]
    records = scan_real_zeros(n, w_max, q)
    write_zero_cache(path, records)
    return records
