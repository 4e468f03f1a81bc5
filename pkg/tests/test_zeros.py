import pytest
from hypothesis import given, settings, strategies as st

from supergauss import PlanePoint, QuadratureSpec, eval_derivative
from supergauss.errors import NotAZeroError, SimplicityIndeterminateError
from supergauss.zeros import (
    ZeroRecord,
    extended_zero_pool,
    log_derivative_lhs,
    ode_residual,
    ode_residual_budget,
    ode_residual_pair,
    scan_real_zeros,
    verify_simplicity,
    zero_pair_partial_sums,
)

Q = QuadratureSpec(tol=1e-10)


def test_gaussian_kernel_has_no_zeros():
    assert scan_real_zeros(1, 20.0, Q) == []


def test_scan_matches_goldens(scanned_zeros_n2, golden_zeros):
    assert len(scanned_zeros_n2) == 10
    for rec, (idx, alpha, fp) in zip(scanned_zeros_n2, golden_zeros):
        assert rec.index == idx
        assert rec.alpha == pytest.approx(alpha, abs=1e-8)
        assert rec.f_prime == pytest.approx(fp, rel=1e-5)
        assert rec.residual <= 1e-9


def test_zeros_strictly_increasing_no_duplicates(scanned_zeros_n2):
    alphas = [r.alpha for r in scanned_zeros_n2]
    assert all(b - a > 1e-6 for a, b in zip(alphas, alphas[1:]))


def test_sign_flips_across_each_zero(scanned_zeros_n2):
    from supergauss import eval_transform
    for rec in scanned_zeros_n2:
        lo = eval_transform(2, PlanePoint(rec.alpha - 1e-4, 0.0), Q).re
        hi = eval_transform(2, PlanePoint(rec.alpha + 1e-4, 0.0), Q).re
        assert (lo < 0) != (hi < 0)


def test_simplicity_certified(scanned_zeros_n2):
    for rec in scanned_zeros_n2:
        rep = verify_simplicity(2, rec, Q)
        assert rep.derivative_magnitude > 0


def test_mirrored_zero_has_negated_derivative(scanned_zeros_n2):
    rec = scanned_zeros_n2[0]
    d_pos = eval_derivative(2, 1, PlanePoint(rec.alpha, 0.0), Q)
    d_neg = eval_derivative(2, 1, PlanePoint(-rec.alpha, 0.0), Q)
    assert d_neg.re == pytest.approx(-d_pos.re, abs=4 * (d_pos.err_estimate + d_neg.err_estimate))


def test_not_a_zero_rejected():
    fake = ZeroRecord(n=2, index=1, alpha=2.0, f_prime=1.0, residual=0.0)
    with pytest.raises(NotAZeroError):
        verify_simplicity(2, fake, Q)


def test_wrong_kernel_rejected(scanned_zeros_n2):
    with pytest.raises(NotAZeroError):
        verify_simplicity(3, scanned_zeros_n2[0], Q)


def test_deep_zeros_need_the_oracle_pool():
    # float64 cannot resolve the sign beyond ~alpha_17; the scan stops honestly
    recs = scan_real_zeros(2, 50.0, QuadratureSpec(tol=1e-12))
    assert 15 <= len(recs) <= 20


def test_extended_pool_agrees_with_scan(scanned_zeros_n2, zero_pool_40):
    assert len(zero_pool_40) == 40
    for rec, pooled in zip(scanned_zeros_n2, zero_pool_40):
        assert rec.alpha == pytest.approx(pooled.alpha, abs=1e-8)
    alphas = [r.alpha for r in zero_pool_40]
    assert all(b > a for a, b in zip(alphas, alphas[1:]))


def test_extended_pool_only_quartic():
    with pytest.raises(ValueError):
        extended_zero_pool(3, 10)


def test_ode_identity_gaussian():
    # the n = 1 kernel satisfies F' = -(w/2) F exactly
    for w in (0.4, 1.3, 2.5):
        r = ode_residual(1, w, Q)
        b, _ = ode_residual_budget(1, w, Q)
        assert r <= b


def test_ode_identity_trivial_at_origin():
    r1, r2 = ode_residual_pair(2, 0.0, Q)
    assert r1 <= 1e-12


@settings(max_examples=20, deadline=None)
@given(w=st.floats(0.1, 6.0), n=st.sampled_from([2, 3]))
def test_ode_residuals_within_budget(w, n):
    r1, r2 = ode_residual_pair(n, w, Q)
    b1, b2 = ode_residual_budget(n, w, Q)
    assert r1 <= b1 and r2 <= b2


def test_log_derivative_rejects_zeros(scanned_zeros_n2):
    with pytest.raises(NotAZeroError):
        log_derivative_lhs(2, scanned_zeros_n2[0].alpha, Q)


def test_partial_sums_monotone_and_below_lhs(zero_pool_40):
    alphas = [r.alpha for r in zero_pool_40]
    for w in (0.5, 5.0):
        lhs, lhs_err = log_derivative_lhs(2, w, QuadratureSpec(tol=1e-12))
        sums = zero_pair_partial_sums(w, alphas)
        assert all(b > a for a, b in zip(sums, sums[1:]))
        assert all(s <= lhs + lhs_err for s in sums)


def test_zero_record_invariants():
    with pytest.raises(ValueError):
        ZeroRecord(n=2, index=1, alpha=-1.0, f_prime=1.0, residual=0.0)
    with pytest.raises(ValueError):
        ZeroRecord(n=2, index=0, alpha=1.0, f_prime=1.0, residual=0.0)
    with pytest.raises(ValueError):
        ZeroRecord(n=2, index=1, alpha=1.0, f_prime=0.0, residual=0.0)


def test_simplicity_indeterminate_below_noise_floor(zero_pool_40):
    # |F'| at the 30th zero is ~1e-26, far below what float64 quadrature can
    # distinguish from zero: the check must refuse loudly, not certify
    with pytest.raises(SimplicityIndeterminateError):
        verify_simplicity(2, zero_pool_40[29], QuadratureSpec(tol=1e-12))


def test_bracket_with_two_crossings_is_suspicious():
    from supergauss.errors import SuspiciousBracketError
    from supergauss.zeros import _confirm_single_crossing

    # (3, 7.5) straddles both alpha_1 and alpha_2: a scan bracket this wide
    # must be flagged rather than silently refined to one root
    with pytest.raises(SuspiciousBracketError):
        _confirm_single_crossing(2, 3.0, 7.5, Q)
    _confirm_single_crossing(2, 3.0, 4.0, Q)  # single crossing is fine
