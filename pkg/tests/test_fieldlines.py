import math

import numpy as np
import pytest

from supergauss import PlanePoint, QuadratureSpec, closed_form_gaussian
from supergauss.errors import NotAZeroError
from supergauss.fieldlines import (
    FieldLine,
    I_LINE,
    R_LINE,
    asymptote_curves,
    asymptote_w,
    crossing_gradient,
    extract_field_lines,
    intersection_audit,
    refine_field_line,
    sample_field_grid,
)
from supergauss.zeros import ZeroRecord

Q = QuadratureSpec(tol=1e-9)


@pytest.fixture(scope="module")
def grid_n1():
    return sample_field_grid(1, (0.5, 4.0), (0.2, 6.5), (90, 120), Q)


@pytest.fixture(scope="module")
def lines_n1(grid_n1):
    r = [refine_field_line(1, l, Q) for l in extract_field_lines(grid_n1, R_LINE)]
    i = [refine_field_line(1, l, Q) for l in extract_field_lines(grid_n1, I_LINE)]
    return r, i


def test_grid_matches_closed_form(grid_n1):
    for ii in (0, 45, 89):
        for jj in (0, 60, 119):
            want = closed_form_gaussian(PlanePoint(float(grid_n1.w_axis[jj]),
                                                   float(grid_n1.sigma_axis[ii])))
            got = complex(grid_n1.re[ii, jj], grid_n1.im[ii, jj])
            assert abs(got - want.value) <= grid_n1.err[ii, jj]


def test_grid_realness_on_axis():
    g = sample_field_grid(2, (0.0, 1.0), (0.0, 3.0), (5, 7), Q)
    assert (np.abs(g.im[0]) <= g.err[0]).all()


def test_grid_reflection_symmetry():
    g = sample_field_grid(2, (0.3, 1.0), (-2.0, 2.0), (4, 9), Q)
    # w -> -w mirrors R and negates I
    assert np.allclose(g.re, g.re[:, ::-1], atol=1e-8)
    assert np.allclose(g.im, -g.im[:, ::-1], atol=1e-8)


def test_gaussian_r_lines_follow_hyperbolas(lines_n1):
    r_lines, _ = lines_n1
    assert len(r_lines) >= 3
    for line in r_lines:
        assert line.max_residual <= Q.tol
        for p in line.points:
            k = p.w * p.sigma / math.pi
            assert abs(k - (2 * round((k - 1) / 2) + 1)) < 1e-5


def test_gaussian_i_lines_follow_even_hyperbolas(lines_n1):
    _, i_lines = lines_n1
    for line in i_lines:
        for p in line.points:
            k = p.w * p.sigma / math.pi
            assert abs(k - 2 * round(k / 2)) < 1e-5


def test_i_lines_include_axes():
    g = sample_field_grid(2, (0.0, 2.0), (-1.0, 3.0), (12, 16), Q)
    lines = extract_field_lines(g, I_LINE)
    has_w_axis = any(all(p.w == 0.0 for p in l.points) for l in lines)
    has_sigma_axis = any(all(p.sigma == 0.0 for p in l.points) for l in lines)
    assert has_w_axis and has_sigma_axis


def test_r_lines_cross_axis_at_zeros(scanned_zeros_n2):
    g = sample_field_grid(2, (0.0, 1.5), (2.0, 11.0), (40, 160), Q)
    lines = [refine_field_line(2, l, Q) for l in extract_field_lines(g, R_LINE)]
    # every line that reaches the bottom rows must pass near some zero
    axis_zeros = [r.alpha for r in scanned_zeros_n2]
    reached = []
    for line in lines:
        low = min(line.points, key=lambda p: p.sigma)
        if low.sigma < 0.1:
            nearest = min(axis_zeros, key=lambda a: abs(a - low.w))
            assert abs(nearest - low.w) < 0.05
            reached.append(nearest)
    assert len(set(round(a, 3) for a in reached)) >= 3


def test_refinement_residuals(lines_n1):
    r_lines, i_lines = lines_n1
    for line in r_lines + i_lines:
        assert line.max_residual <= Q.tol


def test_asymptote_samples():
    curves = asymptote_curves(2, [0, 1], [4.0, 8.0, 16.0])
    assert asymptote_w(2, 0, 4.0) == pytest.approx(math.pi / 2)
    assert asymptote_w(2, 1, 4.0) == pytest.approx(3 * math.pi / 2)
    for c in curves:
        ws = [p.w for p in c.samples]
        assert all(b < a for a, b in zip(ws, ws[1:]))


def test_asymptote_validation():
    with pytest.raises(ValueError):
        asymptote_curves(2, [0], [0.0, 1.0])


def test_crossing_gradient_small_at_zeros(scanned_zeros_n2):
    for rec in scanned_zeros_n2[:5]:
        assert abs(crossing_gradient(2, rec, Q)) <= 1e-3


def test_crossing_gradient_rejects_non_zero():
    fake = ZeroRecord(n=2, index=1, alpha=1.234, f_prime=1.0, residual=0.0)
    with pytest.raises(NotAZeroError):
        crossing_gradient(2, fake, Q)
    with pytest.raises(NotAZeroError):
        # no zeros exist for the Gaussian kernel: any candidate fails
        crossing_gradient(1, ZeroRecord(n=1, index=1, alpha=2.0, f_prime=1.0,
                                        residual=0.0), Q)


def test_intersection_audit_empty_off_axis(lines_n1):
    r_lines, i_lines = lines_n1
    hits = intersection_audit(r_lines, i_lines, 1e-4)
    assert hits == []


def test_intersection_audit_emptiness_trivia():
    assert intersection_audit([], [], 1.0) == []


def test_intersection_audit_detects_contact():
    a = [FieldLine(which=R_LINE, points=(PlanePoint(0.0, 0.0), PlanePoint(1.0, 1.0)),
                   max_residual=0.0)]
    b = [FieldLine(which=I_LINE, points=(PlanePoint(1.0, 0.0), PlanePoint(0.0, 1.0)),
                   max_residual=0.0)]
    hits = intersection_audit(a, b, 1e-6)
    assert len(hits) == 1
    assert hits[0].w == pytest.approx(0.5, abs=1e-6)
    assert hits[0].sigma == pytest.approx(0.5, abs=1e-6)


def test_same_family_lines_never_meet(lines_n1):
    r_lines, _ = lines_n1
    for i in range(len(r_lines)):
        for j in range(i + 1, len(r_lines)):
            assert intersection_audit([r_lines[i]], [r_lines[j]], 1e-4) == []


def test_newton_stall_surfaces_loudly(monkeypatch):
    # a vanishing off-axis gradient contradicts the zero geometry; force one
    from supergauss import fieldlines as fl
    from supergauss.errors import NewtonStallError
    from supergauss.transform import EvalResult

    monkeypatch.setattr(fl, "_gradient", lambda n, which, p, q: (0.0, 0.0, 0.0))
    line = FieldLine(which=R_LINE,
                     points=(PlanePoint(3.0, 1.0), PlanePoint(3.1, 1.1)))
    with pytest.raises(NewtonStallError):
        refine_field_line(2, line, Q)


def test_saddle_cells_disambiguated_by_center_sign(monkeypatch):
    # force a diagonal sign pattern in one cell and steer the center sample:
    # the chosen segment pairing must separate the corners the center joins
    from supergauss import fieldlines as fl
    from supergauss.transform import EvalResult

    g = fl.GridField(
        n=2,
        sigma_axis=np.array([0.0, 1.0]),
        w_axis=np.array([0.0, 1.0]),
        re=np.array([[1.0, -1.0], [-1.0, 1.0]]),   # corners c0,c2 positive
        im=np.zeros((2, 2)),
        err=np.zeros((2, 2)),
        q=Q,
    )
    pairings = {}
    for center_val in (1.0, -1.0):
        monkeypatch.setattr(fl, "eval_transform",
                            lambda n, p, q, _v=center_val: EvalResult(_v, 0.0, 0.0))
        lines = fl.extract_field_lines(g, R_LINE)
        assert len(lines) == 2
        pts = [tuple(sorted((p.sigma, p.w) for p in l.points)) for l in lines]
        assert set(pts[0]).isdisjoint(set(pts[1]))
        pairings[center_val] = frozenset(pts)
    # the center sample decides which corners connect: pairings must differ
    assert pairings[1.0] != pairings[-1.0]


def test_refinement_gradient_components_match_derivative():
    # R_sigma + i I_sigma must equal -i F' against an independent finite difference
    from supergauss import eval_transform
    p = PlanePoint(1.2, 0.8)
    h = 1e-5
    up = eval_transform(2, PlanePoint(p.w, p.sigma + h), Q)
    dn = eval_transform(2, PlanePoint(p.w, p.sigma - h), Q)
    from supergauss.fieldlines import _gradient
    r_sigma, r_w, _ = _gradient(2, R_LINE, p, Q)
    i_sigma, i_w, _ = _gradient(2, I_LINE, p, Q)
    assert r_sigma == pytest.approx((up.re - dn.re) / (2 * h), abs=1e-7)
    assert i_sigma == pytest.approx((up.im - dn.im) / (2 * h), abs=1e-7)
