"""Series coefficients of the squared modulus, two independent ways.

L^2 = |F(w - i*sigma)|^2 expands as (1/2) sum over even powers sigma^(2m)/(2m)!
times a coefficient that depends only on w.  The coefficient is computed

  * by the Leibniz route: 2 (-1)^m sum_k C(2m,k) F^(k)(w) F^(2m-k)(-w),
    reduced by evenness to a signed binomial sum over derivatives at w; and
  * by a direct two-dimensional quadrature of the defining double integral,
    as an independent cross-check on a small domain.

Both are nonnegative within numerical error for every m and w when n >= 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .transform import (
    EvalResult,
    PlanePoint,
    QuadratureSpec,
    _gl_rule,
    check_kernel_index,
    eval_derivative,
    eval_transform,
    magnitude_scale,
    moment_scale,
)

_EPS = float(np.finfo(np.float64).eps)

LEIBNIZ_M_CAP = 8
DIRECT_M_CAP = 3
DIRECT_W_CAP = 8.0

_METHODS = ("leibniz", "direct2d")


@dataclass(frozen=True)
class ACoeffSample:
    """One series coefficient sample; value >= -err_estimate is the Lemma-1
    invariant checked by the verify suite."""

    n: int
    m: int
    w: float
    value: float
    method: str
    err_estimate: float
    alarm: bool = False

    def __post_init__(self):
        if self.method not in _METHODS:
            raise ValueError(f"method must be one of {_METHODS}, got {self.method!r}")
        if self.m < 0:
            raise ValueError(f"m must be >= 0, got {self.m}")


def derivative_profile(n: int, w: float, k_max: int, q: QuadratureSpec) -> list[EvalResult]:
    """F^(k)(w) on the axis for k = 0..k_max (each its own quadrature).

    Each order's tolerance is scaled by the analytic peak of its integrand,
    so requesting tol means tol relative to that moment's natural size.
    """
    p = PlanePoint(w, 0.0)
    return [eval_derivative(n, k, p, q.scaled(moment_scale(n, 0.0, k)),
                            k_cap=max(k_max, 16))
            for k in range(k_max + 1)]


def _leibniz_from_profile(n: int, m: int, w: float,
                          profile: list[EvalResult]) -> ACoeffSample:
    # F^(j)(-w) = (-1)^j F^(j)(w); on the axis the values are real
    total = 0.0
    comp = 0.0
    err = 0.0
    for k in range(2 * m + 1):
        sign = -1.0 if k % 2 else 1.0
        binom = math.comb(2 * m, k)
        fk, f2 = profile[k], profile[2 * m - k]
        term = sign * binom * fk.re * f2.re
        err += binom * (abs(fk.re) * f2.err_estimate
                        + abs(f2.re) * fk.err_estimate
                        + fk.err_estimate * f2.err_estimate)
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
    msign = -1.0 if m % 2 else 1.0
    value = 2.0 * msign * total
    err = 2.0 * err + 4.0 * _EPS * abs(value) * (2 * m + 1)
    alarm = err > 1e-3 * abs(value) + 1e-12
    return ACoeffSample(n=n, m=m, w=w, value=value, method="leibniz",
                        err_estimate=err, alarm=alarm)


def a_coeff(n: int, m: int, w: float, q: QuadratureSpec,
            m_cap: int = LEIBNIZ_M_CAP) -> ACoeffSample:
    """Coefficient by the Leibniz derivative route.

    The binomial sum cancels more strongly as m grows; the cap defaults to 8,
    and raising it only makes sense together with a tightened q.tol (the
    per-derivative tolerance is divided by 4^(m - 8) beyond the default cap).
    """
    n = check_kernel_index(n)
    if m > m_cap:
        raise ValueError(f"m={m} above cap {m_cap}")
    qd = q if m <= LEIBNIZ_M_CAP else q.scaled(0.25 ** (m - LEIBNIZ_M_CAP))
    profile = derivative_profile(n, w, 2 * m, qd)
    return _leibniz_from_profile(n, m, w, profile)


def a_coeff_sweep(n: int, m_list: list[int], w: float, q: QuadratureSpec,
                  m_cap: int = LEIBNIZ_M_CAP) -> list[ACoeffSample]:
    """Leibniz coefficients for several m at one w, sharing the derivatives."""
    n = check_kernel_index(n)
    if max(m_list) > m_cap:
        raise ValueError(f"max m {max(m_list)} above cap {m_cap}")
    profile = derivative_profile(n, w, 2 * max(m_list), q)
    return [_leibniz_from_profile(n, m, w, profile) for m in m_list]


def _direct_radius(n: int, m: int, tol: float) -> float:
    # Tail of the rotated double integral: outside |t|,|X| <= 2Y the exponent
    # obeys u^(2n) + v^(2n) >= 2 (s/2)^(2n) on s = |u|+|v| >= 2Y, so the tail
    # is below 8 * 2^(2m+2) * int_Y^inf y^(2m+1) exp(-2 y^(2n)) dy.
    pref = 8.0 * 2.0 ** (2 * m + 2)
    qmom = 2 * m + 1
    y = 1.5
    for _ in range(400):
        gp = -4 * n * y ** (2 * n - 1) + qmom / y
        if gp < 0:
            g = -2.0 * y ** (2 * n) + qmom * math.log(y)
            if pref * math.exp(g) / (-gp) <= tol:
                return 2.0 * y
        y *= 1.05
    raise ArithmeticError("2-D truncation radius search diverged")


def _composite_nodes(T: float, width_cap: float, order: int):
    count = max(2, int(math.ceil(2.0 * T / width_cap)))
    edges = np.linspace(-T, T, count + 1)
    x, gw = _gl_rule(order)
    centers = 0.5 * (edges[:-1] + edges[1:])
    halves = 0.5 * (edges[1:] - edges[:-1])
    nodes = (centers[:, None] + halves[:, None] * x[None, :]).ravel()
    weights = (halves[:, None] * gw[None, :]).ravel()
    return nodes, weights


def a_coeff_direct(n: int, m: int, w: float, q2d: QuadratureSpec) -> ACoeffSample:
    """Coefficient by tensor-product quadrature of the double integral.

    Desk-scale cross-check: m <= 3 and |w| <= 8.  The imaginary part must
    vanish by X -> -X symmetry; its magnitude is folded into the error
    estimate as a diagnostic.
    """
    n = check_kernel_index(n)
    if m > DIRECT_M_CAP:
        raise ValueError(f"direct route capped at m <= {DIRECT_M_CAP}, got {m}")
    if abs(w) > DIRECT_W_CAP:
        raise ValueError(f"direct route capped at |w| <= {DIRECT_W_CAP}, got {w}")
    tol_tail = 0.5 * q2d.tol
    T = _direct_radius(n, m, tol_tail)
    xcap = min(0.5, math.pi / max(abs(w), 1e-30))

    def rule(order):
        tn, tw = _composite_nodes(T, 0.5, order)
        xn, xw = _composite_nodes(T, xcap, order)
        expo = -(((tn[:, None] + xn[None, :]) / 2) ** (2 * n)) \
               - (((tn[:, None] - xn[None, :]) / 2) ** (2 * n))
        E = np.exp(expo)
        left = tw * tn ** (2 * m)
        re = left @ E @ (xw * np.cos(w * xn))
        im = left @ E @ (xw * np.sin(w * xn))
        floor = float(np.abs(left) @ E @ np.abs(xw))
        return float(re), float(im), floor

    re1, im1, _ = rule(q2d.panel_order)
    re2, im2, floor = rule(2 * q2d.panel_order)
    err = math.hypot(re1 - re2, im1 - im2) + tol_tail + 8.0 * _EPS * floor + abs(im2)
    return ACoeffSample(n=n, m=m, w=w, value=re2, method="direct2d",
                        err_estimate=err, alarm=False)


class L2Series(NamedTuple):
    value: float
    truncation_flag: bool
    m_used: int
    err_estimate: float


def l2_series(n: int, p: PlanePoint, m_max: int, q: QuadratureSpec,
              rel_stop: float = 1e-7, m_cap: int = 12) -> L2Series:
    """Partial sum (1/2) sum_m sigma^(2m)/(2m)! A_2m(w) up to m_max.

    Stops early once a term falls below rel_stop times the running sum; the
    truncation flag is set when the last computed term was still above that
    threshold at m_max.
    """
    n = check_kernel_index(n)
    if m_max > m_cap:
        raise ValueError(f"m_max={m_max} above cap {m_cap}")
    sig2 = p.sigma * p.sigma
    total = 0.0
    err = 0.0
    truncated = True
    m_used = 0
    profile: list[EvalResult] = []
    for m in range(m_max + 1):
        need = 2 * m
        if len(profile) <= need:
            qd = q if m <= LEIBNIZ_M_CAP else q.scaled(0.25 ** (m - LEIBNIZ_M_CAP))
            for k in range(len(profile), need + 1):
                profile.append(eval_derivative(n, k, PlanePoint(p.w, 0.0),
                                               qd.scaled(moment_scale(n, 0.0, k)),
                                               k_cap=max(2 * m_max, 16)))
        s = _leibniz_from_profile(n, m, p.w, profile)
        factor = sig2 ** m / math.factorial(2 * m)
        term = 0.5 * factor * s.value
        total += term
        err += 0.5 * factor * s.err_estimate
        m_used = m
        if abs(term) <= rel_stop * abs(total):
            truncated = False
            break
    return L2Series(value=total, truncation_flag=truncated,
                    m_used=m_used, err_estimate=err)


def monotonicity_profile(n: int, w: float, sigma_grid: list[float],
                         q: QuadratureSpec, slack: float = 1e-12):
    """L^2 sampled by direct evaluation along ascending nonnegative sigma.

    Returns (samples, monotone_flag) where samples is a list of (sigma, L^2)
    and the flag is true iff successive differences are >= -slack.
    """
    n = check_kernel_index(n)
    grid = list(sigma_grid)
    if any(s < 0 for s in grid) or any(b < a for a, b in zip(grid, grid[1:])):
        raise ValueError("sigma grid must be nonnegative and ascending")
    samples = []
    for s in grid:
        r = eval_transform(n, PlanePoint(w, s), q.scaled(magnitude_scale(n, s)))
        samples.append((s, r.l_squared))
    vals = [v for _, v in samples]
    monotone = all(b - a >= -slack for a, b in zip(vals, vals[1:]))
    return samples, monotone


def p_r_factor_identity_gap(w: float, sigma: float, alpha: float) -> float:
    """|expanded - factored| for the per-zero factor of |product|^2.

    1 - 2(w^2-sigma^2)/a^2 + (w^2+sigma^2)^2/a^4 equals
    (1 - (w^2+sigma^2)/a^2)^2 + 4 sigma^2/a^2 algebraically; the gap is
    rounding only and is used as a property test.
    """
    a2 = alpha * alpha
    lhs = 1.0 - 2.0 * (w * w - sigma * sigma) / a2 + (w * w + sigma * sigma) ** 2 / (a2 * a2)
    rhs = (1.0 - (w * w + sigma * sigma) / a2) ** 2 + 4.0 * sigma * sigma / a2
    return abs(lhs - rhs)
