"""Evaluation of F(z) = integral of exp(-t^(2n)) * exp(izt) dt and its z-derivatives.

The kernel exponent is even, 2n with n >= 1, so F is entire and even.  Points
are handled in the (w, sigma) coordinates z = w - i*sigma, in which

    F(z) = integral exp(-t^(2n) + sigma*t) * (cos(wt) + i sin(wt)) dt.

Evaluation is composite Gauss-Legendre quadrature on a truncated symmetric
interval [-T, T], with T chosen so the analytic tail bound is below half the
requested tolerance.  Each panel is integrated at the working order and at
double the order; the difference is the panel error estimate, and the worst
panel is split until the global estimate meets the budget.  Within a panel,
weighted terms are accumulated left to right with compensated summation;
panel results are combined in index order, so results are deterministic.

For n = 1 the closed form sqrt(pi) * exp(-z^2/4) is provided as an oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import OverflowGuardError, ToleranceNotMetError

# Kernel exponents with documented support.  Larger n makes the integrand
# flatter near 0 and steeper at the edge; 1..6 is the tested range.
N_MIN = 1
N_MAX = 6

# Natural-log units; peak exponents beyond this cannot be represented.
OVERFLOW_EXPONENT = 700.0

# Panel width caps: absolute, per unit of oscillation (half a period of
# cos(wt)), and per unit of growth of exp(sigma*t).
_PANEL_CAP = 0.5
_SIGMA_CAP = 8.0

_EPS = float(np.finfo(np.float64).eps)

# Derivative order cap.  The t^k moment inflates the truncation radius and
# the integrand scale; accuracy degrades gradually beyond this.
K_CAP_DEFAULT = 16


def check_kernel_index(n: int) -> int:
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool):
        raise TypeError(f"kernel index must be an integer, got {n!r}")
    if not (N_MIN <= n <= N_MAX):
        raise ValueError(f"kernel index n must be in [{N_MIN}, {N_MAX}], got {n}")
    return int(n)


@dataclass(frozen=True)
class PlanePoint:
    """A point z = w - i*sigma of the complex plane."""

    w: float
    sigma: float

    def __post_init__(self):
        if not (math.isfinite(self.w) and math.isfinite(self.sigma)):
            raise ValueError(f"plane point must be finite, got ({self.w}, {self.sigma})")

    @property
    def z(self) -> complex:
        return complex(self.w, -self.sigma)


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances and budgets for one quadrature evaluation.

    ``tol`` is a target on the absolute error of the complex value.  The
    reachable floor scales with exp(peak_exponent(n, sigma)); callers working
    at large sigma should scale ``tol`` by :func:`magnitude_scale`.
    """

    tol: float = 1e-10
    max_panels: int = 4000
    panel_order: int = 16
    truncation_radius_override: float | None = None

    def __post_init__(self):
        if not (self.tol > 0 and math.isfinite(self.tol)):
            raise ValueError(f"tol must be positive and finite, got {self.tol}")
        if self.panel_order < 4:
            raise ValueError(f"panel_order must be >= 4, got {self.panel_order}")
        if self.max_panels < 1:
            raise ValueError(f"max_panels must be >= 1, got {self.max_panels}")
        if self.truncation_radius_override is not None and not (self.truncation_radius_override > 0):
            raise ValueError("truncation_radius_override must be positive")

    def scaled(self, factor: float) -> "QuadratureSpec":
        return QuadratureSpec(self.tol * factor, self.max_panels,
                              self.panel_order, self.truncation_radius_override)


@dataclass(frozen=True)
class EvalResult:
    """(R, I) value of the transform or one of its derivatives at a point."""

    re: float
    im: float
    err_estimate: float

    def __post_init__(self):
        if not math.isfinite(self.err_estimate) or self.err_estimate < 0:
            raise ValueError(f"err_estimate must be finite and >= 0, got {self.err_estimate}")

    @property
    def l_squared(self) -> float:
        return self.re * self.re + self.im * self.im

    @property
    def value(self) -> complex:
        return complex(self.re, self.im)


@lru_cache(maxsize=32)
def _gl_rule(order: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(order)
    return x.copy(), w.copy()


def peak_exponent(n: int, sigma: float) -> float:
    """Maximum of -t^(2n) + sigma*t over the real line (0 when sigma = 0)."""
    n = check_kernel_index(n)
    s = abs(float(sigma))
    if s == 0.0:
        return 0.0
    tstar = (s / (2 * n)) ** (1.0 / (2 * n - 1))
    return -(tstar ** (2 * n)) + s * tstar


def magnitude_scale(n: int, sigma: float) -> float:
    """exp(max(0, peak exponent)): the natural scale of |F| at this sigma."""
    return math.exp(max(0.0, peak_exponent(n, sigma)))


def moment_scale(n: int, sigma: float, k: int) -> float:
    """exp(max(0, peak of k ln t - t^(2n) + |sigma| t)): scale of the k-th moment.

    The t^k factor inflates the integrand of high derivatives; tolerances for
    them are only meaningful relative to this scale.
    """
    n = check_kernel_index(n)
    if k == 0:
        return magnitude_scale(n, sigma)
    s = abs(float(sigma))
    # g'(t) = k/t - 2n t^(2n-1) + s is strictly decreasing: bisect its root
    lo, hi = 1e-9, 1.0
    while k / hi - 2 * n * hi ** (2 * n - 1) + s > 0:
        hi *= 2.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if k / mid - 2 * n * mid ** (2 * n - 1) + s > 0:
            lo = mid
        else:
            hi = mid
    t = 0.5 * (lo + hi)
    peak = k * math.log(t) - t ** (2 * n) + s * t
    return math.exp(max(0.0, min(peak, OVERFLOW_EXPONENT)))


def _guard_overflow(n: int, sigma: float) -> None:
    pk = peak_exponent(n, sigma)
    if pk > OVERFLOW_EXPONENT:
        raise OverflowGuardError(
            f"integrand peak exponent {pk:.1f} exceeds {OVERFLOW_EXPONENT:.0f} "
            f"(n={n}, sigma={sigma}); value not representable in float64")


def truncation_radius(n: int, sigma: float, k: int, tol: float) -> float:
    """Radius T with 2 * integral_T^inf t^k exp(-t^(2n) + |sigma| t) dt <= tol.

    T is the smallest radius >= 1.5 at which

        t^(2n)/2 >= |sigma| t + k ln t + ln(2/tol)

    holds together with a nonnegative derivative of the slack, so the bound
    holds for every t >= T and the tail is dominated by exp(-t^(2n)/2).
    """
    n = check_kernel_index(n)
    if not (tol > 0):
        raise ValueError(f"tol must be positive, got {tol}")
    if k < 0:
        raise ValueError(f"moment order k must be >= 0, got {k}")
    s = abs(float(sigma))
    lead = math.log(2.0 / tol)

    def slack(t: float) -> float:
        return 0.5 * t ** (2 * n) - s * t - k * math.log(t) - lead

    def slack_prime(t: float) -> float:
        return n * t ** (2 * n - 1) - s - k / t

    lo = 1.5
    hi = lo
    while slack(hi) < 0.0 or slack_prime(hi) < 0.0:
        hi *= 2.0
        if hi > 1e12:  # unreachable: t^(2n) dominates every other term
            raise ArithmeticError("truncation radius search diverged")
    if hi == lo:
        return lo
    # bisect down to the smallest admissible radius
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if slack(mid) >= 0.0 and slack_prime(mid) >= 0.0:
            hi = mid
        else:
            lo = mid
    return hi


def _tail_bound(n: int, sigma: float, k: int, T: float) -> float:
    """Rigorous bound on 2 * integral_T^inf t^k exp(-t^(2n) + |sigma| t) dt.

    Uses concavity of g(t) = -t^(2n) + |sigma| t + k ln t: once g'(T) < 0 the
    tail is below exp(g(T)) / |g'(T)| per side.  Returns inf when T does not
    clear the peak, so overridden radii stay honest.
    """
    s = abs(float(sigma))
    gp = -2 * n * T ** (2 * n - 1) + s + (k / T if k else 0.0)
    if gp >= 0.0:
        return math.inf
    g = -(T ** (2 * n)) + s * T + (k * math.log(T) if k else 0.0)
    if g > OVERFLOW_EXPONENT:
        return math.inf
    return 2.0 * math.exp(g) / (-gp)


def _panel_edges(T: float, w_cap: float, sigma: float) -> np.ndarray:
    width = min(_PANEL_CAP,
                math.pi / max(abs(w_cap), 1e-30),
                _SIGMA_CAP / max(abs(sigma), 1e-30))
    count = max(2, int(math.ceil(2.0 * T / width)))
    return np.linspace(-T, T, count + 1)


def _panel_sums(n: int, sigma: float, k: int, w: np.ndarray,
                edges_lo: np.ndarray, edges_hi: np.ndarray, order: int):
    """Per-panel quadrature sums for all w at once.

    Returns (cos_part, sin_part, abs_part) each of shape (nw, npanels).
    Within each panel the weighted terms are accumulated left to right with
    compensated (Kahan) summation.
    """
    x, gw = _gl_rule(order)
    centers = 0.5 * (edges_lo + edges_hi)
    halves = 0.5 * (edges_hi - edges_lo)
    t = centers[:, None] + halves[:, None] * x[None, :]        # (P, p)
    base = gw[None, :] * halves[:, None] * np.exp(-t ** (2 * n) + sigma * t)
    if k:
        base = base * t ** k

    nw, npan, p = w.size, edges_lo.size, order
    cos_s = np.zeros((nw, npan)); cos_c = np.zeros((nw, npan))
    sin_s = np.zeros((nw, npan)); sin_c = np.zeros((nw, npan))
    abs_s = np.zeros((nw, npan))
    wcol = w[:, None]
    for j in range(p):
        phase = wcol * t[None, :, j]
        fc = base[None, :, j] * np.cos(phase)
        fs = base[None, :, j] * np.sin(phase)
        abs_s += np.abs(fc) + np.abs(fs)
        # Kahan step for the cosine part
        y = fc - cos_c
        tmp = cos_s + y
        cos_c = (tmp - cos_s) - y
        cos_s = tmp
        # and the sine part
        y = fs - sin_c
        tmp = sin_s + y
        sin_c = (tmp - sin_s) - y
        sin_s = tmp
    return cos_s, sin_s, abs_s


def _combine(cos_s: np.ndarray, sin_s: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Combine per-panel sums in index order with compensated summation."""
    nw = cos_s.shape[0]
    re = np.zeros(nw); rec = np.zeros(nw)
    im = np.zeros(nw); imc = np.zeros(nw)
    for i in range(cos_s.shape[1]):
        y = cos_s[:, i] - rec
        t = re + y
        rec = (t - re) - y
        re = t
        y = sin_s[:, i] - imc
        t = im + y
        imc = (t - im) - y
        im = t
    return re, im


def _moment_batch(n: int, sigma: float, w: np.ndarray, k: int, q: QuadratureSpec,
                  w_cap: float | None = None, refine: bool = True):
    """M_k(w) = integral t^k exp(-t^(2n)+sigma t) e^{iwt} dt for a batch of w.

    Returns (re, im, err) arrays.  All w share one panel set sized by
    ``w_cap`` (defaults to max |w|).  When ``refine`` is set and the batch has
    a single point, the worst panel is split until the estimate meets tol/2;
    multi-point batches fall back to up to two global halvings.
    """
    n = check_kernel_index(n)
    _guard_overflow(n, sigma)
    w = np.atleast_1d(np.asarray(w, dtype=float))
    cap = float(np.max(np.abs(w))) if w_cap is None else float(w_cap)

    tol_tail = 0.5 * q.tol
    if q.truncation_radius_override is not None:
        T = q.truncation_radius_override
    else:
        T = truncation_radius(n, sigma, k, tol_tail)
    tail = min(_tail_bound(n, sigma, k, T), math.inf)

    edges = _panel_edges(T, cap, sigma)
    lo_e, hi_e = edges[:-1].copy(), edges[1:].copy()
    order = q.panel_order

    def evaluate(lo_e, hi_e):
        c1, s1, _ = _panel_sums(n, sigma, k, w, lo_e, hi_e, order)
        c2, s2, a2 = _panel_sums(n, sigma, k, w, lo_e, hi_e, 2 * order)
        perr = np.hypot(c1 - c2, s1 - s2)           # (nw, P)
        return c2, s2, a2, perr

    c2, s2, a2, perr = evaluate(lo_e, hi_e)
    target = 0.5 * q.tol

    if w.size == 1 and refine:
        while float(perr.sum()) > target and lo_e.size < q.max_panels:
            i = int(np.argmax(perr[0]))
            mid = 0.5 * (lo_e[i] + hi_e[i])
            lo_e = np.insert(lo_e, i + 1, mid)
            hi_e = np.insert(hi_e, i, mid)
            c2, s2, a2, perr = evaluate(lo_e, hi_e)
    elif refine:
        rounds = 0
        while float(perr.sum(axis=1).max()) > target and rounds < 2 and 2 * lo_e.size <= q.max_panels:
            mids = 0.5 * (lo_e + hi_e)
            lo_e = np.sort(np.concatenate([lo_e, mids]))
            hi_e = np.sort(np.concatenate([mids, hi_e]))
            c2, s2, a2, perr = evaluate(lo_e, hi_e)
            rounds += 1

    re, im = _combine(c2, s2)
    floor = 4.0 * _EPS * a2.sum(axis=1)
    err = perr.sum(axis=1) + tail + floor

    if w.size == 1 and refine and not float(err[0]) <= q.tol:
        raise ToleranceNotMetError(
            f"quadrature error estimate {float(err[0]):.3e} above tol {q.tol:.3e} "
            f"after {lo_e.size} panels (n={n}, sigma={sigma}, w={float(w[0])}, k={k})",
            re=float(re[0]), im=float(im[0]), err_estimate=float(err[0]))
    return re, im, err


def eval_transform(n: int, p: PlanePoint, q: QuadratureSpec) -> EvalResult:
    """Evaluate F(z) at z = w - i*sigma by truncated adaptive quadrature."""
    re, im, err = _moment_batch(n, p.sigma, np.array([p.w]), 0, q)
    return EvalResult(float(re[0]), float(im[0]), float(err[0]))


def eval_derivative(n: int, k: int, p: PlanePoint, q: QuadratureSpec,
                    k_cap: int = K_CAP_DEFAULT) -> EvalResult:
    """k-th z-derivative of F at p: i^k times the k-th t-moment integral.

    k = 0 follows the identical code path as :func:`eval_transform`.  The
    rotation by i^k is done by exact component swaps, so no rounding is
    introduced beyond the moment itself.
    """
    if k < 0:
        raise ValueError(f"derivative order must be >= 0, got {k}")
    if k > k_cap:
        raise ValueError(f"derivative order {k} above cap {k_cap}; "
                         "raise k_cap explicitly to accept degraded accuracy")
    re, im, err = _moment_batch(n, p.sigma, np.array([p.w]), k, q)
    mre, mim, e = float(re[0]), float(im[0]), float(err[0])
    quadrant = k % 4
    if quadrant == 0:
        return EvalResult(mre, mim, e)
    if quadrant == 1:
        return EvalResult(-mim, mre, e)
    if quadrant == 2:
        return EvalResult(-mre, -mim, e)
    return EvalResult(mim, -mre, e)


def closed_form_gaussian(p: PlanePoint) -> EvalResult:
    """Exact n = 1 evaluation: sqrt(pi) * exp((sigma^2 - w^2)/4) * e^{i sigma w / 2}."""
    amp_exp = 0.25 * (p.sigma * p.sigma - p.w * p.w)
    if amp_exp > OVERFLOW_EXPONENT:
        raise OverflowGuardError(f"closed-form amplitude exponent {amp_exp:.1f} too large")
    amp = math.sqrt(math.pi) * math.exp(amp_exp)
    half = 0.5 * p.sigma * p.w
    re = amp * math.cos(half)
    im = amp * math.sin(half)
    return EvalResult(re, im, 8.0 * _EPS * amp)


def eval_transform_grid(n: int, sigma_axis: np.ndarray, w_axis: np.ndarray,
                        q: QuadratureSpec, k: int = 0):
    """Vectorized transform evaluation on a (sigma, w) grid.

    Rows share one panel set per sigma (sized by max |w|), so this is the
    fast path for field sampling and zero scanning.  Returns (re, im, err)
    arrays of shape (len(sigma_axis), len(w_axis)).  Per-row tolerances are
    q.tol scaled by the row's magnitude scale; rows that cannot meet them
    report honest error estimates rather than raising.
    """
    sigma_axis = np.asarray(sigma_axis, dtype=float)
    w_axis = np.asarray(w_axis, dtype=float)
    R = np.empty((sigma_axis.size, w_axis.size))
    I = np.empty_like(R)
    E = np.empty_like(R)
    for i, s in enumerate(sigma_axis):
        qrow = q.scaled(magnitude_scale(n, s))
        chunk = 512
        for j0 in range(0, w_axis.size, chunk):
            sl = slice(j0, min(j0 + chunk, w_axis.size))
            re, im, err = _moment_batch(n, float(s), w_axis[sl], k, qrow,
                                        w_cap=float(np.max(np.abs(w_axis))))
            R[i, sl], I[i, sl], E[i, sl] = re, im, err
    if k % 4 == 1:
        R, I = -I, R
    elif k % 4 == 2:
        R, I = -R, -I
    elif k % 4 == 3:
        R, I = I, -R
    return R, I, E
