"""Nodal lines of R and I over a (sigma, w) window.

The real and imaginary parts of the transform vanish on families of curves
that organize the zero geometry: R = 0 lines cross the real axis exactly at
the zeros (perpendicularly), I = 0 lines include both coordinate axes, and
for large sigma the R = 0 lines follow explicit power-law asymptotes.

Extraction is marching squares with linear interpolation on a sampled grid,
with the two ambiguous saddle cases disambiguated by one extra evaluation at
the cell center.  Vertices are then polished by one-dimensional Newton steps
along the field gradient, which is available exactly through the first
derivative of the transform (d/dw = F', d/dsigma = -i F').
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NewtonStallError, NotAZeroError
from .transform import (
    PlanePoint,
    QuadratureSpec,
    check_kernel_index,
    eval_derivative,
    eval_transform,
    eval_transform_grid,
    magnitude_scale,
)
from .zeros import ZeroRecord

R_LINE = "R"
I_LINE = "I"

# Field values must clear this multiple of their error estimate to count as
# signed; smaller magnitudes are treated as nonpositive.
_SNAP_FACTOR = 4.0

_AXIS_TOL = 1e-9


@dataclass(frozen=True)
class GridField:
    """Transform values sampled on the tensor grid sigma_axis x w_axis."""

    n: int
    sigma_axis: np.ndarray
    w_axis: np.ndarray
    re: np.ndarray
    im: np.ndarray
    err: np.ndarray
    q: QuadratureSpec

    def __post_init__(self):
        for ax in (self.sigma_axis, self.w_axis):
            if ax.ndim != 1 or ax.size < 2 or not (np.diff(ax) > 0).all():
                raise ValueError("axes must be strictly ascending with >= 2 samples")
        if self.re.shape != (self.sigma_axis.size, self.w_axis.size):
            raise ValueError("value matrix does not match axes")

    def component(self, which: str) -> np.ndarray:
        if which == R_LINE:
            return self.re
        if which == I_LINE:
            return self.im
        raise ValueError(f"which must be {R_LINE!r} or {I_LINE!r}, got {which!r}")


@dataclass(frozen=True)
class FieldLine:
    """A connected polyline on which R (or I) vanishes.

    ``max_residual`` is the largest |field| / magnitude_scale along the
    polyline; it is infinite until the line has been refined.
    """

    which: str
    points: tuple[PlanePoint, ...]
    max_residual: float = math.inf

    def __post_init__(self):
        if self.which not in (R_LINE, I_LINE):
            raise ValueError(f"which must be {R_LINE!r} or {I_LINE!r}")
        if len(self.points) < 2:
            raise ValueError("a polyline needs at least two points")

    def as_array(self) -> np.ndarray:
        return np.array([[p.sigma, p.w] for p in self.points])


@dataclass(frozen=True)
class AsymptoteCurve:
    """Large-sigma branch w = (2n/sigma)^(1/(2n-1)) * (pi/2) * (1 + 2m)."""

    n: int
    branch: int
    samples: tuple[PlanePoint, ...]


def sample_field_grid(n: int, sigma_range: tuple[float, float],
                      w_range: tuple[float, float],
                      resolution: tuple[int, int],
                      q: QuadratureSpec) -> GridField:
    """Evaluate the transform at every node of a regular grid."""
    n = check_kernel_index(n)
    ns, nw = resolution
    if ns < 2 or nw < 2:
        raise ValueError(f"resolution must be at least 2x2, got {resolution}")
    sigma_axis = np.linspace(sigma_range[0], sigma_range[1], ns)
    w_axis = np.linspace(w_range[0], w_range[1], nw)
    re, im, err = eval_transform_grid(n, sigma_axis, w_axis, q)
    return GridField(n=n, sigma_axis=sigma_axis, w_axis=w_axis,
                     re=re, im=im, err=err, q=q)


# marching-squares connectivity; corner bits: c0=(i,j) c1=(i+1,j) c2=(i+1,j+1)
# c3=(i,j+1); edges: 0 = c0-c1, 1 = c1-c2, 2 = c3-c2, 3 = c0-c3
_CASES: dict[int, list[tuple[int, int]]] = {
    0: [], 15: [],
    1: [(0, 3)], 14: [(0, 3)],
    2: [(0, 1)], 13: [(0, 1)],
    4: [(1, 2)], 11: [(1, 2)],
    8: [(2, 3)], 7: [(2, 3)],
    3: [(3, 1)], 12: [(3, 1)],
    6: [(0, 2)], 9: [(0, 2)],
}
# saddles keyed by (case, center_positive)
_SADDLES: dict[tuple[int, bool], list[tuple[int, int]]] = {
    (5, True): [(0, 1), (2, 3)],
    (5, False): [(0, 3), (1, 2)],
    (10, True): [(0, 3), (1, 2)],
    (10, False): [(0, 1), (2, 3)],
}


def _edge_key(edge: int, i: int, j: int):
    # canonical id of a grid edge so shared crossings link across cells
    if edge == 0:
        return ("s", i, j)          # from (i,j) toward (i+1,j)
    if edge == 1:
        return ("w", i + 1, j)      # from (i+1,j) toward (i+1,j+1)
    if edge == 2:
        return ("s", i, j + 1)
    return ("w", i, j)


def _interp(p0, v0, p1, v1):
    theta = v0 / (v0 - v1)
    theta = min(max(theta, 0.0), 1.0)
    return (float(p0[0] + theta * (p1[0] - p0[0])),
            float(p0[1] + theta * (p1[1] - p0[1])))


def extract_field_lines(grid: GridField, which: str) -> list[FieldLine]:
    """Marching-squares extraction of the zero set of R or I.

    Grid values below their own error estimate are treated as nonpositive, so
    quadrature noise cannot spawn contours; the exactly-zero axis lines of the
    I component (w = 0, and sigma = 0 where I vanishes identically) are added
    analytically when the window contains them.
    """
    vals = grid.component(which)
    pos = vals > _SNAP_FACTOR * grid.err
    sig, ws = grid.sigma_axis, grid.w_axis

    crossings: dict = {}
    segments: list[tuple] = []
    for i in range(sig.size - 1):
        for j in range(ws.size - 1):
            bits = (int(pos[i, j]) | (int(pos[i + 1, j]) << 1)
                    | (int(pos[i + 1, j + 1]) << 2) | (int(pos[i, j + 1]) << 3))
            if bits in (0, 15):
                continue
            if bits in (5, 10):
                center = PlanePoint(0.5 * (ws[j] + ws[j + 1]),
                                    0.5 * (sig[i] + sig[i + 1]))
                qc = grid.q.scaled(magnitude_scale(grid.n, center.sigma))
                cv = eval_transform(grid.n, center, qc)
                cval = cv.re if which == R_LINE else cv.im
                pairs = _SADDLES[(bits, cval > _SNAP_FACTOR * cv.err_estimate)]
            else:
                pairs = _CASES[bits]

            corner_pos = ((sig[i], ws[j]), (sig[i + 1], ws[j]),
                          (sig[i + 1], ws[j + 1]), (sig[i], ws[j + 1]))
            corner_val = (vals[i, j], vals[i + 1, j],
                          vals[i + 1, j + 1], vals[i, j + 1])
            edge_corners = ((0, 1), (1, 2), (3, 2), (0, 3))
            for e_a, e_b in pairs:
                keys = []
                for e in (e_a, e_b):
                    ka = _edge_key(e, i, j)
                    if ka not in crossings:
                        a, b = edge_corners[e]
                        crossings[ka] = _interp(corner_pos[a], corner_val[a],
                                                corner_pos[b], corner_val[b])
                    keys.append(ka)
                segments.append((keys[0], keys[1]))

    lines = [FieldLine(which=which, points=pts)
             for pts in _link_segments(segments, crossings)]
    lines.extend(_axis_lines(grid, which))
    return lines


def _link_segments(segments, crossings):
    adjacency: dict = {}
    for a, b in segments:
        adjacency.setdefault(a, []).append(b)
        adjacency.setdefault(b, []).append(a)

    visited = set()
    polylines = []
    # open chains first (endpoints of degree 1), then closed loops
    starts = sorted([k for k, v in adjacency.items() if len(v) == 1])
    starts += sorted([k for k, v in adjacency.items() if len(v) > 1])
    for start in starts:
        if start in visited:
            continue
        chain = [start]
        visited.add(start)
        cur = start
        while True:
            nxt = [k for k in adjacency[cur] if k not in visited]
            if not nxt:
                break
            cur = sorted(nxt)[0]
            visited.add(cur)
            chain.append(cur)
        if len(chain) >= 2:
            pts = tuple(PlanePoint(w=crossings[k][1], sigma=crossings[k][0])
                        for k in chain)
            polylines.append(pts)
    return polylines


def _axis_lines(grid: GridField, which: str) -> list[FieldLine]:
    if which != I_LINE:
        return []
    out = []
    sig, ws = grid.sigma_axis, grid.w_axis
    if ws[0] <= 0.0 <= ws[-1]:
        pts = tuple(PlanePoint(w=0.0, sigma=float(s)) for s in sig)
        out.append(FieldLine(which=I_LINE, points=pts, max_residual=0.0))
    if sig[0] <= 0.0 <= sig[-1]:
        pts = tuple(PlanePoint(w=float(w), sigma=0.0) for w in ws)
        out.append(FieldLine(which=I_LINE, points=pts, max_residual=0.0))
    return out


def _gradient(n: int, which: str, p: PlanePoint, q: QuadratureSpec):
    """(d/dsigma, d/dw) of the chosen component, from F'."""
    d = eval_derivative(n, 1, p, q)
    if which == R_LINE:
        return d.im, d.re, d.err_estimate     # R_sigma = Im F', R_w = Re F'
    return -d.re, d.im, d.err_estimate         # I_sigma = -Re F', I_w = Im F'


def refine_field_line(n: int, line: FieldLine, q: QuadratureSpec,
                      max_steps: int = 12) -> FieldLine:
    """Newton-polish every vertex along the local field gradient.

    Convergence target is |field| <= q.tol * magnitude_scale(n, sigma); the
    reported max_residual is the worst |field| / scale over the vertices.  A
    vanishing gradient off the axis is impossible for these transforms (the
    derivative would need an off-axis zero), so it raises NewtonStallError.
    """
    n = check_kernel_index(n)
    new_pts = []
    worst = 0.0
    for p in line.points:
        sigma, w = p.sigma, p.w
        resid = math.inf
        for _ in range(max_steps):
            scale = magnitude_scale(n, sigma)
            qs = q.scaled(scale)
            val = eval_transform(n, PlanePoint(w, sigma), qs)
            g = val.re if line.which == R_LINE else val.im
            resid = abs(g) / scale
            if abs(g) <= q.tol * scale:
                break
            gs, gw, derr = _gradient(n, line.which, PlanePoint(w, sigma), qs)
            norm2 = gs * gs + gw * gw
            if math.sqrt(norm2) <= max(10 * derr, 1e-13 * scale):
                if abs(sigma) > _AXIS_TOL:
                    raise NewtonStallError(
                        f"field gradient vanished at (sigma={sigma}, w={w}); "
                        "an off-axis critical point would contradict the zero geometry")
                break
            step = g / norm2
            sigma -= step * gs
            w -= step * gw
        worst = max(worst, resid)
        new_pts.append(PlanePoint(w=w, sigma=sigma))
    return FieldLine(which=line.which, points=tuple(new_pts), max_residual=worst)


def asymptote_curves(n: int, branches: list[int],
                     sigma_samples: list[float]) -> list[AsymptoteCurve]:
    """Pure formula evaluation of the large-sigma branches."""
    n = check_kernel_index(n)
    if any(s <= 0 for s in sigma_samples):
        raise ValueError("sigma samples must be positive")
    curves = []
    for m in branches:
        pts = tuple(PlanePoint(w=asymptote_w(n, m, s), sigma=float(s))
                    for s in sigma_samples)
        curves.append(AsymptoteCurve(n=n, branch=m, samples=pts))
    return curves


def asymptote_w(n: int, branch: int, sigma: float) -> float:
    sigma = float(sigma)
    return (2.0 * n / sigma) ** (1.0 / (2 * n - 1)) * (math.pi / 2.0) * (1 + 2 * branch)


def crossing_gradient(n: int, zero: ZeroRecord, q: QuadratureSpec) -> float:
    """dw/dsigma of the R = 0 line where it crosses the axis at a zero.

    Equals -R_sigma / R_w there; R_sigma vanishes by symmetry while R_w is
    the (nonzero) derivative at the simple zero, so the crossing is
    perpendicular to the w axis.
    """
    n = check_kernel_index(n)
    if zero.n != n:
        raise NotAZeroError(f"zero record is for n={zero.n}, not n={n}")
    val = eval_transform(n, PlanePoint(zero.alpha, 0.0), q)
    if abs(val.re) > max(10 * val.err_estimate, q.tol):
        raise NotAZeroError(f"|F({zero.alpha})| = {abs(val.re):.3e}: not a zero")
    r_sigma, r_w, _ = _gradient(n, R_LINE, PlanePoint(zero.alpha, 0.0), q)
    if r_w == 0.0:
        raise NotAZeroError(f"derivative vanished at {zero.alpha}: not a simple zero")
    return -r_sigma / r_w


def _segment_arrays(lines: list[FieldLine]):
    starts, ends = [], []
    for ln in lines:
        arr = ln.as_array()
        starts.append(arr[:-1])
        ends.append(arr[1:])
    if not starts:
        return np.zeros((0, 2)), np.zeros((0, 2))
    return np.vstack(starts), np.vstack(ends)


def _segment_min_distances(a0, a1, b0, b1):
    """Pairwise minimum distance between segment sets [a0,a1] and [b0,b1].

    Standard clamped closest-point computation, broadcast over all pairs;
    returns (dist, midpoint) arrays of shapes (na, nb) and (na, nb, 2).
    """
    d1 = (a1 - a0)[:, None, :]            # (na,1,2)
    d2 = (b1 - b0)[None, :, :]            # (1,nb,2)
    r = a0[:, None, :] - b0[None, :, :]
    a = np.sum(d1 * d1, axis=2)
    e = np.sum(d2 * d2, axis=2)
    f = np.sum(d2 * r, axis=2)
    c = np.sum(d1 * r, axis=2)
    b = np.sum(d1 * d2, axis=2)
    denom = a * e - b * b
    s = np.where(denom > 1e-30, (b * f - c * e) / np.where(denom > 1e-30, denom, 1.0), 0.0)
    s = np.clip(s, 0.0, 1.0)
    t = np.where(e > 1e-30, (b * s + f) / np.where(e > 1e-30, e, 1.0), 0.0)
    # re-clamp s for t at the boundary, then t once more
    t_cl = np.clip(t, 0.0, 1.0)
    need = t_cl != t
    s = np.where(need & (a > 1e-30), np.clip((b * t_cl - c) / np.where(a > 1e-30, a, 1.0), 0.0, 1.0), s)
    t = t_cl
    pa = a0[:, None, :] + s[..., None] * d1
    pb = b0[None, :, :] + t[..., None] * d2
    diff = pa - pb
    dist = np.sqrt(np.sum(diff * diff, axis=2))
    return dist, 0.5 * (pa + pb)


def intersection_audit(r_lines: list[FieldLine], i_lines: list[FieldLine],
                       proximity_tol: float) -> list[PlanePoint]:
    """Near-intersections between the two refined families.

    Every pair of polyline segments is tested; pairs closer than the
    proximity tolerance contribute their midpoint.  A clean geometry returns
    points only on the axis |sigma| <= tolerance (or none at all when the
    window excludes the axis).
    """
    a0, a1 = _segment_arrays(r_lines)
    b0, b1 = _segment_arrays(i_lines)
    hits: list[PlanePoint] = []
    if a0.size == 0 or b0.size == 0:
        return hits
    chunk = 2048
    for ia in range(0, a0.shape[0], chunk):
        sa0, sa1 = a0[ia:ia + chunk], a1[ia:ia + chunk]
        lo_a = np.minimum(sa0, sa1).min(axis=0) - proximity_tol
        hi_a = np.maximum(sa0, sa1).max(axis=0) + proximity_tol
        for ib in range(0, b0.shape[0], chunk):
            sb0, sb1 = b0[ib:ib + chunk], b1[ib:ib + chunk]
            lo_b = np.minimum(sb0, sb1).min(axis=0)
            hi_b = np.maximum(sb0, sb1).max(axis=0)
            if (hi_b < lo_a).any() or (lo_b > hi_a).any():
                continue
            dist, mid = _segment_min_distances(sa0, sa1, sb0, sb1)
            ii, jj = np.nonzero(dist < proximity_tol)
            for i, j in zip(ii, jj):
                hits.append(PlanePoint(w=float(mid[i, j, 1]), sigma=float(mid[i, j, 0])))
    return hits
