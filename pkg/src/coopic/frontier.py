"""Pareto-frontier tracing and rate-region comparison.

Frontiers are traced by weighted-sum scalarization: for each weight w in a
log-spaced grid (plus the two axis directions) the objective R1 + w*R2 is
maximized over the scheme's allocation simplices by multi-start Nelder-Mead
direct search on an unconstrained reparameterization (normalized squares per
simplex block), and the upper-right convex hull of all maximizers is
returned.  This is exact for the time-shared closure of the achievable set.

Everything is deterministic for a fixed seed: start k of weight j is a pure
function of (seed, j, k), so growing the restart budget only appends starts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from .model import (
    ChannelGains,
    EvaluatorError,
    InfiniteGain,
    PowerBudget,
    RcAllocation,
    Simplex2,
    Simplex3,
    TcAllocation,
)
from . import rxcoop, txcoop

__all__ = [
    "TraceOptions",
    "FrontierPoint",
    "Frontier",
    "default_weights",
    "trace",
    "trace_tc_limit",
    "trace_rc_limit",
    "hull",
    "dominates",
    "region_deviation",
    "hausdorff",
    "equal_rate_value",
    "tc_allocation_from_vector",
    "rc_allocation_from_vector",
]

_PENALTY = 1e9
_TC_DIM = 17
_RC_DIM = 13
_LIMIT_DIM = 6


def default_weights(n: int = 33, span: float = 6.0) -> tuple[float, ...]:
    """Log-spaced scalarization weights 2**[-span, span] plus the two axes."""
    if n < 2:
        grid = (1.0,)
    else:
        grid = tuple(2.0 ** (-span + 2.0 * span * i / (n - 1)) for i in range(n))
    return (0.0,) + grid + (math.inf,)


@dataclass(frozen=True)
class TraceOptions:
    """Optimizer budget and reproducibility knobs for a frontier trace."""

    weights: tuple[float, ...] = field(default_factory=default_weights)
    restarts: int = 32
    max_iter: int = 400
    ftol: float = 1e-9
    seed: int = 0


@dataclass(frozen=True)
class FrontierPoint:
    """One frontier vertex with the allocation and weight that produced it."""

    r1: float
    r2: float
    weight: float | None = None
    allocation: object | None = None


@dataclass(frozen=True)
class Frontier:
    """Pareto vertices (r1 descending, r2 ascending) of a traced region."""

    points: tuple[FrontierPoint, ...]
    scheme: str
    options: TraceOptions | None = None

    def vertices(self) -> list[tuple[float, float]]:
        return [(pt.r1, pt.r2) for pt in self.points]


# ---------------------------------------------------------------------------
# Simplex reparameterization (unconstrained vector -> allocation)


def _squared_block(xs) -> tuple[float, ...]:
    total = 0.0
    for x in xs:
        total += x * x
    if total < 1e-300:
        n = len(xs)
        return tuple(1.0 / n for _ in xs)
    return tuple(x * x / total for x in xs)


def tc_allocation_from_vector(x) -> TcAllocation:
    """Map an unconstrained 17-vector to a transmitter-cooperation allocation."""
    if len(x) != _TC_DIM:
        raise ValueError(f"expected {_TC_DIM} coordinates, got {len(x)}")
    return TcAllocation(
        lam=Simplex3(*_squared_block(x[0:3])),
        kappa=Simplex2(*_squared_block(x[3:5])),
        gamma=Simplex2(*_squared_block(x[5:7])),
        alpha=Simplex2(*_squared_block(x[7:9])),
        beta=Simplex2(*_squared_block(x[9:11])),
        mu=Simplex3(*_squared_block(x[11:14])),
        eta=Simplex3(*_squared_block(x[14:17])),
    )


def rc_allocation_from_vector(x) -> RcAllocation:
    """Map an unconstrained 13-vector to a receiver-cooperation allocation."""
    if len(x) != _RC_DIM:
        raise ValueError(f"expected {_RC_DIM} coordinates, got {len(x)}")
    return RcAllocation(
        lam=Simplex3(*_squared_block(x[0:3])),
        mu=Simplex3(*_squared_block(x[3:6])),
        eta=Simplex3(*_squared_block(x[6:9])),
        alpha=Simplex2(*_squared_block(x[9:11])),
        beta=Simplex2(*_squared_block(x[11:13])),
    )


def _limit_splits_from_vector(x) -> tuple[Simplex3, Simplex3]:
    return (Simplex3(*_squared_block(x[0:3])), Simplex3(*_squared_block(x[3:6])))


# Explicit boundary starts: zero-duration phases always paired with zero
# power mass so every start evaluates cleanly.
_TC_CORNER_STARTS = (
    (1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1),
    (0, 0, 1, 0, 1, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1),
    (1, 0, 1.4, 1, 1, 0, 1, 1, 0, 1, 1, 0, 1, 0, 0, 0, 1),
    (0, 1, 1.4, 0, 1, 1, 1, 1, 1, 1, 0, 0, 0, 1, 0, 1, 0),
    (1, 1, 1.4, 1, 1, 1, 1, 1, 0.5, 1, 0.5, 1, 2, 1, 1, 2, 1),
    (0, 0, 1, 0, 1, 0, 1, 1, 1, 1, 1, 1, 0, 0, 1, 0, 0),
)

_RC_CORNER_STARTS = (
    (1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1),
    (1.4, 1, 1, 1.4, 1, 1, 1.4, 1, 1, 1, 1, 1, 1),
    (1, 1, 0.3, 1, 1, 0, 0, 0, 1, 1, 0, 1, 1),
    (1, 0.3, 1, 0, 1, 0, 1, 0, 1, 1, 1, 1, 0),
    (0, 1, 1, 0, 1, 1, 0, 1, 1, 1, 1, 1, 1),
)

_LIMIT_CORNER_STARTS = (
    (1, 1, 1, 1, 1, 1),
    (0, 1, 0, 0, 0, 1),
    (0, 0, 1, 0, 1, 0),
    (0, 1, 0, 0, 1, 0),
    (1, 0, 0, 1, 0, 0),
    (0, 1, 1, 0, 1, 1),
)


def _start_vector(seed: int, weight_index: int, restart_index: int, dim: int,
                  corners) -> np.ndarray:
    if restart_index < len(corners):
        return np.asarray(corners[restart_index], dtype=float)
    rng = np.random.default_rng(
        np.random.SeedSequence(entropy=(seed, weight_index, restart_index)))
    return rng.standard_normal(dim)


def _scalarize(r1: float, r2: float, weight: float) -> float:
    if math.isinf(weight):
        return r2
    return r1 + weight * r2


def _sweep(evaluate, dim: int, corners, opts: TraceOptions):
    """Multi-start direct search per weight; returns all re-validated maximizers.

    ``evaluate(x, weight)`` maps an unconstrained vector to (r1, r2,
    allocation) or raises EvaluatorError.
    """
    candidates: list[tuple[float, float, float, object]] = []
    for widx, w in enumerate(opts.weights):

        def neg_objective(x, _w=w):
            try:
                r1, r2, _ = evaluate(x, _w)
            except EvaluatorError:
                return _PENALTY
            return -_scalarize(r1, r2, _w)

        for ridx in range(opts.restarts):
            x0 = _start_vector(opts.seed, widx, ridx, dim, corners)
            result = minimize(
                neg_objective, x0, method="Nelder-Mead",
                options={"maxiter": opts.max_iter, "maxfev": 2 * opts.max_iter,
                         "fatol": opts.ftol, "xatol": 1e-8, "adaptive": False})
            try:
                r1, r2, alloc = evaluate(result.x, w)
            except EvaluatorError:
                continue
            candidates.append((r1, r2, w, alloc))
    return candidates


def _build_frontier(candidates, scheme: str, opts: TraceOptions) -> Frontier:
    by_vertex: dict[tuple[float, float], tuple[float, object]] = {}
    for r1, r2, w, alloc in candidates:
        by_vertex.setdefault((r1, r2), (w, alloc))
    vertices = hull([(r1, r2) for r1, r2, _, _ in candidates])
    points = []
    for v in vertices:
        w, alloc = by_vertex.get(v, (None, None))
        points.append(FrontierPoint(r1=v[0], r2=v[1], weight=w, allocation=alloc))
    return Frontier(points=tuple(points), scheme=scheme, options=opts)


def trace(scheme: str, g: ChannelGains, p: PowerBudget,
          opts: TraceOptions | None = None) -> Frontier:
    """Trace the Pareto frontier of an achievable scheme at finite gains.

    ``scheme`` is "TC", "RDPC" (transmitter cooperation and its
    no-coherent-combining baseline) or "RC" (receiver cooperation).
    Infinite conferencing gains must go through the limit-mode tracers.
    """
    opts = opts or TraceOptions()
    scheme = scheme.upper()
    if scheme in ("TC", "RDPC"):
        if math.isinf(g.c12):
            raise InfiniteGain("c12 is infinite; use tc_limit_region")
        pair_fn = txcoop.tc_rate_pair if scheme == "TC" else txcoop.rdpc_rate_pair

        def evaluate(x, _w):
            alloc = tc_allocation_from_vector(x)
            pair = pair_fn(g, p, alloc)
            return pair.r1, pair.r2, alloc

        candidates = _sweep(evaluate, _TC_DIM, _TC_CORNER_STARTS, opts)
    elif scheme == "RC":
        if math.isinf(g.c34):
            raise InfiniteGain("c34 is infinite; use rc_limit_region")

        def evaluate(x, w):
            alloc = rc_allocation_from_vector(x)
            pair = rxcoop.rc_rate_pair(g, p, alloc, weight=w)
            return pair.r1, pair.r2, alloc

        candidates = _sweep(evaluate, _RC_DIM, _RC_CORNER_STARTS, opts)
    else:
        raise ValueError(f"unknown scheme {scheme!r}; expected TC, RDPC or RC")
    return _build_frontier(candidates, scheme, opts)


def _limit_options(opts: TraceOptions | None) -> TraceOptions:
    if opts is not None:
        return opts
    # The limit sweeps are low-dimensional; spend the budget on weights so
    # the polygonal frontier tracks the smooth region boundary closely.
    return TraceOptions(weights=default_weights(65), restarts=6, max_iter=250)


def trace_tc_limit(g: ChannelGains, p: PowerBudget,
                   opts: TraceOptions | None = None) -> Frontier:
    """Frontier of transmitter cooperation at c12 = +inf.

    Sweeps the joint-phase power splits under both encoding orders (the two
    sources act as one two-antenna transmitter, so the order is free).
    """
    opts = _limit_options(opts)
    candidates = []
    for user1_clean in (True, False):

        def evaluate(x, _w, _order=user1_clean):
            mu, eta = _limit_splits_from_vector(x)
            pair = txcoop.tc_limit_rate_pair(g, p, mu, eta, _order)
            return pair.r1, pair.r2, (mu, eta, _order)

        candidates.extend(_sweep(evaluate, _LIMIT_DIM, _LIMIT_CORNER_STARTS, opts))
    return _build_frontier(candidates, "TC_inf", opts)


def trace_rc_limit(g: ChannelGains, p: PowerBudget,
                   opts: TraceOptions | None = None) -> Frontier:
    """Frontier of receiver cooperation at c34 = +inf.

    The limit region is the fixed two-antenna multiple-access pentagon, so
    the weight grid just selects supporting corners; no search is needed.
    """
    opts = _limit_options(opts)
    candidates = []
    for w in opts.weights:
        pair = rxcoop.rc_limit_rate_pair(g, p, weight=w)
        candidates.append((pair.r1, pair.r2, w, None))
    return _build_frontier(candidates, "RC_inf", opts)


# ---------------------------------------------------------------------------
# Hull and region geometry


def hull(points, tol: float = 1e-9) -> list[tuple[float, float]]:
    """Upper-right convex (Pareto) hull of nonnegative rate pairs.

    Returns the Pareto vertices ordered by r1 descending.  Dominated,
    duplicate and chord-collinear points are removed (collinearity measured
    against ``tol`` scaled by the bounding box, so vertices are stable under
    small perturbations such as 12-digit rounding).  Input order never
    matters.  Idempotent.
    """
    best_y: dict[float, float] = {}
    for x, y in points:
        x, y = float(x), float(y)
        if not (math.isfinite(x) and math.isfinite(y)):
            raise ValueError(f"non-finite rate point ({x}, {y})")
        x, y = max(x, 0.0), max(y, 0.0)
        if x not in best_y or y > best_y[x]:
            best_y[x] = y
    if not best_y:
        return [(0.0, 0.0)]
    # Pareto filter: scan x descending, keep strictly rising y.
    pareto: list[tuple[float, float]] = []
    top = -math.inf
    for x in sorted(best_y, reverse=True):
        y = best_y[x]
        if y > top:
            pareto.append((x, y))
            top = y
    pareto.reverse()  # x ascending, y descending
    if len(pareto) <= 2:
        return pareto[::-1]
    span_x = pareto[-1][0] - pareto[0][0]
    span_y = pareto[0][1] - pareto[-1][1]
    cross_tol = tol * max(1e-30, span_x * span_y)
    chain: list[tuple[float, float]] = []
    for pt in pareto:
        chain.append(pt)
        while len(chain) >= 3:
            (xa, ya), (xb, yb), (xc, yc) = chain[-3], chain[-2], chain[-1]
            cross = (xb - xa) * (yc - ya) - (yb - ya) * (xc - xa)
            if cross >= -cross_tol:  # middle point on/below the chord
                chain.pop(-2)
            else:
                break
    chain.reverse()
    return chain


def _ceiling(vertices_desc, x: float) -> float:
    """Max r2 of the region at abscissa x; -inf beyond the region's r1 reach."""
    v = vertices_desc
    if x > v[0][0]:
        return -math.inf
    if x <= v[-1][0]:
        return v[-1][1]
    for i in range(len(v) - 1):
        xa, ya = v[i]
        xb, yb = v[i + 1]
        if xb <= x <= xa:
            if xa == xb:
                return max(ya, yb)
            t = (x - xb) / (xa - xb)
            return yb + t * (ya - yb)
    return v[-1][1]


def _vertices_of(region) -> list[tuple[float, float]]:
    if isinstance(region, Frontier):
        return region.vertices()
    if hasattr(region, "vertices"):
        return list(region.vertices())
    return list(region)


def _inside(vertices_desc, x: float, y: float, tol: float) -> bool:
    if x < -tol or y < -tol:
        return False
    if x > vertices_desc[0][0] + tol:
        return False
    return y <= _ceiling(vertices_desc, min(x, vertices_desc[0][0])) + tol


def _region_polygon(vertices_desc) -> list[tuple[float, float]]:
    """Closed boundary of the region (origin, bottom edge, frontier, left edge)."""
    x0 = vertices_desc[0][0]
    yk = vertices_desc[-1][1]
    poly: list[tuple[float, float]] = [(0.0, 0.0)]
    if x0 > 0.0:
        poly.append((x0, 0.0))
    for pt in vertices_desc:
        if pt != poly[-1]:
            poly.append(pt)
    if yk > 0.0 and poly[-1] != (0.0, yk):
        poly.append((0.0, yk))
    return poly


def _segment_distance(p, a, b) -> float:
    px, py = p
    ax, ay = a
    bx, by = b
    dx, dy = bx - ax, by - ay
    norm2 = dx * dx + dy * dy
    if norm2 == 0.0:
        return math.hypot(px - ax, py - ay)
    t = max(0.0, min(1.0, ((px - ax) * dx + (py - ay) * dy) / norm2))
    return math.hypot(px - ax - t * dx, py - ay - t * dy)


def region_deviation(region_a, region_b) -> float:
    """How far region_a sticks out of region_b, in bits (0 when contained).

    Exact for convex regions: the maximum of the distance-to-b over a's
    boundary is attained at a's polygon vertices.
    """
    va, vb = _vertices_of(region_a), _vertices_of(region_b)
    poly_b = _region_polygon(vb)
    edges = list(zip(poly_b, poly_b[1:] + poly_b[:1]))
    worst = 0.0
    for pt in _region_polygon(va):
        if _inside(vb, pt[0], pt[1], 0.0):
            continue
        worst = max(worst, min(_segment_distance(pt, a, b) for a, b in edges))
    return worst


def hausdorff(region_a, region_b) -> float:
    """Hausdorff distance between two rate regions (as filled sets)."""
    return max(region_deviation(region_a, region_b),
               region_deviation(region_b, region_a))


def dominates(region_a, region_b, tol: float = 0.0) -> bool:
    """True iff every point of region_b lies inside region_a expanded by tol."""
    va, vb = _vertices_of(region_a), _vertices_of(region_b)
    return all(_inside(va, x, y, tol) for x, y in vb)


def equal_rate_value(region) -> float:
    """Largest t with (t, t) inside the region (the symmetric-rate point)."""
    v = _vertices_of(region)
    lo, hi = 0.0, max(v[0][0], v[-1][1]) + 1.0
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if _inside(v, mid, mid, 0.0):
            lo = mid
        else:
            hi = mid
    return lo
