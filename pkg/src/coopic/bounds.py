"""Outer bounds and no-cooperation baselines.

Single-user rates are capped by the half-duplex relay-channel cut-set bound
(listen fraction and source/relay correlation both maximized); the sum rate
is capped by the pooled-power two-antenna broadcast bound for transmitter
cooperation and by the two-antenna multiple-access bound for receiver
cooperation.  The strong-interference capacity region without cooperation
serves as the reference baseline.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import (
    ChannelGains,
    NotStrongInterference,
    PowerBudget,
    Sym2,
    cap,
    logdet2,
)

__all__ = [
    "OuterBound",
    "relay_cutset_bound",
    "mimo_bc_sum_bound",
    "mimo_mac_sum_bound",
    "tc_outer_region",
    "rc_outer_region",
    "strong_ic_region",
    "bc_region_vertices",
]

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
_GRID_STEPS = 1000


@dataclass(frozen=True)
class OuterBound:
    """Region {R1, R2 >= 0 : R1 <= r1_max, R2 <= r2_max, R1+R2 <= sum_max}.

    The three constraints are independent; sum_max may exceed
    r1_max + r2_max (then it is simply not binding).
    """

    r1_max: float
    r2_max: float
    sum_max: float
    kind: str

    def violation(self, r1: float, r2: float) -> float:
        """Largest constraint excess of the point (negative when inside)."""
        return max(r1 - self.r1_max, r2 - self.r2_max, r1 + r2 - self.sum_max)

    def contains(self, r1: float, r2: float, tol: float = 0.0) -> bool:
        return self.violation(r1, r2) <= tol

    def vertices(self) -> list[tuple[float, float]]:
        """Pareto vertices of the region, r1 descending."""
        if math.isinf(self.sum_max) or self.sum_max >= self.r1_max + self.r2_max:
            return [(self.r1_max, self.r2_max)]
        x1 = min(self.r1_max, self.sum_max)
        v1 = (x1, min(self.r2_max, self.sum_max - x1))
        y2 = min(self.r2_max, self.sum_max)
        v2 = (min(self.r1_max, self.sum_max - y2), y2)
        return [v1] if v1 == v2 else [v1, v2]


def _golden_max(f, lo: float, hi: float, iters: int = 80) -> float:
    """Golden-section refinement of a max on [lo, hi]; returns the best value."""
    a, b = lo, hi
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    best = max(fc, fd)
    for _ in range(iters):
        if b - a < 1e-12:
            break
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = f(d)
        best = max(best, fc, fd)
    return best


def _grid_golden_max(f, lo: float, hi: float) -> float:
    """Dense-grid scan followed by golden-section refinement around the best cell."""
    if hi <= lo:
        return f(lo)
    step = (hi - lo) / _GRID_STEPS
    best_i, best_v = 0, -math.inf
    for i in range(_GRID_STEPS + 1):
        v = f(lo + i * step)
        if v > best_v:
            best_i, best_v = i, v
    a = lo + max(0, best_i - 1) * step
    b = lo + min(_GRID_STEPS, best_i + 1) * step
    return max(best_v, _golden_max(f, a, b))


def _cutset_cuts(sd: float, sr: float, rd: float, p_src: float, p_rel: float,
                 rho: float, alpha: float, e: float) -> float:
    """min of the two relay cuts at listen fraction alpha, source listen-phase
    energy share e and correlation rho; per-phase powers burst the average
    budgets (energy alpha*Pa + (1-alpha)*Pb = p_src, (1-alpha)*Pr = p_rel)."""
    lt, ft = 0.0, 0.0  # listen-phase terms of cut 1 / cut 2
    lf, ff = 0.0, 0.0
    if alpha > 0.0 and e > 0.0:
        pa = e * p_src / alpha
        lt = alpha * cap((sr * sr + sd * sd) * pa)
        ft = alpha * cap(sd * sd * pa)
    if alpha < 1.0:
        pb = (1.0 - e) * p_src / (1.0 - alpha)
        pr = p_rel / (1.0 - alpha)
        lf = (1.0 - alpha) * cap((1.0 - rho) * sd * sd * pb)
        phi = math.sqrt(rho * sd * sd * rd * rd * pb * pr)
        ff = (1.0 - alpha) * cap(sd * sd * pb + rd * rd * pr + 2.0 * phi)
    return min(lt + lf, ft + ff)


def _cutset_alpha_energy_max(sd, sr, rd, p_src, p_rel, rho: float) -> float:
    """Exact max over (listen fraction, energy share) at fixed rho.

    Both cuts are perspective compositions, hence jointly concave in the
    fraction/share pair, so nested golden-section search is global.
    """
    def inner(alpha: float) -> float:
        return _golden_max(lambda e: _cutset_cuts(sd, sr, rd, p_src, p_rel, rho, alpha, e),
                           0.0, 1.0, iters=40)

    return _golden_max(inner, 0.0, 1.0, iters=40)


def _relay_cutset(sd: float, sr: float, rd: float, p_src: float, p_rel: float) -> float:
    """Half-duplex relay cut-set bound for one source/relay/destination triple.

    sd, sr, rd are the source-destination, source-relay and
    relay-destination gains.  Maximizes the min-cut over the correlation,
    the listen fraction and the per-phase energy split (the schemes burst
    power into short phases, so flat per-phase powers would not be a valid
    upper bound).  A vectorized grid locates the optimum; the correlation
    is refined by golden section with the inner maximization solved exactly
    (it is jointly concave).  An infinite sr or rd has a closed-form limit.
    """
    if math.isinf(sr):
        # Unbounded exchange cut: full-time coherent combining at rho = 1.
        return cap((math.sqrt(sd * sd * p_src) + math.sqrt(rd * rd * p_rel)) ** 2)
    if math.isinf(rd):
        # Unbounded forwarding cut: full-time joint reception.
        return cap((sr * sr + sd * sd) * p_src)
    if p_src == 0.0:
        return 0.0

    n = 81
    ln2 = math.log(2.0)
    rho = np.linspace(0.0, 1.0, n).reshape(-1, 1, 1)
    alpha = np.linspace(0.0, 1.0, n).reshape(1, -1, 1)
    e = np.linspace(0.0, 1.0, n).reshape(1, 1, -1)
    # Endpoint columns (alpha = 0 or 1) produce masked inf/nan lanes; the
    # np.where picks the analytic limits there.
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        a_safe = np.maximum(alpha, 1e-300)
        b_safe = np.maximum(1.0 - alpha, 1e-300)
        pa = e * p_src / a_safe
        pb = (1.0 - e) * p_src / b_safe
        pr = p_rel / b_safe
        listen1 = np.where(alpha > 0.0, alpha * np.log1p((sr * sr + sd * sd) * pa) / ln2, 0.0)
        listen2 = np.where(alpha > 0.0, alpha * np.log1p(sd * sd * pa) / ln2, 0.0)
        fwd1 = np.where(alpha < 1.0,
                        (1.0 - alpha) * np.log1p((1.0 - rho) * sd * sd * pb) / ln2, 0.0)
        phi = np.sqrt(rho * sd * sd * rd * rd * pb * pr)
        fwd2 = np.where(alpha < 1.0,
                        (1.0 - alpha) * np.log1p(sd * sd * pb + rd * rd * pr + 2.0 * phi) / ln2,
                        0.0)
        grid_val = np.minimum(listen1 + fwd1, listen2 + fwd2)
    grid_val = np.nan_to_num(grid_val, nan=-math.inf)
    i = int(np.argmax(grid_val))
    rho_best = float(rho.ravel()[i // (n * n)])
    best = float(grid_val.ravel()[i])

    lo = max(0.0, rho_best - 1.5 / (n - 1))
    hi = min(1.0, rho_best + 1.5 / (n - 1))
    refined = _golden_max(
        lambda r: _cutset_alpha_energy_max(sd, sr, rd, p_src, p_rel, r), lo, hi, iters=30)
    return max(best, refined)


def relay_cutset_bound(g: ChannelGains, p: PowerBudget, user: int,
                       cooperation: str = "tx") -> float:
    """Single-user cut-set cap with the peer node acting as a relay.

    Under transmitter cooperation the peer source relays over c12; under
    receiver cooperation the peer receiver relays over c34 using its own
    power budget.  ``user`` is 1 or 2.
    """
    if user not in (1, 2):
        raise ValueError(f"user must be 1 or 2, got {user}")
    if cooperation == "tx":
        if user == 1:
            return _relay_cutset(g.c13, g.c12, g.c23, p.p1, p.p2)
        return _relay_cutset(g.c24, g.c12, g.c14, p.p2, p.p1)
    if cooperation == "rx":
        if user == 1:
            return _relay_cutset(g.c13, g.c14, g.c34, p.p1, p.p4)
        return _relay_cutset(g.c24, g.c23, g.c34, p.p2, p.p3)
    raise ValueError(f"cooperation must be 'tx' or 'rx', got {cooperation!r}")


def mimo_bc_sum_bound(g: ChannelGains, p_total: float) -> float:
    """Sum-rate cap of the pooled-power two-antenna broadcast channel.

    Maximizes log2 det(I + q1 g1^T g1 + q2 g2^T g2) over q1 + q2 = p_total
    by a dense grid plus golden-section refinement.
    """
    if p_total < 0.0:
        raise ValueError(f"p_total must be nonnegative, got {p_total}")
    if p_total == 0.0:
        return 0.0

    def f(q: float) -> float:
        return logdet2(Sym2.outer(g.g1, q) + Sym2.outer(g.g2, p_total - q))

    return _grid_golden_max(f, 0.0, p_total)


def mimo_mac_sum_bound(g: ChannelGains, p: PowerBudget) -> float:
    """Sum-rate cap of the two-antenna multiple-access channel."""
    return logdet2(Sym2.outer(g.h1, p.p1) + Sym2.outer(g.h2, p.p2))


def tc_outer_region(g: ChannelGains, p: PowerBudget) -> OuterBound:
    """Outer bound for transmitter cooperation."""
    return OuterBound(
        r1_max=relay_cutset_bound(g, p, 1, "tx"),
        r2_max=relay_cutset_bound(g, p, 2, "tx"),
        sum_max=mimo_bc_sum_bound(g, p.p1 + p.p2),
        kind="TC",
    )


def rc_outer_region(g: ChannelGains, p: PowerBudget) -> OuterBound:
    """Outer bound for receiver cooperation."""
    return OuterBound(
        r1_max=relay_cutset_bound(g, p, 1, "rx"),
        r2_max=relay_cutset_bound(g, p, 2, "rx"),
        sum_max=mimo_mac_sum_bound(g, p),
        kind="RC",
    )


def strong_ic_region(g: ChannelGains, p: PowerBudget) -> OuterBound:
    """Capacity region of the non-cooperating strong interference channel.

    Requires cross gains at least as large as direct gains (c14 >= c13 and
    c23 >= c24); each receiver then decodes both messages, so the region is
    the intersection of the two receivers' multiple-access regions.
    """
    if not (g.c14 >= g.c13 and g.c23 >= g.c24):
        raise NotStrongInterference(
            f"needs c14 >= c13 and c23 >= c24, got c13={g.c13}, c14={g.c14}, "
            f"c23={g.c23}, c24={g.c24}")
    return OuterBound(
        r1_max=cap(g.c13 ** 2 * p.p1),
        r2_max=cap(g.c24 ** 2 * p.p2),
        sum_max=min(cap(g.c13 ** 2 * p.p1 + g.c23 ** 2 * p.p2),
                    cap(g.c14 ** 2 * p.p1 + g.c24 ** 2 * p.p2)),
        kind="IC",
    )


def bc_region_vertices(g: ChannelGains, p_total: float,
                       samples: int = 2000) -> list[tuple[float, float]]:
    """Pareto vertices of the pooled-power two-antenna broadcast region.

    Computed through the dual multiple-access description: the union over
    power splits q1 + q2 = p_total of the per-split pentagons, sampled on a
    grid and convexified.  This is the region the transmitter-cooperation
    scheme attains at infinite conferencing gain.
    """
    from .frontier import hull  # local import: bounds stays usable without frontier

    if p_total <= 0.0:
        return [(0.0, 0.0)]
    n1 = g.g1[0] ** 2 + g.g1[1] ** 2
    n2 = g.g2[0] ** 2 + g.g2[1] ** 2
    points: list[tuple[float, float]] = []
    for i in range(samples + 1):
        q1 = p_total * i / samples
        q2 = p_total - q1
        c1 = cap(q1 * n1)
        c2 = cap(q2 * n2)
        s = logdet2(Sym2.outer(g.g1, q1) + Sym2.outer(g.g2, q2))
        points.append((c1, max(s - c1, 0.0)))
        points.append((max(s - c2, 0.0), c2))
    return hull(points)
