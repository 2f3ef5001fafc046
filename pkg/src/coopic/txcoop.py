"""Transmitter-cooperation achievable rates.

Three half-duplex phases: in phases 1 and 2 each source broadcasts a
conferencing stream to the other source together with a relayed stream for
the opposite receiver (dirty-paper coded in an order set by the direct/cross
gain comparison); in phase 3 the two sources, having exchanged messages, act
as a two-antenna transmitter and broadcast a joint stream per user plus a
fresh stream per user, with joint-stream covariances built from the dual
multiple-access solution.

Also provides the recycled/parallel-DPC baseline (diagonal covariances, no
coherent combining) and the infinite-conferencing limit of the scheme.

All functions are pure; rates are bits per channel use.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .model import (
    ChannelGains,
    DegeneratePhase,
    InfiniteGain,
    InvalidAllocation,
    NotInfinite,
    PowerBudget,
    RatePair,
    Simplex2,
    Simplex3,
    Sym2,
    TcAllocation,
    cap,
    inv2,
    quad_form,
)

__all__ = [
    "TcPhaseRates",
    "TcCovariances",
    "tc_phase12_rates",
    "tc_phase3_covariances",
    "tc_phase3_rates",
    "tc_phase_rates",
    "tc_rate_pair",
    "rdpc_covariances",
    "rdpc_rate_pair",
    "tc_limit_rate_pair",
    "tc_limit_region",
]


@dataclass(frozen=True)
class TcPhaseRates:
    """Per-stream rate constraints of the transmitter-cooperation scheme.

    r1_r1 / r2_r1 -- conferencing rates decodable by the peer source
    r1_1, r1_2    -- user-1 relayed-stream pieces receiver 3 collects in
                     phases 1 and 2 (r2_1, r2_2 likewise for receiver 4)
    r1_3 / r2_3   -- joint-stream rates decoded in phase 3
    r1_d / r2_d   -- fresh-stream rates decoded in phase 3
    """

    r1_r1: float = 0.0
    r2_r1: float = 0.0
    r1_1: float = 0.0
    r2_1: float = 0.0
    r1_2: float = 0.0
    r2_2: float = 0.0
    r1_3: float = 0.0
    r2_3: float = 0.0
    r1_d: float = 0.0
    r2_d: float = 0.0


@dataclass(frozen=True)
class TcCovariances:
    """Phase-3 joint-stream covariances.

    ``sigma1`` is the inverse-shaped matrix carried by the stream encoded
    last (clean of interference at its receiver); ``sigma2`` is the scaled
    identity carried by the stream encoded first.  ``user1_clean`` records
    which user got the clean slot: True when receiver 3's combined gain
    exceeds receiver 4's, False otherwise (ties included).
    """

    sigma1: Sym2
    sigma2: Sym2
    user1_clean: bool


def _phase_power(share: float, total: float, duration: float, what: str) -> float:
    """Burst power share*total/duration; zero share means a silent phase."""
    if share == 0.0:
        return 0.0
    if duration == 0.0:
        raise InvalidAllocation(f"{what}: positive power share {share} on zero-duration phase")
    return share * total / duration


def _check_finite_conferencing(g: ChannelGains) -> None:
    if math.isinf(g.c12):
        raise InfiniteGain("c12 is infinite; use tc_limit_region / tc_limit_rate_pair")


def _stream_powers(g: ChannelGains, p: PowerBudget, a: TcAllocation):
    """Phase-3 per-stream power scalars (joint user-1, joint user-2, fresh)."""
    p1_3 = _phase_power(a.kappa.w2, p.p1, a.lam.w3, "kappa2")
    p2_3 = _phase_power(a.gamma.w2, p.p2, a.lam.w3, "gamma2")
    s_joint1 = a.mu.w2 * p1_3 + a.eta.w3 * p2_3
    s_joint2 = a.mu.w3 * p1_3 + a.eta.w2 * p2_3
    fresh1 = a.mu.w1 * p1_3
    fresh2 = a.eta.w1 * p2_3
    return s_joint1, s_joint2, fresh1, fresh2


def tc_phase12_rates(g: ChannelGains, p: PowerBudget, a: TcAllocation) -> TcPhaseRates:
    """Phase 1-2 rates (conferencing and relayed-stream listening).

    A zero-duration phase contributes zero rate and must carry zero power
    share (kappa1 for phase 1, gamma1 for phase 2), else InvalidAllocation.
    """
    _check_finite_conferencing(g)
    lam1, lam2 = a.lam.w1, a.lam.w2
    p1_1 = _phase_power(a.kappa.w1, p.p1, lam1, "kappa1")
    p2_1 = _phase_power(a.gamma.w1, p.p2, lam2, "gamma1")

    # Phase 1: source 1 broadcasts; DPC order set by c13 > c14.
    r1_r1 = lam1 * cap(g.c12 ** 2 * a.alpha.w1 * p1_1)
    if g.c13 > g.c14:
        r1_1 = lam1 * cap(g.c13 ** 2 * a.alpha.w1 * p1_1)
        r2_1 = lam1 * cap(g.c14 ** 2 * a.alpha.w2 * p1_1 / (1.0 + g.c14 ** 2 * a.alpha.w1 * p1_1))
    else:
        r1_1 = lam1 * cap(g.c13 ** 2 * a.alpha.w1 * p1_1 / (1.0 + g.c13 ** 2 * a.alpha.w2 * p1_1))
        r2_1 = lam1 * cap(g.c14 ** 2 * a.alpha.w2 * p1_1)

    # Phase 2: source 2 broadcasts; DPC order set by c24 > c23.
    r2_r1 = lam2 * cap(g.c12 ** 2 * a.beta.w1 * p2_1)
    if g.c24 > g.c23:
        r2_2 = lam2 * cap(g.c24 ** 2 * a.beta.w1 * p2_1)
        r1_2 = lam2 * cap(g.c23 ** 2 * a.beta.w2 * p2_1 / (1.0 + g.c23 ** 2 * a.beta.w1 * p2_1))
    else:
        r2_2 = lam2 * cap(g.c24 ** 2 * a.beta.w1 * p2_1 / (1.0 + g.c24 ** 2 * a.beta.w2 * p2_1))
        r1_2 = lam2 * cap(g.c23 ** 2 * a.beta.w2 * p2_1)

    return TcPhaseRates(r1_r1=r1_r1, r2_r1=r2_r1, r1_1=r1_1, r2_1=r2_1, r1_2=r1_2, r2_2=r2_2)


def _duality_covariances(g: ChannelGains, s_joint1: float, s_joint2: float,
                         user1_clean: bool) -> TcCovariances:
    """Joint-stream covariances from the dual multiple-access construction.

    The clean stream's covariance is shaped by the inverse of
    I + u u^T * (other stream's power), with u the encoding-order-dependent
    per-source gain vector; the other stream gets a scaled identity whose
    scale is inflated by the clean stream's leakage into the peer receiver.
    """
    if user1_clean:
        b = Sym2.identity() + Sym2.outer(g.h2, s_joint2)
        sigma1 = inv2(b) * s_joint1
        a_scale = 1.0 + quad_form(g.h2, sigma1)
        sigma2 = Sym2.identity(a_scale * s_joint2)
    else:
        b = Sym2.identity() + Sym2.outer(g.h1, s_joint1)
        sigma1 = inv2(b) * s_joint2
        a_scale = 1.0 + quad_form(g.h1, sigma1)
        sigma2 = Sym2.identity(a_scale * s_joint1)
    return TcCovariances(sigma1=sigma1, sigma2=sigma2, user1_clean=user1_clean)


def tc_phase3_covariances(g: ChannelGains, p: PowerBudget, a: TcAllocation) -> TcCovariances:
    """Phase-3 covariances for the two joint streams.

    Raises DegeneratePhase when the joint phase has zero duration.
    """
    _check_finite_conferencing(g)
    if a.lam.w3 == 0.0:
        raise DegeneratePhase("phase 3 has zero duration")
    s_joint1, s_joint2, _, _ = _stream_powers(g, p, a)
    user1_clean = g.c13 + g.c23 > g.c14 + g.c24
    return _duality_covariances(g, s_joint1, s_joint2, user1_clean)


def rdpc_covariances(g: ChannelGains, p: PowerBudget, a: TcAllocation) -> TcCovariances:
    """Diagonal joint-stream covariances: the no-coherent-combining baseline.

    Equivalent to random, unsynchronized carrier phases between the sources,
    which reduces the scheme to recycled/parallel DPC.
    """
    _check_finite_conferencing(g)
    if a.lam.w3 == 0.0:
        raise DegeneratePhase("phase 3 has zero duration")
    p1_3 = _phase_power(a.kappa.w2, p.p1, a.lam.w3, "kappa2")
    p2_3 = _phase_power(a.gamma.w2, p.p2, a.lam.w3, "gamma2")
    joint1 = Sym2.diag(a.mu.w2 * p1_3, a.eta.w3 * p2_3)
    joint2 = Sym2.diag(a.mu.w3 * p1_3, a.eta.w2 * p2_3)
    user1_clean = g.c13 + g.c23 > g.c14 + g.c24
    if user1_clean:
        return TcCovariances(sigma1=joint1, sigma2=joint2, user1_clean=True)
    return TcCovariances(sigma1=joint2, sigma2=joint1, user1_clean=False)


def tc_phase3_rates(g: ChannelGains, p: PowerBudget, a: TcAllocation,
                    cov: TcCovariances) -> TcPhaseRates:
    """Phase-3 joint and fresh stream rates under the given covariances.

    The receiver of the clean stream decodes its joint stream first (only
    its own fresh stream plus noise in the denominator), then its fresh
    stream interference-free.  The other receiver sees the clean stream's
    leakage plus both fresh streams as noise.
    """
    lam3 = a.lam.w3
    if lam3 == 0.0:
        return TcPhaseRates()
    _, _, fresh1, fresh2 = _stream_powers(g, p, a)
    i1_at3 = g.c13 ** 2 * fresh1
    i1_at4 = g.c14 ** 2 * fresh1
    i2_at4 = g.c24 ** 2 * fresh2
    i2_at3 = g.c23 ** 2 * fresh2
    if cov.user1_clean:
        r1_3 = lam3 * cap(quad_form(g.g1, cov.sigma1) / (1.0 + i1_at3))
        r1_d = lam3 * cap(i1_at3)
        leak = quad_form(g.g2, cov.sigma1)
        r2_3 = lam3 * cap(quad_form(g.g2, cov.sigma2) / (1.0 + leak + i1_at4 + i2_at4))
        r2_d = lam3 * cap(i2_at4 / (1.0 + leak + i1_at4))
    else:
        r2_3 = lam3 * cap(quad_form(g.g2, cov.sigma1) / (1.0 + i2_at4))
        r2_d = lam3 * cap(i2_at4)
        leak = quad_form(g.g1, cov.sigma1)
        r1_3 = lam3 * cap(quad_form(g.g1, cov.sigma2) / (1.0 + leak + i1_at3 + i2_at3))
        r1_d = lam3 * cap(i1_at3 / (1.0 + leak + i2_at3))
    return TcPhaseRates(r1_3=r1_3, r2_3=r2_3, r1_d=r1_d, r2_d=r2_d)


def tc_phase_rates(g: ChannelGains, p: PowerBudget, a: TcAllocation,
                   cov: TcCovariances | None = None) -> TcPhaseRates:
    """All per-stream rates; ``cov`` overrides the phase-3 covariances."""
    p12 = tc_phase12_rates(g, p, a)
    if a.lam.w3 == 0.0:
        if a.kappa.w2 > 0.0 or a.gamma.w2 > 0.0:
            raise InvalidAllocation("positive phase-3 power share on zero-duration phase")
        return p12
    if cov is None:
        cov = tc_phase3_covariances(g, p, a)
    p3 = tc_phase3_rates(g, p, a, cov)
    return TcPhaseRates(
        r1_r1=p12.r1_r1, r2_r1=p12.r2_r1,
        r1_1=p12.r1_1, r2_1=p12.r2_1, r1_2=p12.r1_2, r2_2=p12.r2_2,
        r1_3=p3.r1_3, r2_3=p3.r2_3, r1_d=p3.r1_d, r2_d=p3.r2_d,
    )


def _combine(r: TcPhaseRates) -> RatePair:
    # Each user's relayed stream is limited both by the conferencing hop and
    # by what its receiver collects across the three phases.
    r1 = r.r1_d + min(r.r1_r1, r.r1_1 + r.r1_2 + r.r1_3)
    r2 = r.r2_d + min(r.r2_r1, r.r2_1 + r.r2_2 + r.r2_3)
    return RatePair(r1, r2)


def tc_rate_pair(g: ChannelGains, p: PowerBudget, a: TcAllocation) -> RatePair:
    """Achievable (R1, R2) of the transmitter-cooperation scheme."""
    return _combine(tc_phase_rates(g, p, a))


def rdpc_rate_pair(g: ChannelGains, p: PowerBudget, a: TcAllocation) -> RatePair:
    """Achievable (R1, R2) of the recycled/parallel-DPC baseline."""
    return _combine(tc_phase_rates(g, p, a, cov=rdpc_covariances(g, p, a)))


def tc_limit_rate_pair(g: ChannelGains, p: PowerBudget, mu: Simplex3, eta: Simplex3,
                       user1_clean: bool) -> RatePair:
    """Joint-phase-only rate pair in the infinite-conferencing limit.

    With c12 = +inf the exchange phases take vanishing time and the
    conferencing constraints drop out, leaving the full-duration joint
    broadcast.  Both encoding orders are admissible in the limit (the two
    sources form one two-antenna transmitter), so the order is an explicit
    argument and the region is the union over both.
    """
    if not math.isinf(g.c12):
        raise NotInfinite("c12 is finite; use tc_rate_pair")
    s_joint1 = mu.w2 * p.p1 + eta.w3 * p.p2
    s_joint2 = mu.w3 * p.p1 + eta.w2 * p.p2
    cov = _duality_covariances(g, s_joint1, s_joint2, user1_clean)
    a = TcAllocation(lam=Simplex3(0.0, 0.0, 1.0), kappa=Simplex2(0.0, 1.0),
                     gamma=Simplex2(0.0, 1.0), alpha=Simplex2(0.5, 0.5),
                     beta=Simplex2(0.5, 0.5), mu=mu, eta=eta)
    rates = tc_phase3_rates(g, p, a, cov)
    return RatePair(rates.r1_d + rates.r1_3, rates.r2_d + rates.r2_3)


def tc_limit_region(g: ChannelGains, p: PowerBudget, opts=None):
    """Frontier of the infinite-conferencing transmitter-cooperation region.

    Sweeps the joint-phase power splits (and both encoding orders) with the
    generic frontier machinery; the result coincides with the pooled-power
    two-antenna broadcast region.
    """
    if not math.isinf(g.c12):
        raise NotInfinite("c12 is finite; use frontier.trace")
    from . import frontier

    return frontier.trace_tc_limit(g, p, opts)
