"""Receiver-cooperation achievable rates.

Three half-duplex phases: in phase 1 both sources transmit and both
receivers listen; in phases 2 and 3 the receivers take turns forwarding to
each other a Wyner-Ziv-compressed copy of their phase-1 observation plus a
re-encoded relayed data stream, while the sources keep sending fresh data.
Decoding of the phase-1 signals then uses the equivalent one-transmit /
two-receive-antenna interference channel formed by each receiver's own
observation and the compressed copy of its peer's, split into four cases by
equivalent interference strength.

All functions are pure; rates are bits per channel use.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .model import (
    ChannelGains,
    InfiniteGain,
    InvalidAllocation,
    NotInfinite,
    PowerBudget,
    RatePair,
    RcAllocation,
    Sym2,
    cap,
    logdet2,
    quad_form,
)

__all__ = [
    "RcPhaseRates",
    "EquivalentMimoIc",
    "rc_phase23_rates",
    "rc_compression",
    "rc_phase1_rates",
    "rc_phase_rates",
    "rc_rate_pair",
    "rc_limit_rate_pair",
    "rc_limit_region",
    "pentagon_corner",
]


@dataclass(frozen=True)
class RcPhaseRates:
    """Per-stream rate constraints of the receiver-cooperation scheme.

    r1_d / r2_d     -- fresh-data rates sent in phases 2 / 3
    r1_s / r2_s     -- compressed-observation forwarding rates (4->3 / 3->4)
    r1_2r1, r1_2r2  -- user-1 relayed stream: source-to-helper hop and
                       helper-to-receiver hop (r2_* likewise for user 2)
    r1_r1 / r2_r1   -- phase-1 rates decoded via the equivalent two-antenna
                       channel
    """

    r1_d: float = 0.0
    r2_d: float = 0.0
    r1_s: float = 0.0
    r2_s: float = 0.0
    r1_2r1: float = 0.0
    r1_2r2: float = 0.0
    r2_2r1: float = 0.0
    r2_2r2: float = 0.0
    r1_r1: float = 0.0
    r2_r1: float = 0.0


@dataclass(frozen=True)
class EquivalentMimoIc:
    """Equivalent 1-transmit/2-receive-antenna interference channel.

    sigma1_sq / sigma2_sq are the compression-noise variances of the
    observations reconstructed at the peer receiver (+inf when nothing was
    forwarded); zeta_i = 1/(1 + sigma_i_sq) scales the borrowed antenna.
    The four gain vectors give each (transmitter, receiver) pair's channel
    into the receiver's two effective antennas, and the SNR/INR matrices are
    the matching rank-one signal and interference covariances.
    """

    sigma1_sq: float
    sigma2_sq: float
    zeta1: float
    zeta2: float
    c13v: tuple[float, float]
    c23v: tuple[float, float]
    c14v: tuple[float, float]
    c24v: tuple[float, float]
    snr1: Sym2
    inr1: Sym2
    snr2: Sym2
    inr2: Sym2


def _phase_power(share: float, total: float, duration: float, what: str) -> float:
    if share == 0.0:
        return 0.0
    if duration == 0.0:
        raise InvalidAllocation(f"{what}: positive power share {share} on zero-duration phase")
    return share * total / duration


def _check_finite_conferencing(g: ChannelGains) -> None:
    if math.isinf(g.c34):
        raise InfiniteGain("c34 is infinite; use rc_limit_region / rc_limit_rate_pair")


def rc_phase23_rates(g: ChannelGains, p: PowerBudget, a: RcAllocation) -> RcPhaseRates:
    """Phase 2-3 rates by direct SINR evaluation.

    The forwarding node of a zero-duration phase (node 4 in phase 2, node 3
    in phase 3) simply stays silent; source power shares on a zero-duration
    phase raise InvalidAllocation.
    """
    _check_finite_conferencing(g)
    lam2, lam3 = a.lam.w2, a.lam.w3
    p1_2 = _phase_power(a.mu.w2, p.p1, lam2, "mu2")
    p2_2 = _phase_power(a.eta.w2, p.p2, lam2, "eta2")
    p1_3 = _phase_power(a.mu.w3, p.p1, lam3, "mu3")
    p2_3 = _phase_power(a.eta.w3, p.p2, lam3, "eta3")
    # Receiver helpers spend their whole budget inside one phase; with a
    # zero-duration phase that budget is simply unusable.
    p4_1 = a.alpha.w1 * p.p4 / lam2 if lam2 > 0.0 else 0.0
    p4_2 = a.alpha.w2 * p.p4 / lam2 if lam2 > 0.0 else 0.0
    p3_1 = a.beta.w1 * p.p3 / lam3 if lam3 > 0.0 else 0.0
    p3_2 = a.beta.w2 * p.p3 / lam3 if lam3 > 0.0 else 0.0

    # Phase 2: receiver 3 listens to sources 1, 2 and helper 4.
    base2 = 1.0 + g.c13 ** 2 * p1_2 + g.c23 ** 2 * p2_2
    r1_2r2 = lam2 * cap(g.c34 ** 2 * p4_2 / (base2 + g.c34 ** 2 * p4_1))
    r1_s = lam2 * cap(g.c34 ** 2 * p4_1 / base2)
    r2_2r1 = lam2 * cap(g.c23 ** 2 * p2_2 / (1.0 + g.c13 ** 2 * p1_2))
    r1_d = lam2 * cap(g.c13 ** 2 * p1_2)

    # Phase 3: receiver 4 listens to sources 1, 2 and helper 3.
    base3 = 1.0 + g.c14 ** 2 * p1_3 + g.c24 ** 2 * p2_3
    r2_2r2 = lam3 * cap(g.c34 ** 2 * p3_2 / (base3 + g.c34 ** 2 * p3_1))
    r2_s = lam3 * cap(g.c34 ** 2 * p3_1 / base3)
    r1_2r1 = lam3 * cap(g.c14 ** 2 * p1_3 / (1.0 + g.c24 ** 2 * p2_3))
    r2_d = lam3 * cap(g.c24 ** 2 * p2_3)

    return RcPhaseRates(r1_d=r1_d, r2_d=r2_d, r1_s=r1_s, r2_s=r2_s,
                        r1_2r1=r1_2r1, r1_2r2=r1_2r2, r2_2r1=r2_2r1, r2_2r2=r2_2r2)


def _compression_noise(num: float, exponent: float, denom: float) -> float:
    """num / ((2**exponent - 1) * denom), with the zero/huge-exponent limits."""
    if exponent <= 0.0:
        return math.inf
    if exponent > 512.0:  # noise underflows to zero well before 2**x overflows
        return 0.0
    return (num / denom) / (2.0 ** exponent - 1.0)


def rc_compression(g: ChannelGains, p: PowerBudget, a: RcAllocation,
                   r1_s: float, r2_s: float) -> EquivalentMimoIc:
    """Wyner-Ziv compression noises and the equivalent two-antenna channel.

    A zero forwarding rate yields infinite compression noise and a dead
    borrowed antenna (zeta = 0); no special-casing is needed downstream
    because the equivalent gains then contain exact zeros.
    """
    lam1 = a.lam.w1
    if lam1 == 0.0:
        raise InvalidAllocation("compression requires a positive phase-1 duration")
    p1_1 = _phase_power(a.mu.w1, p.p1, lam1, "mu1")
    p2_1 = _phase_power(a.eta.w1, p.p2, lam1, "eta1")
    sigma_x = Sym2.diag(p1_1, p2_1)
    at3 = 1.0 + quad_form(g.g1, sigma_x)
    at4 = 1.0 + quad_form(g.g2, sigma_x)
    cross = g.c13 * g.c14 * p1_1 + g.c23 * g.c24 * p2_1
    num = at3 * at4 - cross * cross

    sigma1_sq = _compression_noise(num, r2_s / lam1, at4)
    sigma2_sq = _compression_noise(num, r1_s / lam1, at3)
    zeta1 = 0.0 if math.isinf(sigma1_sq) else 1.0 / (1.0 + sigma1_sq)
    zeta2 = 0.0 if math.isinf(sigma2_sq) else 1.0 / (1.0 + sigma2_sq)

    rz1, rz2 = math.sqrt(zeta1), math.sqrt(zeta2)
    c13v = (g.c13, rz2 * g.c14)
    c23v = (g.c23, rz2 * g.c24)
    c14v = (rz1 * g.c13, g.c14)
    c24v = (rz1 * g.c23, g.c24)
    return EquivalentMimoIc(
        sigma1_sq=sigma1_sq, sigma2_sq=sigma2_sq, zeta1=zeta1, zeta2=zeta2,
        c13v=c13v, c23v=c23v, c14v=c14v, c24v=c24v,
        snr1=Sym2.outer(c13v, p1_1), inr1=Sym2.outer(c23v, p2_1),
        snr2=Sym2.outer(c24v, p2_1), inr2=Sym2.outer(c14v, p1_1),
    )


def pentagon_corner(a1: float, a2: float, a12: float, weight: float) -> tuple[float, float]:
    """Dominant corner of {r1 <= a1, r2 <= a2, r1 + r2 <= a12} maximizing r1 + weight*r2.

    weight = 0 favors user 1, weight = +inf favors user 2; ties go to the
    user-1-favoring corner.
    """
    c1 = min(a1, a12)
    corner_a = (c1, min(a2, max(a12 - c1, 0.0)))
    c2 = min(a2, a12)
    corner_b = (min(a1, max(a12 - c2, 0.0)), c2)
    if math.isinf(weight):
        return corner_b if corner_b[1] > corner_a[1] else corner_a
    va = corner_a[0] + weight * corner_a[1]
    vb = corner_b[0] + weight * corner_b[1]
    return corner_a if va >= vb else corner_b


def _logratio(snr: Sym2, inr: Sym2) -> float:
    """log2 |I + SNR + INR| - log2 |I + INR|: decode treating interference as noise."""
    return logdet2(snr + inr) - logdet2(inr)


def rc_phase1_rates(eq: EquivalentMimoIc, lambda1: float,
                    weight: float = 1.0) -> tuple[float, float]:
    """Phase-1 rate pair from the four-case equivalent-channel analysis.

    Cases by `equivalent` interference strength (ties count as strong):
    both strong -> joint decoding at both receivers (a pentagon; the corner
    is picked by ``weight``); one strong -> that receiver decodes and
    cancels the interference while the other treats it as noise; both weak
    -> both treat interference as noise.
    """
    if lambda1 == 0.0:
        return (0.0, 0.0)

    def sqnorm(v: tuple[float, float]) -> float:
        return v[0] * v[0] + v[1] * v[1]

    strong_at_4 = sqnorm(eq.c14v) >= sqnorm(eq.c13v)
    strong_at_3 = sqnorm(eq.c23v) >= sqnorm(eq.c24v)
    if strong_at_4 and strong_at_3:
        a1 = lambda1 * logdet2(eq.snr1)
        a2 = lambda1 * logdet2(eq.snr2)
        a12 = lambda1 * min(logdet2(eq.snr1 + eq.inr1), logdet2(eq.snr2 + eq.inr2))
        return pentagon_corner(a1, a2, a12, weight)
    if strong_at_4:
        return (lambda1 * _logratio(eq.snr1, eq.inr1), lambda1 * logdet2(eq.snr2))
    if strong_at_3:
        return (lambda1 * logdet2(eq.snr1), lambda1 * _logratio(eq.snr2, eq.inr2))
    return (lambda1 * _logratio(eq.snr1, eq.inr1), lambda1 * _logratio(eq.snr2, eq.inr2))


def rc_phase_rates(g: ChannelGains, p: PowerBudget, a: RcAllocation,
                   weight: float = 1.0) -> RcPhaseRates:
    """All per-stream rates of the receiver-cooperation scheme."""
    rates = rc_phase23_rates(g, p, a)
    if a.lam.w1 == 0.0:
        if a.mu.w1 > 0.0 or a.eta.w1 > 0.0:
            raise InvalidAllocation("positive phase-1 power share on zero-duration phase")
        return rates
    eq = rc_compression(g, p, a, rates.r1_s, rates.r2_s)
    r1_r1, r2_r1 = rc_phase1_rates(eq, a.lam.w1, weight)
    return RcPhaseRates(
        r1_d=rates.r1_d, r2_d=rates.r2_d, r1_s=rates.r1_s, r2_s=rates.r2_s,
        r1_2r1=rates.r1_2r1, r1_2r2=rates.r1_2r2,
        r2_2r1=rates.r2_2r1, r2_2r2=rates.r2_2r2,
        r1_r1=r1_r1, r2_r1=r2_r1,
    )


def rc_rate_pair(g: ChannelGains, p: PowerBudget, a: RcAllocation,
                 weight: float = 1.0) -> RatePair:
    """Achievable (R1, R2) of the receiver-cooperation scheme.

    Each user's relayed stream is limited by the slower of its two hops;
    ``weight`` picks the operating corner of the phase-1 joint-decoding
    pentagon when both equivalent interferences are strong.
    """
    r = rc_phase_rates(g, p, a, weight)
    return RatePair(r.r1_d + r.r1_r1 + min(r.r1_2r1, r.r1_2r2),
                    r.r2_d + r.r2_r1 + min(r.r2_2r1, r.r2_2r2))


def rc_limit_rate_pair(g: ChannelGains, p: PowerBudget, weight: float = 1.0) -> RatePair:
    """Rate pair in the infinite-conferencing limit (c34 = +inf).

    Phase 1 fills the whole block, compression is lossless, and the scheme
    becomes the two-user one-transmit/two-receive-antenna multiple-access
    channel; the pair is the ``weight``-selected pentagon corner.
    """
    if not math.isinf(g.c34):
        raise NotInfinite("c34 is finite; use rc_rate_pair")
    a1 = logdet2(Sym2.outer(g.h1, p.p1))
    a2 = logdet2(Sym2.outer(g.h2, p.p2))
    a12 = logdet2(Sym2.outer(g.h1, p.p1) + Sym2.outer(g.h2, p.p2))
    r1, r2 = pentagon_corner(a1, a2, a12, weight)
    return RatePair(r1, r2)


def rc_limit_region(g: ChannelGains, p: PowerBudget, opts=None):
    """Frontier of the infinite-conferencing receiver-cooperation region."""
    if not math.isinf(g.c34):
        raise NotInfinite("c34 is finite; use frontier.trace")
    from . import frontier

    return frontier.trace_rc_limit(g, p, opts)
