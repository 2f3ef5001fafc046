"""Transmitter-cooperation evaluator."""

import math

import numpy as np
import pytest

from conftest import (
    gains_dict,
    powers_dict,
    random_gains,
    random_powers,
    random_tc_allocation,
    tc_allocation_dict,
)
from coopic.model import (
    ChannelGains,
    DegeneratePhase,
    InfiniteGain,
    InvalidAllocation,
    NotInfinite,
    PowerBudget,
    Simplex2,
    Simplex3,
    TcAllocation,
)
from coopic import txcoop
from reference_eval import tc_reference

SQRT2 = math.sqrt(2.0)


def make_alloc(lam=(1 / 3, 1 / 3, 1 / 3), kappa=(0.5, 0.5), gamma=(0.5, 0.5),
               alpha=(0.5, 0.5), beta=(0.5, 0.5), mu=(1 / 3, 1 / 3, 1 / 3),
               eta=(1 / 3, 1 / 3, 1 / 3)) -> TcAllocation:
    return TcAllocation(lam=Simplex3(*lam), kappa=Simplex2(*kappa),
                        gamma=Simplex2(*gamma), alpha=Simplex2(*alpha),
                        beta=Simplex2(*beta), mu=Simplex3(*mu), eta=Simplex3(*eta))


# ---------------------------------------------------------------------------
# phases 1-2


def test_phase12_zero_power_share(ref_gains, ref_powers):
    a = make_alloc(kappa=(0.0, 1.0))
    r = txcoop.tc_phase12_rates(ref_gains, ref_powers, a)
    assert r.r1_r1 == 0.0 and r.r2_1 == 0.0 and r.r1_1 == 0.0


def test_phase12_exchange_rate_closed_form(ref_gains, ref_powers):
    # lam1 = 1/3, kappa1 = 0.5 -> burst power 7.5; exchange SNR 100*0.5*7.5
    a = make_alloc(lam=(1 / 3, 1 / 3, 1 / 3), kappa=(0.5, 0.5), alpha=(0.5, 0.5))
    r = txcoop.tc_phase12_rates(ref_gains, ref_powers, a)
    assert r.r1_r1 == pytest.approx(math.log2(376.0) / 3.0, rel=1e-14)
    # c13 = 1 <= c14 = sqrt(2): relayed stream for user 2 is encoded last
    assert r.r2_1 == pytest.approx(math.log2(8.5) / 3.0, rel=1e-14)


def test_phase12_branch_follows_direct_gain():
    g = ChannelGains(c12=10.0, c13=2.0, c14=1.0, c23=1.0, c24=1.0, c34=1.0)
    p = PowerBudget(5.0, 5.0)
    a = make_alloc()
    r = txcoop.tc_phase12_rates(g, p, a)
    p11 = 0.5 * 5.0 / (1 / 3)
    # c13 > c14: own conferencing stream decoded cleanly at receiver 3
    assert r.r1_1 == pytest.approx(math.log2(1 + 4 * 0.5 * p11) / 3.0, rel=1e-14)
    assert r.r2_1 == pytest.approx(
        math.log2(1 + 0.5 * p11 / (1 + 0.5 * p11)) / 3.0, rel=1e-14)


def test_phase12_zero_duration_requires_zero_mass(ref_gains, ref_powers):
    with pytest.raises(InvalidAllocation):
        txcoop.tc_phase12_rates(ref_gains, ref_powers,
                                make_alloc(lam=(0.0, 0.5, 0.5), kappa=(0.5, 0.5)))
    # zero mass on the zero-duration phase is fine
    r = txcoop.tc_phase12_rates(ref_gains, ref_powers,
                                make_alloc(lam=(0.0, 0.5, 0.5), kappa=(0.0, 1.0)))
    assert r.r1_r1 == 0.0


def test_phase12_rejects_infinite_gain(ref_powers):
    g = ChannelGains(c12=math.inf, c13=1.0, c14=1.0, c23=1.0, c24=1.0, c34=1.0)
    with pytest.raises(InfiniteGain):
        txcoop.tc_phase12_rates(g, ref_powers, make_alloc())


# ---------------------------------------------------------------------------
# phase-3 covariances


def test_phase3_covariances_zero_joint_stream(ref_gains, ref_powers):
    # On the symmetric reference channel the ordering comparison ties, so the
    # swapped branch applies: sigma1 is the user-2 joint stream, sigma2 the
    # user-1 joint stream.  Empty user-1 stream: sigma2 vanishes and sigma1
    # is an unscaled identity multiple (the shaping matrix reduces to I).
    scalar = 2 * (0.5 * (0.5 * 5.0 / (1 / 3)))  # joint-stream power 7.5
    a = make_alloc(mu=(0.5, 0.0, 0.5), eta=(0.5, 0.5, 0.0))
    cov = txcoop.tc_phase3_covariances(ref_gains, ref_powers, a)
    assert not cov.user1_clean
    assert cov.sigma2.a11 == pytest.approx(0.0, abs=1e-15)
    assert cov.sigma1.a11 == pytest.approx(scalar, rel=1e-12)
    assert cov.sigma1.a12 == 0.0
    # swap roles: now the user-2 stream carries nothing
    a = make_alloc(mu=(0.5, 0.5, 0.0), eta=(0.5, 0.0, 0.5))
    cov = txcoop.tc_phase3_covariances(ref_gains, ref_powers, a)
    assert cov.sigma1.a11 == pytest.approx(0.0, abs=1e-15)
    assert cov.sigma2.a11 == pytest.approx(scalar, rel=1e-12)
    assert cov.sigma2.a12 == 0.0


def test_phase3_covariances_worked_example():
    # direct-branch channel, both joint streams at scalar 2
    g = ChannelGains(c12=10.0, c13=2.0, c14=1.0, c23=1.0, c24=1.0, c34=1.0)
    p = PowerBudget(4.0, 4.0)
    a = make_alloc(lam=(0.0, 0.0, 1.0), kappa=(0.0, 1.0), gamma=(0.0, 1.0),
                   mu=(0.5, 0.25, 0.25), eta=(0.5, 0.25, 0.25))
    cov = txcoop.tc_phase3_covariances(g, p, a)
    assert cov.user1_clean
    # B = I + h2^T h2 * 2 = [[3,2],[2,3]]; sigma1 = inv(B)*2
    assert cov.sigma1.a11 == pytest.approx(1.2, rel=1e-13)
    assert cov.sigma1.a12 == pytest.approx(-0.8, rel=1e-13)
    assert cov.sigma1.a22 == pytest.approx(1.2, rel=1e-13)
    # A = 1 + h2 sigma1 h2^T = 1.8; sigma2 = 3.6 I
    assert cov.sigma2.a11 == pytest.approx(3.6, rel=1e-13)
    assert cov.sigma2.a12 == 0.0
    assert cov.sigma2.a22 == pytest.approx(3.6, rel=1e-13)


def test_phase3_covariances_degenerate_phase(ref_gains, ref_powers):
    with pytest.raises(DegeneratePhase):
        txcoop.tc_phase3_covariances(ref_gains, ref_powers,
                                     make_alloc(lam=(0.5, 0.5, 0.0), kappa=(1.0, 0.0),
                                                gamma=(1.0, 0.0)))


def test_phase3_covariances_psd_on_random_inputs():
    rng = np.random.default_rng(5)
    for _ in range(200):
        g = random_gains(rng)
        p = random_powers(rng)
        a = random_tc_allocation(rng)
        if a.lam.w3 == 0.0:
            continue
        cov = txcoop.tc_phase3_covariances(g, p, a)
        assert cov.sigma1.is_psd()
        assert cov.sigma2.is_psd()


# ---------------------------------------------------------------------------
# phase-3 rates


def test_phase3_rates_fresh_stream_closed_form():
    # direct branch, fresh-stream share 0.2, burst power 10, half duration
    g = ChannelGains(c12=10.0, c13=1.0, c14=1.0, c23=2.0, c24=1.0, c34=1.0)
    p = PowerBudget(5.0, 5.0)
    a = make_alloc(lam=(0.5, 0.0, 0.5), kappa=(0.0, 1.0), gamma=(0.0, 1.0),
                   mu=(0.2, 0.4, 0.4), eta=(1 / 3, 1 / 3, 1 / 3))
    cov = txcoop.tc_phase3_covariances(g, p, a)
    assert cov.user1_clean
    r = txcoop.tc_phase3_rates(g, p, a, cov)
    assert r.r1_d == pytest.approx(0.5 * math.log2(3.0), rel=1e-14)


def test_phase3_rates_zero_fresh_shares(ref_gains, ref_powers):
    a = make_alloc(mu=(0.0, 0.5, 0.5), eta=(0.0, 0.5, 0.5))
    cov = txcoop.tc_phase3_covariances(ref_gains, ref_powers, a)
    r = txcoop.tc_phase3_rates(ref_gains, ref_powers, a, cov)
    assert r.r1_d == 0.0 and r.r2_d == 0.0
    assert r.r1_3 > 0.0 and r.r2_3 > 0.0


def test_phase3_rates_swapped_branch_fresh_user2():
    # swapped branch (tie) with no user-2 fresh share
    g = ChannelGains(c12=10.0, c13=1.0, c14=SQRT2, c23=SQRT2, c24=1.0, c34=1.0)
    p = PowerBudget(5.0, 5.0)
    a = make_alloc(eta=(0.0, 0.5, 0.5))
    cov = txcoop.tc_phase3_covariances(g, p, a)
    assert not cov.user1_clean
    r = txcoop.tc_phase3_rates(g, p, a, cov)
    assert r.r2_d == 0.0


# ---------------------------------------------------------------------------
# combined pair, baseline, reference equality


def test_rate_pair_zero_powers(ref_gains):
    pair = txcoop.tc_rate_pair(ref_gains, PowerBudget(0.0, 0.0), make_alloc())
    assert (pair.r1, pair.r2) == (0.0, 0.0)


def test_rate_pair_pure_joint_phase(ref_gains, ref_powers):
    # whole block in phase 3: nothing was exchanged, so only fresh streams count
    a = make_alloc(lam=(0.0, 0.0, 1.0), kappa=(0.0, 1.0), gamma=(0.0, 1.0))
    rates = txcoop.tc_phase_rates(ref_gains, ref_powers, a)
    pair = txcoop.tc_rate_pair(ref_gains, ref_powers, a)
    assert rates.r1_r1 == 0.0 and rates.r2_r1 == 0.0
    assert pair.r1 == rates.r1_d
    assert pair.r2 == rates.r2_d


def test_rate_pair_matches_reference_on_random_inputs(ref_gains, ref_powers):
    rng = np.random.default_rng(17)
    worst = 0.0
    for _ in range(150):
        g = random_gains(rng)
        p = random_powers(rng)
        a = random_tc_allocation(rng)
        got = txcoop.tc_rate_pair(g, p, a)
        want = tc_reference(gains_dict(g), powers_dict(p), tc_allocation_dict(a))
        worst = max(worst, abs(got.r1 - want[0]), abs(got.r2 - want[1]))
    assert worst <= 1e-12


def test_rdpc_matches_reference_and_differs_from_tc(ref_gains, ref_powers):
    rng = np.random.default_rng(23)
    for _ in range(60):
        a = random_tc_allocation(rng)
        got = txcoop.rdpc_rate_pair(ref_gains, ref_powers, a)
        want = tc_reference(gains_dict(ref_gains), powers_dict(ref_powers),
                            tc_allocation_dict(a), rdpc=True)
        assert abs(got.r1 - want[0]) <= 1e-12
        assert abs(got.r2 - want[1]) <= 1e-12
    # with both joint streams loaded the duality matrices are not diagonal,
    # so the baseline and the full scheme genuinely differ
    a = make_alloc(mu=(0.2, 0.4, 0.4), eta=(0.2, 0.4, 0.4))
    tc = txcoop.tc_rate_pair(ref_gains, ref_powers, a)
    rd = txcoop.rdpc_rate_pair(ref_gains, ref_powers, a)
    assert abs(tc.r1 - rd.r1) + abs(tc.r2 - rd.r2) > 1e-6


def test_rate_pair_nonnegative_finite_and_power_monotone():
    rng = np.random.default_rng(31)
    for _ in range(120):
        g = random_gains(rng)
        p = random_powers(rng)
        a = random_tc_allocation(rng)
        pair = txcoop.tc_rate_pair(g, p, a)
        assert pair.r1 >= 0.0 and pair.r2 >= 0.0
        assert math.isfinite(pair.r1) and math.isfinite(pair.r2)
        doubled = PowerBudget(2 * p.p1, 2 * p.p2, 2 * p.p3, 2 * p.p4)
        bigger = txcoop.tc_rate_pair(g, doubled, a)
        assert bigger.r1 >= pair.r1 - 1e-12
        assert bigger.r2 >= pair.r2 - 1e-12


def test_rate_pair_monotone_in_conferencing_gain(ref_powers):
    rng = np.random.default_rng(37)
    base = {"c13": 1.0, "c14": SQRT2, "c23": SQRT2, "c24": 1.0, "c34": 10.0}
    for _ in range(40):
        a = random_tc_allocation(rng)
        low = txcoop.tc_rate_pair(ChannelGains(c12=5.0, **base), ref_powers, a)
        high = txcoop.tc_rate_pair(ChannelGains(c12=10.0, **base), ref_powers, a)
        assert high.r1 >= low.r1 - 1e-12
        assert high.r2 >= low.r2 - 1e-12


def test_branch_tie_evaluates_both_orders():
    # exactly on the ordering boundary: both constructions must evaluate
    g_tie = ChannelGains(c12=10.0, c13=1.0, c14=2.0, c23=2.0, c24=1.0, c34=1.0)
    g_direct = ChannelGains(c12=10.0, c13=1.0 + 1e-9, c14=2.0, c23=2.0, c24=1.0, c34=1.0)
    p = PowerBudget(5.0, 5.0)
    a = make_alloc()
    tie = txcoop.tc_rate_pair(g_tie, p, a)
    direct = txcoop.tc_rate_pair(g_direct, p, a)
    assert not txcoop.tc_phase3_covariances(g_tie, p, a).user1_clean
    assert txcoop.tc_phase3_covariances(g_direct, p, a).user1_clean
    assert all(math.isfinite(v) for v in (tie.r1, tie.r2, direct.r1, direct.r2))


def test_rate_pair_rejects_infinite_gain(ref_powers):
    g = ChannelGains(c12=math.inf, c13=1.0, c14=1.0, c23=1.0, c24=1.0, c34=1.0)
    with pytest.raises(InfiniteGain):
        txcoop.tc_rate_pair(g, ref_powers, make_alloc())


# ---------------------------------------------------------------------------
# infinite-conferencing limit


def test_limit_rate_pair_requires_infinite_gain(ref_gains, ref_powers):
    with pytest.raises(NotInfinite):
        txcoop.tc_limit_rate_pair(ref_gains, ref_powers,
                                  Simplex3(0, 1, 0), Simplex3(0, 1, 0), True)


def test_limit_rate_pair_sum_point(ref_powers):
    g = ChannelGains(c12=math.inf, c13=1.0, c14=SQRT2, c23=SQRT2, c24=1.0, c34=10.0)
    # one joint stream per user at full node power: the pair sits on the
    # pooled-power broadcast sum boundary
    for order in (True, False):
        pair = txcoop.tc_limit_rate_pair(g, ref_powers, Simplex3(0, 1, 0),
                                         Simplex3(0, 1, 0), order)
        assert pair.total == pytest.approx(math.log2(56.0), rel=1e-12)


def test_limit_rate_pair_single_user_corner(ref_powers):
    g = ChannelGains(c12=math.inf, c13=1.0, c14=SQRT2, c23=SQRT2, c24=1.0, c34=10.0)
    pair = txcoop.tc_limit_rate_pair(g, ref_powers, Simplex3(0, 1, 0),
                                     Simplex3(0, 0, 1), False)
    assert pair.r1 == pytest.approx(math.log2(31.0), rel=1e-12)
    assert pair.r2 == 0.0


def test_limit_region_zero_powers():
    g = ChannelGains(c12=math.inf, c13=1.0, c14=SQRT2, c23=SQRT2, c24=1.0, c34=10.0)
    fr = txcoop.tc_limit_region(g, PowerBudget(0.0, 0.0))
    assert fr.vertices() == [(0.0, 0.0)]
