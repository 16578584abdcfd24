import math

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from irsdf.linkmath import IrsConfig, LinkGains, rate_df_fixed, rate_irs, rate_siso
from irsdf.oracle import GridSpec, brute_force_power_split, brute_force_threshold_n
from irsdf.powerctl import (
    DfMode,
    RateTarget,
    df_mode,
    min_elements_low_snr_limit,
    min_elements_to_beat_df,
    optimal_df_power_split,
    power_df,
    power_df_mode,
    power_irs,
    power_siso,
    rate_df_opt,
)

S2 = 10 ** (-12.4)  # -94 dBm
gain_db = st.floats(min_value=-130, max_value=-40)


def active_gains(sd, a, b):
    """DF-active gains: the direct link is the weakest of the three."""
    lo, mid, hi = sorted((sd, a, b))
    return LinkGains.from_db(lo, hi, mid)


EXAMPLE = LinkGains(1e-11, 1e-8, 1e-6, 1e-14)


def test_split_example():
    split = optimal_df_power_split(1.0, EXAMPLE)
    assert split.mode is DfMode.DF_ACTIVE
    assert split.p1 == pytest.approx(2e-6 / 1.00999e-6, rel=1e-12)
    assert split.p2 == pytest.approx(2 * 9.99e-9 / 1.00999e-6, rel=1e-12)
    assert split.p1 == pytest.approx(1.9802, abs=1e-4)
    assert split.p2 == pytest.approx(0.019782, abs=1e-6)


def test_split_example_matches_grid_scan():
    found = brute_force_power_split(1.0, EXAMPLE, 1e-13, GridSpec(10_000))
    assert abs(found.p1 - optimal_df_power_split(1.0, EXAMPLE).p1) <= 2 / 10_000


def test_split_falls_back_when_direct_link_stronger():
    g = LinkGains.from_db(-70, -80, -60)
    split = optimal_df_power_split(0.5, g)
    assert (split.p1, split.p2, split.mode) == (1.0, 0.0, DfMode.SISO_FALLBACK)


def test_split_boundary_equal_direct_and_relay_link():
    g = LinkGains(1e-9, 1e-9, 1e-7, 1e-16)
    split = optimal_df_power_split(1.0, g)
    assert split.mode is DfMode.DF_ACTIVE
    assert split.p2 == 0.0
    assert split.p1 == pytest.approx(2.0, rel=1e-15)


def test_relay_silent_when_second_hop_weaker_than_direct_link():
    # beta_rd < beta_sd <= beta_sr: both min() arguments grow with p1
    g = LinkGains.from_db(-90, -70, -100)
    assert df_mode(g) is DfMode.SISO_FALLBACK
    found = brute_force_power_split(1.0, g, S2, GridSpec(10_000))
    assert found.p1 == 2.0
    assert rate_df_opt(1.0, g, S2) == pytest.approx(found.rate, rel=1e-12)


def test_rate_df_opt_example():
    expected = 0.5 * math.log2(1 + 2e-14 / (1.00999e-6 * 1e-13))
    assert rate_df_opt(1.0, EXAMPLE, 1e-13) == pytest.approx(expected, rel=1e-12)
    assert rate_df_opt(0.0, EXAMPLE, 1e-13) == 0.0


def test_rate_df_opt_fallback_uses_whole_budget_in_phase_one():
    g = LinkGains.from_db(-70, -80, -60)
    assert rate_df_opt(1.0, g, S2) == pytest.approx(rate_df_fixed(2.0, 0.0, g, S2), rel=1e-15)
    assert rate_df_opt(1.0, g, S2) < rate_siso(1.0, g.beta_sd, S2)


@given(gain_db, gain_db, gain_db, st.floats(1e-4, 10))
def test_split_equalises_both_snrs(sd, a, b, p):
    g = active_gains(sd, a, b)
    s = optimal_df_power_split(p, g)
    assert s.p1 + s.p2 == pytest.approx(2 * p, rel=1e-12)
    assert s.p1 * g.beta_sr == pytest.approx(s.p1 * g.beta_sd + s.p2 * g.beta_rd, rel=1e-10)
    assert rate_df_opt(p, g, S2) == pytest.approx(rate_df_fixed(s.p1, s.p2, g, S2), rel=1e-12)


@given(gain_db, gain_db, gain_db, st.floats(1e-4, 10))
def test_split_budget_and_fallback_shape(sd, sr, rd, p):
    s = optimal_df_power_split(p, LinkGains.from_db(sd, sr, rd))
    assert s.p1 + s.p2 == pytest.approx(2 * p, rel=1e-12)
    if s.mode is DfMode.SISO_FALLBACK:
        assert (s.p1, s.p2) == (2 * p, 0.0)


@settings(max_examples=50)
@given(gain_db, gain_db, gain_db, st.floats(1e-4, 10))
def test_split_beats_every_grid_point(sd, sr, rd, p):
    g = LinkGains.from_db(sd, sr, rd)
    p1 = np.linspace(0, 2 * p, 2001)
    grid = rate_df_fixed(p1, 2 * p - p1, g, S2)
    assert np.max(grid) <= rate_df_opt(p, g, S2) * (1 + 1e-12)


# --- thresholds -------------------------------------------------------------

LOW_SNR = LinkGains.from_db(-110, -80, -60)


def test_low_snr_limit_reference_example():
    th = min_elements_low_snr_limit(LOW_SNR, 1.0)
    assert 963 < th.value < 964
    assert th.min_integer_n == 964


def test_low_snr_limit_scales_with_one_over_alpha():
    assert min_elements_low_snr_limit(LOW_SNR, 0.5).value == pytest.approx(
        2 * min_elements_low_snr_limit(LOW_SNR, 1.0).value, rel=1e-14
    )


def test_threshold_converges_to_low_snr_limit():
    p = 1e-12 * S2 / LOW_SNR.beta_sr
    near = min_elements_to_beat_df(p, LOW_SNR, 1.0, S2).value
    assert near == pytest.approx(min_elements_low_snr_limit(LOW_SNR, 1.0).value, rel=1e-3)


def test_threshold_scan_at_low_snr_finds_964():
    p = S2 * 1e-6 / LOW_SNR.beta_sr
    assert brute_force_threshold_n(p, LOW_SNR, 1.0, S2, 2000) == 964


def test_threshold_high_snr_limit():
    g = LinkGains.from_db(-100, -70, -60)
    limit = -math.sqrt(g.beta_sd) / math.sqrt(g.beta_sr * g.beta_rd)
    gaps = [abs(min_elements_to_beat_df(p, g, 1.0, S2).value - limit) for p in (1e6, 1e12, 1e18, 1e24)]
    assert all(b < a for a, b in zip(gaps, gaps[1:]))
    assert gaps[-1] < 1e-3 * abs(limit)
    th = min_elements_to_beat_df(1e12, g, 1.0, S2)
    assert th.value < 0
    assert th.min_integer_n == 1
    assert brute_force_threshold_n(1e12, g, 1.0, S2, 50) == 1


def test_threshold_always_wins_when_direct_link_stronger():
    th = min_elements_to_beat_df(1.0, LinkGains.from_db(-70, -80, -60), 1.0, S2)
    assert th.always_wins and th.value == 0.0 and th.min_integer_n == 1


def test_threshold_rejects_zero_power():
    with pytest.raises(ValueError):
        min_elements_to_beat_df(0.0, LOW_SNR, 1.0, S2)


@settings(max_examples=200)
@given(gain_db, gain_db, gain_db, st.floats(-10, 40), st.floats(0.2, 1.0))
def test_threshold_is_sharp(sd, a, b, snr_db, alpha):
    g = active_gains(sd, a, b)
    p = 10 ** (snr_db / 10) * S2 / g.beta_sr
    th = min_elements_to_beat_df(p, g, alpha, S2)
    assume(th.value < 1e6)
    # stay clear of thresholds that land on an integer to rounding precision
    assume(abs(th.value - round(th.value)) > 1e-6)
    r_df = rate_df_opt(p, g, S2)
    above = th.min_integer_n
    assert rate_irs(p, g, IrsConfig(above, alpha), S2) > r_df
    if above > 1:
        assert rate_irs(p, g, IrsConfig(above - 1, alpha), S2) <= r_df


@given(gain_db, gain_db, gain_db, st.floats(0.2, 1.0))
def test_threshold_nonincreasing_in_power(sd, a, b, alpha):
    g = active_gains(sd, a, b)
    ps = np.logspace(-6, 3, 40) * S2 / g.beta_sr
    values = [min_elements_to_beat_df(p, g, alpha, S2).value for p in ps]
    assert all(later <= earlier * (1 + 1e-9) + 1e-9 for earlier, later in zip(values, values[1:]))


# --- rate-constrained transmit power --------------------------------------

def test_power_siso_examples():
    assert power_siso(1.0, 1e-10, S2) == pytest.approx(S2 / 1e-10, rel=1e-15)
    assert power_siso(1e-12, 1e-10, S2) < 1e-12
    assert power_siso(4.0, 1e-10, 3.981e-13) == pytest.approx(15 * 3.981e-13 / 1e-10, rel=1e-12)
    assert power_siso(RateTarget(4.0), 1e-10, 3.981e-13) == pytest.approx(0.05972, abs=1e-5)


def test_rate_target_must_be_positive():
    with pytest.raises(ValueError):
        RateTarget(0.0)
    with pytest.raises(ValueError):
        power_siso(-1.0, 1e-10, S2)


def test_power_irs_reductions(scenario):
    g = scenario.gains(80.0)
    assert power_irs(4.0, g, IrsConfig(0), S2) == power_siso(4.0, g.beta_sd, S2)
    # doubling the coherent amplitude quarters the power
    base = LinkGains(1e-10, 1e-7, 1e-7, 1e-14)
    amp = math.sqrt(1e-10) + 10 * 1e-7
    n2 = (2 * amp - math.sqrt(1e-10)) / 1e-7
    assert power_irs(4.0, base, IrsConfig(0), S2, n_elements=n2) == pytest.approx(
        power_irs(4.0, base, IrsConfig(10), S2) / 4, rel=1e-12
    )


def test_power_irs_round_trip_in_reference_scenario(scenario):
    g = scenario.gains(80.0)
    p = power_irs(4.0, g, IrsConfig(150), scenario.sigma2)
    assert rate_irs(p, g, IrsConfig(150), scenario.sigma2) == pytest.approx(4.0, rel=1e-12)


def test_power_df_branches():
    strong_direct = LinkGains.from_db(-70, -80, -60)
    assert power_df(1.0, strong_direct, S2) == pytest.approx(3 * S2 / strong_direct.beta_sd, rel=1e-14)
    # at beta_sd == beta_sr the second branch reduces to (2^(2R)-1) sigma2 / (2 beta_sr)
    g = LinkGains(1e-9, 1e-9, 1e-7, 1e-16)
    assert power_df(2.0, g, S2) == pytest.approx(15 * S2 / (2 * 1e-9), rel=1e-12)


@given(gain_db, gain_db, gain_db, st.floats(0.1, 12))
def test_power_df_round_trip(sd, a, b, r):
    g = active_gains(sd, a, b)
    assert rate_df_opt(power_df(r, g, S2), g, S2) == pytest.approx(r, rel=1e-12)


@given(gain_db, gain_db, gain_db, st.floats(0.1, 12), st.integers(0, 10_000))
def test_power_irs_round_trip(sd, sr, rd, r, n):
    g = LinkGains.from_db(sd, sr, rd)
    irs = IrsConfig(n, 0.7)
    assert rate_irs(power_irs(r, g, irs, S2), g, irs, S2) == pytest.approx(r, rel=1e-12)
    assert rate_siso(power_siso(r, g.beta_sd, S2), g.beta_sd, S2) == pytest.approx(r, rel=1e-12)


@given(gain_db, gain_db, gain_db, st.floats(0.1, 12))
def test_power_irs_decreasing_in_n(sd, sr, rd, r):
    g = LinkGains.from_db(sd, sr, rd)
    p = power_irs(r, g, IrsConfig(0), S2, n_elements=np.arange(0, 300))
    assert np.all(np.diff(p) < 0)


def test_power_df_mode():
    strong_direct = LinkGains.from_db(-70, -80, -60)
    choice = power_df_mode(3.0, strong_direct, S2)
    assert choice.mode is DfMode.SISO_FALLBACK
    assert choice.power == power_siso(3.0, strong_direct.beta_sd, S2)


def test_power_df_mode_df_wins_away_from_source(scenario):
    # with this geometry the relay pays off once the destination is ~25 m from the source
    for d1 in range(25, 101):
        g = scenario.gains(float(d1))
        choice = power_df_mode(4.0, g, scenario.sigma2)
        assert choice.mode is DfMode.DF_ACTIVE, d1
        assert rate_df_opt(choice.power, g, scenario.sigma2) >= 4.0 * (1 - 1e-12)


def test_power_df_mode_prefers_siso_next_to_source(scenario):
    g = scenario.gains(10.0)
    assert power_df_mode(4.0, g, scenario.sigma2).mode is DfMode.SISO_FALLBACK
