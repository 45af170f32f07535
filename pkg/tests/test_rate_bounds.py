import math

import pytest

from zchannel.rate_bounds import (
    RcbParams,
    bassalygo_size_bound,
    binary_entropy,
    gv_curve,
    gv_rate,
    levenshtein_rate_bound,
    list_plotkin_holds,
    mrrw_curve,
    mrrw_rate,
    plotkin_symmetric_size,
    rcb_delta,
    rcb_g,
    rcb_lower_curve,
    tau_star,
    tau_star_info,
    w0,
    zplotkin_size_bound,
)

from oracles import direct_exponent


# ---------------------------------------------------------------------------
# closed forms


def test_binary_entropy_endpoints():
    assert binary_entropy(0.0) == 0.0
    assert binary_entropy(1.0) == 0.0
    assert binary_entropy(0.5) == 1.0
    assert abs(binary_entropy(0.2) - 0.7219280948873623) < 1e-15


def test_critical_weight():
    assert w0(16, 4) == 8.0
    assert w0(100, 0) == 0.0
    assert w0(100, 16) == 20.0
    with pytest.raises(ValueError):
        w0(15, 4)


def test_size_bound_constant_weight():
    assert bassalygo_size_bound(16, 6, 4) == 16
    assert bassalygo_size_bound(100, 19, 16) == 26
    assert bassalygo_size_bound(100, 17, 16) == 8
    # at the critical weight the denominator vanishes
    with pytest.raises(ValueError):
        bassalygo_size_bound(16, 8, 4)
    with pytest.raises(ValueError):
        bassalygo_size_bound(16, 4, 4)


def test_size_bound_symmetric_corollary():
    assert plotkin_symmetric_size(0.25) == 2
    assert plotkin_symmetric_size(0.01) == 26
    with pytest.raises(ValueError):
        plotkin_symmetric_size(0.0)


def test_zero_one_channel_size_bound():
    assert zplotkin_size_bound(1 / 12) == pytest.approx(40.0, abs=1e-12)
    assert zplotkin_size_bound(1 / 3) == pytest.approx(10.5, abs=1e-12)
    assert zplotkin_size_bound(0.01) > zplotkin_size_bound(0.02)
    with pytest.raises(ValueError):
        zplotkin_size_bound(0.0)
    with pytest.raises(ValueError):
        zplotkin_size_bound(0.8)


def test_rate_gap_bound():
    assert levenshtein_rate_bound(0.5, 0.25) == 0.0
    w0frac = (1 - math.sqrt(1 - 4 * 0.15)) / 2
    assert levenshtein_rate_bound(w0frac, 0.15) == pytest.approx(0.0, abs=1e-12)
    assert levenshtein_rate_bound(0.4, 0.15) == pytest.approx(
        0.28269047612774534, abs=1e-13
    )
    with pytest.raises(ValueError):
        levenshtein_rate_bound(0.6, 0.15)
    with pytest.raises(ValueError):
        levenshtein_rate_bound(0.1, 0.15)  # below the critical fraction
    with pytest.raises(ValueError):
        levenshtein_rate_bound(0.4, 0.3)


def test_rate_gap_bound_high_precision():
    mp = pytest.importorskip("mpmath")
    mp.mp.dps = 40
    h = lambda x: -x * mp.log(x, 2) - (1 - x) * mp.log(1 - x, 2)
    wstar = (1 - mp.sqrt(1 - mp.mpf("0.6"))) / 2
    want = h(mp.mpf("0.4")) - h(wstar)
    got = levenshtein_rate_bound(0.4, 0.15)
    assert abs(got - float(want)) < 1e-14


def test_finite_size_list_bound():
    # threshold-free region
    assert list_plotkin_holds(3, 1, 0.5, 0.2)
    # binding region: holds up to six words, fails at seven
    assert list_plotkin_holds(6, 1, 0.5, 0.3)
    assert not list_plotkin_holds(7, 1, 0.5, 0.3)
    with pytest.raises(ValueError):
        list_plotkin_holds(1, 1, 0.5, 0.3)


# ---------------------------------------------------------------------------
# exponent machinery


def test_exponent_at_zero_tilt():
    for L in (1, 3, 10):
        for omega in (0.1, 0.5, 0.9):
            assert rcb_g(0.0, L, omega) == pytest.approx(0.0, abs=1e-14)
            assert rcb_delta(0.0, L, omega) == pytest.approx(
                omega - omega ** (L + 1), abs=1e-14
            )


def test_exponent_matches_direct_summation():
    for L in (1, 2, 7):
        for omega in (0.2, 0.5, 0.66):
            for h in (0.0, 0.3, 1.7, 8.0):
                g_ref, d_ref = direct_exponent(h, L, omega)
                assert rcb_g(h, L, omega) == pytest.approx(g_ref, abs=1e-12)
                assert rcb_delta(h, L, omega) == pytest.approx(d_ref, abs=1e-12)


def test_radius_statistic_closed_form_single_list():
    # with one comparison word and a fair coin the sums collapse
    for h in (0.0, 0.5, 2.0):
        e = 0.5 + math.exp(-h / 2) / 2
        assert rcb_g(h, 1, 0.5) == pytest.approx(-math.log(e), abs=1e-14)
        assert rcb_delta(h, 1, 0.5) == pytest.approx(
            math.exp(-h / 2) / (4 * e), abs=1e-14
        )


def test_tilted_rate_point_values():
    assert tau_star(0.0, 1, 0.5) == 0.25
    assert tau_star(0.5, 1, 0.5) == pytest.approx(0.0550139322188, abs=1e-9)
    assert tau_star(0.05, 1, 0.6) == pytest.approx(0.1748493650108, abs=1e-9)


def test_tilted_rate_infeasible_region():
    # rate demands beyond the exponent ceiling yield zero with the flag set
    ceiling = -math.log(0.5**2 + 0.5**2) / math.log(2)
    res = tau_star_info(ceiling + 0.01, 1, 0.5)
    assert res.value == 0.0
    assert not res.feasible
    ok = tau_star_info(0.3, 1, 0.5)
    assert ok.feasible
    assert ok.value > 0


def test_tilted_rate_monotone_in_rate():
    prev = None
    for r in (0.01, 0.1, 0.3, 0.5, 0.7, 0.9):
        v = tau_star(r, 1, 0.5)
        if prev is not None:
            assert v < prev
        prev = v


def test_tilted_rate_omega_snap():
    assert tau_star(0.1, 2, 0.0) == 0.0
    assert tau_star(0.1, 2, 1.0) == 0.0
    with pytest.raises(ValueError):
        RcbParams(0.1, 2, -0.2)
    with pytest.raises(ValueError):
        RcbParams(-0.1, 2, 0.5)
    with pytest.raises(ValueError):
        RcbParams(0.1, 0, 0.5)


# ---------------------------------------------------------------------------
# curves


def test_reference_curve_endpoints():
    assert gv_rate(0.25) == pytest.approx(0.0, abs=1e-12)
    assert gv_rate(0.1) == pytest.approx(0.2780719051126377, abs=1e-12)
    assert mrrw_rate(0.25) == pytest.approx(0.0, abs=1e-12)
    assert mrrw_rate(0.05) == pytest.approx(0.7219280948873623, abs=1e-12)
    gv = gv_curve(50)
    assert gv.kind == "gv"
    assert 0 < gv.taus[0] < gv.taus[-1] <= 0.25
    assert gv.rates[0] > gv.rates[-1]
    mr = mrrw_curve(50)
    assert len(mr) == len(mr.taus)
    for t, g in zip(gv.taus, gv.rates):
        assert mrrw_rate(t) >= g - 1e-12


def test_lower_curve_small_grid_shape():
    curve = rcb_lower_curve(1, r_points=80, omega_points=120)
    assert curve.kind == "list-1 achievable"
    assert all(b > a for a, b in zip(curve.taus, curve.taus[1:]))
    assert all(b < a for a, b in zip(curve.rates, curve.rates[1:]))
    # small error fractions leave most of the rate available
    assert curve.rates[0] > 0.9
    assert curve.taus[-1] < 0.25
    assert curve.taus[-1] > 0.2


def test_lower_curve_list_ten_extends_past_quarter():
    curve = rcb_lower_curve(10, r_points=60, omega_points=80)
    assert curve.taus[-1] > 0.25
    # the zero-rate endpoint approaches the unconstrained radius maximum
    omega_star = (1 / 11) ** 0.1
    assert abs(omega_star - 0.7867934421967723) < 1e-12
    limit = rcb_delta(0.0, 10, omega_star)
    assert abs(limit - 0.7152667656334293) < 1e-12
    assert curve.taus[-1] < limit


def test_lower_curve_range_check():
    with pytest.raises(ValueError):
        rcb_lower_curve(0)
    with pytest.raises(ValueError):
        rcb_lower_curve(18)
