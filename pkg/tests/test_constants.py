import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qvacuum.constants import SI, Regime, Wavevector, k2_from_energy, make_si_constants
from oracles import ALPHA


def test_alpha_matches_codata():
    c = make_si_constants()
    assert c.alpha == pytest.approx(ALPHA, rel=1e-9)
    assert 1.0 / c.alpha == pytest.approx(137.035999, rel=1e-8)


def test_alpha_recomputed_bit_for_bit():
    c = make_si_constants()
    assert c.alpha == c.e**2 / (4.0 * math.pi * c.eps0 * c.hbar * c.c)


def test_mu0_closes_light_speed():
    assert SI.eps0 * SI.mu0 * SI.c**2 == pytest.approx(1.0, abs=1e-15)


def test_hbar_c():
    assert SI.hbar_c_gev_fm == pytest.approx(0.1973269804, rel=1e-9)


def test_reduced_compton_wavelength():
    assert SI.reduced_compton_wavelength == pytest.approx(3.8615926796e-13, rel=1e-9)


@pytest.mark.parametrize(
    "q, regime, expected",
    [(1.0, "spacelike", -1.0), (0.0, "on_shell", 0.0), (0.25, "timelike", 0.0625)],
)
def test_k2_from_energy(q, regime, expected):
    assert k2_from_energy(q, regime).k2_gev2 == expected


def test_negative_energy_rejected():
    with pytest.raises(ValueError):
        k2_from_energy(-1.0, Regime.SPACELIKE)


@pytest.mark.parametrize("k2, regime", [(-2.0, Regime.SPACELIKE), (0.0, Regime.ON_SHELL), (3.0, Regime.TIMELIKE)])
def test_regime_from_sign(k2, regime):
    assert Wavevector(k2).regime is regime


@given(st.floats(min_value=1e-12, max_value=1e12), st.sampled_from(["spacelike", "timelike"]))
def test_energy_round_trip(q, regime):
    assert k2_from_energy(q, regime).q_gev == pytest.approx(q, rel=1e-12)


@given(st.floats(min_value=-1e30, max_value=1e30, allow_subnormal=False))
def test_si_round_trip(k2_si):
    w = Wavevector.from_si(k2_si)
    assert w.to_si() == pytest.approx(k2_si, rel=1e-12, abs=1e-280)
