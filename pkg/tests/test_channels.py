import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pauli_nm import channels as ch
from pauli_nm.errors import NotCompletelyPositive, OutOfRange, SingularAt
from pauli_nm.generator import p_minus
from pauli_nm.qalg import I2, state_from_bloch

from conftest import bloch, eigen, unit

FAMILIES = [
    ch.AnisoDepol(0.4, 0.5, 0.65),
    ch.AnisoDepol(0.2, 0.4, 0.6),
    ch.IsoDepol(0.6),
    ch.CosDephasing(1.3),
    ch.CosPauli(0.7),
    ch.ExpDephasing(),
    ch.AppendixDephasing(0.75, 1.0),
]


def test_kappa_examples():
    assert ch.kappa(ch.AnisoDepol(0.3, 0.1, 0.9), 0).as_array() == pytest.approx([1, 0, 0, 0])
    assert ch.kappa(ch.IsoDepol(0), 0.75).as_array() == pytest.approx([0.25] * 4)
    assert ch.kappa(ch.AnisoDepol(0.4, 0.5, 0.65), 0.2).k0 == pytest.approx(0.552, abs=1e-15)


def test_kappa_dot_examples():
    assert ch.kappa_dot(ch.AnisoDepol(0, 0, 0), 0)[0] == pytest.approx(-1)
    for a in (0.0, 0.3, 1.0):
        assert ch.kappa_dot(ch.IsoDepol(a), 0)[1] == pytest.approx((1 + 3 * a) / 3)


@pytest.mark.parametrize("fam", FAMILIES, ids=lambda f: f.family)
def test_kappa_dot_sums_to_zero_and_matches_finite_difference(fam):
    hi = min(fam.valid_range[1], 3.0)
    for x in np.linspace(0.05, hi - 0.05, 7):
        kd = np.array(ch.kappa_dot(fam, x))
        assert kd.sum() == pytest.approx(0, abs=1e-12)
        h = 1e-6
        fd = (ch.kappa(fam, x + h).as_array() - ch.kappa(fam, x - h).as_array()) / (2 * h)
        assert np.allclose(kd, fd, atol=1e-7)


def test_nu_from_kappa_examples():
    assert ch.nu_from_kappa((1, 0, 0, 0)).values == pytest.approx((1, 1, 1))
    assert ch.nu_from_kappa((0.25,) * 4).values == pytest.approx((0, 0, 0))
    assert ch.nu_from_kappa((0.5, 0.5, 0, 0)).values == pytest.approx((1, 0, 0))
    with pytest.raises(ValueError):
        ch.nu_from_kappa((0.5, 0.1, 0, 0))


def test_kappa_from_nu_examples():
    assert ch.kappa_from_nu((1, 1, 1)).as_array() == pytest.approx([1, 0, 0, 0])
    assert ch.kappa_from_nu((0, 0, 0)).as_array() == pytest.approx([0.25] * 4)
    # Hadamard oracle: kappa = (1/2, 1/2, 1/2, -1/2)
    with pytest.raises(NotCompletelyPositive):
        ch.kappa_from_nu((1, 1, -1))
    k = ch.kappa_from_nu((1, 1, -1), check=False)
    assert k.as_array() == pytest.approx([0.5, 0.5, 0.5, -0.5])


@settings(max_examples=300)
@given(eigen, eigen, eigen)
def test_kappa_nu_round_trip(a, b, c):
    k = ch.kappa_from_nu((a, b, c), check=False)
    back = ch.nu_from_kappa(k).values
    assert np.allclose(back, (a, b, c), atol=1e-14, rtol=0)


def test_nu_examples():
    for p in (0.0, 0.2, 0.5, 0.75):
        assert ch.nu(ch.AnisoDepol(0, 0, 0), p).values == pytest.approx(((3 - 4 * p) / 3,) * 3)
    assert ch.nu(ch.IsoDepol(0.8), 0).values == pytest.approx((1, 1, 1))
    w, t = 1.3, 0.4
    assert ch.nu(ch.CosDephasing(w), t).values == pytest.approx((math.cos(w * t), math.cos(w * t), 1))


@settings(max_examples=100)
@given(unit, unit, unit, st.floats(0.0, 0.75))
def test_aniso_closed_form_nu_matches_hadamard(l, m, n, p):
    fam = ch.AnisoDepol(l, m, n)
    via_kappa = ch.nu_from_kappa(ch.kappa(fam, p)).values
    assert np.allclose(ch.nu(fam, p).values, via_kappa, atol=1e-12)


def test_check_range():
    with pytest.raises(OutOfRange):
        ch.nu(ch.IsoDepol(0.5), 0.8)
    with pytest.raises(OutOfRange):
        ch.nu(ch.CosDephasing(1.0), -0.1)
    with pytest.raises(ValueError):
        ch.AnisoDepol(1.2, 0, 0)


def test_act_examples():
    rho = state_from_bloch([0.3, -0.2, 0.6])
    assert np.allclose(ch.act(ch.AnisoDepol(0.4, 0.5, 0.65), 0, rho), rho)
    out = ch.act(ch.IsoDepol(0.5), p_minus(1.0), rho)
    assert np.allclose(out, I2 / 2, atol=1e-10)
    for p in np.linspace(0, 0.75, 11):
        assert np.allclose(ch.act(ch.IsoDepol(0.9), p, I2 / 2), I2 / 2, atol=1e-15)


@given(st.floats(0, 1), st.floats(0, 0.75), bloch())
def test_iso_state_entries_match_act(alpha, p, r):
    rho = state_from_bloch(r)
    a = rho[0, 0].real
    b = rho[0, 1]
    out = ch.act(ch.IsoDepol(alpha), p, rho)
    A, B = ch.iso_state_entries(alpha, p, a, b)
    assert A == pytest.approx(out[0, 0].real, abs=1e-12)
    assert abs(B - out[0, 1]) < 1e-12


@pytest.mark.parametrize("fam", FAMILIES, ids=lambda f: f.family)
def test_json_round_trip(fam):
    assert ch.family_from_json(ch.family_to_json(fam)) == fam


def test_family_from_dict_rejects_unknown():
    with pytest.raises(ValueError):
        ch.family_from_dict({"family": "amplitude_damping"})


def test_appendix_rate_examples():
    for c in (0.5, 1.0, 3.0):
        for t in (0.0, 0.7, 4.0):
            assert ch.appendix_rate_t(0.0, c, t) == pytest.approx(c / 2)
    for a in (0.2, 0.75):
        assert ch.appendix_rate_t(a, 2.0, 0.0) == pytest.approx(2.0 * (1 + a) / 2)
    t_minus = ch.appendix_t_minus(0.75, 1.0)
    assert t_minus == pytest.approx(math.log(3), abs=1e-12)
    assert ch.appendix_rate_t(0.75, 1.0, t_minus - 1e-6) > 1e4
    assert ch.appendix_rate_t(0.75, 1.0, t_minus + 1e-6) < -1e4
    with pytest.raises(SingularAt):
        ch.appendix_rate_t(0.75, 1.0, t_minus)
    with pytest.raises(OutOfRange):
        ch.appendix_rate_t(0.75, 1.0, -1.0)


@given(st.floats(0, 1), st.floats(0.1, 3), st.floats(0, 5))
def test_appendix_rate_t_is_chain_rule_of_p_rate(alpha, c, t):
    p = ch.appendix_p_of_t(c, t)
    den = 1 - 2 * p * (1 + alpha * (1 - p))
    if abs(den) < 1e-6:
        return
    pdot = 0.5 * c * math.exp(-c * t)
    expected = ch.appendix_rate_p(alpha, p) * pdot
    assert ch.appendix_rate_t(alpha, c, t) == pytest.approx(expected, rel=1e-9, abs=1e-12)


@pytest.mark.parametrize("fam", FAMILIES, ids=lambda f: f.family)
def test_direct_eigenvalues_match_kraus_weights(fam):
    hi = min(fam.valid_range[1], 6.0)
    xs = np.linspace(0, hi, 31)
    for x in xs:
        assert np.allclose(ch.nu(fam, x).values, ch.nu_from_kappa(ch.kappa(fam, x)).values, atol=1e-14)
        assert np.allclose(ch.nu(fam, x).derivatives, ch.HADAMARD[1:] @ np.array(ch.kappa_dot(fam, x)),
                           atol=1e-13)


def test_exp_dephasing_q_accurate_near_double_root():
    # series oracle: q = u^2/2 - u^3/3 + O(u^4)
    for u in (1e-9, -1e-6, 1e-4):
        q = float(ch.ExpDephasing.q(1 + u))
        assert q == pytest.approx(u * u / 2 - u ** 3 / 3 + u ** 4 / 8, rel=1e-9)
    for t in (0.5, 0.95, 1.05, 2.0):
        assert float(ch.ExpDephasing.q(t)) == pytest.approx(1 - t * math.exp(1 - t), rel=1e-12)
