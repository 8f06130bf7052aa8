import json

import numpy as np
import pytest
from hypothesis import given, settings

from pauli_nm.qenm import (
    classify, classify_by_rates, classify_iso, endpoint_margins, iso_qenm_fraction,
    iso_qenm_measure, qenm_volume,
)

from conftest import unit


def test_classify_examples():
    assert not classify(0, 0, 0).is_qenm
    v = classify(0.2, 0.4, 0.6)
    assert v.is_qenm and v.satisfied_conditions
    assert v.p_minus_min == pytest.approx(0.392, abs=1e-3)
    assert not classify(1, 1, 1).is_qenm
    with pytest.raises(ValueError):
        classify(1.1, 0, 0)


def test_classify_iso_examples():
    assert classify_iso(0.5).is_qenm
    assert classify_iso(2 / 3).is_qenm
    assert not classify_iso(0.9).is_qenm
    assert not classify_iso(0).is_qenm


def test_classify_iso_consistent_with_diagonal_classify():
    for a in np.linspace(0.01, 1, 100):
        if abs(a - 2 / 3) < 1e-9:
            continue
        assert classify_iso(a).is_qenm == classify(a, a, a).is_qenm


@settings(max_examples=300, deadline=None)
@given(unit, unit, unit)
def test_inequalities_agree_with_endpoint_rates(l, m, n):
    if min(abs(d) for d in endpoint_margins(l, m, n)) < 1e-6:
        return
    assert classify(l, m, n).is_qenm == classify_by_rates(l, m, n)


def test_volume_is_deterministic_and_worker_independent():
    a = qenm_volume(10 ** 4, 7)
    b = qenm_volume(10 ** 4, 7)
    assert a == b
    c = qenm_volume(200_000, 11, workers=1)
    d = qenm_volume(200_000, 11, workers=4)
    assert c == d
    assert json.loads(c.to_json())["samples"] == 200_000


def test_volume_matches_grid_oracle():
    # deterministic midpoint rule on a 160^3 lattice
    g = (np.arange(160) + 0.5) / 160
    l, m, n = np.meshgrid(g, g, g, indexing="ij")
    mg = endpoint_margins(l, m, n)
    exact = np.mean((mg[0] > 0) | (mg[1] > 0) | (mg[2] > 0))
    est = qenm_volume(400_000, 3)
    assert abs(est.estimate - exact) < 4 * est.standard_error + 1e-3


def test_diagonal_volume_is_two_thirds():
    est = qenm_volume(200_000, 5, diagonal=True)
    assert abs(est.estimate - 2 / 3) < 4 * est.standard_error


def test_volume_rejects_bad_input():
    with pytest.raises(ValueError):
        qenm_volume(100, 1)
    with pytest.raises(ValueError):
        qenm_volume(10 ** 4, -1)


def test_iso_measure_examples():
    assert iso_qenm_measure(3) == pytest.approx(2 / 3, abs=1e-15)
    assert iso_qenm_measure(10 ** 4) == pytest.approx(2 / 3, abs=1e-3)
    assert iso_qenm_fraction(np.linspace(0.7, 1, 20)) == 0
