import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from bosonci import ConfigurationError, PotentialSpec, evaluate, from_config
from bosonci.potentials import make_double_well, make_harmonic, make_triple_well

A = 0.025


def test_harmonic_values():
    v = make_harmonic()
    assert v.coefficients == (0.0, 0.0, 0.5)
    assert evaluate(v, 0.0) == 0.0
    assert evaluate(v, 2.0) == 2.0
    assert evaluate(v, -2.0) == 2.0
    assert evaluate(v, 1.0) == 0.5


def test_double_well_coefficients():
    v = make_double_well(A)
    np.testing.assert_allclose(v.coefficients,
                               (2 / (27 * A), 0.0, -4 / 27, 0.0, 2 * A / 27), rtol=1e-15)
    assert v.coefficients[0] == pytest.approx(2.962962962962963)
    assert v.coefficients[2] == pytest.approx(-0.14814814814814814)
    assert v.coefficients[4] == pytest.approx(0.0018518518518518519)


@pytest.mark.parametrize("sign", [1, -1])
def test_double_well_minima_and_barrier(sign):
    v = make_double_well(A)
    assert abs(evaluate(v, sign / math.sqrt(A))) < 1e-12
    assert abs(evaluate(v, 6.3245553203367590 * sign)) < 1e-12
    assert evaluate(v, 0.0) == pytest.approx(2 / (27 * A), rel=1e-14)


def test_triple_well_points():
    v = make_triple_well(A)
    assert v.coefficients == (0.0, 0.0, 0.5, 0.0, -A, 0.0, A * A / 2)
    for s in (1, -1):
        assert abs(evaluate(v, s / math.sqrt(A))) < 1e-12
        assert evaluate(v, s / math.sqrt(3 * A)) == pytest.approx(2 / (27 * A), abs=1e-10)
    assert evaluate(v, 0.0) == 0.0
    assert evaluate(v, 3.6514837167011072) == pytest.approx(2.9629629629629629, abs=1e-10)


@pytest.mark.parametrize("maker", [make_double_well, make_triple_well])
@pytest.mark.parametrize("a", [0.0, -0.1, float("nan")])
def test_invalid_shape_parameter(maker, a):
    with pytest.raises(ConfigurationError):
        maker(a)


@pytest.mark.parametrize("coeffs", [(1.0,), (0.0, 1.0), (0.0, 0.0, -1.0), (0, 0, 0, 1.0)])
def test_rejects_nonconfining(coeffs):
    with pytest.raises(ConfigurationError):
        PotentialSpec(coeffs)


def test_trailing_zeros_trimmed():
    assert PotentialSpec((0.0, 0.0, 0.5, 0.0, 0.0)).degree == 2


@given(st.floats(-50, 50), st.floats(1e-3, 1.0))
def test_named_traps_even(x, a):
    for v in (make_harmonic(), make_double_well(a), make_triple_well(a)):
        assert evaluate(v, x) == pytest.approx(evaluate(v, -x), rel=1e-12, abs=1e-12)


@given(st.floats(1e-3, 10.0))
def test_barrier_heights_agree(a):
    dw, tw = make_double_well(a), make_triple_well(a)
    expected = 2 / (27 * a)
    assert evaluate(dw, 0.0) == pytest.approx(expected, rel=1e-10)
    assert evaluate(tw, 1 / math.sqrt(3 * a)) == pytest.approx(expected, rel=1e-10)


@pytest.mark.parametrize("maker", [make_harmonic, lambda: make_double_well(A),
                                   lambda: make_triple_well(A)])
def test_confinement_beyond_outer_stationary_point(maker):
    v = maker()
    outer = np.max(np.abs(v.stationary_points()))
    x = np.linspace(outer + 1e-3, outer + 30, 2000)
    for side in (x, -x):
        vals = evaluate(v, side)
        assert np.all(np.diff(vals) > 0)
        assert np.all(vals > evaluate(v, outer))


def test_minima_locations():
    np.testing.assert_allclose(make_double_well(A).minima(), [-1 / math.sqrt(A), 1 / math.sqrt(A)])
    np.testing.assert_allclose(make_triple_well(A).minima(),
                               [-1 / math.sqrt(A), 0.0, 1 / math.sqrt(A)], atol=1e-9)
    assert make_harmonic().outermost_minimum() == 0.0


def test_from_config_roundtrip():
    for v in (make_harmonic(), make_double_well(A), make_triple_well(A)):
        cfg = v.to_config()
        assert from_config(cfg["potential"], cfg.get("a")) == v
    custom = from_config("custom", coefficients=[1.0, 0.1, 0.5])
    assert not custom.is_even
    assert from_config("custom", coefficients=custom.to_config()["coefficients"]) == custom
    with pytest.raises(ConfigurationError):
        from_config("double_well")
    with pytest.raises(ConfigurationError):
        from_config("gaussian")


def test_array_evaluation():
    x = np.linspace(-3, 3, 7)
    np.testing.assert_allclose(make_harmonic()(x), 0.5 * x ** 2)
