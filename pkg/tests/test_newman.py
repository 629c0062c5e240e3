import math

import numpy as np
import pytest

from ratapprox.errors import ConfigError
from ratapprox.newman import (
    NewmanApproximant,
    _log_factors,
    newman_eval,
    newman_interpolation_pairs,
    newman_measurements,
)


def brute_force_eval(na: NewmanApproximant, x: float) -> float:
    """Direct product evaluation; fine for the small n used in tests."""
    powers = [na.alpha**k for k in range(1, na.n)]
    p_pos = math.prod(x + a for a in powers)
    p_neg = math.prod(-x + a for a in powers)
    return x * (p_pos - p_neg) / (p_pos + p_neg)


def test_construction_and_alpha():
    na = NewmanApproximant(16)
    assert na.alpha == pytest.approx(math.exp(-0.25))
    assert 0 < na.alpha < 1
    with pytest.raises(ConfigError):
        NewmanApproximant(1)


def test_eval_at_zero_is_zero():
    assert newman_eval(NewmanApproximant(25), 0.0) == 0.0


def test_eval_matches_brute_force_product():
    na = NewmanApproximant(12)
    for x in (0.01, 0.2, 0.55, 0.93, 1.0):
        assert newman_eval(na, x) == pytest.approx(brute_force_eval(na, x), rel=1e-12)


def test_evenness(rng):
    na = NewmanApproximant(30)
    xs = rng.uniform(0.0, 1.0, size=10_000)
    assert np.max(np.abs(newman_eval(na, xs) - newman_eval(na, -xs))) <= 1e-13


def test_bound_on_million_point_grid():
    na = NewmanApproximant(25)
    xs = np.linspace(-1.0, 1.0, 1_000_001)
    err = np.max(np.abs(newman_eval(na, xs) - np.abs(xs)))
    assert err <= 3 * math.exp(-5.0)


@pytest.mark.parametrize("n", [9, 16, 36])
def test_bound_smaller_grids(n):
    na = NewmanApproximant(n)
    xs = np.linspace(-1.0, 1.0, 100_001)
    err = np.max(np.abs(newman_eval(na, xs) - np.abs(xs)))
    assert err <= 3 * math.exp(-math.sqrt(n))


def test_denominator_positive_on_unit_interval():
    na = NewmanApproximant(25)
    xs = np.linspace(0.0, 1.0, 20_001)
    log_p, log_pm, sign_pm = _log_factors(na, xs)
    f = sign_pm * np.exp(log_pm - log_p)
    assert np.all(1.0 + f > 0.0)  # p(x) + p(-x) > 0 given p(x) > 0


def test_interpolation_pairs_n2():
    na = NewmanApproximant(2)
    alpha = math.exp(-math.sqrt(2) / 2)
    pairs = newman_interpolation_pairs(na)
    assert pairs == [(0.0, 0.0), (-alpha, alpha)]


def test_interpolation_pairs_count_and_values():
    na = NewmanApproximant(25)
    pairs = newman_interpolation_pairs(na)
    assert len(pairs) == 25
    for x, f in pairs:
        assert newman_eval(na, x) == pytest.approx(f, abs=1e-12)


def test_measurements_cover_mirrored_points():
    na = NewmanApproximant(10)
    ds = newman_measurements(na)
    assert len(ds) == 2 * 10 - 1
    assert np.array_equal(ds.tau, -ds.tau[::-1])  # antisymmetric including 0
    assert np.array_equal(ds.f, np.abs(ds.tau))
    # evaluation interpolates the mirrored positives too
    pos = ds.tau[ds.tau > 0]
    assert np.allclose(newman_eval(na, pos), pos, atol=1e-12)


def test_no_underflow_at_large_n():
    na = NewmanApproximant(1024)  # naive products would underflow to 0/0
    val = newman_eval(na, 0.5)
    assert np.isfinite(val)
    assert val == pytest.approx(0.5, abs=3 * math.exp(-32.0))
