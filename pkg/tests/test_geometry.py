import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from powerpvq.errors import ContractViolation, DegenerateInputError
from powerpvq.geometry import (
    as_unit_vector,
    norm,
    power_project,
    radial_project,
    sample_unit_vector,
    sample_unit_vectors,
)

# exact zeros or magnitudes >= 1e-6: powers of subnormals underflow to 0
finite = st.one_of(st.just(0.0), st.floats(1e-6, 1e3), st.floats(-1e3, -1e-6))
nonzero_vectors = arrays(np.float64, st.integers(2, 12), elements=finite).filter(
    lambda v: np.abs(v).max() > 1e-3
)


@pytest.mark.parametrize(
    "v, s, expected",
    [((3, 4), 2, 5.0), ((3, 4), 1, 7.0), ((-1, 0, 0), math.inf, 1.0), ((-1, 0, 0), "inf", 1.0), ((1, 1), 3, 2 ** (1 / 3))],
)
def test_norm(v, s, expected):
    assert norm(v, s) == pytest.approx(expected, rel=1e-15)


def test_norm_rejects_order_below_one():
    with pytest.raises(ContractViolation):
        norm((1, 2), 0.5)


@pytest.mark.parametrize(
    "v, s, expected",
    [((3, 4), 1, (3 / 7, 4 / 7)), ((3, 4), 2, (0.6, 0.8)), ((0.6, 0.8), 2, (0.6, 0.8))],
)
def test_radial_project(v, s, expected):
    np.testing.assert_allclose(radial_project(v, s), expected, rtol=1e-15)


def test_projections_reject_zero_vector():
    with pytest.raises(DegenerateInputError):
        radial_project((0.0, 0.0))
    with pytest.raises(DegenerateInputError):
        power_project((0.0, 0.0, 0.0), 1.3, 1)


def test_power_projection_examples():
    np.testing.assert_allclose(power_project(np.array([1, 1]) / math.sqrt(2), 2, 1), (0.5, 0.5), rtol=1e-15)
    v = np.array([0.3, -2.0, 0.0, 5.5])
    assert np.array_equal(power_project(v, 1.0, 1), radial_project(v, 1))
    with pytest.raises(ContractViolation):
        power_project(v, 0.0, 1)


@given(nonzero_vectors, st.sampled_from([1, 2, math.inf]))
def test_radial_projection_lands_on_sphere(v, s):
    assert norm(radial_project(v, s), s) == pytest.approx(1.0, abs=1e-12)


@given(nonzero_vectors, st.floats(0.3, 3.0), st.sampled_from([1, 2]))
@settings(max_examples=200)
def test_power_projection_equivariance(v, p, s):
    out = power_project(v, p, s)
    np.testing.assert_array_equal(power_project(-v, p, s), -out)
    perm = np.random.default_rng(len(v)).permutation(len(v))
    np.testing.assert_allclose(power_project(v[perm], p, s), out[perm], rtol=1e-13, atol=1e-300)
    assert np.all(np.sign(out) == np.sign(v))


@pytest.mark.parametrize("p", [0.5, 0.77, 1.0, 1.3, 2.0])
def test_round_trip_without_quantization(p, rng):
    x = sample_unit_vectors(7, 1000, rng, law="sphere")
    for row in x:
        back = power_project(power_project(row, p, 1), 1 / p, 2)
        assert np.linalg.norm(back - row) <= 1e-9


def test_as_unit_vector_checks():
    as_unit_vector((0.6, 0.8))
    with pytest.raises(ContractViolation):
        as_unit_vector((0.6, 0.7))
    with pytest.raises(ContractViolation):
        as_unit_vector((1.0,))


@pytest.mark.parametrize("law", ["cube", "sphere"])
def test_sampling_is_deterministic(law):
    a = sample_unit_vector(5, np.random.default_rng(3), law)
    b = sample_unit_vector(5, np.random.default_rng(3), law)
    assert np.array_equal(a, b)
    assert norm(a, 2) == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("law", ["cube", "sphere"])
def test_sample_moments(law):
    x = sample_unit_vectors(4, 100_000, np.random.default_rng(11), law)
    assert np.all(np.abs(x.mean(axis=0)) < 3 / math.sqrt(1e5))
    # E x_i^2 = 1/L for any permutation-invariant law on S_2
    assert abs((x[:, 0] ** 2).mean() - 0.25) < 0.01
    np.testing.assert_allclose(np.linalg.norm(x, axis=1), 1.0, atol=1e-12)


def test_unknown_law():
    with pytest.raises(ContractViolation):
        sample_unit_vectors(3, 2, np.random.default_rng(0), law="ball")
