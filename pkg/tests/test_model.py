import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aqrm.errors import InvalidInputError
from aqrm.model import (
    Branch,
    ModelParams,
    critical_coupling,
    epsilon,
    spin_eigenvector,
    spin_hamiltonian,
)

XI0 = -0.5 / (2 * math.sqrt(2))  # d(xi) = 0 for g=2, eta=0.5


def test_params_validation():
    with pytest.raises(InvalidInputError):
        ModelParams(0, 1, 0)
    with pytest.raises(InvalidInputError):
        ModelParams(10, -1, 0)
    with pytest.raises(InvalidInputError):
        ModelParams(10, 1, -0.1)
    with pytest.raises(InvalidInputError):
        ModelParams(10, float("nan"), 0)


def test_derived_quantities_track_fields():
    p = ModelParams(10, 2, 0.5)
    assert p.beta == pytest.approx(2 * math.sqrt(2) * 2 / 10)
    assert p.g_c == pytest.approx(math.sqrt(1 + math.sqrt(1 + 100 / 16)))
    assert p.with_g(3).beta == pytest.approx(2 * math.sqrt(2) * 3 / 10)
    assert critical_coupling(10) == pytest.approx(1.92161, abs=5e-6)


def test_branch_parse():
    assert Branch.parse("neg") is Branch.NEGATIVE
    assert Branch.parse("positive") is Branch.POSITIVE
    with pytest.raises(InvalidInputError):
        Branch.parse("sideways")


@pytest.mark.parametrize(
    "params, xi, expected",
    [
        (ModelParams(10, 0, 0), 1.3, [[0, 5], [5, 0]]),
        (ModelParams(10, 1, 0.5), 0.0, [[0.5, 5], [5, -0.5]]),
        (ModelParams(10, 2, 0.5), XI0, [[0, 5], [5, 0]]),
    ],
)
def test_spin_hamiltonian_examples(params, xi, expected):
    h = spin_hamiltonian(params, xi)
    np.testing.assert_allclose(h, expected, atol=1e-15)
    assert np.array_equal(h, h.T)


def test_epsilon_examples():
    assert epsilon(ModelParams(10, 1.7, 0), Branch.NEGATIVE, 0.0) == -5.0
    assert epsilon(ModelParams(10, 2, 0.5), Branch.POSITIVE, XI0) == pytest.approx(5.0, abs=1e-15)
    decoupled = ModelParams(10, 0, 0.5)
    closed = -math.sqrt(0.25 + 25)
    assert closed == pytest.approx(-5.0249378105604)
    for xi in (-3.0, 0.0, 7.5):
        assert epsilon(decoupled, Branch.NEGATIVE, xi) == pytest.approx(closed, abs=1e-14)
        assert np.linalg.eigvalsh(spin_hamiltonian(decoupled, xi))[0] == pytest.approx(closed, abs=1e-13)


def test_epsilon_vectorized_matches_scalar():
    p = ModelParams(10, 2, 0.5)
    xs = np.linspace(-5, 5, 11)
    np.testing.assert_array_equal(
        epsilon(p, Branch.NEGATIVE, xs), [epsilon(p, Branch.NEGATIVE, x) for x in xs]
    )


def test_spin_eigenvector_examples():
    p = ModelParams(10, 2, 0.5)
    s = 1 / math.sqrt(2)
    np.testing.assert_allclose(spin_eigenvector(p, Branch.POSITIVE, XI0), (s, s), atol=1e-15)
    np.testing.assert_allclose(spin_eigenvector(p, Branch.NEGATIVE, XI0), (-s, s), atol=1e-15)
    h = spin_hamiltonian(p, 3.0)
    for b in Branch:
        v = np.array(spin_eigenvector(p, b, 3.0))
        assert np.linalg.norm(h @ v - epsilon(p, b, 3.0) * v) < 1e-12


params_st = st.builds(
    ModelParams,
    delta=st.floats(0.05, 50),
    g=st.floats(0, 10),
    eta=st.floats(0, 5),
)
xi_st = st.floats(-40, 40)


@settings(max_examples=1000, deadline=None)
@given(params_st, xi_st)
def test_spin_sector_invariants(p, xi):
    h = spin_hamiltonian(p, xi)
    e_neg = epsilon(p, Branch.NEGATIVE, xi)
    e_pos = epsilon(p, Branch.POSITIVE, xi)
    assert e_neg == -e_pos
    assert abs(e_neg) >= p.delta / 2
    vecs = {}
    for b, e in ((Branch.NEGATIVE, e_neg), (Branch.POSITIVE, e_pos)):
        v = np.array(spin_eigenvector(p, b, xi))
        assert abs(v @ v - 1) < 1e-12
        assert v[1] >= 0
        # residual relative to the matrix scale
        assert np.max(np.abs(h @ v - e * v)) < 1e-12 * max(1.0, abs(e))
        vecs[b] = v
    assert abs(vecs[Branch.NEGATIVE] @ vecs[Branch.POSITIVE]) < 1e-12


@settings(max_examples=200, deadline=None)
@given(st.floats(0.1, 30), st.floats(0, 8), xi_st)
def test_reflection_symmetry_at_zero_bias(delta, g, xi):
    p = ModelParams(delta, g, 0)
    for b in Branch:
        assert epsilon(p, b, xi) == epsilon(p, b, -xi)


def test_eigenvector_is_continuous():
    p = ModelParams(10, 2, 0.5)
    xs = np.linspace(-10, 10, 20001)
    comps = np.array([spin_eigenvector(p, Branch.NEGATIVE, x) for x in xs])
    assert np.max(np.abs(np.diff(comps, axis=0))) < 1e-2


def test_equality_at_abs_min():
    p = ModelParams(10, 2, 0.5)
    assert abs(epsilon(p, Branch.NEGATIVE, XI0)) == pytest.approx(5.0, abs=1e-15)
    assert abs(epsilon(p, Branch.NEGATIVE, XI0 + 1e-3)) > 5.0
