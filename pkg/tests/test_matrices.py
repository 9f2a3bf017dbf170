import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import brute_geometric_mean
from specrad import FiniteMatrix, WeightVector
from specrad.errors import DomainError, ShapeMismatchError
from specrad.matrices import SUM_EQ_ONE, SUM_GE_ONE
from specrad.ops import weighted_geometric_mean


def M(data):
    return FiniteMatrix(data)


def test_rejects_negative_and_empty():
    with pytest.raises(DomainError):
        M([[1.0, -0.1]])
    with pytest.raises(ShapeMismatchError):
        FiniteMatrix(np.zeros((0, 2)))


def test_hadamard_product_entrywise():
    a = M([[1, 2], [3, 4]])
    b = M([[2, 0], [1, 1]])
    assert a.hadamard(b) == M([[2, 0], [3, 4]])
    assert a.hadamard(FiniteMatrix.ones(2)) == a
    with pytest.raises(ShapeMismatchError):
        a.hadamard(M([[1, 2, 3]]))


def test_hadamard_power():
    assert M([[4, 9], [0, 1]]).hpow(0.5) == M([[2, 3], [0, 1]])
    a = M([[1, 2], [3, 4]])
    assert a.hpow(1.0) == a
    d = M([[2, 0], [0, 5]])
    assert d.hpow(3.0) == M([[8, 0], [0, 125]])
    with pytest.raises(DomainError):
        a.hpow(0.0)
    with pytest.raises(DomainError):
        a.hpow(-1.0)


def test_product_sum_scale_adjoint():
    a = M([[1, 1], [0, 1]])
    b = M([[1, 0], [1, 1]])
    assert a @ b == M([[2, 1], [1, 1]])
    assert a + FiniteMatrix.zeros(2) == a
    assert a.scale(2.0) == M([[2, 2], [0, 2]])
    assert a.adjoint().adjoint() == a
    assert (a @ b).adjoint() == b.adjoint() @ a.adjoint()
    with pytest.raises(ShapeMismatchError):
        a @ M([[1, 2, 3]]).adjoint() @ a  # 2x2 times 3x1
    with pytest.raises(DomainError):
        a.scale(-1.0)


def test_mean_idempotent_and_sqrt():
    a = M([[1, 4], [1, 1]])
    b = M([[4, 1], [1, 1]])
    half = WeightVector.uniform(2)
    assert weighted_geometric_mean([a, a], half) == a
    assert weighted_geometric_mean([a, b], half) == M([[2, 2], [1, 1]])


def test_mean_matches_brute_force():
    rng = np.random.default_rng(3)
    for _ in range(20):
        arrays = [rng.random((3, 3)) for _ in range(3)]
        w = WeightVector.uniform(3)
        got = weighted_geometric_mean([FiniteMatrix(x) for x in arrays], w).a
        expect = brute_geometric_mean(arrays, w.weights)
        assert np.allclose(got, expect, rtol=1e-15, atol=1e-15)


def test_mean_am_gm_domination():
    rng = np.random.default_rng(4)
    for _ in range(25):
        arrays = [rng.random((4, 4)) for _ in range(3)]
        alphas = rng.dirichlet(np.ones(3))
        w = WeightVector(tuple(alphas), SUM_EQ_ONE)
        mean = weighted_geometric_mean([FiniteMatrix(x) for x in arrays], w).a
        arith = sum(a * x for a, x in zip(alphas, arrays))
        assert np.all(mean <= arith + 1e-12)


def test_sum_product_power_inequality_for_vectors():
    # sums of weighted geometric means against the mean of the sums
    rng = np.random.default_rng(5)
    for _ in range(25):
        k, m = rng.integers(1, 4), rng.integers(1, 4)
        grid = rng.random((k, m, 6))
        alphas = rng.dirichlet(np.ones(m)) * (1.0 + rng.random())
        lhs = sum(
            np.prod([grid[i, j] ** alphas[j] for j in range(m)], axis=0)
            for i in range(k))
        rhs = np.prod([grid[:, j].sum(axis=0) ** alphas[j] for j in range(m)], axis=0)
        assert np.all(lhs <= rhs * (1 + 1e-12) + 1e-12)


def test_power_product_entrywise_inequality():
    rng = np.random.default_rng(6)
    for _ in range(25):
        t = 1.0 + 2.0 * rng.random()
        mats = [rng.random((4, 4)) for _ in range(3)]
        lhs = np.linalg.multi_dot([np.where(x > 0, x ** t, 0.0) for x in mats])
        prod = np.linalg.multi_dot(mats)
        rhs = np.where(prod > 0, prod ** t, 0.0)
        assert np.all(lhs <= rhs * (1 + 1e-12))


@settings(max_examples=60, deadline=None)
@given(s=st.floats(0.1, 4.0), t=st.floats(0.1, 4.0))
def test_hadamard_power_composes(s, t):
    rng = np.random.default_rng(7)
    a = FiniteMatrix(rng.random((3, 3)))
    left = a.hpow(s).hpow(t).a
    right = a.hpow(s * t).a
    assert np.allclose(left, right, rtol=1e-12)


def test_weight_vector_regimes():
    WeightVector((0.5, 0.5), SUM_EQ_ONE)
    WeightVector((1.0, 0.75), SUM_GE_ONE)
    with pytest.raises(DomainError):
        WeightVector((0.5, 0.6), SUM_EQ_ONE)
    with pytest.raises(DomainError):
        WeightVector((0.2, 0.3), SUM_GE_ONE)
    with pytest.raises(DomainError):
        WeightVector((0.5, -0.5), SUM_EQ_ONE)
    assert WeightVector.of(0.25, 0.75).regime == SUM_EQ_ONE
    assert WeightVector.of(1.0, 1.0).regime == SUM_GE_ONE
