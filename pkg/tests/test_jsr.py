import math

import numpy as np
import pytest

from specrad import (
    Constant,
    FiniteMatrix,
    OperatorSet,
    RationalFormula,
    diagonal_family,
    ess_gen_radius_estimate,
    ess_joint_radius_ub,
    finite_rank_family,
    gen_radius_lb,
    gripenberg_bracket,
    joint_radius_ub,
    shift_family,
    spectral_radius,
)
from specrad.errors import DomainError
from specrad.jsr import finite_set_bracket, gamma_set_bracket, norm_level_max

PHI = (1 + math.sqrt(5)) / 2

GOLDEN = OperatorSet([FiniteMatrix([[1, 1], [0, 1]]), FiniteMatrix([[1, 0], [1, 1]])])


def test_gen_radius_lb_examples():
    a = FiniteMatrix([[2, 1], [1, 1]])
    single = OperatorSet([a])
    rho = spectral_radius(a)
    assert gen_radius_lb(single, 3) == pytest.approx(rho.mid, rel=1e-9)
    nil = OperatorSet([FiniteMatrix([[0, 1], [0, 0]]), FiniteMatrix([[0, 0], [1, 0]])])
    assert gen_radius_lb(nil, 1) == 0.0
    assert gen_radius_lb(nil, 2) == pytest.approx(1.0, rel=1e-9)
    assert gen_radius_lb(GOLDEN, 2) == pytest.approx(PHI, rel=1e-9)
    with pytest.raises(DomainError):
        gen_radius_lb(GOLDEN, 0)


def test_joint_radius_ub_examples():
    assert joint_radius_ub(OperatorSet([FiniteMatrix([[2, 0], [0, 1]])]), 1) == \
        pytest.approx(2.0, rel=1e-9)
    assert joint_radius_ub(GOLDEN, 1) == pytest.approx(PHI, rel=1e-9)
    c = OperatorSet([FiniteMatrix.identity(3).scale(1.3)])
    assert joint_radius_ub(c, 2) == pytest.approx(1.3, rel=1e-9)


def test_sandwich_and_monotone_refinement():
    rng = np.random.default_rng(21)
    for _ in range(10):
        s = OperatorSet([FiniteMatrix(rng.random((3, 3))) for _ in range(2)])
        lbs = [gen_radius_lb(s, m) for m in range(1, 5)]
        ubs = [joint_radius_ub(s, m) for m in range(1, 5)]
        for lb, ub in zip(lbs, ubs):
            assert lb <= ub + 1e-9
        assert all(a <= b + 1e-12 for a, b in zip(lbs, lbs[1:]))
        assert all(a >= b - 1e-12 for a, b in zip(ubs, ubs[1:]))


def test_power_and_cyclic_identities():
    rng = np.random.default_rng(22)
    from specrad import set_power, set_product
    for _ in range(8):
        s = OperatorSet([FiniteMatrix(rng.random((2, 2))) for _ in range(2)])
        for k in (2, 3):
            for m in (1, 2):
                left = gen_radius_lb(set_power(s, k), m)
                right = gen_radius_lb(s, k * m,
                                      lengths=[k * j for j in range(1, m + 1)]) ** k
                assert left == pytest.approx(right, rel=1e-9, abs=1e-12)
        p = OperatorSet([FiniteMatrix(rng.random((2, 2))) for _ in range(2)])
        a = gen_radius_lb(set_product(s, p), 2)
        b = gen_radius_lb(set_product(p, s), 2)
        assert a == pytest.approx(b, rel=1e-9, abs=1e-12)


def test_gripenberg_golden_pair():
    b = gripenberg_bracket(GOLDEN, 1e-6)
    assert b.converged
    assert b.width <= 1e-6
    assert b.contains(PHI, slack=1e-12)


def test_gripenberg_singleton_and_zero():
    a = FiniteMatrix([[2, 1], [1, 1]])
    b = gripenberg_bracket(OperatorSet([a]), 1e-6)
    assert b.width <= 1e-6
    assert b.contains(spectral_radius(a).mid, slack=1e-9)
    z = FiniteMatrix.zeros(2)
    assert gripenberg_bracket(OperatorSet([z, z]), 1e-6).hi == 0.0
    with pytest.raises(DomainError):
        gripenberg_bracket(GOLDEN, 0.0)


def test_gripenberg_contains_lb_and_ub():
    rng = np.random.default_rng(23)
    for _ in range(6):
        s = OperatorSet([FiniteMatrix(rng.random((3, 3)) * (rng.random((3, 3)) < 0.6))
                         for _ in range(2)])
        g = gripenberg_bracket(s, 5e-3, budget=30_000)
        lb = gen_radius_lb(s, 3)
        ub = joint_radius_ub(s, 3)
        assert lb <= g.hi + 1e-9
        assert g.lo <= ub + 1e-9
        assert g.overlaps(finite_set_bracket(s, 3), slack=1e-9)


def test_gripenberg_budget_flag():
    rng = np.random.default_rng(24)
    s = OperatorSet([FiniteMatrix(rng.random((3, 3))) for _ in range(2)])
    b = gripenberg_bracket(s, 1e-12, budget=8)
    assert not b.converged
    assert b.lo <= b.hi


def test_ess_set_radii():
    c = OperatorSet([shift_family(Constant(0.8))])
    assert ess_joint_radius_ub(c, 3) == pytest.approx(0.8, rel=1e-9)
    lo, hi = ess_gen_radius_estimate(c, 2)
    assert lo == pytest.approx(0.8, rel=1e-9)
    assert hi == pytest.approx(0.8, rel=1e-9)
    compact = OperatorSet([finite_rank_family([[1.0, 2.0], [0.5, 1.0]])])
    assert ess_joint_radius_ub(compact, 2) == 0.0
    pair = OperatorSet([
        diagonal_family(RationalFormula([-0.4, 1.0], [0.0, 1.0])),  # -> 1
        diagonal_family(RationalFormula([0.4, 2.0], [0.0, 1.0])),   # -> 2
    ])
    assert ess_joint_radius_ub(pair, 2) == pytest.approx(2.0, rel=1e-9)


def test_gamma_set_and_level_helpers():
    pair = OperatorSet([shift_family(Constant(0.5)), shift_family(Constant(1.5))])
    g = gamma_set_bracket(pair)
    assert g.lo == g.hi == 1.5
    assert norm_level_max(GOLDEN, 1) == pytest.approx(PHI, rel=1e-9)
    assert norm_level_max(GOLDEN, 2) == pytest.approx(PHI ** 2, rel=1e-9)
