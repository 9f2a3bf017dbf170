import math

import pytest

from specrad.errors import ClosureOverflowError, DomainError
from specrad.sequences import (
    Constant,
    EventuallyConstant,
    PrefixWithLimit,
    RationalFormula,
    seq_from_json,
    seq_power,
    seq_product,
    seq_restrict,
    seq_shift,
    seq_sum,
    seq_to_json,
)


def brute_tail(seq, n, horizon=3000):
    vals = [seq.value(i) for i in range(n, n + horizon)]
    return min(vals), max(vals)


def test_constant():
    w = Constant(2.5)
    assert w.value(1) == 2.5 and w.value(1000) == 2.5
    assert w.tail_sup(7) == 2.5 and w.tail_inf(7) == 2.5
    assert w.limsup == w.liminf == 2.5


def test_constant_rejects_negative():
    with pytest.raises(DomainError):
        Constant(-1.0)


def test_eventually_constant_tails():
    w = EventuallyConstant([3.0, 0.5], 1.0)
    assert w.value(1) == 3.0 and w.value(2) == 0.5 and w.value(3) == 1.0
    assert w.tail_sup(1) == 3.0
    assert w.tail_sup(2) == 1.0
    assert w.tail_inf(2) == 0.5
    assert w.tail_inf(3) == 1.0
    assert w.limit == 1.0


def test_rational_inverse_index():
    w = RationalFormula([1.0], [0.0, 1.0])  # 1/i
    assert w.value(4) == 0.25
    assert w.tail_sup(10) == pytest.approx(0.1, abs=0)
    assert w.tail_inf(10) == 0.0
    assert w.limit == 0.0


def test_rational_shifted_law():
    # (c i + a)/i = c + a/i with a negative but positive values on i >= 1
    w = RationalFormula([-0.4, 0.6], [0.0, 1.0])
    assert w.value(1) == pytest.approx(0.2)
    assert w.limit == pytest.approx(0.6)
    lo, hi = brute_tail(w, 3)
    assert w.tail_sup(3) >= hi - 1e-15
    assert w.tail_inf(3) <= lo + 1e-15
    # increasing sequence: tail sup equals the limit
    assert w.tail_sup(3) == pytest.approx(0.6)


def test_rational_rejects_unbounded_or_negative():
    with pytest.raises(DomainError):
        RationalFormula([0.0, 0.0, 1.0], [0.0, 1.0])  # deg p > deg q
    with pytest.raises(DomainError):
        RationalFormula([-1.0, 0.5], [0.0, 1.0])  # negative at i = 1
    with pytest.raises(DomainError):
        RationalFormula([1.0], [0.0])  # zero denominator


def test_prefix_with_limit():
    w = PrefixWithLimit([2.0, 1.8], 1.0)
    assert w.value(2) == 1.8
    assert w.value(3) == pytest.approx(1.4)
    assert w.value(4) == pytest.approx(1.2)
    assert w.limit == 1.0
    assert w.tail_sup(3) == pytest.approx(1.4)
    assert w.tail_inf(3) == 1.0
    lo, hi = brute_tail(w, 1)
    assert w.tail_sup(1) >= hi and w.tail_inf(1) <= lo + 1e-15


@pytest.mark.parametrize("n", [1, 2, 5, 17])
def test_combinator_tail_bounds_cover_samples(n):
    a = RationalFormula([0.7, 1.1], [0.0, 1.0])
    b = EventuallyConstant([0.2, 2.0, 0.9], 1.3)
    combos = [
        seq_product(a, b),
        seq_sum([a, b]),
        seq_power(a, 1.7),
        seq_power(b, 0.5),
        seq_shift(a, 3),
        seq_restrict(b, 4),
        seq_product(seq_shift(a, 1), seq_power(b, 2.0)),
    ]
    for w in combos:
        lo, hi = brute_tail(w, n)
        assert w.tail_sup(n) >= hi - 1e-12
        assert w.tail_inf(n) <= lo + 1e-12
        assert w.tail_inf(n) <= w.limit <= w.tail_sup(n) + 1e-12


def test_combinator_limits_are_exact():
    a = RationalFormula([1.0, 2.0], [0.0, 1.0])  # -> 2
    b = Constant(3.0)
    assert seq_product(a, b).limit == pytest.approx(6.0)
    assert seq_sum([a, b]).limit == pytest.approx(5.0)
    assert seq_power(a, 2.0).limit == pytest.approx(4.0)
    assert seq_shift(a, 5).limit == pytest.approx(2.0)


def test_restrict_zeroes_prefix():
    w = seq_restrict(Constant(2.0), 4)
    assert w.value(3) == 0.0 and w.value(4) == 2.0
    assert w.tail_inf(2) == 0.0
    assert w.tail_sup(2) == 2.0


def test_power_requires_positive_exponent():
    with pytest.raises(DomainError):
        seq_power(Constant(1.0), 0.0)


def test_node_growth_overflows():
    grown = EventuallyConstant([1.0], 1.0)
    with pytest.raises(ClosureOverflowError):
        for _ in range(40):
            grown = seq_product(grown, grown)


def test_json_roundtrip_leaves():
    leaves = [
        Constant(1.5),
        EventuallyConstant([1.0, 2.0], 0.5),
        RationalFormula([0.2, 1.0], [0.0, 1.0]),
        PrefixWithLimit([2.0], 1.0),
    ]
    for w in leaves:
        back = seq_from_json(seq_to_json(w))
        assert type(back) is type(w)
        assert [back.value(i) for i in range(1, 8)] == [w.value(i) for i in range(1, 8)]
    with pytest.raises(DomainError):
        seq_to_json(seq_product(leaves[1], leaves[2]))
    with pytest.raises(DomainError):
        seq_from_json({"kind": "mystery"})
