"""Finite sets of matrices or operator families, and their algebra.

Sets model the bounded collections over which joint and generalized radii
are taken.  Elements are kept as ordered lists and duplicates are never
removed: radii are max-based, so duplicates are harmless, and cardinality
stays predictable (|set_power(S, m)| = |S|**m exactly).
"""

from __future__ import annotations

import math
from functools import reduce
from itertools import product as _iterprod

from .errors import BudgetExceededError, DomainError, ShapeMismatchError
from .families import OperatorFamily
from .matrices import FiniteMatrix, WeightVector

MAX_SET_ELEMENTS = 200_000


class OperatorSet:
    """Nonempty homogeneous collection of matrices or operator families."""

    __slots__ = ("elements",)

    def __init__(self, elements):
        elems = tuple(elements)
        if not elems:
            raise DomainError("operator set must be nonempty")
        first = elems[0]
        if isinstance(first, FiniteMatrix):
            shape = (first.rows, first.cols)
            for e in elems:
                if not isinstance(e, FiniteMatrix) or (e.rows, e.cols) != shape:
                    raise ShapeMismatchError("matrix set elements must share one shape")
        elif isinstance(first, OperatorFamily):
            for e in elems:
                if not isinstance(e, OperatorFamily):
                    raise ShapeMismatchError("family set elements must all be operator families")
        else:
            raise DomainError(f"unsupported set element type {type(first).__name__}")
        if len(elems) > MAX_SET_ELEMENTS:
            raise BudgetExceededError(f"set has {len(elems)} elements (cap {MAX_SET_ELEMENTS})")
        self.elements = elems

    @property
    def kind(self) -> str:
        return "matrix" if isinstance(self.elements[0], FiniteMatrix) else "family"

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, idx):
        return self.elements[idx]

    def map(self, fn) -> "OperatorSet":
        return OperatorSet([fn(e) for e in self.elements])

    def __repr__(self):
        return f"OperatorSet({len(self.elements)} x {self.kind})"


def _as_set(value) -> OperatorSet:
    if isinstance(value, OperatorSet):
        return value
    return OperatorSet([value])


def _guard_size(n: int):
    if n > MAX_SET_ELEMENTS:
        raise BudgetExceededError(f"set operation would produce {n} elements (cap {MAX_SET_ELEMENTS})")


def set_product(p, q) -> OperatorSet:
    """All ordered products {AB : A in P, B in Q}; duplicates retained."""
    p, q = _as_set(p), _as_set(q)
    _guard_size(len(p) * len(q))
    return OperatorSet([a @ b for a in p for b in q])


def set_product_many(sets) -> OperatorSet:
    sets = [_as_set(s) for s in sets]
    if not sets:
        raise DomainError("need at least one set to multiply")
    return reduce(set_product, sets)


def set_power(s, m: int) -> OperatorSet:
    """All length-m ordered products from S; cardinality |S|**m."""
    s = _as_set(s)
    if m < 1:
        raise DomainError("set power needs m >= 1")
    _guard_size(len(s) ** m)
    return set_product_many([s] * m)


def set_sum(p, q) -> OperatorSet:
    p, q = _as_set(p), _as_set(q)
    _guard_size(len(p) * len(q))
    return OperatorSet([a + b for a in p for b in q])


def set_sum_many(sets) -> OperatorSet:
    sets = [_as_set(s) for s in sets]
    return reduce(set_sum, sets)


def set_hadamard_power(s, t: float) -> OperatorSet:
    """Elementwise Hadamard power {A^(t) : A in S}."""
    return _as_set(s).map(lambda a: a.hpow(t))


def set_hadamard_mean(sets, w: WeightVector) -> OperatorSet:
    """Weighted Hadamard geometric mean of sets: all cross-element means."""
    sets = [_as_set(s) for s in sets]
    if len(sets) != len(w):
        raise ShapeMismatchError(f"{len(sets)} sets but {len(w)} weights")
    total = math.prod(len(s) for s in sets)
    _guard_size(total)
    out = []
    for combo in _iterprod(*[s.elements for s in sets]):
        acc = combo[0].hpow(w.weights[0])
        for elem, alpha in zip(combo[1:], w.weights[1:]):
            acc = acc.hadamard(elem.hpow(alpha))
        out.append(acc)
    return OperatorSet(out)


def set_hadamard_product(p, q) -> OperatorSet:
    """All cross entrywise products {A o B}; the mean with weights (1, 1)."""
    p, q = _as_set(p), _as_set(q)
    _guard_size(len(p) * len(q))
    return OperatorSet([a.hadamard(b) for a in p for b in q])


def set_adjoint(s) -> OperatorSet:
    return _as_set(s).map(lambda a: a.adjoint())


def set_scale(s, c: float) -> OperatorSet:
    return _as_set(s).map(lambda a: a.scale(c))


def symmetrization(s, alpha: float, beta: float) -> OperatorSet:
    """Weighted geometric symmetrization {A^(a) o (B*)^(b) : A, B in S}.

    A and B range independently, so the result has |S|**2 elements; for a
    singleton this collapses to the classical symmetrization of a single
    operator.  Requires alpha + beta >= 1 so the mean stays bounded on l2.
    """
    if alpha < 0 or beta < 0:
        raise DomainError("symmetrization weights must be nonnegative")
    if alpha + beta < 1.0 - 1e-12:
        raise DomainError(f"symmetrization needs alpha + beta >= 1, got {alpha + beta}")
    s = _as_set(s)
    _guard_size(len(s) ** 2)
    out = []
    for a in s:
        for b in s:
            bstar = b.adjoint()
            if beta == 0.0:
                out.append(a.hpow(alpha) if alpha != 1.0 else a)
            elif alpha == 0.0:
                out.append(bstar.hpow(beta) if beta != 1.0 else bstar)
            else:
                out.append(a.hpow(alpha).hadamard(bstar.hpow(beta)))
    return OperatorSet(out)
