"""Dense nonnegative matrices and the entrywise (Hadamard) algebra.

``FiniteMatrix`` is the carrier of every finite-level inequality chain.
Values are immutable after construction; all operations return fresh
objects, so instances are safe to share across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ShapeMismatchError


class FiniteMatrix:
    """Immutable dense matrix with nonnegative real entries."""

    __slots__ = ("a",)

    def __init__(self, data):
        a = np.array(data, dtype=float)
        if a.ndim != 2 or a.size == 0:
            raise ShapeMismatchError("a matrix needs at least one row and one column")
        if not np.all(np.isfinite(a)):
            raise DomainError("matrix entries must be finite")
        if np.any(a < 0):
            raise DomainError("matrix entries must be nonnegative")
        a.flags.writeable = False
        self.a = a

    @property
    def rows(self) -> int:
        return self.a.shape[0]

    @property
    def cols(self) -> int:
        return self.a.shape[1]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def entry(self, i: int, j: int) -> float:
        """1-based entry access, matching the infinite-operator convention."""
        return float(self.a[i - 1, j - 1])

    def hadamard(self, other: "FiniteMatrix") -> "FiniteMatrix":
        if self.a.shape != other.a.shape:
            raise ShapeMismatchError(
                f"entrywise product needs equal shapes, got {self.a.shape} and {other.a.shape}"
            )
        return FiniteMatrix(self.a * other.a)

    def hpow(self, t: float) -> "FiniteMatrix":
        """Entrywise t-th power with the convention 0^t = 0."""
        if not (t > 0 and math.isfinite(t)):
            raise DomainError(f"entrywise power requires t > 0, got {t}")
        with np.errstate(divide="ignore"):
            out = np.where(self.a > 0, np.power(self.a, t), 0.0)
        return FiniteMatrix(out)

    def __matmul__(self, other: "FiniteMatrix") -> "FiniteMatrix":
        if self.cols != other.rows:
            raise ShapeMismatchError(
                f"product needs conformable shapes, got {self.a.shape} and {other.a.shape}"
            )
        return FiniteMatrix(self.a @ other.a)

    def __add__(self, other: "FiniteMatrix") -> "FiniteMatrix":
        if self.a.shape != other.a.shape:
            raise ShapeMismatchError(
                f"sum needs equal shapes, got {self.a.shape} and {other.a.shape}"
            )
        return FiniteMatrix(self.a + other.a)

    def scale(self, c: float) -> "FiniteMatrix":
        if not (c >= 0 and math.isfinite(c)):
            raise DomainError(f"scale factor must be finite and >= 0, got {c}")
        return FiniteMatrix(self.a * c)

    def adjoint(self) -> "FiniteMatrix":
        """Transpose; the adjoint of a real nonnegative matrix."""
        return FiniteMatrix(self.a.T)

    def entry_sup(self) -> float:
        return float(self.a.max())

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteMatrix) and np.array_equal(self.a, other.a)

    def __hash__(self):
        return hash((self.a.shape, self.a.tobytes()))

    def __repr__(self):
        return f"FiniteMatrix({self.a.tolist()!r})"

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "FiniteMatrix":
        return cls(np.zeros((rows, cols if cols is not None else rows)))

    @classmethod
    def identity(cls, n: int) -> "FiniteMatrix":
        return cls(np.eye(n))

    @classmethod
    def ones(cls, rows: int, cols: int | None = None) -> "FiniteMatrix":
        return cls(np.ones((rows, cols if cols is not None else rows)))


SUM_EQ_ONE = "sum_eq_one"
SUM_GE_ONE = "sum_ge_one"

_EQ_TOL = 1e-12


@dataclass(frozen=True)
class WeightVector:
    """Positive exponents for weighted geometric means, with their regime.

    ``sum_eq_one`` demands the weights sum to 1 (within 1e-12); the mean is
    then dominated entrywise by the matching arithmetic mean.  ``sum_ge_one``
    is the relaxed regime used on sequence spaces.
    """

    weights: tuple[float, ...]
    regime: str = SUM_EQ_ONE

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(float(w) for w in self.weights))
        if not self.weights:
            raise DomainError("weight vector must be nonempty")
        if any(not (w > 0 and math.isfinite(w)) for w in self.weights):
            raise DomainError("weights must be positive and finite")
        total = sum(self.weights)
        if self.regime == SUM_EQ_ONE:
            if abs(total - 1.0) > _EQ_TOL:
                raise DomainError(f"sum_eq_one regime needs weights summing to 1, got {total}")
        elif self.regime == SUM_GE_ONE:
            if total < 1.0 - _EQ_TOL:
                raise DomainError(f"sum_ge_one regime needs weight sum >= 1, got {total}")
        else:
            raise DomainError(f"unknown weight regime: {self.regime!r}")

    def __len__(self) -> int:
        return len(self.weights)

    def __iter__(self):
        return iter(self.weights)

    @property
    def total(self) -> float:
        return sum(self.weights)

    @classmethod
    def uniform(cls, m: int, regime: str = SUM_EQ_ONE) -> "WeightVector":
        return cls((1.0 / m,) * m, regime)

    @classmethod
    def of(cls, *weights: float) -> "WeightVector":
        total = sum(weights)
        regime = SUM_EQ_ONE if abs(total - 1.0) <= _EQ_TOL else SUM_GE_ONE
        return cls(tuple(weights), regime)
