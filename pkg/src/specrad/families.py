"""Structured infinite nonnegative matrices acting on l2.

An ``OperatorFamily`` is a finite collection of bands (offset ``d`` holds
``a[i, i+d] = w_d(i)``), plus an optional finite-rank correction embedded
in the top-left corner.  Band weights are :mod:`specrad.sequences` values,
so every family carries certified tail bounds and exact per-band limits.
Finitely many bands with bounded weights always give a bounded operator,
and the algebra below (entrywise products and powers, operator products,
sums, adjoints) is closed on this class: offsets add under products, and
all boundary effects are absorbed into the corner, which stays finite and
nonnegative.  When symbolic growth would exceed the caps the operation
raises ``ClosureOverflowError`` rather than truncating silently.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import ClosureOverflowError, DomainError, ShapeMismatchError
from .matrices import FiniteMatrix
from .sequences import (
    Constant,
    WeightSeq,
    seq_power,
    seq_product,
    seq_restrict,
    seq_scale,
    seq_shift,
    seq_sum,
)

MAX_BANDS = 512
MAX_CORNER = 4096


def band_start(d: int) -> int:
    """First row index at which the band of offset d has an entry."""
    return max(1, 1 - d)


def _as_corner(value) -> np.ndarray | None:
    if value is None:
        return None
    if isinstance(value, FiniteMatrix):
        arr = np.array(value.a)
    else:
        arr = np.array(value, dtype=float)
    if arr.ndim != 2:
        raise ShapeMismatchError("finite-rank corner must be a 2-d block")
    if not np.all(np.isfinite(arr)) or np.any(arr < 0):
        raise DomainError("finite-rank corner entries must be finite and nonnegative")
    if not arr.any():
        return None
    if max(arr.shape) > MAX_CORNER:
        raise ClosureOverflowError(f"finite-rank corner exceeds {MAX_CORNER} rows/cols")
    arr.flags.writeable = False
    return arr


class OperatorFamily:
    """Banded + diagonal + finite-rank nonnegative operator on l2."""

    __slots__ = ("bands", "corner")

    def __init__(self, bands=(), diagonal: WeightSeq | None = None, finite_rank=None):
        items = dict(bands) if not isinstance(bands, dict) else dict(bands)
        if diagonal is not None:
            if 0 in items:
                raise ShapeMismatchError("give the diagonal either as offset 0 or as diagonal=, not both")
            items[0] = diagonal
        clean: dict[int, WeightSeq] = {}
        for d, w in sorted(items.items()):
            d = int(d)
            if not isinstance(w, WeightSeq):
                raise DomainError(f"band weights must be WeightSeq values, got {type(w).__name__}")
            if isinstance(w, Constant) and w.c == 0.0:
                continue
            clean[d] = w
        if len(clean) > MAX_BANDS:
            raise ClosureOverflowError(f"family has {len(clean)} bands (cap {MAX_BANDS})")
        self.bands = clean
        self.corner = _as_corner(finite_rank)

    # -- structure ----------------------------------------------------

    @property
    def offsets(self) -> tuple[int, ...]:
        return tuple(self.bands.keys())

    @property
    def spread(self) -> int:
        return max((abs(d) for d in self.bands), default=0)

    @property
    def corner_shape(self) -> tuple[int, int]:
        return (0, 0) if self.corner is None else self.corner.shape

    def band_limits(self) -> dict[int, float]:
        return {d: w.limit for d, w in self.bands.items()}

    # -- entry access ---------------------------------------------------

    def band_entry(self, i: int, j: int) -> float:
        d = j - i
        w = self.bands.get(d)
        if w is None or i < band_start(d):
            return 0.0
        return w.value(i)

    def entry(self, i: int, j: int) -> float:
        """1-based entry a(i, j)."""
        if i < 1 or j < 1:
            raise DomainError("indices are 1-based")
        v = self.band_entry(i, j)
        if self.corner is not None and i <= self.corner.shape[0] and j <= self.corner.shape[1]:
            v += self.corner[i - 1, j - 1]
        return v

    def truncate(self, n: int) -> FiniteMatrix:
        """Top-left n-by-n compression P_n A P_n as a dense matrix."""
        if n < 1:
            raise DomainError("truncation size must be >= 1")
        out = np.zeros((n, n))
        for d, w in self.bands.items():
            lo = band_start(d)
            hi = min(n, n - d)
            for i in range(lo, hi + 1):
                out[i - 1, i + d - 1] = w.value(i)
        if self.corner is not None:
            r = min(n, self.corner.shape[0])
            c = min(n, self.corner.shape[1])
            out[:r, :c] += self.corner[:r, :c]
        return FiniteMatrix(out)

    def tail_norm_bound(self, n: int) -> float:
        """Certified upper bound on the l2 norm of rows i >= n.

        Each band restricted to rows >= n is a partial weighted shift whose
        norm is the sup of the remaining weights; the triangle inequality
        over bands plus the exact norm of the remaining corner rows gives a
        bound that decreases to the essential norm as n grows.
        """
        if n < 1:
            raise DomainError("tail index must be >= 1")
        total = 0.0
        for d, w in self.bands.items():
            total += w.tail_sup(max(n, band_start(d)))
        if self.corner is not None and n <= self.corner.shape[0]:
            total += float(np.linalg.norm(self.corner[n - 1:, :], 2))
        return total

    def gamma_limits(self) -> tuple[float, float]:
        """(lower, upper) certified bounds on the Hausdorff noncompactness.

        The upper bound is the limit of the row-tail norm bound; the lower
        bound sums per-band liminfs, which sliding window vectors realise in
        the essential norm.  The finite-rank corner is compact and drops out.
        """
        lo = sum(w.liminf for w in self.bands.values())
        hi = sum(w.limsup for w in self.bands.values())
        return lo, hi

    def entry_sup(self) -> float:
        """sup of all entries, from a covering truncation plus band tails."""
        cr, cc = self.corner_shape
        base = max(cr, cc) + self.spread + 1
        t = self.truncate(base + self.spread)
        best = t.entry_sup()
        for d, w in self.bands.items():
            best = max(best, w.tail_sup(max(base + 1, band_start(d))))
        return best

    # -- algebra ----------------------------------------------------------

    def hadamard(self, other: "OperatorFamily") -> "OperatorFamily":
        if not isinstance(other, OperatorFamily):
            raise ShapeMismatchError("entrywise product needs two operator families")
        bands = {}
        for d in set(self.bands) & set(other.bands):
            bands[d] = seq_product(self.bands[d], other.bands[d])
        corner = self._entrywise_corner(
            bands, lambda i, j: self.entry(i, j) * other.entry(i, j),
            _union_box(self.corner_shape, other.corner_shape))
        return OperatorFamily(bands, finite_rank=corner)

    def hpow(self, t: float) -> "OperatorFamily":
        if not (t > 0 and math.isfinite(t)):
            raise DomainError(f"entrywise power requires t > 0, got {t}")
        bands = {d: seq_power(w, t) for d, w in self.bands.items()}
        corner = self._entrywise_corner(
            bands, lambda i, j: math.pow(self.entry(i, j), t) if self.entry(i, j) > 0 else 0.0,
            self.corner_shape)
        return OperatorFamily(bands, finite_rank=corner)

    @staticmethod
    def _entrywise_corner(bands: dict[int, WeightSeq], exact, box: tuple[int, int]):
        """Corner = exact entries minus the band contribution, on the box.

        Outside the box both operands are pure bands, where the result band
        formula is already exact, so the correction is supported on the box.
        """
        rows, cols = box
        if rows == 0 or cols == 0:
            return None
        if max(rows, cols) > MAX_CORNER:
            raise ClosureOverflowError("corner correction exceeded the size cap")
        out = np.zeros((rows, cols))
        for i in range(1, rows + 1):
            for j in range(1, cols + 1):
                d = j - i
                w = bands.get(d)
                band_v = w.value(i) if (w is not None and i >= band_start(d)) else 0.0
                v = exact(i, j) - band_v
                if v < -1e-9:
                    raise DomainError("internal: negative corner correction")
                out[i - 1, j - 1] = max(v, 0.0)
        return out

    def __matmul__(self, other: "OperatorFamily") -> "OperatorFamily":
        if not isinstance(other, OperatorFamily):
            raise ShapeMismatchError("operator product needs two operator families")
        bands: dict[int, list[WeightSeq]] = {}
        for da, wa in self.bands.items():
            sa = band_start(da)
            for db, wb in other.bands.items():
                start = max(sa, band_start(db) - da, band_start(da + db))
                term = seq_restrict(seq_product(wa, seq_shift(wb, da)), start)
                bands.setdefault(da + db, []).append(term)
        merged = {d: seq_sum(parts) for d, parts in bands.items()}
        corner = self._product_corner(other)
        return OperatorFamily(merged, finite_rank=corner)

    def _product_corner(self, other: "OperatorFamily"):
        ra, ca = self.corner_shape
        rb, cb = other.corner_shape
        rows = 0
        cols = 0
        if rb:
            rows = max(rows, max((rb - d for d in self.bands), default=0))
        if ra:
            rows = max(rows, ra)
            cols = max(cols, max((ca + d for d in other.bands), default=0))
        if rb:
            cols = max(cols, cb)
        if ra and rb:
            cols = max(cols, cb)
        if rows == 0 or cols == 0:
            return None
        if max(rows, cols) > MAX_CORNER:
            raise ClosureOverflowError("product corner exceeded the size cap")
        out = np.zeros((rows, cols))
        # bands(self) . corner(other)
        if other.corner is not None:
            for d, w in self.bands.items():
                lo = band_start(d)
                hi = min(rows, rb - d)
                for i in range(lo, hi + 1):
                    out[i - 1, :cb] += w.value(i) * other.corner[i + d - 1, :]
        # corner(self) . bands(other)
        if self.corner is not None:
            for d, w in other.bands.items():
                for k in range(band_start(d), ca + 1):
                    j = k + d
                    if 1 <= j <= cols:
                        out[:ra, j - 1] += self.corner[:, k - 1] * w.value(k)
        # corner(self) . corner(other)
        if self.corner is not None and other.corner is not None:
            inner = max(ca, rb)
            a = np.zeros((ra, inner))
            a[:, :ca] = self.corner
            b = np.zeros((inner, cb))
            b[:rb, :] = other.corner
            out[:ra, :cb] += a @ b
        return out

    def __add__(self, other: "OperatorFamily") -> "OperatorFamily":
        if not isinstance(other, OperatorFamily):
            raise ShapeMismatchError("operator sum needs two operator families")
        bands = dict(self.bands)
        for d, w in other.bands.items():
            bands[d] = seq_sum([bands[d], w]) if d in bands else w
        corner = _padded_sum(self.corner, other.corner)
        return OperatorFamily(bands, finite_rank=corner)

    def scale(self, c: float) -> "OperatorFamily":
        if not (c >= 0 and math.isfinite(c)):
            raise DomainError(f"scale factor must be finite and >= 0, got {c}")
        bands = {d: seq_scale(w, c) for d, w in self.bands.items()}
        corner = None if self.corner is None else self.corner * c
        return OperatorFamily(bands, finite_rank=corner)

    def adjoint(self) -> "OperatorFamily":
        bands = {}
        for d, w in self.bands.items():
            bands[-d] = seq_restrict(seq_shift(w, -d), max(1, 1 + d))
        corner = None if self.corner is None else self.corner.T
        return OperatorFamily(bands, finite_rank=corner)

    def __repr__(self):
        parts = [f"{d}:{w!r}" for d, w in self.bands.items()]
        return f"OperatorFamily(bands={{{', '.join(parts)}}}, corner={self.corner_shape})"


def _union_box(a: tuple[int, int], b: tuple[int, int]) -> tuple[int, int]:
    return (max(a[0], b[0]), max(a[1], b[1]))


def _padded_sum(a: np.ndarray | None, b: np.ndarray | None):
    if a is None:
        return None if b is None else np.array(b)
    if b is None:
        return np.array(a)
    rows = max(a.shape[0], b.shape[0])
    cols = max(a.shape[1], b.shape[1])
    out = np.zeros((rows, cols))
    out[:a.shape[0], :a.shape[1]] += a
    out[:b.shape[0], :b.shape[1]] += b
    return out


def shift_family(weights: WeightSeq, offset: int = 1, finite_rank=None) -> OperatorFamily:
    """Single-band family: a(i, i+offset) = weights(i)."""
    if offset == 0:
        raise DomainError("offset 0 is a diagonal; use diagonal_family")
    return OperatorFamily({offset: weights}, finite_rank=finite_rank)


def diagonal_family(weights: WeightSeq, finite_rank=None) -> OperatorFamily:
    return OperatorFamily(diagonal=weights, finite_rank=finite_rank)


def finite_rank_family(block) -> OperatorFamily:
    return OperatorFamily(finite_rank=block)


def identity_family() -> OperatorFamily:
    return diagonal_family(Constant(1.0))
