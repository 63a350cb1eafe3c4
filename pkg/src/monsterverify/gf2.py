"""Quadratic and bilinear forms over GF(2), with bit-packed vectors.

Vectors of F2^n are Python ints: bit i is coordinate i (coordinate 0 is the
least significant bit).  Arbitrary n is supported since Python ints are
unbounded; the hot paths (form evaluation, span scans) are popcounts of
masked ANDs.

A quadratic form is stored as an upper-triangular matrix U, one row per
coordinate, with

    q(v) = sum_{i <= j} U[i][j] v_i v_j   (mod 2).

The polarized bilinear form B(u, v) = q(u+v) + q(u) + q(v) is computed from
U (B = U + U^T, zero diagonal, hence alternating) and never stored
independently.

Subspaces are kept in reduced row echelon form with pivots in increasing
coordinate order, so equal subspaces compare equal and deduplication is a
tuple comparison.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Literal

import numpy as np

__all__ = [
    "GF2Vector",
    "BilinearForm",
    "QuadraticForm",
    "Subspace",
    "WittDecomposition",
    "rref",
    "polarize",
    "witt_decompose",
    "classify",
    "count_singular",
    "is_totally_singular",
    "enumerate_mts",
    "complementary_mts_pair",
    "singular_vector",
    "transvection",
    "mts_count_formula",
    "singular_count_formula",
]

SignType = Literal["plus", "minus"]


def _bits(v) -> int:
    """Coerce a vector argument (int or GF2Vector) to its bit pattern."""
    return v.bits if isinstance(v, GF2Vector) else v


def parity(x: int) -> int:
    return x.bit_count() & 1


@dataclass(frozen=True)
class GF2Vector:
    """A vector of F2^n.  Addition is componentwise XOR."""

    n: int
    bits: int

    def __post_init__(self):
        if self.bits < 0 or self.bits >> self.n:
            raise ValueError(f"bit pattern {self.bits:#x} does not fit in F2^{self.n}")

    def __xor__(self, other: "GF2Vector") -> "GF2Vector":
        if self.n != other.n:
            raise ValueError("length mismatch")
        return GF2Vector(self.n, self.bits ^ other.bits)

    __add__ = __xor__

    def __getitem__(self, i: int) -> int:
        return (self.bits >> i) & 1

    def __iter__(self) -> Iterator[int]:
        return ((self.bits >> i) & 1 for i in range(self.n))

    def weight(self) -> int:
        return self.bits.bit_count()

    @classmethod
    def from_coords(cls, coords: Iterable[int]) -> "GF2Vector":
        coords = list(coords)
        bits = 0
        for i, c in enumerate(coords):
            if c & 1:
                bits |= 1 << i
        return cls(len(coords), bits)


@dataclass(frozen=True)
class BilinearForm:
    """A symmetric bilinear form on F2^n, rows of its Gram matrix bit-packed."""

    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if len(self.rows) != self.n:
            raise ValueError("row count must equal dimension")
        for i, row in enumerate(self.rows):
            for j in range(i + 1, self.n):
                if (row >> j) & 1 != (self.rows[j] >> i) & 1:
                    raise ValueError("matrix is not symmetric")

    def __call__(self, u, v) -> int:
        return parity(_bits(u) & self.matvec(v))

    def matvec(self, v) -> int:
        """The vector B.v, i.e. the mask m with B(u, v) = parity(u & m)."""
        v = _bits(v)
        m = 0
        while v:
            low = v & -v
            m ^= self.rows[low.bit_length() - 1]
            v ^= low
        return m

    def radical(self) -> "Subspace":
        """Kernel of the form: all v with B(v, .) identically zero."""
        return kernel_of(self.rows, self.n)

    def rank(self) -> int:
        return self.n - self.radical().dim

    def is_alternating(self) -> bool:
        return all((row >> i) & 1 == 0 for i, row in enumerate(self.rows))


@dataclass(frozen=True)
class QuadraticForm:
    """A quadratic form on F2^n, stored as bit-packed upper-triangular rows."""

    n: int
    upper: tuple[int, ...]

    def __post_init__(self):
        if len(self.upper) != self.n:
            raise ValueError("row count must equal dimension")
        for i, row in enumerate(self.upper):
            if row & ((1 << i) - 1):
                raise ValueError(f"row {i} has entries below the diagonal")

    def __call__(self, v) -> int:
        v = _bits(v)
        acc = 0
        vv = v
        while vv:
            low = vv & -vv
            acc ^= (self.upper[low.bit_length() - 1] & v).bit_count()
            vv ^= low
        return acc & 1

    @cached_property
    def bilinear(self) -> BilinearForm:
        return polarize(self)

    def table(self) -> bytearray:
        """q evaluated on all of F2^n (guarded to n <= 20)."""
        if self.n > 20:
            raise ValueError("full table only supported up to dimension 20")
        tab = bytearray(1 << self.n)
        # q(v + e_k) = q(v) + q(e_k) + B(v, e_k): extend by doubling.
        brows = self.bilinear.rows
        for k in range(self.n):
            qk = (self.upper[k] >> k) & 1
            size = 1 << k
            mask = brows[k]
            for v in range(size):
                tab[size + v] = tab[v] ^ qk ^ parity(v & mask)
        return tab

    @classmethod
    def from_upper_entries(cls, n: int, entries: dict[tuple[int, int], int]) -> "QuadraticForm":
        rows = [0] * n
        for (i, j), val in entries.items():
            if i > j:
                i, j = j, i
            if val & 1:
                rows[i] ^= 1 << j
        return cls(n, tuple(rows))

    @classmethod
    def hyperbolic_planes(cls, m: int) -> "QuadraticForm":
        """The plus-type form x0 x1 + x2 x3 + ... on F2^(2m)."""
        return cls.from_upper_entries(2 * m, {(2 * i, 2 * i + 1): 1 for i in range(m)})

    @classmethod
    def zero(cls, n: int) -> "QuadraticForm":
        return cls(n, (0,) * n)

    @classmethod
    def minus_type(cls, m: int) -> "QuadraticForm":
        """m-1 hyperbolic planes plus the anisotropic plane x^2 + xy + y^2."""
        entries = {(2 * i, 2 * i + 1): 1 for i in range(m)}
        k = 2 * (m - 1)
        entries[(k, k)] = 1
        entries[(k + 1, k + 1)] = 1
        return cls.from_upper_entries(2 * m, entries)

    @classmethod
    def direct_sum(cls, *forms: "QuadraticForm") -> "QuadraticForm":
        rows: list[int] = []
        offset = 0
        for f in forms:
            rows.extend(r << offset for r in f.upper)
            offset += f.n
        return cls(offset, tuple(rows))


def polarize(q: QuadraticForm) -> BilinearForm:
    """The bilinear form B(u, v) = q(u+v) + q(u) + q(v) of q."""
    n = q.n
    rows = [0] * n
    for i in range(n):
        rows[i] |= q.upper[i] & ~(1 << i)
        for j in range(i + 1, n):
            if (q.upper[i] >> j) & 1:
                rows[j] |= 1 << i
    return BilinearForm(n, tuple(rows))


# ---------------------------------------------------------------------------
# subspaces


def rref(vectors: Iterable[int], n: int) -> tuple[int, ...]:
    """Reduced row echelon basis of the span, rows ordered by pivot.

    The pivot of a row is its lowest set bit; pivot columns are cleared in
    every other row.  The result is the canonical representation of the
    span, so two spans are equal iff their rref tuples are equal.
    """
    pivots: dict[int, int] = {}  # pivot position -> row
    for v in vectors:
        while v:
            p = (v & -v).bit_length() - 1
            if p in pivots:
                v ^= pivots[p]
            else:
                pivots[p] = v
                break
    # back-substitute so every pivot column is zero in the other rows
    for p in sorted(pivots, reverse=True):
        row = pivots[p]
        for p2 in pivots:
            if p2 != p and (pivots[p2] >> p) & 1:
                pivots[p2] ^= row
    return tuple(pivots[p] for p in sorted(pivots))


@dataclass(frozen=True)
class Subspace:
    """A subspace of F2^n held as a canonical rref basis."""

    ambient_dim: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if rref(self.rows, self.ambient_dim) != self.rows:
            raise ValueError("basis rows are not in canonical rref")
        if any(r >> self.ambient_dim for r in self.rows):
            raise ValueError("basis rows exceed the ambient dimension")

    @classmethod
    def span(cls, vectors: Iterable[int], n: int) -> "Subspace":
        return cls(n, rref(vectors, n))

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __contains__(self, v) -> bool:
        v = _bits(v)
        for r in self.rows:
            if v & (r & -r):
                v ^= r
        return v == 0

    def __len__(self) -> int:
        return 1 << self.dim

    def __iter__(self) -> Iterator[int]:
        """All 2^dim elements, in Gray-code order starting from 0."""
        v = 0
        yield 0
        for i in range(1, 1 << self.dim):
            v ^= self.rows[(i & -i).bit_length() - 1]
            yield v

    def intersection(self, other: "Subspace") -> "Subspace":
        """Zassenhaus: echelonize [a | a] and [b | 0]; rows with zero left
        block carry the intersection in their tracking half."""
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("ambient dimension mismatch")
        n = self.ambient_dim
        mask = (1 << n) - 1
        stacked = [(r << n) | r for r in self.rows] + list(other.rows)
        pivots: dict[int, int] = {}
        for v in stacked:
            while v:
                p = (v & -v).bit_length() - 1
                if p in pivots:
                    v ^= pivots[p]
                else:
                    pivots[p] = v
                    break
        inter = [v >> n for v in pivots.values() if not (v & mask)]
        return Subspace.span(inter, n)

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(r in self for r in other.rows)


def kernel_of(rows: Iterable[int], n: int) -> Subspace:
    """Kernel of the linear map v -> (parity(v & row))_rows."""
    rows = list(rows)
    pairs = [(1 << j, sum(parity((1 << j) & row) << i for i, row in enumerate(rows)))
             for j in range(n)]
    pivots: dict[int, tuple[int, int]] = {}
    kernel = []
    for v, img in pairs:
        while img:
            p = (img & -img).bit_length() - 1
            if p in pivots:
                pv, pimg = pivots[p]
                v ^= pv
                img ^= pimg
            else:
                pivots[p] = (v, img)
                break
        else:
            kernel.append(v)
    return Subspace.span(kernel, n)


def is_totally_singular(s: Subspace, q: QuadraticForm) -> bool:
    """True iff q vanishes on all of s.

    Checked on the basis plus pairwise polarization values, which suffices
    since q(u+v) = q(u) + q(v) + B(u, v).
    """
    if s.ambient_dim != q.n:
        raise ValueError("subspace does not lie in the space of the form")
    rows = s.rows
    if any(q(r) for r in rows):
        return False
    b = q.bilinear
    return not any(
        b(rows[i], rows[j]) for i in range(len(rows)) for j in range(i + 1, len(rows))
    )


# ---------------------------------------------------------------------------
# Witt decomposition and classification


@dataclass(frozen=True)
class WittDecomposition:
    """Hyperbolic pairs plus anisotropic remainder of a quadratic form."""

    radical_dim: int
    sign_type: SignType
    witt_index: int
    hyperbolic_pairs: tuple[tuple[int, int], ...]
    anisotropic: tuple[int, ...]


def singular_vector(q: QuadraticForm, basis: list[int]) -> int | None:
    """A nonzero singular vector in the span of `basis`, or None.

    Requires the polarization to be nondegenerate on the span.  Anisotropic
    quadratic spaces over F2 have dimension at most 2, so for dimension >= 3
    a singular vector always exists and is found constructively.
    """
    for v in basis:
        if q(v) == 0:
            return v
    # every basis vector is nonsingular
    if len(basis) == 1:
        return None
    b = q.bilinear
    v0 = basis[0]
    mate = next((u for u in basis[1:] if b(v0, u)), None)
    if mate is None:
        raise ValueError("polarization is degenerate on the span")
    if len(basis) == 2:
        w = v0 ^ mate
        return w if q(w) == 0 else None
    for u in basis:
        if u in (v0, mate):
            continue
        # project u into the orthogonal complement of the plane <v0, mate>
        w = u
        if b(u, mate):
            w ^= v0
        if b(u, v0):
            w ^= mate
        if w == 0:
            continue
        if q(w) == 0:
            return w
        return v0 ^ w  # q = q(v0) + q(w) + 0 = 1 + 1 = 0
    return None


def witt_decompose(q: QuadraticForm) -> WittDecomposition:
    b = q.bilinear
    ker = b.radical()
    if any(q(r) for r in ker.rows):
        raise ValueError("defective form: q is nonzero on the radical of B")
    pivots = {(r & -r).bit_length() - 1 for r in ker.rows}
    basis = [1 << j for j in range(q.n) if j not in pivots]
    pairs: list[tuple[int, int]] = []
    while basis:
        v = singular_vector(q, basis)
        if v is None:
            break
        u = next(u for u in basis if b(v, u))
        if q(u):
            u ^= v  # make the mate singular: q(u + v) = q(u) + 0 + 1
        pairs.append((v, u))
        # project everything into the orthogonal complement of <v, u>
        projected = []
        for w in basis:
            if b(w, u):
                w ^= v
            if b(w, v):
                w ^= u
            if w:
                projected.append(w)
        basis = list(rref(projected, q.n))
    if len(basis) not in (0, 2):
        raise ValueError("unexpected anisotropic dimension over F2")
    sign: SignType = "plus" if not basis else "minus"
    if basis and not (q(basis[0]) and q(basis[1]) and q(basis[0] ^ basis[1])):
        raise ValueError("anisotropic residue contains a singular vector")
    return WittDecomposition(ker.dim, sign, len(pairs), tuple(pairs), tuple(basis))


def classify(q: QuadraticForm) -> tuple[int, SignType, int]:
    """(radical dimension, plus/minus type, Witt index) of q."""
    d = witt_decompose(q)
    return d.radical_dim, d.sign_type, d.witt_index


def singular_count_formula(m: int, sign: SignType = "plus") -> int:
    """Nonzero singular vectors of a nondegenerate form of dimension 2m."""
    if sign == "plus":
        return (2 ** (m - 1) + 1) * (2**m - 1)
    return (2 ** (m - 1) - 1) * (2**m + 1)


def count_singular(q: QuadraticForm) -> int:
    """Exact count of nonzero singular vectors of a nondegenerate q.

    Evaluates q on all of F2^n with a split-block popcount kernel: for
    v = (hi, lo), q(v) = q(hi) + q(lo) + B(hi, lo), so the count reduces to
    vectorized popcounts over two blocks of dimension ~n/2.
    """
    rad, _, _ = classify(q)
    if rad:
        raise ValueError("degenerate form: quotient out the radical first")
    n = q.n
    lo_dim = n // 2
    hi_dim = n - lo_dim
    q_lo = np.array([q(v) for v in range(1 << lo_dim)], dtype=np.uint8)
    q_hi = np.array([q(v << lo_dim) for v in range(1 << hi_dim)], dtype=np.uint8)
    b = q.bilinear
    lo_mask = (1 << lo_dim) - 1
    masks = np.array(
        [b.matvec(h << lo_dim) & lo_mask for h in range(1 << hi_dim)],
        dtype=np.uint64,
    )
    lo_vals = np.arange(1 << lo_dim, dtype=np.uint64)
    total = 0
    chunk = max(1, (1 << 22) // (1 << lo_dim))  # bound peak memory
    for start in range(0, 1 << hi_dim, chunk):
        sl = slice(start, min(start + chunk, 1 << hi_dim))
        cross = (np.bitwise_count(masks[sl, None] & lo_vals[None, :]) & 1).astype(np.uint8)
        zero = (cross ^ q_hi[sl, None] ^ q_lo[None, :]) == 0
        total += int(zero.sum())
    return total - 1  # drop the zero vector


# ---------------------------------------------------------------------------
# maximal totally singular subspaces


def _functional_mask(mask: int, n: int) -> int:
    """Characteristic bitset over F2^n of {v : parity(v & mask) == 0}."""
    out = 1  # v = 0 qualifies
    for k in range(n):
        width = 1 << (1 << k)
        block = out & (width - 1)
        if (mask >> k) & 1:
            out = block | ((block ^ (width - 1)) << (1 << k))
        else:
            out = block | (block << (1 << k))
    return out


def enumerate_mts(q: QuadraticForm) -> Iterator[Subspace]:
    """All maximal totally singular subspaces of a plus-type form, once each.

    Depth-first search over canonical rref matrices: rows are added in
    increasing pivot order, each new row singular, orthogonal to the earlier
    rows, zero at their pivot columns, and with its own pivot column zero in
    them.  Each maximal totally singular subspace is then reached exactly
    once, through its unique rref chain.  Candidate sets are characteristic
    bitsets over F2^n, so constraints are single big-int ANDs.
    """
    rad, sign, m = classify(q)
    if rad or sign != "plus":
        raise ValueError(
            "maximal totally singular enumeration needs a nondegenerate plus-type form"
        )
    n = q.n
    qtab = q.table()
    singular_mask = 0
    for v in range(1, 1 << n):
        if not qtab[v]:
            singular_mask |= 1 << v
    b = q.bilinear
    perp_cache: dict[int, int] = {}

    def perp_mask(v: int) -> int:
        """Bitset of {w : B(w, v) = 0}, memoized on the functional B.v."""
        m = b.matvec(v)
        got = perp_cache.get(m)
        if got is None:
            got = perp_cache[m] = _functional_mask(m, n)
        return got

    colzero = [_functional_mask(1 << c, n) for c in range(n)]
    # low_gt[p]: vectors whose lowest set bit is strictly above coordinate p
    low_gt = []
    acc = -1
    for p in range(n):
        acc &= colzero[p]
        low_gt.append(acc & ~1)  # drop the zero vector

    def walk(rows: tuple[int, ...], rows_or: int, cand: int) -> Iterator[Subspace]:
        if len(rows) == m:
            yield Subspace(n, rows)
            return
        rest = cand
        while rest:
            low = rest & -rest
            rest ^= low
            v = low.bit_length() - 1
            pivot = (v & -v).bit_length() - 1
            if (rows_or >> pivot) & 1:
                continue  # an earlier row is nonzero at this pivot column
            child = cand & perp_mask(v) & low_gt[pivot]
            yield from walk(rows + (v,), rows_or | v, child)

    yield from walk((), 0, singular_mask)


def mts_count_formula(m: int) -> int:
    """prod_{i=0}^{m-1} (2^i + 1): maximal totally singular count, plus type."""
    out = 1
    for i in range(m):
        out *= 2**i + 1
    return out


def complementary_mts_pair(q: QuadraticForm) -> tuple[Subspace, Subspace]:
    """Two maximal totally singular subspaces with zero intersection.

    Built from the hyperbolic pairs of a Witt decomposition: the first
    members of all pairs span one subspace, the second members the other.
    """
    d = witt_decompose(q)
    if d.radical_dim or d.sign_type != "plus" or 2 * d.witt_index != q.n:
        raise ValueError("complementary pair needs a nondegenerate plus-type form")
    first = Subspace.span([v for v, _ in d.hyperbolic_pairs], q.n)
    second = Subspace.span([u for _, u in d.hyperbolic_pairs], q.n)
    return first, second


# ---------------------------------------------------------------------------
# isometries as point maps


def transvection(q: QuadraticForm, u: int) -> list[int]:
    """The orthogonal transvection v -> v + B(v, u) u, as a point map on F2^n.

    Preserves q exactly when q(u) = 1.
    """
    if q(u) != 1:
        raise ValueError("transvections require a nonsingular direction")
    mask = q.bilinear.matvec(u)
    return [v ^ (u if parity(v & mask) else 0) for v in range(1 << q.n)]
