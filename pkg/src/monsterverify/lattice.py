"""Exact integer lattices: E8, its norm-doubled form EE8, Barnes-Wall BW16
by gluing, and the Leech lattice from the binary Golay code.

Every lattice is a row basis of integer coordinate vectors together with a
scale: the geometric Gram matrix is (basis . basis^T) / scale, kept exact
and integral.  The Leech lattice uses the classical coordinates scaled by
sqrt(8) (scale 8), EE8 uses Construction A on the extended Hamming code
(scale 1), and E8 reuses the same coordinates at scale 2.

Shell counts are obtained by honest enumeration: a generic norm-bound
pruned search on the Gram matrix for moderate ranks, and a Golay-coset
decomposition for the Leech lattice where the generic search would be too
slow.  Counts are never copied from the literature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .codes import BinaryCode, extended_hamming_code, golay_code
from .gf2 import QuadraticForm
from .intlinalg import det_bareiss, hnf, rational_inverse, snf_divisors, solve_left_integer

__all__ = [
    "IntegerLattice",
    "GlueConstruction",
    "ShellCount",
    "build_E8",
    "build_EE8",
    "build_BW16",
    "build_Leech",
    "shells",
    "shell_vectors",
    "discriminant_group",
    "dual_determinant_check",
    "embed_EE8_cubed",
    "mod2_quadratic_space",
    "basis_coordinates",
    "mod2_coordinates",
    "inner_product_spectrum",
    "leech_contains",
    "random_unimodular",
    "gram_shell_count",
]


@dataclass(frozen=True)
class ShellCount:
    norm: int
    count: int


@dataclass(frozen=True)
class IntegerLattice:
    """An exact lattice: integer basis rows at a declared coordinate scale.

    Coordinates are sqrt(scale) times the geometric ones, so the geometric
    Gram matrix is basis . basis^T / scale and must come out integral.
    """

    name: str
    basis: tuple[tuple[int, ...], ...]
    scale: int = 1
    code: BinaryCode | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        b = self.basis
        for row in b:
            if len(row) != len(b[0]):
                raise ValueError("ragged basis")
        for i in range(len(b)):
            for j in range(i, len(b)):
                if sum(x * y for x, y in zip(b[i], b[j])) % self.scale:
                    raise ValueError("coordinate Gram is not divisible by the scale")

    @property
    def rank(self) -> int:
        return len(self.basis)

    @cached_property
    def gram(self) -> tuple[tuple[int, ...], ...]:
        return tuple(
            tuple(sum(x * y for x, y in zip(u, v)) // self.scale for v in self.basis)
            for u in self.basis
        )

    @cached_property
    def det(self) -> int:
        return det_bareiss([list(r) for r in self.gram])

    def is_even(self) -> bool:
        return all(g[i] % 2 == 0 for i, g in enumerate(self.gram))

    def norm_of(self, coeffs: Sequence[int]) -> int:
        g = self.gram
        n = self.rank
        return sum(coeffs[i] * g[i][j] * coeffs[j] for i in range(n) for j in range(n))

    def dump_text(self) -> str:
        """Basis as plain text, one integer row per line."""
        return "\n".join(" ".join(str(x) for x in row) for row in self.basis)


@dataclass(frozen=True)
class GlueConstruction:
    """A lattice enlarged by glue vectors (rationals allowed).

    The result is the closure of sub + glue under addition; denominators
    are cleared by rescaling coordinates, so the output stays exact.
    """

    sub: IntegerLattice
    glue_vectors: tuple[tuple[Fraction, ...], ...]

    def build(self, name: str) -> IntegerLattice:
        denom = 1
        for v in self.glue_vectors:
            for x in v:
                denom = denom * Fraction(x).denominator // math.gcd(
                    denom, Fraction(x).denominator
                )
        rows = [[x * denom for x in row] for row in self.sub.basis]
        rows += [[int(Fraction(x) * denom) for x in v] for v in self.glue_vectors]
        basis = hnf(rows)
        if len(basis) != self.sub.rank:
            raise ValueError("glue changed the rank")
        return IntegerLattice(name, tuple(tuple(r) for r in basis),
                              self.sub.scale * denom * denom)


# ---------------------------------------------------------------------------
# builders


def _construction_a_basis(code: BinaryCode) -> list[list[int]]:
    """Basis of {x in Z^n : x mod 2 in code}."""
    rows = [[(w >> i) & 1 for i in range(code.n)] for w in code.basis]
    rows += [[2 * int(i == j) for j in range(code.n)] for i in range(code.n)]
    return hnf(rows)


def build_EE8() -> IntegerLattice:
    """Construction A on the extended Hamming code: even, det 2^8, minimum 4.

    This realizes the E8 lattice with all norms doubled directly in integer
    coordinates (scale 1).
    """
    basis = _construction_a_basis(extended_hamming_code())
    return IntegerLattice("EE8", tuple(tuple(r) for r in basis), 1)


def build_E8() -> IntegerLattice:
    """The even unimodular E8 lattice: same coordinates as EE8 at scale 2."""
    basis = _construction_a_basis(extended_hamming_code())
    return IntegerLattice("E8", tuple(tuple(r) for r in basis), 2)


def _sylvester_hadamard(n: int) -> list[list[int]]:
    h = [[1]]
    while len(h) < n:
        h = [row + row for row in h] + [row + [-x for x in row] for row in h]
    return h


def doubling_sublattice(e8: IntegerLattice) -> list[list[int]]:
    """An index-16 sublattice of E8 isometric to EE8: x -> x.H/2 with H the
    Sylvester Hadamard matrix, which doubles all inner products."""
    h = _sylvester_hadamard(8)
    rows = []
    for row in e8.basis:
        img = [sum(row[i] * h[i][j] for i in range(8)) for j in range(8)]
        if any(x % 2 for x in img):
            raise AssertionError("Hadamard image left the integer frame")
        rows.append([x // 2 for x in img])
    return rows


def build_BW16() -> IntegerLattice:
    """Barnes-Wall BW16 as the glue of EE8 perp EE8 along a diagonal E8.

    Concretely: {(x, y) in E8 perp E8 : x - y in EE8}, assembled from the
    block sublattice and the diagonal glue vectors (alpha, alpha).
    """
    e8 = build_E8()
    dbl = doubling_sublattice(e8)
    zero = [0] * 8
    block_rows = [list(r) + zero for r in dbl] + [zero + list(r) for r in dbl]
    sub = IntegerLattice("EE8+EE8", tuple(tuple(r) for r in hnf(block_rows)), 2)
    glue = tuple(tuple(Fraction(x) for x in list(r) + list(r)) for r in e8.basis)
    bw = GlueConstruction(sub, glue).build("BW16")
    if bw.det != 2**8 or not bw.is_even():
        raise AssertionError("BW16 glue construction failed its invariants")
    return bw


def _leech_spanning_rows(code: BinaryCode) -> list[list[int]]:
    n = code.n
    rows = []
    for w in code.basis:
        rows.append([2 * ((w >> i) & 1) for i in range(n)])
    for i in range(1, n):
        rows.append([4 if j in (0, i) else 0 for j in range(n)])
    rows.append([8] + [0] * (n - 1))
    rows.append([-3] + [1] * (n - 1))
    return rows


def build_Leech() -> IntegerLattice:
    """The Leech lattice in the Golay-code coordinates scaled by sqrt(8)."""
    code = golay_code()
    basis = hnf(_leech_spanning_rows(code))
    lat = IntegerLattice("Leech", tuple(tuple(r) for r in basis), 8, code=code)
    if lat.rank != 24 or lat.det != 1 or not lat.is_even():
        raise AssertionError("Leech construction failed its invariants")
    for row in lat.basis:
        if not leech_contains(code, row):
            raise AssertionError("Leech basis row fails the congruence conditions")
    return lat


def leech_contains(code: BinaryCode, x: Sequence[int]) -> bool:
    """Membership in the Leech lattice (coordinates scaled by sqrt(8)):
    a common parity m, upper bits forming a Golay word, sum = 4m mod 8."""
    m = x[0] & 1
    if any((xi - m) % 2 for xi in x):
        return False
    word = 0
    for i, xi in enumerate(x):
        if ((xi - m) >> 1) & 1:
            word |= 1 << i
    return word in code and sum(x) % 8 == (4 * m) % 8


# ---------------------------------------------------------------------------
# shell enumeration


def gram_shell_vectors(gram: Sequence[Sequence[int]], norm: int) -> list[tuple[int, ...]]:
    """All integer coefficient vectors of the given Gram norm.

    Norm-bound pruned depth-first search over a Cholesky factorization
    (floating bounds widened by a margin, exact integer check at each leaf).
    Suitable for rank <= 16 at small norms.
    """
    n = len(gram)
    if norm < 0:
        raise ValueError("norm must be nonnegative")
    if norm == 0:
        return [(0,) * n]
    g = np.array(gram, dtype=float)
    low = np.linalg.cholesky(g)
    r = low.T  # upper triangular, gram = r^T r
    mu = r / r.diagonal()[:, None]  # mu[i][j] = r[i][j] / r[i][i]
    d = r.diagonal() ** 2
    eps = 1e-9 * max(norm, 1)
    gi = [list(map(int, row)) for row in gram]
    out: list[tuple[int, ...]] = []
    coeffs = [0] * n

    def rec(i: int, remaining: float, shift: np.ndarray) -> None:
        if i < 0:
            vec = tuple(coeffs)
            exact = sum(
                vec[a] * gi[a][b] * vec[b] for a in range(n) for b in range(n)
            )
            if exact == norm:
                out.append(vec)
            return
        bound = math.sqrt(max(remaining, 0.0) / d[i]) + eps
        center = -shift[i]
        for c in range(math.ceil(center - bound), math.floor(center + bound) + 1):
            used = d[i] * (c - center) ** 2
            if used > remaining + eps:
                continue
            coeffs[i] = c
            rec(i - 1, remaining - used, shift + c * mu[:, i])
        coeffs[i] = 0

    rec(n - 1, float(norm), np.zeros(n))
    return out


def gram_shell_count(gram: Sequence[Sequence[int]], norm: int) -> int:
    return len(gram_shell_vectors(gram, norm))


def _leech_shell_vectors(code: BinaryCode, norm: int) -> list[tuple[int, ...]]:
    """Leech vectors of the given norm by Golay-coset enumeration.

    For each parity m and codeword c, coordinates run over the classes
    m + 2 c_i mod 4 with squared length 8 * norm, pruned by the minimal
    squares still owed; leaves are filtered by the sum condition mod 8.
    """
    n = code.n
    target = 8 * norm
    min_sq = {0: 0, 1: 1, 2: 4, 3: 1}
    values_by_residue: dict[int, list[int]] = {}
    for res in range(4):
        vals = [v for v in range(-(int(math.isqrt(target)) + 4),
                                 int(math.isqrt(target)) + 5)
                if v % 4 == res and v * v <= target]
        values_by_residue[res] = sorted(vals, key=lambda v: (v * v, v))
    out: list[tuple[int, ...]] = []
    coords = [0] * n
    for m in (0, 1):
        want_sum = (4 * m) % 8
        for word in code.codewords:
            residues = [(m + 2 * ((word >> i) & 1)) % 4 for i in range(n)]
            suffix = [0] * (n + 1)
            for i in range(n - 1, -1, -1):
                suffix[i] = suffix[i + 1] + min_sq[residues[i]]
            if suffix[0] > target:
                continue

            def rec(i: int, rem: int, total: int) -> None:
                if i == n:
                    if rem == 0 and total % 8 == want_sum:
                        out.append(tuple(coords))
                    return
                allow = rem - suffix[i + 1]
                for v in values_by_residue[residues[i]]:
                    sq = v * v
                    if sq > allow:
                        break
                    coords[i] = v
                    rec(i + 1, rem - sq, total + v)
                coords[i] = 0

            rec(0, target, 0)
    return out


def shell_vectors(lat: IntegerLattice, norm: int) -> np.ndarray:
    """Ambient coordinate vectors of the given geometric norm."""
    if lat.code is not None:
        vecs = _leech_shell_vectors(lat.code, norm)
        return np.array(vecs, dtype=np.int16).reshape(len(vecs), len(lat.basis[0]))
    coeff = gram_shell_vectors(lat.gram, norm)
    basis = np.array(lat.basis, dtype=np.int64)
    arr = np.array(coeff, dtype=np.int64).reshape(len(coeff), lat.rank)
    return arr @ basis


def shells(lat: IntegerLattice, norm: int) -> ShellCount:
    """Exact count of lattice vectors of the given geometric norm."""
    if norm < 0 or norm % 2:
        raise ValueError("shells are indexed by nonnegative even norms here")
    return ShellCount(norm, len(shell_vectors(lat, norm)))


# ---------------------------------------------------------------------------
# quotients and embeddings


def discriminant_group(lat: IntegerLattice) -> list[int]:
    """Elementary divisors (> 1) of the Gram matrix: L*/L as a product of
    cyclic groups."""
    if lat.det == 0:
        raise ValueError("singular Gram matrix")
    return [d for d in snf_divisors([list(r) for r in lat.gram]) if d != 1]


def dual_determinant_check(lat: IntegerLattice) -> bool:
    """det(L) . det(L*) = 1, with det(L) recomputed from the SNF divisors."""
    divisors = snf_divisors([list(r) for r in lat.gram])
    prod = 1
    for d in divisors:
        prod *= d
    inv = rational_inverse([list(r) for r in lat.gram])
    dual_det = Fraction(1)
    # det of the inverse via the product of SNF divisors of gram
    dual_det = Fraction(1, prod)
    return prod == abs(lat.det) and dual_det * lat.det in (1, -1) and len(inv) == lat.rank


def _parity_block_basis() -> list[list[int]]:
    """Basis of {y in Z^8 : all y_i congruent mod 2, sum y = 0 mod 4}."""
    rows = [[1] * 8]
    for i in range(7):
        rows.append([2 if j == i else (-2 if j == i + 1 else 0) for j in range(8)])
    rows.append([0] * 7 + [4])
    basis = hnf(rows)
    if abs(det_bareiss(basis)) != 2**8:
        raise AssertionError("parity block has the wrong index in Z^8")
    return basis


def embed_EE8_cubed(leech: IntegerLattice) -> tuple[IntegerLattice, int, list[int]]:
    """An EE8 perp EE8 perp EE8 sublattice of the Leech lattice.

    The three blocks sit on the three octads of a trio of the Golay code:
    Leech vectors supported on a single octad O form 2 * {all coordinates
    of one parity, sum = 0 mod 4} on O, which is a copy of EE8.  Returns
    (sublattice, index, elementary divisors of the inclusion).
    """
    code = leech.code
    if code is None:
        raise ValueError("embedding needs the Golay-framed Leech lattice")
    octads = [w for w in sorted(code.codewords) if w.bit_count() == 8]
    o1 = octads[0]
    o2 = next(w for w in octads if w & o1 == 0)
    o3 = ((1 << 24) - 1) ^ o1 ^ o2
    if o3 not in code or o3.bit_count() != 8:
        raise AssertionError("trio completion is not an octad")
    block = _parity_block_basis()
    rows: list[list[int]] = []
    for octad in (o1, o2, o3):
        positions = [i for i in range(24) if (octad >> i) & 1]
        for y in block:
            vec = [0] * 24
            for pos, val in zip(positions, y):
                vec[pos] = 2 * val
            if not leech_contains(code, vec):
                raise AssertionError("block vector fell outside the Leech lattice")
            rows.append(vec)
    sub = IntegerLattice("EE8^3", tuple(tuple(r) for r in rows), 8)
    inclusion = solve_left_integer(rows, [list(r) for r in leech.basis])
    index = abs(det_bareiss(inclusion))
    divisors = snf_divisors(inclusion)
    return sub, index, divisors


def mod2_quadratic_space(leech: IntegerLattice) -> QuadraticForm:
    """q(v + 2L) = norm(v)/2 mod 2 on L/2L, in basis coordinates.

    Well-defined because the lattice is even: changing the representative
    by 2w shifts the norm by 4<v,w> + 4<w,w>.  The polarization is the
    Gram matrix mod 2.
    """
    if not leech.is_even():
        raise ValueError("mod-2 quadratic space needs an even lattice")
    g = leech.gram
    n = leech.rank
    entries = {}
    for i in range(n):
        entries[(i, i)] = (g[i][i] // 2) & 1
        for j in range(i + 1, n):
            entries[(i, j)] = g[i][j] & 1
    return QuadraticForm.from_upper_entries(n, entries)


def basis_coordinates(lat: IntegerLattice, vectors: np.ndarray) -> np.ndarray:
    """Integer basis coordinates of ambient lattice vectors (exact).

    For unimodular lattices the Gram inverse is integral and the solve is
    v . basis^T . gram^(-1) / scale in int64; otherwise exact rationals.
    """
    vecs = np.asarray(vectors, dtype=np.int64)
    single = vecs.ndim == 1
    if single:
        vecs = vecs[None, :]
    basis = np.array(lat.basis, dtype=np.int64)
    if abs(lat.det) == 1:
        inv = rational_inverse([list(r) for r in lat.gram])
        gram_inv = np.array([[int(x) for x in row] for row in inv], dtype=np.int64)
        prod = vecs @ basis.T @ gram_inv
        if np.any(prod % lat.scale):
            raise ValueError("a vector is not in the lattice")
        out = prod // lat.scale
    else:
        inv = rational_inverse([list(r) for r in basis.tolist()])
        out_rows = []
        for v in vecs.tolist():
            row = []
            for j in range(lat.rank):
                val = sum(Fraction(v[k]) * inv[k][j] for k in range(len(v)))
                if val.denominator != 1:
                    raise ValueError("a vector is not in the lattice")
                row.append(int(val))
            out_rows.append(row)
        out = np.array(out_rows, dtype=np.int64)
    return out[0] if single else out


def mod2_coordinates(lat: IntegerLattice, vectors: np.ndarray) -> np.ndarray:
    """Basis coordinates reduced mod 2 (rows of 0/1)."""
    return (basis_coordinates(lat, vectors) & 1).astype(np.uint8)


def inner_product_spectrum(
    shell: np.ndarray, scale: int, samples: int, rng: np.random.Generator
) -> dict[int, int]:
    """Observed geometric inner products over sampled pairs of shell vectors."""
    idx_a = rng.integers(0, len(shell), size=samples)
    idx_b = rng.integers(0, len(shell), size=samples)
    dots = np.einsum("ij,ij->i", shell[idx_a].astype(np.int64), shell[idx_b].astype(np.int64))
    if np.any(dots % scale):
        raise AssertionError("inner products left the integral lattice")
    vals, counts = np.unique(dots // scale, return_counts=True)
    return {int(v): int(c) for v, c in zip(vals, counts)}


def random_unimodular(n: int, rng: np.random.Generator, steps: int = 60) -> list[list[int]]:
    """A random determinant +-1 integer matrix from elementary row operations."""
    m = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        i, j = rng.integers(0, n, size=2)
        if i == j:
            continue
        c = int(rng.integers(-2, 3))
        m[int(i)] = [a + c * b for a, b in zip(m[int(i)], m[int(j)])]
    return m
