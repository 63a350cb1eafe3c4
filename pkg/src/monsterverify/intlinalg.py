"""Exact integer matrix utilities: determinants, HNF, SNF, rational inverses.

Everything here works on lists of lists of Python ints (or Fractions where
stated), so results are exact at any size.  numpy never enters: these are
the primitives that certify lattice determinants, indices and quotients.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

__all__ = [
    "det_bareiss",
    "hnf",
    "snf_divisors",
    "rational_inverse",
    "solve_left_integer",
]


def det_bareiss(mat: list[list[int]]) -> int:
    """Fraction-free Gaussian elimination determinant."""
    n = len(mat)
    if any(len(row) != n for row in mat):
        raise ValueError("determinant needs a square matrix")
    a = [list(row) for row in mat]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        qq = old_r // r
        old_r, r = r, old_r - qq * r
        old_s, s = s, old_s - qq * s
        old_t, t = t, old_t - qq * t
    return old_r, old_s, old_t


def hnf(rows: list[list[int]]) -> list[list[int]]:
    """Row-style Hermite normal form basis of the integer row span.

    Returns echelon rows with positive pivots and entries above each pivot
    reduced into [0, pivot); zero rows are dropped, so the result is a
    canonical basis of the lattice generated by ``rows``.
    """
    mat = [list(r) for r in rows]
    if not mat:
        return []
    ncols = len(mat[0])
    rank = 0
    for c in range(ncols):
        piv = None
        for i in range(rank, len(mat)):
            if mat[i][c]:
                if piv is None:
                    piv = i
                else:
                    a, b = mat[piv][c], mat[i][c]
                    g, x, y = _ext_gcd(a, b)
                    rp, ri = mat[piv], mat[i]
                    mat[piv] = [x * p + y * q for p, q in zip(rp, ri)]
                    mat[i] = [(a // g) * q - (b // g) * p for p, q in zip(rp, ri)]
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        if mat[rank][c] < 0:
            mat[rank] = [-x for x in mat[rank]]
        for i in range(rank):
            f = mat[i][c] // mat[rank][c]
            if f:
                mat[i] = [p - f * q for p, q in zip(mat[i], mat[rank])]
        rank += 1
    return mat[:rank]


def snf_divisors(mat: list[list[int]]) -> list[int]:
    """Elementary divisors d1 | d2 | ... of an integer matrix (zeros dropped)."""
    a = [list(r) for r in mat]
    m = len(a)
    n = len(a[0]) if a else 0
    divisors: list[int] = []
    t = 0
    while t < min(m, n):
        # locate smallest nonzero entry in the trailing block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i0, j0 = best
        a[t], a[i0] = a[i0], a[t]
        for row in a:
            row[t], row[j0] = row[j0], row[t]
        # clear row and column t by division steps, restarting on remainders
        while True:
            dirty = False
            for i in range(t + 1, m):
                if a[i][t]:
                    f = a[i][t] // a[t][t]
                    a[i] = [p - f * q for p, q in zip(a[i], a[t])]
                    if a[i][t]:
                        a[t], a[i] = a[i], a[t]
                        dirty = True
            for j in range(t + 1, n):
                if a[t][j]:
                    f = a[t][j] // a[t][t]
                    for row in a:
                        row[j] -= f * row[t]
                    if a[t][j]:
                        for row in a:
                            row[t], row[j] = row[j], row[t]
                        dirty = True
            if not dirty:
                break
        # enforce divisibility of the trailing block by the pivot
        pivot = abs(a[t][t])
        offender = next(
            (
                (i, j)
                for i in range(t + 1, m)
                for j in range(t + 1, n)
                if a[i][j] % pivot
            ),
            None,
        )
        if offender is not None:
            i, _ = offender
            a[t] = [p + q for p, q in zip(a[t], a[i])]
            continue
        divisors.append(pivot)
        t += 1
    return divisors


def rational_inverse(mat: list[list]) -> list[list[Fraction]]:
    """Exact inverse over Q by Gauss-Jordan with Fractions."""
    n = len(mat)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(mat)]
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c]), None)
        if piv is None:
            raise ValueError("matrix is singular")
        a[c], a[piv] = a[piv], a[c]
        inv_p = 1 / a[c][c]
        a[c] = [x * inv_p for x in a[c]]
        for i in range(n):
            if i != c and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return [row[n:] for row in a]


def solve_left_integer(target: list[list[int]], basis: list[list[int]]) -> list[list[int]]:
    """Integer X with X . basis = target, or a ValueError if none exists.

    Used for sublattice membership: rows of ``target`` expressed in the
    basis of the ambient lattice.
    """
    inv = rational_inverse(basis)
    out: list[list[int]] = []
    for row in target:
        coeffs = []
        for j in range(len(basis)):
            val = sum(Fraction(row[k]) * inv[k][j] for k in range(len(row)))
            if val.denominator != 1:
                raise ValueError("target rows are not in the integer row span")
            coeffs.append(int(val))
        out.append(coeffs)
    return out
