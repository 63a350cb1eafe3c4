"""Binary linear codes: the extended Hamming [8,4,4] and Golay [24,12,8].

Codewords are bit-packed ints (bit i = coordinate i).  Generator matrices
are hardcoded in their standard published forms but never trusted: the
parameters, weight distributions and self-duality are recomputed when a
code is built, and construction fails loudly on any mismatch.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property

from .gf2 import kernel_of, rref

__all__ = ["BinaryCode", "extended_hamming_code", "golay_code"]


@dataclass(frozen=True)
class BinaryCode:
    n: int
    generators: tuple[int, ...]

    @cached_property
    def basis(self) -> tuple[int, ...]:
        return rref(self.generators, self.n)

    @property
    def k(self) -> int:
        return len(self.basis)

    @cached_property
    def codewords(self) -> tuple[int, ...]:
        words = [0]
        for row in self.basis:
            words += [w ^ row for w in words]
        return tuple(words)

    def __contains__(self, word: int) -> bool:
        for r in self.basis:
            if word & (r & -r):
                word ^= r
        return word == 0

    @cached_property
    def weight_distribution(self) -> dict[int, int]:
        return dict(Counter(w.bit_count() for w in self.codewords))

    @property
    def min_distance(self) -> int:
        return min(w for w in self.weight_distribution if w > 0)

    def dual_basis(self) -> tuple[int, ...]:
        return kernel_of(self.basis, self.n).rows

    def is_self_dual(self) -> bool:
        return rref(self.dual_basis(), self.n) == self.basis


def _checked(code: BinaryCode, k: int, d: int, distribution: dict[int, int]) -> BinaryCode:
    if code.k != k:
        raise AssertionError(f"expected dimension {k}, generator matrix has rank {code.k}")
    if code.min_distance != d:
        raise AssertionError(f"expected minimum distance {d}, got {code.min_distance}")
    if code.weight_distribution != distribution:
        raise AssertionError(f"unexpected weight distribution {code.weight_distribution}")
    if not code.is_self_dual():
        raise AssertionError("code is not self-dual")
    return code


def extended_hamming_code() -> BinaryCode:
    """The [8,4,4] extended Hamming code (first-order Reed-Muller RM(1,3))."""
    gens = (0b11111111, 0b10101010, 0b11001100, 0b11110000)
    return _checked(BinaryCode(8, gens), 4, 4, {0: 1, 4: 14, 8: 1})


# The standard 12x12 complement-of-icosahedron block B of the [I | B]
# generator matrix for the extended binary Golay code.
_GOLAY_B = (
    (1, 1, 0, 1, 1, 1, 0, 0, 0, 1, 0, 1),
    (1, 0, 1, 1, 1, 0, 0, 0, 1, 0, 1, 1),
    (0, 1, 1, 1, 0, 0, 0, 1, 0, 1, 1, 1),
    (1, 1, 1, 0, 0, 0, 1, 0, 1, 1, 0, 1),
    (1, 1, 0, 0, 0, 1, 0, 1, 1, 0, 1, 1),
    (1, 0, 0, 0, 1, 0, 1, 1, 0, 1, 1, 1),
    (0, 0, 0, 1, 0, 1, 1, 0, 1, 1, 1, 1),
    (0, 0, 1, 0, 1, 1, 0, 1, 1, 1, 0, 1),
    (0, 1, 0, 1, 1, 0, 1, 1, 1, 0, 0, 1),
    (1, 0, 1, 1, 0, 1, 1, 1, 0, 0, 0, 1),
    (0, 1, 1, 0, 1, 1, 1, 0, 0, 0, 1, 1),
    (1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 0),
)

_GOLAY_DISTRIBUTION = {0: 1, 8: 759, 12: 2576, 16: 759, 24: 1}


def golay_code() -> BinaryCode:
    """The [24,12,8] extended binary Golay code, parameters verified."""
    gens = []
    for i, brow in enumerate(_GOLAY_B):
        word = 1 << i
        for j, bit in enumerate(brow):
            if bit:
                word |= 1 << (12 + j)
        gens.append(word)
    return _checked(BinaryCode(24, tuple(gens)), 12, 8, _GOLAY_DISTRIBUTION)
