"""The alternating module of triples and the indeterminacy vectors ``v_{s,r}``."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Callable, Sequence


@lru_cache(maxsize=None)
def triples(n: int) -> tuple[tuple[int, int, int], ...]:
    """Strictly increasing triples over ``1..n`` in lexicographic order."""
    return tuple(combinations(range(1, n + 1), 3))


@lru_cache(maxsize=None)
def _triple_index(n: int) -> dict[tuple[int, int, int], int]:
    return {t: pos for pos, t in enumerate(triples(n))}


def sort_with_sign(i: int, j: int, k: int) -> tuple[int, tuple[int, int, int]]:
    """Sign of the permutation sorting ``(i, j, k)`` and the sorted triple.

    Returns sign 0 when an index repeats.
    """
    if i == j or j == k or i == k:
        return 0, tuple(sorted((i, j, k)))
    seq = [i, j, k]
    sign = 1
    for a in range(3):
        for b in range(2 - a):
            if seq[b] > seq[b + 1]:
                seq[b], seq[b + 1] = seq[b + 1], seq[b]
                sign = -sign
    return sign, (seq[0], seq[1], seq[2])


@dataclass(frozen=True)
class WedgeVector:
    """Element of the third exterior power of ``Z^n`` in the basis ``X^[ijk]``, ``i<j<k``."""

    n: int
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        if len(self.coeffs) != len(triples(self.n)):
            raise ValueError(
                f"expected {len(triples(self.n))} coefficients for n={self.n}, got {len(self.coeffs)}")

    @classmethod
    def zero(cls, n: int) -> WedgeVector:
        return cls(n, (0,) * len(triples(n)))

    @classmethod
    def from_function(cls, n: int, f: Callable[[int, int, int], int]) -> WedgeVector:
        return cls(n, tuple(f(i, j, k) for i, j, k in triples(n)))

    @classmethod
    def from_dict(cls, n: int, table: dict) -> WedgeVector:
        """Build from ``{(i, j, k): value}``; unsorted keys contribute with the permutation sign."""
        out = [0] * len(triples(n))
        idx = _triple_index(n)
        for (i, j, k), value in table.items():
            sign, key = sort_with_sign(i, j, k)
            if sign:
                out[idx[key]] += sign * value
        return cls(n, tuple(out))

    @classmethod
    def basis(cls, n: int, i: int, j: int, k: int) -> WedgeVector:
        return cls.from_dict(n, {(i, j, k): 1})

    def coefficient(self, i: int, j: int, k: int) -> int:
        for x in (i, j, k):
            if not 1 <= x <= self.n:
                raise IndexError(f"index {x} out of range 1..{self.n}")
        sign, key = sort_with_sign(i, j, k)
        if sign == 0:
            return 0
        return sign * self.coeffs[_triple_index(self.n)[key]]

    def items(self):
        return zip(triples(self.n), self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def _check(self, other: WedgeVector) -> None:
        if not isinstance(other, WedgeVector) or other.n != self.n:
            raise ValueError("wedge vectors over different n")

    def __add__(self, other: WedgeVector) -> WedgeVector:
        self._check(other)
        return WedgeVector(self.n, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: WedgeVector) -> WedgeVector:
        self._check(other)
        return WedgeVector(self.n, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> WedgeVector:
        return WedgeVector(self.n, tuple(-a for a in self.coeffs))

    def __mul__(self, scalar: int) -> WedgeVector:
        return WedgeVector(self.n, tuple(scalar * a for a in self.coeffs))

    __rmul__ = __mul__

    def __str__(self) -> str:
        out = ""
        for (i, j, k), c in self.items():
            if not c:
                continue
            term = f"{abs(c)}*X[{i},{j},{k}]"
            if not out:
                out = term if c > 0 else f"-{term}"
            else:
                out += f" + {term}" if c > 0 else f" - {term}"
        return out or "0"


def wedge_coefficient(v: WedgeVector, i: int, j: int, k: int) -> int:
    return v.coefficient(i, j, k)


def indeterminacy_vector(lk: Sequence[Sequence[int]], s: int, r: int) -> WedgeVector:
    """``v_{s,r} = sum_i lk(i, r) X^[i s r]`` for a 1-based linking matrix given 0-indexed."""
    n = len(lk)
    if s == r:
        raise ValueError("indeterminacy vector needs s != r")
    if not (1 <= s <= n and 1 <= r <= n):
        raise IndexError("component index out of range")
    table = {}
    for i in range(1, n + 1):
        if i in (s, r):
            continue
        table[(i, s, r)] = lk[i - 1][r - 1]
    return WedgeVector.from_dict(n, table)


def indeterminacy_pairs(n: int) -> list[tuple[int, int]]:
    """All ``(s, r)`` with ``s != r`` in lexicographic order; the column order of the relation matrix."""
    return [(s, r) for s in range(1, n + 1) for r in range(1, n + 1) if s != r]
