"""The total Milnor quotient and the total Milnor invariant.

``M = W / span{v_{s,r}}`` depends only on the linking matrix.  A class in
``M`` is stored as its canonical representative: the vector reduced against
the column Hermite form of the relation matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb, gcd
from typing import Optional, Sequence

from .lattice import (HermiteBasis, IntMatrix, SmithDecomposition, cokernel_structure,
                      format_structure, hnf, lattice_solve, reduce_mod_lattice, snf)
from .system import (SurfaceSystemData, ensure_valid, linking_matrix, m_vector, t_vector)
from .wedge import WedgeVector, indeterminacy_pairs, indeterminacy_vector, wedge_coefficient
from .words import LinearWord

__all__ = [
    "IncomparableError", "MilnorClass", "TotalMilnorQuotient", "classical_mu",
    "indeterminacy_vector", "invariants_equal", "quotient_for", "quotient_structure",
    "realize_family", "total_invariant", "wedge_coefficient",
]

LinkingMatrix = tuple[tuple[int, ...], ...]


class IncomparableError(ValueError):
    """The two invariants live in quotients built from different linking matrices."""


def _normalize_lk(lk: Sequence[Sequence[int]]) -> LinkingMatrix:
    mat = tuple(tuple(int(x) for x in row) for row in lk)
    n = len(mat)
    for i, row in enumerate(mat):
        if len(row) != n:
            raise ValueError("linking matrix must be square")
        if row[i] != 0:
            raise ValueError("linking matrix must have zero diagonal")
        for j in range(n):
            if mat[j][i] != row[j]:
                raise ValueError("linking matrix must be symmetric")
    return mat


class TotalMilnorQuotient:
    """``W / span{v_{s,r} : s != r}`` for a fixed linking matrix.

    ``V`` has one row per triple ``i<j<k`` and one column per ordered pair
    ``(s, r)``, columns in lexicographic order.  Normal forms are computed
    once at construction.
    """

    def __init__(self, lk: Sequence[Sequence[int]]):
        self.lk: LinkingMatrix = _normalize_lk(lk)
        self.n = n = len(self.lk)
        if n < 3:
            raise ValueError("needs at least three components")
        self.pairs = indeterminacy_pairs(n)
        columns = [indeterminacy_vector(self.lk, s, r).coeffs for s, r in self.pairs]
        self.V = IntMatrix.from_columns(columns, comb(n, 3))
        self.hermite: HermiteBasis = hnf(self.V)
        self.smith: SmithDecomposition = snf(self.V)

    def structure(self) -> tuple[int, tuple[int, ...]]:
        return cokernel_structure(self.V, self.smith)

    def describe(self) -> str:
        return "M = " + format_structure(self.structure())

    def reduce(self, v: WedgeVector) -> WedgeVector:
        self._check(v)
        return WedgeVector(self.n, reduce_mod_lattice(self.V, v.coeffs, self.hermite))

    def contains(self, v: WedgeVector) -> bool:
        """Whether ``v`` lies in the span of the indeterminacy vectors."""
        self._check(v)
        return lattice_solve(self.V, v.coeffs, self.hermite) is not None

    def _check(self, v: WedgeVector) -> None:
        if v.n != self.n:
            raise ValueError(f"wedge vector over n={v.n} for a quotient over n={self.n}")

    def classify(self, v: WedgeVector) -> MilnorClass:
        return MilnorClass(self, self.reduce(v))

    def coordinates(self, v: WedgeVector) -> list[tuple[int, int]]:
        """``(modulus, value)`` per nontrivial cyclic summand; modulus 0 marks a free coordinate.

        Read off the Smith row transform: ``U v`` taken mod ``d_i`` on the
        torsion rows, exactly on the rows past the rank.
        """
        self._check(v)
        y = self.smith.U @ list(v.coeffs)
        diag = self.smith.diagonal
        out = []
        for i, value in enumerate(y):
            d = diag[i] if i < len(diag) else 0
            if d == 1:
                continue
            out.append((d, value % d) if d else (0, value))
        return out

    def free_functionals(self) -> list[tuple[int, ...]]:
        """Integer functionals on ``W`` vanishing on the relations, one per free summand.

        Each is a row of the Smith row transform, sign-normalized so that its
        first nonzero entry is positive.
        """
        rank = self.smith.rank
        rows = []
        for i in range(rank, self.V.rows):
            row = list(self.smith.U.data[i])
            lead = next((x for x in row if x), 0)
            if lead < 0:
                row = [-x for x in row]
            rows.append(tuple(row))
        return rows

    def rank_one_functional(self) -> Optional[tuple[int, ...]]:
        """The isomorphism ``M -> Z`` when ``M`` is infinite cyclic, else ``None``."""
        free, torsion = self.structure()
        if free != 1 or torsion:
            return None
        return self.free_functionals()[0]


@lru_cache(maxsize=256)
def _quotient_cached(lk: LinkingMatrix) -> TotalMilnorQuotient:
    return TotalMilnorQuotient(lk)


def quotient_for(lk: Sequence[Sequence[int]]) -> TotalMilnorQuotient:
    """Shared quotient for a linking matrix (quotients are immutable, so they are cached)."""
    return _quotient_cached(_normalize_lk(lk))


def quotient_structure(q: TotalMilnorQuotient) -> tuple[int, tuple[int, ...]]:
    return q.structure()


@dataclass(frozen=True, eq=False)
class MilnorClass:
    quotient: TotalMilnorQuotient
    rep: WedgeVector

    @property
    def lk(self) -> LinkingMatrix:
        return self.quotient.lk

    def functional_value(self) -> Optional[int]:
        f = self.quotient.rank_one_functional()
        if f is None:
            return None
        return sum(a * b for a, b in zip(f, self.rep.coeffs))

    def __str__(self) -> str:
        return str(self.rep)


def total_invariant(s: SurfaceSystemData) -> MilnorClass:
    """The class of ``m - t`` in the quotient for the system's linking matrix."""
    ensure_valid(s)
    q = quotient_for(linking_matrix(s))
    return q.classify(m_vector(s) - t_vector(s))


def invariants_equal(a: MilnorClass, b: MilnorClass) -> bool:
    if a.lk != b.lk:
        raise IncomparableError("incomparable: linking numbers differ")
    return a.rep == b.rep


def classical_mu(s: SurfaceSystemData, i: int, j: int, k: int) -> tuple[int, int]:
    """``(residue, Delta_ijk)`` of the classical triple linking number.

    ``Delta`` is the gcd of the three pairwise linking numbers; ``Delta == 0``
    means the value is a genuine integer.
    """
    if not i < j < k:
        raise ValueError("indices must be strictly increasing")
    if not (1 <= i and k <= s.n):
        raise IndexError(f"indices out of range 1..{s.n}")
    lk = linking_matrix(s)
    delta = gcd(gcd(lk[i - 1][j - 1], lk[j - 1][k - 1]), lk[k - 1][i - 1])
    value = (m_vector(s) - t_vector(s)).coefficient(i, j, k)
    return (value % delta if delta else value), delta


def _power(index: int, exponent: int) -> str:
    letter = f"{index}" if exponent > 0 else f"{index}-"
    return " ".join([letter] * abs(exponent))


def realize_family(m: int) -> SurfaceSystemData:
    """Four-component system whose invariant has value ``m`` under the rank-one functional.

    It is the all-ones linking example with component 1 of the Borromean
    summand replaced by its ``(m, 1)`` cable.
    """
    def w(*parts: str) -> LinearWord:
        return LinearWord.parse(" ".join(p for p in parts if p))

    words = [
        w("2 3 4", _power(2, -m), _power(2, m)),
        w("3 4 1", _power(1, -m), "3", _power(1, m), "3-"),
        w("4 1 2 2- 2"),
        w("1 2 3"),
    ]
    return SurfaceSystemData(4, words)
