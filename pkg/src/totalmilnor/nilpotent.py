"""Free-group words, truncated Magnus expansions and longitudes modulo ``F_3``.

Conventions: ``[a, b] = a b a^-1 b^-1`` and conjugation ``a^g = g a g^-1``,
which is the order in which longitudes are assembled from whiskered
meridians.  Every statement made here modulo ``F_3`` is insensitive to
these choices.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Mapping, Optional, Sequence

from .system import (CComplexData, ensure_valid, linking_matrix, m_coefficient,
                     to_surface_system)
from .words import Letter

Monomial = tuple[int, ...]


class FreeWord(tuple):
    """Unreduced word in the meridians: a tuple of ``(generator, exponent)`` with exponent ±1."""

    def __new__(cls, letters: Iterable[tuple[int, int]] = ()):
        letters = tuple((int(g), int(e)) for g, e in letters)
        for g, e in letters:
            if g < 1 or e not in (1, -1):
                raise ValueError(f"bad free-group letter ({g}, {e})")
        return super().__new__(cls, letters)

    @classmethod
    def generator(cls, i: int, exponent: int = 1) -> FreeWord:
        """``mu_i^exponent`` spelled out with unit exponents."""
        e = 1 if exponent > 0 else -1
        return cls([(i, e)] * abs(exponent))

    @classmethod
    def from_letters(cls, w: Iterable[Letter]) -> FreeWord:
        return cls((x.index, x.sign) for x in w)

    @classmethod
    def parse(cls, text: str) -> FreeWord:
        """Parse ``mu3^-1 mu1 mu2``; ``1`` is the empty word."""
        out = []
        for tok in text.split():
            if tok == "1":
                continue
            base, _, exp = tok.partition("^")
            if not base.startswith("mu"):
                raise ValueError(f"bad generator {tok!r}")
            out.extend(cls.generator(int(base[2:]), int(exp) if exp else 1))
        return cls(out)

    def __mul__(self, other) -> FreeWord:
        return FreeWord(tuple(self) + tuple(other))

    def inverse(self) -> FreeWord:
        return FreeWord((g, -e) for g, e in reversed(self))

    def reduced(self) -> FreeWord:
        out: list[tuple[int, int]] = []
        for g, e in self:
            if out and out[-1] == (g, -e):
                out.pop()
            else:
                out.append((g, e))
        return FreeWord(out)

    def exponent_sums(self, n: int) -> tuple[int, ...]:
        sums = [0] * n
        for g, e in self:
            sums[g - 1] += e
        return tuple(sums)

    def max_generator(self) -> int:
        return max((g for g, _ in self), default=0)

    def __str__(self) -> str:
        if not self:
            return "1"
        parts = []
        i = 0
        while i < len(self):
            g, e = self[i]
            j = i
            while j < len(self) and self[j] == (g, e):
                j += 1
            power = (j - i) * e
            parts.append(f"mu{g}" if power == 1 else f"mu{g}^{power}")
            i = j
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"FreeWord.parse({str(self)!r})"


def commutator(a: FreeWord, b: FreeWord) -> FreeWord:
    return a * b * a.inverse() * b.inverse()


def conjugate(a: FreeWord, g: FreeWord) -> FreeWord:
    """``g a g^-1``."""
    return g * a * g.inverse()


class MagnusSeries:
    """Element of ``Z<<X_1..X_n>>`` truncated above degree ``degree``.

    Coefficients are keyed by monomials (tuples of generator indices); the
    empty tuple is the constant term.  Zero coefficients are not stored.
    """

    __slots__ = ("n", "degree", "_coeffs")

    def __init__(self, n: int, degree: int, coeffs: Mapping[Monomial, int]):
        if degree not in (1, 2, 3):
            raise ValueError(f"unsupported truncation degree {degree}")
        self.n = n
        self.degree = degree
        clean = {}
        for mono, c in coeffs.items():
            mono = tuple(mono)
            if len(mono) > degree or not c:
                continue
            if any(not 1 <= x <= n for x in mono):
                raise ValueError(f"monomial {mono} outside 1..{n}")
            clean[mono] = int(c)
        self._coeffs = clean

    @classmethod
    def one(cls, n: int, degree: int) -> MagnusSeries:
        return cls(n, degree, {(): 1})

    @classmethod
    def of_letter(cls, n: int, degree: int, g: int, e: int) -> MagnusSeries:
        if not 1 <= g <= n:
            raise ValueError(f"generator {g} out of range 1..{n}")
        if e == 1:
            return cls(n, degree, {(): 1, (g,): 1})
        # 1 - X + X^2 - X^3 + ...
        return cls(n, degree, {(g,) * d: (-1) ** d for d in range(degree + 1)})

    def __getitem__(self, mono: Iterable[int]) -> int:
        return self._coeffs.get(tuple(mono), 0)

    def coefficient(self, *mono: int) -> int:
        return self._coeffs.get(tuple(mono), 0)

    def items(self):
        return sorted(self._coeffs.items(), key=lambda kv: (len(kv[0]), kv[0]))

    def linear_part(self) -> tuple[int, ...]:
        return tuple(self.coefficient(i) for i in range(1, self.n + 1))

    def quadratic_part(self) -> dict[tuple[int, int], int]:
        return {(i, j): self.coefficient(i, j)
                for i, j in product(range(1, self.n + 1), repeat=2) if self.coefficient(i, j)}

    def __mul__(self, other: MagnusSeries) -> MagnusSeries:
        return magnus_mul(self, other)

    def __eq__(self, other) -> bool:
        return (isinstance(other, MagnusSeries) and self.n == other.n
                and self.degree == other.degree and self._coeffs == other._coeffs)

    def __hash__(self) -> int:
        return hash((self.n, self.degree, frozenset(self._coeffs.items())))

    def __repr__(self) -> str:
        return f"MagnusSeries({self.n}, {self.degree}, {dict(self.items())!r})"

    def __str__(self) -> str:
        terms = []
        for mono, c in self.items():
            name = "".join(f"X{i}" for i in mono) or "1"
            terms.append(f"{c}*{name}" if mono else str(c))
        return " + ".join(terms) if terms else "0"


def magnus_mul(a: MagnusSeries, b: MagnusSeries) -> MagnusSeries:
    """Noncommutative product, dropping terms above the truncation degree."""
    if a.n != b.n or a.degree != b.degree:
        raise ValueError("Magnus series of different shape")
    out: dict[Monomial, int] = defaultdict(int)
    for ma, ca in a._coeffs.items():
        room = a.degree - len(ma)
        for mb, cb in b._coeffs.items():
            if len(mb) <= room:
                out[ma + mb] += ca * cb
    return MagnusSeries(a.n, a.degree, out)


def magnus_of_word(w: FreeWord, degree: int = 2, n: Optional[int] = None) -> MagnusSeries:
    if degree not in (2, 3):
        raise ValueError("Magnus truncation degree must be 2 or 3")
    if n is None:
        n = max(w.max_generator(), 1)
    result = MagnusSeries.one(n, degree)
    for g, e in w:
        result = magnus_mul(result, MagnusSeries.of_letter(n, degree, g, e))
    return result


def e_ij_of_word(w, i: int, j: int) -> int:
    """The ``X_i X_j`` coefficient of the Magnus expansion, for ``i != j``."""
    if i == j:
        raise ValueError("e_ij_of_word needs i != j")
    if not isinstance(w, FreeWord):
        w = FreeWord.from_letters(w)
    n = max(w.max_generator(), i, j)
    return magnus_of_word(w, 2, n).coefficient(i, j)


def f3_equal(a: FreeWord, b: FreeWord, n: Optional[int] = None) -> bool:
    """Equality in ``F / F_3``, decided by the degree-2 Magnus truncation."""
    if n is None:
        n = max(a.max_generator(), b.max_generator(), 1)
    return magnus_of_word(a, 2, n) == magnus_of_word(b, 2, n)


def commutator_calculus_check(a: FreeWord, g: FreeWord, b: Optional[FreeWord] = None,
                              k: int = 2) -> bool:
    """Check ``a^g == a`` and ``[a, g b] == [a, b]`` in ``F / F_{k+1}`` for ``g`` in ``F_k``.

    Only ``k = 2`` is decidable here; ``g`` must have vanishing exponent sums.
    """
    if k != 2:
        raise ValueError("only k = 2 is supported")
    b = FreeWord() if b is None else b
    n = max(a.max_generator(), g.max_generator(), b.max_generator(), 1)
    if any(g.exponent_sums(n)):
        raise ValueError("g is not in F_2: exponent sums do not vanish")
    return (f3_equal(conjugate(a, g), a, n)
            and f3_equal(g.inverse() * a * g, a, n)
            and f3_equal(commutator(a, g * b), commutator(a, b), n))


def conjugator_abelianization(c: CComplexData, K: int, r: int) -> tuple[int, ...]:
    """Abelianization of the loop that whiskers the ``r``-th clasp meridian on ``K``.

    Signed letters of ``w_K`` before rank ``r``, minus signed letters of the
    partner word ``w_J`` before the partner rank ``s``, plus ``e_K - e_J``
    for a negative clasp.
    """
    ensure_valid(c)
    seq = c.clasp_sequence(K)
    if not 1 <= r <= len(seq):
        raise ValueError(f"component {K} has no clasp of rank {r}")
    J, sign, s = seq[r - 1]
    vec = [0] * c.n
    for other, e, _ in seq[:r - 1]:
        vec[other - 1] += e
    for other, e, _ in c.clasp_sequence(J)[:s - 1]:
        vec[other - 1] -= e
    if sign < 0:
        vec[K - 1] += 1
        vec[J - 1] -= 1
    return tuple(vec)


def abelian_word(vec: Sequence[int]) -> FreeWord:
    """The fixed realization ``mu_1^c_1 ... mu_n^c_n`` of an abelianization vector."""
    out = FreeWord()
    for i, c in enumerate(vec, start=1):
        if c:
            out = out * FreeWord.generator(i, c)
    return out


@dataclass(frozen=True)
class ClaspFactor:
    partner: int
    sign: int
    conjugator: tuple[int, ...]

    def word(self) -> FreeWord:
        return conjugate(FreeWord.generator(self.partner, self.sign), abelian_word(self.conjugator))


@dataclass(frozen=True)
class LongitudeData:
    component: int
    factors: tuple[ClaspFactor, ...]
    word: FreeWord


def longitude_word(c: CComplexData, K: int) -> LongitudeData:
    """Longitude of component ``K`` as a word in the meridians, exact modulo ``F_3``.

    ``l_K = f_m ... f_1`` with ``f_r = h_r mu_{J_r}^{e_r} h_r^-1``; the genus
    contribution is a length-3 commutator and is left out.
    """
    ensure_valid(c)
    if c.n < 2:
        raise ValueError("longitudes need at least two components")
    if not 1 <= K <= c.n:
        raise IndexError(f"component {K} out of range 1..{c.n}")
    factors = tuple(
        ClaspFactor(J, sign, conjugator_abelianization(c, K, r))
        for r, (J, sign, _) in enumerate(c.clasp_sequence(K), start=1))
    w = FreeWord()
    for f in reversed(factors):
        w = w * f.word()
    return LongitudeData(K, factors, w)


@dataclass(frozen=True)
class LongitudeIdentityRow:
    i: int
    j: int
    k: int
    magnus: int
    predicted: int

    @property
    def ok(self) -> bool:
        return self.magnus == self.predicted


@dataclass(frozen=True)
class LongitudeIdentityReport:
    rows: tuple[LongitudeIdentityRow, ...]

    @property
    def ok(self) -> bool:
        return all(row.ok for row in self.rows)

    @property
    def violations(self) -> list[LongitudeIdentityRow]:
        return [row for row in self.rows if not row.ok]

    def summary(self) -> str:
        bad = self.violations
        if not bad:
            return f"longitude check: all {len(self.rows)} ordered triples agree"
        lines = [f"longitude check: {len(bad)} of {len(self.rows)} ordered triples disagree"]
        lines += [f"  e_{r.i}{r.j}(l_{r.k}) = {r.magnus} but m - lk*lk = {r.predicted}" for r in bad]
        return "\n".join(lines)


def check_longitude_identity(c: CComplexData) -> LongitudeIdentityReport:
    """Compare ``e_ij(l_k)`` with ``m_ijk - lk(k, j) lk(i, j)`` over all distinct ``i, j, k``."""
    ensure_valid(c)
    if c.n < 3:
        raise ValueError("needs at least three components")
    s = to_surface_system(c)
    lk = linking_matrix(s)
    expansions = {k: magnus_of_word(longitude_word(c, k).word, 2, c.n) for k in range(1, c.n + 1)}
    rows = []
    for i, j, k in product(range(1, c.n + 1), repeat=3):
        if len({i, j, k}) < 3:
            continue
        predicted = m_coefficient(s, i, j, k) - lk[k - 1][j - 1] * lk[i - 1][j - 1]
        rows.append(LongitudeIdentityRow(i, j, k, expansions[k].coefficient(i, j), predicted))
    return LongitudeIdentityReport(tuple(rows))


def emit_presentation(c: CComplexData, k: int = 3) -> str:
    """Milnor presentation of ``pi / pi_k`` with longitudes from :func:`longitude_word`."""
    if k < 2:
        raise ValueError("lower central series index must be >= 2")
    ensure_valid(c)
    lines = [
        f"# presentation of pi/pi_{k}",
        "# longitude words are exact modulo F_3; length-3 commutator factors are omitted",
    ]
    if k > 4:
        lines.append(f"# warning: relators are only determined modulo F_4, not F_{k}")
    lines.append("generators " + " ".join(f"mu{i}" for i in range(1, c.n + 1)))
    for i in range(1, c.n + 1):
        lines.append(f"[mu{i}, {longitude_word(c, i).word.reduced()}]")
    lines.append(f"+ all commutators of weight {k}")
    return "\n".join(lines) + "\n"
