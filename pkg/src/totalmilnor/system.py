"""Combinatorial link presentations and the moves on them.

Two data models live here.  :class:`CComplexData` keeps the clasp pairing and
is what longitude computations need; :class:`SurfaceSystemData` keeps only
the clasp-words and a signed triple-point table, which is all the triple
linking data depends on.  The map from the first to the second forgets the
pairing.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence, Union

from .wedge import WedgeVector, indeterminacy_vector, sort_with_sign
from .words import (CyclicWord, Letter, LinearWord, cancel_adjacent_inverse, signed_count,
                    signed_pair_count)


class ValidationError(ValueError):
    """Raised when an operation needs a valid system; carries all diagnostics."""

    def __init__(self, diagnostics: Sequence[str]):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(self.diagnostics))


@dataclass(frozen=True)
class ClaspEndpoint:
    component: int
    rank: int

    def __str__(self) -> str:
        return f"{self.component}:{self.rank}"


@dataclass(frozen=True)
class Clasp:
    id: str
    a: ClaspEndpoint
    b: ClaspEndpoint
    sign: int

    def partner(self, component: int) -> ClaspEndpoint:
        return self.b if self.a.component == component else self.a


@dataclass(frozen=True)
class CComplexData:
    n: int
    clasps: tuple[Clasp, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "clasps", tuple(self.clasps))

    def endpoints_on(self, component: int) -> list[tuple[ClaspEndpoint, Clasp]]:
        """Endpoints on ``component`` sorted by rank, each with its clasp."""
        out = []
        for c in self.clasps:
            for end in (c.a, c.b):
                if end.component == component:
                    out.append((end, c))
        out.sort(key=lambda pair: pair[0].rank)
        return out

    def clasp_sequence(self, component: int) -> list[tuple[int, int, int]]:
        """``(partner component, sign, partner rank)`` for ranks ``1..m_component`` in order."""
        seq = []
        for end, c in self.endpoints_on(component):
            other = c.b if end is c.a else c.a
            seq.append((other.component, c.sign, other.rank))
        return seq


def validate_ccomplex(c: CComplexData) -> list[str]:
    """Every violated invariant, as human-readable diagnostics (empty list when valid)."""
    diags = []
    if c.n < 1:
        diags.append(f"component count must be >= 1, got {c.n}")
    ids = Counter(cl.id for cl in c.clasps)
    for cid, count in sorted(ids.items()):
        if count > 1:
            diags.append(f"clasp {cid}: duplicate id")
    ranks: dict[int, list[tuple[int, str]]] = defaultdict(list)
    for cl in c.clasps:
        if cl.sign not in (1, -1):
            diags.append(f"clasp {cl.id}: sign must be + or -")
        if cl.a.component == cl.b.component:
            diags.append(f"clasp {cl.id}: self-clasp on component {cl.a.component}")
        for end in (cl.a, cl.b):
            if not 1 <= end.component <= c.n:
                diags.append(f"clasp {cl.id}: component {end.component} out of range 1..{c.n}")
            else:
                ranks[end.component].append((end.rank, cl.id))
    for comp in sorted(ranks):
        seen = Counter(r for r, _ in ranks[comp])
        for r, count in sorted(seen.items()):
            if count > 1:
                who = ", ".join(sorted(cid for rr, cid in ranks[comp] if rr == r))
                diags.append(f"component {comp}: repeated rank {r} (clasps {who})")
        m = len(ranks[comp])
        present = set(seen)
        if present != set(range(1, m + 1)):
            bad = sorted(present - set(range(1, m + 1)))
            who = ", ".join(sorted(cid for rr, cid in ranks[comp] if rr in bad))
            diags.append(
                f"component {comp}: rank gap, ranks {sorted(present)} are not 1..{m}"
                + (f" (clasps {who})" if who else ""))
    return diags


Words = Sequence[Union[CyclicWord, LinearWord, Sequence[Letter], str]]


def _as_cyclic(w) -> CyclicWord:
    if isinstance(w, CyclicWord):
        return w
    if isinstance(w, str):
        return CyclicWord.parse(w)
    return CyclicWord.from_linear(w)


@dataclass(frozen=True)
class SurfaceSystemData:
    """Clasp-words (one per component) plus signed triple-point counts.

    ``triples`` maps strictly increasing ``(i, j, k)`` to ``t_ijk``.  Unsorted
    keys passed to the constructor are folded in with the permutation sign.
    """

    n: int
    words: tuple[CyclicWord, ...]
    triples: tuple[tuple[tuple[int, int, int], int], ...] = ()

    def __init__(self, n: int, words: Optional[Words] = None,
                 triples: Union[Mapping, Iterable, None] = None):
        words = list(words) if words is not None else []
        if len(words) > n:
            raise ValueError(f"{len(words)} words for {n} components")
        cyc = tuple(_as_cyclic(w) for w in words) + (CyclicWord(),) * (n - len(words))
        table: dict[tuple[int, int, int], int] = defaultdict(int)
        items = triples.items() if isinstance(triples, Mapping) else (triples or ())
        for key, value in items:
            sign, srt = sort_with_sign(*key)
            if sign == 0:
                raise ValueError(f"triple {key} has a repeated index")
            table[srt] += sign * int(value)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "words", cyc)
        object.__setattr__(self, "triples", tuple(sorted((k, v) for k, v in table.items() if v)))

    def linear(self, k: int) -> LinearWord:
        """The linearized clasp-word of component ``k`` (1-based)."""
        return self.words[k - 1].linearize()

    def triple_table(self) -> dict[tuple[int, int, int], int]:
        return dict(self.triples)

    def t_coefficient(self, i: int, j: int, k: int) -> int:
        sign, key = sort_with_sign(i, j, k)
        return sign * self.triple_table().get(key, 0) if sign else 0

    def replace(self, words=None, triples=None) -> SurfaceSystemData:
        return SurfaceSystemData(self.n,
                                 self.words if words is None else words,
                                 self.triple_table() if triples is None else triples)


def validate_system(s: SurfaceSystemData, strict: bool = False) -> list[str]:
    """Diagnostics for a surface system.

    General mode checks letter ranges, absence of self-letters and linking
    consistency ``e_j(w_i) == e_i(w_j)``.  Strict mode also demands what a
    C-complex guarantees: no triple points, and for each pair of components
    the unsigned letter counts match sign by sign, so the letters can be
    paired into clasps.
    """
    diags = []
    if s.n < 1:
        diags.append(f"component count must be >= 1, got {s.n}")
    for k, w in enumerate(s.words, start=1):
        for pos, x in enumerate(w.linearize()):
            if not 1 <= x.index <= s.n:
                diags.append(f"word {k}: letter {x} at position {pos} out of range 1..{s.n}")
            elif x.index == k:
                diags.append(f"word {k}: self-letter {x} at position {pos}")
    for (i, j, k), _ in s.triples:
        if k > s.n:
            diags.append(f"triple ({i},{j},{k}) out of range 1..{s.n}")
    counts = [Counter() for _ in range(s.n + 1)]
    for k in range(1, s.n + 1):
        for x in s.linear(k):
            counts[k][x.index] += x.sign
    for i in range(1, s.n + 1):
        for j in range(i + 1, s.n + 1):
            a, b = counts[i][j], counts[j][i]
            if a != b:
                diags.append(f"linking inconsistency: e_{j}(w_{i}) = {a} but e_{i}(w_{j}) = {b}")
    if strict:
        if s.triples:
            diags.append("strict: triple points present")
        for i in range(1, s.n + 1):
            for j in range(i + 1, s.n + 1):
                ci = Counter(x.sign for x in s.linear(i) if x.index == j)
                cj = Counter(x.sign for x in s.linear(j) if x.index == i)
                if ci != cj:
                    diags.append(f"strict: letters {j} in w_{i} cannot be paired with letters {i} in w_{j}")
    return diags


def ensure_valid(s, strict: bool = False) -> None:
    diags = validate_ccomplex(s) if isinstance(s, CComplexData) else validate_system(s, strict)
    if diags:
        raise ValidationError(diags)


def to_surface_system(c: CComplexData) -> SurfaceSystemData:
    ensure_valid(c)
    words = []
    for k in range(1, c.n + 1):
        words.append(LinearWord(Letter(j, e) for j, e, _ in c.clasp_sequence(k)))
    return SurfaceSystemData(c.n, words)


def linking_matrix(s) -> tuple[tuple[int, ...], ...]:
    if isinstance(s, CComplexData):
        s = to_surface_system(s)
    ensure_valid(s)
    return tuple(
        tuple(0 if i == j else signed_count(s.linear(i), j) for j in range(1, s.n + 1))
        for i in range(1, s.n + 1))


def m_coefficient(s: SurfaceSystemData, i: int, j: int, k: int) -> int:
    """``m_ijk = e_ij(w_k) + e_jk(w_i) + e_ki(w_j)`` for distinct indices."""
    return (signed_pair_count(s.linear(k), i, j)
            + signed_pair_count(s.linear(i), j, k)
            + signed_pair_count(s.linear(j), k, i))


def _need_three(s) -> None:
    if s.n < 3:
        raise ValueError("needs at least three components")


def m_vector(s: SurfaceSystemData) -> WedgeVector:
    _need_three(s)
    ensure_valid(s)
    return WedgeVector.from_function(s.n, lambda i, j, k: m_coefficient(s, i, j, k))


def t_vector(s: SurfaceSystemData) -> WedgeVector:
    _need_three(s)
    return WedgeVector.from_dict(s.n, s.triple_table())


def _delta_m(before: SurfaceSystemData, after: SurfaceSystemData) -> WedgeVector:
    return WedgeVector.from_function(
        before.n, lambda i, j, k: m_coefficient(after, i, j, k) - m_coefficient(before, i, j, k))


def _check_component(s: SurfaceSystemData, k: int) -> None:
    if not 1 <= k <= s.n:
        raise IndexError(f"component {k} out of range 1..{s.n}")


def finger_move(s: SurfaceSystemData, k: int, p: int) -> SurfaceSystemData:
    """Swap the letters at positions ``p, p+1`` of ``w_k``, trading the change
    in ``m`` for a triple point so that ``m - t`` is unchanged."""
    _check_component(s, k)
    w = s.words[k - 1]
    if not 0 <= p < len(w) - 1:
        raise ValueError(f"finger move needs linearly adjacent positions {p},{p + 1} in w_{k}")
    a, b = w.letter_at(p), w.letter_at(p + 1)
    if a.index == b.index:
        raise ValueError(f"letters {a} {b} share an index: use tube_move or reorder elsewhere")
    words = list(s.words)
    words[k - 1] = w.with_letters_swapped(p)
    moved = s.replace(words=words)
    delta = _delta_m(s, moved)
    table = s.triple_table()
    for key, dv in delta.items():
        if dv:
            table[key] = table.get(key, 0) + dv
    return moved.replace(triples=table)


def tube_move(s: SurfaceSystemData, k: int, p: int) -> SurfaceSystemData:
    """Delete the adjacent inverse pair at positions ``p, p+1`` of ``w_k``."""
    _check_component(s, k)
    w = s.words[k - 1]
    if not 0 <= p < len(w) - 1:
        raise ValueError(f"tube move needs linearly adjacent positions {p},{p + 1} in w_{k}")
    a, b = w.letter_at(p), w.letter_at(p + 1)
    if a.index != b.index or a.sign != -b.sign:
        raise ValueError(f"not an inverse pair: {a} {b} at positions {p},{p + 1} of w_{k}")
    words = list(s.words)
    words[k - 1] = cancel_adjacent_inverse(w, p)
    return s.replace(words=words)


def rotate_word(s: SurfaceSystemData, k: int, steps: int = 1) -> SurfaceSystemData:
    """Move the base point of component ``k``; changes ``m`` by a multiple of ``v_{s,k}``."""
    _check_component(s, k)
    words = list(s.words)
    words[k - 1] = words[k - 1].rotate(steps)
    return s.replace(words=words)


def torus_sum(s: SurfaceSystemData, target: int, around: int, orientation: int = 1
              ) -> SurfaceSystemData:
    """Add a push-off of the boundary torus of ``around`` to the surface of ``target``.

    Words stay fixed and ``t`` moves by ``-orientation * v_{target,around}``.
    """
    _need_three(s)
    if target == around:
        raise ValueError("torus sum needs target != around")
    if orientation not in (1, -1):
        raise ValueError("orientation must be +1 or -1")
    v = indeterminacy_vector(linking_matrix(s), target, around)
    table = s.triple_table()
    for key, dv in v.items():
        if dv:
            table[key] = table.get(key, 0) - orientation * dv
    return s.replace(triples=table)


@dataclass(frozen=True)
class Move:
    kind: str                 # "finger" or "tube"
    component: int
    position: int
    letters: tuple[Letter, Letter]
    dt: tuple[tuple[tuple[int, int, int], int], ...] = field(default=())

    def __str__(self) -> str:
        a, b = self.letters
        head = f"{self.kind} w_{self.component} @{self.position} ({a} {b})"
        if self.kind == "finger":
            changes = ", ".join(f"dt[{i},{j},{k}] = {v:+d}" for (i, j, k), v in self.dt)
            return f"{head}: {changes if changes else 'dt = 0'}"
        return head


def _is_ordered(w: LinearWord) -> bool:
    for x, y in zip(w, w[1:]):
        if x.index > y.index or (x.index == y.index and x.sign != y.sign):
            return False
    return True


def ordered_form(s: SurfaceSystemData) -> tuple[SurfaceSystemData, list[Move]]:
    """Bring every word to the block form ``1^lk(1,k) ... n^lk(n,k)``.

    Uses only finger and tube moves on linearly adjacent letters (the base
    point never moves), so ``m - t`` is preserved exactly.  Per component:
    cancel inverse pairs left to right, then one bubble-sort pass, repeat.
    """
    _need_three(s)
    ensure_valid(s)
    log: list[Move] = []
    cur = s
    for k in range(1, s.n + 1):
        while True:
            w = cur.linear(k)
            if _is_ordered(w):
                break
            p = 0
            while p < len(cur.words[k - 1]) - 1:
                lin = cur.linear(k)
                x, y = lin[p], lin[p + 1]
                if x.index == y.index and x.sign == -y.sign:
                    cur = tube_move(cur, k, p)
                    log.append(Move("tube", k, p, (x, y)))
                    p = max(p - 1, 0)
                else:
                    p += 1
            lin = cur.linear(k)
            for p in range(len(lin) - 1):
                x, y = cur.linear(k)[p], cur.linear(k)[p + 1]
                if x.index > y.index:
                    before = cur
                    cur = finger_move(cur, k, p)
                    old, new = before.triple_table(), cur.triple_table()
                    dt = tuple((key, new.get(key, 0) - old.get(key, 0))
                               for key in sorted(set(old) | set(new))
                               if new.get(key, 0) != old.get(key, 0))
                    log.append(Move("finger", k, p, (x, y), dt))
    return cur, log
