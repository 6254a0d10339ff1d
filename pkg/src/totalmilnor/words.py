"""Signed-letter words and the occurrence calculus.

A letter ``i^e`` records a signed intersection with the surface of component
``i``.  Linear words are read from a base point; cyclic words keep the base
point as an explicit offset into their letter sequence.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence


@dataclass(frozen=True, order=True)
class Letter:
    index: int
    sign: int = 1

    def __post_init__(self) -> None:
        if not isinstance(self.index, int) or self.index < 1:
            raise ValueError(f"letter index must be a positive integer, got {self.index!r}")
        if self.sign not in (1, -1):
            raise ValueError(f"letter sign must be +1 or -1, got {self.sign!r}")

    def inverse(self) -> Letter:
        return Letter(self.index, -self.sign)

    def __str__(self) -> str:
        return f"{self.index}" if self.sign > 0 else f"{self.index}-"

    @classmethod
    def parse(cls, token: str) -> Letter:
        """Parse ``3`` or ``3-``; an explicit trailing ``+`` is also accepted."""
        tok = token.strip()
        sign = 1
        if tok.endswith("-"):
            sign, tok = -1, tok[:-1]
        elif tok.endswith("+"):
            tok = tok[:-1]
        if not tok.isdigit():
            raise ValueError(f"bad letter {token!r}")
        return cls(int(tok), sign)


class LinearWord(tuple):
    """An immutable sequence of :class:`Letter`; repetitions allowed, nothing cancels."""

    def __new__(cls, letters: Iterable[Letter] = ()):
        letters = tuple(letters)
        for x in letters:
            if not isinstance(x, Letter):
                raise TypeError(f"expected Letter, got {x!r}")
        return super().__new__(cls, letters)

    @classmethod
    def parse(cls, text: str) -> LinearWord:
        return cls(Letter.parse(tok) for tok in text.split())

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]]) -> LinearWord:
        return cls(Letter(i, e) for i, e in pairs)

    def __add__(self, other) -> LinearWord:
        return LinearWord(tuple.__add__(self, other))

    def __getitem__(self, item):
        res = tuple.__getitem__(self, item)
        if isinstance(item, slice):
            return LinearWord(res)
        return res

    def __str__(self) -> str:
        return " ".join(map(str, self))

    def __repr__(self) -> str:
        return f"LinearWord.parse({str(self)!r})"

    def indices(self) -> set[int]:
        return {x.index for x in self}


def word(text: str) -> LinearWord:
    """Shorthand for :meth:`LinearWord.parse`."""
    return LinearWord.parse(text)


def signed_count(w: Sequence[Letter], r: int) -> int:
    """Signed occurrences ``e_r(w)`` of the letter ``r``."""
    return sum(x.sign for x in w if x.index == r)


def signed_pair_count(w: Sequence[Letter], r: int, s: int) -> int:
    """Signed occurrences ``e_rs(w)``: sum of ``sign_p * sign_q`` over positions
    ``p < q`` with letter ``r`` at ``p`` and letter ``s`` at ``q``."""
    total = 0
    seen_r = 0
    for x in w:
        if x.index == s:
            total += seen_r * x.sign
        if x.index == r:
            seen_r += x.sign
    return total


def concat(u: Sequence[Letter], v: Sequence[Letter]) -> LinearWord:
    return LinearWord(tuple(u) + tuple(v))


@dataclass(frozen=True)
class CyclicWord:
    """Letters on an oriented circle together with a base point.

    ``letters`` is the stored cyclic sequence and reading starts at
    ``letters[base_offset]``.  Positions accepted by the methods below are
    positions in the linearization.
    """

    letters: tuple[Letter, ...] = ()
    base_offset: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "letters", tuple(self.letters))
        for x in self.letters:
            if not isinstance(x, Letter):
                raise TypeError(f"expected Letter, got {x!r}")
        if not 0 <= self.base_offset < max(len(self.letters), 1):
            raise ValueError(
                f"base_offset {self.base_offset} out of range for length {len(self.letters)}")

    @classmethod
    def from_linear(cls, w: Iterable[Letter]) -> CyclicWord:
        return cls(tuple(w), 0)

    @classmethod
    def parse(cls, text: str) -> CyclicWord:
        return cls.from_linear(LinearWord.parse(text))

    def __len__(self) -> int:
        return len(self.letters)

    @cached_property
    def _linear(self) -> LinearWord:
        k = self.base_offset
        return LinearWord(self.letters[k:] + self.letters[:k])

    def linearize(self) -> LinearWord:
        return self._linear

    def rotate(self, steps: int) -> CyclicWord:
        """Move the base point forward over ``steps`` letters (``j v -> v j`` for one step)."""
        if not self.letters:
            return self
        return CyclicWord(self.letters, (self.base_offset + steps) % len(self.letters))

    def raw_index(self, pos: int) -> int:
        return (self.base_offset + pos) % len(self.letters)

    def letter_at(self, pos: int) -> Letter:
        """Letter at linearization position ``pos`` (taken cyclically)."""
        return self.letters[self.raw_index(pos)]

    def is_cyclically_equivalent(self, other: CyclicWord) -> bool:
        if len(self) != len(other):
            return False
        if not self.letters:
            return True
        doubled = self.letters + self.letters
        n = len(self.letters)
        return any(doubled[i:i + n] == other.letters for i in range(n))

    def with_letters_swapped(self, pos: int) -> CyclicWord:
        """Swap the letters at linear positions ``pos`` and ``pos + 1``."""
        n = len(self.letters)
        if not 0 <= pos < n - 1:
            raise ValueError(f"no linearly adjacent pair at position {pos} in a word of length {n}")
        a, b = self.raw_index(pos), self.raw_index(pos + 1)
        letters = list(self.letters)
        letters[a], letters[b] = letters[b], letters[a]
        return CyclicWord(tuple(letters), self.base_offset)

    def __str__(self) -> str:
        return str(self.linearize())


def cancel_adjacent_inverse(w: CyclicWord, pos: int) -> CyclicWord:
    """Remove the cyclically adjacent inverse pair at positions ``pos, pos+1``.

    The base point keeps its gap; if it sat between the two removed letters it
    ends up in the gap that closes over them.
    """
    n = len(w)
    if n < 2:
        raise ValueError("not an inverse pair: word has fewer than two letters")
    a, b = w.raw_index(pos), w.raw_index(pos + 1)
    x, y = w.letters[a], w.letters[b]
    if x.index != y.index or x.sign != -y.sign:
        raise ValueError(f"not an inverse pair: {x} {y} at position {pos}")
    lin = list(w.linearize())
    p = pos % n
    if p == n - 1:
        # the pair straddles the base point
        return CyclicWord.from_linear(lin[1:-1])
    letters = list(w.letters)
    for idx in sorted((a, b), reverse=True):
        del letters[idx]
    removed_before = sum(1 for idx in (a, b) if idx < w.base_offset)
    offset = w.base_offset - removed_before
    if not letters:
        offset = 0
    else:
        offset %= len(letters)
    return CyclicWord(tuple(letters), offset)
