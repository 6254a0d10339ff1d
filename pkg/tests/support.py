"""Random generators and brute-force oracles shared by the tests."""

from __future__ import annotations

import itertools
import random
from pathlib import Path

from totalmilnor.system import CComplexData, Clasp, ClaspEndpoint
from totalmilnor.words import Letter, LinearWord

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"
GOLDEN = Path(__file__).resolve().parent / "golden"


def random_word(rng: random.Random, n: int = 4, max_len: int = 8, exclude: int = 0) -> LinearWord:
    pool = [i for i in range(1, n + 1) if i != exclude]
    return LinearWord(Letter(rng.choice(pool), rng.choice((1, -1)))
                      for _ in range(rng.randint(0, max_len)))


def random_ccomplex(rng: random.Random, n: int, nclasps: int) -> CComplexData:
    """Clasps between random component pairs, ranks shuffled on every component."""
    specs = [(*rng.sample(range(1, n + 1), 2), rng.choice((1, -1))) for _ in range(nclasps)]
    slots = {k: [] for k in range(1, n + 1)}
    for idx, (a, b, _) in enumerate(specs):
        slots[a].append((idx, 0))
        slots[b].append((idx, 1))
    rank = {}
    for lst in slots.values():
        rng.shuffle(lst)
        for r, key in enumerate(lst, start=1):
            rank[key] = r
    return CComplexData(n, tuple(
        Clasp(f"c{idx}", ClaspEndpoint(a, rank[(idx, 0)]), ClaspEndpoint(b, rank[(idx, 1)]), sign)
        for idx, (a, b, sign) in enumerate(specs)))


def repair(c: CComplexData, rng: random.Random) -> CComplexData:
    """Same clasp-words, different pairing: re-match equal-sign letters between each pair of components."""
    by_pair = {}
    for cl in c.clasps:
        lo, hi = sorted((cl.a, cl.b), key=lambda e: e.component)
        by_pair.setdefault((lo.component, hi.component, cl.sign), []).append((lo, hi))
    clasps = []
    for (a, b, sign), ends in sorted(by_pair.items()):
        los = [lo for lo, _ in ends]
        his = [hi for _, hi in ends]
        rng.shuffle(his)
        for lo, hi in zip(los, his):
            clasps.append(Clasp(f"r{len(clasps)}", lo, hi, sign))
    return CComplexData(c.n, tuple(clasps))


def pair_count_oracle(w, r: int, s: int) -> int:
    """Quadratic enumeration of ordered position pairs."""
    return sum(x.sign * y.sign for (p, x), (q, y) in itertools.combinations(enumerate(w), 2)
               if x.index == r and y.index == s)


def permutation_sign(seq) -> int:
    """Parity by counting inversions."""
    seq = list(seq)
    if len(set(seq)) < len(seq):
        return 0
    inv = sum(1 for a, b in itertools.combinations(seq, 2) if a > b)
    return -1 if inv % 2 else 1
