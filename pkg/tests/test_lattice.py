import itertools
import random
from math import gcd

import pytest
import sympy
from hypothesis import given, settings, strategies as st
from sympy.matrices.normalforms import smith_normal_form

from totalmilnor.lattice import (IntMatrix, cokernel_structure, format_structure, hnf,
                                 lattice_solve, reduce_mod_lattice, reduce_with_witness, snf)


def random_matrix(rng, max_rows=5, max_cols=7, bound=9):
    r, c = rng.randint(1, max_rows), rng.randint(1, max_cols)
    return IntMatrix([[rng.randint(-bound, bound) for _ in range(c)] for _ in range(r)])


def minors_gcd(rows, k):
    """gcd of all k x k minors (determinantal divisor), via sympy determinants."""
    if k == 0:
        return 1
    g = 0
    m, n = len(rows), len(rows[0]) if rows else 0
    for ri in itertools.combinations(range(m), k):
        for ci in itertools.combinations(range(n), k):
            g = gcd(g, int(sympy.Matrix([[rows[i][j] for j in ci] for i in ri]).det()))
    return g


def sympy_rank(rows):
    return sympy.Matrix(rows).rank() if rows and rows[0] else 0


def in_lattice_oracle(A, x):
    """Solvability of A y = x over Z: same rank and same top determinantal divisor with x appended."""
    rows = A.tolist()
    aug = [row + [xi] for row, xi in zip(rows, x)]
    r = sympy_rank(rows)
    if sympy_rank(aug) != r:
        return False
    return minors_gcd(rows, r) == minors_gcd(aug, r)


def check_hnf(A, H):
    rows, cols = A.shape
    assert abs(H.U.determinant()) == 1
    AU = A @ H.U
    for i in range(rows):
        for j in range(cols):
            expected = H.H[i, j] if j < H.rank else 0
            assert AU[i, j] == expected
    for c, p in enumerate(H.pivot_rows):
        assert H.H[p, c] > 0
        assert all(H.H[i, c] == 0 for i in range(p))
        for left in range(c):
            assert 0 <= H.H[p, left] < H.H[p, c]
    assert list(H.pivot_rows) == sorted(set(H.pivot_rows))


def test_hnf_examples():
    I = IntMatrix.identity(3)
    H = hnf(I)
    assert H.H == I and H.U == I
    H = hnf([[2, 0], [0, 3]])
    assert H.H.tolist() == [[2, 0], [0, 3]]


def test_snf_examples():
    D = snf([[2, 0], [0, 3]])
    assert D.invariant_factors == (1, 6)
    Z = snf(IntMatrix.zeros(3, 4))
    assert Z.rank == 0 and Z.S == IntMatrix.zeros(3, 4)


def test_cokernel_examples():
    assert cokernel_structure([[2, 0], [0, 3]]) == (0, (6,))
    assert cokernel_structure(IntMatrix.zeros(4, 0)) == (4, ())
    assert format_structure((0, (6,))) == "Z/6"
    assert format_structure((2, (2, 4))) == "Z^2 (+) Z/2 (+) Z/4"
    assert format_structure((0, ())) == "0"


def test_reference_four_by_six_matrix():
    A = [[1, -1, 0, 1, 0, 0],
         [0, 1, -1, 0, 0, 1],
         [1, 0, -1, 0, 1, 0],
         [0, 0, 0, 1, -1, 1]]
    assert cokernel_structure(A) == (1, ())


def test_normal_forms_on_random_matrices():
    rng = random.Random(2024)
    for _ in range(500):
        A = random_matrix(rng)
        check_hnf(A, hnf(A))
        D = snf(A)
        assert abs(D.U.determinant()) == 1 and abs(D.V.determinant()) == 1
        assert D.U @ A @ D.V == D.S
        assert D.U_inv @ D.U == IntMatrix.identity(A.rows)
        assert D.V @ D.V_inv == IntMatrix.identity(A.cols)
        assert D.U_inv @ D.S @ D.V_inv == A
        for i in range(D.S.rows):
            for j in range(D.S.cols):
                if i != j:
                    assert D.S[i, j] == 0
        f = D.invariant_factors
        assert all(d > 0 for d in f)
        assert all(b % a == 0 for a, b in zip(f, f[1:]))
        assert all(d == 0 for d in D.diagonal[len(f):])
        assert D.rank == sympy_rank(A.tolist())


def test_smith_diagonal_agrees_with_sympy():
    rng = random.Random(11)
    for _ in range(60):
        A = random_matrix(rng, 4, 5)
        expected = smith_normal_form(sympy.Matrix(A.tolist()), domain=sympy.ZZ)
        ours = snf(A).diagonal
        theirs = tuple(abs(int(expected[i, i])) for i in range(min(A.shape)))
        assert ours == theirs


def test_invariant_factors_match_determinantal_divisors():
    rng = random.Random(5)
    for _ in range(80):
        A = random_matrix(rng, 3, 4, 6)
        f = snf(A).invariant_factors
        prod = 1
        for k, d in enumerate(f, start=1):
            prod *= d
            assert prod == minors_gcd(A.tolist(), k)


def test_lattice_solve_examples():
    assert lattice_solve(IntMatrix.identity(3), [4, -1, 7]) == [4, -1, 7]
    assert lattice_solve([[2]], [3]) is None
    assert reduce_mod_lattice([[2]], [5]) == [1]
    with pytest.raises(ValueError):
        lattice_solve([[1, 0], [0, 1]], [1, 2, 3])


def test_round_trip_solve():
    rng = random.Random(99)
    for _ in range(300):
        A = random_matrix(rng)
        y = [rng.randint(-5, 5) for _ in range(A.cols)]
        x = A @ y
        sol = lattice_solve(A, x)
        assert sol is not None and A @ sol == x
        assert not any(reduce_mod_lattice(A, x))


def test_membership_agrees_with_brute_force_and_minors():
    rng = random.Random(3)
    bound = 4
    for _ in range(100):
        A = random_matrix(rng, 3, 3, 5)
        x = [rng.randint(-6, 6) for _ in range(A.rows)]
        found = any(A @ list(y) == x
                    for y in itertools.product(range(-bound, bound + 1), repeat=A.cols))
        sol = lattice_solve(A, x)
        if found:
            assert sol is not None
        if sol is not None:
            assert A @ sol == x
        assert (sol is not None) == in_lattice_oracle(A, x)


def test_equal_cosets_give_equal_representatives():
    rng = random.Random(17)
    for _ in range(300):
        A = random_matrix(rng)
        x = [rng.randint(-20, 20) for _ in range(A.rows)]
        z = [rng.randint(-4, 4) for _ in range(A.cols)]
        y = [a - b for a, b in zip(x, A @ z)]
        rx, wx = reduce_with_witness(A, x)
        assert rx == reduce_mod_lattice(A, y)
        assert [a - b for a, b in zip(x, rx)] == A @ wx


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.integers(-9, 9), min_size=3, max_size=3), min_size=1, max_size=4),
       st.lists(st.integers(-9, 9), min_size=4, max_size=4))
def test_representative_is_idempotent(rows, x):
    A = IntMatrix(rows)
    x = x[:A.rows]
    r = reduce_mod_lattice(A, x)
    assert reduce_mod_lattice(A, r) == r
    H = hnf(A)
    for c, p in enumerate(H.pivot_rows):
        assert 0 <= r[p] < H.H[p, c]


def test_big_integers_stay_exact():
    A = IntMatrix([[10**30, 3], [7, 10**25]])
    D = snf(A)
    assert D.U @ A @ D.V == D.S
    assert D.invariant_factors[0] * D.invariant_factors[1] == abs(A.determinant())
