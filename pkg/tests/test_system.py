import random

import pytest
from hypothesis import given, settings, strategies as st

from totalmilnor.invariant import quotient_for
from totalmilnor.system import (CComplexData, Clasp, ClaspEndpoint, SurfaceSystemData,
                                ValidationError, finger_move, linking_matrix, m_coefficient,
                                m_vector, ordered_form, rotate_word, t_vector, to_surface_system,
                                torus_sum, tube_move, validate_ccomplex, validate_system)
from totalmilnor.linkfile import parse_link_file
from totalmilnor.wedge import WedgeVector, triples
from totalmilnor.words import LinearWord, word

from support import FIXTURES, permutation_sign, random_ccomplex


def fourlink_links():
    return dict(parse_link_file((FIXTURES / "fourlink.link").read_text()))


def clasp(cid, a, b, sign=1):
    return Clasp(cid, ClaspEndpoint(*a), ClaspEndpoint(*b), sign)


def test_validate_ccomplex_examples():
    assert validate_ccomplex(CComplexData(3)) == []
    diags = validate_ccomplex(CComplexData(2, [clasp("x", (1, 1), (1, 2))]))
    assert any("self-clasp" in d for d in diags)
    diags = validate_ccomplex(CComplexData(3, [clasp("a", (1, 1), (2, 1)), clasp("b", (1, 3), (3, 1))]))
    assert any("rank gap" in d and "b" in d for d in diags)


def test_validate_ccomplex_collects_everything():
    c = CComplexData(2, [clasp("a", (1, 1), (3, 1)), clasp("a", (1, 1), (2, 1), 2)])
    diags = validate_ccomplex(c)
    assert any("duplicate id" in d for d in diags)
    assert any("out of range" in d for d in diags)
    assert any("repeated rank" in d for d in diags)
    assert any("sign" in d for d in diags)


def test_to_surface_system_examples():
    s = to_surface_system(CComplexData(3))
    assert all(len(w) == 0 for w in s.words) and s.triples == ()
    s = to_surface_system(CComplexData(2, [clasp("h", (1, 1), (2, 1))]))
    assert s.linear(1) == word("2") and s.linear(2) == word("1")
    L = to_surface_system(fourlink_links()["L"])
    assert [str(L.linear(k)) for k in range(1, 5)] == [
        "2 3 4 2- 2", "3 4 1 1- 3 1 3-", "4 1 2 2- 2", "1 2 3"]
    with pytest.raises(ValidationError):
        to_surface_system(CComplexData(2, [clasp("x", (1, 1), (1, 2))]))


def test_linking_matrix_examples():
    L = to_surface_system(fourlink_links()["L"])
    assert linking_matrix(L) == tuple(tuple(0 if i == j else 1 for j in range(4)) for i in range(4))
    assert linking_matrix(SurfaceSystemData(3)) == ((0, 0, 0),) * 3
    s = SurfaceSystemData(2, ["2 2", "1 1"])
    assert linking_matrix(s)[0][1] == 2


def test_linking_inconsistency_is_reported():
    s = SurfaceSystemData(2, ["2", ""])
    assert any("linking inconsistency" in d for d in validate_system(s))
    with pytest.raises(ValidationError):
        linking_matrix(s)


def test_self_letter_and_range_are_reported():
    diags = validate_system(SurfaceSystemData(2, ["1 4", ""]))
    assert any("self-letter" in d for d in diags)
    assert any("out of range" in d for d in diags)


def test_strict_mode():
    bor = SurfaceSystemData(3, triples={(1, 2, 3): 1})
    assert validate_system(bor) == []
    assert any("triple points" in d for d in validate_system(bor, strict=True))
    # consistent totals but the letters cannot be matched into clasps
    s = SurfaceSystemData(2, ["2 2- 2", "1"])
    assert validate_system(s) == []
    assert validate_system(s, strict=True)


def test_m_vector_examples():
    links = fourlink_links()
    assert m_vector(to_surface_system(links["L"])).coeffs == (4, 3, 3, 3)
    assert m_vector(to_surface_system(links["Lprime"])).coeffs == (3, 3, 3, 3)
    assert m_vector(SurfaceSystemData(4)).is_zero()
    with pytest.raises(ValueError, match="needs at least three components"):
        m_vector(SurfaceSystemData(2))


def test_m_is_cyclically_symmetric():
    rng = random.Random(8)
    for _ in range(100):
        s = to_surface_system(random_ccomplex(rng, rng.choice((3, 4, 5)), rng.randint(0, 12)))
        for i in range(1, s.n + 1):
            for j in range(1, s.n + 1):
                for k in range(1, s.n + 1):
                    if len({i, j, k}) == 3:
                        m = m_coefficient(s, i, j, k)
                        assert m == m_coefficient(s, j, k, i) == m_coefficient(s, k, i, j)


def test_t_vector_examples():
    assert t_vector(to_surface_system(fourlink_links()["L"])).is_zero()
    bor = SurfaceSystemData(3, triples={(1, 2, 3): -1})
    assert t_vector(bor) == WedgeVector.basis(3, 1, 2, 3) * -1
    s = SurfaceSystemData(3, triples={(1, 2, 3): 5})
    assert s.t_coefficient(2, 1, 3) == -5
    assert SurfaceSystemData(3, triples={(2, 1, 3): 5}).t_coefficient(1, 2, 3) == -5


def test_finger_move_example():
    L = to_surface_system(fourlink_links()["L"])
    out = finger_move(L, 1, 0)
    assert out.linear(1) == word("3 2 4 2- 2")
    assert out.t_coefficient(1, 2, 3) == -1
    assert m_vector(out) - t_vector(out) == m_vector(L) - t_vector(L)
    assert finger_move(out, 1, 0) == L


def test_finger_move_rejects_equal_indices():
    s = SurfaceSystemData(3, ["2 2- 3", "1 1-", "1"])
    with pytest.raises(ValueError, match="use tube_move or reorder elsewhere"):
        finger_move(s, 1, 0)


def test_tube_move_examples():
    L = to_surface_system(fourlink_links()["L"])
    out = tube_move(L, 3, 2)
    assert out.linear(3) == word("4 1 2")
    assert m_vector(out) == m_vector(L)
    s = SurfaceSystemData(3, ["", "1 1-", ""])
    assert tube_move(s, 2, 0).linear(2) == LinearWord()
    with pytest.raises(ValueError, match="not an inverse pair"):
        tube_move(L, 3, 0)


def test_torus_sum_example_against_permutation_signs():
    lk = [[0 if i == j else 1 for j in range(4)] for i in range(4)]
    s = SurfaceSystemData(4, ["2 3 4", "1 3 4", "1 2 4", "1 2 3"])
    out = torus_sum(s, 2, 1, 1)
    expected = {}
    for i in range(1, 5):
        if i in (2, 1):
            continue
        key = tuple(sorted((i, 2, 1)))
        expected[key] = expected.get(key, 0) - lk[i - 1][0] * permutation_sign((i, 2, 1))
    for key in triples(4):
        assert out.t_coefficient(*key) == expected.get(key, 0)
    assert out.t_coefficient(1, 2, 3) == 1 and out.t_coefficient(1, 2, 4) == 1
    assert torus_sum(out, 2, 1, -1) == s
    zero = SurfaceSystemData(3)
    assert torus_sum(zero, 1, 2) == zero
    with pytest.raises(ValueError):
        torus_sum(s, 2, 2)


def test_rotation_changes_m_by_lattice_vector():
    rng = random.Random(21)
    for _ in range(150):
        s = to_surface_system(random_ccomplex(rng, rng.choice((3, 4, 5)), rng.randint(1, 12)))
        q = quotient_for(linking_matrix(s))
        k = rng.randint(1, s.n)
        r = rotate_word(s, k, 1)
        assert q.contains(m_vector(r) - m_vector(s))


def test_ordered_form_four_link_words():
    L = to_surface_system(fourlink_links()["L"])
    out, log = ordered_form(L)
    assert out.linear(3) == word("1 2 4")
    assert [str(out.linear(k)) for k in range(1, 5)] == ["2 3 4", "1 3 4", "1 2 4", "1 2 3"]
    assert m_vector(out) - t_vector(out) == m_vector(L) - t_vector(L)
    assert {m.kind for m in log} == {"finger", "tube"}


def test_ordered_form_identity_on_ordered_input():
    s = SurfaceSystemData(4, ["2 3 4", "1 3 4", "1 2 4", "1 2 3"])
    out, log = ordered_form(s)
    assert out == s and log == []


def replay(s, log):
    cur = s
    for move in log:
        before = cur
        if move.kind == "tube":
            cur = tube_move(cur, move.component, move.position)
            assert m_vector(cur) == m_vector(before)
        else:
            cur = finger_move(cur, move.component, move.position)
            old, new = before.triple_table(), cur.triple_table()
            changed = {k: new.get(k, 0) - old.get(k, 0) for k in set(old) | set(new)}
            assert {k: v for k, v in changed.items() if v} == dict(move.dt)
            assert len(move.dt) <= 1 and all(abs(v) == 1 for _, v in move.dt)
        assert m_vector(cur) - t_vector(cur) == m_vector(before) - t_vector(before)
    return cur


def block_form(s, k):
    lk = linking_matrix(s)
    out = []
    for i in range(1, s.n + 1):
        if i != k:
            out += [f"{i}" if lk[i - 1][k - 1] > 0 else f"{i}-"] * abs(lk[i - 1][k - 1])
    return " ".join(out)


def test_ordered_form_random_systems_and_replay():
    rng = random.Random(4)
    for _ in range(200):
        s = to_surface_system(random_ccomplex(rng, rng.choice((3, 4, 5)), rng.randint(0, 10)))
        out, log = ordered_form(s)
        for k in range(1, s.n + 1):
            assert str(out.linear(k)) == block_form(s, k)
        assert replay(s, log) == out
        assert m_vector(out) - t_vector(out) == m_vector(s) - t_vector(s)
        again, log2 = ordered_form(out)
        assert again == out and log2 == []


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10**6), st.integers(3, 5), st.integers(0, 12))
def test_moves_preserve_m_minus_t(seed, n, nclasps):
    rng = random.Random(seed)
    s = to_surface_system(random_ccomplex(rng, n, nclasps))
    for _ in range(6):
        k = rng.randint(1, n)
        w = s.linear(k)
        if len(w) < 2:
            continue
        p = rng.randrange(len(w) - 1)
        x, y = w[p], w[p + 1]
        before = m_vector(s) - t_vector(s)
        if x.index != y.index:
            s = finger_move(s, k, p)
        elif x.sign == -y.sign:
            s = tube_move(s, k, p)
        assert m_vector(s) - t_vector(s) == before
