import pytest
from hypothesis import given, settings, strategies as st

from qschubert.intlin import IntLattice, smith_normal_form
from qschubert.rootsys import RootVec, WeightVec, build_root_system
from qschubert.twist import (
    Bicharacter, ExponentScalar, RelationsLattice, commutation_character, torsion_free_check,
    torsion_generators, torus_character,
)
from qschubert.weyl import from_word, longest_element

from conftest import TORSION_RECORDS


def _bichar(support, params, entries):
    s = len(support)
    m = 1 + len(params)
    table = [[(0,) * m for _ in range(s)] for _ in range(s)]
    pos = {i: a for a, i in enumerate(support)}
    for (i, j), e in entries.items():
        table[pos[i]][pos[j]] = tuple(e)
        table[pos[j]][pos[i]] = tuple(-x for x in e)
    return Bicharacter(tuple(support), tuple(params), tuple(map(tuple, table)))


def test_scalar_arithmetic():
    a = ExponentScalar((1, 2))
    b = ExponentScalar((0, -2))
    assert (a + b).exps == (1, 0)
    assert (a - a).is_one()
    assert (a * 3).exps == (3, 6)
    assert ExponentScalar((0, 4)).is_one(RelationsLattice.from_vectors([[0, 2]], 2))
    assert a.format(["p"]) == "q*p^2"
    with pytest.raises(ValueError):
        a + ExponentScalar((1,))


def test_relations_cannot_involve_q():
    with pytest.raises(ValueError):
        RelationsLattice.from_vectors([[1, 0]], 2)
    with pytest.raises(ValueError):
        RelationsLattice.from_vectors([[0, 1, 0]], 2)


def test_bicharacter_validation():
    with pytest.raises(ValueError):
        Bicharacter((1, 2), (), (((0,), (1,)), ((1,), (0,))))      # not skew
    with pytest.raises(ValueError):
        Bicharacter((1, 2), (), (((1,), (0,)), ((0,), (0,))))      # diagonal
    with pytest.raises(ValueError):
        Bicharacter((2, 1), (), (((0,), (0,)), ((0,), (0,))))      # unsorted support


def test_from_cocycle_is_skew():
    p = [[(0, 1), (0, 3)], [(0, -1), (0, 0)]]
    r = Bicharacter.from_cocycle((1, 2), ("p",), p)
    assert r.table[0][1] == (0, 4) and r.table[1][0] == (0, -4)


def test_eval_outside_support_rejected():
    r = Bicharacter.trivial((1,))
    with pytest.raises(ValueError):
        r.eval((1, 1), (1, 0))
    assert r.on_support((1, 2)).eval((1, 1), (1, 0)).is_one()


@pytest.mark.parametrize("rec", TORSION_RECORDS, ids=lambda r: r["name"])
def test_torsion_matches_hand_records(rec):
    rs = build_root_system(rec["type"])
    sup = sorted(set(rec["word"]))
    r = _bichar(sup, rec["params"], rec["r"])
    gens = [g.exps for g in torsion_generators(rs, rec["word"], r)]
    assert gens == rec["generators"]
    m = r.m
    rel = RelationsLattice.from_vectors(rec["relations"], m)
    # quotient (gens + rel) / rel: Smith form of rel expressed in a basis of gens + rel
    total = IntLattice.from_generators(gens + list(rec["relations"]), m)
    coords = [[c for c in _coords_in(total, v)] for v in rec["relations"]]
    divisors = [d for d in (smith_normal_form(coords)[0] if coords else []) if d > 1]
    assert divisors == rec["quotient_divisors"]
    assert torsion_free_check(rs, rec["word"], r, rel) == rec["torsion_free"]


def _coords_in(lat, v):
    """Coordinates of v in the Hermite basis of lat (back substitution)."""
    v = list(v)
    out = []
    for row in lat.basis:
        j = next(k for k, x in enumerate(row) if x)
        q, rem = divmod(v[j], row[j])
        assert rem == 0
        out.append(q)
        v = [a - q * b for a, b in zip(v, row)]
    assert not any(v)
    return out


@pytest.mark.parametrize("name", ["A2", "B2", "G2", "A3"])
def test_generic_parameters_are_torsion_free(name):
    rs = build_root_system(name)
    word = longest_element(rs).reduced_word
    sup = sorted(set(word))
    r = _bichar(sup, ("p",), {(sup[0], sup[1]): (0, 1)})
    assert torsion_free_check(rs, word, r)
    assert torsion_free_check(rs, word, Bicharacter.trivial(sup))


def test_torsion_check_requires_support():
    rs = build_root_system("A2")
    with pytest.raises(ValueError):
        torsion_free_check(rs, (1, 2), Bicharacter.trivial((1,)))


def test_commutation_character_trivial_r_matches_pairing():
    rs = build_root_system("A2")
    w = longest_element(rs)
    y = from_word(rs, (1,))
    mu = rs.fundamental_weight(0)
    chi = commutation_character(rs, w, y, mu, Bicharacter.trivial((1, 2)))
    total = w.act(mu) + y.act(mu)
    for i in range(2):
        assert chi(rs.simple_root(i)).exps == (-int(rs.pairing(total, rs.simple_root(i))),)


skew_tables = st.integers(2, 3).flatmap(lambda n: st.tuples(
    st.just(n),
    st.lists(st.lists(st.integers(-4, 4), min_size=2, max_size=2), min_size=n * (n - 1) // 2,
             max_size=n * (n - 1) // 2)))


def _random_bichar(n, uppers):
    table = [[(0, 0)] * n for _ in range(n)]
    k = 0
    for i in range(n):
        for j in range(i + 1, n):
            table[i][j] = tuple(uppers[k])
            table[j][i] = tuple(-x for x in uppers[k])
            k += 1
    return Bicharacter(tuple(range(1, n + 1)), ("p",), tuple(map(tuple, table)))


vec3 = st.lists(st.integers(-5, 5), min_size=3, max_size=3)


@settings(max_examples=1000, deadline=None)
@given(skew_tables, vec3, vec3, vec3)
def test_bicharacter_skew_and_bimultiplicative(tab, a, b, c):
    n, uppers = tab
    r = _random_bichar(n, uppers)
    a, b, c = a[:n], b[:n], c[:n]
    assert r.eval(a, b) == -r.eval(b, a)
    assert r.eval(a, a).is_one()
    ab = [x + y for x, y in zip(a, b)]
    assert r.eval(ab, c) == r.eval(a, c) + r.eval(b, c)


@settings(max_examples=1000, deadline=None)
@given(skew_tables, vec3, vec3, vec3, vec3, st.sampled_from(["A3", "B3", "C3"]))
def test_torus_character_is_additive(tab, m1, m2, t1, t2, name):
    _, uppers = tab
    rs = build_root_system(name)
    r = _random_bichar(3, (uppers + [[0, 0]] * 3)[:3])
    w = longest_element(rs)
    mu1, mu2 = WeightVec(m1), WeightVec(m2)
    th1, th2 = RootVec(t1), RootVec(t2)
    lhs = torus_character(rs, w, mu1 + mu2, th1 + th2, r)
    rhs = torus_character(rs, w, mu1, th1, r) + torus_character(rs, w, mu2, th2, r)
    assert lhs == rhs
