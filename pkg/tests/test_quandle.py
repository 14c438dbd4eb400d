from math import factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qhk.alexander import phi_family, takasaki
from qhk.config import Limits, ResourceLimitError
from qhk.corpus import quandle_corpus
from qhk.quandle import (
    QuandleAxiomError,
    alexander,
    base_point,
    conjugation_class,
    cycle_string,
    dihedral,
    inn_group,
    is_connected,
    is_quasigroup,
    orbits,
    perm_group,
    perm_inv,
    perm_mul,
    perm_order,
    stabilizer,
    symmetric_generators,
    transposition_quandle,
    trivial_quandle,
    type_of,
    validate,
)

perms = st.integers(1, 6).flatmap(lambda n: st.permutations(list(range(n))).map(tuple))


def test_dihedral_r3():
    q = dihedral(3)
    assert q.table == ((0, 2, 1), (2, 1, 0), (1, 0, 2))
    assert is_connected(q) and is_quasigroup(q)
    assert type_of(q) == 2
    assert inn_group(q).order == 6


def test_trivial_and_r4():
    q = trivial_quandle(3)
    assert len(orbits(q)) == 3 and not is_quasigroup(q) and type_of(q) == 1
    assert inn_group(q).order == 1
    r4 = dihedral(4)
    assert orbits(r4) == [[0, 2], [1, 3]]
    assert not is_quasigroup(r4)


def test_axiom_witnesses():
    with pytest.raises(QuandleAxiomError) as e:
        validate([[1, 0], [0, 1]])
    assert e.value.axiom == "I" and e.value.witness == (0,)
    with pytest.raises(QuandleAxiomError) as e:
        validate([[0, 0], [0, 1]])
    assert e.value.axiom == "II"
    # idempotent and column-bijective but not self-distributive
    table = [[0, 2, 1, 1], [2, 1, 0, 0], [1, 0, 2, 3], [3, 3, 3, 2]]
    with pytest.raises(QuandleAxiomError):
        validate(table)
    with pytest.raises(ValueError):
        validate([[0, 5], [1, 1]])


def test_transposition_quandles():
    for n, size in [(3, 3), (4, 6), (5, 10)]:
        q = transposition_quandle(n)
        assert q.order == size
        assert is_connected(q)
        assert inn_group(q).order == factorial(n)


def test_conjugation_of_s3_matches_r3():
    q = transposition_quandle(3)
    # any connected order-3 quandle is R3 up to relabelling
    assert type_of(q) == 2 and is_quasigroup(q)


def test_alexander_constructions():
    q = alexander(phi_family(2, 3))
    assert q.order == 4 and is_connected(q)
    assert type_of(q) == 3
    G = inn_group(q)
    assert G.order == 12
    assert stabilizer(G, base_point(q)).order == 3
    t3 = alexander(takasaki((3,)))
    assert t3.table == dihedral(3).table


def test_perm_group_limit():
    with pytest.raises(ResourceLimitError):
        perm_group(symmetric_generators(6), 6, Limits(max_group_order=100))


@given(perms, st.data())
def test_perm_algebra(p, data):
    q = data.draw(st.permutations(list(range(len(p)))).map(tuple))
    ident = tuple(range(len(p)))
    assert perm_mul(p, perm_inv(p)) == ident
    assert perm_inv(perm_mul(p, q)) == perm_mul(perm_inv(q), perm_inv(p))
    k = perm_order(p)
    r = ident
    for _ in range(k):
        r = perm_mul(r, p)
    assert r == ident


def test_cycle_string():
    assert cycle_string((1, 0, 2)) == "(0 1)"
    assert cycle_string((0, 1)) == "()"


@pytest.mark.parametrize("entry", quandle_corpus(8), ids=lambda e: e.name)
def test_orbit_stabilizer(entry):
    q = entry.quandle
    G = inn_group(q)
    for orb in orbits(q):
        x = orb[0]
        assert G.order == len(orb) * stabilizer(G, x).order
    # Type is the exponent of the group generated by the columns' orders
    assert type_of(q) <= G.exponent()
    assert G.exponent() % type_of(q) == 0


def test_conjugation_class_needs_matching_degree():
    with pytest.raises(ValueError):
        conjugation_class([(1, 0)], (0, 1, 2))
