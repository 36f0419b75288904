import pytest

from ortholoc.enumeration import enumerate_lattices
from ortholoc.errors import NotALattice, SizeCapExceeded
from ortholoc.lattice import (
    SublatticeKind,
    atomicity,
    build_lattice,
    cancellation_laws,
    check_lattice_axioms,
    complementedness,
    complements_of,
    find_forbidden_sublattice,
    interval_lattice,
    is_distributive,
    is_modular,
    lattice_from_covers,
)
from ortholoc.linear import enumerate_subspaces
from ortholoc.order import Poset, canonical_form, interval

import oracles
from conftest import leq_lists


def powerset(k):
    """Subsets of range(k) as bitmask elements, labelled by their members."""
    n = 1 << k
    cov = [(s, s | 1 << i) for s in range(n) for i in range(k) if not s >> i & 1]
    labels = ["{" + ",".join(str(i) for i in range(k) if s >> i & 1) + "}" for s in range(n)]
    return lattice_from_covers(n, cov, labels)


def test_powerset_meet_is_intersection_join_is_union():
    l = powerset(2)
    for a in range(4):
        for b in range(4):
            assert l.meet[a][b] == a & b
            assert l.join[a][b] == a | b


def test_antichain_is_not_a_lattice():
    with pytest.raises(NotALattice) as err:
        build_lattice(Poset.from_covers(2, []))
    assert err.value.witness == ((0, 1), "MissingMeet")


def test_missing_join_reported():
    # bottom with two maximal elements
    with pytest.raises(NotALattice) as err:
        build_lattice(Poset.from_covers(3, [(0, 1), (0, 2)]))
    assert err.value.witness == ((1, 2), "MissingJoin")


def test_tables_match_oracle(corpus6):
    for l in corpus6:
        meet, join = oracles.tables(leq_lists(l))
        assert [list(r) for r in l.meet] == meet
        assert [list(r) for r in l.join] == join
        assert check_lattice_axioms(l) is None


def test_distributivity_examples(lat):
    assert is_distributive(powerset(3)).holds
    m3 = lat("m3")
    assert tuple(is_distributive(m3)) == (False, (1, 2, 3))
    n5 = lat("n5")
    ok, (a, b, c) = is_distributive(n5)
    assert not ok
    assert (n5.label(a), n5.label(b), n5.label(c)) == ("b2", "b1", "c")
    assert n5.meet[a][n5.join[b][c]] == a != n5.join[n5.meet[a][b]][n5.meet[a][c]] == b


def test_modularity_examples(lat):
    assert is_modular(lat("m3")).holds
    assert not is_modular(lat("n5")).holds
    assert is_modular(lat("gf2_2")).holds


def test_cancellation_examples(lat):
    c = cancellation_laws(powerset(2))
    assert (c.cancellation, c.modular_cancellation) == (True, True)
    c = cancellation_laws(lat("m3"))
    assert (c.cancellation, c.modular_cancellation) == (False, True)
    c = cancellation_laws(lat("n5"))
    assert (c.cancellation, c.modular_cancellation) == (False, False)


def test_forbidden_sublattices(lat):
    n5 = lat("n5")
    w = find_forbidden_sublattice(n5, SublatticeKind.PENTAGON)
    assert w.elements == (0, 1, 2, 3, 4)
    assert find_forbidden_sublattice(lat("m3"), SublatticeKind.PENTAGON) is None
    assert find_forbidden_sublattice(lat("m3"), SublatticeKind.DIAMOND).elements == (0, 1, 2, 3, 4)
    g = lat("gf2_3")
    w = find_forbidden_sublattice(g, SublatticeKind.DIAMOND)
    lo, x, y, z, hi = w.elements
    assert lo == g.bottom
    m = enumerate_subspaces(2, 3)
    assert m.subspaces[hi].dim == 2 and all(m.subspaces[e].dim == 1 for e in (x, y, z))


def test_sublattice_witness_roles_realize_pattern(corpus7):
    for l in corpus7:
        for kind, pattern in ((SublatticeKind.PENTAGON, oracles.N5), (SublatticeKind.DIAMOND, oracles.M3)):
            w = find_forbidden_sublattice(l, kind)
            if w is None:
                continue
            e = w.elements
            assert all(l.le(e[i], e[j]) == pattern[i][j] for i in range(5) for j in range(5))


def test_complements(lat):
    m3 = lat("m3")
    assert complements_of(m3, 1).to_list() == [2, 3]
    assert complements_of(lat("chain3"), 1).to_list() == []
    for name in ("m3", "n5", "b2", "chain3"):
        l = lat(name)
        assert complements_of(l, l.bottom).to_list() == [l.top]


def test_complementedness(lat):
    assert tuple(complementedness(powerset(2))) == (True, True, True)
    assert complementedness(lat("div4")).sectionally is False
    assert tuple(complementedness(lat("gf2_2"))) == (True, True, True)


def test_atomicity(lat):
    assert tuple(atomicity(lat("div4"))) == (True, False, True)
    assert tuple(atomicity(lat("m3"))) == (True, True, True)
    assert tuple(atomicity(lat("gf3_2"))) == (True, True, True)


def test_enumeration_examples(lat):
    assert len(list(enumerate_lattices(1))) == 1
    five = list(enumerate_lattices(5))
    forms = {canonical_form(l.poset) for l in five}
    assert len(five) == 5
    assert canonical_form(lat("m3").poset) in forms and canonical_form(lat("n5").poset) in forms
    assert len(list(enumerate_lattices(6))) == 15


def test_enumeration_order_is_canonical():
    six = list(enumerate_lattices(6))
    keys = [canonical_form(l.poset) for l in six]
    assert keys == sorted(keys)


def test_enumeration_cap(monkeypatch):
    with pytest.raises(SizeCapExceeded):
        list(enumerate_lattices(9))
    monkeypatch.setenv("ORTHOLOC_CAP", "4")
    with pytest.raises(SizeCapExceeded):
        list(enumerate_lattices(5))


def test_distributive_lattices_have_unique_complements(corpus7):
    for l in corpus7:
        if is_distributive(l).holds:
            assert all(len(complements_of(l, a)) <= 1 for a in range(l.n))


def test_intervals_are_lattices(corpus6):
    for l in corpus6:
        for a in range(l.n):
            for b in range(l.n):
                if l.le(a, b):
                    sub = interval_lattice(l, a, b)
                    assert sub.n == len(interval(l.poset, a, b))
                    assert check_lattice_axioms(sub) is None


def test_subspace_lattices_modular_not_distributive():
    for q, n in ((2, 2), (3, 2), (2, 3)):
        l = enumerate_subspaces(q, n).lattice
        assert is_modular(l).holds and not is_distributive(l).holds
