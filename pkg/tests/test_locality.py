import random

import pytest

from ortholoc.errors import HostMismatch, NoGreatestElement, PreconditionFailed
from ortholoc.linear import enumerate_subspaces
from ortholoc.locality import (
    LocalityRelation,
    check_join_polar,
    classify,
    closedness_status,
    enumerate_strongly_separating,
    greatest_of_polar,
    intersect,
    is_lattice_locality,
    is_nondegenerate,
    is_poset_locality,
    is_separating,
    is_strongly_separating,
    kernel,
    meet_disjointness,
    passes_chain,
    poset_locality_conditions,
    polar,
    random_symmetric_relation,
)
from ortholoc.order import ElementSet, greatest
from ortholoc.ortho import G_from_ortho, enumerate_orthocomplementations

import oracles
from conftest import leq_lists
from test_lattice import powerset


def labels(l, s):
    return [l.label(x) for x in s]


def test_polar_examples(lat, rel):
    m3 = lat("m3")
    r = meet_disjointness(m3)
    assert polar(r, ElementSet(5, 0)).to_list() == list(range(5))
    assert labels(m3, polar(r, ElementSet.of(5, [1]))) == ["0", "b", "c"]
    b2 = lat("b2")
    assert labels(b2, polar(meet_disjointness(b2), ElementSet.of(4, [1]))) == ["0", "b"]


def test_kernel_examples(lat, rel):
    g = lat("gf2_2")
    assert g.index("<11>") in kernel(rel("gf2_2_form"))
    assert kernel(rel("b2_strong")).to_list() == [0]
    assert kernel(LocalityRelation.all_true(lat("m3"))).to_list() == list(range(5))


def test_poset_locality_examples(lat, rel):
    ps = powerset(2)
    assert is_poset_locality(LocalityRelation.from_predicate(ps, lambda a, b: a & b == 0))
    assert is_poset_locality(rel("gf2_2_meet"))
    m3 = lat("m3")
    only_ab = LocalityRelation.from_pairs(m3, [(1, 2)])
    c = poset_locality_conditions(only_ab)
    assert not c.holds
    # b is in a^T but 0 <= b is not
    assert c.ideal_witness == (1, 2, 0)


def test_lattice_locality_examples(lat, rel):
    g = lat("gf2_2")
    ok, (a, why, x, y) = is_lattice_locality(rel("gf2_2_meet"))
    assert not ok and why == "not join-closed"
    r = rel("gf2_2_meet")
    assert r.related(a, x) and r.related(a, y) and not r.related(a, g.join[x][y])
    assert g.join[x][y] == g.top
    assert is_lattice_locality(rel("gf3_2_form")).holds
    assert is_lattice_locality(LocalityRelation.all_true(lat("n5"))).holds


def test_join_polar_examples(lat, rel):
    assert check_join_polar(rel("b2_strong"))
    assert not check_join_polar(rel("gf2_2_meet"))
    assert check_join_polar(rel("gf2_3_paper"))
    with pytest.raises(PreconditionFailed):
        check_join_polar(LocalityRelation.from_pairs(lat("m3"), [(1, 2)]))


def test_separating_examples(lat, rel):
    m3 = rel("m3_meet")
    with pytest.raises(PreconditionFailed):
        is_separating(m3)
    assert tuple(is_separating(m3, relaxed=True)) == (False, ("no greatest", 1, 2, 3))
    assert is_separating(rel("gf2_3_paper")).holds
    assert is_separating(rel("b2_strong")).holds


def test_greatest_of_polar_examples(lat, rel):
    g = lat("gf2_3")
    r = rel("gf2_3_paper")
    assert g.label(greatest_of_polar(r, g.index("<010>"))) == "<100|001>"
    assert greatest_of_polar(rel("b2_strong"), 0) == 3
    with pytest.raises(NoGreatestElement) as err:
        greatest_of_polar(rel("m3_meet"), 1)
    assert err.value.witness == (2, 3)


def test_strongly_separating_examples(lat, rel):
    g = lat("gf2_3")
    r = rel("gf2_3_paper")
    ok, (a, grt) = is_strongly_separating(r)
    assert not ok
    assert g.label(grt) == "<100|001>"
    # the example's own element fails the same way
    e1 = g.index("<100>")
    assert g.label(greatest(g.poset, r.double_polars[e1])) == "<100|001>"
    assert is_strongly_separating(rel("b2_strong")).holds
    assert is_strongly_separating(rel("gf3_2_form")).holds
    with pytest.raises(PreconditionFailed):
        is_strongly_separating(rel("m3_meet"))


def test_nondegeneracy_examples(lat, rel):
    assert not is_nondegenerate(rel("gf2_2_form"))
    assert is_nondegenerate(rel("gf3_2_form"))
    for name in ("chain2", "m3", "n5"):
        assert not is_nondegenerate(LocalityRelation.all_true(lat(name)))


def test_closedness_examples(rel, corpus6):
    assert tuple(closedness_status(rel("b2_closedness"))) == (False, False, True)
    assert tuple(closedness_status(rel("b2_strong"))) == (True, True, True)
    for l in corpus6:
        for r in enumerate_strongly_separating(l):
            assert closedness_status(r).closedness


def test_intersections(lat, rel):
    r = rel("gf3_2_form")
    assert intersect(r, LocalityRelation.all_true(r.host)) == r
    assert intersect(r, r) == r
    locs = enumerate_strongly_separating(lat("gf3_2"))
    assert len(locs) == 3
    for i in range(3):
        for j in range(i + 1, 3):
            both = intersect(locs[i], locs[j])
            assert is_lattice_locality(both).holds
            # distinct pairings share no line pair, leaving only the 0-pairs
            assert all(both.rows[a] == 1 for a in range(1, 6))
            assert not is_strongly_separating(both).holds
    with pytest.raises(HostMismatch):
        intersect(r, rel("b2_strong"))


def test_enumeration_examples(lat, rel):
    assert enumerate_strongly_separating(lat("m3")) == []
    b2 = enumerate_strongly_separating(lat("b2"))
    assert b2 == [rel("b2_strong")]
    assert enumerate_strongly_separating(lat("chain3")) == []


def test_restriction_of_b2_relation_is_not_strongly_separating(rel):
    r = rel("chain3_restricted")
    c = classify(r)
    assert c.flags["lattice_locality"] and not c.flags["strongly_separating"]
    assert not c.flags["extreme"] and not c.flags["closedness"]
    # a^T = {0} so grt((a^T)^T) = 1, not a
    assert c.witnesses["strongly_separating"] == (1, 2)


def test_relaxed_m3_report(rel):
    c = classify(rel("m3_meet"), relaxed=True)
    assert not c.flags["lattice_locality"] and not c.flags["separating"]
    assert not c.flags["strongly_separating"]
    strict = classify(rel("m3_meet"))
    assert strict.witnesses["separating"] == ("precondition", "lattice_locality")


def test_every_false_flag_has_a_witness(corpus6):
    rng = random.Random(3)
    for l in corpus6:
        for _ in range(20):
            r = LocalityRelation(l, random_symmetric_relation(l.n, rng))
            for relaxed in (False, True):
                c = classify(r, relaxed=relaxed)
                assert all(name in c.witnesses for name, v in c.flags.items() if not v)


def test_element_lies_in_its_double_polar(corpus6):
    rng = random.Random(5)
    for l in corpus6:
        for _ in range(30):
            r = LocalityRelation(l, random_symmetric_relation(l.n, rng))
            assert all(r.double_polars[a] >> a & 1 for a in range(l.n))


def test_maxtop_identity(corpus6):
    # grt(a^T)^T == (a^T)^T whenever the greatest element exists
    rng = random.Random(11)
    for l in corpus6:
        rels = [G_from_ortho(o) for o in enumerate_orthocomplementations(l)]
        rels += [LocalityRelation(l, random_symmetric_relation(l.n, rng, 0.6)) for _ in range(30)]
        for r in rels:
            if not is_poset_locality(r):
                continue
            for a in range(l.n):
                g = greatest(l.poset, r.rows[a])
                if g is not None:
                    assert r.rows[g] == r.double_polars[a]


def test_locality_checks_match_oracle():
    from ortholoc.enumeration import lattice_corpus
    from ortholoc.locality import symmetric_relations

    for l in lattice_corpus(4):
        leq = leq_lists(l)
        for rows in symmetric_relations(l.n):
            r = LocalityRelation(l, rows)
            mat = [[bool(rows[i] >> j & 1) for j in range(l.n)] for i in range(l.n)]
            assert is_poset_locality(r) == oracles.poset_locality(leq, mat)
            assert passes_chain(r) == oracles.strongly_separating(leq, mat)
            for a in range(l.n):
                assert set(polar(r, ElementSet.of(l.n, [a]))) == oracles.polar(mat, {a})


def test_relation_symmetry_enforced(lat):
    with pytest.raises(ValueError):
        LocalityRelation(lat("b2"), (0b1111, 0b0101, 0b0001, 0b0001))
