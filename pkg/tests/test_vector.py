import random
from itertools import permutations, product

import pytest

from ortholoc.errors import NotABasis, PreconditionFailed
from ortholoc.linear import Subspace, enumerate_subspaces, index_vector, rank
from ortholoc.locality import LocalityRelation, is_strongly_separating
from ortholoc.ortho import G_from_ortho
from ortholoc.vector import (
    BilinearForm,
    VectorLocality,
    all_form_localities,
    check_prop_VGV2,
    classify_plane_orthocomplementations,
    count_locality_bases,
    default_battery,
    disjoint_support,
    fixed_point_free_involutions,
    form_locality,
    is_locality_basis,
    lattice_to_vs_locality,
    locality_basis_gram_schmidt,
    paper_fixture,
    roundtrip_vs_lattice,
    vs_nondegeneracy,
    vs_to_lattice_locality,
)

import oracles

BATTERY = [(2, 2), (3, 2), (2, 3), (5, 2)]


def identity(q, n):
    return form_locality(BilinearForm.identity(q, n))


def label_pairs(r):
    l = r.host
    return sorted((l.label(a), l.label(b)) for a, b in r.pairs() if a != l.bottom)


def test_form_locality_examples():
    assert identity(3, 2).related((1, 1), (1, 2))
    assert identity(2, 2).related((1, 1), (1, 1))
    z = form_locality(BilinearForm.zero(3, 2))
    assert all(row == (1 << 9) - 1 for row in z.rows)


def test_form_locality_matches_dot_product():
    for q, n in BATTERY:
        v = identity(q, n)
        for a, b in product(oracles.vectors(q, n), repeat=2):
            assert v.related(a, b) == (oracles.dot(a, b, q) == 0)


def test_non_symmetric_form_is_symmetrized():
    f = BilinearForm(3, 2, ((0, 1), (0, 0)))
    v = form_locality(f)
    for a, b in product(oracles.vectors(3, 2), repeat=2):
        assert v.related(a, b) == (f(a, b) == 0 and f(b, a) == 0)


def test_vs_to_lattice_examples(lat, rel):
    r = vs_to_lattice_locality(identity(3, 2))
    assert label_pairs(r) == [("<01>", "<10>"), ("<11>", "<12>")]
    zero = vs_to_lattice_locality(form_locality(BilinearForm.zero(3, 2)))
    assert zero == LocalityRelation.all_true(zero.host)


def test_fixture_polar_table(lat):
    m = enumerate_subspaces(2, 3)
    l = m.lattice
    r = vs_to_lattice_locality(paper_fixture(), m)

    def pol(*vs):
        return sorted(l.label(b) for b in range(l.n) if r.rows[m.index_of_span(vs)] >> b & 1)

    e1, e2, e3 = (1, 0, 0), (0, 1, 0), (0, 0, 1)
    assert pol(e1) == ["0", "<010>"]
    # over F_2 the plane <e1, e3> also contains the line <e1 + e3>
    assert pol(e2) == ["0", "<001>", "<100>", "<100|001>", "<101>"]
    assert pol(e3) == ["0", "<010>"]
    assert pol(e1, e3) == ["0", "<010>"]
    assert r.rows[m.zero] == l.full_mask
    others = [s for s in m.subspaces if s.dim and s.basis not in {
        Subspace.span([x], 2, 3).basis for x in (e1, e2, e3, (1, 0, 1))
    } and s.basis != Subspace.span([e1, e3], 2, 3).basis]
    assert all(r.rows[m.index_of(s)] == 1 << m.zero for s in others)


def test_lattice_to_vs_examples(rel):
    m = enumerate_subspaces(3, 2)
    r = vs_to_lattice_locality(identity(3, 2), m)
    assert lattice_to_vs_locality(r, m).rows == identity(3, 2).rows
    assert lattice_to_vs_locality(LocalityRelation.all_true(m.lattice), m).rows == ((1 << 9) - 1,) * 9
    m3 = enumerate_subspaces(2, 3)
    assert lattice_to_vs_locality(rel("gf2_3_paper", m3.lattice), m3).rows == paper_fixture().rows
    with pytest.raises(PreconditionFailed):
        lattice_to_vs_locality(rel("gf2_2_meet", enumerate_subspaces(2, 2).lattice), enumerate_subspaces(2, 2))


@pytest.mark.parametrize("q,n", BATTERY)
def test_roundtrips_over_battery(q, n):
    rep = roundtrip_vs_lattice(enumerate_subspaces(q, n))
    assert rep.ok, rep.failures[:3]
    assert rep.vector_checked >= 2


def test_nondegeneracy_examples():
    assert tuple(vs_nondegeneracy(identity(3, 2))) == (True, True)
    assert tuple(vs_nondegeneracy(identity(2, 2))) == (False, False)
    assert identity(2, 2).isotropic == ((1, 1),)
    ds = disjoint_support(2, 2)
    assert tuple(vs_nondegeneracy(ds)) == (True, False)
    assert ds.polar_mask(1 << 3) == 1  # <(1,1)>^T = 0


def test_prop_vgv2_examples():
    rep = check_prop_VGV2(identity(3, 2))
    assert rep.clause_a and rep.clause_b and rep.strongly
    m = enumerate_subspaces(3, 2)
    named = {m.lattice.label(a): m.lattice.label(b) for a, b in enumerate(rep.orthocomplementation.psi)}
    assert named["<10>"] == "<01>" and named["<11>"] == "<12>"
    rep = check_prop_VGV2(identity(2, 2))
    assert rep.clause_a and rep.clause_b and not rep.separating_property
    rep = check_prop_VGV2(paper_fixture())
    assert rep.nondegenerate and not rep.strongly and rep.clause_a and rep.clause_b


@pytest.mark.parametrize("q,n", BATTERY)
def test_prop_vgv2_over_battery(q, n):
    for v in default_battery(enumerate_subspaces(q, n)):
        rep = check_prop_VGV2(v)
        assert rep.clause_a and rep.clause_b


def test_gram_schmidt_examples():
    v = identity(3, 2)
    assert locality_basis_gram_schmidt(v, [(1, 0), (0, 1)]) == [(1, 0), (0, 1)]
    assert locality_basis_gram_schmidt(v, [(1, 1), (0, 1)]) == [(1, 1), (1, 2)]
    with pytest.raises(PreconditionFailed):
        locality_basis_gram_schmidt(identity(2, 2), [(1, 0), (0, 1)])
    with pytest.raises(NotABasis):
        locality_basis_gram_schmidt(v, [(1, 1), (2, 2)])


def test_is_locality_basis_examples():
    v = identity(3, 2)
    assert is_locality_basis(v, [(1, 0), (0, 1)])
    assert not is_locality_basis(v, [(1, 0), (1, 1)])
    assert is_locality_basis(identity(3, 1), [(1,)])


def test_plane_orthocomplementations():
    counts = [len(classify_plane_orthocomplementations(q)) for q in (2, 3, 5)]
    assert counts == [0, 3, 15]
    assert [fixed_point_free_involutions(k) for k in (3, 4, 6)] == [oracles.involution_count_without_fixed_points(k) for k in (3, 4, 6)]
    m = enumerate_subspaces(3, 2)
    pairs = set()
    for o in classify_plane_orthocomplementations(3):
        assert is_strongly_separating(G_from_ortho(o)).holds
        pairs.add(frozenset(frozenset((a, o.psi[a])) for a in range(1, 5)))
    assert len(pairs) == 3


def test_locality_basis_count_matches_brute_force():
    # observational only: there is no closed-form value to check against
    assert count_locality_bases(identity(3, 2)) == 2
    for q in (3, 5, 7):
        lines = [v for v in oracles.vectors(q, 2) if any(v) and next(x for x in v if x) == 1]
        expected = sum(
            1 for i, u in enumerate(lines) for w in lines[i + 1:]
            if oracles.dot(u, w, q) == 0 and u[0] * w[1] != u[1] * w[0]
        )
        assert count_locality_bases(identity(q, 2)) == expected


def subsets_polars_are_subspaces(v, subsets):
    q, n = v.q, v.n
    for mask in subsets:
        pol = v.polar_mask(mask)
        vecs = [index_vector(i, q, n) for i in range(q ** n) if pol >> i & 1]
        assert oracles.span_close(vecs, q) == frozenset(vecs)


@pytest.mark.parametrize("q,n", [(2, 2), (3, 2), (2, 3)])
def test_polars_of_all_subsets_are_subspaces(q, n):
    for v in default_battery(enumerate_subspaces(q, n)):
        subsets_polars_are_subspaces(v, range(1 << q ** n))


def test_polars_of_random_subsets_are_subspaces():
    rng = random.Random(52)
    for v in default_battery(enumerate_subspaces(5, 2))[:20]:
        subsets_polars_are_subspaces(v, (rng.getrandbits(25) for _ in range(500)))


def test_invalid_vector_relation_rejected():
    def related(u, w):
        if not any(u) or not any(w):
            return True
        return {u, w} in ({(1, 0), (0, 1)}, {(1, 0), (1, 1)})

    with pytest.raises(ValueError):
        VectorLocality.from_predicate(2, 2, related)
