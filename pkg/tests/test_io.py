import json

import pytest

from ortholoc.errors import HostMismatch, NotSeparating, ParseError
from ortholoc.fixtures import LATTICES, RELATIONS, build_lattice_fixture, build_relation_fixture, fixture_path
from ortholoc.io import (
    lattice_from_json,
    lattice_to_json,
    ortho_from_json,
    ortho_to_json,
    relation_from_json,
    relation_to_json,
    to_dot,
)
from ortholoc.ortho import validate_orthocomplementation


@pytest.mark.parametrize("name", LATTICES)
def test_lattice_fixture_round_trip(name):
    text = fixture_path(name).read_text(encoding="utf-8")
    assert lattice_to_json(lattice_from_json(text)) == text
    assert lattice_to_json(build_lattice_fixture(name)) == text


@pytest.mark.parametrize("name", sorted(RELATIONS))
def test_relation_fixture_round_trip(name):
    host = lattice_from_json(fixture_path(RELATIONS[name]).read_text(encoding="utf-8"))
    text = fixture_path(name).read_text(encoding="utf-8")
    assert relation_to_json(relation_from_json(text, host)) == text
    assert relation_to_json(build_relation_fixture(name, host)) == text


def test_relation_reader_symmetrizes(lat):
    b2 = lat("b2")
    r = relation_from_json('{"n": 4, "pairs": [[2, 1], [3, 0], [0, 0], [1, 0], [2, 0]]}', b2)
    assert r.pairs() == [(0, 0), (0, 1), (0, 2), (0, 3), (1, 2)]
    assert relation_to_json(r) == '{"n": 4, "pairs": [[0, 0], [0, 1], [0, 2], [0, 3], [1, 2]]}\n'


def test_writer_sorts_covers():
    l = lattice_from_json('{"n": 3, "covers": [[1, 2], [0, 1]]}')
    assert json.loads(lattice_to_json(l))["covers"] == [[0, 1], [1, 2]]
    assert "labels" not in json.loads(lattice_to_json(l))


def test_reader_takes_closure():
    l = lattice_from_json('{"n": 3, "covers": [[0, 1], [1, 2]]}')
    assert l.le(0, 2)


@pytest.mark.parametrize("text", [
    "not json",
    "[]",
    '{"covers": []}',
    '{"n": 0, "covers": []}',
    '{"n": 2, "covers": [[0, 2]]}',
    '{"n": 2, "covers": [[0, 1], [1, 0]]}',
    '{"n": 2, "covers": []}',
    '{"n": 2, "covers": [[0]]}',
    '{"n": 2, "labels": ["x"], "covers": [[0, 1]]}',
])
def test_bad_lattice_input(text):
    with pytest.raises(ParseError):
        lattice_from_json(text)


def test_relation_host_mismatch(lat):
    with pytest.raises(HostMismatch):
        relation_from_json('{"n": 3, "pairs": []}', lat("b2"))
    with pytest.raises(ParseError):
        relation_from_json('{"n": 4, "pairs": [[0, 9]]}', lat("b2"))


def test_ortho_json(lat):
    b2 = lat("b2")
    o = validate_orthocomplementation(b2, [3, 2, 1, 0])
    text = ortho_to_json(o)
    assert text == '{"n": 4, "psi": [3, 2, 1, 0]}\n'
    assert ortho_from_json(text, b2) == o
    with pytest.raises(NotSeparating):
        ortho_from_json('{"n": 3, "psi": [2, 1, 0]}', lat("chain3"))
    with pytest.raises(ParseError):
        ortho_from_json('{"n": 4, "psi": [3, 2, 1]}', b2)


@pytest.mark.parametrize("name,nodes,edges", [("m3", 5, 6), ("n5", 5, 5), ("chain2", 2, 1)])
def test_dot_export(lat, name, nodes, edges):
    dot = to_dot(lat(name).poset)
    assert dot.count(" -> ") == edges
    assert dot.count("[label=") == nodes
    assert dot.startswith("digraph") and dot.rstrip().endswith("}")
