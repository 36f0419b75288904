"""Bundled example structures.

Each lattice fixture is a JSON file named ``<name>.json``; each relation
fixture names its host lattice in :data:`RELATIONS`. :func:`build_lattice_fixture`
and :func:`build_relation_fixture` regenerate them from code, and
``python -m ortholoc.fixtures`` rewrites the files.
"""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from ..io import lattice_from_json, lattice_to_json, relation_from_json, relation_to_json
from ..lattice import Lattice, lattice_from_covers
from ..linear import enumerate_subspaces
from ..locality import LocalityRelation, meet_disjointness
from ..vector import BilinearForm, form_locality, paper_fixture, vs_to_lattice_locality

LATTICES = ("m3", "n5", "b2", "chain2", "chain3", "div4", "gf2_2", "gf3_2", "gf2_3")

# relation name -> host lattice name
RELATIONS = {
    "b2_strong": "b2",
    "b2_closedness": "b2",
    "chain3_restricted": "chain3",
    "m3_meet": "m3",
    "gf2_2_meet": "gf2_2",
    "gf2_2_form": "gf2_2",
    "gf3_2_form": "gf3_2",
    "gf2_3_paper": "gf2_3",
}


def build_lattice_fixture(name: str) -> Lattice:
    if name == "m3":
        return lattice_from_covers(5, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)], ["0", "a", "b", "c", "1"])
    if name == "n5":
        return lattice_from_covers(5, [(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)], ["0", "b1", "b2", "c", "1"])
    if name == "b2":
        return lattice_from_covers(4, [(0, 1), (0, 2), (1, 3), (2, 3)], ["0", "a", "b", "1"])
    if name == "chain2":
        return lattice_from_covers(2, [(0, 1)], ["0", "1"])
    if name == "chain3":
        return lattice_from_covers(3, [(0, 1), (1, 2)], ["0", "m", "1"])
    if name == "div4":
        return lattice_from_covers(3, [(0, 1), (1, 2)], ["1", "2", "4"])
    if name.startswith("gf"):
        q, n = (int(x) for x in name[2:].split("_"))
        return enumerate_subspaces(q, n).lattice
    raise KeyError(name)


def build_relation_fixture(name: str, host: Lattice | None = None) -> LocalityRelation:
    l = host if host is not None else build_lattice_fixture(RELATIONS[name])
    if name == "b2_strong":
        return LocalityRelation.from_pairs(l, [(0, x) for x in range(4)] + [(1, 2)])
    if name == "b2_closedness":
        return LocalityRelation.from_pairs(l, [(0, x) for x in range(4)])
    if name == "chain3_restricted":
        # b2_strong restricted to {0, a, 1}
        return LocalityRelation.from_pairs(l, [(0, x) for x in range(3)])
    if name in ("m3_meet", "gf2_2_meet"):
        return meet_disjointness(l)
    if name.endswith("_form"):
        q, n = (int(x) for x in name[2:5].split("_"))
        return _transfer(form_locality(BilinearForm.identity(q, n)), l)
    if name == "gf2_3_paper":
        return _transfer(paper_fixture(2), l)
    raise KeyError(name)


def _transfer(v, l: Lattice) -> LocalityRelation:
    r = vs_to_lattice_locality(v)
    return LocalityRelation(l, r.rows)


def fixture_path(name: str) -> Path:
    return Path(str(resources.files(__package__).joinpath(f"{name}.json")))


def load_lattice_fixture(name: str) -> Lattice:
    return lattice_from_json(fixture_path(name).read_text(encoding="utf-8"))


def load_relation_fixture(name: str, host: Lattice | None = None) -> LocalityRelation:
    l = host if host is not None else load_lattice_fixture(RELATIONS[name])
    return relation_from_json(fixture_path(name).read_text(encoding="utf-8"), l)


def write_all(directory: Path | None = None) -> list[Path]:
    directory = directory or Path(__file__).parent
    written = []
    for name in LATTICES:
        path = directory / f"{name}.json"
        path.write_text(lattice_to_json(build_lattice_fixture(name)), encoding="utf-8")
        written.append(path)
    for name in RELATIONS:
        path = directory / f"{name}.json"
        path.write_text(relation_to_json(build_relation_fixture(name)), encoding="utf-8")
        written.append(path)
    return written
