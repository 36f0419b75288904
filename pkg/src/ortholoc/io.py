"""JSON interchange for lattices, relations and orthocomplementations.

Writers are deterministic (sorted pairs, one line, trailing newline), so a
write-read-write cycle is byte-identical.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .errors import HostMismatch, NotALattice, OrtholocError, ParseError
from .lattice import Lattice, build_lattice
from .locality import LocalityRelation
from .order import Poset, covers
from .ortho import Orthocomplementation, validate_orthocomplementation


def _dump(obj: Any) -> str:
    return json.dumps(obj, ensure_ascii=False) + "\n"


def _load(text: str) -> dict:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ParseError("top-level JSON value must be an object")
    return data


def _int(data: dict, key: str) -> int:
    value = data.get(key)
    if not isinstance(value, int) or isinstance(value, bool):
        raise ParseError(f"{key!r} must be an integer")
    return value


def _pairs(data: dict, key: str, n: int) -> list[tuple[int, int]]:
    raw = data.get(key, [])
    if not isinstance(raw, list):
        raise ParseError(f"{key!r} must be a list of pairs")
    out = []
    for item in raw:
        if (
            not isinstance(item, list)
            or len(item) != 2
            or not all(isinstance(x, int) and not isinstance(x, bool) for x in item)
        ):
            raise ParseError(f"bad pair {item!r} in {key!r}")
        a, b = item
        if not (0 <= a < n and 0 <= b < n):
            raise ParseError(f"pair {item!r} outside 0..{n - 1}")
        out.append((a, b))
    return out


def poset_to_json(p: Poset) -> str:
    obj: dict[str, Any] = {"n": p.n}
    if p.labels:
        obj["labels"] = list(p.labels)
    obj["covers"] = [list(c) for c in sorted(covers(p))]
    return _dump(obj)


def lattice_to_json(l: Lattice) -> str:
    return poset_to_json(l.poset)


def poset_from_json(text: str) -> Poset:
    data = _load(text)
    n = _int(data, "n")
    if n < 1:
        raise ParseError("n must be positive")
    labels = data.get("labels")
    if labels is not None and (not isinstance(labels, list) or len(labels) != n or not all(isinstance(s, str) for s in labels)):
        raise ParseError("labels must be a list of n strings")
    try:
        return Poset.from_covers(n, _pairs(data, "covers", n), labels)
    except OrtholocError as exc:
        raise ParseError(f"covers do not define a partial order: {exc}") from exc


def lattice_from_json(text: str) -> Lattice:
    p = poset_from_json(text)
    try:
        return build_lattice(p)
    except NotALattice as exc:
        raise ParseError(f"not a lattice: {exc}") from exc


def relation_to_json(r: LocalityRelation) -> str:
    return _dump({"n": r.n, "pairs": [list(pr) for pr in r.pairs()]})


def relation_from_json(text: str, host) -> LocalityRelation:
    data = _load(text)
    n = _int(data, "n")
    if n != host.n:
        raise HostMismatch(f"relation has n={n} but the lattice has {host.n} elements", witness=(n, host.n))
    return LocalityRelation.from_pairs(host, _pairs(data, "pairs", n))


def ortho_to_json(o: Orthocomplementation) -> str:
    return _dump({"n": len(o.psi), "psi": list(o.psi)})


def ortho_from_json(text: str, l: Lattice) -> Orthocomplementation:
    data = _load(text)
    n = _int(data, "n")
    psi = data.get("psi")
    if n != l.n or not isinstance(psi, list) or len(psi) != n:
        raise ParseError("psi must list one image per lattice element")
    if not all(isinstance(x, int) and 0 <= x < n for x in psi):
        raise ParseError("psi entries must be element indices")
    return validate_orthocomplementation(l, psi)


def read_text(path: str | Path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc


def load_lattice(path: str | Path) -> Lattice:
    return lattice_from_json(read_text(path))


def load_relation(path: str | Path, host) -> LocalityRelation:
    return relation_from_json(read_text(path), host)


def report_json(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False) + "\n"


def to_dot(p: Poset, name: str = "hasse") -> str:
    """Graphviz digraph of the cover relation, nodes grouped by height."""
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    by_height: dict[int, list[int]] = {}
    for i in range(p.n):
        by_height.setdefault(p.heights[i], []).append(i)
    for i in range(p.n):
        lines.append(f'  n{i} [label={json.dumps(p.label(i), ensure_ascii=False)}];')
    for h in sorted(by_height):
        members = " ".join(f"n{i};" for i in by_height[h])
        lines.append(f"  {{ rank=same; {members} }}")
    for lo, hi in sorted(covers(p)):
        lines.append(f"  n{lo} -> n{hi};")
    lines.append("}")
    return "\n".join(lines) + "\n"
