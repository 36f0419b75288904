"""``ortholoc`` command-line front end.

Exit codes: 0 when everything requested holds, 1 when a checked property
fails, 2 for bad input (unreadable files, caps, preconditions).
"""

from __future__ import annotations

import argparse
import json
import sys
from multiprocessing import Pool
from pathlib import Path

from . import _caps
from .appendix import appendix_check
from .enumeration import enumerate_lattices
from .errors import OrtholocError
from .io import lattice_from_json, lattice_to_json, load_lattice, load_relation, relation_to_json, report_json, to_dot
from .lattice import (
    Lattice,
    SublatticeKind,
    atomicity,
    cancellation_laws,
    complementedness,
    find_forbidden_sublattice,
    is_distributive,
    is_modular,
)
from .linear import enumerate_subspaces, index_vector
from .locality import classify, kernel
from .ortho import enumerate_orthocomplementations, lattice_key, roundtrip_check
from .vector import (
    BilinearForm,
    check_prop_VGV2,
    form_locality,
    locality_basis_gram_schmidt,
    paper_fixture,
    vs_nondegeneracy,
    vs_to_lattice_locality,
)


def _labelled(l: Lattice, w):
    """Replace element indices in a witness by labels."""
    if isinstance(w, bool) or w is None:
        return w
    if isinstance(w, int):
        return l.label(w) if 0 <= w < l.n else w
    if isinstance(w, (tuple, list)):
        return [_labelled(l, x) for x in w]
    return w


def _plain(w):
    if isinstance(w, (tuple, list)):
        return [_plain(x) for x in w]
    return w


# check -----------------------------------------------------------------------

def _sublattice_free(kind):
    def run(l):
        found = find_forbidden_sublattice(l, kind)
        return found is None, None if found is None else found.elements
    return run


PROPERTIES = {
    "distributive": lambda l: tuple(is_distributive(l)),
    "modular": lambda l: tuple(is_modular(l)),
    "cancellation": lambda l: (lambda c: (c.cancellation, c.witness))(cancellation_laws(l)),
    "modular_cancellation": lambda l: (lambda c: (c.modular_cancellation, c.modular_witness))(cancellation_laws(l)),
    "complemented": lambda l: (complementedness(l).complemented, None),
    "sectionally_complemented": lambda l: (complementedness(l).sectionally, None),
    "relatively_complemented": lambda l: (complementedness(l).relatively, None),
    "atomic": lambda l: (atomicity(l).atomic, None),
    "atomistic": lambda l: (atomicity(l).atomistic, None),
    "complete": lambda l: (atomicity(l).complete, None),
    "pentagon_free": _sublattice_free(SublatticeKind.PENTAGON),
    "diamond_free": _sublattice_free(SublatticeKind.DIAMOND),
}


def cmd_check(args) -> tuple[dict, int]:
    l = load_lattice(args.lattice)
    names = list(PROPERTIES) if args.properties == "all" else [s.strip() for s in args.properties.split(",") if s.strip()]
    unknown = [s for s in names if s not in PROPERTIES]
    if unknown:
        raise OrtholocError(f"unknown properties: {', '.join(unknown)}; choose from {', '.join(PROPERTIES)}")
    results = {}
    for name in names:
        holds, witness = PROPERTIES[name](l)
        results[name] = {"holds": holds, "witness": _plain(witness), "witness_labels": _labelled(l, witness)}
    ok = all(r["holds"] for r in results.values())
    return {"command": "check", "n": l.n, "properties": results, "ok": ok}, 0 if ok else 1


def _text_check(rep: dict) -> str:
    lines = []
    for name, r in rep["properties"].items():
        tail = "" if r["holds"] or r["witness_labels"] is None else f"  witness {r['witness_labels']}"
        lines.append(f"{name}: {'yes' if r['holds'] else 'no'}{tail}")
    return "\n".join(lines)


# locality --------------------------------------------------------------------

def _polar_table(r) -> dict:
    l = r.host
    return {l.label(a): [l.label(b) for b in range(l.n) if r.rows[a] >> b & 1] for a in range(l.n)}


def cmd_locality(args) -> tuple[dict, int]:
    l = load_lattice(args.lattice)
    r = load_relation(args.relation, l)
    c = classify(r, relaxed=args.relaxed)
    body = c.to_json()
    body["witness_labels"] = {k: _labelled(l, v) for k, v in body["witnesses"].items()}
    body["kernel"] = [l.label(a) for a in kernel(r)]
    body["polars"] = _polar_table(r)
    ok = all(c.flags.values())
    return {"command": "locality", **body, "ok": ok}, 0 if ok else 1


def _text_locality(rep: dict) -> str:
    lines = [f"{k}: {'yes' if v else 'no'}" + (f"  witness {rep['witness_labels'][k]}" if k in rep["witness_labels"] else "") for k, v in rep["flags"].items()]
    lines.append("polars:")
    lines += [f"  {a}^T = {{{', '.join(bs)}}}" for a, bs in rep["polars"].items()]
    return "\n".join(lines)


# correspond ------------------------------------------------------------------

def cmd_correspond(args) -> tuple[dict, int]:
    l = load_lattice(args.lattice)
    rep = roundtrip_check(l)
    body = {"command": "correspond", **rep.to_json(), "failures": _plain(rep.failures)}
    ok = rep.roundtrip_ok
    if args.appendix:
        app = appendix_check(l)
        body["appendix"] = app.to_json()
        ok = ok and app.ok
    body["ok"] = ok
    return body, 0 if ok else 1


def _text_correspond(rep: dict) -> str:
    lines = [
        f"strongly separating localities: {rep['num_strongly_separating']}",
        f"orthocomplementations: {rep['num_orthocomplementations']}",
        f"round trip: {'ok' if rep['roundtrip_ok'] else 'FAILED'}",
    ]
    if "appendix" in rep:
        lines += [f"appendix {k}: {v}" for k, v in rep["appendix"].items()]
    return "\n".join(lines)


# enumerate -------------------------------------------------------------------

def _enumeration_entry(job: tuple[str, bool]) -> dict:
    text, roundtrip = job
    l = lattice_from_json(text)
    at = atomicity(l)
    entry = {
        "n": l.n,
        "lattice": lattice_key(l),
        "covers": json.loads(text)["covers"],
        "distributive": is_distributive(l).holds,
        "modular": is_modular(l).holds,
        "complemented": complementedness(l).complemented,
        "atomistic": at.atomistic,
    }
    if roundtrip:
        rep = roundtrip_check(l)
        entry.update(
            num_strongly_separating=rep.num_strongly_separating,
            num_orthocomplementations=rep.num_orthocomplementations,
            roundtrip_ok=rep.roundtrip_ok,
        )
    else:
        entry.update(num_orthocomplementations=len(enumerate_orthocomplementations(l)), roundtrip_ok=None)
    return entry


def cmd_enumerate(args) -> tuple[dict, int]:
    max_size = args.max_size
    if max_size is None:
        raise OrtholocError("enumerate needs --max-size")
    _caps.require(max_size, _caps.enumeration_cap(), "--max-size")
    jobs = [(lattice_to_json(l), args.roundtrip) for n in range(1, max_size + 1) for l in enumerate_lattices(n)]
    if args.jobs > 1:
        with Pool(args.jobs) as pool:
            entries = pool.map(_enumeration_entry, jobs)
    else:
        entries = [_enumeration_entry(j) for j in jobs]
    by_size = {str(n): sum(1 for e in entries if e["n"] == n) for n in range(1, max_size + 1)}
    failures = sum(1 for e in entries if e["roundtrip_ok"] is False)
    summary = {"lattices": len(entries), "by_size": by_size, "roundtrip_failures": failures}
    if args.roundtrip:
        summary["roundtrip_ok"] = failures == 0
    return {"command": "enumerate", "lattices": entries, "summary": summary}, 0 if failures == 0 else 1


def _text_enumerate(rep: dict) -> str:
    lines = []
    for e in rep["lattices"]:
        props = [k for k in ("distributive", "modular", "complemented", "atomistic") if e[k]]
        extra = "" if e["roundtrip_ok"] is None else f" roundtrip={'ok' if e['roundtrip_ok'] else 'FAILED'}"
        lines.append(f"n={e['n']} {e['lattice'][:16]} ortho={e['num_orthocomplementations']} [{','.join(props)}]{extra}")
    s = rep["summary"]
    lines.append(f"total {s['lattices']} lattices ({', '.join(f'{k}:{v}' for k, v in s['by_size'].items())}); roundtrip failures {s['roundtrip_failures']}")
    return "\n".join(lines)


# subspace --------------------------------------------------------------------

def _parse_form(text: str, q: int, n: int) -> BilinearForm:
    if text == "I":
        return BilinearForm.identity(q, n)
    try:
        matrix = json.loads(text)
    except json.JSONDecodeError as exc:
        raise OrtholocError(f"--form must be I or a JSON matrix: {exc}") from exc
    if not (isinstance(matrix, list) and len(matrix) == n and all(isinstance(r, list) and len(r) == n for r in matrix)):
        raise OrtholocError(f"--form must be an {n}x{n} matrix")
    if not all(isinstance(x, int) for r in matrix for x in r):
        raise OrtholocError("--form entries must be integers")
    return BilinearForm(q, n, tuple(tuple(x % q for x in r) for r in matrix))


def _parse_basis(text: str, n: int) -> list[tuple[int, ...]]:
    vecs = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        parts = chunk.split(",") if "," in chunk else list(chunk)
        try:
            vec = tuple(int(x) for x in parts)
        except ValueError as exc:
            raise OrtholocError(f"bad vector {chunk!r} in --basis") from exc
        if len(vec) != n:
            raise OrtholocError(f"vector {chunk!r} does not have {n} coordinates")
        vecs.append(vec)
    return vecs


def _vec(v) -> str:
    return "".join(str(x) for x in v)


def cmd_subspace(args) -> tuple[dict, int]:
    q, n = args.q, args.dim
    m = enumerate_subspaces(q, n)
    l = m.lattice
    rep: dict = {
        "command": "subspace",
        "q": q,
        "dim": n,
        "num_subspaces": l.n,
        "labels": list(l.labels),
        "lattice": json.loads(lattice_to_json(l)),
        "orthocomplementations": [
            {l.label(a): l.label(o.psi[a]) for a in range(l.n)} for o in enumerate_orthocomplementations(l)
        ],
    }
    v = None
    if args.fixture == "paper":
        if n != 3:
            raise OrtholocError("the example fixture lives on dimension 3")
        v = paper_fixture(q)
    elif args.form is not None:
        v = form_locality(_parse_form(args.form, q, n))
    if v is not None:
        r = vs_to_lattice_locality(v, m)
        nd = vs_nondegeneracy(v)
        vgv2 = check_prop_VGV2(v, m)
        rep["relation"] = json.loads(relation_to_json(r))
        rep["polars"] = {
            l.label(a): [l.label(b) for b in range(l.n) if r.rows[a] >> b & 1]
            for a in range(l.n)
        }
        rep["nondegeneracy"] = {
            "nondegenerate": nd.nondegenerate,
            "strongly": nd.strongly,
            "isotropic": [_vec(x) for x in v.isotropic],
        }
        c = classify(r)
        rep["locality"] = c.flags
        rep["locality_witnesses"] = {k: _labelled(l, w) for k, w in c.witnesses.items()}
        rep["induced_orthocomplementation"] = (
            None if vgv2.orthocomplementation is None
            else {l.label(a): l.label(vgv2.orthocomplementation.psi[a]) for a in range(l.n)}
        )
        rep["vgv2"] = {"clause_a": vgv2.clause_a, "clause_b": vgv2.clause_b}
        if args.basis:
            out = locality_basis_gram_schmidt(v, _parse_basis(args.basis, n))
            rep["gram_schmidt"] = [_vec(x) for x in out]
        if args.out_dir:
            d = Path(args.out_dir)
            d.mkdir(parents=True, exist_ok=True)
            (d / "lattice.json").write_text(lattice_to_json(l), encoding="utf-8")
            (d / "relation.json").write_text(relation_to_json(r), encoding="utf-8")
    elif args.basis:
        raise OrtholocError("--basis needs --form or --fixture")
    elif args.out_dir:
        d = Path(args.out_dir)
        d.mkdir(parents=True, exist_ok=True)
        (d / "lattice.json").write_text(lattice_to_json(l), encoding="utf-8")
    return rep, 0


def _text_subspace(rep: dict) -> str:
    lines = [f"G(F_{rep['q']}^{rep['dim']}): {rep['num_subspaces']} subspaces",
             f"orthocomplementations: {len(rep['orthocomplementations'])}"]
    if "nondegeneracy" in rep:
        nd = rep["nondegeneracy"]
        lines.append(f"non-degenerate: {nd['nondegenerate']}  strongly: {nd['strongly']}")
        if nd["isotropic"]:
            lines.append(f"isotropic vectors: {', '.join(nd['isotropic'])}")
        lines.append("polars:")
        lines += [f"  {a}^T = {{{', '.join(bs)}}}" for a, bs in rep["polars"].items()]
        lines += [f"{k}: {'yes' if v else 'no'}" for k, v in rep["locality"].items()]
        if rep["induced_orthocomplementation"]:
            pairs = sorted({tuple(sorted(p)) for p in rep["induced_orthocomplementation"].items()})
            lines.append("psi: " + ", ".join(f"{a}<->{b}" for a, b in pairs))
    if "gram_schmidt" in rep:
        lines.append("locality basis: " + "; ".join(rep["gram_schmidt"]))
    return "\n".join(lines)


# export-dot ------------------------------------------------------------------

def cmd_export_dot(args) -> tuple[str, int]:
    l = load_lattice(args.lattice)
    dot = to_dot(l.poset, Path(args.lattice).stem.replace("-", "_") or "hasse")
    if args.output:
        Path(args.output).write_text(dot, encoding="utf-8")
        return "", 0
    return dot, 0


# wiring ----------------------------------------------------------------------

COMMANDS = {
    "check": (cmd_check, _text_check),
    "locality": (cmd_locality, _text_locality),
    "correspond": (cmd_correspond, _text_correspond),
    "enumerate": (cmd_enumerate, _text_enumerate),
    "subspace": (cmd_subspace, _text_subspace),
}


def _global_options(defaults: bool) -> argparse.ArgumentParser:
    # Shared so the global flags work before or after the subcommand.
    g = argparse.ArgumentParser(add_help=False)
    sup = (lambda v: v) if defaults else (lambda v: argparse.SUPPRESS)
    g.add_argument("--report", choices=("json", "text"), default=sup("json"))
    g.add_argument("--jobs", type=int, default=sup(1))
    g.add_argument("--max-size", type=int, default=sup(None))
    return g


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ortholoc", parents=[_global_options(True)], description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    common = [_global_options(False)]

    p = sub.add_parser("check", parents=common, help="lattice property checks")
    p.add_argument("lattice")
    p.add_argument("--properties", default="all", help=f"comma list from: {', '.join(PROPERTIES)}")

    p = sub.add_parser("locality", parents=common, help="classify a locality relation")
    p.add_argument("lattice")
    p.add_argument("relation")
    p.add_argument("--relaxed", action="store_true", help="evaluate each flag without its preconditions")

    p = sub.add_parser("correspond", parents=common, help="orthocomplementation / locality round trips")
    p.add_argument("lattice")
    p.add_argument("--appendix", action="store_true", help="also run the antitone-map and atom-relation round trips")

    p = sub.add_parser("enumerate", parents=common, help="all lattices up to a size")
    p.add_argument("--roundtrip", action="store_true")

    p = sub.add_parser("subspace", parents=common, help="subspace lattice of F_q^dim")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--form", help='"I" or a JSON matrix such as "[[1,0],[0,1]]"')
    p.add_argument("--fixture", choices=("paper",))
    p.add_argument("--basis", help='input basis for the locality-basis construction, e.g. "1,1;0,1"')
    p.add_argument("--out-dir", help="write lattice.json and relation.json here")

    p = sub.add_parser("export-dot", parents=common, help="Graphviz Hasse diagram")
    p.add_argument("lattice")
    p.add_argument("-o", "--output")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "export-dot":
            text, code = cmd_export_dot(args)
            sys.stdout.write(text)
            return code
        run, render = COMMANDS[args.command]
        rep, code = run(args)
    except OrtholocError as exc:
        err = {"error": type(exc).__name__, "message": str(exc), "witness": _plain(exc.witness)}
        if args.report == "json":
            sys.stdout.write(report_json(err))
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    if args.report == "json":
        sys.stdout.write(report_json(rep))
    else:
        print(render(rep))
    return code


if __name__ == "__main__":
    sys.exit(main())
