"""Command line interface: ``monoqp <command> ...``.

Exit codes: 0 affirmative, 1 negative verdict, 2 usage/parse/guard error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from ._guard import GuardExceeded, size_limit
from .algebra import MapFormatError, MonounaryAlgebra, dumps_map, loads_map, parse_map
from .decider import decide, decide_finite
from .enumeration import all_algebras, export_catalog, random_algebra
from .hom import hom_maps, quotient, theta_U
from .oracle import DEFAULT_GUARD as ORACLE_GUARD
from .oracle import oracle_general, oracle_js
from .schema import INF, SchemaError, branch_inventory, canonicalize, schema_from_json

FORMAT = "monoqp/1"


class UsageError(Exception):
    pass


def _num(v):
    return "inf" if v == INF else v


def load_input(path: str):
    """A map file, a schema JSON file, or a JSON report carrying an algebra."""
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    if text.lstrip().startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid JSON: {exc}") from None
        if "algebra" in obj:
            try:
                return parse_map(obj["algebra"]["n"], obj["algebra"]["images"])
            except (KeyError, TypeError):
                raise SchemaError("report JSON: 'algebra' needs 'n' and 'images'") from None
        if "components" in obj:
            return schema_from_json(obj)
        raise SchemaError("JSON input needs 'components' (schema) or 'algebra' (report)")
    return loads_map(text)


def _algebra(path: str) -> MonounaryAlgebra:
    obj = load_input(path)
    if not isinstance(obj, MonounaryAlgebra):
        raise UsageError(f"{path}: this command needs a finite algebra (map file)")
    return obj


def _alg_json(a: MonounaryAlgebra) -> dict:
    return {"n": a.size, "images": list(a.images)}


# --- analyze ----------------------------------------------------------------

def analyze_report(a: MonounaryAlgebra) -> dict:
    an = a.analysis
    comps = []
    for i, cyc in enumerate(an.cycles):
        members = an.members(i)
        leaves = [x for x in members if an.is_leaf(x)]
        comps.append({
            "cycle": list(cyc),
            "cn": len(cyc),
            "branches": [{"leaf": x, "length": an.height(x)} for x in leaves],
            "acyclic": [{"element": x, "l_h": an.height(x), "l_d": an.depth(x),
                         "leaf": an.is_leaf(x)} for x in members if not an.is_cyclic(x)],
        })
    return {"algebra": _alg_json(a), "components": comps}


def analyze_text(r: dict) -> str:
    comps = r["components"]
    lines = [f"n={r['algebra']['n']}, {len(comps)} component{'s' if len(comps) != 1 else ''}"]
    for i, c in enumerate(comps):
        br = c["branches"]
        if br:
            lens = ", ".join(str(b["length"]) for b in br)
            desc = f"{len(br)} branch{'es' if len(br) != 1 else ''} len {lens}"
        else:
            desc = "no branches"
        lines.append(f"component {i}: cn={c['cn']}, cycle {' '.join(map(str, c['cycle']))}, {desc}")
        for e in c["acyclic"]:
            leaf = "  leaf" if e["leaf"] else ""
            lines.append(f"  element {e['element']}: l_h={e['l_h']} l_d={e['l_d']}{leaf}")
    return "\n".join(lines)


def schema_report(s) -> dict:
    comps = []
    for c in s.components:
        if hasattr(c, "cn"):
            comps.append({"kind": "cycle", "cn": c.cn})
        else:
            comps.append({"kind": "chain", "cn": "inf",
                          "backward_infinite": c.backward_infinite})
    inv = [{"component": b.component, "kind": b.kind, "position": b.position,
            "length": _num(b.length), "simple_path": b.is_simple_path,
            "branch_count": _num(b.bunch_branch_count)} for b in branch_inventory(s)]
    return {"schema": True, "components": comps, "branches": inv}


def schema_text(r: dict) -> str:
    lines = [f"schema, {len(r['components'])} component{'s' if len(r['components']) != 1 else ''}"]
    for i, c in enumerate(r["components"]):
        recs = [b for b in r["branches"] if b["component"] == i]
        if c["kind"] == "cycle":
            head = f"component {i}: cn={c['cn']}"
        else:
            ends = "Z-chain" if c["backward_infinite"] else "chain with a leaf"
            head = f"component {i}: cycle-free {ends}, cn=inf"
        lines.append(f"{head}, {len(recs)} attached tree{'s' if len(recs) != 1 else ''}")
        for b in recs:
            shape = "path" if b["simple_path"] else "tree"
            lines.append(f"  {b['kind']} at {b['position']}: {shape}, length {b['length']}, "
                         f"{b['branch_count']} branch(es)")
    return "\n".join(lines)


def cmd_analyze(args) -> tuple[int, dict, str]:
    obj = load_input(args.file)
    if isinstance(obj, MonounaryAlgebra):
        r = analyze_report(obj)
        return 0, r, analyze_text(r)
    r = schema_report(obj)
    return 0, r, schema_text(r)


# --- decide -----------------------------------------------------------------

def _verdict_json(v) -> dict:
    return {"result": v.result,
            "violation": str(v.violation) if v.violation else None,
            "witnesses": {k: ([_num(x) for x in w] if isinstance(w, list) else _num(w))
                          for k, w in v.witnesses.items()}}


def cmd_decide(args) -> tuple[int, dict, str]:
    obj = load_input(args.file)
    if args.schema and isinstance(obj, MonounaryAlgebra):
        raise UsageError("--schema given but the input is a map file")
    if isinstance(obj, MonounaryAlgebra):
        v = decide_finite(obj)
        r = {"algebra": _alg_json(obj), "verdict": _verdict_json(v)}
    else:
        v = decide(canonicalize(obj))
        r = {"schema": True, "verdict": _verdict_json(v)}
    return (0 if v.quasi_projective else 1), r, v.describe()


# --- verify -----------------------------------------------------------------

def cmd_verify(args) -> tuple[int, dict, str]:
    a = _algebra(args.file)
    limit = size_limit(ORACLE_GUARD, args.max_n)
    defs = ["general", "js"] if args.definition == "both" else [args.definition]
    runs = {}
    lines = []
    for d in defs:
        fn = oracle_general if d == "general" else oracle_js
        v = fn(a, max_n=limit, canonical_only=args.canonical_only)
        w = v.witness
        runs[d] = {
            "result": v.result,
            "witness": None if w is None else {
                "kind": w.kind,
                "classes": [sorted(c) for c in w.congruence.classes] if w.congruence else None,
                "subalgebra": sorted(w.subalgebra) if w.subalgebra else None,
                "target": list(w.target.images), "j": list(w.j), "f": list(w.f)},
            "stats": v.stats,
        }
        lines.append(f"{d}: {v.result}")
        if w is not None:
            lines.append(f"  witness: {w.describe()}")
        lines.append("  stats: " + ", ".join(f"{k}={n}" for k, n in v.stats.items()))
    r = {"algebra": _alg_json(a), "definitions": runs}
    qp = [runs[d]["result"] == "QuasiProjective" for d in defs]
    if len(defs) == 2:
        r["agree"] = qp[0] == qp[1]
        lines.append("definitions agree" if r["agree"] else "DEFINITIONS DISAGREE")
    d = decide_finite(a)
    r["decider"] = _verdict_json(d)
    lines.append(f"decider: {d.describe()}")
    return (0 if all(qp) else 1), r, "\n".join(lines)


# --- quotient ---------------------------------------------------------------

def _parse_set(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.replace(" ", "").split(",") if tok]
    except ValueError:
        raise UsageError(f"bad element list {text!r}; expected e.g. 1,2") from None


def cmd_quotient(args) -> tuple[int, dict, str]:
    a = _algebra(args.file)
    U = _parse_set(args.subalgebra)
    try:
        theta = theta_U(a, U)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    q = quotient(a, theta)
    classes = [sorted(c) for c in theta.classes]
    r = {"algebra": _alg_json(a), "subalgebra": sorted(set(U)), "classes": classes,
         "quotient": _alg_json(q.algebra)}
    text = ("classes: " + " ".join("{" + ",".join(map(str, c)) + "}" for c in classes)
            + "\nquotient:\n" + dumps_map(q.algebra).rstrip("\n"))
    return 0, r, text


# --- homs -------------------------------------------------------------------

def cmd_homs(args) -> tuple[int, dict, str]:
    src = _algebra(args.src)
    if args.endo:
        tgt = src
    elif args.tgt is None:
        raise UsageError("homs needs a target file unless --endo is given")
    else:
        tgt = _algebra(args.tgt)
    maps = list(hom_maps(src, tgt, surjective=args.epi))
    r = {"source": _alg_json(src), "target": _alg_json(tgt), "epi": args.epi,
         "count": len(maps)}
    if args.count:
        return 0, r, str(len(maps))
    r["maps"] = [list(m) for m in maps]
    return 0, r, "\n".join(" ".join(map(str, m)) for m in maps) + f"\n{len(maps)} total"


# --- enumerate --------------------------------------------------------------

def cmd_enumerate(args) -> tuple[int, dict, str]:
    if args.n < 1:
        raise UsageError(f"n must be positive, got {args.n}")
    cat = all_algebras(args.n)
    rows = []
    for a in cat:
        v = decide_finite(a)
        if args.qp_only and not v.quasi_projective:
            continue
        rows.append((a, v))
    if args.export:
        export_catalog(cat, args.export)
    r = {"n": args.n, "qp_only": args.qp_only, "count": len(rows),
         "algebras": [{"images": list(a.images), "verdict": v.result} for a, v in rows]}
    text = "\n".join(f"{' '.join(map(str, a.images))}\t{v.result}" for a, v in rows)
    return 0, r, f"{text}\n{len(rows)} algebras"


def cmd_random(args) -> tuple[int, dict, str]:
    if args.n < 1:
        raise UsageError(f"n must be positive, got {args.n}")
    a = random_algebra(args.n, args.seed)
    return 0, {"seed": args.seed, "algebra": _alg_json(a)}, dumps_map(a).rstrip("\n")


# --- dot --------------------------------------------------------------------

def to_dot(a: MonounaryAlgebra) -> str:
    an = a.analysis
    lines = ["digraph monounary {", "  node [shape=circle];"]
    for x in a.elements:
        style = ' [style=filled, fillcolor="lightgray", shape=doublecircle]' if an.is_cyclic(x) else ""
        lines.append(f"  {x}{style};")
    for x in a.elements:
        lines.append(f"  {x} -> {a(x)};")
    lines.append("}")
    return "\n".join(lines)


def cmd_dot(args) -> tuple[int, dict, str]:
    a = _algebra(args.file)
    dot = to_dot(a)
    return 0, {"algebra": _alg_json(a), "dot": dot}, dot


# --- entry point ------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="monoqp", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("analyze", parents=[common], help="components, cycles, branches, heights and depths")
    s.add_argument("file")
    s.set_defaults(func=cmd_analyze)

    s = sub.add_parser("decide", parents=[common], help="structural quasi-projectivity test")
    s.add_argument("file")
    s.add_argument("--schema", action="store_true", help="input is schema JSON")
    s.set_defaults(func=cmd_decide)

    s = sub.add_parser("verify", parents=[common], help="brute-force check against the definition")
    s.add_argument("file")
    s.add_argument("--definition", choices=["general", "js", "both"], default="both")
    s.add_argument("--max-n", type=int, default=None)
    s.add_argument("--canonical-only", action="store_true",
                   help="only use the quotient projection as j")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("quotient", parents=[common], help="theta_U classes and the quotient A/U")
    s.add_argument("file")
    s.add_argument("--subalgebra", required=True, help="comma-separated elements of U")
    s.set_defaults(func=cmd_quotient)

    s = sub.add_parser("homs", parents=[common], help="list or count homomorphisms")
    s.add_argument("src")
    s.add_argument("tgt", nargs="?")
    s.add_argument("--epi", action="store_true", help="surjective only")
    s.add_argument("--endo", action="store_true", help="endomorphisms of src")
    s.add_argument("--count", action="store_true", help="print the count only")
    s.set_defaults(func=cmd_homs)

    s = sub.add_parser("enumerate", parents=[common], help="all algebras of size n up to isomorphism")
    s.add_argument("n", type=int)
    s.add_argument("--qp-only", action="store_true")
    s.add_argument("--export", metavar="DIR", help="write one map file per class")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("random", parents=[common], help="a uniformly random algebra")
    s.add_argument("n", type=int)
    s.add_argument("--seed", type=int, required=True)
    s.set_defaults(func=cmd_random)

    s = sub.add_parser("dot", parents=[common], help="Graphviz DOT diagram")
    s.add_argument("file")
    s.set_defaults(func=cmd_dot)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        code, report, text = args.func(args)
    except (UsageError, MapFormatError, SchemaError, GuardExceeded, OSError) as exc:
        print(f"monoqp: error: {exc}", file=sys.stderr)
        return 2
    if args.json:
        out = {"format": FORMAT, "command": args.command}
        out.update(report)
        text = json.dumps(out, sort_keys=True, indent=2)
    sys.stdout.write(text + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
