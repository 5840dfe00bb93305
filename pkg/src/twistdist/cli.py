"""``sdist``: command-line front end over scenario files.

FILE is a scenario file path, or ``builtin:KIND`` (with ``--n``) for a
generated scenario.  Text output is stable across runs; ``--json`` prints the
same content as one JSON object.  Exit status: 0 success, 2 a check failed,
1 an error (printed as ``error[CODE]: message`` on stderr).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Any

from . import cohomology as coh
from . import polytope, scenario, sgraph
from .dist import TwistedDistribution, is_contextual, is_point_mass
from .scomplex import BUILTINS, builtin, dimension

EXIT_OK, EXIT_ERROR, EXIT_FAIL = 0, 1, 2


def _q(v: Fraction | int) -> str:
    return str(Fraction(v))


def _cochain(c: dict[str, int]) -> str:
    ones = [k for k, v in c.items() if v]
    return "{" + " ".join(f"{k}=1" for k in ones) + "}"


def load_scenario(spec: str, n: int | None) -> scenario.ScenarioFile:
    if spec.startswith("builtin:"):
        return builtin_scenario(spec.split(":", 1)[1], n)
    return scenario.load(spec)


def builtin_scenario(kind: str, n: int | None) -> scenario.ScenarioFile:
    """A builtin complex with the cocycle ``one`` (indicator of its first triangle)."""
    X = builtin(kind, n)
    first = next(iter(X.triangles))
    return scenario.from_complex(X, {"one": coh.normalize2(X, {first: 1})})


def _tables(p: TwistedDistribution) -> dict[str, list[str]]:
    return {t: [_q(v) for v in tab] for t, tab in p.tables.items()}


# -- commands: each returns (payload, text lines, exit status) ----------------


def cmd_validate(sf: scenario.ScenarioFile, args) -> tuple[dict, list[str], int]:
    X = sf.complex
    info = {
        "scenario": sf.name,
        "vertices": len(X.vertices),
        "edges": len(X.nondegenerate_edges),
        "triangles": len(X.triangles),
        "euler_characteristic": X.euler_characteristic(),
        "standard": X.is_standard(),
        "dimension": dimension(X),
        "cocycles": {c: {"trivial": coh.is_trivial(X, b)} for c, b in sf.cocycles.items()},
        "distributions": {d: {"twist": sf.twists[d], "valid": True} for d in sf.distributions},
    }
    lines = [f"scenario {sf.name}: valid",
             f"  vertices {info['vertices']}, edges {info['edges']}, triangles {info['triangles']}, "
             f"euler characteristic {info['euler_characteristic']}",
             f"  standard boundaries: {'yes' if info['standard'] else 'no'}; "
             f"dimension {info['dimension']}"]
    lines += [f"  cocycle {c}: {'trivial' if v['trivial'] else 'nontrivial'} class"
              for c, v in info["cocycles"].items()]
    lines += [f"  distribution {d}: valid, twist {v['twist']}" for d, v in info["distributions"].items()]
    return info, lines, EXIT_OK


def _selected_cocycles(sf, args) -> dict[str, dict[str, int]]:
    if args.cocycle is not None:
        return {args.cocycle: sf.cocycle(args.cocycle)}
    return {"0": coh.zero2(sf.complex), **sf.cocycles}


def cmd_cohomology(sf, args):
    X = sf.complex
    out = {"h2_dimension": coh.h2_dimension(X), "cocycles": {}}
    lines = [f"H^2(X; Z/2) has dimension {out['h2_dimension']}"]
    for name, beta in _selected_cocycles(sf, args).items():
        system, _ = coh.solve_system(X, beta)
        s = coh.trivialize(X, beta)
        entry = {"beta": _cochain(beta), "trivial": s is not None}
        if s is None:
            lines.append(f"cocycle {name} {entry['beta']}: [β] nontrivial; no deterministic sections")
        else:
            count = 2 ** (len(system.free_columns))
            entry.update(sections=count, witness=_cochain(s))
            lines.append(f"cocycle {name} {entry['beta']}: [β] trivial; {count} deterministic sections; "
                         f"ds = β for s = {entry['witness']}")
        out["cocycles"][name] = entry
    return out, lines, EXIT_OK


def _classify(p: TwistedDistribution) -> dict[str, Any]:
    ctx = is_contextual(p)
    entry: dict[str, Any] = {"contextual": ctx.contextual, "reason": ctx.reason}
    if ctx.certificate is not None:
        entry["certificate"] = [{"section": _cochain(s), "weight": _q(w)} for s, w in ctx.certificate]
    return entry


def cmd_vertices(sf, args):
    X = sf.complex
    name = args.cocycle or "0"
    beta = sf.cocycle(name)
    verts = polytope.enumerate_vertices(X, beta)
    records, lines = [], [f"vertices of the polytope of {sf.name}, cocycle {name}: {len(verts)}"]
    counts = {"deterministic": 0, "noncontextual": 0, "contextual": 0}
    for i, v in enumerate(verts):
        rep = polytope.rank_of(v)
        cls = _classify(v)
        det = all(is_point_mass(tab) for tab in v.tables.values())
        tag = "contextual" if cls["contextual"] else "noncontextual"
        counts[tag] += 1
        counts["deterministic"] += det
        records.append({"tables": _tables(v), "rank": rep.rank, "deterministic": det,
                        "classification": tag, **{k: cls[k] for k in cls if k == "certificate"},
                        "zp_edges": sorted(rep.zp.edges), "zp_triangles": sorted(rep.zp.triangles)})
        lines.append(f"vertex {i}: {tag}{' deterministic' if det else ''}, rank {rep.rank}, "
                     f"Z_p edges {len(rep.zp.edges)} triangles {len(rep.zp.triangles)}")
        lines += [f"  {t} = {' '.join(tab)}" for t, tab in _tables(v).items()]
        if "certificate" in cls:
            lines += [f"  weight {c['weight']} on section {c['section']}" for c in cls["certificate"]]
    lines.append(f"summary: {len(verts)} vertices, {counts['deterministic']} deterministic, "
                 f"{counts['noncontextual']} noncontextual, {counts['contextual']} contextual")
    return {"cocycle": name, "count": len(verts), "summary": counts, "vertices": records}, lines, EXIT_OK


def _emit_graph(p: TwistedDistribution, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(sgraph.support_graph(p).to_text())


def cmd_rank(sf, args):
    p = sf.distribution(args.dist)
    rep = polytope.rank_of(p)
    _emit_graph(p, args.emit_graph)
    s = rep.summary()
    lines = [f"rank {s['rank']} of {s['columns']} columns; {'vertex' if s['is_vertex'] else 'not a vertex'}",
             "tight rows: " + " ".join(s["tight"]),
             "Z_p edges: " + " ".join(s["zp_edges"]),
             "Z_p triangles: " + " ".join(s["zp_triangles"])]
    return s, lines, EXIT_OK


def cmd_classify(sf, args):
    p = sf.distribution(args.dist)
    cls = _classify(p)
    lines = [("contextual" if cls["contextual"] else "noncontextual") + f" ({cls['reason']})"]
    lines += [f"  weight {c['weight']} on section {c['section']}" for c in cls.get("certificate", [])]
    return cls, lines, EXIT_OK


def cmd_verify(sf, args):
    p = sf.distribution(args.dist)
    _emit_graph(p, args.emit_graph)
    rf = sgraph.rank_formula(p)
    direct = polytope.rank_of(p).rank
    ok = rf.value == direct
    out = {"formula": rf.value, "matrix_rank": direct, "pass": ok,
           "terms": {"zp_edges": rf.zp_edges, "quotient_triangles": rf.quotient_triangles,
                     "balanced_components": rf.balanced},
           "trace": rf.trace}
    lines = [f"rank formula {rf.zp_edges} + {rf.quotient_triangles} - {rf.balanced} = {rf.value}",
             f"matrix rank {direct}",
             "PASS" if ok else "FAIL"]
    if "note" in rf.trace:
        lines.insert(1, "note: " + rf.trace["note"])
    return out, lines, EXIT_OK if ok else EXIT_FAIL


COMMANDS = {
    "validate": cmd_validate,
    "cohomology": cmd_cohomology,
    "vertices": cmd_vertices,
    "rank": cmd_rank,
    "classify": cmd_classify,
    "verify-rank-formula": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="sdist", description="Twisted simplicial distributions, exactly.")
    ap.add_argument("command", choices=[*COMMANDS, "builtin"])
    ap.add_argument("file", metavar="FILE",
                    help="scenario file, builtin:KIND, or for 'builtin' the kind itself")
    ap.add_argument("--cocycle", help="cocycle name from the file ('0' for the zero cocycle)")
    ap.add_argument("--dist", help="distribution name from the file")
    ap.add_argument("--n", type=int, help="size parameter for builtin complexes")
    ap.add_argument("--emit-graph", metavar="PATH", help="write the support graph in text form")
    ap.add_argument("--json", action="store_true", help="print one JSON object instead of text")
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "builtin":
            if args.file not in BUILTINS:
                raise KeyError(f"unknown builtin {args.file!r}; choose from {sorted(BUILTINS)}")
            text = scenario.render(builtin_scenario(args.file, args.n))
            if args.json:
                print(json.dumps({"scenario": text}, indent=2))
            else:
                sys.stdout.write(text)
            return EXIT_OK
        sf = load_scenario(args.file, args.n)
        payload, lines, status = COMMANDS[args.command](sf, args)
    except (ValueError, KeyError, OSError, ArithmeticError) as exc:
        code = getattr(exc, "code", type(exc).__name__)
        print(f"error[{code}]: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if args.json:
        print(json.dumps({"command": args.command, "status": status, "result": payload},
                         indent=2, default=str))
    else:
        print("\n".join(lines))
    return status


if __name__ == "__main__":
    sys.exit(main())
