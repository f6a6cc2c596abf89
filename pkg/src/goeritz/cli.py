"""Command-line front end: ``goeritz <command> ...``.

Exit status is 0 on success, 1 for unreadable or invalid input and 2 when
the input is well formed but outside an operation's domain.
"""

from __future__ import annotations

import argparse
import contextlib
import io
import json
import os
import sys
from typing import List, Optional, Tuple

from .catalog import CATALOG
from .correspondence import NotNormalError, build_diagram, extract_graph, realizable, realizable_bruteforce
from .diagram import Diagram, DiagramError, OrientedDiagram, parse_orientation, parse_pd
from .invariants import link_invariants
from .matrices import (adjust, bijection_equal, congruence_verify, goeritz_matrix,
                       matrix_from_json, oriented_goeritz_matrix, reduce)
from .mutate import NotDetachedError, mutate, mutate_oriented, reverse_detached, tangle_from_arcs
from .normalize import check_strongly_normal, normalize
from .planegraph import GraphError, graph_from_json
from .tait import tait_graph


class Precondition(Exception):
    """Well-formed input outside the domain of the command (exit 2)."""


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    if not os.path.exists(path) and path in CATALOG:
        return CATALOG[path].pd
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _load(path: str) -> Tuple[Diagram, Optional[str]]:
    """Diagram plus the text of an ``orient`` line, if the file has one."""
    text = _read(path)
    orient = None
    if not text.lstrip().startswith("{"):
        keep = []
        for line in text.splitlines():
            if line.strip().startswith("orient"):
                orient = line.strip()[len("orient"):]
            else:
                keep.append(line)
        text = "\n".join(keep)
    return parse_pd(text), orient


def _oriented(d: Diagram, from_file: Optional[str], flag: Optional[str]) -> OrientedDiagram:
    text = flag if flag is not None else from_file
    if text is None:
        raise Precondition("oriented output needs orientation data "
                           "(an 'orient' line or --orientation)")
    return parse_orientation(text, d)


def _shadings(d: Diagram, which: str):
    return d.shadings() if which == "both" else (d.shading(which),)


def _emit(args, obj, text: str) -> None:
    if getattr(args, "json", False):
        print(json.dumps(obj, indent=1, sort_keys=True))
    else:
        print(text.rstrip("\n"))


# -- commands --------------------------------------------------------------------------


def cmd_matrix(args) -> None:
    d, orient = _load(args.file)
    od = _oriented(d, orient, args.orientation) if args.oriented else None
    out, texts = [], []
    for s in _shadings(d, args.shading):
        m = oriented_goeritz_matrix(od, s) if od else goeritz_matrix(d, s)
        if args.adjusted:
            m = adjust(m, tait_graph(d, s, "s").beta)
        if args.reduced:
            m = reduce(m, d.layout.resolve_region(args.reduced) if args.reduced not in m.labels
                       else args.reduced)
        out.append({"shading": s.kind, "matrix": m.to_json()})
        texts.append(f"shading {s.kind}\n{m.to_text()}")
    _emit(args, out, "\n\n".join(texts))


def cmd_invariants(args) -> None:
    d, _ = _load(args.file)
    r = link_invariants(d)
    _emit(args, r.to_json(), r.to_text())


def cmd_check_normal(args) -> None:
    d, _ = _load(args.file)
    out, texts = [], []
    for s in _shadings(d, args.shading):
        r = check_strongly_normal(d, s)
        out.append({"shading": s.kind, "ok": r.ok, "flags": list(r.flags()),
                    "unshaded_disks": r.unshaded_disks,
                    "witnesses": {k: str(v) for k, v in r.witnesses.items()}})
        texts.append(f"shading {s.kind}: {'strongly normal' if r.ok else 'not strongly normal'}\n"
                     f"  {r.summary()}")
    _emit(args, out, "\n".join(texts))


def cmd_normalize(args) -> None:
    d, _ = _load(args.file)
    d2, s2, trace = normalize(d, d.shading(args.shading))
    if args.emit_steps:
        os.makedirs(args.emit_steps, exist_ok=True)
        for i, st in enumerate(trace.steps):
            name = os.path.join(args.emit_steps, f"step{i:02d}.pd")
            with open(name, "w", encoding="utf-8") as fh:
                fh.write(f"# {st.kind} shading={st.shading.kind} "
                         f"digest={st.matrix.digest()}\n")
                fh.write(st.diagram.to_text())
    obj = {"diagram": d2.to_json(), "shading": s2.kind,
           "steps": [{"kind": st.kind, "digest": st.matrix.digest()} for st in trace.steps]}
    _emit(args, obj, d2.to_text() + "# steps: " + " ".join(trace.kinds()))


def cmd_from_graph(args) -> None:
    g = graph_from_json(json.loads(_read(args.file)))
    b = build_diagram(g)
    _emit(args, b.diagram.to_json(), b.diagram.to_text())


def cmd_to_graph(args) -> None:
    d, _ = _load(args.file)
    g = extract_graph(d, d.shading(args.shading))
    print(g.dump())


def cmd_realizable(args) -> None:
    g = graph_from_json(json.loads(_read(args.file)))
    r = realizable(g)
    obj = {"realizable": r.realizable,
           "orientation": list(r.signs) if r.signs else None,
           "conflict": [list(x) for x in r.conflict] if r.conflict else None}
    if args.bruteforce:
        obj["bruteforce"] = realizable_bruteforce(g)
    lines = [f"realizable: {'yes' if r.realizable else 'no'}"]
    if r.signs:
        lines.append("orient " + " ".join("+" if s == 1 else "-" for s in r.signs))
    if r.conflict:
        lines.append("conflict: " + " ".join(f"({a},{b},{p})" for a, b, p in r.conflict))
    if args.bruteforce:
        lines.append(f"bruteforce: {'yes' if obj['bruteforce'] else 'no'}")
    _emit(args, obj, "\n".join(lines))


def cmd_mutate(args) -> None:
    d, orient = _load(args.file)
    try:
        arcs = [int(x) for x in args.tangle.split(",")]
    except ValueError:
        raise DiagramError("--tangle expects four comma-separated arc labels") from None
    t = tangle_from_arcs(d, arcs)
    oriented = args.orientation is not None or orient is not None or args.reverse_components
    if not oriented:
        new = mutate(d, t, args.kind)
        _emit(args, new.to_json(), new.to_text())
        return
    od = _oriented(d, orient, args.orientation)
    if args.reverse_components:
        comps = [int(x) for x in args.reverse_components.split(",")]
        od = reverse_detached(od, comps)
    new, flipped = mutate_oriented(od, t, args.kind)
    obj = {"diagram": new.diagram.to_json(), "orientation": list(new.signs),
           "reversed_inside": flipped}
    _emit(args, obj, new.diagram.to_text() + "orient " + new.to_text())


def cmd_congruent(args) -> None:
    a = matrix_from_json(json.loads(_read(args.a)))
    b = matrix_from_json(json.loads(_read(args.b)))
    if args.witness:
        u = json.loads(_read(args.witness))
        ok = congruence_verify(u, a, b)
        _emit(args, {"verified": ok}, "verified" if ok else "not verified")
        return
    ok, mapping = bijection_equal(a, b)
    _emit(args, {"bijection_equal": ok, "map": mapping},
          "bijection-equal" if ok else "not bijection-equal (no witness given)")


def cmd_catalog(args) -> None:
    if args.name:
        e = CATALOG.get(args.name)
        if e is None:
            raise DiagramError(f"no catalog entry {args.name!r}")
        print(e.pd.rstrip("\n"))
        return
    for e in CATALOG.values():
        print(f"{e.name}: regions={e.regions} mu={e.mu}" + (f"  ({e.note})" if e.note else ""))


# -- entry point ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="goeritz", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def diagram_cmd(name, fn, help_, shading="both"):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("file", help="PD file, '-' for stdin, or a catalog name")
        sp.add_argument("--shading", choices=["s", "u", "both"] if shading == "both" else ["s", "u"],
                        default=shading)
        sp.add_argument("--json", action="store_true")
        sp.set_defaults(fn=fn)
        return sp

    sp = diagram_cmd("matrix", cmd_matrix, "Goeritz matrices")
    sp.add_argument("--adjusted", action="store_true")
    sp.add_argument("--oriented", action="store_true")
    sp.add_argument("--orientation", help="per-component flags such as '+ -'")
    sp.add_argument("--reduced", metavar="REGION")
    diagram_cmd("invariants", cmd_invariants, "mutation invariants")
    diagram_cmd("check-normal", cmd_check_normal, "strong normality report")
    sp = diagram_cmd("normalize", cmd_normalize, "rewrite to a strongly normal shading", "s")
    sp.add_argument("--emit-steps", metavar="DIR")
    diagram_cmd("to-graph", cmd_to_graph, "weighted plane graph of a strongly normal diagram", "s")
    sp = diagram_cmd("mutate", cmd_mutate, "elementary mutation")
    sp.add_argument("--tangle", required=True, metavar="A,B,C,D")
    sp.add_argument("--kind", type=int, choices=[1, 2, 3], required=True)
    sp.add_argument("--orientation")
    sp.add_argument("--reverse-components", metavar="C1,C2")
    for name, fn, help_ in (("from-graph", cmd_from_graph, "diagram of a weighted plane graph"),
                            ("realizable", cmd_realizable, "oriented realizability")):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("file", help="graph JSON file")
        sp.add_argument("--json", action="store_true")
        sp.set_defaults(fn=fn)
    sub.choices["realizable"].add_argument("--bruteforce", action="store_true")
    sp = sub.add_parser("congruent", help="check a congruence witness U a U^T = b")
    sp.add_argument("a")
    sp.add_argument("b")
    sp.add_argument("--witness", metavar="U.json")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(fn=cmd_congruent)
    sp = sub.add_parser("catalog", help="list or print bundled diagrams")
    sp.add_argument("name", nargs="?")
    sp.set_defaults(fn=cmd_catalog)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.fn(args)
    except (Precondition, NotNormalError, NotDetachedError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (DiagramError, GraphError, ValueError, KeyError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    return 0


def run_cli(argv: List[str]) -> Tuple[int, str, str]:
    """Run one command and capture (status, stdout, stderr)."""
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        try:
            status = main(argv)
        except SystemExit as e:     # argparse usage errors
            status = e.code if isinstance(e.code, int) else 1
    return status, out.getvalue(), err.getvalue()


if __name__ == "__main__":
    sys.exit(main())
