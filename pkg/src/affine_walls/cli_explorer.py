"""Command-line explorer: enumerate, graph, map, ground and verify.

Exit codes: 0 on success, 1 when a verification suite (or a map on an
element outside its domain) finds a violation, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .cartan_data import AffineType, CartanError, ClassicalWeight, dominant_weights, level as weight_level
from .coordinate_crystal import CoordError, enumerate_crystal, parse as parse_coord
from .path_model import PathError, parse_path, phi_map, phi_map_inverse
from .psi_bijection import LabelError, bracket_of_coord, coord_of_bracket, parse_label, psi, psi_inverse
from .slice_crystal import SliceError, normalize, parse_slice
from .suites import (
    SUITES,
    GraphDump,
    SuiteReport,
    grid_points,
    ground_report,
    path_graph,
    slice_graph,
    suite_axioms,
    suite_closure,
    suite_iso,
    suite_perfect,
    suite_psi,
    suite_signatures,
    wall_graph,
)
from .young_wall import WallError, parse_wall

DIRECTIONS = {
    "coord-slice": "coord-slice",
    "coord->slice": "coord-slice",
    "coord→slice": "coord-slice",
    "slice-coord": "slice-coord",
    "slice->coord": "slice-coord",
    "slice→coord": "slice-coord",
    "wall-path": "wall-path",
    "wall->path": "wall-path",
    "wall→path": "wall-path",
    "path-wall": "path-wall",
    "path->wall": "path-wall",
    "path→wall": "path-wall",
}

DEFAULT_ISO = (("B1:3", "3,0,0,0"), ("C1:2", "1,1,0"))


class UsageError(Exception):
    pass


class DomainError(Exception):
    pass


# -- argument helpers -----------------------------------------------------------


def _type(args) -> AffineType:
    if not args.type:
        raise UsageError("--type is required")
    try:
        return AffineType.parse(args.type)
    except CartanError as exc:
        raise UsageError(str(exc)) from exc


def _weight(t: AffineType, text: Optional[str]) -> ClassicalWeight:
    if not text:
        raise UsageError("--weight is required")
    try:
        lam = ClassicalWeight.parse(text)
    except CartanError as exc:
        raise UsageError(str(exc)) from exc
    if len(lam.coeffs) != t.rank + 1 or not lam.is_dominant():
        raise UsageError(f"{text} is not a dominant weight for {t}")
    if weight_level(t, lam) < 1:
        raise UsageError("the weight must have positive level")
    return lam


def _level(args) -> int:
    if args.level is None:
        raise UsageError("--level is required")
    if args.level < 1:
        raise UsageError("--level must be at least 1")
    return args.level


def _emit(args, text: str) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
            if not text.endswith("\n"):
                fh.write("\n")
    else:
        print(text)


# -- graph output -----------------------------------------------------------------


def _dot_quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def graph_to_dot(g: GraphDump) -> str:
    m = g.meta
    title = f"{m['type']} {m['model']}" + (f" lambda={m['lambda']}" if m.get("lambda") else "")
    lines = ["digraph crystal {", f"  label={_dot_quote(title)};", "  node [shape=box, fontname=monospace];"]
    for n in g.nodes:
        lines.append(f"  n{n['id']} [label={_dot_quote(n['element'])}];")
    for e in g.edges:
        lines.append(f"  n{e['src']} -> n{e['dst']} [label=\"{e['color']}\"];")
    lines.append("}")
    return "\n".join(lines)


def graph_to_text(g: GraphDump) -> str:
    lines = [f"# {json.dumps(g.meta, sort_keys=True)}"]
    for n in g.nodes:
        lines.append(f"{n['id']}\tdepth={n['depth']}\twt={n['weight']}\t{n['element']}")
    for e in g.edges:
        lines.append(f"{e['src']} -{e['color']}-> {e['dst']}")
    return "\n".join(lines)


# -- commands ---------------------------------------------------------------------


def cmd_enumerate(args) -> int:
    t, lev = _type(args), _level(args)
    elems = enumerate_crystal(t, lev)
    if args.format == "json":
        _emit(args, json.dumps({
            "meta": {"type": str(t), "rank": t.rank, "level": lev, "size": len(elems)},
            "elements": [b.text() for b in elems],
        }, indent=2))
    else:
        _emit(args, "\n".join(b.text() for b in elems))
    return 0


def cmd_graph(args) -> int:
    t = _type(args)
    if args.model == "slice-perfect":
        g = slice_graph(t, _level(args))
    else:
        lam = _weight(t, args.weight)
        if args.depth < 0:
            raise UsageError("--depth must be non-negative")
        g = (wall_graph if args.model == "wall" else path_graph)(t, lam, args.depth)
    fmt = args.format or "json"
    if fmt == "json":
        _emit(args, json.dumps(g.as_dict(), indent=2))
    elif fmt == "dot":
        _emit(args, graph_to_dot(g))
    else:
        _emit(args, graph_to_text(g))
    return 0


def _parse_stage(fn, *a):
    try:
        return fn(*a)
    except (CoordError, SliceError, LabelError, CartanError, WallError, PathError) as exc:
        raise UsageError(str(exc)) from exc


def _domain_stage(fn, *a):
    try:
        return fn(*a)
    except (WallError, PathError) as exc:
        raise DomainError(str(exc)) from exc


def _map(t: AffineType, lev: Optional[int], direction: str, element: str) -> dict:
    if direction == "coord-slice":
        if lev is None:
            raise UsageError("--level is required for coordinates")
        b = _parse_stage(parse_coord, t, lev, element)
        return {"input": element, "output": psi(b).text(), "bracket": bracket_of_coord(b).text()}
    if direction == "slice-coord":
        text = element.strip()
        if text.startswith("["):
            if lev is None:
                raise UsageError("--level is required for bracket labels")
            b = coord_of_bracket(_parse_stage(parse_label, t, lev, text))
        else:
            # accepts the "<slice>  [label]" line printed by coord-slice
            body, _, label = text.partition("[")
            b = psi_inverse(normalize(_parse_stage(parse_slice, t, body.strip())))
            if label and bracket_of_coord(b).text() != "[" + label.strip():
                raise DomainError(f"the label [{label.strip()} does not match slice {body.strip()}")
        return {"input": element, "output": b.text(), "bracket": bracket_of_coord(b).text()}
    if direction == "wall-path":
        w = _parse_stage(parse_wall, t, element)
        return {"input": element, "output": _domain_stage(phi_map, w).text()}
    p = _parse_stage(parse_path, t, element)
    return {"input": element, "output": _domain_stage(phi_map_inverse, p).text()}


def cmd_map(args) -> int:
    t = _type(args)
    direction = DIRECTIONS.get(args.direction)
    if direction is None:
        raise UsageError(f"unknown direction {args.direction!r}; use one of coord-slice, slice-coord, wall-path, path-wall")
    res = _map(t, args.level, direction, args.element)
    if args.format == "json":
        _emit(args, json.dumps({"type": str(t), "direction": direction, **res}, indent=2))
    else:
        _emit(args, res["output"] + (f"  {res['bracket']}" if "bracket" in res and direction == "coord-slice" else ""))
    return 0


def cmd_ground(args) -> int:
    t = _type(args)
    lam = _weight(t, args.weight)
    rep = ground_report(t, lam)
    if args.format == "json":
        _emit(args, json.dumps(rep, indent=2))
    else:
        lines = [
            f"type {rep['type']}  level {rep['level']}  lambda {rep['lambda']}",
            f"ground chain (periodic from {rep['periodic_from']}, period {rep['period']}):",
        ]
        for k, (b, wt) in enumerate(zip(rep["chain"], rep["chain_weights"])):
            lines.append(f"  b_{k} = {b}   lambda_{k} = {wt}")
        lines.append("ground columns: " + "  ".join(rep["wall_columns"]))
        lines.append(f"wall: {rep['wall']}  (proper: {rep['proper']})")
        lines.append(f"path: {rep['path']}")
        _emit(args, "\n".join(lines))
    return 0


def _verify_points(args) -> list[tuple[AffineType, int]]:
    if not args.type:
        if args.level is not None:
            return [(t, lev) for t, lev in grid_points() if lev == args.level]
        return list(grid_points())
    t = _type(args)
    if args.level is not None:
        return [(t, _level(args))]
    return [(tt, lev) for tt, lev in grid_points() if tt == t] or [(t, 1), (t, 2)]


def run_suite(args) -> list[SuiteReport]:
    suite = args.suite
    if suite == "iso":
        if args.type:
            t = _type(args)
            if args.weight:
                cases = [(t, _weight(t, args.weight))]
            else:
                cases = [(t, lam) for lam in dominant_weights(t, _level(args))]
        else:
            cases = [(AffineType.parse(a), ClassicalWeight.parse(b)) for a, b in DEFAULT_ISO]
        depth = 6 if args.depth is None else args.depth
        return [suite_iso(t, lam, depth) for t, lam in cases]
    points = _verify_points(args)
    if suite == "axioms":
        return [suite_axioms(t, lev) for t, lev in points]
    if suite == "perfect":
        return [suite_perfect(t, lev) for t, lev in points]
    if suite == "psi":
        return [suite_psi(t, lev) for t, lev in points]
    if suite == "signatures":
        return [suite_signatures(t, lev, args.samples, args.seed) for t, lev in points]
    return [suite_closure(t, lev, args.samples, args.seed) for t, lev in points]


def cmd_verify(args) -> int:
    if args.samples < 1:
        raise UsageError("--samples must be positive")
    reports = run_suite(args)
    ok = all(r.ok for r in reports)
    if args.format == "json":
        _emit(args, json.dumps({
            "suite": args.suite,
            "seed": args.seed,
            "ok": ok,
            "reports": [r.as_dict() for r in reports],
        }, indent=2))
    else:
        lines = [f"suite {args.suite}  seed {args.seed}"]
        for r in reports:
            where = " ".join(f"{k}={v}" for k, v in r.params.items() if k not in ("seed", "samples"))
            lines.append(f"{'PASS' if r.ok else 'FAIL'}  {where}  checked={r.checked}")
            for v in r.violations[:5]:
                lines.append(f"    {v}")
        lines.append("all passed" if ok else "violations found")
        _emit(args, "\n".join(lines))
    return 0 if ok else 1


# -- parser -----------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse exits 2 on its own errors
        self.print_usage(sys.stderr)
        self.exit(2, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="affine-walls", description="Explore level-l perfect crystals, Young walls and paths.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, formats, default):
        sp.add_argument("--type", help="affine type, e.g. B1:3, C1:2, A2:5, A2:2, D2:3, A1:2")
        sp.add_argument("--level", type=int, help="level l")
        sp.add_argument("--format", choices=formats, default=default)
        sp.add_argument("--out", help="write the output to this file")

    sp = sub.add_parser("enumerate", help="list the elements of B^(l)")
    common(sp, ("text", "json"), "text")
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("graph", help="crystal graph by BFS from the highest weight element")
    common(sp, ("dot", "json", "text"), "json")
    sp.add_argument("--weight", help="dominant weight c0,...,cn")
    sp.add_argument("--depth", type=int, default=3)
    sp.add_argument("--model", choices=("wall", "path", "slice-perfect"), default="wall")
    sp.set_defaults(func=cmd_graph)

    sp = sub.add_parser("map", help="map an element between models")
    common(sp, ("text", "json"), "text")
    sp.add_argument("--direction", required=True, help="coord-slice, slice-coord, wall-path or path-wall")
    sp.add_argument("element", help="element text in the source syntax")
    sp.set_defaults(func=cmd_map)

    sp = sub.add_parser("ground", help="ground-state chain, wall and path of a dominant weight")
    common(sp, ("text", "json"), "text")
    sp.add_argument("--weight", help="dominant weight c0,...,cn")
    sp.set_defaults(func=cmd_ground)

    sp = sub.add_parser("verify", help="run a verification suite")
    common(sp, ("text", "json"), "text")
    sp.add_argument("--suite", choices=SUITES, required=True)
    sp.add_argument("--weight", help="dominant weight for the iso suite")
    sp.add_argument("--depth", type=int, help="BFS depth for the iso suite (default 6)")
    sp.add_argument("--samples", type=int, default=1000, help="walls or words per grid point")
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"affine-walls: error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"affine-walls: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
