"""Crystal graphs and the verification suites run by the CLI and the tests.

Every suite returns a :class:`SuiteReport`; ``ok`` means no violation was
found.  Sampling suites take a seed and derive one generator per grid point
from it, so a report can be reproduced point by point.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Iterator, Optional

from .cartan_data import (
    AffineType,
    CartanError,
    ClassicalWeight,
    Family,
    classical_root,
    dominant_weights,
    level as weight_level,
    simple_root,
)
from .coordinate_crystal import (
    check_perfect,
    cwt_coord,
    e_coord,
    enumerate_crystal,
    eps_coord,
    f_coord,
    ground_chain,
    phi_coord,
)
from .path_model import (
    Path,
    acting_factor,
    cwt_path,
    f_path,
    ground_state_path,
    phi_map,
    wt_path,
)
from .psi_bijection import enumerate_slices, verify_intertwine
from .slice_crystal import cwt_slice, e_slice, f_slice, normalize
from .young_wall import (
    Wall,
    acting_column,
    cwt_wall,
    e_wall,
    f_wall,
    ground_column,
    ground_state_wall,
    is_proper,
    is_reduced,
    proper_problem,
    wt_wall,
)

GRID: tuple[tuple[str, tuple[int, ...]], ...] = (
    ("A1:2", (1, 2)),
    ("B1:3", (1, 2, 3)),
    ("C1:2", (1, 2)),
    ("A2:5", (1, 2)),
    ("A2:2", (1, 2)),
    ("D2:3", (1, 2)),
)
SUITES = ("axioms", "perfect", "psi", "iso", "signatures", "reduced-closure")
MAX_VIOLATIONS = 50


def grid_points() -> Iterator[tuple[AffineType, int]]:
    for name, levels in GRID:
        for lev in levels:
            yield AffineType.parse(name), lev


@dataclass
class SuiteReport:
    suite: str
    params: dict
    checked: int = 0
    violations: list[str] = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def flag(self, msg: str) -> None:
        if len(self.violations) < MAX_VIOLATIONS:
            self.violations.append(msg)
        else:
            self.extra["truncated"] = True

    def as_dict(self) -> dict:
        return {
            "suite": self.suite,
            "params": self.params,
            "checked": self.checked,
            "ok": self.ok,
            "violations": list(self.violations),
            "extra": self.extra,
        }


# -- crystal graphs -------------------------------------------------------------


@dataclass
class GraphDump:
    """BFS part of a crystal graph: ``(src, dst, color)`` is an edge iff ``f_color(src) = dst``."""

    meta: dict
    nodes: list[dict] = field(default_factory=list)
    edges: list[dict] = field(default_factory=list)
    objects: list[Hashable] = field(default_factory=list, repr=False)

    def depth_counts(self) -> list[int]:
        cnt = Counter(n["depth"] for n in self.nodes)
        return [cnt[d] for d in range(max(cnt) + 1)] if cnt else []

    def as_dict(self) -> dict:
        return {"meta": self.meta, "nodes": self.nodes, "edges": self.edges}


def bfs_graph(
    root: Hashable,
    colors: Iterable[int],
    step: Callable[[int, Hashable], Optional[Hashable]],
    depth: int,
    text: Callable[[Hashable], str],
    weight: Callable[[Hashable], ClassicalWeight],
    meta: dict,
) -> GraphDump:
    """Apply every ``f_i`` from ``root`` up to ``depth`` steps; node ids follow BFS order."""
    colors = tuple(colors)
    g = GraphDump(dict(meta))
    ids: dict[Hashable, int] = {}

    def add(obj: Hashable, d: int) -> int:
        ids[obj] = len(g.objects)
        g.objects.append(obj)
        g.nodes.append({"id": ids[obj], "element": text(obj), "weight": weight(obj).text(), "depth": d})
        return ids[obj]

    add(root, 0)
    frontier = [root]
    for d in range(depth):
        nxt = []
        for obj in frontier:
            for i in colors:
                img = step(i, obj)
                if img is None:
                    continue
                if img not in ids:
                    add(img, d + 1)
                    nxt.append(img)
                g.edges.append({"src": ids[obj], "dst": ids[img], "color": i})
        frontier = nxt
    return g


def _meta(t: AffineType, lev: int, lam: Optional[ClassicalWeight], depth: Optional[int], model: str) -> dict:
    return {
        "type": str(t),
        "rank": t.rank,
        "level": lev,
        "lambda": None if lam is None else lam.text(),
        "depth": depth,
        "model": model,
    }


def wall_graph(t: AffineType, lam: ClassicalWeight, depth: int) -> GraphDump:
    root = ground_state_wall(t, lam)
    return bfs_graph(root, t.index_set, f_wall, depth, Wall.text, cwt_wall,
                     _meta(t, root.level, lam, depth, "wall"))


def path_graph(t: AffineType, lam: ClassicalWeight, depth: int) -> GraphDump:
    root = ground_state_path(t, lam)
    return bfs_graph(root, t.index_set, f_path, depth, Path.text, cwt_path,
                     _meta(t, root.level, lam, depth, "path"))


def slice_graph(t: AffineType, lev: int) -> GraphDump:
    """The whole finite graph of level-``lev`` slice classes; depth is the undirected distance from the first node."""
    elems = sorted(enumerate_slices(t, lev), key=lambda s: s.layers)
    g = GraphDump(_meta(t, lev, None, None, "slice-perfect"))
    ids = {s: k for k, s in enumerate(elems)}
    dist = {elems[0]: 0}
    queue = [elems[0]]
    for s in queue:
        for i in t.index_set:
            for op in (f_slice, e_slice):
                img = op(i, s)
                if img is not None:
                    img = normalize(img)
                    if img not in dist:
                        dist[img] = dist[s] + 1
                        queue.append(img)
    for s in elems:
        g.objects.append(s)
        g.nodes.append({"id": ids[s], "element": s.text(), "weight": cwt_slice(s).text(), "depth": dist.get(s, -1)})
    for s in elems:
        for i in t.index_set:
            img = f_slice(i, s)
            if img is not None:
                g.edges.append({"src": ids[s], "dst": ids[normalize(img)], "color": i})
    return g


# -- weight bookkeeping -----------------------------------------------------------


def halving_candidates(t: AffineType) -> dict[str, dict[int, Fraction]]:
    """Halving tables to try; the half-height colors of ``t`` halved or not."""
    half = Fraction(1, 2)
    if t.family is Family.D2:
        n = t.rank
        return {"none": {}, "0": {0: half}, "n": {n: half}, "0 and n": {0: half, n: half}}
    if t.family is Family.C1:
        return {"none": {}, "0": {0: half}}
    if t.family is Family.A2odd:
        return {"none": {}, "n": {t.rank: half}}
    return {"none": {}}


class WeightCheck:
    """Collects ``cl(wt) = cwt`` and ``wt(f_i W) = wt(W) - alpha_i`` over visited walls."""

    def __init__(self, report: SuiteReport) -> None:
        self.report = report
        self.walls: set[Wall] = set()

    def visit(self, w: Wall) -> None:
        if w in self.walls:
            return
        self.walls.add(w)
        if wt_wall(w).classical() != cwt_wall(w):
            self.report.flag(f"cl(wt) != cwt at {w.text()}: {wt_wall(w).classical().text()} vs {cwt_wall(w).text()}")

    def step(self, w: Wall, i: int, v: Wall) -> None:
        if wt_wall(v) != wt_wall(w) - simple_root(w.ctype, i):
            self.report.flag(f"wt(f_{i} W) != wt(W) - alpha_{i} at {w.text()}")

    def halving_table(self) -> dict[str, bool]:
        """For every candidate table: does ``cl(wt) = cwt`` hold on all visited walls?"""
        if not self.walls:
            return {}
        t = next(iter(self.walls)).ctype
        out = {}
        for name, table in halving_candidates(t).items():
            ok = True
            for w in self.walls:
                try:
                    if wt_wall(w, table).classical() != cwt_wall(w):
                        ok = False
                        break
                except CartanError:
                    ok = False
                    break
            out[name] = ok
        return out


# -- suites -------------------------------------------------------------------------


def suite_axioms(t: AffineType, lev: int) -> SuiteReport:
    """The crystal axioms on ``B^(lev)``, plus string lengths and closure of the element set."""
    rep = SuiteReport("axioms", {"type": str(t), "level": lev})
    elems = enumerate_crystal(t, lev)
    members = set(elems)
    rep.extra["size"] = len(elems)
    for b in elems:
        wt = cwt_coord(b)
        for i in t.index_set:
            rep.checked += 1
            eps, phi = eps_coord(i, b), phi_coord(i, b)
            tag = f"color {i} at {b.text()}"
            if eps < 0 or phi < 0:
                rep.flag(f"negative eps/phi, {tag}")
            if phi - eps != wt.pairing(i):
                rep.flag(f"phi - eps != <h_i, wt>, {tag}")
            for op, back, sign in ((f_coord, e_coord, -1), (e_coord, f_coord, 1)):
                img = op(i, b)
                if img is None:
                    continue
                if img not in members:
                    rep.flag(f"{op.__name__} leaves the crystal, {tag}")
                    continue
                if back(i, img) != b:
                    rep.flag(f"{op.__name__} is not inverted by {back.__name__}, {tag}")
                if cwt_coord(img) != wt + classical_root(t, i).scale(sign):
                    rep.flag(f"{op.__name__} shifts the weight wrongly, {tag}")
                if (eps_coord(i, img), phi_coord(i, img)) != (eps - sign, phi + sign):
                    rep.flag(f"{op.__name__} shifts eps/phi wrongly, {tag}")
            for op, want, name in ((e_coord, eps, "eps"), (f_coord, phi, "phi")):
                k, cur = 0, op(i, b)
                while cur is not None:
                    k, cur = k + 1, op(i, cur)
                if k != want:
                    rep.flag(f"{name} is not the string length, {tag}")
    return rep


def suite_perfect(t: AffineType, lev: int) -> SuiteReport:
    rep = SuiteReport("perfect", {"type": str(t), "level": lev})
    pr = check_perfect(t, lev)
    rep.checked = pr.size
    rep.extra.update(pr.as_dict())
    if not pr.connected:
        rep.flag(f"B x B has {pr.components} components")
    if not pr.weight_cone:
        rep.flag("no weight lambda_0 with all weights in lambda_0 - (1/d_0) sum Z>=0 alpha_i")
    for b in pr.eps_level_violations:
        rep.flag(f"<c, eps(b)> < level at {b}")
    for v in pr.uniqueness_violations:
        rep.flag(f"not unique: {v}")
    return rep


def suite_psi(t: AffineType, lev: int) -> SuiteReport:
    rep = SuiteReport("psi", {"type": str(t), "level": lev})
    ir = verify_intertwine(t, lev, limit=MAX_VIOLATIONS)
    rep.checked = ir.checked
    rep.extra["size"] = len(enumerate_crystal(t, lev))
    for c in ir.counterexamples:
        rep.flag(c)
    return rep


def suite_iso(t: AffineType, lam: ClassicalWeight, depth: int) -> SuiteReport:
    """Wall and path BFS graphs agree under Phi: nodes, weights, colored edges and per-depth counts."""
    rep = SuiteReport("iso", {"type": str(t), "lambda": lam.text(), "depth": depth})
    wg, pg = wall_graph(t, lam, depth), path_graph(t, lam, depth)
    rep.extra["wall_counts"] = wg.depth_counts()
    rep.extra["path_counts"] = pg.depth_counts()
    if rep.extra["wall_counts"] != rep.extra["path_counts"]:
        rep.flag(f"per-depth counts differ: walls {rep.extra['wall_counts']} paths {rep.extra['path_counts']}")
    pid = {p: k for k, p in enumerate(pg.objects)}
    image: list[Optional[int]] = []
    for k, w in enumerate(wg.objects):
        rep.checked += 1
        try:
            p = phi_map(w)
        except ValueError as exc:
            rep.flag(f"Phi undefined at {w.text()}: {exc}")
            image.append(None)
            continue
        j = pid.get(p)
        image.append(j)
        if j is None:
            rep.flag(f"Phi({w.text()}) = {p.text()} is not in the path graph")
            continue
        if pg.nodes[j]["depth"] != wg.nodes[k]["depth"]:
            rep.flag(f"Phi moves {w.text()} to another depth")
        if wt_wall(w) != wt_path(pg.objects[j]):
            rep.flag(f"Phi does not preserve wt at {w.text()}")
    if len({j for j in image if j is not None}) != len(pg.objects) or None in image:
        rep.flag("Phi is not a bijection on the vertex sets")
    wedges = Counter((image[e["src"]], image[e["dst"]], e["color"]) for e in wg.edges)
    pedges = Counter((e["src"], e["dst"], e["color"]) for e in pg.edges)
    if wedges != pedges:
        rep.flag(f"colored edges differ under Phi: {sum((wedges - pedges).values())} wall-only, "
                 f"{sum((pedges - wedges).values())} path-only")
    weights = WeightCheck(rep)
    for w in wg.objects:
        weights.visit(w)
    for e in wg.edges:
        weights.step(wg.objects[e["src"]], e["color"], wg.objects[e["dst"]])
    rep.extra["halving"] = weights.halving_table()
    return rep


def _rng(seed: int, t: AffineType, lev: int) -> random.Random:
    return random.Random(f"{seed}:{t}:{lev}")


def random_word_walk(t: AffineType, lam: ClassicalWeight, length: int, rng: random.Random,
                     raising: float = 0.25) -> list[tuple[int, bool, Wall]]:
    """Apply ``length`` random operators from ``Y_lam``; returns ``(color, raising, result)`` per non-zero step."""
    w = ground_state_wall(t, lam)
    out = [(-1, False, w)]
    for _ in range(length):
        i = rng.randrange(t.rank + 1)
        up = rng.random() < raising
        v = (e_wall if up else f_wall)(i, w)
        if v is not None:
            out.append((i, up, v))
            w = v
    return out


def suite_signatures(t: AffineType, lev: int, samples: int, seed: int, max_len: int = 12) -> SuiteReport:
    """Acting column of f/e on a wall equals the acting tensor index on its path."""
    rep = SuiteReport("signatures", {"type": str(t), "level": lev, "samples": samples, "seed": seed,
                                     "max_len": max_len})
    rng = _rng(seed, t, lev)
    lams = list(dominant_weights(t, lev))
    weights = WeightCheck(rep)
    distinct: set[Wall] = set()
    for s in range(samples):
        lam = lams[s % len(lams)]
        steps = random_word_walk(t, lam, rng.randint(0, max_len), rng)
        w = steps[-1][2]
        distinct.add(w)
        rep.checked += 1
        weights.visit(w)
        p = phi_map(w)
        for i in t.index_set:
            for up in (False, True):
                kw, kp = acting_column(i, w, up), acting_factor(i, p, up)
                if kw != kp:
                    op = "e" if up else "f"
                    rep.flag(f"{op}_{i} acts on column {kw} of {w.text()} but on factor {kp} of {p.text()}")
    rep.extra["distinct_walls"] = len(distinct)
    rep.extra["weights"] = [lam.text() for lam in lams]
    rep.extra["halving"] = weights.halving_table()
    return rep


def suite_closure(t: AffineType, lev: int, words: int, seed: int, max_len: int = 12) -> SuiteReport:
    """Random f/e words from ``Y_lam`` never leave the reduced proper walls."""
    rep = SuiteReport("reduced-closure", {"type": str(t), "level": lev, "words": words, "seed": seed,
                                          "max_len": max_len})
    rng = _rng(seed, t, lev)
    lams = list(dominant_weights(t, lev))
    weights = WeightCheck(rep)
    for s in range(words):
        lam = lams[s % len(lams)]
        steps = random_word_walk(t, lam, rng.randint(1, max_len), rng)
        rep.checked += 1
        for (_, _, w), (i, up, v) in zip(steps, steps[1:]):
            problem = proper_problem(v)
            if problem:
                rep.flag(f"{'e' if up else 'f'}_{i} on {w.text()} gives an improper wall: {problem}")
            elif not is_reduced(v):
                rep.flag(f"{'e' if up else 'f'}_{i} on {w.text()} gives a wall with a removable delta")
            weights.visit(v)
            if up:
                weights.step(v, i, w)
            else:
                weights.step(w, i, v)
    rep.extra["halving"] = weights.halving_table()
    return rep


def ground_report(t: AffineType, lam: ClassicalWeight) -> dict:
    """Ground-state data: the chain ``b_k``, the wall ``Y_lam`` and the path ``p_lam``."""
    lev = weight_level(t, lam)
    w = ground_state_wall(t, lam)
    ch = ground_chain(t, lev, lam)
    cols = [ground_column(t, lev, lam, k) for k in range(len(ch.elements) + 2)]
    return {
        "type": str(t),
        "level": lev,
        "lambda": lam.text(),
        "chain": [b.text() for b in ch.elements],
        "chain_weights": [ch.weight(k).text() for k in range(len(ch.elements))],
        "periodic_from": ch.start,
        "period": ch.period,
        "wall": w.text(),
        "wall_columns": [c.text() for c in cols],
        "proper": is_proper(w),
        "path": ground_state_path(t, lam).text(),
    }


__all__ = [
    "GRID",
    "SUITES",
    "GraphDump",
    "SuiteReport",
    "WeightCheck",
    "bfs_graph",
    "grid_points",
    "ground_report",
    "halving_candidates",
    "path_graph",
    "random_word_walk",
    "slice_graph",
    "suite_axioms",
    "suite_closure",
    "suite_iso",
    "suite_perfect",
    "suite_psi",
    "suite_signatures",
    "wall_graph",
]
