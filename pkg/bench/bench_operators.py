"""Timing for the hot paths: coordinate operators, slice operators, wall and path BFS.

Run with ``python3 bench/bench_operators.py``; add ``--quick`` for a short run.
"""

from __future__ import annotations

import argparse
import time
from statistics import median

from affine_walls.cartan_data import AffineType, ClassicalWeight
from affine_walls.coordinate_crystal import enumerate_crystal, f_coord
from affine_walls.psi_bijection import psi
from affine_walls.slice_crystal import f_slice
from affine_walls.suites import path_graph, wall_graph


def _time(fn, repeat: int) -> float:
    runs = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        runs.append(time.perf_counter() - t0)
    return median(runs)


def bench_coord(t: AffineType, lev: int) -> float:
    elems = enumerate_crystal(t, lev)

    def run():
        for b in elems:
            for i in t.index_set:
                f_coord.__wrapped__(i, b) if hasattr(f_coord, "__wrapped__") else f_coord(i, b)

    return _time(run, 5)


def bench_slice(t: AffineType, lev: int) -> float:
    slices = [psi(b) for b in enumerate_crystal(t, lev)]

    def run():
        for s in slices:
            for i in t.index_set:
                f_slice.__wrapped__(i, s) if hasattr(f_slice, "__wrapped__") else f_slice(i, s)

    return _time(run, 5)


def bench_bfs(t: AffineType, lam: ClassicalWeight, depth: int) -> tuple[float, float, int]:
    from affine_walls import young_wall

    # drop caches so each run starts cold
    for fn in (young_wall.proper_problem, young_wall.wall_signature):
        fn.cache_clear()
    t0 = time.perf_counter()
    wg = wall_graph(t, lam, depth)
    tw = time.perf_counter() - t0
    t0 = time.perf_counter()
    path_graph(t, lam, depth)
    tp = time.perf_counter() - t0
    return tw, tp, len(wg.nodes)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--quick", action="store_true")
    args = ap.parse_args()
    depth = 4 if args.quick else 6

    print(f"{'case':<28}{'size':>6}{'coord f (ms)':>14}{'slice f (ms)':>14}")
    for name, lev in (("B1:3", 2), ("B1:3", 3), ("C1:2", 2), ("D2:3", 2), ("A2:5", 2)):
        t = AffineType.parse(name)
        n = len(enumerate_crystal(t, lev))
        print(f"{name + ' l=' + str(lev):<28}{n:>6}{1e3 * bench_coord(t, lev):>14.2f}{1e3 * bench_slice(t, lev):>14.2f}")

    print()
    print(f"{'BFS case':<28}{'nodes':>6}{'walls (s)':>14}{'paths (s)':>14}")
    for name, lam in (("B1:3", "3,0,0,0"), ("C1:2", "1,1,0"), ("B1:3", "1,1,0,1"), ("D2:3", "1,0,1")):
        t = AffineType.parse(name)
        tw, tp, nodes = bench_bfs(t, ClassicalWeight.parse(lam), depth)
        print(f"{name + ' ' + lam + ' d=' + str(depth):<28}{nodes:>6}{tw:>14.3f}{tp:>14.3f}")


if __name__ == "__main__":
    main()
