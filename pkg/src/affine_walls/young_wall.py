"""Level-l Young walls built on a ground-state wall.

A wall is stored as its first ``N`` columns (column 0 is the rightmost);
every column from ``N`` on is the ground-state column.  Columns are slices
standing on the ground, so their layer states are physical heights and not
classes modulo ``delta``.  Ground columns are ``psi(b_k)`` lifted so that no
layer is empty (:func:`~affine_walls.slice_crystal.base_embedding`).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import lcm
from typing import Mapping, Optional

from .cartan_data import (
    AffineType,
    AffineWeight,
    CartanError,
    ClassicalWeight,
    Family,
    level as weight_level,
    weighted_root_sum,
)
from .coordinate_crystal import ground_chain
from .psi_bijection import psi
from .signature import Reduced, reduce_signature
from .slice_crystal import (
    CUBE_FAMILIES,
    Slice,
    SliceError,
    SplitLayer,
    add_delta,
    base_embedding,
    e_column,
    f_slice,
    layer_count,
    parse_slice,
    slice_problem,
    split_view,
    sub_delta,
    variant_count,
)

EXTRA_GROUND = 2
WINDOW_CAP = 8


class WallError(ValueError):
    pass


class SignatureWindowError(RuntimeError):
    pass


def column_variant(t: AffineType, k: int) -> int:
    if t.family is Family.A1:
        return (-k) % (t.rank + 1)
    if t.family in CUBE_FAMILIES:
        return k % 2
    return 0


def _variant_period(t: AffineType) -> int:
    return variant_count(t)


@lru_cache(maxsize=None)
def _ground_cycle(t: AffineType, lev: int, lam: ClassicalWeight) -> tuple[int, int]:
    """(first index of the periodic part, period) for the ground columns."""
    ch = ground_chain(t, lev, lam)
    return ch.start, lcm(ch.period, _variant_period(t))


@lru_cache(maxsize=1 << 16)
def ground_column(t: AffineType, lev: int, lam: ClassicalWeight, k: int) -> Slice:
    start, per = _ground_cycle(t, lev, lam)
    if k >= start + per:
        return ground_column(t, lev, lam, start + (k - start) % per)
    b = ground_chain(t, lev, lam)[k]
    return base_embedding(psi(b, column_variant(t, k)))


@dataclass(frozen=True)
class Wall:
    ctype: AffineType
    level: int
    lam: ClassicalWeight
    cols: tuple[Slice, ...]

    def __post_init__(self) -> None:
        # drop trailing ground columns so equal walls compare equal
        cols = list(self.cols)
        while cols and cols[-1] == self.ground(len(cols) - 1):
            cols.pop()
        object.__setattr__(self, "cols", tuple(cols))

    def ground(self, k: int) -> Slice:
        return ground_column(self.ctype, self.level, self.lam, k)

    def column(self, k: int) -> Slice:
        return self.cols[k] if k < len(self.cols) else self.ground(k)

    @property
    def size(self) -> int:
        """Number of stored columns."""
        return len(self.cols)

    def replace(self, k: int, col: Slice) -> "Wall":
        cols = [self.column(j) for j in range(max(k + 1, len(self.cols)))]
        cols[k] = col
        return Wall(self.ctype, self.level, self.lam, tuple(cols))

    def text(self) -> str:
        body = ";".join(c.text() for c in self.cols)
        return f"lambda={self.lam.text()}; cols={body}"

    def __str__(self) -> str:
        return self.text()


def _check_lambda(t: AffineType, lev: int, lam: ClassicalWeight) -> None:
    if len(lam.coeffs) != t.rank + 1 or not lam.is_dominant() or weight_level(t, lam) != lev:
        raise WallError(f"{lam.text()} is not a dominant weight of level {lev} for {t}")


def ground_state_wall(t: AffineType, lam: ClassicalWeight) -> Wall:
    if len(lam.coeffs) != t.rank + 1:
        raise WallError(f"{lam.text()} has the wrong length for {t}")
    lev = weight_level(t, lam)
    _check_lambda(t, lev, lam)
    return Wall(t, lev, lam, ())


def parse_wall(t: AffineType, text: str) -> Wall:
    m = re.fullmatch(r"\s*lambda\s*=\s*([-\d,\s]+);\s*cols\s*=\s*(.*?)\s*", text)
    if not m:
        raise WallError(f"cannot parse wall {text!r}")
    try:
        lam = ClassicalWeight.parse(m.group(1).replace(" ", ""))
    except CartanError as exc:
        raise WallError(str(exc)) from exc
    if len(lam.coeffs) != t.rank + 1:
        raise WallError(f"{lam.text()} has the wrong length for {t}")
    lev = weight_level(t, lam)
    _check_lambda(t, lev, lam)
    body = m.group(2)
    cols = []
    for k, part in enumerate(p for p in body.split(";") if p.strip()):
        try:
            s = parse_slice(t, part.strip())
        except SliceError as exc:
            raise WallError(str(exc)) from exc
        if s.variant != column_variant(t, k):
            raise WallError(f"column {k} must use pattern variant {column_variant(t, k)}")
        if len(s.layers) != layer_count(t, lev):
            raise WallError(f"column {k} has {len(s.layers)} layers; expected {layer_count(t, lev)}")
        cols.append(s)
    return Wall(t, lev, lam, tuple(cols))


# -- properness ---------------------------------------------------------------


@lru_cache(maxsize=1 << 18)
def _split_choices(s: Slice) -> tuple[tuple[SplitLayer, ...], ...]:
    """Split views a column may be read in.

    Cube-family columns may leave any of their splits whole; the other
    families always use the full split.
    """
    full = split_view(s)
    if s.ctype.family not in CUBE_FAMILIES:
        return (full,)
    npairs = sum(1 for lay in full if lay.role == "gave")
    views = [
        split_view(s, skip=frozenset(skip))
        for r in range(npairs + 1)
        for skip in combinations(range(npairs), r)
    ]
    return tuple(dict.fromkeys(views))


def _distinct_heights_apply(t: AffineType) -> bool:
    # every A_n^(1) block is a full cube, see the ledger
    return t.family is not Family.A1


def _check_span(w: Wall) -> int:
    """Columns to inspect: stored ones plus a full period of the ground tail."""
    start, per = _ground_cycle(w.ctype, w.level, w.lam)
    return max(w.size, start) + per + 1


def _layer_fits(a: SplitLayer, b: SplitLayer) -> bool:
    """Layer ``a`` of the left column against layer ``b`` of the right one."""
    if a.role == "took":
        # a broken half leaning on its partner only needs its top supported
        return max(a.hb, a.hf) <= max(b.hb, b.hf)
    if b.role == "gave" and a.hb != a.hf:
        # a lone half may rest against the block that gave up its top half
        return max(a.hb, a.hf) <= max(b.hb, b.hf) + 1
    return a.hb <= b.hb and a.hf <= b.hf


def _fits(left: tuple[SplitLayer, ...], right: tuple[SplitLayer, ...]) -> bool:
    return all(_layer_fits(a, b) for a, b in zip(left, right))


def _built_on(w: Wall, k: int, col: Slice) -> bool:
    g = w.ground(k)
    pat = col.pattern
    return all(pat.contains(a, b) for a, b in zip(g.layers, col.layers))


def _column_problem(w: Wall, k: int) -> Optional[str]:
    col = w.cols[k]
    if col.variant != column_variant(w.ctype, k):
        return f"column {k} uses the wrong pattern variant"
    problem = slice_problem(col)
    if problem:
        return f"column {k}: {problem}"
    if not _built_on(w, k, col):
        return f"column {k} does not contain the ground-state column"
    return None


@lru_cache(maxsize=1 << 16)
def proper_problem(w: Wall, start: int = 0) -> Optional[str]:
    """Why ``w`` is not a proper wall built on its ground state, or ``None``.

    The wall is proper when some choice of split view per column has no free
    space to the right of any column and no two unit-depth tops of one layer
    at the same integer height.  With ``start > 0`` only the part of the wall
    from column ``start`` on is inspected.
    """
    for k in range(start, w.size):
        problem = _column_problem(w, k)
        if problem:
            return problem
    span = max(_check_span(w), start + 2)
    choices = [_split_choices(w.column(k)) for k in range(start, span)]
    nlayers = layer_count(w.ctype, w.level)
    distinct = _distinct_heights_apply(w.ctype)
    worst = [0, "free space to the right of a column"]

    def search(pos: int, prev, seen: tuple[frozenset[int], ...]) -> bool:
        if pos == len(choices):
            return True
        for view in choices[pos]:
            if prev is not None and not _fits(view, prev):
                if pos >= worst[0]:
                    worst[:] = [pos, f"free space to the right of column {start + pos}"]
                continue
            nxt = seen
            if distinct:
                tops = [lay.hb if lay.integer_height else None for lay in view]
                clash = next((j for j, h in enumerate(tops) if h is not None and h in seen[j]), None)
                if clash is not None:
                    if pos >= worst[0]:
                        worst[:] = [pos, f"layer {clash}: column {start + pos} repeats the integer height {tops[clash]}"]
                    continue
                nxt = tuple(sj | {h} if h is not None else sj for sj, h in zip(seen, tops))
            if search(pos + 1, view, nxt):
                return True
        return False

    if search(0, None, (frozenset(),) * nlayers):
        return None
    return worst[1]


def proper_from(w: Wall, start: int) -> bool:
    return proper_problem(w, start) is None


def is_proper(w: Wall) -> bool:
    return proper_problem(w) is None


def _proper_after(w: Wall, k: int, col: Slice) -> bool:
    """Properness of ``w`` with column ``k`` replaced by ``col``."""
    if slice_problem(col) or not _built_on(w, k, col):
        return False
    return is_proper(w.replace(k, col))


def has_removable_delta(w: Wall, k: int) -> bool:
    col = w.column(k)
    if col.layers[-1] < col.pattern.states:
        return False
    return _proper_after(w, k, sub_delta(col))


def reduce(w: Wall) -> Wall:
    """Strip removable deltas, scanning columns from right to left until none is left."""
    changed = True
    while changed:
        changed = False
        for k in range(w.size):
            while has_removable_delta(w, k):
                w = w.replace(k, sub_delta(w.column(k)))
                changed = True
    return w


def is_reduced(w: Wall) -> bool:
    return all(not has_removable_delta(w, k) for k in range(w.size))


# -- signatures ---------------------------------------------------------------


def column_signature(w: Wall, k: int, i: int) -> tuple[int, int]:
    """(eps_bar, phi_bar): consecutive ``e_i`` / ``f_i`` on column ``k`` keeping the wall proper."""
    out = []
    for op in (e_column, f_slice):
        cnt, cur = 0, w.column(k)
        while True:
            nxt = op(i, cur)
            if nxt is None or not _proper_after(w, k, nxt):
                break
            cnt, cur = cnt + 1, nxt
        out.append(cnt)
    return out[0], out[1]


def _signature_for(w: Wall, i: int, width: int) -> Reduced:
    entries = []
    for k in range(width - 1, -1, -1):
        eps, phi = column_signature(w, k, i)
        if k == width - 1:
            # its 1's cancel against the 0's of the ground column to its left
            eps = 0
        entries.append((k, eps, phi))
    return reduce_signature(entries)


@lru_cache(maxsize=1 << 16)
def wall_signature(w: Wall, i: int) -> Reduced:
    """Reduced ``i``-signature; tags are column indices."""
    if i not in w.ctype.index_set:
        raise WallError(f"color {i} out of range for {w.ctype}")
    width = w.size + EXTRA_GROUND
    prev = _signature_for(w, i, width)
    while True:
        nxt = _signature_for(w, i, width + 1)
        if nxt == prev:
            return prev
        width += 1
        if width > w.size + WINDOW_CAP:
            raise SignatureWindowError(f"{w.text()}: {i}-signature does not stabilize")
        prev = nxt


def eps_wall(i: int, w: Wall) -> int:
    return wall_signature(w, i).eps


def phi_wall(i: int, w: Wall) -> int:
    return wall_signature(w, i).phi


def cwt_wall(w: Wall) -> ClassicalWeight:
    return ClassicalWeight(tuple(phi_wall(i, w) - eps_wall(i, w) for i in w.ctype.index_set))


def acting_column(i: int, w: Wall, raising: bool) -> Optional[int]:
    sig = wall_signature(w, i)
    return sig.e_target() if raising else sig.f_target()


def f_wall(i: int, w: Wall) -> Optional[Wall]:
    k = acting_column(i, w, raising=False)
    if k is None:
        return None
    col = f_slice(i, w.column(k))
    if col is None:
        raise WallError(f"f_{i} on column {k} of {w.text()} vanished")
    return w.replace(k, col)


def e_wall(i: int, w: Wall) -> Optional[Wall]:
    k = acting_column(i, w, raising=True)
    if k is None:
        return None
    col = e_column(i, w.column(k))
    if col is None:
        raise WallError(f"e_{i} on column {k} of {w.text()} vanished")
    return w.replace(k, col)


# -- weights ------------------------------------------------------------------


def default_halving(t: AffineType) -> dict[int, Fraction]:
    """Per-color factor applied to block counts; 1/2 where two half-blocks make one root."""
    if t.family is Family.C1:
        return {0: Fraction(1, 2)}
    if t.family is Family.A2odd:
        return {t.rank: Fraction(1, 2)}
    return {}


def root_count(w: Wall, halving: Optional[Mapping[int, Fraction]] = None) -> tuple[Fraction, ...]:
    """Blocks added to the ground-state wall, per color, after halving."""
    t = w.ctype
    half = default_halving(t) if halving is None else halving
    k = [0] * (t.rank + 1)
    for j in range(w.size):
        new, old = w.cols[j].counts(), w.ground(j).counts()
        for c in t.index_set:
            k[c] += new[c] - old[c]
    return tuple(Fraction(v) * Fraction(half.get(c, 1)) for c, v in enumerate(k))


def wt_wall(w: Wall, halving: Optional[Mapping[int, Fraction]] = None) -> AffineWeight:
    return AffineWeight.from_classical(w.lam) - weighted_root_sum(w.ctype, root_count(w, halving))


def lift(w: Wall, k: int) -> Wall:
    """Add one delta to column ``k`` (no properness check)."""
    return w.replace(k, add_delta(w.column(k)))
