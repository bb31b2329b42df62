"""Level-l slices and their Kashiwara operators.

A layer of a slice is stored as one nonnegative integer, its *state*.  One
cycle of the stacking pattern has ``S`` states and ``state // S`` counts the
full cycles below.  For most families the residue ``state % S`` is simply
the number of blocks placed in the current cycle.  For ``B_n^(1)`` and
``A_{2n-1}^(2)`` the cycle starts with a unit cube made of a 0-half and a
1-half that can be placed in either order.  The residues there are::

    0 empty, 1 lone 0-half, 2 lone 1-half, 3 full cube, 4.. the rest

Residues 1 and 2 are incomparable, which is why a plain token count along a
single stream cannot describe these layers.

Heights are measured in half-units.  A half-depth block leaves the two depth
positions (back, front) at different heights, so every state has a pair
``(hb, hf)``.  Containment of layers is containment of these profiles.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from .cartan_data import AffineType, ClassicalWeight, Family

SUPPORTING, COVERING, BOTH = "S", "C", "B"
CUBE_FAMILIES = (Family.B1, Family.A2odd)


class SliceError(ValueError):
    pass


class RuleError(RuntimeError):
    """An operator produced something that is not a slice (internal bug signal)."""


@dataclass(frozen=True)
class Cell:
    """One block of the cyclic stacking pattern.  ``color`` is -1 for the 0/1 cube."""

    color: int
    height: int
    role: str
    name: str


@dataclass(frozen=True)
class Move:
    color: int
    role: str
    delta: int  # change of the state value
    height: int  # block top (removal) or slot base (addition), relative to the cycle base


@dataclass(frozen=True)
class Pattern:
    ctype: AffineType
    variant: int
    cells: tuple[Cell, ...]
    states: int
    period_height: int
    profile: tuple[tuple[int, int], ...]  # (hb, hf) per residue
    removals: tuple[tuple[Move, ...], ...]
    additions: tuple[tuple[Move, ...], ...]
    partial_counts: tuple[tuple[int, ...], ...]  # color counts per residue
    top_name: tuple[str, ...]

    @property
    def cycle_counts(self) -> tuple[int, ...]:
        return tuple(sum(c) for c in zip(*(self._cell_counts(cell) for cell in self.cells)))

    def _cell_counts(self, cell: Cell) -> tuple[int, ...]:
        v = [0] * (self.ctype.rank + 1)
        if cell.color < 0:
            v[0] += 1
            v[1] += 1
        else:
            v[cell.color] += 1
        return tuple(v)

    # absolute helpers ---------------------------------------------------
    def heights(self, state: int) -> tuple[int, int]:
        q, r = divmod(state, self.states)
        hb, hf = self.profile[r]
        base = q * self.period_height
        return base + hb, base + hf

    def contains(self, small: int, big: int) -> bool:
        a, b = self.heights(small), self.heights(big)
        return a[0] <= b[0] and a[1] <= b[1]

    def residue(self, state: int) -> int:
        return state % self.states

    def counts(self, state: int) -> tuple[int, ...]:
        q, r = divmod(state, self.states)
        cyc = self.cycle_counts
        return tuple(q * c + p for c, p in zip(cyc, self.partial_counts[r]))

    def removal_moves(self, state: int) -> Iterable[tuple[Move, int, int]]:
        """(move, new_state, absolute block height)."""
        base = (state // self.states) * self.period_height
        for m in self.removals[self.residue(state)]:
            yield m, state + m.delta, base + m.height

    def addition_moves(self, state: int) -> Iterable[tuple[Move, int, int]]:
        base = (state // self.states) * self.period_height
        for m in self.additions[self.residue(state)]:
            yield m, state + m.delta, base + m.height

    def variant_name(self) -> str:
        return variant_name(self.ctype, self.variant)


def variant_count(t: AffineType) -> int:
    if t.family is Family.A1:
        return t.rank + 1
    if t.family in CUBE_FAMILIES:
        return 2
    return 1


def variant_name(t: AffineType, variant: int) -> str:
    if t.family is Family.A1:
        return f"R{variant}"
    if t.family in CUBE_FAMILIES:
        return ("B01", "B10")[variant]
    return "S"


def parse_variant(t: AffineType, text: str) -> int:
    for v in range(variant_count(t)):
        if variant_name(t, v) == text:
            return v
    raise SliceError(f"unknown pattern variant {text!r} for {t}")


def _cells(t: AffineType, variant: int) -> list[Cell]:
    n, f = t.rank, t.family
    if f is Family.A1:
        return [Cell((variant + k) % (n + 1), 2, BOTH, str((variant + k) % (n + 1))) for k in range(n + 1)]
    if f in CUBE_FAMILIES:
        cells = [Cell(-1, 2, BOTH, "01")]
        cells += [Cell(j, 2, SUPPORTING, f"{j}") for j in range(2, n)]
        cells += [Cell(n, 1, SUPPORTING, f"{n}a"), Cell(n, 1, COVERING, f"{n}b")]
        cells += [Cell(j, 2, COVERING, f"{j}'") for j in range(n - 1, 1, -1)]
        return cells
    cells = [Cell(0, 1, COVERING, "0a"), Cell(0, 1, SUPPORTING, "0b")]
    cells += [Cell(j, 2, SUPPORTING, f"{j}") for j in range(1, n)]
    if f is Family.D2:
        cells += [Cell(n, 1, SUPPORTING, f"{n}a"), Cell(n, 1, COVERING, f"{n}b")]
    else:
        cells += [Cell(n, 2, BOTH, f"{n}")]
    cells += [Cell(j, 2, COVERING, f"{j}'") for j in range(n - 1, 0, -1)]
    return cells


@lru_cache(maxsize=None)
def pattern(t: AffineType, variant: int = 0) -> Pattern:
    if not 0 <= variant < variant_count(t):
        raise SliceError(f"variant {variant} out of range for {t}")
    cells = _cells(t, variant)
    size = t.rank + 1
    ph = sum(c.height for c in cells)
    profile: list[tuple[int, int]] = []
    removals: list[tuple[Move, ...]] = []
    additions: list[tuple[Move, ...]] = []
    partial: list[tuple[int, ...]] = []
    names: list[str] = []
    last = cells[-1]

    def add_counts(acc: list[int], cell: Cell) -> None:
        if cell.color < 0:
            acc[0] += 1
            acc[1] += 1
        else:
            acc[cell.color] += 1

    if t.family in CUBE_FAMILIES:
        back = 0 if variant == 0 else 1  # color of the back half of the cube
        states = len(cells) + 2
        # residue 0: empty
        profile.append((0, 0))
        removals.append((Move(last.color, last.role, -1, 0),))
        additions.append((Move(0, BOTH, 1, 0), Move(1, BOTH, 2, 0)))
        partial.append((0,) * size)
        names.append(last.name)
        # residues 1, 2: lone halves
        for col in (0, 1):
            hb, hf = (2, 0) if col == back else (0, 2)
            profile.append((hb, hf))
            removals.append((Move(col, BOTH, -(col + 1), 2),))
            additions.append((Move(1 - col, BOTH, 2 - col, 0),))
            cnt = [0] * size
            cnt[col] = 1
            partial.append(tuple(cnt))
            names.append(f"{col}/2")
        # residues 3..S-1: the cube plus k further cells are complete
        acc = [0] * size
        h = 0
        for k, cell in enumerate(cells[:-1]):
            add_counts(acc, cell)
            h += cell.height
            profile.append((h, h))
            if k == 0:
                removals.append((Move(0, BOTH, -1, h), Move(1, BOTH, -2, h)))
            else:
                removals.append((Move(cell.color, cell.role, -1, h),))
            nxt = cells[k + 1]
            additions.append((Move(nxt.color, nxt.role, 1, h),))
            partial.append(tuple(acc))
            names.append(cell.name)
    else:
        states = len(cells)
        acc = [0] * size
        h = 0
        for k in range(states):
            top = cells[k - 1] if k else last
            profile.append((h, h))
            removals.append((Move(top.color, top.role, -1, h),))
            nxt = cells[k]
            additions.append((Move(nxt.color, nxt.role, 1, h),))
            partial.append(tuple(acc))
            names.append(top.name)
            add_counts(acc, nxt)
            h += nxt.height
    pat = Pattern(
        t,
        variant,
        tuple(cells),
        states,
        ph,
        tuple(profile),
        tuple(removals),
        tuple(additions),
        tuple(partial),
        tuple(names),
    )
    return pat


# -- slices -------------------------------------------------------------------


def layer_count(t: AffineType, lev: int) -> int:
    return 2 * lev if t.family is Family.C1 else lev


@dataclass(frozen=True, order=True)
class Slice:
    ctype: AffineType
    variant: int
    layers: tuple[int, ...]

    @property
    def pattern(self) -> Pattern:
        return pattern(self.ctype, self.variant)

    @property
    def level(self) -> int:
        if self.ctype.family is Family.C1:
            return len(self.layers) // 2
        return len(self.layers)

    def text(self) -> str:
        return f"{variant_name(self.ctype, self.variant)}:" + ",".join(map(str, self.layers))

    def __str__(self) -> str:
        return self.text()

    def counts(self) -> tuple[int, ...]:
        pat = self.pattern
        tot = [0] * (self.ctype.rank + 1)
        for s in self.layers:
            for c, v in enumerate(pat.counts(s)):
                tot[c] += v
        return tuple(tot)

    def describe(self) -> str:
        pat = self.pattern
        parts = []
        for s in self.layers:
            q, r = divmod(s, pat.states)
            parts.append(f"{q}:{pat.top_name[r]}")
        return "[" + " ".join(parts) + "]"


def parse_slice(t: AffineType, text: str) -> Slice:
    try:
        var, _, body = text.partition(":")
        layers = tuple(int(v) for v in body.split(","))
    except ValueError as exc:
        raise SliceError(f"cannot parse slice {text!r}") from exc
    s = Slice(t, parse_variant(t, var.strip()), layers)
    problem = slice_problem(s)
    if problem:
        raise SliceError(f"{text!r} is not a valid slice: {problem}")
    return s


def top_is_supporting_n(pat: Pattern, state: int) -> bool:
    n = pat.ctype.rank
    return any(m.color == n and m.role == SUPPORTING for m, _, _ in pat.removal_moves(state))


def slice_problem(s: Slice) -> Optional[str]:
    """Reason why ``s`` is not a valid slice, or ``None``."""
    t, pat, lay = s.ctype, s.pattern, s.layers
    if not lay:
        return "no layers"
    if t.family is Family.C1 and len(lay) % 2:
        return "C_n^(1) slices have an even number of layers"
    if min(lay) < 0:
        return "negative state"
    for a, b in zip(lay, lay[1:]):
        if not pat.contains(a, b):
            return f"layers {a} and {b} are not nested"
    if not pat.contains(lay[-1], lay[0] + pat.states):
        return "last layer exceeds the first layer plus delta"
    cnt = s.counts()
    if t.family is Family.A2odd and cnt[t.rank] % 2:
        return "odd number of n-blocks"
    if t.family is Family.C1 and cnt[0] % 2:
        return "odd number of 0-blocks"
    if t.family is Family.D2 and sum(top_is_supporting_n(pat, v) for v in lay) > 1:
        return "more than one supporting n-block on top"
    return None


def check_slice(s: Slice) -> Slice:
    problem = slice_problem(s)
    if problem:
        raise SliceError(f"{s.text()}: {problem}")
    return s


def add_delta(s: Slice) -> Slice:
    lay = s.layers
    return Slice(s.ctype, s.variant, lay[1:] + (lay[0] + s.pattern.states,))


def sub_delta(s: Slice) -> Slice:
    lay = s.layers
    if lay[-1] < s.pattern.states:
        raise SliceError(f"{s.text()}: no delta to remove")
    return Slice(s.ctype, s.variant, (lay[-1] - s.pattern.states,) + lay[:-1])


def normalize(s: Slice) -> Slice:
    """The representative with every layer inside the first cycle."""
    S = s.pattern.states
    while s.layers[-1] >= S:
        s = sub_delta(s)
    return s


def base_embedding(s: Slice) -> Slice:
    """The representative with no empty layer and nothing beyond one full cycle."""
    s = normalize(s)
    while s.layers[0] == 0:
        s = add_delta(s)
    return s


def equivalent(a: Slice, b: Slice) -> bool:
    return a.ctype == b.ctype and a.variant == b.variant and normalize(a) == normalize(b)


# -- splitting ----------------------------------------------------------------


def splittable_colors(t: AffineType) -> tuple:
    n, f = t.rank, t.family
    if f is Family.A1:
        return ()
    if f in CUBE_FAMILIES:
        return ("01",) + tuple(range(2, n))
    if f is Family.D2:
        return tuple(range(1, n))
    return tuple(range(1, n + 1))


def _pairing_colors(t: AffineType) -> tuple:
    # D: the two n-halves pair up like a split n-block when color n-1 acts
    if t.family is Family.D2:
        return splittable_colors(t) + (t.rank,)
    return splittable_colors(t)


def _split_roles(t: AffineType) -> tuple[str, str]:
    """(role of the block that is broken, role of the slot that receives)."""
    if t.family in CUBE_FAMILIES:
        return SUPPORTING, COVERING
    return COVERING, SUPPORTING


@dataclass(frozen=True)
class SplitPair:
    color: object
    giver: int
    receiver: int


def _split_candidates(pat: Pattern, layers: Sequence[int], color, used: set[int]):
    t = pat.ctype
    give_role, take_role = _split_roles(t)
    givers: list[tuple[int, int]] = []  # (height, index)
    takers: list[tuple[int, int]] = []
    for idx, st in enumerate(layers):
        if idx in used:
            continue
        r = pat.residue(st)
        hb = pat.heights(st)[0]
        if color == "01":
            if r == 3:
                givers.append((hb, idx))
            elif r == 0:
                takers.append((hb, idx))
            continue
        for m, _, h in pat.removal_moves(st):
            if m.color == color and m.role in (give_role, BOTH):
                givers.append((h, idx))
        for m, _, h in pat.addition_moves(st):
            if m.color == color and m.role in (take_role, BOTH):
                takers.append((h, idx))
    return givers, takers


def split_pairs(s: Slice, color, used: Optional[set[int]] = None) -> list[SplitPair]:
    """Split ``color`` blocks one at a time until no (block, slot) pair is left."""
    if color not in _pairing_colors(s.ctype):
        raise SliceError(f"no splitting of color {color!r} for {s.ctype}")
    pat = s.pattern
    used = set() if used is None else used
    out: list[SplitPair] = []
    while True:
        givers, takers = _split_candidates(pat, s.layers, color, used)
        givers = [g for g in givers if g[1] not in used]
        takers = [k for k in takers if k[1] not in used]
        if not givers or not takers:
            return out
        top = max(h for h, _ in givers)
        g = min(i for h, i in givers if h == top)
        low = min(h for h, _ in takers)
        k = max(i for h, i in takers if h == low)
        if g == k:
            raise RuleError("a layer cannot give and receive the same split")
        used.update((g, k))
        out.append(SplitPair(color, g, k))


@dataclass(frozen=True)
class SplitLayer:
    hb: int
    hf: int
    role: str  # "", "gave" or "took"
    color: object = None

    @property
    def integer_height(self) -> bool:
        return self.hb == self.hf and self.hb % 2 == 0

    @property
    def unit_depth_top(self) -> bool:
        return self.hb == self.hf


def split_view(
    s: Slice, colors: Optional[Iterable] = None, skip: frozenset[int] = frozenset()
) -> tuple[SplitLayer, ...]:
    """Per-layer heights after splitting ``colors`` (every pairing color by default).

    Pairs are numbered in the order they are found; those listed in ``skip``
    are left whole.
    """
    pat = s.pattern
    cols = _pairing_colors(s.ctype) if colors is None else tuple(colors)
    view = [SplitLayer(*pat.heights(st), "") for st in s.layers]
    idx = -1
    for color in cols:
        for p in split_pairs(s, color):
            idx += 1
            if idx in skip:
                continue
            g, k = view[p.giver], view[p.receiver]
            if g.role or k.role:
                raise RuleError("a layer took part in two splits")
            view[p.giver] = SplitLayer(g.hb - 1, g.hf - 1, "gave", color)
            if k.hb != k.hf:
                lo = min(k.hb, k.hf)
                view[p.receiver] = SplitLayer(k.hb if k.hb > lo else lo + 1, k.hf if k.hf > lo else lo + 1, "took", color)
            else:
                view[p.receiver] = SplitLayer(k.hb + 1, k.hf + 1, "took", color)
    return tuple(view)


# -- Kashiwara operators ------------------------------------------------------


def _pre_split_color(t: AffineType, i: int):
    n, f = t.rank, t.family
    if f is Family.A1:
        return None
    if f in CUBE_FAMILIES:
        if i in (0, 1):
            return None
        if i == 2:
            return "01"
        return i - 1
    if f is Family.C1 and i == 0:
        return 1
    if f is Family.D2:
        return None if i == n else i + 1
    return None if i == n else i + 1


def _rule_kind(t: AffineType, i: int) -> str:
    n, f = t.rank, t.family
    if f is Family.A2odd and i == n:
        return "pair"
    if f is Family.C1 and i == 0:
        return "pair"
    return "single"


def _priorities(t: AffineType) -> tuple[str, str]:
    """(role preferred for removal, role preferred for addition)."""
    if t.family in CUBE_FAMILIES or t.family is Family.A1:
        return COVERING, SUPPORTING
    return SUPPORTING, COVERING


def _first_role(t: AffineType) -> str:
    """Role of the lower block of the stacked pair handled by the paired rules."""
    return SUPPORTING if t.family is Family.A2odd else COVERING


def _excluded(s: Slice, i: int) -> set[int]:
    color = _pre_split_color(s.ctype, i)
    if color is None:
        return set()
    used: set[int] = set()
    split_pairs(s, color, used)
    return used


def _cands(pat: Pattern, layers: Sequence[int], i: int, excl: set[int], remove: bool):
    out = []
    for idx, st in enumerate(layers):
        if idx in excl:
            continue
        moves = pat.removal_moves(st) if remove else pat.addition_moves(st)
        for m, new, h in moves:
            if m.color == i:
                out.append((idx, m.role, new, h))
    return out


def _pick(cands, remove: bool):
    if remove:
        top = max(c[3] for c in cands)
        return min((c for c in cands if c[3] == top), key=lambda c: c[0])
    low = min(c[3] for c in cands)
    return max((c for c in cands if c[3] == low), key=lambda c: c[0])


def _apply_single(s: Slice, i: int, remove: bool) -> Optional[tuple[int, ...]]:
    pat = s.pattern
    cands = _cands(pat, s.layers, i, _excluded(s, i), remove)
    if not cands:
        return None
    pri = _priorities(s.ctype)[0 if remove else 1]
    preferred = [c for c in cands if c[1] in (pri, BOTH)]
    idx, _, new, _ = _pick(preferred or cands, remove)
    lay = list(s.layers)
    lay[idx] = new
    return tuple(lay)


def _apply_pair(s: Slice, i: int, remove: bool) -> Optional[tuple[int, ...]]:
    pat = s.pattern
    excl = _excluded(s, i)
    first = _first_role(s.ctype)
    lay = list(s.layers)
    cands = _cands(pat, lay, i, excl, remove)
    if not cands:
        return None
    firsts = [c for c in cands if c[1] == first]
    seconds = [c for c in cands if c[1] != first]
    # removal leans on the upper block of the pair, addition on the lower slot
    lead, other = (seconds, firsts) if remove else (firsts, seconds)

    def two_from(group):
        ext = max if remove else min
        best = ext(c[3] for c in group)
        chosen = sorted((c for c in group if c[3] == best), key=lambda c: c[0])
        if not remove:
            chosen.reverse()
        if len(chosen) >= 2:
            return chosen[0], chosen[1]
        rest = sorted((c for c in group if c[0] != chosen[0][0]), key=lambda c: c[0])
        if not remove:
            rest.reverse()
        if not rest:
            raise RuleError(f"paired rule for color {i} found a single block in {s.text()}")
        return chosen[0], rest[0]

    if not lead:
        a, b = two_from(other)
        lay[a[0]] = a[2]
        lay[b[0]] = b[2]
        return tuple(lay)
    if len(lead) == 1:
        a = lead[0]
        lay[a[0]] = a[2]
        again = [c for c in _cands(pat, lay, i, excl, remove) if (c[1] == first) == remove]
        if not again:
            raise RuleError(f"paired rule for color {i} stalled on {s.text()}")
        b = _pick(again, remove)
        lay[b[0]] = b[2]
        return tuple(lay)
    a, b = two_from(lead)
    lay[a[0]] = a[2]
    lay[b[0]] = b[2]
    return tuple(lay)


def _apply(i: int, s: Slice, remove: bool, physical: bool = False) -> Optional[Slice]:
    if i not in s.ctype.index_set:
        raise SliceError(f"color {i} out of range for {s.ctype}")
    if _rule_kind(s.ctype, i) == "pair":
        lay = _apply_pair(s, i, remove)
    else:
        lay = _apply_single(s, i, remove)
    if lay is None:
        return None
    if min(lay) < 0:
        # the chosen block sits below the first cycle of this representative
        if physical:
            return None
        return _apply(i, add_delta(s), remove)
    out = Slice(s.ctype, s.variant, lay)
    problem = slice_problem(out)
    if problem:
        op = "e" if remove else "f"
        raise RuleError(f"{op}_{i} on {s.text()} gave {out.text()}: {problem}")
    return out


@lru_cache(maxsize=1 << 18)
def f_slice(i: int, s: Slice) -> Optional[Slice]:
    return _apply(i, s, remove=False)


@lru_cache(maxsize=1 << 18)
def e_slice(i: int, s: Slice) -> Optional[Slice]:
    """``e_i`` on the class of ``s``; the result may be a shifted representative."""
    return _apply(i, s, remove=True)


@lru_cache(maxsize=1 << 18)
def e_column(i: int, s: Slice) -> Optional[Slice]:
    """``e_i`` on a slice standing on the ground; ``None`` if the block would lie below it."""
    return _apply(i, s, remove=True, physical=True)


@lru_cache(maxsize=1 << 18)
def eps_slice(i: int, s: Slice) -> int:
    k, cur = 0, e_slice(i, s)
    while cur is not None:
        k, cur = k + 1, e_slice(i, cur)
    return k


@lru_cache(maxsize=1 << 18)
def phi_slice(i: int, s: Slice) -> int:
    k, cur = 0, f_slice(i, s)
    while cur is not None:
        k, cur = k + 1, f_slice(i, cur)
    return k


def cwt_slice(s: Slice) -> ClassicalWeight:
    return ClassicalWeight(tuple(phi_slice(i, s) - eps_slice(i, s) for i in s.ctype.index_set))
