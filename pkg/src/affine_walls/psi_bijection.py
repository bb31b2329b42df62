"""The bijection ``psi`` from coordinate crystals to classes of slices.

Every layer of a slice is classified by the position of its top within the
stacking cycle.  A bracket label records how many layers of each kind occur;
``psi`` pastes the corresponding columns together and ``psi_inverse`` counts
them again.  For ``B_n^(1)`` and ``A_{2n-1}^(2)`` the label is a transformed
version of the coordinates (pairs ``x_i``, ``xbar_i`` that would cancel are
folded into the next index).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from .cartan_data import AffineType, Family
from .coordinate_crystal import (
    CoordElement,
    e_coord,
    enumerate_crystal,
    eps_coord,
    f_coord,
    phi_coord,
)
from .slice_crystal import (
    CUBE_FAMILIES,
    Slice,
    add_delta,
    base_embedding,
    check_slice,
    e_slice,
    eps_slice,
    f_slice,
    layer_count,
    normalize,
    pattern,
    phi_slice,
)


class LabelError(ValueError):
    pass


def _pos(v: int) -> int:
    return v if v > 0 else 0


@dataclass(frozen=True)
class BracketLabel:
    """Layer-kind multiplicities.

    ``x`` and ``xbar`` are indexed ``1..n`` (stored from index 1, ``xbar``
    printed in reverse).  ``x0`` is the middle entry for D, B and the odd
    twisted family; ``t0`` is the number of bare 0-stubs for C, the even
    twisted family and D.  Type A uses ``x`` for ``x_0..x_n``.
    """

    ctype: AffineType
    level: int
    x: tuple[int, ...]
    xbar: tuple[int, ...] = ()
    x0: Optional[int] = None
    t0: Optional[int] = None

    def text(self) -> str:
        f = self.ctype.family
        if f is Family.A1:
            return "[" + ",".join(map(str, self.x)) + "]"
        parts = []
        if self.t0 is not None:
            parts.append(str(self.t0))
        parts.append(",".join(map(str, self.x)))
        if self.x0 is not None:
            parts.append(str(self.x0))
        parts.append(",".join(map(str, reversed(self.xbar))))
        return "[" + "|".join(parts) + "]"

    def __str__(self) -> str:
        return self.text()


def parse_label(t: AffineType, lev: int, text: str) -> BracketLabel:
    m = re.fullmatch(r"\s*\[(.*)\]\s*", text)
    if not m:
        raise LabelError(f"bracket labels look like [..]: {text!r}")
    try:
        groups = [[int(v) for v in g.split(",")] for g in m.group(1).split("|")]
    except ValueError as exc:
        raise LabelError(f"cannot parse bracket label {text!r}") from exc
    f = t.family
    shape = {
        Family.A1: ("x",),
        Family.B1: ("x", "x0", "xb"),
        Family.A2odd: ("x", "x0", "xb"),
        Family.C1: ("t0", "x", "xb"),
        Family.A2even: ("t0", "x", "xb"),
        Family.D2: ("t0", "x", "x0", "xb"),
    }[f]
    if len(groups) != len(shape):
        raise LabelError(f"{text!r} does not have the {len(shape)} groups expected for {t}")
    vals = dict(zip(shape, groups))
    lbl = BracketLabel(
        t,
        lev,
        tuple(vals["x"]),
        tuple(reversed(vals.get("xb", []))),
        vals["x0"][0] if "x0" in vals else None,
        vals["t0"][0] if "t0" in vals else None,
    )
    check_label(lbl)
    return lbl


# -- residues of each layer kind ----------------------------------------------


def _kinds(t: AffineType, variant: int) -> dict[tuple, int]:
    """Map label keys ``('x', i)``, ``('xb', i)``, ``('x0',)``, ``('t0',)`` to residues in ``1..S``."""
    n, f = t.rank, t.family
    if f is Family.A1:
        return {("x", c): (c - variant) % (n + 1) + 1 for c in range(n + 1)}
    if f in CUBE_FAMILIES:
        out = {("x", 1): 1, ("xb", 1): 2, ("x", 2): 3}
        out.update({("x", i): i + 1 for i in range(3, n + 1)})
        out[("x0",)] = n + 2
        out[("xb", n)] = n + 3
        out.update({("xb", i): 2 * n - i + 3 for i in range(2, n)})
        return out
    out = {("t0",): 1, ("x", 1): 2}
    out.update({("x", i): i + 1 for i in range(2, n + 1)})
    if f is Family.D2:
        out[("x0",)] = n + 2
        out[("xb", n)] = n + 3
        out.update({("xb", i): 2 * n + 3 - i for i in range(1, n)})
    else:
        out[("xb", n)] = n + 2
        out.update({("xb", i): 2 * n + 2 - i for i in range(1, n)})
    return out


def _label_items(lbl: BracketLabel) -> dict[tuple, int]:
    f = lbl.ctype.family
    if f is Family.A1:
        return {("x", c): v for c, v in enumerate(lbl.x)}
    items = {("x", i + 1): v for i, v in enumerate(lbl.x)}
    items.update({("xb", i + 1): v for i, v in enumerate(lbl.xbar)})
    if lbl.x0 is not None:
        items[("x0",)] = lbl.x0
    if lbl.t0 is not None:
        items[("t0",)] = lbl.t0
    return items


def check_label(lbl: BracketLabel) -> None:
    t, f, n = lbl.ctype, lbl.ctype.family, lbl.ctype.rank
    vals = list(_label_items(lbl).values())
    if any(v < 0 for v in vals):
        raise LabelError(f"{lbl}: negative entry")
    if f is Family.A1:
        ok_shape = len(lbl.x) == n + 1
    else:
        ok_shape = len(lbl.x) == n and len(lbl.xbar) == n
    if not ok_shape:
        raise LabelError(f"{lbl}: wrong number of entries for {t}")
    if sum(vals) != layer_count(t, lbl.level):
        raise LabelError(f"{lbl}: entries must add up to {layer_count(t, lbl.level)}")
    if f in CUBE_FAMILIES and lbl.x[0] * lbl.xbar[0] != 0:
        raise LabelError(f"{lbl}: lone 0-halves and lone 1-halves cannot coexist")
    if f is Family.A2odd and (lbl.x0 or 0) % 2:
        raise LabelError(f"{lbl}: the middle entry must be even")
    if f is Family.D2 and (lbl.x0 or 0) > 1:
        raise LabelError(f"{lbl}: at most one layer may end in a supporting n-block")
    if f is Family.C1 and (lbl.t0 or 0) % 2:
        raise LabelError(f"{lbl}: the number of bare 0-stubs must be even")


# -- coordinates <-> labels ---------------------------------------------------


def bracket_of_coord(b: CoordElement) -> BracketLabel:
    t, f, n, lev = b.ctype, b.ctype.family, b.ctype.rank, b.level
    if f is Family.A1:
        return BracketLabel(t, lev, b.x)
    x, xb = b.x, b.xbar
    s = sum(x) + sum(xb)
    if f in CUBE_FAMILIES:
        y = [_pos(x[0] - xb[0])]
        yb = [_pos(xb[0] - x[0])]
        for i in range(1, n):
            m = min(x[i - 1], xb[i - 1])
            y.append(_pos(x[i] - xb[i]) + m)
            yb.append(_pos(xb[i] - x[i]) + m)
        y0 = 2 * min(x[n - 1], xb[n - 1]) + (b.x0 or 0)
        return BracketLabel(t, lev, tuple(y), tuple(yb), y0)
    if f is Family.C1:
        return BracketLabel(t, lev, x, xb, None, 2 * lev - s)
    if f is Family.A2even:
        return BracketLabel(t, lev, x, xb, None, lev - s)
    return BracketLabel(t, lev, x, xb, b.x0, lev - s - b.x0)


def coord_of_bracket(lbl: BracketLabel) -> CoordElement:
    check_label(lbl)
    t, f, n, lev = lbl.ctype, lbl.ctype.family, lbl.ctype.rank, lbl.level
    if f is Family.A1:
        return CoordElement(t, lev, lbl.x)
    if f in CUBE_FAMILIES:
        y, yb, y0 = lbl.x, lbl.xbar, lbl.x0 or 0
        x = [0] * n
        xb = [0] * n
        for i in range(n):
            nxt = min(y[i + 1], yb[i + 1]) if i + 1 < n else y0 // 2
            if i == 0:
                x[0] = y[0] + nxt
                xb[0] = yb[0] + nxt
            else:
                x[i] = _pos(y[i] - yb[i]) + nxt
                xb[i] = _pos(yb[i] - y[i]) + nxt
        x0 = y0 % 2 if f is Family.B1 else None
        return CoordElement(t, lev, tuple(x), tuple(xb), x0)
    return CoordElement(t, lev, lbl.x, lbl.xbar, lbl.x0)


# -- labels <-> slices ----------------------------------------------------------


def slice_of_bracket(lbl: BracketLabel, variant: int = 0, order: Optional[list[tuple]] = None) -> Slice:
    """Paste the columns listed by ``lbl`` and return the normalized slice.

    ``order`` optionally fixes the order in which the building blocks are
    pasted; the result does not depend on it.
    """
    check_label(lbl)
    kinds = _kinds(lbl.ctype, variant)
    items = _label_items(lbl)
    seq: list[tuple] = []
    for key in order if order is not None else sorted(items):
        seq.extend([key] * items[key])
    residues = sorted(kinds[k] for k in seq)
    return normalize(check_slice(Slice(lbl.ctype, variant, tuple(residues))))


def bracket_of_slice(s: Slice, lev: Optional[int] = None) -> BracketLabel:
    t, f = s.ctype, s.ctype.family
    S = pattern(t, s.variant).states
    inv = {r % S: key for key, r in _kinds(t, s.variant).items()}
    tally: dict[tuple, int] = {key: 0 for key in inv.values()}
    for st in s.layers:
        tally[inv[st % S]] += 1
    n = t.rank
    lev = s.level if lev is None else lev
    if f is Family.A1:
        return BracketLabel(t, lev, tuple(tally[("x", c)] for c in range(n + 1)))
    x = tuple(tally[("x", i)] for i in range(1, n + 1))
    xb = tuple(tally[("xb", i)] for i in range(1, n + 1))
    x0 = tally.get(("x0",))
    t0 = tally.get(("t0",))
    return BracketLabel(t, lev, x, xb, x0, t0)


def psi(b: CoordElement, variant: int = 0) -> Slice:
    return slice_of_bracket(bracket_of_coord(b), variant)


def psi_inverse(s: Slice) -> CoordElement:
    return coord_of_bracket(bracket_of_slice(s))


def enumerate_slices(t: AffineType, lev: int, variant: int = 0) -> set[Slice]:
    """Normalized slices generated directly from nondecreasing residue tuples."""
    from itertools import combinations_with_replacement

    from .slice_crystal import slice_problem

    S = pattern(t, variant).states
    out = set()
    for combo in combinations_with_replacement(range(S), layer_count(t, lev)):
        s = Slice(t, variant, combo)
        if slice_problem(s) is None:
            out.add(s)
    return out


# -- intertwining check ---------------------------------------------------------


@dataclass
class IntertwineReport:
    ctype: AffineType
    level: int
    checked: int = 0
    counterexamples: list[str] = None  # type: ignore[assignment]

    def __post_init__(self) -> None:
        if self.counterexamples is None:
            self.counterexamples = []

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def as_dict(self) -> dict:
        return {
            "type": str(self.ctype),
            "level": self.level,
            "checked": self.checked,
            "counterexamples": self.counterexamples[:50],
            "ok": self.ok,
        }


def verify_intertwine(t: AffineType, lev: int, limit: int = 50) -> IntertwineReport:
    """Check that ``psi`` commutes with every operator, on several representatives.

    Besides the normalized image, the operators are also applied to the base
    embedding and to the image shifted by one delta, so the check covers
    commutation with ``+delta`` as well.
    """
    rep = IntertwineReport(t, lev)
    bad = rep.counterexamples
    for b in enumerate_crystal(t, lev):
        c = psi(b)
        if psi_inverse(c) != b:
            bad.append(f"round trip fails at {b.text()}")
        reps = (c, base_embedding(c), add_delta(c))
        for i in t.index_set:
            rep.checked += 1
            for op_c, op_s in ((f_coord, f_slice), (e_coord, e_slice)):
                want = op_c(i, b)
                for r in reps:
                    got = op_s(i, r)
                    if (want is None) != (got is None):
                        bad.append(f"{op_s.__name__}({i}) on {b.text()}: null mismatch")
                    elif want is not None and normalize(got) != psi(want):
                        bad.append(
                            f"{op_s.__name__}({i}) on {b.text()}: slice {normalize(got).text()} "
                            f"vs psi {psi(want).text()}"
                        )
            if eps_slice(i, c) != eps_coord(i, b) or phi_slice(i, c) != phi_coord(i, b):
                bad.append(f"eps/phi mismatch at color {i} on {b.text()}")
            if len(bad) >= limit:
                return rep
    return rep
