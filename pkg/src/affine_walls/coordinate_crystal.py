"""Coordinate models of the level-l perfect crystals.

For ``B_n^(1)`` the Kashiwara operators are given by explicit piecewise
formulas.  The other five families get their operators by transport through
the slice model (``psi``), which is treated as the authoritative definition.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Callable, Iterator, Optional

import sympy

from .cartan_data import (
    AffineType,
    CartanError,
    ClassicalWeight,
    Family,
    cartan_matrix,
    classical_root,
    comarks,
    d0,
    dominant_weights,
    level,
)

HAS_X0 = {Family.B1, Family.D2}


class CoordError(ValueError):
    pass


class PerfectnessError(RuntimeError):
    pass


def _pos(v: int) -> int:
    return v if v > 0 else 0


@dataclass(frozen=True, order=True)
class CoordElement:
    """A point of ``B^(l)``.

    For ``A_n^(1)`` ``x`` holds ``(x_0, ..., x_n)`` and ``xbar`` is empty.
    Otherwise ``x = (x_1, ..., x_n)`` and ``xbar = (xbar_1, ..., xbar_n)``;
    note the text form prints ``xbar`` in the order ``xbar_n .. xbar_1``.
    ``x0`` is ``None`` for families without the extra 0/1 coordinate.
    """

    ctype: AffineType
    level: int
    x: tuple[int, ...]
    xbar: tuple[int, ...] = ()
    x0: Optional[int] = None

    def flat(self) -> tuple[int, ...]:
        if self.ctype.family is Family.A1:
            return self.x
        mid = () if self.x0 is None else (self.x0,)
        return self.x + mid + tuple(reversed(self.xbar))

    def sort_key(self) -> tuple[int, ...]:
        return self.flat()

    def text(self) -> str:
        if self.ctype.family is Family.A1:
            return ",".join(map(str, self.x))
        parts = [",".join(map(str, self.x))]
        if self.x0 is not None:
            parts.append(str(self.x0))
        parts.append(",".join(map(str, reversed(self.xbar))))
        return "|".join(parts)

    def __str__(self) -> str:
        return self.text()

    def __repr__(self) -> str:
        return f"CoordElement({self.ctype}, l={self.level}, {self.text()})"


def is_valid(ctype: AffineType, lev: int, x: tuple[int, ...], xbar: tuple[int, ...], x0: Optional[int]) -> bool:
    f, n = ctype.family, ctype.rank
    if any(v < 0 for v in x + xbar):
        return False
    if f is Family.A1:
        return len(x) == n + 1 and not xbar and x0 is None and sum(x) == lev
    if len(x) != n or len(xbar) != n:
        return False
    if (x0 is not None) != (f in HAS_X0):
        return False
    s = sum(x) + sum(xbar)
    if f is Family.B1:
        return x0 in (0, 1) and x0 + s == lev
    if f is Family.C1:
        return s % 2 == 0 and s <= 2 * lev
    if f is Family.A2odd:
        return s == lev
    if f is Family.A2even:
        return s <= lev
    return x0 in (0, 1) and x0 + s <= lev


def make(ctype: AffineType, lev: int, x, xbar=(), x0=None) -> CoordElement:
    x, xbar = tuple(x), tuple(xbar)
    if not is_valid(ctype, lev, x, xbar, x0):
        raise CoordError(f"not an element of B^({lev}) for {ctype}: x={x} xbar={xbar} x0={x0}")
    return CoordElement(ctype, lev, x, xbar, x0)


def parse(ctype: AffineType, lev: int, text: str) -> CoordElement:
    try:
        if ctype.family is Family.A1:
            return make(ctype, lev, [int(v) for v in text.split(",")])
        parts = text.split("|")
        x = [int(v) for v in parts[0].split(",")]
        xbar_rev = [int(v) for v in parts[-1].split(",")]
        x0 = None
        if ctype.family in HAS_X0:
            if len(parts) != 3:
                raise CoordError(f"expected 'x|x0|xbar' for {ctype}")
            x0 = int(parts[1])
        elif len(parts) != 2:
            raise CoordError(f"expected 'x|xbar' for {ctype}")
        return make(ctype, lev, x, tuple(reversed(xbar_rev)), x0)
    except ValueError as exc:
        if isinstance(exc, CoordError):
            raise
        raise CoordError(f"cannot parse coordinate element {text!r}") from exc


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def enumerate_crystal(ctype: AffineType, lev: int) -> tuple[CoordElement, ...]:
    """All elements, sorted lexicographically on the flattened text tuple."""
    if lev < 1:
        raise CoordError("level must be at least 1")
    f, n = ctype.family, ctype.rank
    out: list[CoordElement] = []
    if f is Family.A1:
        for x in _compositions(lev, n + 1):
            out.append(CoordElement(ctype, lev, x))
    else:
        if f is Family.B1:
            totals = [(s, lev - s) for s in (lev, lev - 1) if s >= 0]
        elif f is Family.D2:
            totals = [(s, x0) for x0 in (0, 1) for s in range(lev - x0 + 1)]
        elif f is Family.C1:
            totals = [(s, None) for s in range(0, 2 * lev + 1, 2)]
        elif f is Family.A2odd:
            totals = [(lev, None)]
        else:
            totals = [(s, None) for s in range(lev + 1)]
        for s, x0 in totals:
            for comp in _compositions(s, 2 * n):
                out.append(CoordElement(ctype, lev, comp[:n], tuple(reversed(comp[n:])), x0))
    out.sort(key=CoordElement.sort_key)
    return tuple(out)


# -- explicit B_n^(1) formulas ------------------------------------------------


def _b_parts(b: CoordElement) -> tuple[list[int], list[int], int]:
    # 1-indexed copies; index 0 unused
    return [0, *b.x], [0, *b.xbar], b.x0  # type: ignore[list-item]


def _b_pack(b: CoordElement, x: list[int], xb: list[int], x0: int) -> Optional[CoordElement]:
    if min(x[1:] + xb[1:]) < 0 or x0 not in (0, 1):
        return None
    return CoordElement(b.ctype, b.level, tuple(x[1:]), tuple(xb[1:]), x0)


def b_eps(i: int, b: CoordElement) -> int:
    x, xb, x0 = _b_parts(b)
    n = b.ctype.rank
    if i == 0:
        return x[1] + _pos(x[2] - xb[2])
    if i == n:
        return 2 * xb[n] + x0
    return xb[i] + _pos(x[i + 1] - xb[i + 1]) if i > 1 else xb[1] + _pos(x[2] - xb[2])


def b_phi(i: int, b: CoordElement) -> int:
    x, xb, x0 = _b_parts(b)
    n = b.ctype.rank
    if i == 0:
        return xb[1] + _pos(xb[2] - x[2])
    if i == n:
        return 2 * x[n] + x0
    return x[i] + _pos(xb[i + 1] - x[i + 1])


def b_f(i: int, b: CoordElement) -> Optional[CoordElement]:
    if b_phi(i, b) == 0:
        return None
    x, xb, x0 = _b_parts(b)
    n = b.ctype.rank
    if i == 0:
        if x[2] >= xb[2]:
            x[2] += 1
            xb[1] -= 1
        else:
            x[1] += 1
            xb[2] -= 1
    elif i == n:
        if x0 == 0:
            x[n] -= 1
            x0 = 1
        else:
            x0 = 0
            xb[n] += 1
    else:
        if x[i + 1] >= xb[i + 1]:
            x[i] -= 1
            x[i + 1] += 1
        else:
            xb[i + 1] -= 1
            xb[i] += 1
    return _b_pack(b, x, xb, x0)


def b_e(i: int, b: CoordElement) -> Optional[CoordElement]:
    if b_eps(i, b) == 0:
        return None
    x, xb, x0 = _b_parts(b)
    n = b.ctype.rank
    if i == 0:
        if x[2] > xb[2]:
            x[2] -= 1
            xb[1] += 1
        else:
            x[1] -= 1
            xb[2] += 1
    elif i == n:
        if x0 == 1:
            x[n] += 1
            x0 = 0
        else:
            x0 = 1
            xb[n] -= 1
    else:
        if x[i + 1] > xb[i + 1]:
            x[i] += 1
            x[i + 1] -= 1
        else:
            xb[i + 1] += 1
            xb[i] -= 1
    return _b_pack(b, x, xb, x0)


# -- transport through the slice model ---------------------------------------


def transported_f(i: int, b: CoordElement) -> Optional[CoordElement]:
    from .psi_bijection import psi, psi_inverse
    from .slice_crystal import f_slice

    c = f_slice(i, psi(b))
    return None if c is None else psi_inverse(c)


def transported_e(i: int, b: CoordElement) -> Optional[CoordElement]:
    from .psi_bijection import psi, psi_inverse
    from .slice_crystal import e_slice

    c = e_slice(i, psi(b))
    return None if c is None else psi_inverse(c)


def _check_color(b: CoordElement, i: int) -> None:
    if i not in b.ctype.index_set:
        raise CoordError(f"color {i} out of range for {b.ctype}")


@lru_cache(maxsize=None)
def f_coord(i: int, b: CoordElement) -> Optional[CoordElement]:
    """``f_i b`` or ``None`` for the null outcome."""
    _check_color(b, i)
    if b.ctype.family is Family.B1:
        return b_f(i, b)
    return transported_f(i, b)


@lru_cache(maxsize=None)
def e_coord(i: int, b: CoordElement) -> Optional[CoordElement]:
    _check_color(b, i)
    if b.ctype.family is Family.B1:
        return b_e(i, b)
    return transported_e(i, b)


def _string_length(op: Callable[[int, CoordElement], Optional[CoordElement]], i: int, b: CoordElement) -> int:
    k = 0
    cur: Optional[CoordElement] = op(i, b)
    while cur is not None:
        k += 1
        cur = op(i, cur)
    return k


@lru_cache(maxsize=None)
def eps_coord(i: int, b: CoordElement) -> int:
    _check_color(b, i)
    if b.ctype.family is Family.B1:
        return b_eps(i, b)
    return _string_length(e_coord, i, b)


@lru_cache(maxsize=None)
def phi_coord(i: int, b: CoordElement) -> int:
    _check_color(b, i)
    if b.ctype.family is Family.B1:
        return b_phi(i, b)
    return _string_length(f_coord, i, b)


def eps_vector(b: CoordElement) -> ClassicalWeight:
    return ClassicalWeight(tuple(eps_coord(i, b) for i in b.ctype.index_set))


def phi_vector(b: CoordElement) -> ClassicalWeight:
    return ClassicalWeight(tuple(phi_coord(i, b) for i in b.ctype.index_set))


def cwt_coord(b: CoordElement) -> ClassicalWeight:
    return phi_vector(b) - eps_vector(b)


# -- perfect crystal queries --------------------------------------------------


@lru_cache(maxsize=None)
def _phi_index(ctype: AffineType, lev: int) -> dict[ClassicalWeight, list[CoordElement]]:
    idx: dict[ClassicalWeight, list[CoordElement]] = {}
    for b in enumerate_crystal(ctype, lev):
        idx.setdefault(phi_vector(b), []).append(b)
    return idx


@lru_cache(maxsize=None)
def _eps_index(ctype: AffineType, lev: int) -> dict[ClassicalWeight, list[CoordElement]]:
    idx: dict[ClassicalWeight, list[CoordElement]] = {}
    for b in enumerate_crystal(ctype, lev):
        idx.setdefault(eps_vector(b), []).append(b)
    return idx


def _unique(found: list[CoordElement], what: str, lam: ClassicalWeight) -> CoordElement:
    if len(found) != 1:
        raise PerfectnessError(f"{len(found)} elements with {what} = {lam}; expected exactly one")
    return found[0]


def _check_weight(ctype: AffineType, lev: int, lam: ClassicalWeight) -> None:
    if not lam.is_dominant() or level(ctype, lam) != lev:
        raise CartanError(f"{lam} is not a dominant weight of level {lev} for {ctype}")


def find_b_lambda(ctype: AffineType, lev: int, lam: ClassicalWeight) -> CoordElement:
    """The unique ``b`` with ``phi(b) = lam``."""
    _check_weight(ctype, lev, lam)
    return _unique(_phi_index(ctype, lev).get(lam, []), "phi", lam)


def find_b_upper(ctype: AffineType, lev: int, lam: ClassicalWeight) -> CoordElement:
    """The unique ``b`` with ``eps(b) = lam``."""
    _check_weight(ctype, lev, lam)
    return _unique(_eps_index(ctype, lev).get(lam, []), "eps", lam)


def tensor_f(i: int, b1: CoordElement, b2: CoordElement) -> Optional[tuple[CoordElement, CoordElement]]:
    """Two-factor rule written out directly (left factor ``b1``)."""
    if phi_coord(i, b1) > eps_coord(i, b2):
        nb = f_coord(i, b1)
        return None if nb is None else (nb, b2)
    nb = f_coord(i, b2)
    return None if nb is None else (b1, nb)


def tensor_e(i: int, b1: CoordElement, b2: CoordElement) -> Optional[tuple[CoordElement, CoordElement]]:
    if phi_coord(i, b1) >= eps_coord(i, b2):
        nb = e_coord(i, b1)
        return None if nb is None else (nb, b2)
    nb = e_coord(i, b2)
    return None if nb is None else (b1, nb)


@lru_cache(maxsize=None)
def _finite_root_inverse(ctype: AffineType):
    n = ctype.rank
    a = cartan_matrix(ctype)
    sub = sympy.Matrix(n, n, lambda r, c: a[r + 1][c + 1])
    return sub.inv()


def in_weight_cone(ctype: AffineType, diff: ClassicalWeight) -> bool:
    """Is ``diff`` in ``(1/d_0) sum_{i != 0} Z_{<=0} alpha_i`` (classical)?"""
    n = ctype.rank
    inv = _finite_root_inverse(ctype)
    coeffs = inv * sympy.Matrix([diff.coeffs[r + 1] for r in range(n)])
    cols = [classical_root(ctype, j + 1) for j in range(n)]
    zeroth = sum(Fraction(int(coeffs[j].p), int(coeffs[j].q)) * cols[j].coeffs[0] for j in range(n))
    if zeroth != diff.coeffs[0]:
        return False
    dz = d0(ctype)
    for c in coeffs:
        q = Fraction(int(c.p), int(c.q))
        if q > 0 or (q * dz).denominator != 1:
            return False
    return True


@dataclass
class PerfectReport:
    ctype: AffineType
    level: int
    size: int
    connected: bool = False
    components: int = 0
    weight_cone: bool = False
    lambda0: Optional[ClassicalWeight] = None
    eps_level_ok: bool = False
    eps_level_violations: list[str] = field(default_factory=list)
    uniqueness_violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (
            self.connected
            and self.weight_cone
            and self.eps_level_ok
            and not self.uniqueness_violations
        )

    def as_dict(self) -> dict:
        return {
            "type": str(self.ctype),
            "level": self.level,
            "size": self.size,
            "connected": self.connected,
            "components": self.components,
            "weight_cone": self.weight_cone,
            "lambda0": None if self.lambda0 is None else self.lambda0.text(),
            "eps_level_ok": self.eps_level_ok,
            "eps_level_violations": self.eps_level_violations,
            "uniqueness_violations": self.uniqueness_violations,
            "ok": self.ok,
        }


def tensor_components(ctype: AffineType, lev: int) -> int:
    elems = enumerate_crystal(ctype, lev)
    seen: set[tuple[CoordElement, CoordElement]] = set()
    comps = 0
    for start in product(elems, repeat=2):
        if start in seen:
            continue
        comps += 1
        seen.add(start)
        queue = deque([start])
        while queue:
            b1, b2 = queue.popleft()
            for i in ctype.index_set:
                for nxt in (tensor_f(i, b1, b2), tensor_e(i, b1, b2)):
                    if nxt is not None and nxt not in seen:
                        seen.add(nxt)
                        queue.append(nxt)
    return comps


def check_perfect(ctype: AffineType, lev: int) -> PerfectReport:
    elems = enumerate_crystal(ctype, lev)
    rep = PerfectReport(ctype, lev, len(elems))
    rep.components = tensor_components(ctype, lev)
    rep.connected = rep.components == 1

    weights: dict[ClassicalWeight, int] = {}
    for b in elems:
        w = cwt_coord(b)
        weights[w] = weights.get(w, 0) + 1
    for cand, mult in sorted(weights.items(), key=lambda kv: kv[0].coeffs):
        if mult == 1 and all(in_weight_cone(ctype, w - cand) for w in weights):
            rep.weight_cone = True
            rep.lambda0 = cand
            break

    cm = comarks(ctype)
    for b in elems:
        lev_eps = sum(c * e for c, e in zip(cm, eps_vector(b).coeffs))
        if lev_eps < lev:
            rep.eps_level_violations.append(b.text())
    rep.eps_level_ok = not rep.eps_level_violations

    for lam in dominant_weights(ctype, lev):
        for what, idx in (("phi", _phi_index(ctype, lev)), ("eps", _eps_index(ctype, lev))):
            found = idx.get(lam, [])
            if len(found) != 1:
                rep.uniqueness_violations.append(f"{what}={lam.text()}: {len(found)} elements")
    return rep


@dataclass(frozen=True)
class GroundChain:
    """The sequence ``b_k = b_{lambda_k}`` with ``lambda_0 = lam`` and
    ``lambda_{k+1} = eps(b_k)``.

    ``elements`` holds ``b_0 .. b_{m-1}``; from ``start`` on the sequence
    repeats with period ``m - start``.
    """

    ctype: AffineType
    level: int
    lam: ClassicalWeight
    elements: tuple[CoordElement, ...]
    start: int

    @property
    def period(self) -> int:
        return len(self.elements) - self.start

    def index(self, k: int) -> int:
        if k < len(self.elements):
            return k
        return self.start + (k - self.start) % self.period

    def __getitem__(self, k: int) -> CoordElement:
        if k < 0:
            raise IndexError(k)
        return self.elements[self.index(k)]

    def weight(self, k: int) -> ClassicalWeight:
        """``lambda_k``."""
        return phi_vector(self[k])


@lru_cache(maxsize=None)
def ground_chain(ctype: AffineType, lev: int, lam: ClassicalWeight) -> GroundChain:
    seen: dict[ClassicalWeight, int] = {}
    elems: list[CoordElement] = []
    cur = lam
    while cur not in seen:
        seen[cur] = len(elems)
        b = find_b_lambda(ctype, lev, cur)
        elems.append(b)
        cur = eps_vector(b)
    return GroundChain(ctype, lev, lam, tuple(elems), seen[cur])
