"""lambda-paths over a perfect crystal and the wall-to-path map.

A path is ``p(0), p(1), ...`` with ``p(k) = b_k`` (the ground-state chain)
for ``k >= N``.  The tensor factors are read with the largest ``k`` on the
left.  Beyond ``N`` the factors cancel in pairs because
``eps(b_k) = phi(b_{k+1})``, so the whole tail reduces to the ``phi`` of
factor ``N`` and the signature is finite.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional

from .cartan_data import (
    AffineType,
    AffineWeight,
    CartanError,
    ClassicalWeight,
    level as weight_level,
    weighted_root_sum,
)
from .coordinate_crystal import (
    CoordElement,
    CoordError,
    GroundChain,
    e_coord,
    eps_coord,
    f_coord,
    ground_chain,
    parse as parse_coord,
    phi_coord,
)
from .psi_bijection import psi, psi_inverse
from .signature import Reduced, reduce_signature
from .slice_crystal import add_delta, normalize
from .young_wall import Wall, WallError, column_variant, is_proper, is_reduced, proper_from, root_count


class PathError(ValueError):
    pass


@dataclass(frozen=True)
class Path:
    ctype: AffineType
    level: int
    lam: ClassicalWeight
    factors: tuple[CoordElement, ...]
    # f_i applications minus e_i applications since the ground state
    roots: tuple[int, ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        f = list(self.factors)
        ch = self.chain
        while f and f[-1] == ch[len(f) - 1]:
            f.pop()
        object.__setattr__(self, "factors", tuple(f))
        if not self.roots:
            object.__setattr__(self, "roots", (0,) * (self.ctype.rank + 1))

    @property
    def chain(self) -> GroundChain:
        return ground_chain(self.ctype, self.level, self.lam)

    @property
    def stable_index(self) -> int:
        return len(self.factors)

    def factor(self, k: int) -> CoordElement:
        return self.factors[k] if k < len(self.factors) else self.chain[k]

    def replace(self, k: int, b: CoordElement, color: int, step: int) -> "Path":
        f = [self.factor(j) for j in range(max(k + 1, len(self.factors)))]
        f[k] = b
        roots = list(self.roots)
        roots[color] += step
        return Path(self.ctype, self.level, self.lam, tuple(f), tuple(roots))

    def text(self) -> str:
        body = ";".join(b.text() for b in self.factors)
        return f"lambda={self.lam.text()}; N={self.stable_index}; p={body}"

    def __str__(self) -> str:
        return self.text()



def ground_state_path(t: AffineType, lam: ClassicalWeight) -> Path:
    if len(lam.coeffs) != t.rank + 1 or not lam.is_dominant():
        raise PathError(f"{lam.text()} is not a dominant weight for {t}")
    return Path(t, weight_level(t, lam), lam, ())


def parse_path(t: AffineType, text: str) -> Path:
    m = re.fullmatch(r"\s*lambda\s*=\s*([-\d,\s]+);\s*N\s*=\s*(\d+)\s*;\s*p\s*=\s*(.*?)\s*", text)
    if not m:
        raise PathError(f"cannot parse path {text!r}")
    try:
        lam = ClassicalWeight.parse(m.group(1).replace(" ", ""))
    except CartanError as exc:
        raise PathError(str(exc)) from exc
    if len(lam.coeffs) != t.rank + 1 or not lam.is_dominant():
        raise PathError(f"{lam.text()} is not a dominant weight for {t}")
    lev = weight_level(t, lam)
    parts = [p.strip() for p in m.group(3).split(";") if p.strip()]
    if len(parts) != int(m.group(2)):
        raise PathError(f"N={m.group(2)} but {len(parts)} factors are listed")
    try:
        factors = tuple(parse_coord(t, lev, p) for p in parts)
    except CoordError as exc:
        raise PathError(str(exc)) from exc
    path = Path(t, lev, lam, factors)
    if path.stable_index != len(factors):
        raise PathError(f"factor {len(factors) - 1} equals the ground element; N is not minimal")
    # the text form carries no weight; read it off the matching wall
    roots = tuple(int(k) for k in root_count(phi_map_inverse(path)))
    return Path(t, lev, lam, factors, roots)


def path_signature(p: Path, i: int) -> Reduced:
    """Reduced ``i``-signature of ``p``; tags are factor indices."""
    if i not in p.ctype.index_set:
        raise PathError(f"color {i} out of range for {p.ctype}")
    n = p.stable_index
    entries = [(n, 0, phi_coord(i, p.factor(n)))]
    for k in range(n - 1, -1, -1):
        b = p.factor(k)
        entries.append((k, eps_coord(i, b), phi_coord(i, b)))
    return reduce_signature(entries)


def acting_factor(i: int, p: Path, raising: bool) -> Optional[int]:
    sig = path_signature(p, i)
    return sig.e_target() if raising else sig.f_target()


def f_path(i: int, p: Path) -> Optional[Path]:
    k = acting_factor(i, p, raising=False)
    if k is None:
        return None
    return p.replace(k, f_coord(i, p.factor(k)), i, 1)


def e_path(i: int, p: Path) -> Optional[Path]:
    k = acting_factor(i, p, raising=True)
    if k is None:
        return None
    return p.replace(k, e_coord(i, p.factor(k)), i, -1)


def eps_path(i: int, p: Path) -> int:
    return path_signature(p, i).eps


def phi_path(i: int, p: Path) -> int:
    return path_signature(p, i).phi


def cwt_path(p: Path) -> ClassicalWeight:
    return ClassicalWeight(tuple(phi_path(i, p) - eps_path(i, p) for i in p.ctype.index_set))


def wt_path(p: Path) -> AffineWeight:
    """``lambda - sum k_i alpha_i`` with ``k`` the tracked operator counts."""
    return AffineWeight.from_classical(p.lam) - weighted_root_sum(p.ctype, p.roots)


# -- the map Phi --------------------------------------------------------------


def phi_map(w: Wall) -> Path:
    """``Phi(Y) = (psi^{-1}(Y(k)))_k`` on reduced proper walls."""
    if not is_proper(w) or not is_reduced(w):
        raise WallError(f"{w.text()} is not a reduced proper wall")
    factors = tuple(psi_inverse(w.cols[k]) for k in range(w.size))
    roots = tuple(int(k) for k in root_count(w))
    return Path(w.ctype, w.level, w.lam, factors, roots)


def phi_map_inverse(p: Path) -> Wall:
    """The reduced proper wall whose columns are ``psi(p(k))`` up to delta.

    Columns are fixed from the left; each one takes the lowest representative
    that keeps the already fixed part proper.
    """
    t, lev, lam = p.ctype, p.level, p.lam
    w = Wall(t, lev, lam, ())
    for k in range(p.stable_index - 1, -1, -1):
        cur = normalize(psi(p.factor(k), column_variant(t, k)))
        bound = max(w.column(k + 1).layers) + 2 * cur.pattern.states
        while max(cur.layers) <= bound:
            cand = w.replace(k, cur)
            if proper_from(cand, k):
                w = cand
                break
            cur = add_delta(cur)
        else:
            raise PathError(f"no proper column {k} for {p.text()}")
    if not is_proper(w):
        raise PathError(f"{p.text()} does not give a proper wall")
    return w
