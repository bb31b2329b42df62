"""Affine Cartan data for the six classical families used by the package.

Indices run over ``I = {0, 1, ..., n}`` with 0 the affine node.  Matrices use
the convention ``a_ij = <h_i, alpha_j>``, so the classical projection of
``alpha_j`` is column ``j`` read in the basis of fundamental weights.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import gcd
from typing import Iterator, Mapping, Sequence


class Family(enum.Enum):
    A1 = "A1"  # A_n^(1)
    B1 = "B1"  # B_n^(1)
    C1 = "C1"  # C_n^(1)
    A2odd = "A2odd"  # A_{2n-1}^(2)
    A2even = "A2even"  # A_{2n}^(2)
    D2 = "D2"  # D_{n+1}^(2)


MIN_RANK = {
    Family.A1: 1,
    Family.B1: 3,
    Family.C1: 2,
    Family.A2odd: 3,
    Family.A2even: 1,
    Family.D2: 2,
}


class CartanError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class AffineType:
    family: Family
    rank: int

    def __post_init__(self) -> None:
        if not isinstance(self.rank, int) or self.rank < MIN_RANK[self.family]:
            raise CartanError(
                f"rank {self.rank!r} is invalid for family {self.family.value} "
                f"(minimum {MIN_RANK[self.family]})"
            )

    @property
    def n(self) -> int:
        return self.rank

    @property
    def index_set(self) -> range:
        return range(self.rank + 1)

    @classmethod
    def parse(cls, text: str) -> "AffineType":
        """Parse ``A1:n``, ``B1:n``, ``C1:n``, ``A2:2n-1``, ``A2:2n`` or ``D2:n+1``."""
        m = re.fullmatch(r"\s*([ABCD])([12]):(\d+)\s*", text)
        if not m:
            raise CartanError(f"cannot parse affine type {text!r}")
        letter, twist, num = m.group(1), m.group(2), int(m.group(3))
        if twist == "1" and letter in "ABC":
            return cls(Family[letter + "1"], num)
        if twist == "2" and letter == "A":
            if num % 2:
                return cls(Family.A2odd, (num + 1) // 2)
            return cls(Family.A2even, num // 2)
        if twist == "2" and letter == "D":
            return cls(Family.D2, num - 1)
        raise CartanError(f"unsupported affine type {text!r}")

    def label(self) -> str:
        f, n = self.family, self.rank
        if f in (Family.A1, Family.B1, Family.C1):
            return f"{f.value}:{n}"
        if f is Family.A2odd:
            return f"A2:{2 * n - 1}"
        if f is Family.A2even:
            return f"A2:{2 * n}"
        return f"D2:{n + 1}"

    def __str__(self) -> str:
        return self.label()


def _chain(size: int) -> list[list[int]]:
    m = [[0] * size for _ in range(size)]
    for i in range(size):
        m[i][i] = 2
        if i + 1 < size:
            m[i][i + 1] = m[i + 1][i] = -1
    return m


@lru_cache(maxsize=None)
def _tables(t: AffineType) -> tuple[tuple[tuple[int, ...], ...], tuple[int, ...], tuple[int, ...]]:
    n, f = t.rank, t.family
    a = _chain(n + 1)
    if f is Family.A1:
        if n == 1:
            a = [[2, -2], [-2, 2]]
        else:
            a[0][n] = a[n][0] = -1
        marks = [1] * (n + 1)
        comarks = [1] * (n + 1)
    elif f in (Family.B1, Family.A2odd):
        # nodes 0 and 1 both hang off node 2
        a[0][1] = a[1][0] = 0
        a[0][2] = a[2][0] = -1
        if f is Family.B1:
            a[n][n - 1] = -2
            marks = [1, 1] + [2] * (n - 1)
            comarks = [1, 1] + [2] * (n - 2) + [1]
        else:
            a[n - 1][n] = -2
            marks = [1, 1] + [2] * (n - 2) + [1]
            comarks = [1, 1] + [2] * (n - 1)
    elif f is Family.C1:
        a[1][0] = -2
        a[n - 1][n] = -2
        marks = [1] + [2] * (n - 1) + [1]
        comarks = [1] * (n + 1)
    elif f is Family.A2even:
        if n == 1:
            a = [[2, -4], [-1, 2]]
        else:
            a[0][1] = -2
            a[n - 1][n] = -2
        marks = [2] * n + [1]
        comarks = [1] + [2] * n
    else:  # D2
        a[0][1] = -2
        a[n][n - 1] = -2
        marks = [1] * (n + 1)
        comarks = [1] + [2] * (n - 1) + [1]
    return tuple(tuple(r) for r in a), tuple(marks), tuple(comarks)


def _check_tables(t: AffineType) -> None:
    a, marks, comarks = _tables(t)
    size = t.rank + 1
    for i in range(size):
        if a[i][i] != 2 or any(a[i][j] > 0 for j in range(size) if j != i):
            raise CartanError(f"{t}: malformed Cartan matrix row {i}")
        if sum(a[i][j] * marks[j] for j in range(size)) != 0:
            raise CartanError(f"{t}: marks are not in the kernel of A")
        if sum(comarks[j] * a[j][i] for j in range(size)) != 0:
            raise CartanError(f"{t}: comarks are not in the kernel of A^T")
    for vec in (marks, comarks):
        g = 0
        for v in vec:
            g = gcd(g, v)
        if g != 1 or min(vec) <= 0:
            raise CartanError(f"{t}: kernel vector {vec} is not primitive positive")


def cartan_matrix(t: AffineType) -> tuple[tuple[int, ...], ...]:
    _check_tables(t)
    return _tables(t)[0]


def marks(t: AffineType) -> tuple[int, ...]:
    """Coefficients of the null root ``delta`` in the simple roots."""
    _check_tables(t)
    return _tables(t)[1]


def comarks(t: AffineType) -> tuple[int, ...]:
    """Coefficients of the canonical central element in the simple coroots."""
    _check_tables(t)
    return _tables(t)[2]


def d0(t: AffineType) -> int:
    return marks(t)[0]


@dataclass(frozen=True)
class ClassicalWeight:
    """An element of the classical weight lattice, ``sum c_i Lambda_i``."""

    coeffs: tuple[int, ...]

    @classmethod
    def zero(cls, t: AffineType) -> "ClassicalWeight":
        return cls((0,) * (t.rank + 1))

    @classmethod
    def fundamental(cls, t: AffineType, i: int) -> "ClassicalWeight":
        c = [0] * (t.rank + 1)
        c[i] = 1
        return cls(tuple(c))

    @classmethod
    def parse(cls, text: str) -> "ClassicalWeight":
        try:
            return cls(tuple(int(p) for p in text.split(",")))
        except ValueError as exc:
            raise CartanError(f"cannot parse weight {text!r}") from exc

    def __add__(self, other: "ClassicalWeight") -> "ClassicalWeight":
        return ClassicalWeight(tuple(a + b for a, b in zip(self.coeffs, other.coeffs, strict=True)))

    def __sub__(self, other: "ClassicalWeight") -> "ClassicalWeight":
        return ClassicalWeight(tuple(a - b for a, b in zip(self.coeffs, other.coeffs, strict=True)))

    def __neg__(self) -> "ClassicalWeight":
        return ClassicalWeight(tuple(-a for a in self.coeffs))

    def scale(self, k: int) -> "ClassicalWeight":
        return ClassicalWeight(tuple(k * a for a in self.coeffs))

    def pairing(self, i: int) -> int:
        """``<h_i, self>``."""
        return self.coeffs[i]

    def is_dominant(self) -> bool:
        return all(c >= 0 for c in self.coeffs)

    def text(self) -> str:
        return ",".join(str(c) for c in self.coeffs)

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            coef = "" if c == 1 else "-" if c == -1 else str(c)
            terms.append(f"{coef}L{i}")
        return " + ".join(terms).replace("+ -", "- ") or "0"


def level(t: AffineType, lam: ClassicalWeight) -> int:
    cm = comarks(t)
    if len(lam.coeffs) != len(cm):
        raise CartanError(f"weight {lam.coeffs} has the wrong length for {t}")
    return sum(c * x for c, x in zip(cm, lam.coeffs))


def classical_root(t: AffineType, j: int) -> ClassicalWeight:
    a = cartan_matrix(t)
    if j not in t.index_set:
        raise CartanError(f"color {j} out of range for {t}")
    return ClassicalWeight(tuple(a[i][j] for i in t.index_set))


def dominant_weights(t: AffineType, lev: int) -> Iterator[ClassicalWeight]:
    """All dominant integral weights of the given level, lexicographic order."""
    cm = comarks(t)
    for coeffs in product(*(range(lev // c + 1) for c in cm)):
        if sum(c * x for c, x in zip(cm, coeffs)) == lev:
            yield ClassicalWeight(coeffs)


@dataclass(frozen=True)
class AffineWeight:
    """``sum c_i Lambda_i + q delta`` with ``q`` an exact rational."""

    lambda_coeffs: tuple[int, ...]
    delta_coeff: Fraction = Fraction(0)

    @classmethod
    def from_classical(cls, lam: ClassicalWeight) -> "AffineWeight":
        return cls(lam.coeffs, Fraction(0))

    def classical(self) -> ClassicalWeight:
        return ClassicalWeight(self.lambda_coeffs)

    def __add__(self, other: "AffineWeight") -> "AffineWeight":
        return AffineWeight(
            tuple(a + b for a, b in zip(self.lambda_coeffs, other.lambda_coeffs, strict=True)),
            self.delta_coeff + other.delta_coeff,
        )

    def __sub__(self, other: "AffineWeight") -> "AffineWeight":
        return self + other.scale(-1)

    def scale(self, k: Fraction | int) -> "AffineWeight":
        k = Fraction(k)
        lam = tuple(k * a for a in self.lambda_coeffs)
        if any(x.denominator != 1 for x in lam):
            raise CartanError("scaling produced a non-integral Lambda part")
        return AffineWeight(tuple(int(x) for x in lam), k * self.delta_coeff)

    def text(self) -> str:
        return f"{ClassicalWeight(self.lambda_coeffs)} + ({self.delta_coeff})delta"


def simple_root(t: AffineType, j: int) -> AffineWeight:
    """``alpha_j`` in the basis ``Lambda_0..Lambda_n, delta``."""
    cl = classical_root(t, j)
    q = Fraction(1, d0(t)) if j == 0 else Fraction(0)
    return AffineWeight(cl.coeffs, q)


def weighted_root_sum(t: AffineType, k: Mapping[int, Fraction] | Sequence[Fraction]) -> AffineWeight:
    """``sum k_i alpha_i`` for a (possibly rational) root count."""
    items = k.items() if isinstance(k, Mapping) else enumerate(k)
    lam = [Fraction(0)] * (t.rank + 1)
    q = Fraction(0)
    for j, kj in items:
        kj = Fraction(kj)
        a = simple_root(t, j)
        for i, c in enumerate(a.lambda_coeffs):
            lam[i] += kj * c
        q += kj * a.delta_coeff
    if any(x.denominator != 1 for x in lam):
        raise CartanError("root sum has a non-integral Lambda part")
    return AffineWeight(tuple(int(x) for x in lam), q)
