"""Bracket cancellation shared by the path and wall tensor rules.

Each position contributes ``1^eps 0^phi`` and positions are read from left to
right.  A ``0`` immediately followed by a ``1`` cancels; repeating this until
nothing cancels leaves ``1...1 0...0``.  ``f`` acts on the position owning the
leftmost surviving ``0`` and ``e`` on the position owning the rightmost
surviving ``1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Iterable, Sequence


@dataclass(frozen=True)
class Reduced:
    ones: tuple[Hashable, ...]
    zeros: tuple[Hashable, ...]

    @property
    def eps(self) -> int:
        return len(self.ones)

    @property
    def phi(self) -> int:
        return len(self.zeros)

    def e_target(self) -> Hashable | None:
        return self.ones[-1] if self.ones else None

    def f_target(self) -> Hashable | None:
        return self.zeros[0] if self.zeros else None

    def text(self) -> str:
        return "1" * len(self.ones) + "0" * len(self.zeros)


def reduce_signature(entries: Iterable[tuple[Hashable, int, int]]) -> Reduced:
    """Reduce ``(tag, eps, phi)`` entries listed from left to right."""
    ones: list[Hashable] = []
    # open zeros as (tag, multiplicity) runs, most recent last
    zeros: list[list] = []
    for tag, eps, phi in entries:
        k = eps
        while k and zeros:
            run = zeros[-1]
            take = min(k, run[1])
            run[1] -= take
            k -= take
            if run[1] == 0:
                zeros.pop()
        if k:
            ones.extend([tag] * k)
        if phi:
            zeros.append([tag, phi])
    flat_zeros: list[Hashable] = []
    for tag, m in zeros:
        flat_zeros.extend([tag] * m)
    return Reduced(tuple(ones), tuple(flat_zeros))


def signature_string(pairs: Sequence[tuple[int, int]]) -> str:
    """Unreduced ``1^eps 0^phi`` concatenation, for display."""
    return "".join("1" * e + "0" * p for e, p in pairs)


def cancel_string(s: str) -> str:
    """Literal adjacent-pair deletion of ``01``; the reference for :func:`reduce_signature`."""
    while "01" in s:
        s = s.replace("01", "")
    return s
