"""
Short subsets, Hausmann's partial order and genetic codes of planar polygon
spaces, with recognition of the three families that are small covers over
a cube or a polygon prism.

Lengths are exact rationals.  Indices are 1-based positions in the sorted
length vector; the sorting permutation is kept on the ``LengthVector``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence


class NotGenericError(ValueError):
    def __init__(self, witness: Sequence[int]):
        super().__init__(f"length vector is not generic; {sorted(witness)} sums to half the perimeter")
        self.witness = tuple(sorted(witness))


@dataclass(frozen=True)
class LengthVector:
    lengths: tuple[Fraction, ...]
    # order[k] is the 1-based input position of the k-th smallest length
    order: tuple[int, ...]

    def __init__(self, lengths: Iterable, order: Sequence[int] | None = None):
        raw = [Fraction(x) for x in lengths]
        if len(raw) < 1 or any(x <= 0 for x in raw):
            raise ValueError("lengths must be positive")
        if order is None:
            order = sorted(range(1, len(raw) + 1), key=lambda k: (raw[k - 1], k))
            raw = [raw[k - 1] for k in order]
        elif any(a > b for a, b in zip(raw, raw[1:])):
            raise ValueError("lengths must be nondecreasing")
        object.__setattr__(self, "lengths", tuple(raw))
        object.__setattr__(self, "order", tuple(order))

    @classmethod
    def parse(cls, text: str) -> "LengthVector":
        """Comma-separated rationals, e.g. ``"1,2,2,2,4"`` or ``"1/2,1,3/2"``."""
        return cls(Fraction(tok.strip()) for tok in text.split(","))

    @property
    def m(self) -> int:
        return len(self.lengths)

    @property
    def n(self) -> int:
        return self.m - 3

    def total(self) -> Fraction:
        return sum(self.lengths, Fraction(0))

    def scaled(self, c) -> "LengthVector":
        return LengthVector([Fraction(c) * x for x in self.lengths], self.order)


def half_sum_witness(alpha: LengthVector) -> tuple[int, ...] | None:
    """A subset summing to half the perimeter, or None if ``alpha`` is generic.

    A subset and its complement are witnesses together, so only subsets
    containing the longest side are scanned, smallest first.
    """
    half = alpha.total() / 2
    m = alpha.m
    rest = range(1, m)
    for size in range(m):
        for combo in combinations(rest, size):
            I = combo + (m,)
            if sum((alpha.lengths[i - 1] for i in I), Fraction(0)) == half:
                return I
    return None


def is_generic(alpha: LengthVector) -> bool:
    return half_sum_witness(alpha) is None


def _require_generic(alpha: LengthVector):
    w = half_sum_witness(alpha)
    if w is not None:
        raise NotGenericError(w)


def is_short(alpha: LengthVector, I: Iterable[int], check: bool = True) -> bool:
    if check:
        _require_generic(alpha)
    I = set(I)
    if not I <= set(range(1, alpha.m + 1)):
        raise IndexError(f"subset must lie in 1..{alpha.m}")
    inside = sum((alpha.lengths[i - 1] for i in I), Fraction(0))
    return inside < alpha.total() - inside


def hausmann_leq(I: Iterable[int], J: Iterable[int]) -> bool:
    """I <= J iff some |I| elements j_1 < ... < j_t of J have i_s <= j_s.

    Matching I against the |I| largest elements of J, both ascending, is
    optimal, so one comparison pass decides it.
    """
    I, J = sorted(I), sorted(J)
    if len(I) > len(J):
        return False
    return all(i <= j for i, j in zip(I, J[len(J) - len(I):]))


@dataclass(frozen=True)
class GeneticCode:
    m: int
    genes: tuple[tuple[int, ...], ...]
    empty_space: bool = False

    @property
    def n(self) -> int:
        return self.m - 3

    def __str__(self):
        if self.empty_space:
            return "<> (empty moduli space)"
        return "<" + ", ".join("{" + ",".join(map(str, g)) + "}" for g in self.genes) + ">"


def short_sets_with_last(alpha: LengthVector) -> list[tuple[int, ...]]:
    """All short subsets containing the index of the longest side."""
    m = alpha.m
    out = []
    for mask in range(1 << (m - 1)):
        I = tuple(k + 1 for k in range(m - 1) if (mask >> k) & 1) + (m,)
        if is_short(alpha, I, check=False):
            out.append(I)
    return out


def genetic_code(alpha: LengthVector) -> GeneticCode:
    _require_generic(alpha)
    m = alpha.m
    S = short_sets_with_last(alpha)
    if not S:
        return GeneticCode(m, (), empty_space=True)
    genes = [I for I in S if not any(I != J and hausmann_leq(I, J) for J in S)]
    return GeneticCode(m, tuple(sorted(genes, key=lambda g: (len(g), g))))


class Family(str, Enum):
    KN = "KN"
    P5_PRISM = "P5_PRISM"
    P6_PRISM = "P6_PRISM"
    OTHER = "OTHER"


def family_codes(n: int) -> dict[Family, tuple[int, ...]]:
    head = tuple(range(1, n - 1))
    return {
        Family.KN: tuple(range(1, n)) + (n + 3,),
        Family.P5_PRISM: head + (n, n + 3),
        Family.P6_PRISM: head + (n + 1, n + 3),
    }


def recognize_family(code: GeneticCode, n: int | None = None) -> Family:
    if n is None:
        n = code.n
    if code.empty_space or len(code.genes) != 1:
        return Family.OTHER
    (gene,) = code.genes
    for fam, target in family_codes(n).items():
        if gene == target:
            return fam
    if gene == tuple(range(1, n)) + (n + 2, n + 3):
        warnings.warn(
            f"code <{set(gene)}> is sometimes quoted for the P6 prism family; treated as OTHER",
            stacklevel=2,
        )
    return Family.OTHER
