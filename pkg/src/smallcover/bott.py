"""
Real Bott manifolds described by their Bott matrices.

A Bott matrix is a binary square matrix conjugate by a permutation to a
strictly upper triangular one, i.e. its off-diagonal digraph (edge i -> j
when A[i][j] = 1) is acyclic.  The manifold is the quotient of the n-torus
by the free Z_2^n action generated by the involutions below; torus points
are kept as exact rational angles.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

from .charfn import CharacteristicFunction
from .gf2 import BitMatrix, BitVector, NonSquareError, minimal_dependent_sets, nullspace
from .polytope import cube
from .simplicial import BettiVector


class NotBottError(ValueError):
    def __init__(self, cycle: Sequence[int]):
        super().__init__("not a Bott matrix; directed cycle " + " -> ".join(map(str, list(cycle) + [cycle[0]])))
        self.cycle = tuple(cycle)


class NotUpperTriangularError(ValueError):
    pass


@dataclass(frozen=True)
class BottCheck:
    is_bott: bool
    order: tuple[int, ...] = ()
    cycle: tuple[int, ...] = ()

    def __bool__(self):
        return self.is_bott


def is_bott_matrix(A: BitMatrix) -> BottCheck:
    """Topologically sort the digraph of ``A``.

    On success ``order`` is a permutation (1-based) with
    ``A.permute(order)`` strictly upper triangular; otherwise ``cycle`` is a
    directed cycle, a single vertex standing for a nonzero diagonal entry.
    """
    if A.nrows != A.ncols:
        raise NonSquareError(f"{A.nrows}x{A.ncols} matrix is not square")
    n = A.nrows
    # roots and successors visited high to low so that already sorted input keeps the identity order
    succ = [[j for j in reversed(range(n)) if (A.rows[i] >> j) & 1] for i in range(n)]
    # iterative DFS with colours; grey-on-grey edge closes a cycle
    colour = [0] * n
    parent = [-1] * n
    finished: list[int] = []
    for root in reversed(range(n)):
        if colour[root]:
            continue
        stack = [(root, iter(succ[root]))]
        colour[root] = 1
        while stack:
            v, it = stack[-1]
            for w in it:
                if colour[w] == 0:
                    colour[w] = 1
                    parent[w] = v
                    stack.append((w, iter(succ[w])))
                    break
                if colour[w] == 1:
                    cycle = [v]
                    u = v
                    while u != w:
                        u = parent[u]
                        cycle.append(u)
                    cycle.reverse()
                    return BottCheck(False, cycle=tuple(c + 1 for c in cycle))
            else:
                colour[v] = 2
                finished.append(v)
                stack.pop()
    return BottCheck(True, order=tuple(v + 1 for v in reversed(finished)))


@dataclass(frozen=True)
class BottMatrix:
    matrix: BitMatrix

    def __post_init__(self):
        check = is_bott_matrix(self.matrix)
        if not check:
            raise NotBottError(check.cycle)

    @property
    def n(self) -> int:
        return self.matrix.nrows

    def entry(self, i: int, j: int) -> int:
        return self.matrix.entry(i, j)

    def is_strictly_upper(self) -> bool:
        return all(self.matrix.rows[i] & ((1 << (i + 1)) - 1) == 0 for i in range(self.n))

    def to_text(self) -> str:
        return self.matrix.to_text()

    @classmethod
    def from_text(cls, text: str) -> "BottMatrix":
        return cls(BitMatrix.from_text(text))


def as_bott(A) -> BottMatrix:
    return A if isinstance(A, BottMatrix) else BottMatrix(A)


def kn_bott_matrix(n: int) -> BottMatrix:
    """First row (0, 1, ..., 1), all other rows zero."""
    if n < 1:
        raise ValueError("n must be at least 1")
    first = ((1 << n) - 1) ^ 1
    return BottMatrix(BitMatrix(n, n, (first,) + (0,) * (n - 1)))


# torus action ------------------------------------------------------------------


@dataclass(frozen=True)
class TorusPoint:
    """Angles theta_k in [0, 1); theta stands for exp(2 pi i theta)."""

    coords: tuple[Fraction, ...]

    def __init__(self, coords: Iterable):
        object.__setattr__(self, "coords", tuple(Fraction(c) % 1 for c in coords))

    @classmethod
    def _reduced(cls, coords: tuple[Fraction, ...]) -> "TorusPoint":
        p = object.__new__(cls)
        object.__setattr__(p, "coords", coords)
        return p

    def __len__(self):
        return len(self.coords)


HALF = Fraction(1, 2)


def _half_turn(theta: Fraction) -> Fraction:
    return theta + HALF if theta < HALF else theta - HALF


def _conjugate(theta: Fraction) -> Fraction:
    return 1 - theta if theta else theta


def involution(A, i: int, p: TorusPoint) -> TorusPoint:
    """a_i: rotate coordinate i by a half turn, conjugate coordinate j where A[i][j] = 1."""
    A = as_bott(A)
    n = A.n
    if not 1 <= i <= n:
        raise IndexError(f"involution index {i} out of range 1..{n}")
    if len(p) != n:
        raise ValueError("point dimension does not match the matrix")
    row = A.matrix.rows[i - 1]
    out = []
    for j, theta in enumerate(p.coords):
        if j == i - 1:
            out.append(_half_turn(theta))
        elif (row >> j) & 1:
            out.append(_conjugate(theta))
        else:
            out.append(theta)
    return TorusPoint._reduced(tuple(out))


@dataclass(frozen=True)
class GroupElement:
    """a_1^e_1 ... a_n^e_n, with exponents e packed in a BitVector."""

    exponents: BitVector

    @classmethod
    def from_list(cls, bits: Sequence[int]) -> "GroupElement":
        return cls(BitVector.from_list(bits))


def group_action(A, g: GroupElement, p: TorusPoint) -> TorusPoint:
    A = as_bott(A)
    gens = sorted(g.exponents.support())
    forward = p
    for i in gens:
        forward = involution(A, i, forward)
    backward = p
    for i in reversed(gens):
        backward = involution(A, i, backward)
    assert forward == backward, "involutions failed to commute"
    return forward


def act_closed_form(A, g: GroupElement, p: TorusPoint) -> TorusPoint:
    """g p without composing involutions.

    Half turns and conjugations on one circle commute, so coordinate j is
    conjugated iff an odd number of generators in g have A[i][j] = 1, then
    rotated by a half turn iff a_j occurs in g.
    """
    A = as_bott(A)
    e = g.exponents.bits
    flips = 0
    for i, row in enumerate(A.matrix.rows):
        if (e >> i) & 1:
            flips ^= row
    out = []
    for j, theta in enumerate(p.coords):
        if (flips >> j) & 1:
            theta = _conjugate(theta)
        if (e >> j) & 1:
            theta = _half_turn(theta)
        out.append(theta)
    return TorusPoint._reduced(tuple(out))


QUARTER = Fraction(1, 4)


def _fixers(A: BottMatrix, p: TorusPoint) -> list[int]:
    """Exponent masks e != 0 with g p = p, g = a^e.

    Coordinate j is fixed by (conjugate^f_j, half turn^e_j) exactly when
    e_j = 0 and (f_j = 0 or theta_j in {0, 1/2}), or e_j = 1, f_j = 1 and
    theta_j in {1/4, 3/4}.  So e must lie inside the quarter-point mask and
    only those subsets need testing.
    """
    real = quarter = 0
    for j, theta in enumerate(p.coords):
        if theta.denominator <= 2:
            real |= 1 << j
        elif theta.denominator == 4:
            quarter |= 1 << j
    rows = A.matrix.rows
    out = []
    e = quarter
    while e:
        flips = 0
        for i in range(A.n):
            if (e >> i) & 1:
                flips ^= rows[i]
        if flips & e == e and (flips & ~e) & ~real == 0:
            out.append(e)
        e = (e - 1) & quarter
    return sorted(out)


def freeness_probe(A, points: Iterable[TorusPoint]) -> list[tuple[GroupElement, TorusPoint]]:
    """Pairs (g, p) with g != 1 and g p = p among the sampled points.

    An empty result is only evidence of freeness, not a proof.
    """
    A = as_bott(A)
    n = A.n
    found = []
    for p in points:
        if len(p) != n:
            raise ValueError("point dimension does not match the matrix")
        found += [(GroupElement(BitVector(n, e)), p) for e in _fixers(A, p)]
    return found


# Betti numbers ----------------------------------------------------------------


def ishida_betti(A) -> BettiVector:
    """b_i = number of i-element column sets with zero GF(2) sum.

    Zero-sum column sets form the null space of A; its 2^(n - rank) vectors
    are walked in Gray-code order, one XOR per step.
    """
    A = as_bott(A)
    n = A.n
    basis = [v.bits for v in nullspace(A.matrix)]
    counts = [0] * (n + 1)
    counts[0] = 1
    x = 0
    for step in range(1, 1 << len(basis)):
        x ^= basis[(step & -step).bit_length() - 1]
        counts[bin(x).count("1")] += 1
    return BettiVector(tuple(counts), start=0)


def _binom(a: int, b: int) -> int:
    if b < 0 or a < 0 or b > a:
        return 0
    return comb(a, b)


def kn_betti_closed(n: int, i: int) -> int:
    if i % 2 == 0:
        return _binom(n - 1, i)
    return _binom(n - 1, i - 1)


def p5_betti_closed(n: int, i: int) -> int:
    if i % 2 == 0:
        return 2 * _binom(n - 2, i - 1) + _binom(n - 2, i)
    return 2 * _binom(n - 2, i - 1) + _binom(n - 2, i - 2)


def p6_betti_closed(n: int, i: int) -> int:
    if i % 2 == 0:
        return 3 * _binom(n - 2, i - 1) + _binom(n - 2, i)
    return 3 * _binom(n - 2, i - 1) + _binom(n - 2, i - 2)


CLOSED_FORMS = {"kn": kn_betti_closed, "p5": p5_betti_closed, "p6": p6_betti_closed}


def closed_betti(family: str, n: int) -> BettiVector:
    f = CLOSED_FORMS[family]
    return BettiVector(tuple(f(n, i) for i in range(n + 1)), start=0)


# manifold properties ------------------------------------------------------------


def orientable(A) -> bool:
    """Every row of A has even weight."""
    A = as_bott(A)
    return all(bin(r).count("1") % 2 == 0 for r in A.matrix.rows)


def cohomologically_symplectic(A) -> bool:
    """Every column of A occurs an even number of times among the columns."""
    A = as_bott(A)
    cols = [c.bits for c in A.matrix.columns()]
    return all(cols.count(c) % 2 == 0 for c in cols)


def char_fn_from_bott(A) -> CharacteristicFunction:
    """[I_n | I_n + A^T] on the n-cube; A must already be strictly upper triangular."""
    A = as_bott(A)
    if not A.is_strictly_upper():
        raise NotUpperTriangularError("conjugate by the order from is_bott_matrix first")
    n = A.n
    ident = BitMatrix.identity(n)
    return CharacteristicFunction(cube(n), ident.hstack(ident + A.matrix.transpose()))


def upper_triangular_form(A) -> tuple[BottMatrix, tuple[int, ...]]:
    """Conjugate ``A`` to strictly upper triangular form; also returns the order used."""
    A = as_bott(A)
    order = is_bott_matrix(A.matrix).order
    return BottMatrix(A.matrix.permute(order)), order


# binary matroid and cohomology ring ------------------------------------------------


def circuits(A) -> list[tuple[int, ...]]:
    A = as_bott(A)
    return minimal_dependent_sets(A.matrix.columns())


@dataclass(frozen=True)
class RingPresentation:
    generators: tuple[tuple[tuple[int, ...], int], ...]
    relations: tuple[dict, ...]

    def to_json(self) -> str:
        return json.dumps(
            {
                "generators": [{"circuit": list(c), "degree": d} for c, d in self.generators],
                "relations": list(self.relations),
            },
            sort_keys=True,
        )

    def to_text(self) -> str:
        names = {c: "x_{" + ",".join(map(str, c)) + "}" for c, _ in self.generators}
        lines = ["generators:"]
        lines += [f"  {names[c]}  deg {d}" for c, d in self.generators]
        lines.append("relations:")
        for rel in self.relations:
            if rel["type"] == "square_zero":
                c = tuple(rel["circuit"])
                lines.append(f"  {names[c]}^2 = 0")
            elif rel["type"] == "commute":
                a, b = tuple(rel["left"]), tuple(rel["right"])
                sign = "" if rel["sign"] == 1 else "-"
                lines.append(f"  {names[a]} {names[b]} = {sign}{names[b]} {names[a]}")
            else:
                a, b = tuple(rel["left"]), tuple(rel["right"])
                lines.append(f"  {names[a]} {names[b]} = 0")
        return "\n".join(lines) + "\n"


def ring_presentation(A) -> RingPresentation:
    """One generator x_C of degree |C| per circuit C, with relations

    x_C^2 = 0; x_C x_D = (-1)^(|C||D|) x_D x_C when C, D are disjoint;
    x_C x_D = 0 when they overlap.
    """
    cs = circuits(A)
    gens = tuple((c, len(c)) for c in cs)
    rels: list[dict] = [{"type": "square_zero", "circuit": list(c)} for c in cs]
    for c, d in combinations(cs, 2):
        if set(c) & set(d):
            rels.append({"type": "product_zero", "left": list(c), "right": list(d)})
        else:
            rels.append(
                {"type": "commute", "left": list(c), "right": list(d), "sign": (-1) ** (len(c) * len(d))}
            )
    return RingPresentation(gens, tuple(rels))


def _disjoint_unions(cs: Sequence[tuple[int, ...]]) -> dict[int, int]:
    """Map each union mask of pairwise disjoint circuits to how many families produce it."""
    masks = [sum(1 << (j - 1) for j in c) for c in cs]
    found: dict[int, int] = {}

    def walk(start: int, used: int):
        found[used] = found.get(used, 0) + 1
        for k in range(start, len(masks)):
            if not masks[k] & used:
                walk(k + 1, used | masks[k])

    walk(0, 0)
    return found


def betti_from_circuits(A) -> BettiVector:
    """Betti numbers read off the circuit presentation.

    A product of pairwise disjoint circuit classes is nonzero, and two such
    products with the same union of circuits span the same line, so b_d is
    the number of d-element sets that are disjoint unions of circuits.
    """
    A = as_bott(A)
    counts = [0] * (A.n + 1)
    for mask in _disjoint_unions(circuits(A)):
        counts[bin(mask).count("1")] += 1
    return BettiVector(tuple(counts), start=0)


def disjoint_circuit_families(A) -> BettiVector:
    """Number of families of pairwise disjoint circuits, by total size.

    Unlike ``betti_from_circuits`` this counts families that share a union
    separately, so it overcounts as soon as a set splits into circuits in
    more than one way (K_5 has three splittings of {2, 3, 4, 5}).
    """
    A = as_bott(A)
    counts = [0] * (A.n + 1)
    for mask, k in _disjoint_unions(circuits(A)).items():
        counts[bin(mask).count("1")] += k
    return BettiVector(tuple(counts), start=0)
