"""
Finite abstract simplicial complexes and exact reduced rational homology.

Faces are handled internally as bitmasks over the sorted vertex list.
Boundary matrices carry the usual alternating signs from the sorted vertex
order, and the chain complex is augmented by the empty simplex so that the
reduced Betti numbers come straight out of the ranks: the complex with no
vertices has a single class in degree -1.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from math import gcd
from typing import Iterable, Sequence


class UnknownVertexError(ValueError):
    pass


@dataclass(frozen=True)
class BettiVector:
    """Betti numbers ``values[k]`` in degree ``start + k``."""

    values: tuple[int, ...]
    start: int = 0

    def __post_init__(self):
        if any(v < 0 for v in self.values):
            raise ValueError("Betti numbers are nonnegative")

    def __getitem__(self, degree: int) -> int:
        k = degree - self.start
        if 0 <= k < len(self.values):
            return self.values[k]
        return 0

    def __iter__(self):
        return iter(self.values)

    def __len__(self):
        return len(self.values)

    def total(self) -> int:
        return sum(self.values)

    def as_list(self) -> list[int]:
        return list(self.values)


class SimplicialComplex:
    """A complex given by its maximal faces.

    ``SimplicialComplex([])`` is the complex whose only simplex is the empty
    one; its reduced homology is concentrated in degree -1.
    """

    def __init__(self, faces: Iterable[Iterable[int]] = ()):
        sets = {frozenset(f) for f in faces}
        sets.discard(frozenset())
        maximal = [f for f in sets if not any(f < g for g in sets)]
        self.vertices: tuple[int, ...] = tuple(sorted(set().union(*maximal))) if maximal else ()
        self._index = {v: k for k, v in enumerate(self.vertices)}
        self._masks = sorted(self._mask(f) for f in maximal)
        self._face_cache: dict[int, list[int]] = {}
        self.maximal_faces: tuple[tuple[int, ...], ...] = tuple(
            sorted((tuple(sorted(f)) for f in maximal), key=lambda t: (len(t), t))
        )

    @classmethod
    def _from_masks(cls, vertices: Sequence[int], masks: Iterable[int]) -> "SimplicialComplex":
        return cls([_unmask(vertices, m) for m in masks])

    def _mask(self, face: Iterable[int]) -> int:
        m = 0
        for v in face:
            m |= 1 << self._index[v]
        return m

    def __repr__(self):
        return f"SimplicialComplex({[list(f) for f in self.maximal_faces]})"

    def __eq__(self, other):
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.maximal_faces == other.maximal_faces

    def __hash__(self):
        return hash(self.maximal_faces)

    @property
    def dimension(self) -> int:
        if not self.maximal_faces:
            return -1
        return max(len(f) for f in self.maximal_faces) - 1

    def is_pure(self) -> bool:
        return len({len(f) for f in self.maximal_faces}) <= 1

    def faces_of_size(self, k: int) -> list[tuple[int, ...]]:
        """All faces with ``k`` vertices, sorted lexicographically."""
        return sorted(_unmask(self.vertices, m) for m in self._face_masks(k))

    def _face_masks(self, k: int) -> list[int]:
        cached = self._face_cache.get(k)
        if cached is None:
            cached = self._face_cache[k] = self._generate(k)
        return cached

    def _generate(self, k: int) -> list[int]:
        if k == 0:
            return [0]
        seen: set[int] = set()
        n = len(self.vertices)
        for top in self._masks:
            bits = [b for b in range(n) if (top >> b) & 1]
            if len(bits) < k:
                continue
            for combo in combinations(bits, k):
                m = 0
                for b in combo:
                    m |= 1 << b
                seen.add(m)
        return sorted(seen)

    def f_vector(self) -> list[int]:
        """(f_{-1}, f_0, ..., f_dim)."""
        return [len(self._face_masks(k)) for k in range(self.dimension + 2)]

    def reduced_euler_characteristic(self) -> int:
        return sum(f if k % 2 else -f for k, f in enumerate(self.f_vector()))

    def to_json(self) -> str:
        return json.dumps(
            {"vertices": list(self.vertices), "maximal_faces": [list(f) for f in self.maximal_faces]},
            sort_keys=True,
        )

    @classmethod
    def from_json(cls, text: str) -> "SimplicialComplex":
        data = json.loads(text)
        K = cls(data["maximal_faces"])
        extra = set(data.get("vertices", [])) - set(K.vertices)
        if extra:
            raise ValueError(f"vertices {sorted(extra)} lie in no maximal face")
        return K


def _unmask(vertices: Sequence[int], m: int) -> tuple[int, ...]:
    out = []
    k = 0
    while m:
        if m & 1:
            out.append(vertices[k])
        m >>= 1
        k += 1
    return tuple(out)


def induced_subcomplex(K: SimplicialComplex, W: Iterable[int]) -> SimplicialComplex:
    W = set(W)
    unknown = W - set(K.vertices)
    if unknown:
        raise UnknownVertexError(f"vertices {sorted(unknown)} are not in the complex")
    w = K._mask(W)
    return SimplicialComplex._from_masks(K.vertices, {top & w for top in K._masks})


def join(K: SimplicialComplex, L: SimplicialComplex) -> SimplicialComplex:
    if set(K.vertices) & set(L.vertices):
        raise ValueError("join needs disjoint vertex sets")
    kf = K.maximal_faces or ((),)
    lf = L.maximal_faces or ((),)
    return SimplicialComplex([a + b for a in kf for b in lf])


# exact ranks ----------------------------------------------------------------


def boundary_rows(K: SimplicialComplex, k: int) -> list[dict[int, int]]:
    """Rows of the boundary map from k-vertex faces to (k-1)-vertex faces.

    One sparse row per k-vertex face; the (k-1)-vertex faces are indexed in
    the order of ``faces_of_size(k - 1)``.  ``k = 1`` is the augmentation.
    """
    lower = {m: i for i, m in enumerate(K._face_masks(k - 1))}
    rows = []
    for m in K._face_masks(k):
        row = {}
        sign = 1
        rest = m
        while rest:
            low = rest & -rest
            row[lower[m ^ low]] = sign
            sign = -sign
            rest ^= low
        rows.append(row)
    return rows


def exact_rank(rows: Iterable[dict[int, int]]) -> int:
    """Rank over Q of a sparse integer matrix, by fraction-free elimination.

    Each incoming row is reduced against the stored pivot rows (keyed by
    their leading column).  Unit pivots subtract directly; otherwise the row
    is cross-multiplied and divided by its content, so entries stay small.
    """
    pivots: dict[int, dict[int, int]] = {}
    for row in rows:
        r = {c: v for c, v in row.items() if v}
        while r:
            lead = min(r)
            p = pivots.get(lead)
            if p is None:
                pivots[lead] = r
                break
            a, b = p[lead], r[lead]
            if a == 1 or a == -1:
                f = a * b
                for c, v in p.items():
                    nv = r.get(c, 0) - f * v
                    if nv:
                        r[c] = nv
                    else:
                        del r[c]
            else:
                g = gcd(a, b)
                sa, sb = a // g, b // g
                r = {c: sa * v for c, v in r.items()}
                for c, v in p.items():
                    nv = r.get(c, 0) - sb * v
                    if nv:
                        r[c] = nv
                    else:
                        del r[c]
                if r:
                    content = 0
                    for v in r.values():
                        content = gcd(content, v)
                        if content == 1:
                            break
                    if content > 1:
                        r = {c: v // content for c, v in r.items()}
    return len(pivots)


def rank_mod_prime(rows: Iterable[dict[int, int]], p: int) -> int:
    """Rank over GF(p); a lower bound for the rational rank."""
    pivots: dict[int, dict[int, int]] = {}
    for row in rows:
        r = {c: v % p for c, v in row.items() if v % p}
        while r:
            lead = min(r)
            piv = pivots.get(lead)
            if piv is None:
                inv = pow(r[lead], -1, p)
                pivots[lead] = {c: v * inv % p for c, v in r.items()}
                break
            f = r[lead]
            for c, v in piv.items():
                nv = (r.get(c, 0) - f * v) % p
                if nv:
                    r[c] = nv
                else:
                    r.pop(c, None)
    return len(pivots)


def reduced_betti(K: SimplicialComplex, max_degree: int | None = None) -> BettiVector:
    """Reduced rational Betti numbers in degrees -1 .. ``max_degree``."""
    if max_degree is None:
        max_degree = max(K.dimension, -1)
    if max_degree < -1:
        raise ValueError("max_degree must be at least -1")
    top = K.dimension
    # ranks[k] = rank of the map out of faces with k vertices (degree k - 1)
    ranks = [0] * (max_degree + 4)
    for k in range(1, min(max_degree + 2, top + 1) + 1):
        ranks[k] = exact_rank(boundary_rows(K, k))
    values = []
    for deg in range(-1, max_degree + 1):
        k = deg + 1
        f = len(K._face_masks(k)) if deg <= top else 0
        values.append(f - ranks[k] - ranks[k + 1])
    return BettiVector(tuple(values), start=-1)


def betti(K: SimplicialComplex) -> BettiVector:
    """Unreduced rational Betti numbers b_0 .. b_dim."""
    red = reduced_betti(K)
    vals = [red[d] for d in range(0, max(K.dimension, 0) + 1)]
    if K.vertices:
        vals[0] += 1
    return BettiVector(tuple(vals), start=0)


def simplex_boundary(vertices: Sequence[int]) -> SimplicialComplex:
    vs = tuple(vertices)
    return SimplicialComplex([vs[:i] + vs[i + 1:] for i in range(len(vs))])


def cross_polytope_boundary(n: int) -> SimplicialComplex:
    """Boundary of the n-dimensional cross-polytope on vertices 1..2n; i and n+i antipodal."""
    from itertools import product

    return SimplicialComplex(product(*[(i, n + i) for i in range(1, n + 1)]))
