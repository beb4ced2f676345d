"""
Combinatorial simple polytopes: cubes and polygon prisms with fixed facet
numberings, their dual simplicial complexes, and f- and h-vectors.

A polytope is stored as its facet labels plus, for every vertex, the set of
(1-based) facet indices meeting there.  No coordinates are kept.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import product
from math import comb

from .simplicial import SimplicialComplex


class InvalidPolytopeError(ValueError):
    pass


class InvalidDimensionError(ValueError):
    pass


class NotPureError(ValueError):
    pass


@dataclass(frozen=True)
class SimplePolytope:
    dim: int
    facet_labels: tuple[str, ...]
    vertices: tuple[frozenset[int], ...]

    def __post_init__(self):
        n, m = self.dim, len(self.facet_labels)
        if n < 1:
            raise InvalidPolytopeError("dimension must be positive")
        if len(set(self.facet_labels)) != m:
            raise InvalidPolytopeError("facet labels must be distinct")
        if len(set(self.vertices)) != len(self.vertices):
            raise InvalidPolytopeError("repeated vertex")
        seen: set[int] = set()
        for v in self.vertices:
            if len(v) != n:
                raise InvalidPolytopeError(f"vertex {sorted(v)} meets {len(v)} facets, expected {n}")
            if not v <= set(range(1, m + 1)):
                raise InvalidPolytopeError(f"vertex {sorted(v)} names an unknown facet")
            seen |= v
        if len(seen) != m:
            raise InvalidPolytopeError(f"facets {sorted(set(range(1, m + 1)) - seen)} contain no vertex")

    @property
    def num_facets(self) -> int:
        return len(self.facet_labels)

    def to_json(self) -> str:
        return json.dumps(
            {
                "dim": self.dim,
                "facet_labels": list(self.facet_labels),
                "vertices": [sorted(v) for v in self.vertices],
            },
            sort_keys=True,
        )

    @classmethod
    def from_json(cls, text: str) -> "SimplePolytope":
        data = json.loads(text)
        return cls(
            int(data["dim"]),
            tuple(str(x) for x in data["facet_labels"]),
            tuple(frozenset(int(i) for i in v) for v in data["vertices"]),
        )


@dataclass(frozen=True)
class DualComplexView:
    polytope: SimplePolytope
    complex: SimplicialComplex


def cube(n: int) -> SimplePolytope:
    """[-1, 1]^n with facet i at x_i = -1 and facet n + i at x_i = +1."""
    if n < 1:
        raise InvalidDimensionError("n must be at least 1")
    labels = tuple(f"x{i}=-1" for i in range(1, n + 1)) + tuple(f"x{i}=+1" for i in range(1, n + 1))
    verts = tuple(frozenset(c) for c in product(*[(i, n + i) for i in range(1, n + 1)]))
    return SimplePolytope(n, labels, verts)


def _prism_layout(m: int, n: int) -> tuple[list[int], list[int], list[int]]:
    """Facet indices of (cube-minus, cube-plus, polygon edges E1..Em)."""
    k = n - 2
    minus = list(range(1, k + 1))
    if m == 6:
        # E1, E2, E3 follow the cube-minus block, the cube-plus block sits at
        # n+2 .. 2n-1, and E4, E5, E6 close the list
        plus = list(range(n + 2, n + 2 + k))
        edges = [n - 1, n, n + 1, 2 * n, 2 * n + 1, 2 * n + 2]
    else:
        plus = list(range(n + 1, n + 1 + k))
        edges = [n - 1, n] + list(range(2 * n - 1, 2 * n - 1 + m - 2))
    return minus, plus, edges


def polygon_prism(m: int, n: int) -> SimplePolytope:
    """P_m x I^(n-2) with the standard numbering of its m + 2(n-2) facets.

    For m = 5 the facets run: cube-minus F1..F(n-2), E1, E2, cube-plus
    F(n+1)..F(2n-2), E3, E4, E5.  For m = 6 they run: cube-minus, E1, E2, E3,
    cube-plus F(n+2)..F(2n-1), E4, E5, E6.  Other m follow the m = 5 pattern.
    """
    if n < 2:
        raise InvalidDimensionError("polygon prisms need n >= 2")
    if m < 3:
        raise InvalidDimensionError("a polygon needs at least 3 edges")
    minus, plus, edges = _prism_layout(m, n)
    total = m + 2 * (n - 2)
    labels = [""] * total
    for i, f in enumerate(minus, 1):
        labels[f - 1] = f"x{i}=-1"
    for i, f in enumerate(plus, 1):
        labels[f - 1] = f"x{i}=+1"
    for i, f in enumerate(edges, 1):
        labels[f - 1] = f"E{i}"
    corners = [(edges[i], edges[(i + 1) % m]) for i in range(m)]
    cube_part = list(product(*[(a, b) for a, b in zip(minus, plus)]))
    verts = tuple(frozenset(c + s) for c in corners for s in cube_part)
    return SimplePolytope(n, tuple(labels), verts)


def dual_complex(P: SimplePolytope) -> DualComplexView:
    return DualComplexView(P, SimplicialComplex(P.vertices))


def _complex_of(K) -> SimplicialComplex:
    return K.complex if isinstance(K, DualComplexView) else K


def f_vector(K) -> list[int]:
    """(f_{-1}, f_0, ..., f_{n-1}) of a pure complex or dual-complex view."""
    C = _complex_of(K)
    if not C.is_pure():
        raise NotPureError("maximal faces have different sizes")
    return C.f_vector()


def h_vector(K) -> list[int]:
    f = f_vector(K)
    d = len(f) - 1
    # sum_k h_k t^(d-k) = sum_i f_{i-1} (t-1)^(d-i)
    h = [0] * (d + 1)
    for i, fi in enumerate(f):
        for j in range(d - i + 1):
            # (t-1)^(d-i) contributes C(d-i, j) t^j (-1)^(d-i-j)
            h[d - j] += fi * comb(d - i, j) * (-1) ** (d - i - j)
    return h
