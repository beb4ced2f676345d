"""
Characteristic functions on simple polytopes and Betti numbers of the
corresponding small covers.

Rational Betti numbers come from summing reduced Betti numbers of induced
subcomplexes of the dual complex over all row subsets of the characteristic
matrix; mod-2 Betti numbers are the h-vector of the polytope.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from .gf2 import BitMatrix, BitVector, MatrixParseError, packed_rank
from .polytope import (
    InvalidDimensionError,
    SimplePolytope,
    cube,
    dual_complex,
    h_vector,
    polygon_prism,
)
from .simplicial import BettiVector, SimplicialComplex, induced_subcomplex, reduced_betti


class DimensionMismatchError(ValueError):
    pass


class InvalidCharacteristicError(ValueError):
    pass


@dataclass(frozen=True)
class CharacteristicFunction:
    """Column j of ``matrix`` is the vector assigned to facet F_j."""

    polytope: SimplePolytope
    matrix: BitMatrix

    def __post_init__(self):
        P, M = self.polytope, self.matrix
        if M.nrows != P.dim or M.ncols != P.num_facets:
            raise DimensionMismatchError(
                f"matrix is {M.nrows}x{M.ncols}, polytope needs {P.dim}x{P.num_facets}"
            )

    @property
    def n(self) -> int:
        return self.polytope.dim


@dataclass(frozen=True)
class ValidationResult:
    valid: bool
    failing_vertices: tuple[tuple[int, ...], ...] = ()

    def __bool__(self):
        return self.valid


@dataclass(frozen=True)
class SupportProfile:
    T: frozenset[int]
    chi_T: BitVector
    support: frozenset[int]


def validate(chi: CharacteristicFunction) -> ValidationResult:
    """Check that the facet vectors at every vertex form a basis."""
    cols = [c.bits for c in chi.matrix.columns()]
    n = chi.n
    bad = tuple(
        tuple(sorted(v))
        for v in chi.polytope.vertices
        if packed_rank(cols[j - 1] for j in v) != n
    )
    return ValidationResult(not bad, bad)


# built-in families ---------------------------------------------------------


def _unit(n: int, i: int) -> int:
    return 1 << (i - 1)


def _from_columns(n: int, cols: list[int]) -> BitMatrix:
    return BitMatrix.from_columns([BitVector(n, c) for c in cols])


def chi_kn(n: int) -> CharacteristicFunction:
    """The n-dimensional Klein bottle over the n-cube.

    F_i -> e_i for all i, F_(n+1) -> e_1 + ... + e_n, F_(n+i) -> e_i for i >= 2.
    """
    if n < 1:
        raise InvalidDimensionError("n must be at least 1")
    ones = (1 << n) - 1
    cols = [_unit(n, i) for i in range(1, n + 1)] + [ones] + [_unit(n, i) for i in range(2, n + 1)]
    return CharacteristicFunction(cube(n), _from_columns(n, cols))


def chi_p5(n: int) -> CharacteristicFunction:
    """Over P_5 x I^(n-2): F_i and F_(n+i) -> e_i, F_(2n+1) -> e_1 + ... + e_n."""
    if n < 2:
        raise InvalidDimensionError("n must be at least 2")
    units = [_unit(n, i) for i in range(1, n + 1)]
    cols = units + units + [(1 << n) - 1]
    return CharacteristicFunction(polygon_prism(5, n), _from_columns(n, cols))


def chi_p6(n: int) -> CharacteristicFunction:
    """Over P_6 x I^(n-2): F_i and F_(n+1+i) -> e_i, F_(n+1) and F_(2n+2) -> all-ones."""
    if n < 2:
        raise InvalidDimensionError("n must be at least 2")
    units = [_unit(n, i) for i in range(1, n + 1)]
    ones = (1 << n) - 1
    cols = units + [ones] + units + [ones]
    return CharacteristicFunction(polygon_prism(6, n), _from_columns(n, cols))


BUILTINS = {"kn": chi_kn, "p5": chi_p5, "p6": chi_p6}


# supports and the subset sweep ----------------------------------------------


def support_profile(chi: CharacteristicFunction, T) -> SupportProfile:
    T = frozenset(T)
    n = chi.n
    if not T <= set(range(1, n + 1)):
        raise IndexError(f"T must be a subset of 1..{n}")
    acc = 0
    for i in T:
        acc ^= chi.matrix.rows[i - 1]
    v = BitVector(chi.matrix.ncols, acc)
    return SupportProfile(T, v, v.support())


def _row_sums(chi: CharacteristicFunction) -> list[int]:
    """Packed chi_T for every T, indexed by the bitmask of T (Gray-code fill)."""
    rows = chi.matrix.rows
    sums = [0] * (1 << chi.n)
    for mask in range(1, 1 << chi.n):
        low = (mask & -mask).bit_length() - 1
        sums[mask] = sums[mask & (mask - 1)] ^ rows[low]
    return sums


def _homology_of_support(args) -> tuple[int, tuple[int, ...]]:
    K, support_bits, ncols, top = args
    W = [j + 1 for j in range(ncols) if (support_bits >> j) & 1]
    sub = induced_subcomplex(K, W)
    return support_bits, reduced_betti(sub, top).values


def induced_homology(chi: CharacteristicFunction, T) -> BettiVector:
    """Reduced Betti numbers (degrees -1 .. n-1) of the induced subcomplex on supp(chi_T)."""
    prof = support_profile(chi, T)
    K = dual_complex(chi.polytope).complex
    return reduced_betti(induced_subcomplex(K, prof.support), chi.n - 1)


def suciu_trevisan_betti(chi: CharacteristicFunction, parallel: int = 1) -> BettiVector:
    """Rational Betti numbers b_0 .. b_n of the small cover over (P, chi).

    b_i is the sum over all row subsets T of the reduced (i-1)-st Betti
    number of the dual complex restricted to supp(chi_T).  T = {} gives the
    empty complex, whose degree -1 class makes b_0 = 1.  Homology is cached
    per distinct support; with ``parallel > 1`` the distinct supports are
    farmed out to worker processes.  The result does not depend on the
    order of evaluation.
    """
    check = validate(chi)
    if not check:
        raise InvalidCharacteristicError(
            f"not a characteristic function; fails at {len(check.failing_vertices)} vertices"
        )
    n = chi.n
    K = dual_complex(chi.polytope).complex
    sums = _row_sums(chi)
    multiplicity: dict[int, int] = {}
    for s in sums:
        multiplicity[s] = multiplicity.get(s, 0) + 1
    jobs = [(K, s, chi.matrix.ncols, n - 1) for s in sorted(multiplicity)]
    if parallel > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=parallel) as pool:
            results = dict(pool.map(_homology_of_support, jobs, chunksize=max(1, len(jobs) // (4 * parallel))))
    else:
        results = dict(map(_homology_of_support, jobs))
    betti = [0] * (n + 1)
    for s, count in multiplicity.items():
        red = results[s]
        # red[k] is the reduced Betti number in degree k - 1, contributing to b_k
        for k in range(n + 1):
            betti[k] += count * red[k]
    return BettiVector(tuple(betti), start=0)


def dj_mod2_betti(P: SimplePolytope) -> BettiVector:
    """Mod-2 Betti numbers shared by every small cover over ``P``: its h-vector."""
    return BettiVector(tuple(h_vector(dual_complex(P))), start=0)


# file format -----------------------------------------------------------------


def polytope_from_header(header: str, base: Path | None = None) -> SimplePolytope:
    tokens = header.split()
    if tokens and tokens[0] == "cube" and len(tokens) == 2 and tokens[1].isdigit():
        return cube(int(tokens[1]))
    if tokens and tokens[0] == "pgon" and len(tokens) == 3 and all(t.isdigit() for t in tokens[1:]):
        return polygon_prism(int(tokens[1]), int(tokens[2]))
    path = Path(header.strip())
    if base is not None and not path.is_absolute():
        path = base / path
    if not path.exists():
        raise MatrixParseError(f"unrecognised polytope header {header.strip()!r}", 1)
    return SimplePolytope.from_json(path.read_text())


def read_charfn(text: str, base: Path | None = None) -> CharacteristicFunction:
    """First line names the polytope ('cube n', 'pgon m n' or a JSON path); the rest is a matrix."""
    lines = text.splitlines()
    if not lines:
        raise MatrixParseError("empty input", 1)
    P = polytope_from_header(lines[0], base)
    M = BitMatrix.from_text("\n".join(lines[1:]), first_line=2)
    return CharacteristicFunction(P, M)


def write_charfn(chi: CharacteristicFunction, header: str) -> str:
    return header.strip() + "\n" + chi.matrix.to_text()
