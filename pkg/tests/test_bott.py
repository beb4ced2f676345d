import json
import random
from fractions import Fraction
from itertools import combinations
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from smallcover.bott import (
    BottMatrix,
    GroupElement,
    NotBottError,
    NotUpperTriangularError,
    TorusPoint,
    act_closed_form,
    betti_from_circuits,
    char_fn_from_bott,
    circuits,
    closed_betti,
    cohomologically_symplectic,
    disjoint_circuit_families,
    freeness_probe,
    group_action,
    involution,
    is_bott_matrix,
    ishida_betti,
    kn_betti_closed,
    kn_bott_matrix,
    orientable,
    p5_betti_closed,
    p6_betti_closed,
    ring_presentation,
    upper_triangular_form,
)
from smallcover.charfn import chi_kn, validate
from smallcover.gf2 import BitMatrix, BitVector, NonSquareError, rank

from oracles import circuits_by_enumeration, span_rank_mod2, zero_sum_counts


def upper(n, bits):
    pos = [(i, j) for i in range(n) for j in range(i + 1, n)]
    rows = [0] * n
    for k, (i, j) in enumerate(pos):
        if (bits >> k) & 1:
            rows[i] |= 1 << j
    return BitMatrix(n, n, tuple(rows))


def all_upper(n):
    for bits in range(1 << (n * (n - 1) // 2)):
        yield upper(n, bits)


def conjugated(M, perm):
    """P M P^T for the permutation perm (0-based list)."""
    rows = M.to_lists()
    n = len(rows)
    return BitMatrix.from_rows([[rows[perm[s]][perm[t]] for t in range(n)] for s in range(n)])


@st.composite
def bott_matrices(draw, max_n=7):
    n = draw(st.integers(1, max_n))
    M = upper(n, draw(st.integers(0, (1 << (n * (n - 1) // 2)) - 1)))
    perm = draw(st.permutations(range(n)))
    return BottMatrix(conjugated(M, perm))


angles = st.fractions(min_value=0, max_value=1, max_denominator=60)


def point(n, rng):
    return TorusPoint(Fraction(rng.randrange(q), q) for q in (rng.randrange(1, 40) for _ in range(n)))


# validity ---------------------------------------------------------------------


def test_bott_check_examples():
    z = is_bott_matrix(BitMatrix.zeros(3, 3))
    assert z and z.order == (1, 2, 3)
    bad = is_bott_matrix(BitMatrix.from_rows([[0, 1], [1, 0]]))
    assert not bad and sorted(bad.cycle) == [1, 2]
    for n in range(1, 8):
        assert is_bott_matrix(kn_bott_matrix(n).matrix).order == tuple(range(1, n + 1))
    with pytest.raises(NonSquareError):
        is_bott_matrix(BitMatrix.zeros(2, 3))
    with pytest.raises(NotBottError):
        BottMatrix(BitMatrix.identity(2))


def test_kn_matrix_shape():
    assert kn_bott_matrix(2).matrix.to_lists() == [[0, 1], [0, 0]]
    assert kn_bott_matrix(1).matrix.to_lists() == [[0]]
    assert [sum(r) for r in kn_bott_matrix(4).matrix.to_lists()] == [3, 0, 0, 0]


def test_cycle_witness_is_a_cycle():
    M = BitMatrix.from_rows([[0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [0, 1, 0, 0]])
    res = is_bott_matrix(M)
    assert not res
    c = res.cycle
    for a, b in zip(c, c[1:] + c[:1]):
        assert M.entry(a, b) == 1


@settings(max_examples=80, deadline=None)
@given(bott_matrices())
def test_topological_order_triangularises(A):
    order = is_bott_matrix(A.matrix).order
    assert sorted(order) == list(range(1, A.n + 1))
    assert BottMatrix(A.matrix.permute(order)).is_strictly_upper()
    U, used = upper_triangular_form(A)
    assert used == order and U.is_strictly_upper()


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 6), st.data())
def test_random_matrices_bott_iff_acyclic(n, data):
    rows = [data.draw(st.integers(0, (1 << n) - 1)) for _ in range(n)]
    M = BitMatrix(n, n, tuple(rows))
    res = is_bott_matrix(M)
    # brute force: some permutation conjugates to strictly upper triangular
    from itertools import permutations

    brute = any(
        all(M.entry(p[s] + 1, p[t] + 1) == 0 for s in range(n) for t in range(s + 1))
        for p in permutations(range(n))
    )
    assert bool(res) == brute


# involutions --------------------------------------------------------------------


def test_involution_examples():
    K2, K3 = kn_bott_matrix(2), kn_bott_matrix(3)
    assert involution(K2, 1, TorusPoint([0, Fraction(1, 4)])).coords == (Fraction(1, 2), Fraction(3, 4))
    th = TorusPoint([Fraction(1, 7), Fraction(2, 7), Fraction(5, 7)])
    assert involution(K3, 2, th).coords == (Fraction(1, 7), Fraction(11, 14), Fraction(5, 7))
    with pytest.raises(IndexError):
        involution(K2, 3, TorusPoint([0, 0]))


def test_group_action_examples():
    K2 = kn_bott_matrix(2)
    p = TorusPoint([0, Fraction(1, 4)])
    assert group_action(K2, GroupElement.from_list([0, 0]), p) == p
    assert group_action(K2, GroupElement.from_list([1, 0]), p) == involution(K2, 1, p)
    assert group_action(K2, GroupElement.from_list([1, 1]), p).coords == (Fraction(1, 2), Fraction(1, 4))


@settings(max_examples=60, deadline=None)
@given(bott_matrices(max_n=6), st.data())
def test_involutions_square_to_one_and_commute(A, data):
    p = TorusPoint(data.draw(st.lists(angles, min_size=A.n, max_size=A.n)))
    for i in range(1, A.n + 1):
        assert involution(A, i, involution(A, i, p)) == p
    for i, j in combinations(range(1, A.n + 1), 2):
        assert involution(A, i, involution(A, j, p)) == involution(A, j, involution(A, i, p))


@settings(max_examples=60, deadline=None)
@given(bott_matrices(max_n=6), st.data())
def test_closed_form_action(A, data):
    p = TorusPoint(data.draw(st.lists(angles, min_size=A.n, max_size=A.n)))
    g = GroupElement.from_list(data.draw(st.lists(st.integers(0, 1), min_size=A.n, max_size=A.n)))
    assert act_closed_form(A, g, p) == group_action(A, g, p)


def test_freeness_on_odd_denominators():
    rng = random.Random(5)
    for n in range(1, 6):
        for _ in range(5):
            A = BottMatrix(conjugated(upper(n, rng.getrandbits(n * (n - 1) // 2)), rng.sample(range(n), n)))
            pts = [
                TorusPoint(Fraction(rng.randrange(q), q) for q in (rng.choice([3, 5, 7, 9, 15]) for _ in range(n)))
                for _ in range(40)
            ]
            assert freeness_probe(A, pts) == []


def test_fixed_point_search_matches_brute_force():
    """The probe's shortcut agrees with trying every group element, including for
    cyclic digraphs where fixed points do occur."""
    rng = random.Random(11)
    special = [Fraction(0), Fraction(1, 2), Fraction(1, 4), Fraction(3, 4), Fraction(1, 3)]
    hits = 0
    for _ in range(1500):
        n = rng.randint(1, 5)
        rows = tuple(rng.getrandbits(n) & ~(1 << i) for i in range(n))
        A = object.__new__(BottMatrix)  # skip the acyclicity check on purpose
        object.__setattr__(A, "matrix", BitMatrix(n, n, rows))
        p = TorusPoint(rng.choice(special) for _ in range(n))
        brute = [e for e in range(1, 1 << n) if act_closed_form(A, GroupElement(BitVector(n, e)), p) == p]
        assert [g.exponents.bits for g, _ in freeness_probe(A, [p])] == brute
        hits += bool(brute)
    assert hits > 0


# Betti numbers ----------------------------------------------------------------------


def test_ishida_examples():
    assert ishida_betti(kn_bott_matrix(3)).values == (1, 1, 1, 1)
    assert ishida_betti(BitMatrix.zeros(3, 3)).values == (1, 3, 3, 1)
    assert ishida_betti(kn_bott_matrix(4)).values == (1, 1, 3, 3, 0)


def test_closed_form_examples():
    assert kn_betti_closed(5, 5) == 1
    assert p5_betti_closed(4, 2) == 5
    assert p6_betti_closed(2, 1) == 3
    assert closed_betti("p5", 4).values == (1, 2, 5, 4, 0)
    assert closed_betti("p6", 5).values == (1, 3, 12, 12, 3, 1)


@pytest.mark.parametrize("n", range(1, 13))
def test_kn_closed_form_matches_ishida(n):
    assert ishida_betti(kn_bott_matrix(n)) == closed_betti("kn", n)
    if n >= 2:
        assert sum(closed_betti("kn", n).values) == 2 ** (n - 1)
    assert (kn_betti_closed(n, n) == 1) == (n % 2 == 1)


@pytest.mark.parametrize("n", range(2, 12))
def test_prism_poincare_sums(n):
    assert sum(closed_betti("p5", n).values) == 3 * 2 ** (n - 2)
    assert sum(closed_betti("p6", n).values) == 4 * 2 ** (n - 2)


@settings(max_examples=80, deadline=None)
@given(bott_matrices(max_n=7))
def test_ishida_matches_subset_oracle(A):
    cols = [c.to_list() for c in A.matrix.columns()]
    assert list(ishida_betti(A).values) == zero_sum_counts(cols, A.n)


@settings(max_examples=80, deadline=None)
@given(bott_matrices(max_n=8))
def test_total_betti_is_nullspace_size(A):
    assert sum(ishida_betti(A).values) == 2 ** (A.n - rank(A.matrix))
    assert rank(A.matrix) == span_rank_mod2(A.matrix.to_lists())


@pytest.mark.parametrize("n", range(1, 7))
def test_circuit_betti_exhaustive(n):
    for M in all_upper(n):
        A = BottMatrix(M)
        assert betti_from_circuits(A) == ishida_betti(A)


@settings(max_examples=60, deadline=None)
@given(bott_matrices(max_n=9))
def test_circuit_betti_random(A):
    assert betti_from_circuits(A) == ishida_betti(A)


def test_literal_family_count_overcounts_at_k5():
    K4, K5 = kn_bott_matrix(4), kn_bott_matrix(5)
    assert disjoint_circuit_families(K4) == ishida_betti(K4)
    assert disjoint_circuit_families(K5).values == (1, 1, 6, 6, 3, 3)
    assert ishida_betti(K5).values == (1, 1, 6, 6, 1, 1)
    assert betti_from_circuits(K5) == closed_betti("kn", 5)


# properties of the manifold -----------------------------------------------------------


@pytest.mark.parametrize("n", range(1, 13))
def test_kn_orientability_and_symplectic(n):
    assert orientable(kn_bott_matrix(n)) == (n % 2 == 1)
    assert not cohomologically_symplectic(kn_bott_matrix(n))


def test_zero_matrix_properties():
    for n in range(1, 6):
        Z = BitMatrix.zeros(n, n)
        assert orientable(Z)
        assert cohomologically_symplectic(Z) == (n % 2 == 0)


# characteristic function ------------------------------------------------------------


@pytest.mark.parametrize("n", range(1, 9))
def test_char_fn_of_kn(n):
    chi = char_fn_from_bott(kn_bott_matrix(n))
    assert validate(chi)
    assert chi == chi_kn(n)


def test_char_fn_examples():
    I = BitMatrix.identity(3)
    assert char_fn_from_bott(BitMatrix.zeros(3, 3)).matrix == I.hstack(I)
    M = BitMatrix.from_rows([[0, 0, 0], [0, 0, 1], [0, 0, 0]])
    chi = char_fn_from_bott(M)
    assert chi.matrix.column(5).to_list() == [0, 1, 1]
    with pytest.raises(NotUpperTriangularError):
        char_fn_from_bott(BitMatrix.from_rows([[0, 0], [1, 0]]))


@settings(max_examples=60, deadline=None)
@given(bott_matrices(max_n=7))
def test_char_fn_always_valid(A):
    U, _ = upper_triangular_form(A)
    assert validate(char_fn_from_bott(U))


# circuits and the ring ------------------------------------------------------------------


@pytest.mark.parametrize("n", range(2, 9))
def test_kn_circuits(n):
    expected = [(1,)] + list(combinations(range(2, n + 1), 2))
    assert circuits(kn_bott_matrix(n)) == expected


@settings(max_examples=50, deadline=None)
@given(bott_matrices(max_n=6))
def test_circuits_match_enumeration(A):
    cols = [c.to_list() for c in A.matrix.columns()]
    assert circuits(A) == circuits_by_enumeration(cols)


def test_ring_presentation_kn4():
    R = ring_presentation(kn_bott_matrix(4))
    assert [d for _, d in R.generators] == [1, 2, 2, 2]
    data = json.loads(R.to_json())
    assert data["generators"][0] == {"circuit": [1], "degree": 1}
    kinds = [r["type"] for r in data["relations"]]
    assert kinds.count("square_zero") == 4
    # {1} is disjoint from every pair; the three pairs in {2,3,4} pairwise overlap
    assert kinds.count("commute") == 3 and kinds.count("product_zero") == 3
    for r in data["relations"]:
        if r["type"] == "commute":
            assert r["sign"] == (-1) ** (len(r["left"]) * len(r["right"]))
    assert R.to_json() == ring_presentation(kn_bott_matrix(4)).to_json()
    assert "x_{1}^2 = 0" in R.to_text()


def test_ring_presentation_torus():
    R = ring_presentation(BitMatrix.zeros(3, 3))
    assert R.generators == (((1,), 1), ((2,), 1), ((3,), 1))
    signs = [r["sign"] for r in R.relations if r["type"] == "commute"]
    assert signs == [-1, -1, -1]
