"""Small covers, real Bott manifolds and planar polygon spaces, computed exactly."""

from .bott import (
    BottMatrix,
    GroupElement,
    TorusPoint,
    betti_from_circuits,
    char_fn_from_bott,
    circuits,
    closed_betti,
    cohomologically_symplectic,
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
)
from .charfn import (
    CharacteristicFunction,
    chi_kn,
    chi_p5,
    chi_p6,
    dj_mod2_betti,
    induced_homology,
    suciu_trevisan_betti,
    support_profile,
    validate,
)
from .gf2 import BitMatrix, BitVector, column_sum, is_invertible, minimal_dependent_sets, rank
from .polygon import (
    Family,
    GeneticCode,
    LengthVector,
    genetic_code,
    hausmann_leq,
    is_generic,
    is_short,
    recognize_family,
)
from .polytope import SimplePolytope, cube, dual_complex, f_vector, h_vector, polygon_prism
from .simplicial import BettiVector, SimplicialComplex, induced_subcomplex, reduced_betti

__version__ = "0.1.0"
