"""Lattice presentations of affine toric varieties and extension of maps into them."""

from .cones import (
    RationalCone,
    SemigroupPresentation,
    cone_from_generators,
    cone_from_inequalities,
    dual_cone,
    is_normal,
    saturate_semigroup,
)
from .divisor import (
    AbGroup,
    DivisorEnvironment,
    ExtensionDecision,
    ExtensionProblem,
    GroupHom,
    Verdict,
    build_extension_problem,
    class_membership,
    decide_extension,
    generate_counterexample,
    verify_decision,
)
from .errors import ToricError
from .hilbert import HilbertBasisMat, ObstructionWitness, fiber, hilbert_basis, minimal_obstruction, positive_kernel_vector
from .intlin import (
    IntMat,
    SNFDecomp,
    is_torsion_free_quotient,
    kernel_basis,
    right_inverse,
    smith_normal_form,
    solve_integer,
)
from .toric import (
    LatticePresentation,
    ToricProfile,
    binomials,
    classify,
    evaluate_monomial_map,
    is_locally_irreducible,
    presentation_from_monomials,
)

__version__ = "0.1.0"
