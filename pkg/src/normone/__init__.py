"""Exact arithmetic toolkit for G-lattices and norm one torus rationality.

Everything is integer-exact: Smith/Hermite normal forms drive kernels,
cokernels and Tate cohomology; flasque resolutions are constructed and
re-verified; rationality verdicts come with machine-checked traces.
"""

from .classify import (
    NOT_P_RETRACT_RATIONAL,
    NOT_RETRACT_RATIONAL,
    P_RETRACT_RATIONAL,
    RETRACT_RATIONAL,
    RationalityVerdict,
    classify_general,
    classify_norm_one_family,
    closed_form_family,
    retract_summary,
)
from .cohomology import (
    TateGroup,
    coflasque_report,
    flasque_report,
    is_coflasque,
    is_flasque,
    tate_cohomology,
)
from .errors import (
    ComputationTooLargeError,
    DegenerateCaseError,
    GroupTooLargeError,
    NormOneError,
    UnsupportedCaseError,
    VerificationError,
)
from .intmat import (
    IntMatrix,
    SmithForm,
    cokernel_invariants,
    hermite_normal_form,
    inverse_unimodular,
    kernel_basis,
    kernel_backend,
    smith_normal_form,
    solvable_at_p,
    solve_exact,
)
from .invert import (
    Certificate,
    Decision,
    NOT_PINVERTIBLE,
    PINVERTIBLE,
    UNKNOWN,
    build_certificate,
    decide_p_invertibility,
    p_group_shape_verdict,
    reduce_to_sylow,
    verify_splitting_prime_to_p,
)
from .lattice import (
    AugmentationSequence,
    GLattice,
    direct_sum,
    dual,
    free_restriction_decomposition,
    lattice_from_json,
    lattice_to_json,
    norm_one_lattice,
    orbit_decomposition,
    permutation_lattice,
    regular_lattice,
    restrict,
    trivial_lattice,
)
from .perms import (
    FiniteGroup,
    Permutation,
    Subgroup,
    make_alternating,
    make_symmetric,
    point_stabilizer,
    sylow_subgroup,
    witness_p_subgroup,
)
from .resolution import (
    CoflasqueCover,
    FlasqueResolution,
    coflasque_cover,
    flasque_resolution,
    rho,
)

__version__ = "0.1.0"
