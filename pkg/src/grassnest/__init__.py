"""grassnest: exact arithmetic for nesting maps of finite Grassmannians.

Builds bijective nesting maps Gr(i, F^n) -> Gr(j, F^n) as perfect matchings
in the containment graph, provides the symplectic perp map as an explicit
witness, reproduces the truncated Chern-class calculus that obstructs such
maps for i >= 2, and classifies the Chern polynomials allowed on projective
space through exact Schwarzenberger integrality checks.  Everything is
integer or rational arithmetic; nothing is floating point.
"""

from .chern import (
    CertificateChain,
    FactorizationVerdict,
    TruncPoly,
    UniPolyQ,
    complete_homogeneous,
    elementary_symmetric,
    factorization_obstruction,
    quadratic_gram_determinant,
    quotient_total_chern,
    smoothness_certificate,
    tautological_total_chern,
    trunc_inverse,
    trunc_mul,
    verify_homogeneous_identities,
)
from .ffield import (
    BadModulusError,
    FiniteField,
    MatGF,
    NotPrimeError,
    RrefResult,
    field_make,
    invertible_matrices,
    rref,
)
from .grassmann import (
    AmbientMismatchError,
    GrassmannTable,
    NestingIncidence,
    Subspace,
    TooLargeError,
    contains,
    enumerate_subspaces,
    gaussian_binomial,
    incidence_graph,
    subspace_from_basis,
    table_lines,
)
from .nesting import (
    AlternatingForm,
    HallReport,
    LinearNestingVerdict,
    Matching,
    OddDimensionError,
    SingularMatrixError,
    find_bijective_nesting,
    hall_check,
    linear_nesting_classifier,
    maximum_bipartite_matching,
    perp,
    standard_alternating_form,
    symplectic_nesting_map,
    verify_matching_nesting,
)
from .schwarzenberger import (
    ChernCandidate,
    HypothesisViolatedError,
    NotSquarefreeError,
    PowerSums,
    SchwarzenbergerReport,
    SplitTable,
    binomial_root_sum,
    binomial_sum_zero_check,
    classify_chern_splits,
    cyclotomic_split,
    enumerate_cyclotomic_products,
    is_unit_circle,
    pascal_recurrence_check,
    power_sums,
    schwarzenberger_check,
    trace_form_identity,
)

__version__ = "0.1.0"
