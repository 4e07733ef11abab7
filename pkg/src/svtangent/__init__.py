"""Exact toric models of tangential varieties of Segre-Veronese varieties.

Builds the affine semigroup model attached to parameters (k, a, b), decides
smoothness, normality, Cohen-Macaulayness and Gorensteinness by exact
lattice-point computations, and compares the verdicts against the
closed-form classification table.
"""

from .classify import (
    ClassificationReport,
    ExpectedVerdicts,
    SweepSummary,
    classify,
    expected_verdicts,
    normalized_grid,
    sweep,
)
from .hoatrung import (
    CMVerdict,
    GorensteinResult,
    SFMembershipResult,
    build_pi_j,
    build_profiles,
    cm_verdict,
    gj_empty,
    gorenstein_witness,
    s_prime_equals_s,
    sf_member,
)
from .lattice import (
    Sublattice,
    hermite_normal_form,
    integer_kernel,
    smith_normal_form,
)
from .membership import (
    HoleSet,
    SemigroupMembership,
    Window,
    default_bound,
    default_window,
    find_holes,
    is_normal,
    is_smooth,
)
from .model import (
    AffineSemigroup,
    FacetId,
    OracleUnavailable,
    SVParams,
    build_semigroup,
    enumerate_generators,
    extreme_rays,
    facet_list,
    facet_oracle,
)
from .simplicial import AbstractComplex, LabeledComplex
from .toricideal import (
    BinomialRelation,
    enumerate_binomials,
    format_relation,
    parse_complex_file,
    parse_relation,
    relation_lattice,
    verify_relation,
)

__all__ = [
    "AbstractComplex",
    "AffineSemigroup",
    "BinomialRelation",
    "CMVerdict",
    "ClassificationReport",
    "ExpectedVerdicts",
    "FacetId",
    "GorensteinResult",
    "HoleSet",
    "LabeledComplex",
    "OracleUnavailable",
    "SFMembershipResult",
    "SVParams",
    "SemigroupMembership",
    "Sublattice",
    "SweepSummary",
    "Window",
    "build_pi_j",
    "build_profiles",
    "build_semigroup",
    "classify",
    "cm_verdict",
    "default_bound",
    "default_window",
    "enumerate_binomials",
    "enumerate_generators",
    "expected_verdicts",
    "extreme_rays",
    "facet_list",
    "facet_oracle",
    "find_holes",
    "format_relation",
    "gj_empty",
    "gorenstein_witness",
    "hermite_normal_form",
    "integer_kernel",
    "is_normal",
    "is_smooth",
    "normalized_grid",
    "parse_complex_file",
    "parse_relation",
    "relation_lattice",
    "s_prime_equals_s",
    "sf_member",
    "smith_normal_form",
    "sweep",
    "verify_relation",
]
