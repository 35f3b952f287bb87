"""Exact-arithmetic construction of minimal models as weighted
blow-ups of weighted hypersurfaces.

The package builds candidate varieties from integer weight data,
certifies that the extracted canonical class stays nef, resolves the
remaining strictly canonical points crepantly, and computes the
invariants of the result.  Everything runs over the rationals; no
floating point is involved anywhere.
"""

from .blowups import BlowUp, blow_up, volume_after_blowups
from .construct import (
    ConstructionError,
    MinimalModelReport,
    format_rational,
    noether_delta,
    run_construction,
)
from .crepant import Terminalization, terminalize
from .families import (
    FamilyInstance,
    FamilySpec,
    LiftedModel,
    OneWeightLift,
    VStarMember,
    add_one_weight,
    bound_nm1,
    bound_nm2,
    family_instance,
    lift_hypersurface,
    load_families,
    v_star_series,
    verify_family_member,
)
from .locus import (
    HypothesisViolated,
    SingularLocus,
    Stratum,
    singular_locus,
)
from .nef import (
    NefCertificate,
    check_nefness,
    check_nefness_two_points,
    plane_curve_irreducible,
)
from .quotients import (
    QuotientSingularity,
    SingularityClass,
    basket_pair,
    classify,
    format_basket,
    parse_basket,
    terminality_margin,
)
from .search import SearchRange, SearchSummary, iter_candidates, run_search
from .tables import (
    TABLE_IDS,
    TableVerification,
    load_expected,
    verify_all,
    verify_table,
)
from .weights import (
    WeightedHypersurface,
    count_monomials,
    enumerate_monomials,
    hyperplane_self_intersection,
    is_quasismooth,
    well_formed_hypersurface,
    well_formed_space,
    well_formize_plane,
)

__version__ = "1.0.0"

__all__ = [
    "BlowUp",
    "ConstructionError",
    "FamilyInstance",
    "FamilySpec",
    "HypothesisViolated",
    "LiftedModel",
    "MinimalModelReport",
    "NefCertificate",
    "OneWeightLift",
    "QuotientSingularity",
    "SearchRange",
    "SearchSummary",
    "SingularLocus",
    "SingularityClass",
    "Stratum",
    "TABLE_IDS",
    "TableVerification",
    "Terminalization",
    "VStarMember",
    "WeightedHypersurface",
    "add_one_weight",
    "basket_pair",
    "blow_up",
    "bound_nm1",
    "bound_nm2",
    "check_nefness",
    "check_nefness_two_points",
    "classify",
    "count_monomials",
    "enumerate_monomials",
    "family_instance",
    "format_basket",
    "format_rational",
    "hyperplane_self_intersection",
    "is_quasismooth",
    "iter_candidates",
    "lift_hypersurface",
    "load_expected",
    "load_families",
    "noether_delta",
    "parse_basket",
    "plane_curve_irreducible",
    "run_construction",
    "run_search",
    "singular_locus",
    "terminality_margin",
    "terminalize",
    "v_star_series",
    "verify_all",
    "verify_family_member",
    "verify_table",
    "well_formed_hypersurface",
    "well_formed_space",
    "well_formize_plane",
]
