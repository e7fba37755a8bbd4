"""Quantum 6j-symbols, Turaev shadow state sums, and Turaev-Viro growth
rates for links glued from one- and two-crossing shadow pieces in
trivial circle bundles over surfaces."""

__version__ = "0.1.0"

from .errors import (
    AdmissibilityError,
    CancellationWarning,
    ConsistencyError,
    DomainError,
    PhaseMixError,
    RangeError,
    SpecError,
    UndefinedGrowthError,
)
from .hyperbolic import V3, V8, additivity_target, lobachevsky
from .invariants import (
    GrowthRecord,
    GrowthSeries,
    diagonal_color,
    diagonal_growth_series,
    diagonal_statesum,
    rt,
    tv,
    tv_growth_series,
)
from .qarith import ONE, ZERO, QValue, RootContext, delta, qfact, qint, qmul, qprod, qsum, qvalue
from .shadow import (
    A_PIECE,
    S_PIECE,
    Crossing,
    Edge,
    GluingSpec,
    Region,
    ShadowGraph,
    auto_matching,
    build_shadow,
    component_state_values,
    coloring_admissible,
    crossing_tuple,
    enumerate_admissible,
    gleam_from_corners,
    state,
    state_sum,
)
from .sixj import (
    Tuple6,
    canonical_key,
    clear_cache,
    dihedral_angles,
    growth_rate,
    hypotheses_ab,
    sixj,
    summand_signs,
    symmetry_images,
    triple_admissible,
    tuple_admissible,
)

__all__ = [
    "__version__",
    "AdmissibilityError", "CancellationWarning", "ConsistencyError", "DomainError",
    "PhaseMixError", "RangeError", "SpecError", "UndefinedGrowthError",
    "V3", "V8", "additivity_target", "lobachevsky",
    "GrowthRecord", "GrowthSeries", "diagonal_color", "diagonal_growth_series",
    "diagonal_statesum", "rt", "tv", "tv_growth_series",
    "ONE", "ZERO", "QValue", "RootContext", "delta", "qfact", "qint", "qmul",
    "qprod", "qsum", "qvalue",
    "A_PIECE", "S_PIECE", "Crossing", "Edge", "GluingSpec", "Region", "ShadowGraph",
    "auto_matching", "build_shadow", "component_state_values", "coloring_admissible",
    "crossing_tuple", "enumerate_admissible", "gleam_from_corners", "state", "state_sum",
    "Tuple6", "canonical_key", "clear_cache", "dihedral_angles", "growth_rate",
    "hypotheses_ab", "sixj", "summand_signs", "symmetry_images",
    "triple_admissible", "tuple_admissible",
]
