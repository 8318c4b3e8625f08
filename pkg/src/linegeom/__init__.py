"""Line geometry of finite linear spaces.

Stars and coplanar sets of lines, and the collineation or correlation behind
every bijection of lines that preserves intersection in both directions.
"""

from .chow import (
    AutomorphismTally,
    CorrelationMap,
    LineMap,
    MapVerdict,
    PointMap,
    check_adjacency_preserving,
    classify_map,
    enumerate_automorphisms,
    find_collineation,
    induce_line_map,
    induce_line_map_from_correlation,
    map_maximal_set,
    reconstruct_collineation,
    reconstruct_correlation,
)
from .generators import (
    LabeledSpace,
    PrimeField,
    generate_ag,
    generate_complete,
    generate_near_pencil,
    generate_pg,
    standard_polarity,
)
from .incidence import (
    DualSpace,
    LinearSpace,
    Subspace,
    dimension,
    dual_space,
    is_exchange_space,
    is_generalized_projective_space,
    join,
    planes,
    span,
    subspace_dimension,
    validate,
    verbind_check,
)
from .pluecker import (
    Coplanar,
    MaximalRelatedSet,
    Other,
    Star,
    classify_maximal_set,
    extend_to_maximal,
    maximal_related_sets,
    related,
    star,
)

__version__ = "0.1.0"
