"""tropsev: exact combinatorics of tropical Severi varieties.

Regular subdivisions from weight vectors, dual tropical curves, the
boundary-binomial group matrix with its Smith normal form, tropical Severi
weights, Mikhalkin multiplicities, stable intersections, and Severi degrees
by enumeration of tropical curves through generic points.
"""

from .errors import (
    ConfigDegenerate,
    DegenerateSegment,
    DeltaTooLarge,
    InternalInvariantError,
    NonRegular,
    NotComplementary,
    NotMaxRank,
    NotNodal,
    NotParallelogram,
    NotSimpleNodal,
    PreconditionError,
    SchemaError,
    SupportMismatch,
    TropsevError,
    ZeroScalar,
)
from .lattice import (
    LatticePolygon,
    Segment,
    SmithNormalForm,
    is_parallelogram,
    lattice_length,
    rational_lp_feasible,
    smith_normal_form,
    twice_area,
)
from .subdivision import (
    ConcaveHullResult,
    OrientedAdjacencyGraph,
    Subdivision,
    SubdivisionFlags,
    WeightFunction,
    classify,
    concave_hull,
    is_regular,
    orient_adjacency,
    rank,
    rank_nodal_formula,
)
from .initial_forms import (
    ComplexPoly,
    LaurentPoly,
    PuiseuxScalar,
    QQi,
    face_polynomials,
    initial_form,
    valuation,
)
from .dual_curve import (
    TropicalCurve,
    check_balancing,
    dualize,
    passes_through,
)
from .torus_group import (
    GroupPresentation,
    SpecialPointSet,
    build_matrix,
    is_in_V_boundary,
    special_points,
)
from .severi import (
    CVectorReport,
    SeveriSpec,
    SupportClass,
    edge_equivalence_classes,
    mikhalkin_multiplicity,
    severi_dimension,
    severi_weight,
    support_test,
)
from .intersection import (
    IntersectionPoint,
    RationalLinearSpace,
    lattice_index,
    mixed_volume,
    stable_intersect,
)
from .enumeration import (
    CountedSolution,
    PointConfiguration,
    SeveriDegreeReport,
    Strategy,
    count_through_points,
    hyperplane_trop_contains,
    independence_check,
    stretched_config,
)

__version__ = "0.1.0"
