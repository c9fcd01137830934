"""Executable weak convergence for metric spaces.

Sequences are tested against families of metric functionals: the
distance-difference functionals a space induces, their pointwise limits with
explicit formulas (directional, signed-linear, ball families), and exact
finite-space inventories. Testers return verdicts with margins and
replayable certificates; oracles ground the sampled testers wherever exact
computation is possible.
"""

from .convergence import (
    ConvexityReport,
    DiscreteClassification,
    DistanceBoundReport,
    DweakTester,
    GlidingHumpCertificate,
    LambdaEstimate,
    LiminfEstimate,
    RegionDescriptor,
    UniformConvexityReport,
    Verdict,
    ball_closedness_probe,
    check_lambda_convex_closed,
    closed_form_region,
    discrete_classify,
    gliding_hump,
    lambda_set,
    liminf_distance_bound,
    liminf_estimate,
    linear_combination_check,
    membership_radius,
    test_delta,
    test_dweak,
    test_strong,
    uniform_convex_strong_check,
)
from .errors import (
    DweakError,
    EmptyInputError,
    EqualPointsError,
    ExecutionError,
    InvalidSpaceError,
    MembershipError,
    NotEventuallyPeriodicError,
    NotNormedSpaceError,
    NotUnitVectorError,
    PreconditionFailedError,
    ScenarioParseError,
    StabilizationError,
    UnsupportedSpaceError,
    ZeroScaleError,
)
from .functionals import (
    BusemannClosedLp,
    BusemannEstimate,
    BusemannNumeric,
    FunctionalFamily,
    FunctionalPropertyReport,
    HilbertBall,
    Internal,
    L1Linear,
    MetricFunctional,
    PointEvaluation,
    Rebased,
    ShiftScaleView,
    ZeroFunctional,
    busemann_closed_lp,
    busemann_numeric,
    check_properties,
    default_family,
    norm_via_busemann,
    rebase,
    separating_busemann,
    shift_scale,
)
from .oracle import (
    CompactificationTable,
    CrossValidationReport,
    DiagonalExtraction,
    EscapeLimitTable,
    brute_force_dweak,
    busemann_cross_validate,
    diagonal_subsequence,
    dyadic_indices,
    finite_compactification,
    random_finite_metric,
    random_periodic_sequence,
    snowflake_limit_check,
)
from .points import Atom, PLFunction, Point, ScalarPoint, SparseVector, sparse, unit
from .sequences import (
    Alternating,
    CoordinateBlowup,
    EventuallyPeriodic,
    ExplicitList,
    FreshAtoms,
    RecurrentWithFresh,
    ScalarRamp,
    SeededRandomBounded,
    SequenceSpec,
    UserFormula,
    combine_linear,
)
from .spaces import (
    AxiomViolation,
    CountableSubsetOfL1,
    DiscreteSpace,
    FiniteMetricSpace,
    LpBall,
    LpSpace,
    SnowflakeLine,
    Space,
    SupNormSpace,
    ValidationReport,
    distance,
    hull,
    sample_points,
    validate_space,
    w_combine,
)

__version__ = "0.1.0"
