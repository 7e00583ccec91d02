"""Numerical workbench for vector-valued Carleson embeddings on the
Bergman space of the unit disc.

The package is organized bottom-up: dyadic disc geometry, adaptive polar
quadrature, matrix measures and operator weights, the dyadic embedding
operator and its norm, the analytic embedding and Volterra conditions,
and a reproducible experiment runner with a small CLI on top.
"""

from .analytic import (
    EmbeddingProblem,
    GridReport,
    KernelFunction,
    OperatorPoly,
    VectorPoly,
    condition_constant,
    default_dictionary,
    default_lambda_grid,
    derivative,
    dictionary_sup,
    embedding_ratio,
    growth_exponent,
    necessity_lower_bound,
    seminorm2,
    weighted_norm2,
)
from .disc_geometry import (
    CarlesonSquare,
    DyadicIndex,
    HyperbolicDisc,
    TildeDisc,
    TopHalf,
    TopHalfPartition,
    WholeDisc,
    carleson_square_area,
    contains,
    dyadic_children,
    level_cells,
    locate_top_half,
    region_area,
    square_to_top_half_ratio,
    top_half_area,
    top_half_cover,
    top_half_partition,
)
from .dyadic import (
    CellFunction,
    DyadicNormResult,
    EquivalenceReport,
    SweepResult,
    apply_B,
    dimension_sweep,
    dyadic_norm,
    equivalence_report,
    norm_squared_mu,
)
from .errors import (
    DegenerateWeightError,
    NotPSDError,
    PowerIterationError,
    ScenarioError,
    ToleranceNotReached,
)
from .measures import (
    IntensityReport,
    MatrixMeasure,
    PartitionMasses,
    atom_measure,
    carleson_intensity,
    density_measure,
    identity_density_measure,
    lift_scalar_measure,
    measure_from_descriptor,
    measure_of,
    partition_masses,
    random_measure,
    random_unitary,
)
from .quadrature import (
    MatrixField,
    MeasureSpec,
    PLAIN,
    constant_field,
    identity_field,
    integrate,
    integrate_polar_rect,
    integrate_scalar,
    integrate_values,
    radial_integral,
    radial_power_field,
    radial_profile_field,
)
from .volterra import (
    ConsistencyReport,
    LogSymbol,
    apply_volterra,
    volterra_condition,
    volterra_consistency,
    volterra_integral_condition,
)
from .weights import (
    BlockWeight,
    DiagonalPowerWeight,
    IdentityWeight,
    ScalarPowerWeight,
    averaged_weight,
    b2_constant,
    default_h_grid,
    weight_from_descriptor,
)

__version__ = "0.1.0"

__all__ = [
    "BlockWeight",
    "CarlesonSquare",
    "CellFunction",
    "ConsistencyReport",
    "DegenerateWeightError",
    "DiagonalPowerWeight",
    "DyadicIndex",
    "DyadicNormResult",
    "EmbeddingProblem",
    "EquivalenceReport",
    "GridReport",
    "HyperbolicDisc",
    "IdentityWeight",
    "IntensityReport",
    "KernelFunction",
    "MatrixField",
    "MatrixMeasure",
    "MeasureSpec",
    "NotPSDError",
    "OperatorPoly",
    "PLAIN",
    "PartitionMasses",
    "PowerIterationError",
    "ScalarPowerWeight",
    "ScenarioError",
    "SweepResult",
    "TildeDisc",
    "ToleranceNotReached",
    "TopHalf",
    "TopHalfPartition",
    "VectorPoly",
    "WholeDisc",
    "apply_B",
    "apply_volterra",
    "atom_measure",
    "averaged_weight",
    "b2_constant",
    "carleson_intensity",
    "carleson_square_area",
    "condition_constant",
    "constant_field",
    "contains",
    "default_dictionary",
    "default_h_grid",
    "default_lambda_grid",
    "density_measure",
    "derivative",
    "dictionary_sup",
    "dimension_sweep",
    "dyadic_children",
    "dyadic_norm",
    "embedding_ratio",
    "equivalence_report",
    "growth_exponent",
    "identity_density_measure",
    "identity_field",
    "integrate",
    "integrate_polar_rect",
    "integrate_scalar",
    "integrate_values",
    "level_cells",
    "lift_scalar_measure",
    "locate_top_half",
    "measure_from_descriptor",
    "measure_of",
    "necessity_lower_bound",
    "norm_squared_mu",
    "partition_masses",
    "radial_integral",
    "radial_power_field",
    "radial_profile_field",
    "random_measure",
    "random_unitary",
    "region_area",
    "seminorm2",
    "square_to_top_half_ratio",
    "top_half_area",
    "top_half_cover",
    "top_half_partition",
    "volterra_condition",
    "volterra_consistency",
    "volterra_integral_condition",
    "weight_from_descriptor",
    "weighted_norm2",
]
