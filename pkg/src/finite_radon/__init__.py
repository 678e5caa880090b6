"""Finite-dimensional phase space over the dual affine plane for odd prime d."""

from .geometry import (
    Geometry,
    Line,
    Point,
    incidence,
    lines_through_point,
    make_geometry,
    point_on_line,
    points_on_line,
    verify_dapg_axioms,
)
from .line_operators import (
    all_line_operators,
    lambda_trace,
    line_operator,
    point_from_lines,
    verify_operator_identities,
)
from .mub import mub_state, omega, point_operator, x_operator, z_operator
from .phase_space import (
    PointMarginals,
    QuasiDistribution,
    pair_expectation,
    quasi_distribution,
    radon_forward,
    radon_inverse,
    reconstruct_operator,
)
from .prime_field import DimensionError, PrimeDim, half, make_prime_dim
from .tomography import (
    MeasurementRecord,
    ReconstructionReport,
    estimate_marginals,
    reconstruct_state,
    simulate_measurements,
)

__version__ = "0.1.0"
