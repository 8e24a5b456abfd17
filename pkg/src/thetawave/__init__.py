"""Three-phase quasi-periodic wave fields from a genus-3 spectral curve.

Pipeline: curve parameters -> cycle integrals on the elliptic quotient
curves -> period matrices and wave vectors -> reduced theta evaluation ->
squared amplitudes of the focusing-NLS / KP-I / Hirota-type fields, with
independent finite-difference and lattice-periodicity verification.
"""

from .curve import BranchData, CurveParams, branch_points, chi_coeffs, validate_params
from .periods import (
    EllipticPeriods,
    PeriodMatrices,
    ReductionConstants,
    WaveData,
    elliptic_periods,
    period_matrices,
    reduction_constants,
    uvw_and_lattice,
    wave_data,
)
from .quadrature import (
    DifferentialId,
    PathSpec,
    abelian_to_infinity,
    cycle_integral,
    integrate_segment,
)
from .solution import (
    FieldGrid,
    FieldRequest,
    GridSpec,
    SolutionBundle,
    build_solution,
    delta_offsets,
    eval_field,
    fit_amplitude_scale,
    grid_eval,
)
from .theta import jacobi_theta, reduce_args, reduced_f, riemann_theta
from .verify import (
    ResidualReport,
    convergence_order,
    envelope_drift,
    kpi_residual,
    periodicity_check,
)

__version__ = "0.1.0"

__all__ = [
    "BranchData", "CurveParams", "branch_points", "chi_coeffs", "validate_params",
    "EllipticPeriods", "PeriodMatrices", "ReductionConstants", "WaveData",
    "elliptic_periods", "period_matrices", "reduction_constants",
    "uvw_and_lattice", "wave_data",
    "DifferentialId", "PathSpec", "abelian_to_infinity", "cycle_integral",
    "integrate_segment",
    "FieldGrid", "FieldRequest", "GridSpec", "SolutionBundle", "build_solution",
    "delta_offsets", "eval_field", "fit_amplitude_scale", "grid_eval",
    "jacobi_theta", "reduce_args", "reduced_f", "riemann_theta",
    "ResidualReport", "convergence_order", "envelope_drift", "kpi_residual",
    "periodicity_check",
    "__version__",
]
