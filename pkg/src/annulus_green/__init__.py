"""Neumann Green function, regular part and Robin function of the annulus a < |x| < 1 in R^N."""

from ._backend import BACKEND
from .errors import (AccuracyWarning, BranchError, ConditioningWarning, DivergenceError,
                     DomainError, GeometryError, SingularityError)
from .green_kernel import (Annulus, coeff_A, coeff_B, coeff_C0, coefficient_table,
                           coeffs_via_cramer, green, green_batch, mean_over_y,
                           mean_over_y_adaptive, mean_over_y_schemes, normal_derivative_in_x,
                           normal_derivative_in_y, regular_part, renormalized_green, robin,
                           robin_radial, symmetry_defect)
from .harmonics import (gegenbauer, gegenbauer_all, gegenbauer_oracle, surface_area, zonal,
                        zonal_diagonal, zonal_explicit)
from .kernel_expansion import (EvalPoint, SeriesValue, Truncation, convergence_ratio,
                               fundamental_solution, newton_kernel_direct,
                               newton_kernel_series, radial_derivative_direct,
                               radial_derivative_series, truncation_bound)
from .quadrature import QuadratureSpec, annulus_integral
from .tolerances import Tolerances
from .verification import (CheckResult, VerificationReport, boundary_scan, fd_laplacian,
                           flux_probe, run_full_verification)

__version__ = "0.1.0"
