"""Every threshold used by the verification harness, in one auditable place."""

from dataclasses import asdict, dataclass


@dataclass(frozen=True)
class Tolerances:
    gegenbauer_rel: float = 1e-12
    gegenbauer_max_order: int = 60
    zonal_explicit_abs: float = 1e-10
    zonal_explicit_max_order: int = 20
    newton_series_rel: float = 1e-10
    newton_ratio_max: float = 0.8
    radial_derivative_abs: float = 1e-7
    radial_derivative_step: float = 1e-5
    coefficient_rel: float = 1e-12
    coefficient_max_order: int = 50
    boundary_residual_rel: float = 1e-12
    neumann_abs: float = 1e-6
    neumann_min_separation: float = 0.3
    harmonic_order: float = 2.0
    harmonic_order_slack: float = 0.2
    harmonic_steps: tuple = (1e-2, 5e-3, 2.5e-3)
    harmonic_clearance: float = 0.1
    flux_target: float = -1.0
    flux_abs: float = 1e-3
    flux_radius: float = 1e-2
    flux_regular_abs: float = 1e-6
    flux_linearity_abs: float = 1e-9
    exchange_equal_radii_abs: float = 1e-10
    exchange_pairs: int = 100
    mean_scheme_abs: float = 1e-6
    monte_carlo_sigmas: float = 3.0

    def as_dict(self):
        return asdict(self)


DEFAULT = Tolerances()
