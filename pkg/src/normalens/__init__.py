"""Exact and asymptotic correlation kernels of radial normal matrix ensembles."""

from .conformal import (
    IdentityResidual,
    map_phi,
    map_phi_inverse,
    map_u,
    rescaled_kernel,
    scale_g,
    sine_kernel,
    universal_kernel,
    verify_g_composition,
    verify_phi_identity,
    verify_phi_roundtrip,
    verify_u_identity,
)
from .ensemble import (
    AngularRegion,
    DomainError,
    EnsembleParams,
    density_at,
    in_delta_region,
    support_radius,
)
from .kernel_asymptotic import (
    DeltaSample,
    ErrorTableRow,
    cross_term_log_magnitude,
    error_sup,
    error_table,
    kernel_asymptotic,
    kernel_piecewise,
    secondary_peak_angles,
)
from .kernel_exact import KernelGrid, ginibre_closed_form, kernel_exact, kernel_grid
from .logdomain import LogComplex
from .sampling import (
    BulkExitError,
    RadialSample,
    SpacingCheckResult,
    attach_uniform_angles,
    fraction_in_disk,
    sample_moduli,
    spacing_check,
)

__version__ = "0.1.0"
