"""Damped quantum oscillator dynamics in the tomographic representation.

The state of the oscillator is described by the symplectic tomogram
w(X, mu, nu), the probability density of the quadrature mu*x + nu*p.
For an initial coherent state the tomogram stays Gaussian under the
damped evolution, and everything reduces to five real functions of time:
the quadrature means (lam, delta) and the second-moment coefficients
(C, D, E).

Modules:
    dynamics    closed-form evolution of the Gaussian family and purity
    propagator  quadratic-form propagator of the Fourier-transformed state
    tomography  tomogram <-> density matrix transforms on coordinate grids
    residual    pointwise residual of the tomographic evolution equation
    checks      cross-route consistency battery
    cli         command-line surface
"""

from .dynamics import (
    ConstantOne,
    DampingParams,
    DecaysToZero,
    GaussianTomogram,
    KappaZero,
    Limit,
    asymptotic_purity,
    coefficients,
    constants_cde,
    covariance_determinant,
    damping_params,
    evolve_coherent,
    first_moments,
    purity,
    purity_curve,
)
from .errors import InvariantViolation, ValidationError
from .propagator import (
    GammaMatrix,
    LambdaSet,
    gamma_matrix,
    green_apply_gaussian,
    lambda_closed_form,
    lambda_max_deviation,
    lambda_ode_integrate,
)
from .residual import ProbePoint, analytic_partials, pde_residual, residual_sweep
from .tomography import (
    CoordinateGrid,
    DensityMatrixGrid,
    coherent_tomogram_eval,
    default_grid,
    density_square,
    density_to_tomogram,
    gaussian_tomogram_eval,
    normalization_check,
    purity_from_density,
    purity_overlap_integral,
    star_product_check,
    tomogram_to_density,
)

__version__ = "0.1.0"

__all__ = [
    "ConstantOne",
    "CoordinateGrid",
    "DampingParams",
    "DecaysToZero",
    "DensityMatrixGrid",
    "GammaMatrix",
    "GaussianTomogram",
    "InvariantViolation",
    "KappaZero",
    "LambdaSet",
    "Limit",
    "ProbePoint",
    "ValidationError",
    "analytic_partials",
    "asymptotic_purity",
    "coefficients",
    "coherent_tomogram_eval",
    "constants_cde",
    "covariance_determinant",
    "damping_params",
    "default_grid",
    "density_square",
    "density_to_tomogram",
    "evolve_coherent",
    "first_moments",
    "gamma_matrix",
    "gaussian_tomogram_eval",
    "green_apply_gaussian",
    "lambda_closed_form",
    "lambda_max_deviation",
    "lambda_ode_integrate",
    "normalization_check",
    "pde_residual",
    "purity",
    "purity_curve",
    "purity_from_density",
    "purity_overlap_integral",
    "residual_sweep",
    "star_product_check",
    "tomogram_to_density",
]
