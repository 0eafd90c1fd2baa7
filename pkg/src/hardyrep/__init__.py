"""Boundary representations of positive matrices in the Hardy space.

Decides, on finite windows with explicit error control, whether a measure on
the circle reproduces a kernel ``K_C`` through its boundary values, via the
matrix identity ``C = CMC`` with ``M`` the moment matrix of the measure.
"""

__version__ = "0.1.0"

from .boundary import (
    boundary_coeffs,
    norm_preservation_residual,
    reproduce_residual_fourier,
    reproduce_residual_quadrature,
    transpose_identity_residual,
)
from .builder import build_ac_representing_measure, certify
from .gamma import (
    GammaSet,
    check_coverage,
    check_disjoint_difference,
    difference_set,
    gamma3,
    gamma4,
    gamma4_prime,
    generate_digit_set,
)
from .kernel import (
    DenseCoeffs,
    DiagonalCoeffs,
    bergman_diagonal,
    eval_product,
    eval_series,
    gamma_diagonal,
    gram_at_points,
    h2_norm_sq,
    psd_check,
    szego_diagonal,
)
from .measure import MU3, MU4, IFS, Atomic, Lebesgue, TrigDensity, density_eval, fourier_coefficient, validate
from .momenteq import (
    build_moment_matrix,
    cmc_residual,
    diag_nonexistence_certificate,
    fourier_vanishing_check,
    projection_residual,
)
