"""Boundary reproduction and norm preservation on the circle.

For ``w`` in the disc the boundary function of ``K_C(w, .)`` is the
trigonometric series ``sum_n a_n(w) e_n`` with ``a_n(w) = sum_m c_mn conj(w)**m``.
The reproduction identity

    K_C(w, z) = integral K*(w, x) conj(K*(z, x)) d mu(x)

is checked two ways: by trapezoidal quadrature against the density (only for
absolutely continuous measures) and through the Fourier coefficients of
``mu`` as ``sum_{m,n} (CMC)_mn conj(w)**m z**n`` (any measure).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np

from . import measure as _measure
from .errors import PreconditionError, UnsupportedError, ValidationError
from .gamma import GammaSet
from .kernel import (
    CoeffMatrix,
    DenseCoeffs,
    DiagonalCoeffs,
    check_disc,
    eval_series,
    materialize,
    powers,
    series_tail,
)
from .measure import MeasureSpec, TrigDensity
from .momenteq import (
    WINDOW_NOTE,
    ResidualReport,
    build_moment_matrix,
    canonical_norm,
    matrix_norm,
    projection_residual,
)

__all__ = [
    "BoundaryCoeffs",
    "boundary_coeffs",
    "trapezoid_nodes",
    "boundary_values",
    "reproduce_residual_quadrature",
    "reproduce_residual_fourier",
    "l2_norm_sq",
    "norm_preservation_residual",
    "transpose_identity_residual",
    "abel_distance_sq",
]

_EVAL_TOL = 1e-14


@dataclass(frozen=True)
class BoundaryCoeffs:
    """Coefficients ``a_0..a_{N-1}`` of ``K*(w, .)`` and the l^2 size of the rest."""

    w: complex
    coeffs: np.ndarray = field(repr=False)
    tail_bound: float = 0.0


def boundary_coeffs(C: CoeffMatrix, w: complex, N: int) -> BoundaryCoeffs:
    """Truncated boundary coefficients ``a_n = sum_{m<N} c_mn conj(w)**m``.

    ``tail_bound`` bounds the l^2 norm of the omitted coefficients, which is
    the L^2(lambda) distance to the full boundary function. Dense matrices
    with a nonzero ``tail_sup`` have no such bound (infinite).
    """
    check_disc(w)
    if N < 1:
        raise ValidationError("N must be >= 1")
    wbar = np.conj(complex(w))
    if isinstance(C, DiagonalCoeffs):
        a = C.diagonal(N) * powers(wbar, N)
        if C.support is not None and C.support <= N:
            tail = 0.0
        else:
            tail = math.sqrt(series_tail(abs(w) ** 2, N - 1, 2 * C.order, C.bound**2))
        return BoundaryCoeffs(complex(w), a, tail)
    if isinstance(C, DenseCoeffs):
        if C.tail_sup > 0:
            tail = math.inf
        elif N >= C.size:
            tail = 0.0
        else:
            full = powers(wbar, C.size) @ C.entries
            trunc = np.zeros(C.size, dtype=complex)
            trunc[:N] = powers(wbar, N) @ C.entries[:N, :N]
            tail = float(np.linalg.norm(full - trunc))
        a = powers(wbar, N) @ materialize(C, N)
        return BoundaryCoeffs(complex(w), a, tail)
    raise UnsupportedError(f"unknown coefficient matrix {type(C).__name__}")


def trapezoid_nodes(Q: int) -> np.ndarray:
    """Equispaced nodes ``q / Q`` on [0, 1); all weights are ``1 / Q``."""
    return np.arange(Q) / Q


def boundary_values(coeffs: np.ndarray, Q: int) -> np.ndarray:
    """``sum_n a_n exp(2 pi i n q / Q)`` at the ``Q`` trapezoid nodes."""
    folded = np.zeros(Q, dtype=complex)
    np.add.at(folded, np.arange(len(coeffs)) % Q, coeffs)
    return np.fft.ifft(folded) * Q


def _top_density_freq(mu: MeasureSpec) -> int:
    if isinstance(mu, TrigDensity) and mu.b:
        return max(mu.b)
    return 0


def reproduce_residual_quadrature(
    C: CoeffMatrix,
    mu: MeasureSpec,
    w: complex,
    z: complex,
    N: int,
    Q: Optional[int] = None,
) -> float:
    """``|K_C(w, z) - (1/Q) sum_q K*(w, x_q) conj(K*(z, x_q)) density(x_q)|``.

    The integrand is a trigonometric polynomial of degree below
    ``N + top density frequency``, so the rule is exact once ``Q`` exceeds
    that. ``Q`` defaults to four times the top frequency.
    """
    if not _measure.has_density(mu):
        raise UnsupportedError(
            f"{type(mu).__name__} has no density; use reproduce_residual_fourier"
        )
    _measure.check_valid(mu)
    check_disc(w, z)
    if Q is None:
        Q = 4 * (N + _top_density_freq(mu))
    aw = boundary_coeffs(C, w, N).coeffs
    az = boundary_coeffs(C, z, N).coeffs
    x = trapezoid_nodes(Q)
    integrand = boundary_values(aw, Q) * np.conj(boundary_values(az, Q)) * _measure.density_eval(mu, x)
    integral = np.mean(integrand)
    K = eval_series(C, w, z, _EVAL_TOL).value
    return float(abs(K - integral))


def _cmc_window(C: CoeffMatrix, mu: MeasureSpec, N: int) -> np.ndarray:
    M = build_moment_matrix(mu, N).entries
    if isinstance(C, DiagonalCoeffs):
        d = C.diagonal(N)
        return d[:, None] * M * d[None, :]
    Cm = materialize(C, N)
    return Cm @ M @ Cm


def reproduce_residual_fourier(
    C: CoeffMatrix,
    mu: MeasureSpec,
    w: complex,
    z: complex,
    N: int,
    strict: bool = True,
) -> float:
    """``|K_C(w, z) - sum_{m,n<N} (CMC)_mn conj(w)**m z**n|``.

    Uses only the Fourier oracle of ``mu``, so singular measures are fine
    with diagonal ``C``. Dense ``C`` against a measure without bounded
    density is refused unless ``strict`` is false.
    """
    check_disc(w, z)
    if isinstance(C, DenseCoeffs) and strict and not _measure.moment_matrix_bounded(mu):
        raise UnsupportedError("dense C requires a measure with bounded density")
    CMC = _cmc_window(C, mu, N)
    S = powers(np.conj(w), N) @ CMC @ powers(z, N)
    K = eval_series(C, w, z, _EVAL_TOL).value
    return float(abs(K - S))


def l2_norm_sq(freqs: Sequence[int], a: Sequence[complex], mu: MeasureSpec) -> float:
    """``|| sum_j a_j e_{f_j} ||^2`` in L^2(mu), as the form ``<N a, a>``.

    ``N[j, k] = mu_hat(f_j - f_k)``.
    """
    f = np.asarray(list(freqs), dtype=np.int64)
    a = np.asarray(a, dtype=complex)
    if f.shape != a.shape:
        raise ValidationError("frequencies and coefficients differ in length")
    diffs = np.subtract.outer(f, f)
    uniq, inv = np.unique(diffs, return_inverse=True)
    vals, _ = _measure.fourier_coefficients(mu, uniq)
    Nmat = vals[inv].reshape(diffs.shape)
    return float(np.vdot(a, Nmat @ a).real)


def norm_preservation_residual(
    freqs: Union[GammaSet, Sequence[int]], a: Sequence[complex], mu: MeasureSpec
) -> float:
    """``| ||sum a_j e_{f_j}||_mu^2 - sum |a_j|^2 |``."""
    f = list(freqs.elements) if isinstance(freqs, GammaSet) else list(freqs)
    a = np.asarray(a, dtype=complex)
    return abs(l2_norm_sq(f, a, mu) - float(np.sum(np.abs(a) ** 2)))


def transpose_identity_residual(
    C: CoeffMatrix,
    mu: MeasureSpec,
    N: int,
    norm: str = "max",
    tol: float = 1e-9,
    projection_tol: float = 1e-10,
) -> ResidualReport:
    """``||C^T - C^T M C^T||`` on ``[0, N)`` for a projection ``C``.

    Equivalently ``||C - C N C||`` with ``N = M^T``. ``C`` must be a
    projection on the window and ``mu`` must have a bounded density.
    """
    proj = projection_residual(C, size=N)
    if proj.residual > projection_tol:
        raise PreconditionError(
            f"transpose identity needs C to be a projection (||C - C^2|| = {proj.residual:.3g})"
        )
    if not _measure.moment_matrix_bounded(mu):
        raise UnsupportedError("transpose identity needs a measure with bounded density")
    Ct = materialize(C, N).T
    M = build_moment_matrix(mu, N)
    R = Ct - Ct @ M.entries @ Ct
    value, worst = matrix_norm(R, norm)
    note = f"{WINDOW_NOTE}; transposed coefficients; N={N}"
    return ResidualReport(value, canonical_norm(norm), N, note, worst, tol, M.error)


def abel_distance_sq(C: DiagonalCoeffs, mu: MeasureSpec, w: complex, r: float, N: int) -> float:
    """Squared L^2(mu) distance between ``K_C(w, r e(x))`` and ``K*(w, x)``, truncated to ``N``.

    The difference has coefficients ``c_nn conj(w)**n (r**n - 1)``.
    """
    if not isinstance(C, DiagonalCoeffs):
        raise UnsupportedError("Abel distance is implemented for diagonal C")
    if not 0 <= r <= 1:
        raise ValidationError("r must lie in [0, 1]")
    a = boundary_coeffs(C, w, N).coeffs
    e = a * (np.power(float(r), np.arange(N)) - 1)
    return l2_norm_sq(range(N), e, mu)
