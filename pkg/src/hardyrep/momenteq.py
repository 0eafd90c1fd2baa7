"""Moment matrices and the truncated ``C = CMC`` criterion.

``M = (mu_hat(n - m))_{m,n}`` is the Gram matrix of the exponentials
``e_n(x) = exp(2 pi i n x)`` in L^2(mu). A measure reproduces the kernel
``K_C`` on the boundary exactly when ``C = CMC``; this is decided here on a
finite window ``[0, N)``. Windows give a necessary condition at every size
and a sufficient one only in the limit, which every report states.

Two regimes are supported, matching where the criterion is known to hold:
diagonal ``C`` with any measure, and dense ``C`` with measures whose moment
matrix is bounded (bounded density). Dense ``C`` against a singular measure
is refused.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np
import scipy.linalg

from . import measure as _measure
from .errors import PreconditionError, UnsupportedError, ValidationError
from .gamma import GammaSet, difference_set
from .kernel import CoeffMatrix, DenseCoeffs, DiagonalCoeffs, materialize
from .measure import IFS, MeasureSpec

__all__ = [
    "MomentMatrix",
    "ResidualReport",
    "VanishingResult",
    "WINDOW_NOTE",
    "default_tol",
    "build_moment_matrix",
    "canonical_norm",
    "matrix_norm",
    "cmc_residual",
    "projection_residual",
    "fourier_vanishing_check",
    "diag_nonexistence_certificate",
]

WINDOW_NOTE = "truncated criterion on window [0,N): necessary at every window, sufficient in the limit"
_NORMS = {"max": "max", "entrywise-max": "max", "frobenius": "frobenius", "fro": "frobenius"}


def default_tol(mu: MeasureSpec) -> float:
    """Pass threshold for a measure family: 1e-8 when an IFS product enters."""
    return 1e-8 if isinstance(mu, IFS) else 1e-10


@dataclass(frozen=True)
class MomentMatrix:
    """Truncated Toeplitz moment matrix.

    ``entries[m, n] = mu_hat(n - m)``, or ``mu_hat(m - n)`` when ``transpose``
    is set. ``error`` bounds the oracle error of every entry.
    """

    size: int
    measure: MeasureSpec
    entries: np.ndarray = field(repr=False)
    transpose: bool = False
    error: float = 0.0


@dataclass
class ResidualReport:
    residual: float
    norm: str
    N: int
    tail_note: str
    worst_entry: Optional[tuple] = None
    tol: Optional[float] = None
    error_bound: float = 0.0

    @property
    def passed(self) -> Optional[bool]:
        if self.tol is None:
            return None
        return self.residual <= self.tol

    def to_dict(self) -> dict:
        return {
            "residual": self.residual,
            "norm": self.norm,
            "N": self.N,
            "pass": self.passed,
            "worstEntry": list(self.worst_entry) if self.worst_entry is not None else None,
            "tailNote": self.tail_note,
            "tol": self.tol,
            "errorBound": self.error_bound,
        }


class VanishingResult(NamedTuple):
    max_abs: float
    worst_offset: Optional[int]
    passed: bool


def build_moment_matrix(mu: MeasureSpec, N: int, transpose: bool = False) -> MomentMatrix:
    """Build the ``N x N`` moment matrix from the ``N`` oracle values ``mu_hat(0..N-1)``.

    >>> build_moment_matrix(_measure.Lebesgue(), 3).entries.real
    array([[1., 0., 0.],
           [0., 1., 0.],
           [0., 0., 1.]])
    """
    if N < 1:
        raise ValidationError("N must be >= 1")
    # real measures have mu_hat(-k) = conj(mu_hat(k)); using it keeps M exactly Hermitian
    nonneg, errs = _measure.fourier_coefficients(mu, np.arange(N))
    neg = np.conj(nonneg)
    # row m, column n holds mu_hat(n - m): first row mu_hat(n), first column mu_hat(-m)
    if transpose:
        entries = scipy.linalg.toeplitz(nonneg, neg)
    else:
        entries = scipy.linalg.toeplitz(neg, nonneg)
    entries.setflags(write=False)
    return MomentMatrix(N, mu, entries, transpose, float(errs.max(initial=0.0)))


def canonical_norm(norm: str) -> str:
    kind = _NORMS.get(norm)
    if kind is None:
        raise ValidationError(f"unknown norm {norm!r}")
    return kind


def matrix_norm(A: np.ndarray, norm: str = "max"):
    """Norm value and location of the largest entry."""
    kind = canonical_norm(norm)
    absA = np.abs(A)
    if absA.size == 0:
        return 0.0, None
    idx = np.unravel_index(int(np.argmax(absA)), absA.shape)
    worst = (int(idx[0]), int(idx[1]))
    if kind == "max":
        return float(absA[idx]), worst
    return float(np.linalg.norm(A)), worst


def _check_regime(C: CoeffMatrix, mu: MeasureSpec, strict: bool) -> None:
    if isinstance(C, DenseCoeffs) and strict and not _measure.moment_matrix_bounded(mu):
        raise UnsupportedError(
            "dense C with a measure lacking a bounded density: CMC is not known to decide "
            "boundary reproduction here (use a diagonal C or pass strict=False)"
        )


def cmc_residual(
    C: CoeffMatrix,
    M: MomentMatrix,
    norm: str = "max",
    tol: Optional[float] = None,
    strict: bool = True,
) -> ResidualReport:
    """``||C - CMC||`` on the window of ``M``.

    For diagonal ``C`` the product is formed entrywise as
    ``c_mm * M[m, n] * c_nn``; dense ``C`` uses the plain triple product.
    """
    N = M.size
    _check_regime(C, M.measure, strict)
    if tol is None:
        tol = default_tol(M.measure)
    if isinstance(C, DiagonalCoeffs):
        d = C.diagonal(N)
        R = np.diag(d) - d[:, None] * M.entries * d[None, :]
        err = M.error * float(np.max(d, initial=0.0)) ** 2
        how = "exact closed form c_mm*M_mn*c_nn"
    elif isinstance(C, DenseCoeffs):
        if C.size != N:
            raise ValidationError(f"dimension mismatch: C is {C.size}x{C.size}, M is {N}x{N}")
        Cm = C.entries
        R = Cm - Cm @ M.entries @ Cm
        err = M.error * float(np.abs(Cm).sum(axis=1).max(initial=0.0)) ** 2
        how = "dense triple product"
    else:
        raise UnsupportedError(f"unknown coefficient matrix {type(C).__name__}")
    value, worst = matrix_norm(R, norm)
    note = f"{WINDOW_NOTE}; {how}; N={N}"
    return ResidualReport(value, canonical_norm(norm), N, note, worst, tol, err)


def projection_residual(
    C: CoeffMatrix, norm: str = "max", size: Optional[int] = None, tol: float = 1e-10
) -> ResidualReport:
    """``||C - C^2||`` on a window; zero iff the truncation is a projection."""
    if size is None:
        if isinstance(C, DenseCoeffs):
            size = C.size
        elif isinstance(C, DiagonalCoeffs) and C.support is not None:
            size = max(C.support, 1)
        else:
            raise ValidationError("window size required for an infinite diagonal")
    if isinstance(C, DiagonalCoeffs):
        d = C.diagonal(size)
        R = np.diag(d - d * d)
    else:
        Cm = materialize(C, size)
        R = Cm - Cm @ Cm
    value, worst = matrix_norm(R, norm)
    return ResidualReport(value, canonical_norm(norm), size, f"{WINDOW_NOTE}; N={size}", worst, tol)


def fourier_vanishing_check(
    mu: MeasureSpec, gamma: GammaSet, bound: int, tol: float = 1e-10
) -> VanishingResult:
    """Largest ``|mu_hat(d)|`` over nonzero differences ``d`` of ``gamma``, ``|d| <= bound``.

    For a probability measure this is the ``C = CMC`` criterion for the 0/1
    diagonal of ``gamma``. Only positive offsets are scanned; the negative
    ones are their conjugates.
    """
    mass0, _ = _measure.fourier_coefficient(mu, 0)
    if abs(mass0 - 1) > max(tol, 1e-12):
        raise PreconditionError(f"measure is not a probability measure (mu_hat(0) = {mass0})")
    diffs = difference_set(gamma, bound)
    diffs = diffs[diffs > 0]
    if diffs.size == 0:
        return VanishingResult(0.0, None, True)
    vals, _ = _measure.fourier_coefficients(mu, diffs)
    a = np.abs(vals)
    i = int(np.argmax(a))
    max_abs = float(a[i])
    worst = int(diffs[i]) if max_abs > 0 else None
    return VanishingResult(max_abs, worst, max_abs <= tol)


def diag_nonexistence_certificate(
    C: DiagonalCoeffs, total_mass: float, size: Optional[int] = None, rtol: float = 1e-12
) -> list[int]:
    """Indices ``m`` with ``c_mm != total_mass * c_mm**2``.

    Any representing measure forces ``c_mm = ||mu|| c_mm**2`` on the
    diagonal, so a nonempty result rules out every measure of that mass; a
    diagonal with two distinct nonzero values is nonempty for every mass.
    """
    if size is None:
        if C.support is None:
            raise ValidationError("window size required for an infinite diagonal")
        size = C.support
    d = C.diagonal(size)
    rhs = total_mass * d * d
    bad = np.abs(d - rhs) > rtol * np.maximum(np.abs(d), np.abs(rhs))
    return [int(m) for m in np.flatnonzero(bad)]
