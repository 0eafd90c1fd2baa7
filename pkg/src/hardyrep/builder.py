"""Absolutely continuous representing measures for digit-set kernels.

If some positive integers are not differences of ``gamma``, any density

    1 + sum_{n not a difference} b_n cos(2 pi n x),   sum |b_n| < 1,

has Fourier coefficients vanishing on every nonzero difference, so its
measure reproduces ``K_gamma`` on the boundary. When the differences cover
every integer, Lebesgue measure is the only choice.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional

import numpy as np

from . import measure as _measure
from .boundary import reproduce_residual_quadrature
from .errors import ConstructionError, ValidationError
from .gamma import GammaSet, difference_set
from .kernel import gamma_diagonal, series_tail
from .measure import MeasureSpec, TrigDensity
from .momenteq import (
    ResidualReport,
    VanishingResult,
    build_moment_matrix,
    cmc_residual,
    default_tol,
    fourier_vanishing_check,
)

__all__ = ["admissible_frequencies", "build_ac_representing_measure", "Certificate", "certify"]


def admissible_frequencies(gamma: GammaSet, freq_bound: int) -> np.ndarray:
    """Integers in ``[1, freq_bound]`` that are not differences of ``gamma``."""
    diffs = difference_set(gamma, freq_bound)
    cand = np.arange(1, freq_bound + 1)
    return np.setdiff1d(cand, diffs)


def build_ac_representing_measure(
    gamma: GammaSet,
    freq_bound: int,
    mass_budget: float = 0.5,
    decay: float = 0.5,
    coefficients: Optional[Mapping[int, float]] = None,
) -> TrigDensity:
    """Cosine density supported off the difference set of ``gamma``.

    The default coefficients are geometric,
    ``b_n = mass_budget * (1 - decay) * decay**rank(n)`` with ``rank`` the
    position of ``n`` among the admissible frequencies, so
    ``sum |b_n| < mass_budget``. A user map ``coefficients`` replaces them
    after checking that it only uses admissible frequencies.

    ``gamma`` must be materialized far enough that its differences up to
    ``freq_bound`` are complete.
    """
    if not 0 < mass_budget < 1:
        raise ValidationError("mass_budget must lie in (0, 1)")
    if not 0 < decay < 1:
        raise ValidationError("decay must lie in (0, 1)")
    if freq_bound < 1:
        raise ValidationError("freq_bound must be >= 1")
    adm = admissible_frequencies(gamma, freq_bound)
    if adm.size == 0:
        raise ConstructionError(
            f"no admissible frequency <= {freq_bound}: the difference set covers "
            f"[-{freq_bound}, {freq_bound}], so Lebesgue measure is the only candidate"
        )
    if coefficients is not None:
        b = {int(n): float(v) for n, v in coefficients.items()}
        bad = sorted(set(b) - set(adm.tolist()))
        if bad:
            raise ValidationError(f"frequencies {bad[:5]} lie in the difference set or out of range")
    else:
        weights = mass_budget * (1 - decay) * decay ** np.arange(adm.size)
        b = dict(zip(adm.tolist(), weights.tolist()))
    mu = TrigDensity(b)
    _measure.check_valid(mu)
    return mu


@dataclass
class Certificate:
    measure: MeasureSpec
    window: int
    tol: float
    violations: list = field(default_factory=list)
    vanishing: Optional[VanishingResult] = None
    cmc: Optional[ResidualReport] = None
    quadrature: Optional[float] = None
    quadrature_point: Optional[tuple] = None
    quadrature_size: Optional[int] = None

    @property
    def residual(self) -> float:
        vals = [0.0]
        if self.vanishing is not None:
            vals.append(self.vanishing.max_abs)
        if self.cmc is not None:
            vals.append(self.cmc.residual)
        return max(vals)

    @property
    def passed(self) -> bool:
        if self.violations or self.vanishing is None or self.cmc is None:
            return False
        ok = self.vanishing.passed and bool(self.cmc.passed)
        if self.quadrature is not None:
            ok = ok and self.quadrature <= self.tol
        return ok

    def to_dict(self) -> dict:
        out = {
            "pass": self.passed,
            "residual": self.residual,
            "window": self.window,
            "tol": self.tol,
            "measure": _measure.measure_to_dict(self.measure),
            "violations": list(self.violations),
        }
        if self.vanishing is not None:
            out["vanishing"] = {
                "maxAbs": self.vanishing.max_abs,
                "worstOffset": self.vanishing.worst_offset,
                "pass": self.vanishing.passed,
            }
        if self.cmc is not None:
            out["cmc"] = self.cmc.to_dict()
        if self.quadrature is not None:
            w, z = self.quadrature_point
            out["quadrature"] = {
                "residual": self.quadrature,
                "w": [w.real, w.imag],
                "z": [z.real, z.imag],
                "N": self.quadrature_size,
                "pass": self.quadrature <= self.tol,
            }
        return out


def _spot_size(w: complex, z: complex, window: int, tol: float) -> int:
    # grow the window until the kernel's own truncation tail is negligible next to tol
    r = abs(w * z)
    size = window
    while series_tail(r, size - 1) > tol / 100:
        size *= 2
    return size


def certify(
    mu: MeasureSpec,
    gamma: GammaSet,
    window: int,
    tol: Optional[float] = None,
    point: tuple = (0.3, 0.5),
    Q: Optional[int] = None,
) -> Certificate:
    """Check that ``mu`` represents ``K_gamma`` on the window ``[0, window)``.

    Runs validation, the Fourier-vanishing test on differences up to
    ``window - 1``, the ``C = CMC`` residual, and (for measures with a
    density) one quadrature spot check of the reproduction identity at
    ``point``. The spot check widens the window when needed so that the
    omitted kernel terms stay below ``tol / 100``.
    """
    if tol is None:
        tol = default_tol(mu)
    cert = Certificate(mu, window, tol, violations=_measure.validate(mu))
    if cert.violations:
        return cert
    cert.vanishing = fourier_vanishing_check(mu, gamma, window - 1, tol)
    C = gamma_diagonal(gamma)
    cert.cmc = cmc_residual(C, build_moment_matrix(mu, window), tol=tol)
    if _measure.has_density(mu):
        w, z = (complex(p) for p in point)
        size = _spot_size(w, z, window, tol)
        cert.quadrature = reproduce_residual_quadrature(C, mu, w, z, size, Q)
        cert.quadrature_point = (w, z)
        cert.quadrature_size = size
    return cert
