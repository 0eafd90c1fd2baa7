"""Measures on [0, 1) presented through their Fourier coefficients.

Four families are supported:

* :class:`Lebesgue` -- the uniform probability measure.
* :class:`TrigDensity` -- density ``1 + sum_n b_n cos(2 pi n x)`` with
  ``sum |b_n| < 1``.
* :class:`IFS` -- the invariant measure of the maps ``x -> (x + a_i) / R``
  chosen with probabilities ``p_i`` (e.g. the quaternary Cantor measure).
* :class:`Atomic` -- a finite weighted sum of point masses.

The Fourier convention throughout is

    mu_hat(k) = integral of exp(-2 pi i k x) d mu(x),

so that the inner product of ``e_m`` and ``e_n`` in L^2(mu) is
``mu_hat(n - m)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Union

import numpy as np

from .errors import CapacityError, UnsupportedError, ValidationError

__all__ = [
    "Lebesgue",
    "TrigDensity",
    "IFS",
    "Atomic",
    "MeasureSpec",
    "MU3",
    "MU4",
    "validate",
    "check_valid",
    "fourier_coefficient",
    "fourier_coefficients",
    "density_eval",
    "total_mass",
    "has_density",
    "moment_matrix_bounded",
    "ifs_depth",
    "chaos_game_samples",
    "monte_carlo_fourier",
    "measure_to_dict",
    "measure_from_dict",
]

DEFAULT_EPS = 1e-14
_EPS_MACH = np.finfo(float).eps
_K_LIMIT = 2**62


@dataclass(frozen=True)
class Lebesgue:
    """Lebesgue (Haar) probability measure on [0, 1)."""


@dataclass(frozen=True)
class TrigDensity:
    """Absolutely continuous measure with a cosine-polynomial density.

    ``b`` maps positive integer frequencies to real coefficients. An empty
    map is Lebesgue measure.
    """

    b: Mapping[int, float] = field(default_factory=dict)

    def __post_init__(self):
        items = tuple(sorted((int(n), float(v)) for n, v in dict(self.b).items()))
        object.__setattr__(self, "b", dict(items))
        object.__setattr__(self, "_items", items)

    def __hash__(self):
        return hash(self._items)

    @property
    def l1_mass(self) -> float:
        return float(sum(abs(v) for v in self.b.values()))


@dataclass(frozen=True)
class IFS:
    """Self-similar measure for ``x -> (x + a_i) / scale`` with weights ``p_i``."""

    scale: int
    digits: tuple
    weights: tuple

    def __post_init__(self):
        object.__setattr__(self, "digits", tuple(int(a) for a in self.digits))
        object.__setattr__(self, "weights", tuple(float(p) for p in self.weights))


@dataclass(frozen=True)
class Atomic:
    """Finite sum of weighted point masses on [0, 1)."""

    points: tuple
    weights: tuple

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(float(x) for x in self.points))
        object.__setattr__(self, "weights", tuple(float(w) for w in self.weights))


MeasureSpec = Union[Lebesgue, TrigDensity, IFS, Atomic]

#: Quaternary Cantor measure; spectral with spectrum {0, 1, 4, 5, 16, ...}.
MU4 = IFS(4, (0, 2), (0.5, 0.5))
#: Middle-thirds Cantor measure.
MU3 = IFS(3, (0, 2), (0.5, 0.5))


def validate(spec: MeasureSpec) -> list[str]:
    """Return a list of invariant violations (empty when ``spec`` is valid)."""
    out: list[str] = []
    if isinstance(spec, Lebesgue):
        return out
    if isinstance(spec, TrigDensity):
        for n, v in spec.b.items():
            if n < 1:
                out.append(f"frequency {n} is not a positive integer")
            if not math.isfinite(v):
                out.append(f"coefficient b_{n} is not finite")
        if not spec.l1_mass < 1.0:
            out.append(f"Σ|b_n| ≥ 1 (got {spec.l1_mass:.17g})")
        return out
    if isinstance(spec, IFS):
        if spec.scale < 2:
            out.append(f"scale must be >= 2 (got {spec.scale})")
        if not spec.digits:
            out.append("digit list is empty")
        if len(set(spec.digits)) != len(spec.digits):
            out.append("digits are not distinct")
        if any(a < 0 or a >= spec.scale for a in spec.digits):
            out.append("digits must lie in [0, scale)")
        if len(spec.weights) != len(spec.digits):
            out.append("weights and digits differ in length")
        if any(not (p > 0) for p in spec.weights):
            out.append("weights must be positive")
        if abs(math.fsum(spec.weights) - 1.0) > 1e-12:
            out.append(f"weights sum ≠ 1 (got {math.fsum(spec.weights):.17g})")
        return out
    if isinstance(spec, Atomic):
        if not spec.points:
            out.append("no atoms")
        if len(spec.weights) != len(spec.points):
            out.append("weights and points differ in length")
        if any(not (0.0 <= x < 1.0) for x in spec.points):
            out.append("points must lie in [0, 1)")
        if len(set(spec.points)) != len(spec.points):
            out.append("points are not distinct")
        if any(not (w > 0) for w in spec.weights):
            out.append("weights must be positive")
        return out
    return [f"unknown measure type {type(spec).__name__}"]


def check_valid(spec: MeasureSpec) -> None:
    problems = validate(spec)
    if problems:
        raise ValidationError("; ".join(problems))


def total_mass(spec: MeasureSpec) -> float:
    if isinstance(spec, Atomic):
        return math.fsum(spec.weights)
    if isinstance(spec, IFS):
        return math.fsum(spec.weights)
    return 1.0


def has_density(spec: MeasureSpec) -> bool:
    return isinstance(spec, (Lebesgue, TrigDensity))


def moment_matrix_bounded(spec: MeasureSpec) -> bool:
    """Whether the moment matrix of ``spec`` is a bounded operator on l^2.

    This holds exactly when the measure has an essentially bounded density,
    which is automatic for the finitely supported cosine densities here and
    fails for the singular families.
    """
    return has_density(spec)


def ifs_depth(spec: IFS, k_abs: int, eps: float = DEFAULT_EPS) -> int:
    """Smallest depth ``d`` with ``2 pi |k| max(a) / R**d < eps``."""
    amax = max(spec.digits)
    if k_abs == 0 or amax == 0:
        return 0
    phase = 2 * math.pi * k_abs * amax
    d = 0
    scale_pow = 1
    while phase / scale_pow >= eps:
        d += 1
        scale_pow *= spec.scale
    return d


def _ifs_tail(spec: IFS, k_abs: np.ndarray, depth: int) -> np.ndarray:
    # sum over j > depth of 2 pi |k| amax / R^j
    amax = max(spec.digits)
    R = spec.scale
    return 2 * math.pi * k_abs * amax / (float(R) ** depth * (R - 1))


def _ifs_fourier(spec: IFS, ks: np.ndarray, eps: float, depth):
    k_abs = np.abs(ks)
    if depth is None:
        depth = ifs_depth(spec, int(k_abs.max(initial=0)), eps)
    R = spec.scale
    amax = max(spec.digits)
    exact_int = int(k_abs.max(initial=0)) * max(amax, 1) < _K_LIMIT
    values = np.ones(ks.shape, dtype=complex)
    Rj = 1
    for _ in range(depth):
        Rj *= R
        factor = np.zeros(ks.shape, dtype=complex)
        for a, p in zip(spec.digits, spec.weights):
            if exact_int and Rj < _K_LIMIT:
                frac = np.mod(ks * a, Rj) / float(Rj)
            else:
                frac = np.mod(ks.astype(float) * (a / float(Rj)), 1.0)
            factor += p * np.exp(-2j * np.pi * frac)
        values *= factor
    tail = _ifs_tail(spec, k_abs.astype(float), depth)
    errors = np.abs(values) * np.expm1(tail) + (depth + 1) * 8 * _EPS_MACH
    errors[k_abs == 0] = 0.0
    return values, errors


def fourier_coefficients(spec: MeasureSpec, ks, eps: float = DEFAULT_EPS, depth=None):
    """Vectorized Fourier oracle.

    Parameters
    ----------
    spec : MeasureSpec
        A valid measure.
    ks : array_like of int
        Frequencies.
    eps : float
        Truncation target for the self-similar product (IFS only).
    depth : int, optional
        Force a product depth instead of choosing it from ``eps``.

    Returns
    -------
    values : ndarray of complex
    errors : ndarray of float
        Bounds on the absolute error of each value.
    """
    check_valid(spec)
    ks = np.asarray(ks)
    if ks.size and np.max(np.abs(ks.astype(object))) >= _K_LIMIT:
        raise CapacityError("frequency outside the supported integer range")
    ks = ks.astype(np.int64)

    if isinstance(spec, Lebesgue):
        return (ks == 0).astype(complex), np.zeros(ks.shape)
    if isinstance(spec, TrigDensity):
        vals = (ks == 0).astype(complex)
        for n, b in spec.b.items():
            vals[np.abs(ks) == n] = b / 2
        return vals, np.zeros(ks.shape)
    if isinstance(spec, IFS):
        return _ifs_fourier(spec, ks, eps, depth)
    if isinstance(spec, Atomic):
        x = np.asarray(spec.points)
        w = np.asarray(spec.weights)
        phase = np.mod(np.multiply.outer(ks.astype(float), x), 1.0)
        vals = np.exp(-2j * np.pi * phase) @ w
        # rounding in k*x grows with |k|
        errs = (4 * np.pi * np.abs(ks.astype(float))[..., None] * x + 4) @ w * _EPS_MACH
        return vals, errs
    raise UnsupportedError(f"unknown measure type {type(spec).__name__}")


def fourier_coefficient(spec: MeasureSpec, k: int, eps: float = DEFAULT_EPS):
    """Return ``(mu_hat(k), error_bound)`` for a single integer ``k``."""
    if int(k) != k:
        raise ValidationError("frequency must be an integer")
    if abs(int(k)) >= _K_LIMIT:
        raise CapacityError("frequency outside the supported integer range")
    vals, errs = fourier_coefficients(spec, np.array([int(k)]), eps=eps)
    return complex(vals[0]), float(errs[0])


def density_eval(spec: MeasureSpec, theta):
    """Radon-Nikodym derivative of ``spec`` with respect to Lebesgue measure."""
    if not has_density(spec):
        raise UnsupportedError(f"{type(spec).__name__} has no density")
    check_valid(spec)
    theta = np.asarray(theta, dtype=float)
    out = np.ones(theta.shape)
    if isinstance(spec, TrigDensity):
        for n, b in spec.b.items():
            out = out + b * np.cos(2 * np.pi * n * theta)
    return out if out.ndim else float(out)


def chaos_game_samples(spec: IFS, n: int, rng: np.random.Generator, depth: int | None = None):
    """Draw ``n`` independent points from an IFS measure.

    Each point is produced by running ``depth`` random steps of the chaos
    game from 0, which places it within ``scale**-depth`` of an exact sample.
    """
    check_valid(spec)
    if depth is None:
        depth = int(math.ceil(53 / math.log2(spec.scale)))
    digits = np.asarray(spec.digits, dtype=float)
    p = np.asarray(spec.weights)
    p = p / p.sum()
    x = np.zeros(n)
    for _ in range(depth):
        x = (x + digits[rng.choice(len(digits), size=n, p=p)]) / spec.scale
    return x


def monte_carlo_fourier(spec: IFS, ks, n: int = 10**6, rng=None, chunk: int = 2**17):
    """Chaos-game estimate of ``mu_hat(k)`` with its standard error."""
    rng = np.random.default_rng(rng)
    ks = np.atleast_1d(np.asarray(ks, dtype=float))
    s = np.zeros(ks.shape, dtype=complex)
    s2 = np.zeros(ks.shape)
    done = 0
    while done < n:
        m = min(chunk, n - done)
        x = chaos_game_samples(spec, m, rng)
        e = np.exp(-2j * np.pi * np.multiply.outer(x, ks))
        s += e.sum(axis=0)
        s2 += (np.abs(e) ** 2).sum(axis=0)
        done += m
    mean = s / n
    var = s2 / n - np.abs(mean) ** 2
    return mean, np.sqrt(np.maximum(var, 0.0) / n)


def measure_to_dict(spec: MeasureSpec) -> dict:
    if isinstance(spec, Lebesgue):
        return {"type": "lebesgue"}
    if isinstance(spec, TrigDensity):
        return {"type": "trig", "b": {str(n): v for n, v in spec.b.items()}}
    if isinstance(spec, IFS):
        return {
            "type": "ifs",
            "scale": spec.scale,
            "digits": list(spec.digits),
            "weights": list(spec.weights),
        }
    if isinstance(spec, Atomic):
        return {"type": "atomic", "points": list(spec.points), "weights": list(spec.weights)}
    raise UnsupportedError(f"unknown measure type {type(spec).__name__}")


def measure_from_dict(d: Mapping) -> MeasureSpec:
    try:
        kind = d["type"]
        if kind == "lebesgue":
            return Lebesgue()
        if kind == "trig":
            b = {int(n): float(v) for n, v in d.get("b", {}).items()}
            return TrigDensity(b)
        if kind == "ifs":
            return IFS(int(d["scale"]), tuple(d["digits"]), tuple(d["weights"]))
        if kind == "atomic":
            return Atomic(tuple(d["points"]), tuple(d["weights"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed measure description: {exc}") from exc
    raise ValidationError(f"unknown measure type {kind!r}")
