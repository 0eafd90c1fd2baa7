"""Positive matrices on the unit disc built from coefficient matrices.

A Hermitian coefficient matrix ``C = (c_mn)`` defines

    K_C(w, z) = sum_{m,n} c_mn conj(w)**m z**n = <C z_vec, w_vec>,

with ``z_vec = (z**n)_n``. Diagonal matrices cover the Szego kernel (all
ones), digit-set kernels (0/1 indicators) and the Bergman kernel (``n + 1``);
dense matrices are finite truncations. Every evaluation returns a value and
a bound on its distance to the untruncated kernel.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Mapping, NamedTuple, Optional, Sequence, Union

import numpy as np

from .errors import DomainError, TruncationError, UnsupportedError, ValidationError
from .gamma import GammaSet

__all__ = [
    "DiagonalCoeffs",
    "DenseCoeffs",
    "CoeffMatrix",
    "KernelValue",
    "PSDResult",
    "diagonal_from_map",
    "gamma_diagonal",
    "szego_diagonal",
    "bergman_diagonal",
    "materialize",
    "series_tail",
    "eval_series",
    "eval_product",
    "szego",
    "kernel_function",
    "named_kernel",
    "gram_at_points",
    "psd_check",
    "h2_norm_sq",
    "powers",
    "span_coefficients",
    "kernel_form",
]

_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class DiagonalCoeffs:
    """Diagonal coefficient matrix with nonnegative entries.

    ``values`` maps an integer array ``n`` to ``c_nn``. Growth is declared by
    ``c_nn <= bound * (n + 1)**order``; ``support`` (if set) means
    ``c_nn = 0`` for ``n >= support``.
    """

    values: Callable[[np.ndarray], np.ndarray]
    bound: float
    order: int = 0
    support: Optional[int] = None
    name: str = "diag"

    def __post_init__(self):
        if self.support is None and self.order < 0:
            raise ValidationError("growth order must be >= 0")
        if not self.bound >= 0:
            raise ValidationError("growth bound must be >= 0")

    def diagonal(self, size: int) -> np.ndarray:
        d = np.asarray(self.values(np.arange(size, dtype=np.int64)), dtype=float)
        if np.any(d < 0):
            raise ValidationError(f"{self.name}: diagonal entries must be nonnegative")
        return d


@dataclass(frozen=True)
class DenseCoeffs:
    """Finite Hermitian positive semidefinite truncation of ``C``.

    Entries outside the stored window are assumed bounded in modulus by
    ``tail_sup`` (0 means the matrix is exactly the stored block padded
    with zeros).
    """

    entries: np.ndarray = field(repr=False)
    tail_sup: float = 0.0
    psd_tol: float = 1e-10

    def __post_init__(self):
        a = np.array(self.entries, dtype=complex)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValidationError("dense coefficient matrix must be square")
        scale = max(1.0, float(np.max(np.abs(a), initial=0.0)))
        if np.max(np.abs(a - a.conj().T), initial=0.0) > 1e-12 * scale:
            raise ValidationError("dense coefficient matrix is not Hermitian")
        a = (a + a.conj().T) / 2
        if a.size:
            lam = np.linalg.eigvalsh(a)[0]
            if lam < -self.psd_tol * max(abs(np.trace(a).real), 1.0):
                raise ValidationError(
                    f"dense coefficient matrix is not positive semidefinite (min eigenvalue {lam:.3g})"
                )
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)

    @property
    def size(self) -> int:
        return self.entries.shape[0]


CoeffMatrix = Union[DiagonalCoeffs, DenseCoeffs]


class KernelValue(NamedTuple):
    value: complex
    tail_bound: float


class PSDResult(NamedTuple):
    min_eigenvalue: float
    passed: bool


def diagonal_from_map(entries: Mapping[int, float], name: str = "diag") -> DiagonalCoeffs:
    """Finitely supported diagonal from ``{n: c_nn}``."""
    items = {int(n): float(v) for n, v in entries.items()}
    if any(n < 0 for n in items):
        raise ValidationError("diagonal indices must be nonnegative")
    if any(not (v >= 0) for v in items.values()):
        raise ValidationError("diagonal entries must be nonnegative")
    support = max(items) + 1 if items else 0
    table = np.zeros(support)
    for n, v in items.items():
        table[n] = v

    def values(n):
        out = np.zeros(n.shape)
        inside = n < support
        out[inside] = table[n[inside]]
        return out

    return DiagonalCoeffs(values, max(table, default=0.0), 0, support, name)


def gamma_diagonal(gamma: GammaSet, extend: bool = True) -> DiagonalCoeffs:
    """0/1 diagonal (a projection) with ones on ``gamma``.

    When ``gamma`` was generated from a digit set with unique expansions and
    ``extend`` is true, membership is decided digit by digit, so the diagonal
    represents the full infinite set rather than the materialized levels.
    """
    gen = gamma.generator
    if extend and gen is not None and gen.extendable:
        return DiagonalCoeffs(
            lambda n: gen.contains(n).astype(float),
            1.0,
            0,
            None,
            f"gamma(B={gen.base}, L={list(gen.digits)})",
        )
    return diagonal_from_map({g: 1.0 for g in gamma.elements}, name="gamma")


def szego_diagonal() -> DiagonalCoeffs:
    return DiagonalCoeffs(lambda n: np.ones(n.shape), 1.0, 0, None, "szego")


def bergman_diagonal() -> DiagonalCoeffs:
    return DiagonalCoeffs(lambda n: (n + 1).astype(float), 1.0, 1, None, "bergman")


def materialize(C: CoeffMatrix, size: int) -> np.ndarray:
    """The ``size x size`` leading block of ``C`` as a dense array."""
    if isinstance(C, DiagonalCoeffs):
        return np.diag(C.diagonal(size)).astype(complex)
    if isinstance(C, DenseCoeffs):
        if size <= C.size:
            return C.entries[:size, :size].copy()
        if C.tail_sup > 0:
            raise TruncationError(f"dense matrix has only {C.size} rows; window {size} requested")
        out = np.zeros((size, size), dtype=complex)
        out[: C.size, : C.size] = C.entries
        return out
    raise UnsupportedError(f"unknown coefficient matrix {type(C).__name__}")


def check_disc(*points) -> None:
    for p in points:
        if not abs(p) < 1:
            raise DomainError(f"point {p} is not in the open unit disc")


def series_tail(r: float, last: int, order: int = 0, bound: float = 1.0) -> float:
    """Upper bound for ``sum_{n > last} bound * (n + 1)**order * r**n``.

    Uses the closed forms for ``order`` 0 and 1 and a ratio-test bound for
    higher orders.
    """
    if r == 0:
        return 0.0
    if r >= 1:
        return math.inf
    n = last + 1
    if order == 0:
        return bound * r**n / (1 - r)
    if order == 1:
        return bound * (n + 1) * r**n / (1 - r) ** 2
    rho = ((n + 2) / (n + 1)) ** order * r
    if rho >= 1:
        return math.inf
    return bound * (n + 1) ** order * r**n / (1 - rho)


def _diag_truncation(C: DiagonalCoeffs, r: float, tol: float) -> int:
    if C.support is not None:
        return max(C.support - 1, 0)
    if r == 0:
        return 0
    # geometric guess, then walk forward until the bound is met
    last = max(int(math.log(tol * (1 - r) / max(C.bound, 1e-300)) / math.log(r)), 0)
    while series_tail(r, last, C.order, C.bound) > tol:
        last = int(last * 1.25) + 8
    while last > 0 and series_tail(r, last - 1, C.order, C.bound) <= tol:
        last -= 1
    return last


def powers(x: complex, size: int) -> np.ndarray:
    """``(x**0, ..., x**(size-1))``."""
    return np.power(complex(x), np.arange(size))


def eval_series(C: CoeffMatrix, w: complex, z: complex, tol: float = 1e-12) -> KernelValue:
    """Evaluate ``K_C(w, z)`` by a truncated double series.

    For diagonal ``C`` the truncation length is chosen from ``|w z|`` and
    the declared growth so the omitted tail is below ``tol / 2``. Dense
    matrices are summed in full; their tail comes from ``tail_sup`` and a
    :class:`TruncationError` is raised if it exceeds ``tol``.
    """
    check_disc(w, z)
    if not tol > 0:
        raise ValidationError("tol must be positive")
    if isinstance(C, DiagonalCoeffs):
        x = np.conj(w) * z
        r = abs(x)
        last = _diag_truncation(C, r, tol / 2)
        c = C.diagonal(last + 1)
        terms = c * powers(x, last + 1)
        value = terms.sum()
        tail = 0.0 if C.support is not None else series_tail(r, last, C.order, C.bound)
        rounding = 4 * (last + 1) * _EPS * float(np.abs(terms).sum())
        return KernelValue(complex(value), float(tail + rounding))
    if isinstance(C, DenseCoeffs):
        N = C.size
        wv = powers(np.conj(w), N)
        zv = powers(z, N)
        value = wv @ C.entries @ zv
        a, b = abs(w), abs(z)
        full = 1 / ((1 - a) * (1 - b))
        tail = C.tail_sup * (full - (1 - a**N) * (1 - b**N) * full)
        if tail > tol:
            raise TruncationError(f"dense truncation tail {tail:.3g} exceeds tol {tol:.3g}")
        rounding = 4 * N * _EPS * float(np.abs(wv) @ np.abs(C.entries) @ np.abs(zv))
        return KernelValue(complex(value), float(tail + rounding))
    raise UnsupportedError(f"unknown coefficient matrix {type(C).__name__}")


def eval_product(base: int, w: complex, z: complex, tol: float = 1e-12) -> KernelValue:
    """Evaluate ``prod_{j >= 0} (1 + (conj(w) z)**(base**j))``.

    This is the kernel of the 0/1 diagonal on ``{sum l_j base**j : l_j in {0,1}}``.
    Factors are added until ``|P| * (exp(s) - 1) <= tol``, where ``P`` is the
    partial product and ``s = |x|**(base**(J+1)) / (1 - |x|)`` bounds the sum
    of the omitted ``|x|**(base**j)``.
    """
    if base < 2:
        raise ValidationError("base must be >= 2")
    check_disc(w, z)
    x = complex(np.conj(w) * z)
    r = abs(x)
    P = 1 + 0j
    y = x
    ry = r
    nfac = 0
    while True:
        P *= 1 + y
        nfac += 1
        y = y**base
        ry = ry**base
        bound = abs(P) * math.expm1(ry / (1 - r))
        if bound <= tol:
            break
    return KernelValue(P, float(bound + 4 * nfac * _EPS * abs(P)))


def szego(w: complex, z: complex) -> complex:
    """Closed-form Szego kernel ``1 / (1 - conj(w) z)``."""
    check_disc(w, z)
    return 1 / (1 - np.conj(w) * z)


def kernel_function(C: CoeffMatrix, tol: float = 1e-12) -> Callable[[complex, complex], complex]:
    return lambda w, z: eval_series(C, w, z, tol).value


def named_kernel(name: str, tol: float = 1e-12) -> Callable[[complex, complex], complex]:
    """Kernel evaluator by name: ``szego``, ``k3``, ``k4`` or ``bergman``."""
    if name == "szego":
        return szego
    if name == "k3":
        return lambda w, z: eval_product(3, w, z, tol).value
    if name == "k4":
        return lambda w, z: eval_product(4, w, z, tol).value
    if name == "bergman":
        return kernel_function(bergman_diagonal(), tol)
    raise ValidationError(f"unknown kernel {name!r}")


def gram_at_points(K: Callable[[complex, complex], complex], points: Sequence[complex]) -> np.ndarray:
    """Sample matrix with entry ``(i, j) = K(points[j], points[i])``."""
    pts = [complex(p) for p in points]
    check_disc(*pts)
    n = len(pts)
    G = np.empty((n, n), dtype=complex)
    for i in range(n):
        for j in range(i, n):
            G[i, j] = K(pts[j], pts[i])
            G[j, i] = np.conj(G[i, j]) if i != j else G[i, j]
    return G


def psd_check(G, tol: float = 1e-10) -> PSDResult:
    """Smallest eigenvalue of Hermitian ``G`` and whether it is ``>= -tol * trace``."""
    G = np.asarray(G, dtype=complex)
    if G.ndim != 2 or G.shape[0] != G.shape[1]:
        raise ValidationError("matrix must be square")
    scale = max(1.0, float(np.max(np.abs(G), initial=0.0)))
    if np.max(np.abs(G - G.conj().T), initial=0.0) > 1e-12 * scale:
        raise ValidationError("matrix is not Hermitian")
    lam = float(np.linalg.eigvalsh((G + G.conj().T) / 2)[0])
    trace = float(np.trace(G).real)
    return PSDResult(lam, lam >= -tol * trace)


def h2_norm_sq(coefficients, N: Optional[int] = None) -> float:
    """``sum_{n < N} |a_n|**2`` (all given coefficients when ``N`` is None)."""
    a = np.asarray(coefficients, dtype=complex)
    if N is not None:
        a = a[:N]
    return float(np.sum(np.abs(a) ** 2))


def span_coefficients(C: CoeffMatrix, xi: Sequence[complex], ws: Sequence[complex], size: int) -> np.ndarray:
    """Taylor coefficients (``n < size``) of ``sum_j xi_j K_C(w_j, .)``.

    Coefficient ``n`` is ``sum_j xi_j sum_m c_mn conj(w_j)**m``, i.e. the
    conjugate of ``(C v)_n`` with ``v = sum_j conj(xi_j) w_vec_j``.
    """
    Cm = materialize(C, size)
    v = sum(np.conj(x) * powers(w, size) for x, w in zip(xi, ws))
    return np.conj(Cm @ v)


def kernel_form(C: CoeffMatrix, xi: Sequence[complex], ws: Sequence[complex], size: int) -> float:
    """``<C v, v>`` with ``v = sum_j conj(xi_j) w_vec_j``, truncated to ``size``."""
    Cm = materialize(C, size)
    v = sum(np.conj(x) * powers(w, size) for x, w in zip(xi, ws))
    return float(np.vdot(v, Cm @ v).real)
