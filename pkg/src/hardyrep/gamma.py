"""Digit-set frequency sets and their difference sets.

A digit set ``{sum_j l_j B**j : l_j in L}`` is materialized up to a finite
level. Difference sets are infinite in general, so every query here takes an
explicit bound and answers only inside ``[-bound, bound]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Optional

import numpy as np

from .errors import CapacityError, ValidationError

__all__ = [
    "DigitGenerator",
    "GammaSet",
    "generate_digit_set",
    "gamma_from_elements",
    "difference_set",
    "check_coverage",
    "check_disjoint_difference",
    "gamma3",
    "gamma4",
    "gamma4_prime",
    "gamma_to_dict",
    "gamma_from_dict",
]

_INT64_MAX = 2**63 - 1


@dataclass(frozen=True)
class DigitGenerator:
    base: int
    digits: tuple
    max_level: int

    @property
    def extendable(self) -> bool:
        """Whether the all-levels set is decided digit by digit.

        Needs 0 among the digits (so levels nest) and all digits below the
        base (so base-``B`` expansions are unique).
        """
        return 0 in self.digits and all(0 <= d < self.base for d in self.digits)

    def contains(self, n) -> np.ndarray:
        """Membership in the union over all levels of the digit set."""
        if not self.extendable:
            raise ValidationError("digit set has no digit-wise membership test")
        n = np.asarray(n, dtype=np.int64)
        allowed = np.zeros(self.base, dtype=bool)
        allowed[list(self.digits)] = True
        ok = n >= 0
        rest = np.where(ok, n, 0)
        while np.any(rest > 0):
            ok &= allowed[rest % self.base]
            rest //= self.base
        return ok


@dataclass(frozen=True)
class GammaSet:
    """Finite, sorted set of distinct nonnegative integers.

    ``generator`` records the digit-set parameters when the set was produced
    by :func:`generate_digit_set`.
    """

    elements: tuple
    generator: Optional[DigitGenerator] = None

    def __post_init__(self):
        els = tuple(sorted({int(e) for e in self.elements}))
        if els and els[0] < 0:
            raise ValidationError("GammaSet elements must be nonnegative")
        if els and els[-1] > _INT64_MAX:
            raise CapacityError("GammaSet element exceeds 64-bit range")
        object.__setattr__(self, "elements", els)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, n):
        return n in self._lookup

    @cached_property
    def _lookup(self) -> frozenset:
        return frozenset(self.elements)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.elements, dtype=np.int64)


def generate_digit_set(base: int, digits: Iterable[int], max_level: int) -> GammaSet:
    """Enumerate ``{sum_{j=0}^{max_level} l_j base**j : l_j in digits}``.

    >>> generate_digit_set(4, (0, 1), 2).elements
    (0, 1, 4, 5, 16, 17, 20, 21)
    """
    digits = tuple(int(d) for d in digits)
    if base < 2:
        raise ValidationError("base must be >= 2")
    if not digits:
        raise ValidationError("digit list is empty")
    if len(set(digits)) != len(digits):
        raise ValidationError("digits are not distinct")
    if any(d < 0 for d in digits):
        raise ValidationError("digits must be nonnegative")
    if max_level < 0:
        raise ValidationError("max_level must be >= 0")
    if base ** (max_level + 1) > _INT64_MAX or max(digits) * base ** (max_level + 1) > _INT64_MAX:
        raise CapacityError(f"base**{max_level + 1} exceeds the 64-bit range")

    elems = np.zeros(1, dtype=np.int64)
    d = np.asarray(digits, dtype=np.int64)
    for j in range(max_level + 1):
        elems = np.add.outer(elems, d * base**j).ravel()
    gen = DigitGenerator(base, digits, max_level)
    return GammaSet(tuple(np.unique(elems).tolist()), gen)


def gamma_from_elements(elements: Iterable[int]) -> GammaSet:
    return GammaSet(tuple(elements))


def gamma4(max_level: int) -> GammaSet:
    return generate_digit_set(4, (0, 1), max_level)


def gamma3(max_level: int) -> GammaSet:
    return generate_digit_set(3, (0, 1), max_level)


def gamma4_prime(max_level: int) -> GammaSet:
    return generate_digit_set(4, (0, 2), max_level)


def difference_set(gamma: GammaSet, bound: int) -> np.ndarray:
    """Sorted array of ``{x - y : x, y in gamma}`` restricted to ``[-bound, bound]``."""
    if bound < 0:
        raise ValidationError("bound must be >= 0")
    a = gamma.as_array()
    if a.size == 0:
        return np.zeros(0, dtype=np.int64)
    out = np.zeros(2 * bound + 1, dtype=bool)
    # row blocks keep the pair table small for large sets
    step = max(1, 2**22 // a.size)
    for i in range(0, a.size, step):
        diffs = np.subtract.outer(a[i : i + step], a).ravel()
        diffs = diffs[np.abs(diffs) <= bound]
        out[diffs + bound] = True
    return np.flatnonzero(out).astype(np.int64) - bound


def check_coverage(gamma: GammaSet, bound: int) -> Optional[int]:
    """Smallest ``n`` in ``[0, bound]`` missing from the difference set, or None.

    The difference set is symmetric, so a missing ``n`` means ``-n`` is
    missing too. ``None`` means every integer in ``[-bound, bound]`` is a
    difference.
    """
    diffs = difference_set(gamma, bound)
    present = np.zeros(bound + 1, dtype=bool)
    present[diffs[diffs >= 0]] = True
    missing = np.flatnonzero(~present)
    return int(missing[0]) if missing.size else None


def check_disjoint_difference(a: GammaSet, gamma: GammaSet, bound: int) -> list[int]:
    """Elements of ``a`` in ``[0, bound]`` that are differences of ``gamma``."""
    diffs = difference_set(gamma, bound)
    cand = a.as_array()
    cand = cand[(cand >= 0) & (cand <= bound)]
    return sorted(int(x) for x in np.intersect1d(cand, diffs))


def gamma_to_dict(gamma: GammaSet) -> dict:
    out = {"elements": list(gamma.elements)}
    if gamma.generator is not None:
        g = gamma.generator
        out.update(base=g.base, digits=list(g.digits), maxLevel=g.max_level)
    return out


def gamma_from_dict(d: Mapping) -> GammaSet:
    """Read ``{"base", "digits", "maxLevel"}`` or ``{"elements": [...]}``."""
    try:
        if "base" in d:
            return generate_digit_set(int(d["base"]), d["digits"], int(d["maxLevel"]))
        return gamma_from_elements(int(x) for x in d["elements"])
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"malformed gamma description: {exc}") from exc
