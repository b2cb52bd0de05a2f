"""Discrete convexity and monotonicity verdicts for sampled functions.

Verdicts are computed from raw second and first differences on a uniform
grid (the measurement pipeline samples uniformly in log r, so uniformity is
a precondition, not something to renormalize away).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .capacity_engine import hadamard_log_max
from .errors import GridSpacingError, ValidationError
from .laurent import LaurentMap

UNIFORMITY_RTOL = 1e-9


@dataclass(frozen=True)
class SampledFunction:
    """Ordinates over strictly increasing abscissae (stored as log r)."""

    abscissae: np.ndarray
    ordinates: np.ndarray
    transform: str = "linear"  # 'linear' | 'log'

    def __post_init__(self):
        x = np.asarray(self.abscissae, dtype=float)
        y = np.asarray(self.ordinates, dtype=float)
        if x.shape != y.shape or x.ndim != 1:
            raise ValidationError("abscissae and ordinates must be 1-d of equal length")
        if np.any(np.diff(x) <= 0):
            raise ValidationError("abscissae must be strictly increasing")
        if self.transform not in ("linear", "log"):
            raise ValidationError(f"unknown transform {self.transform!r}")
        if self.transform == "log":
            if np.any(y <= 0):
                raise ValidationError("log transform requires positive ordinates")
            y = np.log(y)
        object.__setattr__(self, "abscissae", x)
        object.__setattr__(self, "ordinates", y)

    @classmethod
    def from_radii(cls, radii, values, transform: str = "linear") -> "SampledFunction":
        """Samples indexed by radius; abscissae become log r."""
        r = np.asarray(radii, dtype=float)
        if np.any(r <= 0):
            raise ValidationError("radii must be positive")
        return cls(abscissae=np.log(r), ordinates=np.asarray(values, dtype=float),
                   transform=transform)


@dataclass(frozen=True)
class ConvexityVerdict:
    """Raw-difference analysis of a uniformly sampled function."""

    is_convex: bool
    min_second_difference: float
    is_nondecreasing: bool
    min_first_difference: float
    spacing: float
    first_differences: np.ndarray = field(repr=False)
    tolerance: float = 0.0
    violations: tuple[tuple[int, float], ...] = ()

    def is_strictly_increasing_at(self, tol: float) -> bool:
        """Every first difference at least tol * (grid spacing); scale-aware
        strictness that a small noise floor cannot fake."""
        return bool(np.all(self.first_differences >= tol * self.spacing))

    def to_json_dict(self) -> dict:
        return {
            "is_convex": self.is_convex,
            "min_second_difference": self.min_second_difference,
            "is_nondecreasing": self.is_nondecreasing,
            "min_first_difference": self.min_first_difference,
            "spacing": self.spacing,
            "tolerance": self.tolerance,
            "violations": [[int(i), float(v)] for i, v in self.violations],
        }


def _uniform_spacing(x: np.ndarray) -> float:
    steps = np.diff(x)
    h = float(np.mean(steps))
    if np.max(np.abs(steps - h)) > UNIFORMITY_RTOL * abs(h):
        raise GridSpacingError("abscissae are not uniformly spaced; resample on a uniform grid")
    return h


def check_convexity(fn: SampledFunction, tol: float = 1e-6) -> ConvexityVerdict:
    """Second-difference convexity verdict on a uniform grid."""
    y = fn.ordinates
    if len(y) < 3:
        raise ValidationError("need at least three samples for second differences")
    h = _uniform_spacing(fn.abscissae)
    d2 = y[2:] - 2.0 * y[1:-1] + y[:-2]
    d1 = np.diff(y)
    violations = tuple((int(i + 1), float(v)) for i, v in enumerate(d2) if v < -tol)
    return ConvexityVerdict(
        is_convex=bool(np.min(d2) >= -tol),
        min_second_difference=float(np.min(d2)),
        is_nondecreasing=bool(np.min(d1) >= -tol),
        min_first_difference=float(np.min(d1)),
        spacing=h,
        first_differences=d1,
        tolerance=tol,
        violations=violations,
    )


def check_monotone_from_convexity(fn: SampledFunction, initial_value: float,
                                  tol: float = 1e-6) -> ConvexityVerdict:
    """Monotonicity verdict for a convex sample anchored at its left end.

    A convex function with nonnegative initial slope is nondecreasing, and
    once it has left the initial value it cannot return to a plateau: first
    differences are nondecreasing, so after any difference exceeds tol all
    later ones must too.  Violations of that consequence are appended.
    """
    verdict = check_convexity(fn, tol)
    if not verdict.is_convex:
        raise ValidationError("monotonicity-from-convexity requires a convex sample")
    y = fn.ordinates
    if abs(float(y[0]) - initial_value) > tol:
        raise ValidationError(
            f"first ordinate {y[0]} does not match the declared initial value {initial_value}")
    extra = []
    fd = verdict.first_differences
    growing = False
    for i, d in enumerate(fd):
        if growing and d <= tol:
            extra.append((int(i + 1), float(d)))
        if d > tol:
            growing = True
    if extra:
        merged = tuple(sorted(set(verdict.violations) | set(extra)))
        verdict = ConvexityVerdict(
            is_convex=verdict.is_convex,
            min_second_difference=verdict.min_second_difference,
            is_nondecreasing=verdict.is_nondecreasing,
            min_first_difference=verdict.min_first_difference,
            spacing=verdict.spacing,
            first_differences=verdict.first_differences,
            tolerance=verdict.tolerance,
            violations=merged,
        )
    return verdict


def hadamard_three_circles_check(map_: LaurentMap, angles, r1: float, r: float, r2: float,
                                 samples: int = 1024) -> float:
    """Slack of the three-circles interpolation bound for the pairwise
    difference product: lam * logmax(r1) + (1 - lam) * logmax(r2) - logmax(r)
    with lam = log(r2/r) / log(r2/r1).  Nonnegative for analytic maps, zero
    when log max is exactly log-linear (circles) or at the endpoints."""
    if not (r1 < r2 and r1 <= r <= r2):
        raise ValidationError(f"radii must satisfy r1 <= r <= r2 with r1 < r2, got ({r1}, {r}, {r2})")
    lam = np.log(r2 / r) / np.log(r2 / r1)
    l1 = hadamard_log_max(map_, angles, r1, samples)
    lm = hadamard_log_max(map_, angles, r, samples)
    l2 = hadamard_log_max(map_, angles, r2, samples)
    return float(lam * l1 + (1.0 - lam) * l2 - lm)
