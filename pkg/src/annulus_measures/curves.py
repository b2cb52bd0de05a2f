"""Discretized image curves and elementary geometric measurements."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateCurveError, DomainError, ValidationError
from .laurent import LaurentMap, evaluate

DEFAULT_SAMPLES = 1024


@dataclass(frozen=True, eq=False)
class CurveSample:
    """Image of the circle |z| = radius, sampled at uniform angles 2 pi k / M."""

    radius: float
    points: np.ndarray

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=complex)
        if pts.ndim != 1 or len(pts) < 2:
            raise ValidationError("curve sample needs at least two points")
        nxt = np.roll(pts, -1)
        if np.any(np.abs(nxt - pts) == 0.0):
            raise ValidationError("consecutive curve points coincide")
        object.__setattr__(self, "points", pts)

    @property
    def sample_count(self) -> int:
        return len(self.points)

    @property
    def angles(self) -> np.ndarray:
        m = len(self.points)
        return 2.0 * np.pi * np.arange(m) / m


def sample_curve(map_: LaurentMap, r: float, m: int = DEFAULT_SAMPLES) -> CurveSample:
    """Sample the image curve f(r e^{i t}) at ``m`` uniform angles."""
    if m < 2:
        raise ValidationError("need at least two samples")
    lo, hi = map_.radial_domain()
    if not lo < r < hi:
        raise DomainError(f"radius {r} outside analyticity interval ({lo}, {hi})")
    t = 2.0 * np.pi * np.arange(m) / m
    return CurveSample(radius=float(r), points=evaluate(map_, r * np.exp(1j * t)))


def invert_curve(curve: CurveSample) -> CurveSample:
    """Pointwise reciprocal of the curve (the set {1/z : z on the curve})."""
    mods = np.abs(curve.points)
    if np.min(mods) < 1e-12:
        raise DegenerateCurveError("curve passes too close to the origin to invert")
    return CurveSample(radius=curve.radius, points=1.0 / curve.points)


def shoelace_area(curve: CurveSample) -> float:
    """Absolute polygon area of the closed polyline through the sample points."""
    z = curve.points
    nxt = np.roll(z, -1)
    return 0.5 * abs(float(np.sum((np.conj(z) * nxt).imag)))


def curve_diameter(curve: CurveSample) -> float:
    """Maximum pairwise distance among the sampled points."""
    pts = curve.points
    m = len(pts)
    if m > 512:
        # diameter is attained on the convex hull; fall back to brute force
        # for degenerate (collinear) inputs
        try:
            from scipy.spatial import ConvexHull, QhullError
            hull = ConvexHull(np.column_stack([pts.real, pts.imag]))
            pts = pts[hull.vertices]
        except (QhullError, ValueError):
            pass
    best = 0.0
    chunk = 1024
    for i in range(0, len(pts), chunk):
        block = np.abs(pts[i:i + chunk, None] - pts[None, :])
        best = max(best, float(block.max()))
    return best


def oscillation_ratio(curve: CurveSample) -> float:
    """max |z| / min |z| over the sample; equals 1 only for circles centered at 0."""
    mods = np.abs(curve.points)
    lo = float(np.min(mods))
    if lo < 1e-12:
        raise DegenerateCurveError("curve passes too close to the origin")
    return float(np.max(mods)) / lo


def curve_to_csv(curve: CurveSample, fh) -> None:
    """Write columns t, re, im (17 significant digits, one row per sample)."""
    fh.write("t,re,im\n")
    for t, z in zip(curve.angles, curve.points):
        fh.write(f"{t:.17g},{z.real:.17g},{z.imag:.17g}\n")
