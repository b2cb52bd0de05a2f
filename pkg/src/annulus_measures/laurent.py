"""Truncated Laurent series and closed-form analytic map families.

A ``LaurentMap`` is either an explicit finite coefficient table ``{n: a_n}``
or one of three closed-form families: the identity, a Blaschke factor
``(z - a) / (1 - conj(a) z)``, or a Joukowski map ``z + c^2 / z``.

Area bookkeeping on annuli works through the coefficient table, so
closed-form families are converted on demand by Fourier quadrature of the
Cauchy coefficient integrals (``to_laurent``).  A map with unit-modulus
boundary values satisfies the normalization ``sum_{n != 0} n |a_n|^2 = 1``,
which is what makes the coefficient area formula exact.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as npoly

from .errors import DomainError, NormalizationError, ValidationError

GENERIC = "generic_laurent"
BLASCHKE = "blaschke"
JOUKOWSKI = "joukowski"
IDENTITY = "identity"

# tolerated deviation of sum(n |a_n|^2) from 1 for quadrature-derived tables
PRELIM_TOL = 1e-6

DEFAULT_N_MAX = 64
DEFAULT_QUAD_SAMPLES = 512


@dataclass(frozen=True)
class LaurentMap:
    """An analytic map, as a finite Laurent table or a closed-form family.

    ``coeffs`` is a sorted tuple of ``(n, a_n)`` pairs and is only populated
    for the generic family.  Blaschke maps carry the parameter ``a``
    (``|a| < 1``), Joukowski maps the parameter ``c > 0``.
    """

    family: str
    coeffs: tuple[tuple[int, complex], ...] = ()
    a: complex = 0j
    c: float = 0.0

    def __post_init__(self):
        if self.family == GENERIC:
            if not self.coeffs:
                raise ValidationError("generic Laurent map needs at least one nonzero coefficient")
            if all(abs(v) == 0.0 for _, v in self.coeffs):
                raise ValidationError("all coefficients are zero")
        elif self.family == BLASCHKE:
            if abs(self.a) >= 1.0:
                raise ValidationError(f"Blaschke parameter must satisfy |a| < 1, got |a|={abs(self.a)}")
        elif self.family == JOUKOWSKI:
            if not self.c > 0.0:
                raise ValidationError(f"Joukowski parameter must be positive, got c={self.c}")
        elif self.family != IDENTITY:
            raise ValidationError(f"unknown family {self.family!r}")

    # -- constructors -------------------------------------------------

    @classmethod
    def from_coeffs(cls, table) -> "LaurentMap":
        items = tuple(sorted((int(n), complex(v)) for n, v in dict(table).items() if v != 0))
        return cls(family=GENERIC, coeffs=items)

    @classmethod
    def identity(cls) -> "LaurentMap":
        return cls(family=IDENTITY)

    @classmethod
    def blaschke(cls, a) -> "LaurentMap":
        return cls(family=BLASCHKE, a=complex(a))

    @classmethod
    def joukowski(cls, c: float) -> "LaurentMap":
        return cls(family=JOUKOWSKI, c=float(c))

    # -- structure ----------------------------------------------------

    @property
    def n_min(self) -> int:
        if self.family == GENERIC:
            return min(0, self.coeffs[0][0])
        if self.family == JOUKOWSKI:
            return -1
        return 0

    @property
    def n_max(self) -> int:
        if self.family == GENERIC:
            return max(0, self.coeffs[-1][0])
        return 1

    @property
    def is_taylor(self) -> bool:
        return self.n_min >= 0 and self.family != JOUKOWSKI

    def coeff(self, n: int) -> complex:
        for k, v in self.coeffs:
            if k == n:
                return v
        return 0j

    def radial_domain(self) -> tuple[float, float]:
        """Open radial interval (r_lo, r_hi) on which circles can be sampled."""
        if self.family == BLASCHKE and self.a != 0:
            return (0.0, 1.0 / abs(self.a))
        return (0.0, math.inf)

    @property
    def label(self) -> str:
        if self.family == IDENTITY:
            return "identity"
        if self.family == BLASCHKE:
            return f"blaschke(a={self.a.real!r}{self.a.imag:+}j)"
        if self.family == JOUKOWSKI:
            return f"joukowski(c={self.c!r})"
        return f"laurent[{self.n_min}..{self.n_max}]({len(self.coeffs)} coeffs)"


@dataclass(frozen=True)
class AnnulusSpec:
    """The annulus {1 < |z| < R}; the inner radius is pinned at 1."""

    outer_radius: float
    inner_radius: float = 1.0

    def __post_init__(self):
        if not self.outer_radius > 1.0:
            raise ValidationError(f"outer radius must exceed 1, got {self.outer_radius}")
        if self.inner_radius != 1.0:
            raise ValidationError("inner radius is fixed at 1")


@dataclass(frozen=True)
class SRMembershipVerdict:
    """Sampled checks for the unit-modulus-boundary univalent family."""

    unit_modulus_on_circle: bool
    exceeds_one_inside: bool
    injective_on_samples: bool
    max_unit_circle_deviation: float

    @property
    def passed(self) -> bool:
        return (self.unit_modulus_on_circle
                and self.exceeds_one_inside
                and self.injective_on_samples)

    def __bool__(self) -> bool:
        return self.passed


@functools.lru_cache(maxsize=256)
def _dense_arrays(map_: LaurentMap):
    """Dense coefficient arrays (positive part, negative part) for fast polyval."""
    n_max = max(0, map_.coeffs[-1][0])
    n_min = min(0, map_.coeffs[0][0])
    pos = np.zeros(n_max + 1, dtype=complex)
    neg = np.zeros(-n_min, dtype=complex)  # neg[k-1] = a_{-k}
    for n, v in map_.coeffs:
        if n >= 0:
            pos[n] = v
        else:
            neg[-n - 1] = v
    return pos, neg


def _as_array(z):
    arr = np.asarray(z, dtype=complex)
    return arr, arr.ndim == 0


def evaluate(map_: LaurentMap, z):
    """Evaluate the map at ``z`` (scalar or array)."""
    arr, scalar = _as_array(z)
    if map_.family == IDENTITY:
        out = arr + 0j
    elif map_.family == BLASCHKE:
        denom = 1.0 - np.conj(map_.a) * arr
        if np.any(denom == 0):
            raise DomainError("evaluation at the Blaschke pole 1/conj(a)")
        out = (arr - map_.a) / denom
    elif map_.family == JOUKOWSKI:
        if np.any(arr == 0):
            raise DomainError("Joukowski map has a pole at z = 0")
        out = arr + (map_.c * map_.c) / arr
    else:
        pos, neg = _dense_arrays(map_)
        if len(neg) and np.any(arr == 0):
            raise DomainError("z = 0 with negative-index coefficients present")
        out = npoly.polyval(arr, pos)
        if len(neg):
            w = 1.0 / arr
            out = out + w * npoly.polyval(w, neg)
    return complex(out) if scalar else out


def derivative_at(map_: LaurentMap, z):
    """Evaluate the derivative at ``z`` (scalar or array)."""
    arr, scalar = _as_array(z)
    if map_.family == IDENTITY:
        out = np.ones_like(arr)
    elif map_.family == BLASCHKE:
        denom = 1.0 - np.conj(map_.a) * arr
        if np.any(denom == 0):
            raise DomainError("evaluation at the Blaschke pole 1/conj(a)")
        out = (1.0 - abs(map_.a) ** 2) / (denom * denom)
    elif map_.family == JOUKOWSKI:
        if np.any(arr == 0):
            raise DomainError("Joukowski map has a pole at z = 0")
        out = 1.0 - (map_.c * map_.c) / (arr * arr)
    else:
        pos, neg = _dense_arrays(map_)
        if len(neg) and np.any(arr == 0):
            raise DomainError("z = 0 with negative-index coefficients present")
        dpos = pos[1:] * np.arange(1, len(pos))
        out = npoly.polyval(arr, dpos) if len(dpos) else np.zeros_like(arr)
        if len(neg):
            w = 1.0 / arr
            dneg = neg * -np.arange(1, len(neg) + 1)
            out = out + w * w * npoly.polyval(w, dneg)
    return complex(out) if scalar else out


def to_laurent(map_: LaurentMap, n_max: int = DEFAULT_N_MAX,
               samples: int = DEFAULT_QUAD_SAMPLES, quad_radius: float | None = None) -> LaurentMap:
    """Convert a closed-form family to an explicit coefficient table.

    Coefficients come from trapezoidal quadrature of the Cauchy integrals on
    the circle |z| = quad_radius, which for uniform samples is a plain DFT.
    Generic maps pass through unchanged.
    """
    if map_.family == GENERIC:
        return map_
    if map_.family == IDENTITY:
        return LaurentMap.from_coeffs({1: 1.0})
    if map_.family == JOUKOWSKI:
        return LaurentMap.from_coeffs({1: 1.0, -1: map_.c * map_.c})
    # Blaschke factor: Taylor series with radius of convergence 1/|a|
    if map_.a == 0:
        return LaurentMap.from_coeffs({1: 1.0})
    if samples < 2 * n_max + 2:
        raise ValidationError("need at least 2*n_max + 2 quadrature samples")
    pole = 1.0 / abs(map_.a)
    r0 = math.sqrt(pole) if quad_radius is None else float(quad_radius)
    if not 0.0 < r0 < pole:
        raise ValidationError(f"quadrature radius {r0} outside analyticity disk (0, {pole})")
    t = 2.0 * np.pi * np.arange(samples) / samples
    vals = evaluate(map_, r0 * np.exp(1j * t))
    c_hat = np.fft.fft(vals) / samples
    scale = np.max(np.abs(c_hat))
    table = {}
    for n in range(-n_max, n_max + 1):
        raw = c_hat[n % samples]
        # drop aliasing noise before undoing the radius scaling; the raw DFT
        # magnitude is the honest significance measure at the quadrature radius
        if abs(raw) > 1e-15 * scale:
            table[n] = raw / r0 ** n
    return LaurentMap.from_coeffs(table)


def rotated(map_: LaurentMap, theta: float) -> LaurentMap:
    """The map ``z -> f(e^{i theta} z)`` as an explicit table (a_n -> e^{i n theta} a_n)."""
    base = to_laurent(map_)
    phase = complex(math.cos(theta), math.sin(theta))
    return LaurentMap.from_coeffs({n: v * phase ** n for n, v in base.coeffs})


def _require_generic(map_: LaurentMap, op: str) -> LaurentMap:
    if map_.family != GENERIC:
        raise ValidationError(f"{op} needs an explicit coefficient table; call to_laurent first")
    return map_


def check_prelim_constraint(map_: LaurentMap) -> float:
    """Signed deviation of sum_{n != 0} n |a_n|^2 from 1."""
    m = _require_generic(map_, "check_prelim_constraint")
    total = 0.0
    for n, v in m.coeffs:
        if n != 0:
            total += n * (v.real * v.real + v.imag * v.imag)
    return total - 1.0


def _checked_coeffs(map_: LaurentMap, rho: float):
    m = _require_generic(map_, "area computation")
    if not rho >= 1.0:
        raise DomainError(f"area formula applies for rho >= 1, got {rho}")
    lo, hi = m.radial_domain()
    if not lo < rho < hi:
        raise DomainError(f"rho={rho} outside analyticity interval ({lo}, {hi})")
    dev = check_prelim_constraint(m)
    if abs(dev) > PRELIM_TOL:
        raise NormalizationError(
            f"sum(n |a_n|^2) deviates from 1 by {dev:.3e}; map is not area-normalized "
            "on the unit circle")
    return m


def annulus_image_area(map_: LaurentMap, rho: float) -> float:
    """Area of the image of the annulus {1 < |z| < rho}.

    Green's theorem turns the enclosed area of the image curve into a
    coefficient sum: area + pi = pi * sum_{n != 0} n |a_n|^2 rho^{2n}.
    """
    m = _checked_coeffs(map_, rho)
    total = 0.0
    for n, v in m.coeffs:
        if n != 0:
            total += n * (v.real * v.real + v.imag * v.imag) * rho ** (2 * n)
    return math.pi * (total - 1.0)


def area_lemma_gap(map_: LaurentMap, rho: float) -> float:
    """Excess of the image area over the area of the annulus itself.

    Equals pi rho^2 sum_{n != 0} n |a_n|^2 (rho^{2n-2} - 1); every term is
    nonnegative, and the sum vanishes exactly when the only nonzero
    coefficient is a_1 with |a_1| = 1 (identity up to rotation).
    """
    m = _checked_coeffs(map_, rho)
    total = 0.0
    for n, v in m.coeffs:
        if n != 0:
            total += n * (v.real * v.real + v.imag * v.imag) * (rho ** (2 * n - 2) - 1.0)
    return math.pi * rho * rho * total


def is_rotation(map_: LaurentMap, tol: float = 1e-12) -> bool:
    """True if the map is z -> e^{i theta} z (the identity class for strictness tests)."""
    if map_.family == IDENTITY:
        return True
    if map_.family == BLASCHKE:
        return map_.a == 0
    if map_.family == JOUKOWSKI:
        return False
    sig = [(n, v) for n, v in map_.coeffs if abs(v) > tol]
    return len(sig) == 1 and sig[0][0] == 1 and abs(abs(sig[0][1]) - 1.0) <= tol


def validate_sr_membership(map_: LaurentMap, spec: AnnulusSpec, samples: int = 512,
                           unit_modulus_tol: float = 1e-9) -> SRMembershipVerdict:
    """Sampled membership checks: |f| = 1 on the unit circle, |f| > 1 inside
    the annulus, and an injectivity proxy (no pairwise near-coincidence of
    images over a 2-D grid).  Returns a verdict; never raises on failure.
    """
    if samples < 64:
        raise ValidationError("need at least 64 boundary samples")
    R = spec.outer_radius
    try:
        t = 2.0 * np.pi * np.arange(samples) / samples
        boundary = evaluate(map_, np.exp(1j * t))
        dev = float(np.max(np.abs(np.abs(boundary) - 1.0)))
        unit_ok = dev <= unit_modulus_tol

        n_r = 12
        n_ang = min(samples, 96)
        radii = R ** ((np.arange(n_r) + 1.0) / (n_r + 1.0))
        ang = 2.0 * np.pi * np.arange(n_ang) / n_ang
        zgrid = (radii[:, None] * np.exp(1j * ang)[None, :]).ravel()
        w = evaluate(map_, zgrid)
        exceeds = bool(np.min(np.abs(w)) > 1.0 - 1e-12)

        scale = math.hypot(float(np.ptp(w.real)), float(np.ptp(w.imag)))
        dmat = np.abs(w[:, None] - w[None, :])
        np.fill_diagonal(dmat, np.inf)
        injective = bool(np.min(dmat) > 1e-8 * max(scale, 1e-300))
    except (DomainError, FloatingPointError):
        return SRMembershipVerdict(False, False, False, math.inf)
    return SRMembershipVerdict(unit_ok, exceeds, injective, dev)
