"""Headline per-radius measurements: reduced moduli, the Teichmüller
deficiency T(r), and the ratio functions psi.

Conventions, for the image curve J(r) of |z| = r:

* ``m2 = -(1/2 pi) log Cap(J)`` (reduced modulus of the exterior at infinity),
* ``m1 = -(1/2 pi) log Cap(1/J)`` (via the reciprocal curve),
* ``t  = -(m1 + m2) = (1/2 pi) log(Cap(J) Cap(1/J)) >= 0``, zero exactly for
  circles centered at the origin.

Capacity of the filled union f(A(1,r)) ∪ closed unit disk equals the
capacity of its outer boundary J(r), so psi_cap reduces to Cap(J)/r.  The
union n-diameter genuinely searches both boundary curves.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass

import numpy as np

from .capacity_engine import (DEFAULT_N_SEQUENCE, capacity as curve_capacity,
                              capacity_from_curve, inverse_curve_fn, map_curve_fn,
                              n_diameter_union)
from .curves import DEFAULT_SAMPLES, oscillation_ratio, sample_curve
from .errors import ValidationError
from .laurent import (AnnulusSpec, LaurentMap, annulus_image_area, derivative_at,
                      evaluate, to_laurent, validate_sr_membership)

TWO_PI = 2.0 * math.pi

CSV_COLUMNS = ("r", "cap_J", "cap_inv_J", "m1", "m2", "t", "psi_cap", "psi_ndiam",
               "psi_area", "polya_slack", "serial_slack", "oscillation")

DEFAULT_NDIAM_N = 8


@dataclass(frozen=True)
class MeasureRecord:
    r: float
    cap_J: float
    cap_inv_J: float
    m1: float
    m2: float
    t: float
    psi_cap: float
    psi_ndiam: float
    psi_area: float
    polya_slack: float
    serial_slack: float
    oscillation: float

    def as_row(self) -> tuple[float, ...]:
        return tuple(getattr(self, c) for c in CSV_COLUMNS)


@dataclass(frozen=True)
class MeasureReport:
    map_id: str
    outer_radius: float
    records: tuple[MeasureRecord, ...]
    errors: tuple[str, ...] = ()
    warnings: tuple[str, ...] = ()

    @property
    def r_grid(self) -> tuple[float, ...]:
        return tuple(rec.r for rec in self.records)

    @property
    def degraded(self) -> bool:
        return bool(self.errors or self.warnings)


def _ensure_membership(map_: LaurentMap, outer: float, samples: int = 512) -> None:
    if outer <= 1.0 + 1e-12:
        return  # degenerate annulus: nothing between the circles to check
    verdict = validate_sr_membership(map_, AnnulusSpec(outer_radius=outer), samples=samples)
    if not verdict.passed:
        raise ValidationError(
            "map fails membership checks on the annulus (unit_modulus=%s, exceeds_one=%s, "
            "injective=%s, max unit-circle deviation %.3e)" % (
                verdict.unit_modulus_on_circle, verdict.exceeds_one_inside,
                verdict.injective_on_samples, verdict.max_unit_circle_deviation))


def _capacity_pair(map_: LaurentMap, r: float, n_sequence):
    est_j = capacity_from_curve(map_curve_fn(map_, r), n_sequence)
    est_i = capacity_from_curve(inverse_curve_fn(map_, r), n_sequence)
    return est_j, est_i


def teichmuller_deficiency(map_: LaurentMap, r: float,
                           n_sequence=DEFAULT_N_SEQUENCE, validate: bool = True) -> float:
    """T(r) = (1/2 pi) log(Cap(J(r)) * Cap(1/J(r))), nonnegative up to the
    capacity noise floor; measures how far J(r) is from a centered circle."""
    if validate:
        _ensure_membership(map_, r)
    est_j, est_i = _capacity_pair(map_, r, n_sequence)
    return math.log(est_j.value * est_i.value) / TWO_PI


def psi_cap(map_: LaurentMap, r: float, n_sequence=DEFAULT_N_SEQUENCE,
            validate: bool = True) -> float:
    """Cap(f(A(1,r)) ∪ unit disk) / Cap(r disk) = Cap(J(r)) / r."""
    if validate:
        _ensure_membership(map_, r)
    return curve_capacity(map_, r, n_sequence).value / r


def psi_ndiam(map_: LaurentMap, r: float, n: int, validate: bool = True) -> float:
    """n-diameter ratio for the union of the image region and the unit disk.

    The numerator optimizer draws candidates from both boundary curves (the
    image curve and the unit circle); the denominator is the closed-form
    disk value r * n^{1/(n-1)}.
    """
    if n < 2:
        raise ValidationError("n-diameter needs n >= 2")
    if validate:
        _ensure_membership(map_, r)
    fns = [map_curve_fn(map_, r), lambda th: np.exp(1j * np.asarray(th, dtype=float))]
    value, _, _ = n_diameter_union(fns, n)
    return value / (r * n ** (1.0 / (n - 1)))


def psi_area(map_: LaurentMap, r: float) -> float:
    """Area ratio (pi + h(r)) / (pi r^2) from the coefficient area formula.

    Needs the unit-circle normalization (checked), not full membership: the
    formula is exact for any normalized Laurent map.
    """
    table = to_laurent(map_)
    h = annulus_image_area(table, r)
    return (math.pi + h) / (math.pi * r * r)


def polya_slack(map_: LaurentMap, r: float, n_sequence=DEFAULT_N_SEQUENCE,
                validate: bool = True) -> float:
    """psi_cap(r)^2 - psi_area(r) >= 0 (area-capacity inequality)."""
    pc = psi_cap(map_, r, n_sequence, validate=validate)
    return pc * pc - psi_area(map_, r)


def serial_rule_slack(map_: LaurentMap, r: float, n_sequence=DEFAULT_N_SEQUENCE,
                      validate: bool = True) -> float:
    """(1/2 pi) log psi_cap(r) - T(r) >= 0 (modulus superadditivity under
    nesting).  Shares one capacity pair so the two sides are consistent."""
    if validate:
        _ensure_membership(map_, r)
    est_j, est_i = _capacity_pair(map_, r, n_sequence)
    t = math.log(est_j.value * est_i.value) / TWO_PI
    return math.log(est_j.value / r) / TWO_PI - t


def reduced_moduli_disk_case(map_: LaurentMap, r: float,
                             n_sequence=DEFAULT_N_SEQUENCE) -> tuple[float, float]:
    """Disk-case reduced moduli for a Taylor map with f(0) = 0, f'(0) != 0:
    m1 = (1/2 pi) log(r |f'(0)|) and m2 = -(1/2 pi) log Cap(f(r D)).
    Their sum is nonpositive, zero exactly when the image is a centered disk.
    """
    if not map_.is_taylor:
        raise ValidationError("disk case needs a Taylor map (no negative-index coefficients)")
    f0 = evaluate(map_, 0j)
    if abs(f0) > 1e-12:
        raise ValidationError(f"disk case needs f(0) = 0, got f(0) = {f0}")
    d0 = derivative_at(map_, 0j)
    if abs(d0) == 0.0:
        raise ValidationError("disk case needs f'(0) != 0")
    if not 0.0 < r < 1.0:
        raise ValidationError(f"disk-case radius must lie in (0, 1), got {r}")
    _check_disk_injectivity(map_, r)
    m1 = math.log(r * abs(d0)) / TWO_PI
    m2 = -math.log(curve_capacity(map_, r, n_sequence).value) / TWO_PI
    return m1, m2


def _check_disk_injectivity(map_: LaurentMap, r: float) -> None:
    radii = r * (np.arange(1, 25) / 24.0)
    ang = 2.0 * np.pi * np.arange(64) / 64.0
    zs = (radii[:, None] * np.exp(1j * ang)[None, :]).ravel()
    w = evaluate(map_, zs)
    scale = math.hypot(float(np.ptp(w.real)), float(np.ptp(w.imag)))
    d = np.abs(w[:, None] - w[None, :])
    np.fill_diagonal(d, np.inf)
    if float(np.min(d)) <= 1e-8 * max(scale, 1e-300):
        raise ValidationError(f"sampled injectivity check failed on |z| <= {r}")


def log_uniform_grid(outer_radius: float, grid_size: int) -> np.ndarray:
    """r_i = R^{i/g}, i = 0..g-1: uniform in log r, last point below R."""
    if grid_size < 8:
        raise ValidationError("grid size must be at least 8")
    i = np.arange(grid_size)
    return outer_radius ** (i / grid_size)


def build_report(map_: LaurentMap, spec: AnnulusSpec, grid_size: int,
                 n_sequence=DEFAULT_N_SEQUENCE, ndiam_n: int = DEFAULT_NDIAM_N,
                 samples: int = DEFAULT_SAMPLES, validate: bool = True) -> MeasureReport:
    """Evaluate every measure on the log-uniform radius grid.

    Per-radius failures are collected as error annotations and produce a
    partial report; a membership failure of the map itself raises.
    """
    if validate:
        _ensure_membership(map_, spec.outer_radius)
    grid = log_uniform_grid(spec.outer_radius, grid_size)
    table = to_laurent(map_)
    records = []
    errors = []
    warnings = []
    for r in grid:
        r = float(r)
        try:
            est_j, est_i = _capacity_pair(map_, r, n_sequence)
            for est, side in ((est_j, "J"), (est_i, "1/J")):
                for w in est.warnings:
                    warnings.append(f"r={r:.6g} [{side}]: {w}")
            t = math.log(est_j.value * est_i.value) / TWO_PI
            m2 = -math.log(est_j.value) / TWO_PI
            m1 = -math.log(est_i.value) / TWO_PI
            p_cap = est_j.value / r
            p_area = (math.pi + annulus_image_area(table, r)) / (math.pi * r * r)
            fns = [map_curve_fn(map_, r),
                   lambda th: np.exp(1j * np.asarray(th, dtype=float))]
            union_val, _, union_conv = n_diameter_union(fns, ndiam_n)
            if not union_conv:
                warnings.append(f"r={r:.6g}: union n-diameter hit the sweep cap")
            p_nd = union_val / (r * ndiam_n ** (1.0 / (ndiam_n - 1)))
            osc = oscillation_ratio(sample_curve(map_, r, samples))
            records.append(MeasureRecord(
                r=r, cap_J=est_j.value, cap_inv_J=est_i.value, m1=m1, m2=m2, t=t,
                psi_cap=p_cap, psi_ndiam=p_nd, psi_area=p_area,
                polya_slack=p_cap * p_cap - p_area,
                serial_slack=math.log(p_cap) / TWO_PI - t,
                oscillation=osc))
        except Exception as exc:  # per-radius failure, keep going
            errors.append(f"r={r:.6g}: {exc}")
    return MeasureReport(map_id=map_.label, outer_radius=spec.outer_radius,
                         records=tuple(records), errors=tuple(errors),
                         warnings=tuple(warnings))


def validate_report_invariants(report: MeasureReport, tol: float = 1e-12) -> None:
    """Recompute the defining identities from the stored fields."""
    for rec in report.records:
        if not (rec.cap_J > 0 and rec.cap_inv_J > 0):
            raise ValidationError(f"r={rec.r}: capacities must be positive")
        t_id = math.log(rec.cap_J * rec.cap_inv_J) / TWO_PI
        if abs(rec.t - t_id) > tol:
            raise ValidationError(f"r={rec.r}: t fails its defining identity by {rec.t - t_id:.3e}")
        m2_id = -math.log(rec.cap_J) / TWO_PI
        if abs(rec.m2 - m2_id) > tol:
            raise ValidationError(f"r={rec.r}: m2 fails its defining identity by {rec.m2 - m2_id:.3e}")


def report_to_json_dict(report: MeasureReport) -> dict:
    return {
        "map_id": report.map_id,
        "outer_radius": report.outer_radius,
        "records": [dict(zip(CSV_COLUMNS, rec.as_row())) for rec in report.records],
        "errors": list(report.errors),
        "warnings": list(report.warnings),
    }


def report_to_csv(report: MeasureReport, fh) -> None:
    fh.write(",".join(CSV_COLUMNS) + "\n")
    for rec in report.records:
        fh.write(",".join(f"{v:.17g}" for v in rec.as_row()) + "\n")


def report_from_csv(text_or_fh, map_id: str = "csv-import") -> MeasureReport:
    fh = io.StringIO(text_or_fh) if isinstance(text_or_fh, str) else text_or_fh
    header = fh.readline().strip().split(",")
    if tuple(header) != CSV_COLUMNS:
        raise ValidationError(f"unexpected CSV columns {header}")
    records = []
    for line in fh:
        if not line.strip():
            continue
        vals = [float(x) for x in line.strip().split(",")]
        records.append(MeasureRecord(**dict(zip(CSV_COLUMNS, vals))))
    outer = max((rec.r for rec in records), default=1.0)
    return MeasureReport(map_id=map_id, outer_radius=max(outer, 1.0 + 1e-9),
                         records=tuple(records))
