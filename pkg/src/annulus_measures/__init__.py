"""Conformal-geometry measurements for analytic maps on disks and annuli.

Computes logarithmic capacity (via Fekete-point n-diameters), image areas
(via Laurent coefficients), reduced moduli, the Teichmüller deficiency of
image curves, the derived ratio functions, and the principal Dirichlet
frequency of image domains; ships discrete convexity/monotonicity verdicts
and a CLI that turns the classical inequalities into executable checks.
"""

from .capacity_engine import (CapacityEstimate, FeketeResult, capacity, capacity_from_curve,
                       hadamard_product_max, inverse_curve_fn, map_curve_fn,
                       n_diameter_brute, n_diameter_refined, n_diameter_union,
                       recompute_n_diameter, zoom_polish)
from .convexity import (ConvexityVerdict, SampledFunction, check_convexity,
                        check_monotone_from_convexity, hadamard_three_circles_check)
from .curves import (CurveSample, curve_diameter, curve_to_csv, invert_curve,
                     oscillation_ratio, sample_curve, shoelace_area)
from .errors import (ConvergenceError, DegenerateCurveError, DomainError,
                     GridSpacingError, NormalizationError, SearchBudgetError,
                     ValidationError)
from .laurent import (AnnulusSpec, LaurentMap, SRMembershipVerdict, annulus_image_area,
                      area_lemma_gap, check_prelim_constraint, derivative_at, evaluate,
                      is_rotation, rotated, to_laurent, validate_sr_membership)
from .measures import (MeasureRecord, MeasureReport, build_report, polya_slack, psi_area,
                       psi_cap, psi_ndiam, reduced_moduli_disk_case, report_from_csv,
                       report_to_csv, report_to_json_dict, serial_rule_slack,
                       teichmuller_deficiency, validate_report_invariants)
from .spectral import (BESSEL_J0_FIRST_ZERO, EigenResult, GridDomain, box_domain,
                       grid_domain_from_curve, phi_m0, principal_frequency)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
