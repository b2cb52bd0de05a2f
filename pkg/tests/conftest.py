"""Shared fixtures and independent oracle helpers.

Expensive pipelines (full measurement reports, eigen-solves) are built once
per session.  Oracle helpers deliberately avoid the library code paths they
are used to check: circle geometry comes from three-point circumcircles and
raw complex arithmetic.
"""

from __future__ import annotations

import math
import time

import numpy as np
import pytest

import annulus_measures as am

BLASCHKE_A = 0.2


# ---------------------------------------------------------------------------
# independent geometric oracles
# ---------------------------------------------------------------------------

def circumcircle(z1: complex, z2: complex, z3: complex) -> tuple[complex, float]:
    """Center and radius of the circle through three points (direct formula)."""
    ax, ay = z1.real, z1.imag
    bx, by = z2.real, z2.imag
    cx, cy = z3.real, z3.imag
    d = 2.0 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by))
    ux = ((ax * ax + ay * ay) * (by - cy) + (bx * bx + by * by) * (cy - ay)
          + (cx * cx + cy * cy) * (ay - by)) / d
    uy = ((ax * ax + ay * ay) * (cx - bx) + (bx * bx + by * by) * (ax - cx)
          + (cx * cx + cy * cy) * (bx - ax)) / d
    center = complex(ux, uy)
    return center, abs(z1 - center)


def mobius_point(a: float, z: complex) -> complex:
    return (z - a) / (1.0 - a * z)


def blaschke_image_circle(a: float, r: float) -> tuple[complex, float]:
    """Center/radius of the image of |z| = r under (z-a)/(1-az), real a,
    via three mapped points; no library calls involved."""
    pts = [mobius_point(a, r * complex(math.cos(t), math.sin(t)))
           for t in (0.4, 2.1, 4.6)]
    return circumcircle(*pts)


def blaschke_inverse_circle(a: float, r: float) -> tuple[complex, float]:
    pts = [1.0 / mobius_point(a, r * complex(math.cos(t), math.sin(t)))
           for t in (0.4, 2.1, 4.6)]
    return circumcircle(*pts)


def teichmuller_oracle(a: float, r: float) -> float:
    """T(r) for the Blaschke factor from pure circle geometry."""
    _, rho = blaschke_image_circle(a, r)
    _, rho_inv = blaschke_inverse_circle(a, r)
    return math.log(rho * rho_inv) / (2.0 * math.pi)


def psi_cap_oracle(a: float, r: float) -> float:
    _, rho = blaschke_image_circle(a, r)
    return rho / r


# ---------------------------------------------------------------------------
# maps
# ---------------------------------------------------------------------------

@pytest.fixture(scope="session")
def identity_map():
    return am.LaurentMap.identity()


@pytest.fixture(scope="session")
def blaschke_map():
    return am.LaurentMap.blaschke(BLASCHKE_A)


@pytest.fixture(scope="session")
def joukowski_map():
    return am.LaurentMap.joukowski(0.5)


@pytest.fixture(scope="session")
def rotation_map():
    return am.LaurentMap.from_coeffs({1: np.exp(0.7j)})


@pytest.fixture(scope="session")
def two_coeff_map():
    # sum n |a_n|^2 = 1.01 - 0.01 = 1 exactly
    return am.LaurentMap.from_coeffs({1: math.sqrt(1.01), -1: 0.1})


@pytest.fixture(scope="session")
def quadratic_disk_map():
    return am.LaurentMap.from_coeffs({1: 1.0, 2: 0.1})


# ---------------------------------------------------------------------------
# expensive shared pipelines
# ---------------------------------------------------------------------------

@pytest.fixture(scope="session")
def blaschke_report(blaschke_map):
    t0 = time.perf_counter()
    report = am.build_report(blaschke_map, am.AnnulusSpec(2.0), 16)
    report_seconds = time.perf_counter() - t0
    return report, report_seconds


@pytest.fixture(scope="session")
def identity_report(identity_map):
    t0 = time.perf_counter()
    report = am.build_report(identity_map, am.AnnulusSpec(2.0), 16)
    report_seconds = time.perf_counter() - t0
    return report, report_seconds


@pytest.fixture(scope="session")
def rotation_report(rotation_map):
    # circles are exact under the extrapolation model, so a short n-sequence
    # keeps this fixture cheap without losing accuracy
    return am.build_report(rotation_map, am.AnnulusSpec(2.0), 16, n_sequence=(8, 12, 16))


@pytest.fixture(scope="session")
def disk_eigenvalues(identity_map):
    t0 = time.perf_counter()
    out = {}
    curve = am.sample_curve(identity_map, 1.0, 2048)
    for n in (64, 128, 256):
        out[n] = am.principal_frequency(am.grid_domain_from_curve(curve, n)).lambda1
    return out, time.perf_counter() - t0
