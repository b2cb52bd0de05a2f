"""Teichmüller deficiency, psi ratios, slack inequalities, and reports.

The Blaschke factor is the workhorse: a Möbius map sends circles to
circles, so every headline quantity has a circle-geometry closed form that
the pipeline must reproduce (computed here via three-point circumcircles,
independent of the library's series/optimizer machinery).
"""

import io
import math

import numpy as np
import pytest

import annulus_measures as am
from annulus_measures.errors import NormalizationError, ValidationError

from conftest import (BLASCHKE_A, blaschke_image_circle, psi_cap_oracle,
                      teichmuller_oracle)

TWO_PI = 2.0 * math.pi


class TestTeichmullerDeficiency:
    def test_identity_vanishes(self, identity_map):
        assert abs(am.teichmuller_deficiency(identity_map, 1.5)) < 1e-3

    def test_rotation_vanishes(self, rotation_map):
        assert abs(am.teichmuller_deficiency(rotation_map, 1.5)) < 1e-3

    def test_blaschke_matches_circle_geometry(self, blaschke_map):
        t = am.teichmuller_deficiency(blaschke_map, 1.5)
        expected = teichmuller_oracle(BLASCHKE_A, 1.5)
        assert t > 1e-3  # strictly positive, not noise
        assert abs(t - expected) < 5e-4

    def test_membership_enforced(self, joukowski_map):
        with pytest.raises(ValidationError):
            am.teichmuller_deficiency(joukowski_map, 1.5)


class TestPsiCap:
    def test_identity(self, identity_map):
        assert abs(am.psi_cap(identity_map, 1.8) - 1.0) < 5e-3

    def test_equals_one_at_unit_radius(self, blaschke_map):
        assert abs(am.psi_cap(blaschke_map, 1.0) - 1.0) < 5e-3

    def test_blaschke_matches_circle_geometry(self, blaschke_map):
        pc = am.psi_cap(blaschke_map, 1.5)
        assert pc >= 1.0 + 5e-3  # strictly above one
        assert abs(pc - psi_cap_oracle(BLASCHKE_A, 1.5)) < 1e-3


class TestPsiNDiam:
    def test_identity(self, identity_map):
        assert abs(am.psi_ndiam(identity_map, 1.5, 4) - 1.0) < 1e-4

    def test_unit_radius(self, blaschke_map):
        assert abs(am.psi_ndiam(blaschke_map, 1.0, 3) - 1.0) < 1e-6

    def test_blaschke_at_least_one(self, blaschke_map):
        assert am.psi_ndiam(blaschke_map, 1.5, 6) >= 1.0 - 1e-9


class TestPsiArea:
    def test_identity(self, identity_map):
        assert abs(am.psi_area(identity_map, 2.0) - 1.0) < 1e-12

    def test_unit_radius(self, two_coeff_map):
        assert abs(am.psi_area(two_coeff_map, 1.0) - 1.0) < 1e-9

    def test_two_coeff_closed_form(self, two_coeff_map):
        # enclosed ellipse area over disk area: (1.01 r^2 - 0.01/r^2)/r^2
        r = 2.0
        expected = (1.01 * r * r - 0.01 / (r * r)) / (r * r)
        assert abs(am.psi_area(two_coeff_map, r) - expected) < 1e-12

    def test_blaschke_matches_circle_geometry(self, blaschke_map):
        _, rho = blaschke_image_circle(BLASCHKE_A, 1.5)
        assert abs(am.psi_area(blaschke_map, 1.5) - (rho / 1.5) ** 2) < 1e-9

    def test_unnormalized_rejected(self):
        bad = am.LaurentMap.from_coeffs({1: 1.0, -1: 0.5})
        with pytest.raises(NormalizationError):
            am.psi_area(bad, 1.5)


class TestSlacks:
    def test_polya_identity(self, identity_map):
        assert abs(am.polya_slack(identity_map, 1.5)) < 0.01

    def test_polya_blaschke(self, blaschke_map):
        # Möbius images are circles: the area-capacity inequality is tight
        slack = am.polya_slack(blaschke_map, 1.5)
        assert slack >= -0.01 and abs(slack) < 1e-3

    def test_serial_identity(self, identity_map):
        assert abs(am.serial_rule_slack(identity_map, 1.5)) < 1e-3

    def test_serial_blaschke_grid(self, blaschke_map):
        for r in (1.2, 1.5, 1.8):
            slack = am.serial_rule_slack(blaschke_map, r)
            assert slack >= -1e-3
            expected = (math.log(psi_cap_oracle(BLASCHKE_A, r)) / TWO_PI
                        - teichmuller_oracle(BLASCHKE_A, r))
            assert abs(slack - expected) < 1e-3


class TestDiskCase:
    def test_identity_half_radius(self, identity_map):
        m1, m2 = am.reduced_moduli_disk_case(identity_map, 0.5)
        assert abs(m1 - math.log(0.5) / TWO_PI) < 1e-12
        assert abs(m1 + m2) < 1e-3

    def test_doubling_map_unit_image(self):
        m1, m2 = am.reduced_moduli_disk_case(am.LaurentMap.from_coeffs({1: 2.0}), 0.5)
        assert abs(m1) < 1e-12  # log(r |f'(0)|) = log 1
        assert abs(m2) < 1e-3

    def test_quadratic_perturbation(self, quadratic_disk_map):
        m1, m2 = am.reduced_moduli_disk_case(quadratic_disk_map, 0.5)
        assert abs(m1 - math.log(0.5) / TWO_PI) < 1e-12
        total = m1 + m2
        assert total <= 1e-6  # nonpositive up to capacity noise
        # regression for the measured deficiency of the near-circular image
        assert abs(total - (-0.000397382)) < 5e-5

    def test_rejects_nonvanishing_origin(self, blaschke_map):
        with pytest.raises(ValidationError):
            am.reduced_moduli_disk_case(blaschke_map, 0.5)

    def test_rejects_annulus_maps(self, two_coeff_map):
        with pytest.raises(ValidationError):
            am.reduced_moduli_disk_case(two_coeff_map, 0.5)


class TestBuildReport:
    def test_identity_report(self, identity_report):
        report, _ = identity_report
        assert len(report.records) == 16
        assert not report.errors
        for rec in report.records:
            assert abs(rec.t) <= 2e-3
            assert abs(rec.psi_cap - 1.0) <= 5e-3
            assert abs(rec.psi_area - 1.0) <= 1e-9
            assert abs(rec.oscillation - 1.0) <= 1e-9

    def test_grid_is_log_uniform_from_one(self, blaschke_report):
        report, _ = blaschke_report
        grid = np.array(report.r_grid)
        assert grid[0] == 1.0
        steps = np.diff(np.log(grid))
        assert np.max(np.abs(steps - steps[0])) < 1e-12

    def test_report_invariants(self, blaschke_report):
        report, _ = blaschke_report
        am.validate_report_invariants(report)

    def test_blaschke_fields_match_circle_geometry(self, blaschke_report):
        report, _ = blaschke_report
        for rec in report.records:
            assert abs(rec.t - teichmuller_oracle(BLASCHKE_A, rec.r)) < 5e-4
            assert abs(rec.psi_cap - psi_cap_oracle(BLASCHKE_A, rec.r)) < 1e-3
            assert rec.polya_slack >= -0.01
            assert rec.serial_slack >= -1e-3
            assert rec.psi_ndiam >= 1.0 - 1e-6

    def test_scaled_capacity_monotone_over_pairs(self, blaschke_report):
        report, _ = blaschke_report
        scaled = [rec.cap_J / rec.r for rec in report.records]
        for i in range(len(scaled)):
            for j in range(i + 1, len(scaled)):
                assert scaled[i] <= scaled[j] * 1.005

    def test_membership_failure_raises(self, joukowski_map):
        with pytest.raises(ValidationError):
            am.build_report(joukowski_map, am.AnnulusSpec(2.0), 8)

    def test_grid_floor(self, identity_map):
        with pytest.raises(ValidationError):
            am.build_report(identity_map, am.AnnulusSpec(2.0), 4)


class TestRotationInvariance:
    def test_measures_invariant_under_grid_aligned_rotation(self, blaschke_map):
        # rotating by a multiple of the sampling step permutes every sampled
        # set exactly, so all fields must match to near machine precision
        theta = TWO_PI * 200 / 1024
        rot = am.rotated(blaschke_map, theta)
        r = 1.3
        t0 = am.teichmuller_deficiency(blaschke_map, r)
        t1 = am.teichmuller_deficiency(rot, r, validate=False)
        assert abs(t0 - t1) < 1e-10
        assert abs(am.psi_area(blaschke_map, r) - am.psi_area(rot, r)) < 1e-10
        pc0 = am.psi_cap(blaschke_map, r)
        pc1 = am.psi_cap(rot, r, validate=False)
        assert abs(pc0 - pc1) < 1e-10
        osc0 = am.oscillation_ratio(am.sample_curve(blaschke_map, r, 1024))
        osc1 = am.oscillation_ratio(am.sample_curve(rot, r, 1024))
        assert abs(osc0 - osc1) < 1e-10


class TestSerialization:
    def test_csv_roundtrip_preserves_invariants(self, blaschke_report):
        report, _ = blaschke_report
        buf = io.StringIO()
        am.report_to_csv(report, buf)
        parsed = am.report_from_csv(buf.getvalue())
        am.validate_report_invariants(parsed)
        assert len(parsed.records) == len(report.records)
        for a, b in zip(parsed.records, report.records):
            assert a.as_row() == b.as_row()  # 17 digits round-trip exactly

    def test_csv_header_fixed(self, identity_report):
        report, _ = identity_report
        buf = io.StringIO()
        am.report_to_csv(report, buf)
        assert buf.getvalue().splitlines()[0] == ",".join(
            ("r", "cap_J", "cap_inv_J", "m1", "m2", "t", "psi_cap", "psi_ndiam",
             "psi_area", "polya_slack", "serial_slack", "oscillation"))

    def test_json_dict_shape(self, identity_report):
        report, _ = identity_report
        d = am.report_to_json_dict(report)
        assert set(d) == {"map_id", "outer_radius", "records", "errors", "warnings"}
        assert len(d["records"]) == 16
