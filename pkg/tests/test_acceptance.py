"""Acceptance suite: one test per criterion, one printed verdict line each.

Run with ``pytest -s tests/test_acceptance.py`` to see the verdict lines.
Each criterion pins its tolerance explicitly; nothing is deferred to
calibration elsewhere.
"""

import math
import time

import numpy as np
import pytest

import annulus_measures as am
from annulus_measures import capacity_engine as ce
from annulus_measures.cli import main



def _verdict(num: int, name: str, ok: bool, detail: str) -> None:
    print(f"[criterion {num:02d}] {name}: {'PASS' if ok else 'FAIL'} ({detail})")
    assert ok, f"criterion {num} {name}: {detail}"


def test_01_circle_capacity(identity_map):
    t0 = time.perf_counter()
    worst = 0.0
    for r in (1.0, 1.3, 1.7):
        est = am.capacity(identity_map, r)
        worst = max(worst, abs(est.value / r - 1.0))
    elapsed = time.perf_counter() - t0
    _verdict(1, "circle-capacity", worst <= 0.005 and elapsed < 10.0,
             f"max rel err {worst:.2e}, {elapsed:.1f}s")


def test_02_circle_n_diameter(identity_map):
    worst_refined = 0.0
    refined = {}
    for n in range(3, 13):
        res = am.n_diameter_refined(identity_map, 1.0, n)
        refined[n] = res.n_diameter
        worst_refined = max(worst_refined, abs(res.n_diameter - n ** (1.0 / (n - 1))))
    curve = am.sample_curve(identity_map, 1.0, 256)
    worst_gap = 0.0
    for n in range(3, 7):
        brute = am.n_diameter_brute(curve, n)
        _, log_f, _ = am.zoom_polish(identity_map, 1.0, brute.angles,
                                     initial_step=2.0 * math.pi / 256)
        oracle = ce.diameter_from_log_sum(log_f, n)
        worst_gap = max(worst_gap, abs(oracle - refined[n]))
    _verdict(2, "circle-n-diameter", worst_refined <= 1e-6 and worst_gap <= 1e-9,
             f"refined err {worst_refined:.2e}, oracle gap {worst_gap:.2e}")


def test_03_ellipse_capacity(joukowski_map):
    worst = 0.0
    for r in (1.2, 1.5, 1.8):
        est = am.capacity(joukowski_map, r)
        worst = max(worst, abs(est.value / r - 1.0))
    # log Cap sampled on a log-uniform grid must be convex (it is log-linear)
    grid = np.exp(np.linspace(math.log(1.2), math.log(1.8), 8))
    caps = [am.capacity(joukowski_map, float(r)).value for r in grid]
    fn = am.SampledFunction.from_radii(grid, caps, transform="log")
    verdict = am.check_convexity(fn, tol=1e-3)
    _verdict(3, "ellipse-capacity", worst <= 0.005 and verdict.is_convex,
             f"max rel err {worst:.2e}, min 2nd diff {verdict.min_second_difference:.2e}")


def test_04_area_formula(blaschke_map, two_coeff_map):
    tables = {"blaschke": am.to_laurent(blaschke_map), "two-coeff": two_coeff_map}
    worst_rel = 0.0
    worst_h1 = 0.0
    worst_prelim = 0.0
    for table in tables.values():
        worst_prelim = max(worst_prelim, abs(am.check_prelim_constraint(table)))
        worst_h1 = max(worst_h1, abs(am.annulus_image_area(table, 1.0)))
        for rho in (1.5, 2.0):
            h = am.annulus_image_area(table, rho)
            poly = (am.shoelace_area(am.sample_curve(table, rho, 4096))
                    - am.shoelace_area(am.sample_curve(table, 1.0, 4096)))
            worst_rel = max(worst_rel, abs(poly - h) / abs(h))
    ok = worst_rel <= 1e-4 and worst_h1 <= 1e-9 and worst_prelim < 1e-6
    _verdict(4, "area-formula", ok,
             f"shoelace rel {worst_rel:.2e}, h(1) {worst_h1:.2e}, prelim {worst_prelim:.2e}")


def test_05_area_lemma(blaschke_map, two_coeff_map, identity_map, rotation_map):
    min_gap = math.inf
    for table in (am.to_laurent(blaschke_map), two_coeff_map):
        for rho in (1.25, 1.5, 1.75):
            min_gap = min(min_gap, am.area_lemma_gap(table, rho))
    max_null = 0.0
    for table in (am.to_laurent(identity_map), rotation_map):
        for rho in (1.25, 1.5, 1.75):
            max_null = max(max_null, abs(am.area_lemma_gap(table, rho)))
    _verdict(5, "area-lemma", min_gap > 0.0 and max_null <= 1e-12,
             f"min gap {min_gap:.2e}, identity-class residue {max_null:.2e}")


def test_06_deficiency_monotonicity(blaschke_report, identity_report):
    report_b, seconds_b = blaschke_report
    report_i, seconds_i = identity_report
    t_vals = [rec.t for rec in report_b.records]
    fn = am.SampledFunction.from_radii(report_b.r_grid, t_vals)
    verdict = am.check_convexity(fn, tol=1e-3)
    strict = verdict.is_strictly_increasing_at(1e-4)
    ident_worst = max(abs(rec.t) for rec in report_i.records)
    elapsed = seconds_b + seconds_i
    ok = (verdict.is_convex and strict and ident_worst <= 2e-3 and elapsed < 120.0)
    _verdict(6, "deficiency-monotonicity", ok,
             f"min 2nd diff {verdict.min_second_difference:.2e}, "
             f"min 1st diff {verdict.min_first_difference:.2e}, "
             f"identity max|T| {ident_worst:.2e}, {elapsed:.0f}s")


def test_07_capacity_ratio_monotonicity(blaschke_report):
    report, _ = blaschke_report
    psi = np.array([rec.psi_cap for rec in report.records])
    grid = np.array(report.r_grid)
    fn_log = am.SampledFunction.from_radii(grid, psi, transform="log")
    verdict = am.check_convexity(fn_log, tol=1e-3)
    strict = am.check_convexity(
        am.SampledFunction.from_radii(grid, psi), tol=1e-3).is_strictly_increasing_at(1e-4)
    scaled = np.array([rec.cap_J / rec.r for rec in report.records])
    pair_ok = all(scaled[i] <= scaled[j] * 1.005
                  for i in range(len(scaled)) for j in range(i + 1, len(scaled)))
    _verdict(7, "capacity-ratio-monotonicity", verdict.is_convex and strict and pair_ok,
             f"min 2nd diff {verdict.min_second_difference:.2e}, pairs ok {pair_ok}")


def test_08_serial_rule(blaschke_report, identity_report, rotation_report):
    worst = min(min(rec.serial_slack for rec in report.records)
                for report in (blaschke_report[0], identity_report[0], rotation_report))
    _verdict(8, "serial-rule", worst >= -1e-3, f"min slack {worst:.2e}")


def test_09_polya_inequality(blaschke_report, identity_report, rotation_report):
    worst = min(min(rec.polya_slack for rec in report.records)
                for report in (blaschke_report[0], identity_report[0], rotation_report))
    _verdict(9, "polya-inequality", worst >= -0.01, f"min slack {worst:.2e}")


def test_10_three_circles(identity_map, blaschke_map, joukowski_map):
    anchors = np.exp(np.linspace(math.log(1.1), math.log(1.9), 9))
    worst = math.inf
    ident_worst = 0.0
    for map_, tag in ((identity_map, "identity"), (blaschke_map, "blaschke"),
                      (joukowski_map, "joukowski")):
        for n in (3, 6):
            ref = am.n_diameter_refined(map_, float(anchors[4]), n)
            for r1 in anchors[:3]:
                for r in anchors[3:6]:
                    for r2 in anchors[6:]:
                        slack = am.hadamard_three_circles_check(
                            map_, ref.angles, float(r1), float(r), float(r2))
                        worst = min(worst, slack)
                        if tag == "identity":
                            ident_worst = max(ident_worst, abs(slack))
    _verdict(10, "three-circles", worst >= -1e-6 and ident_worst <= 1e-9,
             f"min slack {worst:.2e}, identity residue {ident_worst:.2e}")


def test_11_spectral(disk_eigenvalues, quadratic_disk_map):
    values, seconds = disk_eigenvalues
    t0 = time.perf_counter()
    disk_err = abs(values[256] / am.BESSEL_J0_FIRST_ZERO - 1.0)
    ordering = abs(values[256] - values[128]) < abs(values[128] - values[64])
    square = am.principal_frequency(am.box_domain(0.0, 1.0, 0.0, 1.0, 256)).lambda1
    square_err = abs(square / (math.pi * math.sqrt(2.0)) - 1.0)
    phi_ok = all(am.phi_m0(quadratic_disk_map, r, 256) >= 1.0 - 0.02 for r in (0.5, 0.8))
    elapsed = seconds + (time.perf_counter() - t0)
    ok = disk_err <= 0.01 and ordering and square_err <= 0.01 and phi_ok and elapsed < 60.0
    _verdict(11, "spectral", ok,
             f"disk err {disk_err:.2e}, ordering {ordering}, square err {square_err:.2e}, "
             f"phi ok {phi_ok}, {elapsed:.0f}s")


def test_12_determinism(tmp_path):
    argv = ["measure", "--map", "identity", "--R", "2", "--grid", "8",
            "--n-seq", "8,12,16"]
    out1, out2 = tmp_path / "a.json", tmp_path / "b.json"
    code1 = main([*argv, "--out", str(out1)])
    code2 = main([*argv, "--out", str(out2)])
    same = out1.read_bytes() == out2.read_bytes()
    _verdict(12, "determinism", code1 == 0 and code2 == 0 and same,
             f"exit codes {code1}/{code2}, byte-identical {same}")
