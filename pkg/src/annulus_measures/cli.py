"""Command-line surface: measure, verify, fekete, spectrum.

Exit codes: 0 success / all checks pass, 1 input or configuration error,
2 verification failure, 3 degraded (measurements completed with warnings
or partial results).
"""

from __future__ import annotations

import argparse
import io
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import measures, serialize
from .capacity_engine import (BRUTE_MAX_M, BRUTE_MAX_N, DEFAULT_N_SEQUENCE,
                              capacity_from_curve, diameter_from_log_sum,
                              inverse_curve_fn, map_curve_fn, n_diameter_brute,
                              n_diameter_refined, zoom_polish)
from .convexity import SampledFunction, check_convexity, hadamard_three_circles_check
from .curves import curve_to_csv, sample_curve
from .errors import ValidationError
from .laurent import (AnnulusSpec, LaurentMap, annulus_image_area, area_lemma_gap,
                      is_rotation, to_laurent, validate_sr_membership)
from .spectral import grid_domain_from_curve, phi_m0, principal_frequency

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_FAIL = 2
EXIT_DEGRADED = 3

THEOREMS = ("t1", "t2", "polya", "serial", "hadamard", "area_lemma")


class CliInputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on usage errors; 2 is reserved for
    # verification failures here, so route usage errors through exit 1
    def error(self, message):
        raise CliInputError(message)


@dataclass
class RunConfig:
    map_source: str
    outer_radius: float = 2.0
    grid_size: int = 16
    samples: int = 1024
    n_sequence: tuple[int, ...] = DEFAULT_N_SEQUENCE
    ndiam_n: int = measures.DEFAULT_NDIAM_N
    tol_cap: float = 0.005
    tol_convex: float = 1e-3
    tol_strict: float = 1e-4
    output_format: str = "json"
    output_path: str | None = None

    def validate(self):
        if self.outer_radius <= 1.0:
            raise CliInputError("--R must exceed 1")
        if self.grid_size < 8:
            raise CliInputError("--grid must be at least 8")
        if self.samples < 64:
            raise CliInputError("--samples must be at least 64")
        for name, tol in (("--tol-cap", self.tol_cap), ("--tol-convex", self.tol_convex),
                          ("--tol-strict", self.tol_strict)):
            if not tol > 0:
                raise CliInputError(f"{name} must be positive")
        if any(n < 2 for n in self.n_sequence) or len(self.n_sequence) < 2:
            raise CliInputError("--n-seq needs at least two entries, all >= 2")
        if self.output_format not in ("json", "csv"):
            raise CliInputError("--format must be json or csv")


def load_map_spec(source: str) -> LaurentMap:
    """Resolve a map argument: family name, path to a JSON file, or inline JSON."""
    text = source.strip()
    if text == "identity":
        return LaurentMap.identity()
    if not text.startswith("{"):
        path = Path(text)
        if not path.is_file():
            raise CliInputError(f"map source {source!r} is neither a known name, a file, "
                                "nor inline JSON")
        text = path.read_text()
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CliInputError(f"invalid map JSON: {exc}") from exc
    return map_from_json_dict(obj)


def map_from_json_dict(obj: dict) -> LaurentMap:
    if not isinstance(obj, dict) or "type" not in obj:
        raise CliInputError('map JSON needs a "type" field')
    kind = obj["type"]
    try:
        if kind == "identity":
            return LaurentMap.identity()
        if kind == "blaschke":
            a = obj.get("a")
            if not (isinstance(a, (list, tuple)) and len(a) == 2):
                raise CliInputError('blaschke map needs "a": [re, im]')
            return LaurentMap.blaschke(complex(a[0], a[1]))
        if kind == "joukowski":
            return LaurentMap.joukowski(float(obj.get("c", 0.0)))
        if kind == "laurent":
            entries = obj.get("coeffs", [])
            table = {}
            for entry in entries:
                if not (isinstance(entry, (list, tuple)) and len(entry) == 3):
                    raise CliInputError('laurent map needs "coeffs": [[n, re, im], ...]')
                n, re, im = entry
                table[int(n)] = complex(float(re), float(im))
            return LaurentMap.from_coeffs(table)
    except ValidationError as exc:
        raise CliInputError(str(exc)) from exc
    raise CliInputError(f"unknown map type {kind!r}")


def _write_output(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _config_from_args(args) -> RunConfig:
    n_seq = tuple(int(x) for x in str(args.n_seq).split(",") if x.strip()) \
        if getattr(args, "n_seq", None) else DEFAULT_N_SEQUENCE
    cfg = RunConfig(
        map_source=args.map,
        outer_radius=getattr(args, "R", 2.0),
        grid_size=getattr(args, "grid", 16),
        samples=getattr(args, "samples", 1024),
        n_sequence=n_seq,
        ndiam_n=getattr(args, "ndiam_n", measures.DEFAULT_NDIAM_N),
        tol_cap=getattr(args, "tol_cap", 0.005),
        tol_convex=getattr(args, "tol_convex", 1e-3),
        tol_strict=getattr(args, "tol_strict", 1e-4),
        output_format=getattr(args, "format", "json"),
        output_path=getattr(args, "out", None),
    )
    cfg.validate()
    return cfg


# ---------------------------------------------------------------------------
# measure
# ---------------------------------------------------------------------------

def cmd_measure(args) -> int:
    cfg = _config_from_args(args)
    map_ = load_map_spec(cfg.map_source)

    if args.disk_case:
        r = args.r if args.r is not None else 0.5
        m1, m2 = measures.reduced_moduli_disk_case(map_, r, cfg.n_sequence)
        payload = {"map_id": map_.label, "r": r, "m1": m1, "m2": m2, "m1_plus_m2": m1 + m2}
        _write_output(serialize.dumps(payload), cfg.output_path)
        return EXIT_OK

    spec = AnnulusSpec(outer_radius=cfg.outer_radius)
    verdict = validate_sr_membership(map_, spec, samples=max(cfg.samples // 2, 64))
    if not verdict.passed:
        print(f"error: map fails annulus membership validation "
              f"(unit_modulus={verdict.unit_modulus_on_circle}, "
              f"exceeds_one={verdict.exceeds_one_inside}, "
              f"injective={verdict.injective_on_samples}, "
              f"max unit-circle deviation {verdict.max_unit_circle_deviation:.3e})",
              file=sys.stderr)
        return EXIT_INPUT

    report = measures.build_report(map_, spec, cfg.grid_size, n_sequence=cfg.n_sequence,
                                   ndiam_n=cfg.ndiam_n, samples=cfg.samples, validate=False)
    if args.export_curves:
        export_dir = Path(args.export_curves)
        export_dir.mkdir(parents=True, exist_ok=True)
        for i, r in enumerate(report.r_grid):
            curve = sample_curve(map_, r, cfg.samples)
            with (export_dir / f"curve_{i:03d}.csv").open("w") as fh:
                curve_to_csv(curve, fh)
    if cfg.output_format == "csv":
        buf = io.StringIO()
        measures.report_to_csv(report, buf)
        _write_output(buf.getvalue(), cfg.output_path)
    else:
        _write_output(serialize.dumps(measures.report_to_json_dict(report)), cfg.output_path)
    for line in report.errors:
        print(f"error: {line}", file=sys.stderr)
    for line in report.warnings:
        print(f"warning: {line}", file=sys.stderr)
    return EXIT_DEGRADED if report.degraded else EXIT_OK


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def _cap_profile(map_: LaurentMap, cfg: RunConfig):
    grid = measures.log_uniform_grid(cfg.outer_radius, cfg.grid_size)
    caps_j, caps_i = [], []
    for r in grid:
        est_j = capacity_from_curve(map_curve_fn(map_, float(r)), cfg.n_sequence)
        est_i = capacity_from_curve(inverse_curve_fn(map_, float(r)), cfg.n_sequence)
        caps_j.append(est_j.value)
        caps_i.append(est_i.value)
    return grid, np.asarray(caps_j), np.asarray(caps_i)


def _print_check(name: str, ok: bool, detail: str) -> bool:
    print(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
    return ok


def _verify_t1(map_, cfg, require_strict: bool):
    grid, caps_j, caps_i = _cap_profile(map_, cfg)
    t = np.log(caps_j * caps_i) / (2.0 * math.pi)
    checks = []
    rotation = is_rotation(to_laurent(map_))
    if rotation:
        worst = float(np.max(np.abs(t)))
        checks.append(_print_check("deficiency-vanishes", worst <= 2e-3,
                                   f"max |T| = {worst:.3e} (identity class)"))
        if require_strict:
            checks.append(_print_check(
                "strict-increase", False,
                "strictness fails for the identity class: T is identically zero"))
        return checks
    fn = SampledFunction.from_radii(grid, t)
    verdict = check_convexity(fn, cfg.tol_convex)
    checks.append(_print_check("deficiency-convex", verdict.is_convex,
                               f"min second difference {verdict.min_second_difference:.3e}"))
    checks.append(_print_check("deficiency-nonnegative", float(np.min(t)) >= -2e-3,
                               f"min T = {np.min(t):.3e}"))
    strict = verdict.is_strictly_increasing_at(cfg.tol_strict)
    checks.append(_print_check("strict-increase", strict,
                               f"min first difference {verdict.min_first_difference:.3e}"))
    return checks


def _verify_t2(map_, cfg, require_strict: bool):
    grid, caps_j, _ = _cap_profile(map_, cfg)
    psi = caps_j / grid
    checks = []
    rotation = is_rotation(to_laurent(map_))
    if rotation:
        worst = float(np.max(np.abs(psi - 1.0)))
        checks.append(_print_check("ratio-is-one", worst <= 5e-3,
                                   f"max |psi_cap - 1| = {worst:.3e} (identity class)"))
        if require_strict:
            checks.append(_print_check(
                "strict-increase", False,
                "strictness fails for the identity class: psi_cap is identically one"))
        return checks
    fn_log = SampledFunction.from_radii(grid, psi, transform="log")
    verdict = check_convexity(fn_log, cfg.tol_convex)
    checks.append(_print_check("log-ratio-convex", verdict.is_convex,
                               f"min second difference {verdict.min_second_difference:.3e}"))
    fn_lin = SampledFunction.from_radii(grid, psi)
    vlin = check_convexity(fn_lin, cfg.tol_convex)
    strict = vlin.is_strictly_increasing_at(cfg.tol_strict)
    checks.append(_print_check("strict-increase", strict,
                               f"min first difference {vlin.min_first_difference:.3e}"))
    # scaled-capacity comparison across all grid pairs r < r'
    scaled = caps_j / grid
    ok = True
    for i in range(len(grid)):
        for j in range(i + 1, len(grid)):
            if scaled[i] > scaled[j] * (1.0 + cfg.tol_cap):
                ok = False
    checks.append(_print_check("scaled-capacity-monotone", ok,
                               f"Cap(union)/r nondecreasing over {len(grid)} grid points"))
    return checks


def _verify_polya(map_, cfg):
    grid, caps_j, _ = _cap_profile(map_, cfg)
    table = to_laurent(map_)
    checks = []
    worst = math.inf
    for r, cj in zip(grid, caps_j):
        pc = cj / r
        pa = (math.pi + annulus_image_area(table, float(r))) / (math.pi * r * r)
        worst = min(worst, pc * pc - pa)
    checks.append(_print_check("area-capacity-slack", worst >= -0.01,
                               f"min psi_cap^2 - psi_area = {worst:.3e}"))
    return checks


def _verify_serial(map_, cfg):
    grid, caps_j, caps_i = _cap_profile(map_, cfg)
    t = np.log(caps_j * caps_i) / (2.0 * math.pi)
    bound = np.log(caps_j / grid) / (2.0 * math.pi)
    worst = float(np.min(bound - t))
    return [_print_check("serial-rule-slack", worst >= -1e-3,
                         f"min (1/2pi) log psi_cap - T = {worst:.3e}")]


def _verify_hadamard(map_, cfg):
    lo = 1.0 + 0.1 * (cfg.outer_radius - 1.0)
    hi = cfg.outer_radius - 0.1 * (cfg.outer_radius - 1.0)
    anchors = np.exp(np.linspace(math.log(lo), math.log(hi), 9))
    r1s, rs, r2s = anchors[:3], anchors[3:6], anchors[6:]
    checks = []
    for n in (3, 6):
        ref = n_diameter_refined(map_, float(rs[1]), n)
        worst = math.inf
        for r1 in r1s:
            for r in rs:
                for r2 in r2s:
                    worst = min(worst, hadamard_three_circles_check(
                        map_, ref.angles, float(r1), float(r), float(r2)))
        checks.append(_print_check(f"three-circles-n{n}", worst >= -1e-6,
                                   f"min interpolation slack {worst:.3e}"))
    return checks


def _verify_area_lemma(map_, cfg):
    table = to_laurent(map_)
    rotation = is_rotation(table)
    rhos = measures.log_uniform_grid(cfg.outer_radius, cfg.grid_size)[1:]
    gaps = np.array([area_lemma_gap(table, float(r)) for r in rhos])
    checks = []
    if rotation:
        worst = float(np.max(np.abs(gaps)))
        checks.append(_print_check("area-gap-zero", worst <= 1e-12,
                                   f"max |gap| = {worst:.3e} (identity class)"))
    else:
        checks.append(_print_check("area-gap-positive", bool(np.all(gaps > 0.0)),
                                   f"min gap = {np.min(gaps):.3e}"))
    checks.append(_print_check("area-gap-nonnegative", bool(np.all(gaps >= -1e-10)),
                               f"min gap = {np.min(gaps):.3e}"))
    return checks


def cmd_verify(args) -> int:
    cfg = _config_from_args(args)
    map_ = load_map_spec(cfg.map_source)
    theorem = args.theorem
    if theorem not in THEOREMS:
        raise CliInputError(f"unknown theorem {theorem!r}; choose from {THEOREMS}")

    needs_membership = theorem in ("t1", "t2", "polya", "serial")
    if needs_membership:
        verdict = validate_sr_membership(map_, AnnulusSpec(cfg.outer_radius),
                                         samples=max(cfg.samples // 2, 64))
        if not verdict.passed:
            print("error: map fails annulus membership validation", file=sys.stderr)
            return EXIT_INPUT

    if theorem == "t1":
        checks = _verify_t1(map_, cfg, args.require_strict)
    elif theorem == "t2":
        checks = _verify_t2(map_, cfg, args.require_strict)
    elif theorem == "polya":
        checks = _verify_polya(map_, cfg)
    elif theorem == "serial":
        checks = _verify_serial(map_, cfg)
    elif theorem == "hadamard":
        checks = _verify_hadamard(map_, cfg)
    else:
        checks = _verify_area_lemma(map_, cfg)
    return EXIT_OK if all(checks) else EXIT_FAIL


# ---------------------------------------------------------------------------
# fekete
# ---------------------------------------------------------------------------

def cmd_fekete(args) -> int:
    map_ = load_map_spec(args.map)
    n = args.n
    r = args.r
    if n < 2:
        raise CliInputError("--n must be at least 2")
    if r <= 0:
        raise CliInputError("--r must be positive")
    samples = args.samples if args.samples is not None else 256
    refined = n_diameter_refined(map_, r, n)
    payload = {
        "map_id": map_.label,
        "r": r,
        "n": n,
        "method": refined.method,
        "n_diameter": refined.n_diameter,
        "angles": list(refined.angles),
        "points": [[p.real, p.imag] for p in refined.points],
        "iterations": refined.iterations,
        "converged": refined.converged,
    }
    if n <= BRUTE_MAX_N and samples <= BRUTE_MAX_M:
        curve = sample_curve(map_, r, samples)
        brute = n_diameter_brute(curve, n)
        _, polished_log, _ = zoom_polish(map_, r, brute.angles,
                                             initial_step=2.0 * math.pi / samples)
        oracle = diameter_from_log_sum(polished_log, n)
        payload["oracle"] = {
            "discrete_n_diameter": brute.n_diameter,
            "polished_n_diameter": oracle,
            "nodes": brute.iterations,
            "gap": abs(refined.n_diameter - oracle),
        }
    _write_output(serialize.dumps(payload), args.out)
    return EXIT_OK if refined.converged else EXIT_DEGRADED


# ---------------------------------------------------------------------------
# spectrum
# ---------------------------------------------------------------------------

def cmd_spectrum(args) -> int:
    map_ = load_map_spec(args.map)
    if args.r <= 0:
        raise CliInputError("--r must be positive")
    if args.N < 8:
        raise CliInputError("--N must be at least 8")
    curve = sample_curve(map_, args.r, 2048)
    domain = grid_domain_from_curve(curve, args.N)
    result = principal_frequency(domain)
    payload = {
        "map_id": map_.label,
        "r": args.r,
        "N": args.N,
        "lambda1": result.lambda1,
        "residual": result.residual,
        "iterations": result.iterations,
    }
    if args.phi_m0:
        payload["phi_m0"] = phi_m0(map_, args.r, args.N)
    _write_output(serialize.dumps(payload), args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# wiring
# ---------------------------------------------------------------------------

def build_parser() -> _Parser:
    p = _Parser(prog="annulus-measures",
                description="Conformal-geometry measurements for analytic maps on "
                            "disks and annuli, with verification subcommands.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, r_flag=False):
        sp.add_argument("--map", required=True,
                        help="map family name, JSON file path, or inline JSON")
        sp.add_argument("--R", type=float, default=2.0, help="outer annulus radius")
        sp.add_argument("--grid", type=int, default=16, help="radius grid size")
        sp.add_argument("--samples", type=int, default=1024, help="curve sample count")
        sp.add_argument("--n-seq", dest="n_seq", default=None,
                        help="comma-separated n values for capacity extrapolation")
        sp.add_argument("--ndiam-n", dest="ndiam_n", type=int,
                        default=measures.DEFAULT_NDIAM_N)
        sp.add_argument("--tol-cap", dest="tol_cap", type=float, default=0.005)
        sp.add_argument("--tol-convex", dest="tol_convex", type=float, default=1e-3)
        sp.add_argument("--tol-strict", dest="tol_strict", type=float, default=1e-4)
        sp.add_argument("--out", default=None, help="output path (default stdout)")

    sp = sub.add_parser("measure", help="full per-radius measurement report")
    common(sp)
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    sp.add_argument("--disk-case", action="store_true",
                    help="reduced moduli for a Taylor map on a subdisk instead")
    sp.add_argument("--export-curves", default=None,
                    help="directory to receive one sampled-curve CSV per grid radius")
    sp.add_argument("--r", type=float, default=None, help="radius for --disk-case")
    sp.set_defaults(handler=cmd_measure)

    sp = sub.add_parser("verify", help="run one theorem's check suite")
    common(sp)
    sp.add_argument("--theorem", required=True, choices=THEOREMS)
    sp.add_argument("--require-strict", action="store_true",
                    help="fail identity-class maps on strict monotonicity")
    sp.set_defaults(handler=cmd_verify)

    sp = sub.add_parser("fekete", help="n-diameter optimization at one radius")
    sp.add_argument("--map", required=True)
    sp.add_argument("--r", type=float, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--samples", type=int, default=None,
                    help="curve samples for the brute-force oracle (default 256)")
    sp.add_argument("--out", default=None)
    sp.set_defaults(handler=cmd_fekete)

    sp = sub.add_parser("spectrum", help="principal Dirichlet frequency of f(rD)")
    sp.add_argument("--map", required=True)
    sp.add_argument("--r", type=float, required=True)
    sp.add_argument("--N", type=int, default=256, help="grid resolution")
    sp.add_argument("--phi-m0", dest="phi_m0", action="store_true",
                    help="also emit the frequency ratio against the disk")
    sp.add_argument("--out", default=None)
    sp.set_defaults(handler=cmd_spectrum)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.handler(args)
    except CliInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ValidationError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
