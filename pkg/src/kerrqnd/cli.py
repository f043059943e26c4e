"""Command-line front end.

    kerrqnd design --theta-max 0.01 --p-error 0.01
    kerrqnd sweep-fig4 --out fig4.csv
    kerrqnd montecarlo --theta-max 0.01 --shots 1000000 --seed 7
    kerrqnd oracle-check
    kerrqnd rabi --material nv-diamond

Settings may also come from a YAML file (``--config``); flags win.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import warnings
from concurrent.futures import ThreadPoolExecutor

import numpy as np
import yaml

from . import eit_design, fock_oracle, homodyne, kerr_model
from .core import DomainError, FockSignal, KerrInteraction, ProbeState, get_preset

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_INFEASIBLE = 3
EXIT_ORACLE = 4

DEFAULTS = {
    "theta_max": 0.01,
    "p_error": 0.01,
    "snr": None,
    "snr_rule": "rounded",
    "ratio": 10.0,
    "material": "nv-diamond",
    "shots": 100_000,
    "seed": 0,
    "workers": 1,
    "out": None,
    "format": None,
    "si": False,
}

DEFAULT_SWEEP_P_ERRORS = (1e-2, 1e-3, 1e-4)
ORACLE_TOL = 1e-6
ROTATION_TOL = 1e-8
ORACLE_ALPHA_LIMIT = 4.0


class ConfigError(Exception):
    pass


def _float_list(text):
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _int_list(text):
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="YAML file of flat key: value settings")
    common.add_argument("--theta-max", type=float, default=None, help="largest single-photon phase (rad)")
    common.add_argument("--p-error", type=float, default=None, help="target error probability")
    common.add_argument("--snr", type=float, default=None, help="target SNR; overrides --p-error")
    common.add_argument(
        "--snr-rule", choices=["rounded", "exact"], default=None,
        help="'rounded' uses SNR=4.6 for P_error=0.01, 'exact' inverts erfc",
    )
    common.add_argument("--ratio", type=float, default=None, help="pump/probe photon ratio (default 10)")
    common.add_argument("--material", default=None, help="material preset (default nv-diamond)")
    common.add_argument("--shots", type=int, default=None)
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--workers", type=int, default=None)
    common.add_argument("--out", default=None, help="write output here instead of stdout")
    common.add_argument("--format", choices=["csv", "structured"], default=None)
    common.add_argument("--si", action="store_const", const=True, default=None, help="add SI-unit columns")

    parser = argparse.ArgumentParser(prog="kerrqnd", description="Cross-Kerr QND photon detector design tools")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("design", parents=[common], help="solve the minimum-resource design point")

    p = sub.add_parser("sweep-fig4", parents=[common], help="N_min versus theta_max for several error rates")
    p.add_argument("--thetas", type=_float_list, default=None, help="explicit theta grid, comma separated")
    p.add_argument("--theta-range", type=float, nargs=3, metavar=("LO", "HI", "NUM"), default=None,
                   help="log-spaced grid")
    p.add_argument("--p-errors", type=_float_list, default=None)

    p = sub.add_parser("montecarlo", parents=[common], help="simulate homodyne decisions")
    p.add_argument("--true-n", type=int, default=1)
    p.add_argument("--n-max", type=int, default=1)
    p.add_argument("--alpha-c", type=float, default=None, help="probe amplitude; default from the design")
    p.add_argument("--theta", type=float, default=None, help="phase per photon; default theta_max")
    p.add_argument("--with-absorption", action="store_true", help="damp the probe by the design's kappa")

    p = sub.add_parser("oracle-check", parents=[common], help="compare the Fock-basis oracle with the closed forms")
    p.add_argument("--alphas", type=_float_list, default=[0.5, 1.0, 2.0, 3.0])
    p.add_argument("--thetas", type=_float_list, default=[0.0, 0.01, 0.1, 0.5, math.pi / 2])
    p.add_argument("--photons", type=_int_list, default=[0, 1, 2, 3])
    p.add_argument("--dim", type=int, default=None, help="force the truncation dimension (skips the safety rule)")

    p = sub.add_parser("rabi", parents=[common], help="vacuum Rabi frequency of a material")
    p.add_argument("--oscillator-strength", type=float, default=None)
    p.add_argument("--wavelength", type=float, default=None, help="m")
    p.add_argument("--refractive-index", type=float, default=None)
    p.add_argument("--bandwidth-mhz", type=float, default=None, help="pulse bandwidth delta_omega / 2 pi")
    return parser


def resolve_settings(args: argparse.Namespace) -> dict:
    settings = dict(DEFAULTS)
    if args.config:
        try:
            with open(args.config) as fh:
                loaded = yaml.safe_load(fh) or {}
        except (OSError, yaml.YAMLError) as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}")
        if not isinstance(loaded, dict):
            raise ConfigError("config file must be a flat mapping")
        for key, value in loaded.items():
            key = str(key).replace("-", "_")
            if key not in DEFAULTS:
                raise ConfigError(f"unknown config key {key!r}")
            settings[key] = value
    for key in DEFAULTS:
        value = getattr(args, key, None)
        if value is not None:
            settings[key] = value
    return settings


def _design(settings, theta_max=None, p_error=None):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", eit_design.WeakSignalWarning)
        return eit_design.design_minimum(
            theta_max=settings["theta_max"] if theta_max is None else theta_max,
            target_p_error=settings["p_error"] if p_error is None else p_error,
            pump_probe_ratio=float(settings["ratio"]),
            gamma4_over_gamma2=_material(settings).gamma4 / _material(settings).gamma2,
            omega_a_sq_t=eit_design.omega_a_sq_t(_material(settings).eta),
            snr=settings["snr"],
            snr_rule=settings["snr_rule"],
        )


def _material(settings):
    try:
        return get_preset(settings["material"])
    except KeyError as exc:
        raise ConfigError(exc.args[0])


def _fmt(value):
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _emit(text: str, settings: dict):
    if settings["out"]:
        with open(settings["out"], "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _as_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(list(rows[0]))
    for row in rows:
        writer.writerow([_fmt(v) for v in row.values()])
    return buf.getvalue()


def _as_structured(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _render(obj, settings, default_format):
    fmt = settings["format"] or default_format
    if fmt == "csv":
        rows = obj if isinstance(obj, list) else [obj]
        return _as_csv(rows)
    return _as_structured(obj)


def cmd_design(args, settings) -> int:
    design = _design(settings)
    report = design.as_dict()
    report["material"] = settings["material"]
    report["absorption_percent"] = 100 * report["absorption"]
    if settings["si"]:
        mat = _material(settings)
        report["nu_c_rad_per_s"] = design.nu_c * mat.gamma2
        report["nu_c_over_2pi_MHz"] = design.nu_c * mat.gamma2 / (2 * math.pi) / 1e6
        report["gamma2_per_s"] = mat.gamma2
    _emit(_render(report, settings, "structured"), settings)
    return EXIT_OK


def sweep_grid(args) -> list[float]:
    if args.thetas is not None:
        grid = list(args.thetas)
    elif args.theta_range is not None:
        lo, hi, num = args.theta_range
        grid = [float(v) for v in np.geomspace(lo, hi, int(num))] if int(num) > 0 else []
    else:
        grid = [float(v) for v in np.geomspace(1e-3, 1e-1, 21)]
    return grid


def sweep_rows(thetas, p_errors, settings) -> list[dict]:
    cells = [(i, j, p, t) for i, p in enumerate(p_errors) for j, t in enumerate(thetas)]

    def row(cell):
        i, j, p, t = cell
        d = _design(settings, theta_max=t, p_error=p)
        return (i, j), {
            "theta_max": t,
            "p_error": p,
            "snr": d.snr,
            "n_min": d.n_atoms,
            "alpha_c": d.drive.alpha_c,
            "n_c": d.drive.n_c,
            "nu_c_min": d.nu_c,
        }

    with ThreadPoolExecutor(max_workers=max(1, int(settings["workers"]))) as pool:
        results = list(pool.map(row, cells))
    results.sort(key=lambda r: r[0])
    return [r for _, r in results]


def cmd_sweep_fig4(args, settings) -> int:
    thetas = sweep_grid(args)
    if not thetas:
        raise ConfigError("empty theta grid")
    p_errors = args.p_errors if args.p_errors else list(DEFAULT_SWEEP_P_ERRORS)
    # an explicit --snr would collapse every curve onto one
    settings = dict(settings, snr=None)
    rows = sweep_rows(thetas, p_errors, settings)
    _emit(_render(rows, settings, "csv"), settings)
    return EXIT_OK


def cmd_montecarlo(args, settings) -> int:
    design = _design(settings)
    alpha_c = design.drive.alpha_c if args.alpha_c is None else args.alpha_c
    theta = settings["theta_max"] if args.theta is None else args.theta
    kappa = design.kerr.kappa if args.with_absorption else 0.0
    plan = homodyne.build_plan(alpha_c, KerrInteraction(theta, kappa), args.n_max)
    if not 0 <= args.true_n <= plan.n_max:
        raise ConfigError(f"--true-n must lie in [0, {plan.n_max}]")
    shots = int(settings["shots"])
    if shots < 1:
        raise ConfigError("--shots must be >= 1")
    counts = homodyne.simulate_shots(plan, args.true_n, shots, int(settings["seed"]), int(settings["workers"]))
    empirical = homodyne.error_rate(counts, args.true_n)
    predicted = homodyne.predicted_error(plan, args.true_n)
    sigma = homodyne.binomial_sigma(predicted, shots)
    report = {
        "true_n": args.true_n,
        "shots": shots,
        "seed": int(settings["seed"]),
        "workers": int(settings["workers"]),
        "alpha_c": alpha_c,
        "theta": theta,
        "kappa": kappa,
        "means": list(plan.means),
        "thresholds": list(plan.thresholds),
        "counts": [int(c) for c in counts],
        "empirical_error": empirical,
        "predicted_error": predicted,
        "binomial_sigma": sigma,
        "z_score": (empirical - predicted) / sigma if sigma > 0 else 0.0,
    }
    _emit(_render(report, settings, "structured"), settings)
    return EXIT_OK


def oracle_cell(alpha, theta, n_a, dim=None) -> dict:
    """Largest oracle-vs-closed-form deviation for one grid cell."""
    check = dim is None
    dim = fock_oracle.min_dim(alpha) if dim is None else dim
    start = fock_oracle.coherent_vector(alpha, dim, check=check)
    evolved = fock_oracle.kerr_unitary_apply(start, n_a, theta)
    rotated = fock_oracle.coherent_vector(alpha * complex(math.cos(n_a * theta), math.sin(n_a * theta)), dim, check=check)
    probe = kerr_model.evolve_probe(FockSignal(n_a), ProbeState(alpha), KerrInteraction(theta))
    moment_dev = 0.0
    for phi in (0.0, -math.pi / 2):
        mean, var = fock_oracle.quadrature_moments(evolved, phi)
        expected = homodyne.quadrature_mean(probe, homodyne.QuadratureSpec(phi))
        moment_dev = max(moment_dev, abs(mean - expected), abs(var - 1.0))
    return {
        "alpha": alpha,
        "theta": theta,
        "n_a": n_a,
        "dim": dim,
        "moment_deviation": moment_dev,
        "rotation_distance": evolved.distance(rotated),
        "passed": moment_dev <= ORACLE_TOL and evolved.distance(rotated) <= ROTATION_TOL,
    }


def cmd_oracle_check(args, settings) -> int:
    if any(a > ORACLE_ALPHA_LIMIT for a in args.alphas):
        raise ConfigError(f"oracle amplitudes must be <= {ORACLE_ALPHA_LIMIT}")
    if args.dim is not None and args.dim < 1:
        raise ConfigError("--dim must be >= 1")
    cells = [oracle_cell(a, t, n, args.dim) for a in args.alphas for t in args.thetas for n in args.photons]
    _emit(_render(cells, settings, "csv"), settings)
    return EXIT_OK if all(c["passed"] for c in cells) else EXIT_ORACLE


def cmd_rabi(args, settings) -> int:
    mat = _material(settings)
    changes = {}
    if args.oscillator_strength is not None:
        changes["f_k"] = args.oscillator_strength
    if args.wavelength is not None:
        changes["lambda_k"] = args.wavelength
    if args.refractive_index is not None:
        changes["eta"] = args.refractive_index
    if args.bandwidth_mhz is not None:
        changes["delta_omega"] = 2 * math.pi * args.bandwidth_mhz * 1e6
    if changes:
        mat = mat.scaled(**changes)
    _emit(_render(eit_design.rabi_report(mat), settings, "structured"), settings)
    return EXIT_OK


COMMANDS = {
    "design": cmd_design,
    "sweep-fig4": cmd_sweep_fig4,
    "montecarlo": cmd_montecarlo,
    "oracle-check": cmd_oracle_check,
    "rabi": cmd_rabi,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        settings = resolve_settings(args)
        return COMMANDS[args.command](args, settings)
    except ConfigError as exc:
        print(f"kerrqnd: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except DomainError as exc:
        print(f"kerrqnd: infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE


if __name__ == "__main__":
    sys.exit(main())
