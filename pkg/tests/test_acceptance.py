"""Exit criteria for the detector toolkit, one test per criterion."""

import csv
import io
import itertools
import math
import random
import time
import warnings
from contextlib import redirect_stdout

from conftest import ACCEPTANCE_RESULTS
from kerrqnd import eit_design as ed
from kerrqnd import fock_oracle as fo
from kerrqnd.cli import main
from kerrqnd.core import NV_DIAMOND, FockSignal, KerrInteraction, ProbeState
from kerrqnd.homodyne import (
    QuadratureSpec,
    build_plan,
    error_rate,
    p_error_binary,
    quadrature_mean,
    simulate_shots,
    snr_y,
)
from kerrqnd.kerr_model import evolve_probe

OMEGA_T = 81 * 2.4 / (8 * math.pi)


def record(key, ok, detail):
    ACCEPTANCE_RESULTS[key] = (bool(ok), detail)
    assert ok, f"{key}: {detail}"


def test_ac1_binary_discrimination():
    start = time.perf_counter()
    analytic = p_error_binary(4.6)
    plan = build_plan(2.3, KerrInteraction(math.pi / 2), 1)
    rate = error_rate(simulate_shots(plan, 1, 1_000_000, seed=20240601), 1)
    elapsed = time.perf_counter() - start
    ok = abs(analytic - 1.078e-2) <= 1e-4 and abs(rate - 1.078e-2) <= 3.1e-4 and elapsed < 5
    record("AC1 binary discrimination", ok,
           f"analytic={analytic:.5e}, monte-carlo={rate:.5e} (1e6 shots), {elapsed:.2f}s")


def test_ac2_design_point_a():
    d = ed.design_minimum(0.01, snr=4.6, pump_probe_ratio=10, gamma4_over_gamma2=1.0, omega_a_sq_t=OMEGA_T)
    ok = 1350 <= d.n_atoms <= 1700 and abs(d.nu_c - 1.1) <= 1e-12
    record("AC2 design point A", ok, f"N_min={d.n_atoms:.4f}, nu_c,min/gamma2={d.nu_c!r}")


def test_ac3_design_point_b():
    d = ed.design_minimum(0.1, snr=4.6, pump_probe_ratio=10, gamma4_over_gamma2=1.0, omega_a_sq_t=OMEGA_T)
    absorption = 1 - math.exp(-d.kerr.kappa)
    ok = (140 <= d.n_atoms <= 170 and 500 <= d.drive.n_c <= 600 and 0.09 <= absorption <= 0.105
          and abs(d.kerr.kappa - d.kerr.theta) <= 1e-9 * d.kerr.theta)
    record("AC3 design point B", ok,
           f"N_min={d.n_atoms:.3f}, <n_c>={d.drive.n_c:.1f}, absorption={100 * absorption:.3f}%")


def test_ac4_design_point_c():
    b = ed.design_minimum(0.1, snr=4.6, pump_probe_ratio=10, gamma4_over_gamma2=1.0, omega_a_sq_t=OMEGA_T)
    shift = ed.theta_kappa(800, OMEGA_T, b.drive.alpha_b, b.drive.alpha_c, 11.0)
    absorption = 1 - math.exp(-shift.kappa)
    ok = (0.10 <= shift.theta <= 0.11 and abs(shift.kappa / shift.theta - 0.1) <= 1e-12
          and absorption <= 0.013)
    record("AC4 design point C", ok,
           f"theta={shift.theta:.6f}, kappa/theta={shift.kappa / shift.theta!r}, absorption={100 * absorption:.3f}%")


def test_ac5_kappa_equals_theta():
    rng = random.Random(5)
    worst = 0.0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ed.WeakSignalWarning)
        for _ in range(50):
            theta_max = rng.uniform(1e-3, 0.99)
            p_error = 10 ** rng.uniform(-8, math.log10(0.45))
            ratio = 10 ** rng.uniform(-1, 3)
            d = ed.design_minimum(theta_max, p_error, ratio)
            worst = max(worst, abs(d.kerr.kappa - d.kerr.theta) / d.kerr.theta)
    record("AC5 kappa=theta identity", worst <= 1e-9, f"max |kappa-theta|/theta over 50 draws = {worst:.2e}")


def test_ac6_fig4_sweep():
    buf = io.StringIO()
    start = time.perf_counter()
    with redirect_stdout(buf):
        code = main(["sweep-fig4", "--theta-range", "0.001", "0.1", "100"])
    elapsed = time.perf_counter() - start
    rows = list(csv.DictReader(io.StringIO(buf.getvalue())))
    curves = {}
    for r in rows:
        curves.setdefault(float(r["p_error"]), []).append(r)
    worst_spread = 0.0
    for curve in curves.values():
        products = [float(r["n_min"]) * float(r["theta_max"]) for r in curve]
        worst_spread = max(worst_spread, (max(products) - min(products)) / products[0])
    # stricter error targets need more atoms at every theta
    ps = sorted(curves, reverse=True)
    ordered = all(
        float(loose["n_min"]) < float(strict["n_min"])
        for p_loose, p_strict in zip(ps, ps[1:])
        for loose, strict in zip(curves[p_loose], curves[p_strict])
    )
    nu_ok = all(abs(float(r["nu_c_min"]) - 1.1) <= 1e-12 for r in rows)
    ok = code == 0 and len(curves) == 3 and worst_spread <= 1e-9 and ordered and nu_ok and elapsed < 1
    record("AC6 Fig. 4 sweep", ok,
           f"{len(rows)} rows, N*theta spread={worst_spread:.1e}, ordered={ordered}, nu_c col 1.1={nu_ok}, {elapsed:.3f}s")


def test_ac7_oracle_equivalence():
    start = time.perf_counter()
    worst_moment = worst_rot = 0.0
    for alpha, theta, n_a in itertools.product([0.5, 1, 2, 3], [0, 0.01, 0.1, 0.5, math.pi / 2], range(4)):
        v = fo.kerr_unitary_apply(fo.coherent_vector(alpha), n_a, theta)
        probe = evolve_probe(FockSignal(n_a), ProbeState(alpha), KerrInteraction(theta))
        for phi in (0.0, -math.pi / 2, 0.7):
            mean, var = fo.quadrature_moments(v, phi)
            worst_moment = max(worst_moment, abs(mean - quadrature_mean(probe, QuadratureSpec(phi))), abs(var - 1))
        rotated = fo.coherent_vector(alpha * complex(math.cos(n_a * theta), math.sin(n_a * theta)), v.dim)
        worst_rot = max(worst_rot, v.distance(rotated))
    elapsed = time.perf_counter() - start
    ok = worst_moment <= 1e-6 and worst_rot <= 1e-8 and elapsed < 10
    record("AC7 oracle equivalence", ok,
           f"max moment dev={worst_moment:.1e}, max rotation dist={worst_rot:.1e}, {elapsed:.2f}s")


def test_ac8_snr_doubling():
    ratio = snr_y(230, 0.01, 2) / snr_y(230, 0.01, 1)
    ok = abs(ratio - 2) <= 0.005 * 2 and abs(ratio - 2 * math.cos(0.01)) <= 1e-9
    record("AC8 SNR doubling", ok, f"ratio={ratio!r}, 2cos(0.01)={2 * math.cos(0.01)!r}")


def test_ac9_w_theta_kappa_consistency():
    rng = random.Random(9)
    worst = 0.0
    for _ in range(100):
        n_atoms = rng.uniform(1, 1e4)
        rabi_a_sq = rng.uniform(0.01, 10)
        rabi_sq = rng.uniform(0.01, 10)
        alpha_c = rng.uniform(0.1, 500)
        alpha_b = alpha_c * math.sqrt(rng.uniform(0.1, 100))
        nu_c = rng.uniform(-50, 50)
        g2, g4 = rng.uniform(0.1, 5), rng.uniform(0.1, 5)
        t = rng.uniform(0.1, 10)
        n_a = rng.randint(1, 5)
        n_b, n_c = alpha_b**2, alpha_c**2
        w = ed.compute_w(n_atoms, rabi_a_sq, rabi_sq, rabi_sq, n_a, n_b, n_c, nu_c, g2, g4).w
        tk = ed.theta_kappa(n_atoms, rabi_a_sq * t, alpha_b, alpha_c, nu_c, g2, g4).theta_kappa
        worst = max(worst, abs(w * t - n_a * n_c * tk) / abs(w * t))
    record("AC9 W / theta-kappa consistency", worst <= 1e-12, f"max relative error={worst:.1e} over 100 draws")


def test_ac10_rabi_band():
    omega = math.sqrt(ed.vacuum_rabi_sq(NV_DIAMOND))
    mhz = omega / (2 * math.pi) / 1e6
    record("AC10 Rabi frequency", 2 <= mhz <= 6, f"Omega/2pi={mhz:.3f} MHz (band [2, 6])")
