"""EIT cross-Kerr medium: coupling strengths, the complex level shift, and the
minimum-resource design solver.

Everything below ``omega_a_sq_t`` works in units of gamma2 (rates) and
1/gamma2 (times). Only :func:`vacuum_rabi_sq` and :func:`rabi_report` touch SI
values.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .core import (
    ELECTRON_MASS,
    ELEMENTARY_CHARGE,
    EPSILON_0,
    SPEED_OF_LIGHT,
    DetectorDesign,
    DomainError,
    DriveConfig,
    KerrInteraction,
    MaterialSystem,
    complex_div,
)
from .homodyne import p_error_binary, required_alpha, snr_for_p_error

# Conventional SNR for a 1% error rate, rounded the usual way.
SNR_FOR_ONE_PERCENT = 4.6
ATOM_COUNT_LIMIT = 1e4


class WeakSignalWarning(UserWarning):
    """The operating point leaves the regime where the level-shift formula holds."""


@dataclass(frozen=True)
class RabiSpec:
    omega_sq: float
    sigma_k: float
    a_k: float
    mode_area: float
    interaction_time: float = math.nan
    omega_sq_t: float = math.nan

    @property
    def omega(self) -> float:
        return math.sqrt(self.omega_sq)

    @property
    def omega_over_2pi(self) -> float:
        return self.omega / (2 * math.pi)


@dataclass(frozen=True)
class ComplexShift:
    w: complex = 0j
    theta_kappa: complex = 0j

    @property
    def theta(self) -> float:
        return self.theta_kappa.real

    @property
    def kappa(self) -> float:
        return -self.theta_kappa.imag


def mode_area(lam: float, eta: float) -> float:
    if lam <= 0 or eta <= 0:
        raise DomainError("wavelength and refractive index must be > 0")
    return (lam / (3.0 * eta)) ** 2


def cross_section(lam: float) -> float:
    """Resonant absorption cross-section 3 lambda^2 / 2 pi."""
    return 3.0 * lam**2 / (2.0 * math.pi)


def transition_rate(mat: MaterialSystem, reading: str = "rate") -> float:
    """A_k = f e^2 omega^2 / (2 pi eps0 m_e c^n).

    ``reading="rate"`` uses n = 3, which makes A_k an inverse time.
    ``reading="printed"`` uses n = 2 as the formula is usually quoted; the
    result then carries units of m/s^2 and is reported for comparison only.
    """
    omega = 2.0 * math.pi * SPEED_OF_LIGHT / mat.lambda_k
    base = mat.f_k * ELEMENTARY_CHARGE**2 * omega**2 / (2.0 * math.pi * EPSILON_0 * ELECTRON_MASS)
    if reading == "rate":
        return base / SPEED_OF_LIGHT**3
    if reading == "printed":
        return base / SPEED_OF_LIGHT**2
    raise ValueError(f"unknown A_k reading {reading!r}")


def vacuum_rabi_sq(mat: MaterialSystem, reading: str = "rate") -> float:
    """|Omega|^2 = (sigma / eta A) A_k delta_omega / 8 pi, in rad^2/s^2."""
    sigma = cross_section(mat.lambda_k)
    return sigma / (mat.eta * mat.area) * transition_rate(mat, reading) * mat.delta_omega / (8.0 * math.pi)


def rabi_report(mat: MaterialSystem, bandwidth_time: float = 3 * math.pi) -> dict:
    spec = RabiSpec(
        omega_sq=vacuum_rabi_sq(mat),
        sigma_k=cross_section(mat.lambda_k),
        a_k=transition_rate(mat),
        mode_area=mat.area,
        interaction_time=bandwidth_time / mat.delta_omega,
    )
    t = spec.interaction_time
    return {
        "material": mat.name,
        "wavelength_m": mat.lambda_k,
        "oscillator_strength": mat.f_k,
        "refractive_index": mat.eta,
        "sigma_k_m2": spec.sigma_k,
        "mode_area_m2": spec.mode_area,
        "A_k_rate_per_s": spec.a_k,
        "A_k_printed_m_per_s2": transition_rate(mat, "printed"),
        "omega_sq_rad2_per_s2": spec.omega_sq,
        "omega_rad_per_s": spec.omega,
        "omega_over_2pi_MHz": spec.omega_over_2pi / 1e6,
        "omega_over_gamma2": spec.omega / mat.gamma2,
        "interaction_time_s": t,
        "omega_sq_t_over_gamma2": spec.omega_sq * t / mat.gamma2,
    }


def omega_a_sq_t(eta: float, gamma2: float = 1.0) -> float:
    """|Omega_a|^2 t for a bandwidth-time product of 3 pi in the waveguide, 81 eta gamma2 / 8 pi."""
    if eta <= 0 or gamma2 <= 0:
        raise DomainError("eta and gamma2 must be > 0")
    return 81.0 * eta * gamma2 / (8.0 * math.pi)


def compute_w(
    n_atoms, rabi_a_sq, rabi_b_sq, rabi_c_sq, n_a, n_b, n_c, nu_c, gamma2=1.0, gamma4=1.0
) -> ComplexShift:
    """Complex level shift W of the all-ground-state amplitude."""
    num = n_atoms * rabi_a_sq * rabi_c_sq * n_a * n_c
    den = complex(nu_c * rabi_b_sq * n_b, gamma4 * rabi_b_sq * n_b + gamma2 * rabi_c_sq * n_c)
    w = complex_div(num, den)
    return ComplexShift(w=w)


def theta_kappa(n_atoms, omega_a_sq_t, alpha_b, alpha_c, nu_c, gamma2=1.0, gamma4=1.0) -> ComplexShift:
    """theta - i kappa for equal pump and probe couplings."""
    if alpha_b <= 0:
        raise DomainError("alpha_b must be > 0")
    n_b, n_c = alpha_b**2, alpha_c**2
    den = complex(nu_c * n_b, gamma4 * n_b + gamma2 * n_c)
    return ComplexShift(theta_kappa=complex_div(n_atoms * omega_a_sq_t, den))


def min_detuning(pump_probe_ratio: float, gamma4_over_gamma2: float = 1.0) -> float:
    """nu_c,min / gamma2 = (r gamma4/gamma2 + 1) / r; independent of theta_max."""
    return (pump_probe_ratio * gamma4_over_gamma2 + 1.0) / pump_probe_ratio


def design_minimum(
    theta_max: float,
    target_p_error: float = 0.01,
    pump_probe_ratio: float = 10.0,
    gamma4_over_gamma2: float = 1.0,
    omega_a_sq_t: float = 81.0 * 2.4 / (8.0 * math.pi),
    snr: float | None = None,
    snr_rule: str = "rounded",
    linearized: bool = True,
) -> DetectorDesign:
    """Fewest atoms giving a phase ``theta_max`` per photon at the target error rate.

    The SNR comes from ``snr`` if given, otherwise from ``target_p_error``:
    ``snr_rule="exact"`` inverts the error formula, ``"rounded"`` uses 4.6 at
    P_error = 0.01 and the exact inverse elsewhere. With ``linearized`` the
    probe amplitude is snr / (2 theta_max); otherwise snr / (2 sin theta_max).

    At the returned (N_min, nu_c,min), kappa equals theta equals theta_max.
    """
    if not 0 < theta_max < 1:
        raise DomainError(f"theta_max must lie in (0, 1), got {theta_max}")
    if pump_probe_ratio <= 0 or gamma4_over_gamma2 <= 0 or omega_a_sq_t <= 0:
        raise DomainError("ratio, gamma4/gamma2 and |Omega_a|^2 t must be > 0")
    if snr is None:
        if not 0 < target_p_error < 0.5:
            raise DomainError(f"target_p_error must lie in (0, 0.5), got {target_p_error}")
        if snr_rule == "rounded" and math.isclose(target_p_error, 0.01):
            snr = SNR_FOR_ONE_PERCENT
        elif snr_rule in ("rounded", "exact"):
            snr = snr_for_p_error(target_p_error)
        else:
            raise ValueError(f"unknown snr_rule {snr_rule!r}")
    if not snr > 0:
        raise DomainError("snr must be > 0")

    alpha_c = required_alpha(snr, theta_max, linearized=linearized)
    drive = DriveConfig.from_ratio(alpha_c, pump_probe_ratio)
    n_b, n_c = pump_probe_ratio * alpha_c**2, alpha_c**2
    loss_rate = gamma4_over_gamma2 * n_b + n_c
    n_min = 2.0 * theta_max * loss_rate / omega_a_sq_t
    nu_min = loss_rate / n_b

    shift = theta_kappa(n_min, omega_a_sq_t, drive.alpha_b, alpha_c, nu_min, 1.0, gamma4_over_gamma2)
    if n_min > ATOM_COUNT_LIMIT:
        warnings.warn(
            f"N_min = {n_min:.4g} exceeds {ATOM_COUNT_LIMIT:.0e}; spin dephasing is no longer negligible",
            WeakSignalWarning,
            stacklevel=2,
        )
    return DetectorDesign(
        n_atoms=n_min,
        nu_c=nu_min,
        drive=drive,
        kerr=KerrInteraction(shift.theta, shift.kappa, phase_sign=-1),
        snr=snr,
        p_error=p_error_binary(snr),
        theta_max=theta_max,
    )


def check_weak_signal(omega_a: float, gamma2: float) -> bool:
    """Warn and return False when |Omega_a| exceeds gamma2."""
    if omega_a > gamma2:
        warnings.warn(
            f"|Omega_a|/gamma2 = {omega_a / gamma2:.3g} > 1; outside the weak-signal regime",
            WeakSignalWarning,
            stacklevel=2,
        )
        return False
    return True
