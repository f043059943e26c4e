"""Closed-form probe evolution under a (possibly lossy) cross-Kerr coupling.

The signal mode is never touched: a Fock state |n_a> only rotates and damps
the probe amplitude, so every function here takes the photon number as a
plain integer and hands it back unchanged.
"""

from __future__ import annotations

import cmath
import math

from .core import DomainError, FockSignal, KerrInteraction, ProbeState


def evolve_probe(signal: FockSignal, probe: ProbeState, kerr: KerrInteraction) -> ProbeState:
    """Probe amplitude after the interaction: alpha * exp(-n kappa) * exp(sign * i n theta)."""
    n = signal.n_a
    factor = math.exp(-n * kerr.kappa) * cmath.exp(1j * kerr.phase_sign * n * kerr.theta)
    return ProbeState(probe.alpha * factor)


def evolve_dual_path(n_h: int, n_v: int, probe: ProbeState, kerr: KerrInteraction) -> ProbeState:
    """Polarization-preserving detector: both arms apply the same per-photon shift.

    The probe passes both nonlinear sections in series, so the result only
    depends on n_h + n_v.
    """
    if n_h < 0 or n_v < 0:
        raise DomainError("photon numbers must be >= 0")
    probe = evolve_probe(FockSignal(n_h), probe, kerr)
    return evolve_probe(FockSignal(n_v), probe, kerr)


def survival_probability(n_a: int, kerr: KerrInteraction) -> float:
    if n_a < 0:
        raise DomainError("photon number must be >= 0")
    return math.exp(-n_a * kerr.kappa)


def residual_absorption(n_a: int, kerr: KerrInteraction) -> float:
    return -math.expm1(-n_a * kerr.kappa)
