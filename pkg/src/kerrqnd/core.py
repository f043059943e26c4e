"""Shared value types, constants and small numerical helpers.

Rates are measured in units of the level-2 decay rate gamma2 unless a
function says otherwise, so gamma2 == 1 throughout the design path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Tuple

# CODATA 2018 values, SI units
ELEMENTARY_CHARGE = 1.602176634e-19
EPSILON_0 = 8.8541878128e-12
ELECTRON_MASS = 9.1093837015e-31
SPEED_OF_LIGHT = 299792458.0


class DomainError(ValueError):
    """Raised when an input lies outside the domain of a formula."""


def complex_div(num: complex, den: complex) -> complex:
    if den == 0:
        raise DomainError("complex division by zero")
    return complex(num) / complex(den)


def erfc(x: float) -> float:
    """Complementary error function, erfc(x) = 1 - erf(x)."""
    return math.erfc(x)


@dataclass(frozen=True)
class KerrInteraction:
    """Per-signal-photon probe phase ``theta`` and absorption exponent ``kappa``.

    ``phase_sign`` fixes the rotation direction: +1 for exp(+i n theta),
    -1 for the exp(-i n (theta - i kappa)) form produced by the EIT medium.
    """

    theta: float
    kappa: float = 0.0
    phase_sign: int = 1

    def __post_init__(self):
        if not self.theta >= 0:
            raise DomainError(f"theta must be >= 0, got {self.theta}")
        if not self.kappa >= 0:
            raise DomainError(f"kappa must be >= 0, got {self.kappa}")
        if self.phase_sign not in (1, -1):
            raise DomainError(f"phase_sign must be +1 or -1, got {self.phase_sign}")


@dataclass(frozen=True)
class ProbeState:
    """Coherent probe amplitude."""

    alpha: complex

    def __post_init__(self):
        object.__setattr__(self, "alpha", complex(self.alpha))

    @property
    def mean_photons(self) -> float:
        return abs(self.alpha) ** 2


@dataclass(frozen=True)
class FockSignal:
    """Signal-mode photon number, optionally split by polarization."""

    n_a: int
    split: Optional[Tuple[int, int]] = None

    def __post_init__(self):
        if self.n_a < 0:
            raise DomainError(f"photon number must be >= 0, got {self.n_a}")
        if self.split is not None:
            n_h, n_v = self.split
            if n_h < 0 or n_v < 0 or n_h + n_v != self.n_a:
                raise DomainError(f"polarization split {self.split} does not sum to {self.n_a}")

    @classmethod
    def polarized(cls, n_h: int, n_v: int) -> "FockSignal":
        return cls(n_h + n_v, (n_h, n_v))


@dataclass(frozen=True)
class MaterialSystem:
    """Waveguide-embedded emitter constants (SI units, angular frequencies in rad/s).

    ``mode_area`` of None means the confined-waveguide rule (lambda / 3 eta)**2.
    """

    name: str
    lambda_k: float
    f_k: float
    eta: float
    gamma2: float
    gamma4: float
    delta_omega: float
    mode_area: Optional[float] = None

    def __post_init__(self):
        for key in ("lambda_k", "eta", "gamma2", "gamma4", "delta_omega"):
            if not getattr(self, key) > 0:
                raise DomainError(f"{key} must be > 0")
        if self.f_k < 0:
            raise DomainError("oscillator strength must be >= 0")
        if self.mode_area is not None and not self.mode_area > 0:
            raise DomainError("mode_area must be > 0")

    @property
    def area(self) -> float:
        if self.mode_area is not None:
            return self.mode_area
        return (self.lambda_k / (3.0 * self.eta)) ** 2

    def scaled(self, **changes) -> "MaterialSystem":
        values = {k: getattr(self, k) for k in self.__dataclass_fields__}
        values.update(changes)
        return MaterialSystem(**values)


# Nitrogen-vacancy centre in a diamond photonic-crystal waveguide.
NV_DIAMOND = MaterialSystem(
    name="nv-diamond",
    lambda_k=637e-9,
    f_k=0.12,
    eta=2.4,
    gamma2=1.0 / 50e-9,
    gamma4=1.0 / 50e-9,
    delta_omega=2 * math.pi * 5e6,
)

PRESETS = {NV_DIAMOND.name: NV_DIAMOND}


def get_preset(name: str) -> MaterialSystem:
    try:
        return PRESETS[name]
    except KeyError:
        raise KeyError(f"unknown material {name!r}; available: {', '.join(sorted(PRESETS))}") from None


@dataclass(frozen=True)
class DriveConfig:
    """Real pump (``alpha_b``) and probe (``alpha_c``) coherent amplitudes."""

    alpha_b: float
    alpha_c: float

    def __post_init__(self):
        if self.alpha_b < 0 or self.alpha_c < 0:
            raise DomainError("drive amplitudes must be >= 0")

    @classmethod
    def from_ratio(cls, alpha_c: float, pump_probe_ratio: float) -> "DriveConfig":
        return cls(math.sqrt(pump_probe_ratio) * alpha_c, alpha_c)

    @property
    def pump_probe_ratio(self) -> float:
        if self.alpha_c == 0:
            return math.inf
        return self.alpha_b**2 / self.alpha_c**2

    @property
    def n_b(self) -> float:
        return self.alpha_b**2

    @property
    def n_c(self) -> float:
        return self.alpha_c**2


@dataclass(frozen=True)
class DetectorDesign:
    """A solved minimum-resource operating point (rates in gamma2 units)."""

    n_atoms: float
    nu_c: float
    drive: DriveConfig
    kerr: KerrInteraction
    snr: float
    p_error: float
    theta_max: float = field(default=0.0)

    def __post_init__(self):
        if not self.n_atoms > 0:
            raise DomainError("n_atoms must be > 0")
        if not 0 < self.p_error <= 0.5:
            raise DomainError(f"p_error must lie in (0, 0.5], got {self.p_error}")

    @property
    def absorption(self) -> float:
        """Single-photon residual absorption 1 - exp(-kappa)."""
        return -math.expm1(-self.kerr.kappa)

    def as_dict(self) -> dict:
        return {
            "theta_max": self.theta_max,
            "p_error": self.p_error,
            "snr": self.snr,
            "n_atoms": self.n_atoms,
            "n_atoms_rounded": math.ceil(self.n_atoms),
            "nu_c_over_gamma2": self.nu_c,
            "alpha_b": self.drive.alpha_b,
            "alpha_c": self.drive.alpha_c,
            "n_b": self.drive.n_b,
            "n_c": self.drive.n_c,
            "pump_probe_ratio": self.drive.pump_probe_ratio,
            "theta": self.kerr.theta,
            "kappa": self.kerr.kappa,
            "absorption": self.absorption,
        }
