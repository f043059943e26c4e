"""Brute-force check of the analytic probe model in a truncated Fock basis.

Kept deliberately separate from ``kerr_model`` and ``homodyne``: states are
explicit coefficient vectors, the Kerr coupling is a diagonal phase matrix,
and quadrature moments come from the tridiagonal operator matrix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import DomainError


def min_dim(alpha: complex) -> int:
    r = abs(alpha)
    # slack absorbs rounding in |alpha| after a phase rotation
    return int(math.ceil(r * r + 8 * r + 20 - 1e-9))


@dataclass(frozen=True, eq=False)
class TruncatedMode:
    amplitudes: np.ndarray

    def __post_init__(self):
        if self.amplitudes.ndim != 1 or self.amplitudes.size < 1:
            raise DomainError("amplitudes must be a non-empty vector")

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def mean_number(self) -> float:
        p = np.abs(self.amplitudes) ** 2
        return float(p @ np.arange(self.dim))

    def distance(self, other: "TruncatedMode") -> float:
        return float(np.linalg.norm(self.amplitudes - other.amplitudes))


def _log_factorials(dim: int) -> np.ndarray:
    out = np.zeros(dim)
    out[1:] = np.cumsum(np.log(np.arange(1, dim)))
    return out


def coherent_vector(alpha: complex, dim: int | None = None, check: bool = True) -> TruncatedMode:
    """Fock coefficients exp(-|a|^2/2) a^n / sqrt(n!) for n < dim.

    ``check=False`` skips the truncation rule; used to build deliberately
    under-resolved states.
    """
    alpha = complex(alpha)
    if dim is None:
        dim = min_dim(alpha)
    if dim < 1:
        raise DomainError("dim must be >= 1")
    if check and dim < min_dim(alpha):
        raise DomainError(f"dim={dim} too small for |alpha|={abs(alpha):.3g}; need >= {min_dim(alpha)}")
    n = np.arange(dim)
    if alpha == 0:
        amps = np.zeros(dim, dtype=complex)
        amps[0] = 1.0
        return TruncatedMode(amps)
    r, phase = abs(alpha), np.angle(alpha)
    log_mag = -0.5 * r * r + n * math.log(r) - 0.5 * _log_factorials(dim)
    amps = np.exp(log_mag) * np.exp(1j * phase * n)
    mode = TruncatedMode(amps)
    if check and mode.norm < 1 - 1e-8:
        raise DomainError(f"truncated norm {mode.norm} below 1 - 1e-8")
    return mode


def kerr_unitary_apply(mode: TruncatedMode, n_a: int, theta: float, phase_sign: int = 1) -> TruncatedMode:
    """Apply exp(i sign theta n_a c^dag c) to the probe for a fixed signal photon number."""
    n = np.arange(mode.dim)
    return TruncatedMode(mode.amplitudes * np.exp(1j * phase_sign * n_a * theta * n))


def damped_amplitude_apply(
    alpha: complex, n_a: int, theta: float, kappa: float, dim: int | None = None, phase_sign: int = 1
) -> TruncatedMode:
    if dim is None:
        dim = min_dim(alpha)
    out = complex(alpha) * math.exp(-n_a * kappa) * complex(math.cos(n_a * theta), phase_sign * math.sin(n_a * theta))
    return coherent_vector(out, dim)


def quadrature_matrix(dim: int, phi: float) -> np.ndarray:
    """Matrix of c e^{i phi} + c^dag e^{-i phi} in the truncated Fock basis."""
    c = np.diag(np.sqrt(np.arange(1, dim)), k=1).astype(complex)
    return c * np.exp(1j * phi) + c.conj().T * np.exp(-1j * phi)


def quadrature_moments(mode: TruncatedMode, phi: float) -> tuple[float, float]:
    """Mean and variance of x(phi).

    <x^2> is taken as |x psi|^2 with the truncated matrix, which drops the
    c^dag image of the top Fock level. The truncation rule keeps that weight
    negligible.
    """
    psi = mode.amplitudes
    x = quadrature_matrix(mode.dim, phi)
    x_psi = x @ psi
    mean = float(np.vdot(psi, x_psi).real)
    second = float(np.vdot(x_psi, x_psi).real)
    return mean, second - mean**2
