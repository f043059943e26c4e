"""Homodyne readout of the probe: quadrature means, SNR, error rates, Monte-Carlo.

Quadrature convention is x(phi) = c exp(i phi) + c^dag exp(-i phi), so a
coherent state has unit variance in every quadrature.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, Sequence

import numpy as np
from scipy.special import erfcinv

from .core import DomainError, KerrInteraction, ProbeState, erfc

SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class QuadratureSpec:
    phi: float


def y_quadrature(phase_sign: int = 1) -> QuadratureSpec:
    """Quadrature that reads +2 alpha sin(n theta) for a real initial probe."""
    return QuadratureSpec(-phase_sign * math.pi / 2)


def quadrature_mean(probe: ProbeState, spec: QuadratureSpec) -> float:
    return 2.0 * (probe.alpha * complex(math.cos(spec.phi), math.sin(spec.phi))).real


def snr_y(alpha_c: float, theta: float, n_a: int, kappa: float = 0.0) -> float:
    if alpha_c < 0:
        raise DomainError("alpha_c must be >= 0")
    return 2.0 * alpha_c * math.exp(-n_a * kappa) * abs(math.sin(n_a * theta))


def p_error_binary(snr: float) -> float:
    """Error probability for telling |alpha> from |alpha e^{i theta}> at a midpoint threshold."""
    if snr < 0:
        raise DomainError("snr must be >= 0")
    return 0.5 * erfc(snr / (2.0 * SQRT2))


def snr_for_p_error(p_error: float) -> float:
    """Inverse of :func:`p_error_binary`."""
    if not 0 < p_error < 0.5:
        raise DomainError(f"p_error must lie in (0, 0.5), got {p_error}")
    return 2.0 * SQRT2 * float(erfcinv(2.0 * p_error))


def required_alpha(target_snr: float, theta_max: float, linearized: bool = False) -> float:
    """Probe amplitude reaching ``target_snr`` for one photon at phase ``theta_max``.

    With ``linearized`` the small-angle form snr / (2 theta) is used instead
    of snr / (2 sin theta).
    """
    if not 0 < theta_max < math.pi:
        raise DomainError(f"theta_max must lie in (0, pi), got {theta_max}")
    if linearized:
        return target_snr / (2.0 * theta_max)
    return target_snr / (2.0 * math.sin(theta_max))


@dataclass(frozen=True)
class DiscriminationPlan:
    means: tuple
    thresholds: tuple
    variance: float = 1.0

    @property
    def n_max(self) -> int:
        return len(self.means) - 1

    def classify(self, y):
        return np.searchsorted(np.asarray(self.thresholds), y)


def build_plan(alpha_c: float, kerr: KerrInteraction, n_max: int, variance: float = 1.0) -> DiscriminationPlan:
    if n_max < 1:
        raise DomainError("n_max must be >= 1")
    means = [2.0 * alpha_c * math.exp(-n * kerr.kappa) * math.sin(n * kerr.theta) for n in range(n_max + 1)]
    for n in range(n_max):
        if not means[n + 1] > means[n]:
            raise DomainError(
                f"readout means stop increasing at n={n + 1}; "
                f"the phase shift is too large to resolve {n_max} photons"
            )
    thresholds = [0.5 * (means[n] + means[n + 1]) for n in range(n_max)]
    return DiscriminationPlan(tuple(means), tuple(thresholds), variance)


def _normal_cdf(z: float) -> float:
    return 0.5 * erfc(-z / SQRT2)


def predicted_confusion(plan: DiscriminationPlan, true_n: int) -> List[float]:
    """Probability of deciding each n given ``true_n``, from Gaussian tails."""
    sigma = math.sqrt(plan.variance)
    mu = plan.means[true_n]
    edges = [-math.inf, *plan.thresholds, math.inf]
    probs = []
    for lo, hi in zip(edges[:-1], edges[1:]):
        if sigma == 0:
            probs.append(1.0 if lo < mu <= hi else 0.0)
            continue
        p_lo = _normal_cdf((lo - mu) / sigma) if lo != -math.inf else 0.0
        p_hi = _normal_cdf((hi - mu) / sigma) if hi != math.inf else 1.0
        probs.append(max(p_hi - p_lo, 0.0))
    return probs


def predicted_error(plan: DiscriminationPlan, true_n: int) -> float:
    sigma = math.sqrt(plan.variance)
    mu = plan.means[true_n]
    if sigma == 0:
        return 0.0
    err = 0.0
    if true_n > 0:
        err += _normal_cdf((plan.thresholds[true_n - 1] - mu) / sigma)
    if true_n < plan.n_max:
        err += _normal_cdf((mu - plan.thresholds[true_n]) / sigma)
    return err


def sample_quadrature(plan: DiscriminationPlan, true_n: int, shots: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    return rng.normal(plan.means[true_n], math.sqrt(plan.variance), size=shots)


def _block_counts(plan, true_n, shots, seed_seq):
    rng = np.random.default_rng(seed_seq)
    y = rng.normal(plan.means[true_n], math.sqrt(plan.variance), size=shots)
    return np.bincount(plan.classify(y), minlength=plan.n_max + 1)


def simulate_shots(
    plan: DiscriminationPlan, true_n: int, shots: int, seed: int, workers: int = 1
) -> np.ndarray:
    """Draw ``shots`` homodyne outcomes for ``true_n`` photons and bin the decisions.

    Returns an integer array of length n_max + 1 with the count of each
    decided photon number. Shots are split into ``workers`` blocks, each with
    its own child stream of ``seed``, so results depend on (seed, workers).
    """
    if not 0 <= true_n <= plan.n_max:
        raise DomainError(f"true_n must lie in [0, {plan.n_max}]")
    if shots < 1:
        raise DomainError("shots must be >= 1")
    workers = max(1, min(int(workers), shots))
    sizes = [shots // workers + (i < shots % workers) for i in range(workers)]
    if workers == 1:
        return _block_counts(plan, true_n, shots, np.random.SeedSequence(seed))
    children = np.random.SeedSequence(seed).spawn(workers)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        blocks = pool.map(lambda a: _block_counts(plan, true_n, *a), zip(sizes, children))
        return sum(blocks, np.zeros(plan.n_max + 1, dtype=np.int64))


def binomial_sigma(p: float, shots: int) -> float:
    return math.sqrt(p * (1.0 - p) / shots)


def error_rate(counts: Sequence[int], true_n: int) -> float:
    counts = np.asarray(counts)
    return 1.0 - counts[true_n] / counts.sum()
