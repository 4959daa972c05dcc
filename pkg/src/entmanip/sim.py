"""Seeded Monte Carlo execution of diagonal measurement protocols.

Outcome probabilities of a diagonal measurement on a known spectrum are
available in closed form, so a trial only needs to sample the outcome
index: each trial draws one uniform variate from a counter-based generator
(the trial index hashed together with the master seed, SplitMix64-style)
and inverts the outcome CDF.  Because trial t's variate depends on nothing
but (seed, t), the tally is bit-exactly reproducible no matter how trials
are partitioned or scheduled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .schmidt import SchmidtSpectrum
from .transform import POVM_TOL, DiagonalPovm

__all__ = [
    "IncompletePovmError",
    "SimulationReport",
    "counter_uniforms",
    "simulate",
    "yield_statistics",
]


class IncompletePovmError(ValueError):
    """The measurement does not resolve to 1 on the state's support."""


@dataclass(frozen=True)
class SimulationReport:
    """Tally of a simulated protocol run.

    Outcome j's empirical probability is count_j / trials; ``mean_yield``
    is the empirical average of ln(label), the entanglement in nats when
    labels are maximally-entangled level counts.
    """

    trials: int
    seed: int
    labels: tuple
    counts: tuple
    empirical_probs: tuple
    expected_probs: tuple
    mean_yield: float
    max_abs_deviation: float

    def __post_init__(self):
        if self.trials <= 0:
            raise ValueError("trials must be positive")
        if sum(self.counts) != self.trials:
            raise ValueError("outcome counts must sum to the trial count")


_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)


def counter_uniforms(seed: int, start: int, count: int) -> np.ndarray:
    """Uniform [0, 1) variates for trial indices start..start+count-1.

    Pure function of (seed, index): SplitMix64 finalizer applied to the
    index stream offset by the seed.  Identical values come back for any
    partitioning of the index range.
    """
    if count < 0 or start < 0:
        raise ValueError("start and count must be nonnegative")
    x = np.arange(start, start + count, dtype=np.uint64)
    x = (x + np.uint64(1)) * _GAMMA + np.uint64(seed & 0xFFFFFFFFFFFFFFFF)
    x ^= x >> np.uint64(30)
    x *= _MIX1
    x ^= x >> np.uint64(27)
    x *= _MIX2
    x ^= x >> np.uint64(31)
    return (x >> np.uint64(11)).astype(np.float64) * (2.0**-53)


def _outcome_distribution(povm: DiagonalPovm, state: SchmidtSpectrum):
    if state.rank > povm.support_rank:
        raise IncompletePovmError(
            "state rank exceeds the measurement support"
        )
    coeffs = [float(a) for a in state.coeffs]
    for i in range(state.rank):
        total = math.fsum(el.diag[i] ** 2 for el in povm.elements)
        if abs(total - 1.0) > POVM_TOL:
            raise IncompletePovmError(
                f"measurement incomplete on the state support at index {i + 1}"
            )
    probs = [
        math.fsum(el.diag[i] ** 2 * coeffs[i] for i in range(state.rank))
        for el in povm.elements
    ]
    return probs


def simulate(
    povm: DiagonalPovm,
    state: SchmidtSpectrum,
    trials: int,
    seed: int,
) -> SimulationReport:
    """Sample measurement outcomes and tally them against the theory.

    Each trial inverts the outcome CDF on one counter-based uniform
    variate; post-measurement states are known analytically so no state
    update is simulated.  Raises :class:`IncompletePovmError` when the
    measurement does not sum to the identity on the state's support.
    """
    if trials <= 0:
        raise ValueError("trials must be positive")
    expected = _outcome_distribution(povm, state)
    labels = [el.label for el in povm.elements]
    cdf = np.cumsum(expected)
    cdf[-1] = max(cdf[-1], 1.0)  # guard the top edge against rounding

    uniforms = counter_uniforms(seed, 0, trials)
    outcomes = np.searchsorted(cdf, uniforms, side="right")
    outcomes = np.minimum(outcomes, len(labels) - 1)
    counts = np.bincount(outcomes, minlength=len(labels))

    empirical = tuple(int(c) / trials for c in counts)
    mean_yield = math.fsum(
        int(c) * math.log(label) for c, label in zip(counts, labels)
    ) / trials
    max_dev = max(abs(e - p) for e, p in zip(empirical, expected))
    return SimulationReport(
        trials=trials,
        seed=seed,
        labels=tuple(labels),
        counts=tuple(int(c) for c in counts),
        empirical_probs=empirical,
        expected_probs=tuple(expected),
        mean_yield=mean_yield,
        max_abs_deviation=max_dev,
    )


def yield_statistics(report: SimulationReport) -> tuple[float, float]:
    """Sample mean and standard error of ln(label) over the trials."""
    if report.trials < 2:
        raise ValueError("need at least two trials for a standard error")
    mean = report.mean_yield
    variance = math.fsum(
        c * (math.log(label) - mean) ** 2
        for c, label in zip(report.counts, report.labels)
    ) / (report.trials - 1)
    return mean, math.sqrt(variance / report.trials)
