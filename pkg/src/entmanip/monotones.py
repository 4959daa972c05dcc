"""Tail-sum entanglement monotones and LQCC feasibility tests.

The tail sums of an ordered Schmidt spectrum form a family of entanglement
monotones (one per starting index).  A pure-state transformation, possibly
probabilistic, can be realised with local operations and classical
communication exactly when none of these monotones increases on average.
This module computes the monotones and applies that criterion, both for a
single target (Nielsen's majorization test) and for a target ensemble.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .schmidt import NORM_TOL, SchmidtSpectrum

FEASIBILITY_TOL = 1e-9

__all__ = [
    "FEASIBILITY_TOL",
    "MonotoneVector",
    "FeasibilityReport",
    "vidal_monotones",
    "nielsen_feasible",
    "ensemble_feasible",
    "max_conversion_probability",
]


@dataclass(frozen=True)
class MonotoneVector:
    """Tail sums E_l = sum of the spectrum from index l on, l = 1..rank.

    E_1 is the full normalization (1 within 1e-12) and consecutive
    differences recover the spectrum coefficients.
    """

    values: tuple

    def __post_init__(self):
        values = tuple(self.values)
        if not values:
            raise ValueError("monotone vector must be non-empty")
        if abs(values[0] - 1) > 1e-12:
            raise ValueError(f"leading monotone must be 1, got {values[0]!r}")
        if any(v <= 0 for v in values):
            raise ValueError("monotone values must be strictly positive")
        if any(values[i] < values[i + 1] for i in range(len(values) - 1)):
            raise ValueError("monotone values must be nonincreasing")
        object.__setattr__(self, "values", values)


@dataclass(frozen=True)
class FeasibilityReport:
    """Outcome of a monotone non-increase check.

    ``slack[l-1]`` is the source monotone minus the (averaged) target
    monotone at index l; the check fails exactly at the indices where the
    slack drops below ``-tol``.
    """

    feasible: bool
    violated_indices: tuple
    slack: tuple

    def __post_init__(self):
        object.__setattr__(self, "violated_indices", tuple(self.violated_indices))
        object.__setattr__(self, "slack", tuple(self.slack))
        if self.feasible != (len(self.violated_indices) == 0):
            raise ValueError("feasible flag inconsistent with violated indices")


def vidal_monotones(s: SchmidtSpectrum) -> MonotoneVector:
    """All tail-sum monotones of a spectrum, by backward accumulation."""
    coeffs = s.coeffs
    tails = [None] * len(coeffs)
    running = 0
    for i in range(len(coeffs) - 1, -1, -1):
        running = running + coeffs[i]
        tails[i] = running
    return MonotoneVector(tuple(tails))


def _padded_tails(s: SchmidtSpectrum, length: int) -> list:
    """Tail sums extended with zeros up to ``length`` entries."""
    tails = list(vidal_monotones(s).values)
    if isinstance(s.coeffs[0], Fraction):
        tails += [Fraction(0)] * (length - len(tails))
    else:
        tails += [0.0] * (length - len(tails))
    return tails


def _report(source_tails, target_tails, tol) -> FeasibilityReport:
    slack = tuple(es - et for es, et in zip(source_tails, target_tails))
    violated = tuple(l for l, gap in enumerate(slack, start=1) if gap < -tol)
    return FeasibilityReport(not violated, violated, slack)


def nielsen_feasible(
    source: SchmidtSpectrum,
    target: SchmidtSpectrum,
    tol: float = FEASIBILITY_TOL,
) -> FeasibilityReport:
    """Can ``source`` be converted to ``target`` deterministically by LQCC?

    Feasible iff every target tail sum is at most the source's.  Comparing
    over the larger of the two ranks (shorter spectra padded with zeros)
    also enforces that the target cannot have more nonzero Schmidt
    components than the source: a larger target rank shows up as a violated
    index, not an error.
    """
    n = max(source.rank, target.rank)
    return _report(_padded_tails(source, n), _padded_tails(target, n), tol)


def ensemble_feasible(
    source: SchmidtSpectrum,
    ensemble,
    tol: float = FEASIBILITY_TOL,
) -> FeasibilityReport:
    """Can ``source`` be turned into the given target ensemble by LQCC?

    ``ensemble`` is a :class:`~entmanip.transform.TargetEnsemble`.  Feasible
    iff the probability-weighted average of each tail-sum monotone over the
    targets does not exceed the source value, for every index.  The l = 1
    comparison holds automatically for normalized inputs and is kept as a
    guard.
    """
    probs = [p for p, _ in ensemble.entries]
    total = math.fsum(float(p) for p in probs)
    if abs(total - 1.0) > NORM_TOL:
        raise ValueError(f"ensemble probabilities sum to {total!r}, not 1")
    n = max([source.rank] + [t.rank for _, t in ensemble.entries])
    avg = [0.0] * n
    for p, target in ensemble.entries:
        tails = _padded_tails(target, n)
        for i in range(n):
            avg[i] += p * tails[i]
    report = _report(_padded_tails(source, n), avg, tol)
    if abs(report.slack[0]) > max(tol, 2 * NORM_TOL):
        raise ValueError(
            "leading monotones differ; source or targets are not normalized"
        )
    return report


def max_conversion_probability(
    source: SchmidtSpectrum, target: SchmidtSpectrum
) -> float:
    """Largest probability of converting ``source`` into ``target`` by LQCC.

    Equals the smallest ratio of source to target tail sums over the
    indices where the target monotone is nonzero, clamped to [0, 1].  A
    target rank exceeding the source rank forces 0.
    """
    n = max(source.rank, target.rank)
    source_tails = _padded_tails(source, n)
    target_tails = _padded_tails(target, n)
    best = 1.0
    for es, et in zip(source_tails, target_tails):
        if et > 0:
            best = min(best, float(es) / float(et))
    return max(0.0, min(1.0, best))
