"""Constructive side of probabilistic LQCC transformations.

Given a feasible target ensemble, the transformation splits into a
deterministic majorization step onto the ensemble's average state followed
by a single generalized measurement, diagonal in the Schmidt basis, whose
outcome j leaves the parties holding target j with its assigned probability.
This module builds that average state and measurement.

Only Schmidt components are modelled.  Targets that share components but
live in rotated local bases need a final local unitary correction once the
measurement outcome is known; that correction is outcome-conditioned
post-processing and is documented here rather than modelled.

The deterministic majorization step itself is not decomposed into physical
two-outcome measurements; its existence is certified through
:func:`entmanip.monotones.nielsen_feasible` and the protocol is modelled
from the average state onward.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .schmidt import NORM_TOL, SchmidtSpectrum, make_spectrum

MERGE_TOL = 1e-9
POVM_TOL = 1e-10

__all__ = [
    "MERGE_TOL",
    "POVM_TOL",
    "TargetEnsemble",
    "make_ensemble",
    "PovmElement",
    "DiagonalPovm",
    "DieGroup",
    "DieTable",
    "average_target",
    "merge_duplicates",
    "build_ensemble_povm",
    "apply_povm_element",
]


@dataclass(frozen=True)
class TargetEnsemble:
    """A list of (probability, target spectrum) pairs summing to one.

    Zero-probability entries are not stored; use :func:`make_ensemble`,
    which strips them.
    """

    entries: tuple

    def __post_init__(self):
        entries = tuple((p, t) for p, t in self.entries)
        if not entries:
            raise ValueError("ensemble must have at least one entry")
        for p, target in entries:
            if p <= 0:
                raise ValueError(f"ensemble probabilities must be positive, got {p!r}")
            if not isinstance(target, SchmidtSpectrum):
                raise ValueError("ensemble targets must be SchmidtSpectrum values")
        total = math.fsum(float(p) for p, _ in entries)
        if abs(total - 1.0) > NORM_TOL:
            raise ValueError(f"ensemble probabilities sum to {total!r}, not 1")
        object.__setattr__(self, "entries", entries)

    @property
    def size(self) -> int:
        return len(self.entries)

    @property
    def max_rank(self) -> int:
        return max(t.rank for _, t in self.entries)


def make_ensemble(pairs) -> TargetEnsemble:
    """Build an ensemble from (probability, spectrum) pairs.

    Entries with probability exactly zero are dropped; negative
    probabilities raise.
    """
    kept = []
    for p, target in pairs:
        if p < 0:
            raise ValueError(f"ensemble probabilities must be nonnegative, got {p!r}")
        if p > 0:
            kept.append((p, target))
    return TargetEnsemble(tuple(kept))


@dataclass(frozen=True)
class PovmElement:
    """One measurement operator, diagonal in the Schmidt basis.

    ``diag`` holds the nonnegative diagonal entries; outcome labels are
    1-based and stable even for zero-probability elements.
    """

    label: int
    diag: tuple

    def __post_init__(self):
        diag = tuple(float(d) for d in self.diag)
        if any(d < 0 for d in diag):
            raise ValueError("measurement diagonals must be nonnegative")
        object.__setattr__(self, "diag", diag)


@dataclass(frozen=True)
class DiagonalPovm:
    """A complete set of diagonal measurement elements on a support.

    Completeness means the squared diagonals sum to 1 at every index of the
    support, within ``POVM_TOL``.  The implicit complement projector outside
    the support is bookkeeping only: it has zero probability on supported
    states.
    """

    elements: tuple
    support_rank: int

    def __post_init__(self):
        elements = tuple(self.elements)
        if not elements:
            raise ValueError("measurement must have at least one element")
        for el in elements:
            if len(el.diag) != self.support_rank:
                raise ValueError(
                    "every element diagonal must cover the full support"
                )
        for i in range(self.support_rank):
            total = math.fsum(el.diag[i] ** 2 for el in elements)
            if abs(total - 1.0) > POVM_TOL:
                raise ValueError(
                    f"measurement incomplete at index {i + 1}: sum = {total!r}"
                )
        object.__setattr__(self, "elements", elements)

    def outcome_probabilities(self, state: SchmidtSpectrum) -> tuple:
        """Probability of each outcome when measuring ``state``."""
        return tuple(
            apply_povm_element(el.diag, state)[0] for el in self.elements
        )


@dataclass(frozen=True)
class DieGroup:
    """Relabelling rule for one merged outcome.

    ``members`` holds (original 1-based outcome index, relative probability)
    pairs; the relative probabilities sum to one.
    """

    representative: int
    members: tuple

    def __post_init__(self):
        members = tuple((int(j), float(r)) for j, r in self.members)
        if not members:
            raise ValueError("die group must have at least one member")
        total = math.fsum(r for _, r in members)
        if abs(total - 1.0) > 1e-12:
            raise ValueError(f"die group probabilities sum to {total!r}, not 1")
        object.__setattr__(self, "members", members)


@dataclass(frozen=True)
class DieTable:
    """Classical post-processing that expands merged outcomes back out."""

    groups: tuple

    def __post_init__(self):
        object.__setattr__(self, "groups", tuple(self.groups))


def _padded_coeffs(target: SchmidtSpectrum, length: int) -> list:
    return list(target.coeffs) + [0.0] * (length - target.rank)


def average_target(e: TargetEnsemble) -> SchmidtSpectrum:
    """Probability-weighted average of the ensemble's target spectra.

    The averages are taken componentwise in the common (zero-padded) Schmidt
    basis; the result is automatically ordered and normalized, and its tail
    sums equal the averaged tail sums of the individual targets.
    """
    n = e.max_rank
    avg = [0.0] * n
    for p, target in e.entries:
        padded = _padded_coeffs(target, n)
        for i in range(n):
            avg[i] += p * padded[i]
    for i in range(n - 1):
        # ordered targets average to an ordered spectrum; anything else is
        # an internal error, not bad input
        assert avg[i] >= avg[i + 1] - 1e-12, "average spectrum out of order"
    return make_spectrum(avg, zero_tol=0.0)


def _same_spectrum(a: list, b: list, tol: float) -> bool:
    return all(abs(x - y) <= tol for x, y in zip(a, b))


def merge_duplicates(
    e: TargetEnsemble, merge_tol: float = MERGE_TOL
) -> tuple[TargetEnsemble, DieTable]:
    """Merge ensemble entries whose spectra agree componentwise.

    Targets equal within ``merge_tol`` (after zero padding) collapse into a
    single entry with the summed probability; the returned die table records
    how to redistribute each merged outcome over the original indices by a
    classical coin toss.  Ensembles with all-distinct targets come back
    unchanged, with a trivial die.
    """
    n = e.max_rank
    reps: list[list] = []  # [padded coeffs, summed prob, [(orig idx, p)]]
    for j, (p, target) in enumerate(e.entries, start=1):
        padded = _padded_coeffs(target, n)
        for group in reps:
            if _same_spectrum(group[0], padded, merge_tol):
                group[1] += p
                group[2].append((j, p))
                break
        else:
            reps.append([padded, p, [(j, p)]])

    merged_entries = []
    groups = []
    for g, (_, total, members) in enumerate(reps, start=1):
        first_idx = members[0][0]
        merged_entries.append((total, e.entries[first_idx - 1][1]))
        groups.append(
            DieGroup(g, tuple((j, p / total) for j, p in members))
        )
    return TargetEnsemble(tuple(merged_entries)), DieTable(tuple(groups))


def build_ensemble_povm(e: TargetEnsemble) -> DiagonalPovm:
    """Measurement on the average state that realises the ensemble.

    Element j has diagonal entries sqrt(p_j * target_ji / average_i) over
    the support of the average state.  Applying element j to the average
    spectrum yields target j with probability p_j, and the squared
    diagonals sum to one at every supported index.
    """
    avg = average_target(e)
    n = avg.rank
    elements = []
    for j, (p, target) in enumerate(e.entries, start=1):
        if target.rank > n:
            # the average dominates every target componentwise, so a target
            # coefficient outside the average's support cannot happen
            raise AssertionError("target support exceeds average support")
        padded = _padded_coeffs(target, n)
        diag = tuple(
            math.sqrt(p * padded[i] / avg.coeffs[i]) for i in range(n)
        )
        elements.append(PovmElement(j, diag))
    return DiagonalPovm(tuple(elements), support_rank=n)


def apply_povm_element(diag, state: SchmidtSpectrum):
    """Outcome probability and post-measurement spectrum for one element.

    Returns ``(probability, spectrum)``; a zero-probability outcome returns
    ``(0.0, None)``.  The diagonal must cover the state's support.
    """
    diag = tuple(float(d) for d in diag)
    if len(diag) < state.rank:
        raise ValueError("element diagonal shorter than the state's rank")
    weighted = [diag[i] ** 2 * float(a) for i, a in enumerate(state.coeffs)]
    probability = math.fsum(weighted)
    if probability <= 0.0:
        return 0.0, None
    return probability, make_spectrum(weighted, zero_tol=0.0)
