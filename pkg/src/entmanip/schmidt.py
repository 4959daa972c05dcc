"""Schmidt spectra of bipartite pure states.

A bipartite pure state is fully characterised, up to local unitaries, by its
ordered Schmidt spectrum: the nonincreasing list of squared Schmidt
coefficients.  Everything downstream (monotones, measurement protocols,
concentration plans) works on that spectrum, so this module owns its
construction and validation.

Spectra normally hold floats.  They may also hold ``fractions.Fraction``
entries, in which case normalisation is exact; the LP layer uses this for
certifying saturation identities without floating-point doubt.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

NORM_TOL = 1e-9
ZERO_TOL = 1e-12

__all__ = [
    "NORM_TOL",
    "ZERO_TOL",
    "AmplitudeMatrix",
    "SchmidtSpectrum",
    "schmidt_decompose",
    "make_spectrum",
    "uniform_spectrum",
    "entropy",
]


def _is_exact(values) -> bool:
    """True when every entry is an exact rational (Fraction)."""
    return any(isinstance(v, Fraction) for v in values) and all(
        isinstance(v, (Fraction, int)) for v in values
    )


@dataclass(frozen=True)
class AmplitudeMatrix:
    """Complex amplitudes of a bipartite pure state in a product basis.

    Rows index the first subsystem, columns the second.  The squared
    magnitudes must sum to 1 within ``norm_tol``.
    """

    entries: np.ndarray
    norm_tol: float = NORM_TOL

    def __post_init__(self):
        arr = np.array(self.entries, dtype=complex)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError("amplitude matrix must be a non-empty 2-D array")
        if not np.all(np.isfinite(arr.view(float))):
            raise ValueError("amplitude matrix entries must be finite")
        total = float(np.sum(np.abs(arr) ** 2))
        if abs(total - 1.0) > self.norm_tol:
            raise ValueError(
                f"amplitude matrix is not normalized: |psi|^2 = {total!r}"
            )
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]


@dataclass(frozen=True)
class SchmidtSpectrum:
    """Ordered, normalized squared Schmidt coefficients.

    Invariants: nonincreasing, strictly positive entries summing to 1 within
    ``NORM_TOL``.  Trailing zeros are never stored; the rank equals the
    number of entries.  Use :func:`make_spectrum` or
    :func:`schmidt_decompose` to build instances.
    """

    coeffs: tuple

    def __post_init__(self):
        coeffs = tuple(self.coeffs)
        if not coeffs:
            raise ValueError("spectrum must have at least one coefficient")
        if any(c <= 0 for c in coeffs):
            raise ValueError("spectrum coefficients must be strictly positive")
        if any(coeffs[i] < coeffs[i + 1] for i in range(len(coeffs) - 1)):
            raise ValueError("spectrum coefficients must be nonincreasing")
        total = math.fsum(coeffs) if not _is_exact(coeffs) else sum(coeffs)
        if abs(total - 1) > NORM_TOL:
            raise ValueError(f"spectrum is not normalized: sum = {total!r}")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def rank(self) -> int:
        """Number of nonzero Schmidt coefficients."""
        return len(self.coeffs)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.coeffs, dtype=float)


def make_spectrum(raw: Sequence, zero_tol: float = ZERO_TOL) -> SchmidtSpectrum:
    """Build a valid spectrum from raw nonnegative weights.

    Sorts nonincreasing (stable, so ties keep their input order), drops
    entries below ``zero_tol``, and renormalizes.  For float input the
    normalization is corrected to make ``math.fsum`` of the result exactly
    1.0, which makes the function idempotent on already-valid spectra.

    Raises ``ValueError`` on negative entries or when nothing survives the
    zero stripping.
    """
    values = list(raw)
    if not values:
        raise ValueError("empty coefficient list")
    if any(v < 0 for v in values):
        raise ValueError("coefficients must be nonnegative")

    exact = _is_exact(values)
    if not exact:
        values = [float(v) for v in values]
    values.sort(key=lambda v: -v)
    values = [v for v in values if v > zero_tol and v > 0]
    if not values:
        raise ValueError("all coefficients are zero (or below zero_tol)")

    if exact:
        total = sum(values)
        values = [Fraction(v) / total for v in values]
    else:
        total = math.fsum(values)
        if total <= 0:
            raise ValueError("coefficient sum must be positive")
        values = [v / total for v in values]
        # Fold the rounding residual into the largest coefficient so that
        # fsum(values) == 1.0 exactly; the correction is O(eps) and the
        # largest entry is at least 1/len(values), so it stays positive.
        for _ in range(4):
            residual = math.fsum(values) - 1.0
            if residual == 0.0:
                break
            values[0] -= residual
        values.sort(key=lambda v: -v)  # an eps correction may reorder ties
    return SchmidtSpectrum(tuple(values))


def uniform_spectrum(levels: int) -> SchmidtSpectrum:
    """Spectrum of the maximally entangled state on ``levels`` levels."""
    if levels < 1:
        raise ValueError("level count must be >= 1")
    return make_spectrum([1.0] * levels, zero_tol=0.0)


def schmidt_decompose(m, zero_tol: float = ZERO_TOL) -> SchmidtSpectrum:
    """Schmidt spectrum of a normalized amplitude matrix.

    Parameters
    ----------
    m : AmplitudeMatrix or array_like
        Complex amplitudes; must be normalized within ``NORM_TOL``.
    zero_tol : float
        Squared singular values below this are treated as zero.

    Returns
    -------
    SchmidtSpectrum
        Squared singular values, sorted nonincreasing and renormalized.
    """
    if not isinstance(m, AmplitudeMatrix):
        m = AmplitudeMatrix(np.asarray(m, dtype=complex))
    singular = np.linalg.svd(m.entries, compute_uv=False)
    return make_spectrum((singular**2).tolist(), zero_tol=zero_tol)


def entropy(s: SchmidtSpectrum) -> float:
    """Entanglement entropy of a spectrum in nats (0*ln 0 := 0)."""
    return -math.fsum(float(a) * math.log(float(a)) for a in s.coeffs)
