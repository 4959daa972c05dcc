"""Optimal single-copy entanglement concentration.

Maximizing the expected distilled entanglement over all local protocols
that leave the parties with some maximally entangled state (or a product
state) has a closed-form answer: finish on j levels with probability
j * (a_j - a_{j+1}), where a are the ordered squared Schmidt coefficients
(a_{N+1} := 0).  The distribution saturates every tail-sum monotone
constraint, and its optimality is certified by the nonnegative reduced
costs of the corresponding linear program.

This module provides the closed form, the LP formulation for arbitrary
level weights, the spectrum-independent optimality certificate, the
single-measurement protocol achieving the optimum, and tensor-power
utilities for studying the per-copy yield over many identical copies.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement

import numpy as np

from .lp import LpProblem
from .monotones import vidal_monotones
from .schmidt import SchmidtSpectrum, make_spectrum
from .transform import DiagonalPovm, PovmElement

SIZE_CAP = 1 << 20
CERT_TOL = 1e-12

__all__ = [
    "SIZE_CAP",
    "CERT_TOL",
    "ConcentrationPlan",
    "OptimalityCertificate",
    "max_entangled_monotone",
    "optimal_plan",
    "standard_weights",
    "concentration_lp",
    "constraint_matrix_inverse",
    "optimality_certificate",
    "single_shot_povm",
    "tensor_power",
    "asymptotic_yield_curve",
]


@dataclass(frozen=True)
class ConcentrationPlan:
    """Distribution over maximally entangled levels plus its expected yield.

    ``probabilities[j-1]`` is the chance of finishing on the j-level
    maximally entangled state; ``expected_entanglement`` is the mean of
    ln j under that distribution, in nats.
    """

    probabilities: tuple
    expected_entanglement: float

    def __post_init__(self):
        probabilities = tuple(self.probabilities)
        if not probabilities:
            raise ValueError("plan must cover at least one level")
        if any(p < 0 for p in probabilities):
            raise ValueError("plan probabilities must be nonnegative")
        total = (
            sum(probabilities)
            if any(isinstance(p, Fraction) for p in probabilities)
            else math.fsum(probabilities)
        )
        if abs(total - 1) > 1e-12:
            raise ValueError(f"plan probabilities sum to {total!r}, not 1")
        object.__setattr__(self, "probabilities", probabilities)


@dataclass(frozen=True)
class OptimalityCertificate:
    """Reduced costs of the concentration LP at the closed-form vertex.

    The certificate depends only on the dimension (the weights are ln j),
    not on the spectrum; it passes when every value is nonnegative up to
    ``CERT_TOL``.
    """

    z_values: tuple
    passed: bool

    def __post_init__(self):
        z_values = tuple(float(z) for z in self.z_values)
        expected = all(z >= -CERT_TOL for z in z_values)
        if self.passed != expected:
            raise ValueError("passed flag inconsistent with certificate values")
        object.__setattr__(self, "z_values", z_values)


def max_entangled_monotone(levels: int, index: int):
    """Tail-sum monotone of the maximally entangled state on ``levels``.

    Equals (levels - index + 1) / levels for index <= levels and vanishes
    beyond the state's rank.
    """
    if levels < 1 or index < 1:
        raise ValueError("level count and index must be >= 1")
    if index > levels:
        return 0.0
    return (levels - index + 1) / levels


def optimal_plan(s: SchmidtSpectrum) -> ConcentrationPlan:
    """Yield-maximizing concentration distribution for a spectrum.

    Level j receives probability j * (a_j - a_{j+1}) with a_{N+1} = 0; the
    probabilities telescope back to the coefficient sum, which is asserted.
    The expected entanglement is the ln j average in nats.
    """
    coeffs = s.coeffs
    n = len(coeffs)
    probs = []
    for j in range(1, n + 1):
        nxt = coeffs[j] if j < n else 0
        probs.append(j * (coeffs[j - 1] - nxt))
    exact = any(isinstance(p, Fraction) for p in probs)
    total = sum(probs) if exact else math.fsum(probs)
    assert abs(total - 1) <= 1e-12, "telescoping identity failed"
    expected = math.fsum(
        float(p) * math.log(j) for j, p in enumerate(probs, start=1) if j > 1
    )
    return ConcentrationPlan(tuple(probs), expected)


def standard_weights(kind: str, n: int) -> tuple:
    """Named level-weight vectors for the concentration LP.

    ``ln`` weighs level j by ln j (nats), ``log2`` by log2 j (bits), and
    ``indicator`` scores 0 for the product level and 1 for any entangled
    level.
    """
    if n < 1:
        raise ValueError("weight vector length must be >= 1")
    if kind == "ln":
        return tuple(math.log(j) for j in range(1, n + 1))
    if kind == "log2":
        return tuple(math.log2(j) for j in range(1, n + 1))
    if kind == "indicator":
        return tuple(0.0 if j == 1 else 1.0 for j in range(1, n + 1))
    raise ValueError(f"unknown weight kind {kind!r}")


def concentration_lp(s: SchmidtSpectrum, weights=None) -> LpProblem:
    """LP over level distributions constrained by the tail-sum monotones.

    maximize  sum_j c_j p_j
    s.t.      sum_{j >= l} p_j (j + 1 - l) / j  <=  sum_{i >= l} a_i
              p >= 0

    The constraint matrix is upper triangular; the bounds are the
    spectrum's tail sums.  ``weights`` defaults to ln j.  A spectrum built
    from ``Fraction`` coefficients produces an exactly rational matrix and
    bounds.
    """
    n = s.rank
    if weights is None:
        weights = standard_weights("ln", n)
    weights = tuple(weights)
    if len(weights) != n:
        raise ValueError(
            f"expected {n} weights for a rank-{n} spectrum, got {len(weights)}"
        )
    exact = any(isinstance(c, Fraction) for c in s.coeffs)
    matrix = []
    for l in range(1, n + 1):
        if exact:
            row = tuple(
                Fraction(j + 1 - l, j) if j >= l else Fraction(0)
                for j in range(1, n + 1)
            )
        else:
            row = tuple(
                (j + 1 - l) / j if j >= l else 0.0 for j in range(1, n + 1)
            )
        matrix.append(row)
    bounds = vidal_monotones(s).values
    return LpProblem(weights, tuple(matrix), bounds)


@lru_cache(maxsize=None)
def constraint_matrix_inverse(n: int) -> tuple:
    """Closed-form inverse of the concentration constraint matrix.

    Column k has at most three nonzero entries: k - 2 at row k - 2,
    -2(k - 1) at row k - 1, and k on the diagonal.
    """
    if n < 1:
        raise ValueError("dimension must be >= 1")
    inverse = [[0.0] * n for _ in range(n)]
    for k in range(1, n + 1):
        inverse[k - 1][k - 1] = float(k)
        if k >= 2:
            inverse[k - 2][k - 1] = -2.0 * (k - 1)
        if k >= 3:
            inverse[k - 3][k - 1] = float(k - 2)
    return tuple(tuple(row) for row in inverse)


@lru_cache(maxsize=None)
def optimality_certificate(n: int) -> OptimalityCertificate:
    """Reduced-cost certificate that the closed-form plan is LP-optimal.

    z_k weighs column k of the inverse constraint matrix with ln i; the
    first two values are trivially nonnegative and for k >= 3

        z_k = (k-2) ln(k-2) + k ln k - 2(k-1) ln(k-1)

    (0 ln 0 := 0), which is nonnegative by convexity of x ln x.
    """
    if n < 1:
        raise ValueError("dimension must be >= 1")
    z_values = []
    for k in range(1, n + 1):
        if k == 1:
            z_values.append(0.0)
        elif k == 2:
            z_values.append(2.0 * math.log(2.0))
        else:
            low = 0.0 if k == 3 else (k - 2) * math.log(k - 2)
            z_values.append(low + k * math.log(k) - 2 * (k - 1) * math.log(k - 1))
    passed = all(z >= -CERT_TOL for z in z_values)
    return OptimalityCertificate(tuple(z_values), passed)


def single_shot_povm(s: SchmidtSpectrum) -> DiagonalPovm:
    """Single measurement that concentrates a spectrum optimally.

    Element j has diagonal sqrt((a_j - a_{j+1}) / a_i) on the first j
    indices and zero beyond; its outcome probability is the closed-form
    plan's p_j and the post-measurement state is the uniform j-level
    spectrum.  Levels with tied coefficients give zero elements, retained
    under their labels so outcome indexing stays stable.
    """
    coeffs = [float(a) for a in s.coeffs]
    n = len(coeffs)
    elements = []
    for j in range(1, n + 1):
        nxt = coeffs[j] if j < n else 0.0
        gap = coeffs[j - 1] - nxt
        diag = tuple(
            math.sqrt(gap / coeffs[i]) if i < j else 0.0 for i in range(n)
        )
        elements.append(PovmElement(j, diag))
    return DiagonalPovm(tuple(elements), support_rank=n)


def _multinomial(n: int, counts) -> int:
    result = 1
    remaining = n
    for c in counts:
        result *= math.comb(remaining, c)
        remaining -= c
    return result


def tensor_power(
    s: SchmidtSpectrum, n: int, size_cap: int = SIZE_CAP
) -> SchmidtSpectrum:
    """Spectrum of ``n`` identical copies of a state.

    The coefficients are all n-fold products of the input coefficients.
    Equal input values are grouped first, so the work scales with the
    number of distinct products rather than rank**n; the result is still
    the fully expanded spectrum, which is capped at ``size_cap``
    coefficients.
    """
    if n < 1:
        raise ValueError("copy count must be >= 1")
    if s.rank**n > size_cap:
        raise ValueError(
            f"tensor power needs {s.rank**n} coefficients, over the cap of "
            f"{size_cap}"
        )
    if n == 1:
        return s

    distinct = []
    multiplicity = []
    for a in s.coeffs:
        a = float(a)
        if distinct and a == distinct[-1]:
            multiplicity[-1] += 1
        else:
            distinct.append(a)
            multiplicity.append(1)

    values = []
    counts = []
    k = len(distinct)
    for combo in combinations_with_replacement(range(k), n):
        exponents = Counter(combo)
        product = 1.0
        weight = _multinomial(n, exponents.values())
        for idx, e in exponents.items():
            product *= distinct[idx] ** e
            weight *= multiplicity[idx] ** e
        values.append(product)
        counts.append(weight)

    expanded = np.repeat(np.array(values), counts)
    expanded = np.sort(expanded, kind="stable")[::-1]
    return make_spectrum(expanded.tolist(), zero_tol=0.0)


def asymptotic_yield_curve(
    s: SchmidtSpectrum, max_n: int, size_cap: int = SIZE_CAP
) -> tuple:
    """Per-copy concentrated yield for 1..max_n identical copies.

    Entry (n, y) gives y = expected entanglement of the optimal plan on the
    n-copy spectrum divided by n.  The per-copy yield is bounded by the
    single-copy entanglement entropy and approaches it as n grows.
    """
    if max_n < 1:
        raise ValueError("copy count must be >= 1")
    if s.rank**max_n > size_cap:
        raise ValueError(
            f"curve needs {s.rank**max_n} coefficients at n={max_n}, over "
            f"the cap of {size_cap}"
        )
    curve = []
    for n in range(1, max_n + 1):
        plan = optimal_plan(tensor_power(s, n, size_cap=size_cap))
        curve.append((n, plan.expected_entanglement / n))
    return tuple(curve)
