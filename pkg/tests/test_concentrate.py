"""Closed-form concentration plan, certificate, measurement, tensor powers."""

import math

import numpy as np
import pytest

from entmanip import (
    apply_povm_element,
    asymptotic_yield_curve,
    concentration_lp,
    constraint_matrix_inverse,
    entropy,
    make_spectrum,
    max_entangled_monotone,
    optimal_plan,
    optimality_certificate,
    simplex_solve,
    single_shot_povm,
    standard_weights,
    tensor_power,
    uniform_spectrum,
    vidal_monotones,
)
from util import random_spectrum

WORKED_SPECTRUM = [0.5, 0.3, 0.2]
WORKED_PLAN = (0.2, 0.2, 0.6)
WORKED_YIELD = 0.2 * math.log(2) + 0.6 * math.log(3)  # 0.7977968093128549


class TestMaxEntangledMonotone:
    def test_interior_value(self):
        assert max_entangled_monotone(4, 2) == pytest.approx(0.75)

    @pytest.mark.parametrize("levels", [1, 2, 5, 17])
    def test_first_index_is_one(self, levels):
        assert max_entangled_monotone(levels, 1) == pytest.approx(1.0)

    def test_vanishes_beyond_rank(self):
        assert max_entangled_monotone(3, 5) == 0.0

    def test_matches_uniform_spectrum_tails(self):
        for levels in (1, 2, 3, 6):
            tails = vidal_monotones(uniform_spectrum(levels)).values
            for l in range(1, levels + 1):
                assert max_entangled_monotone(levels, l) == pytest.approx(
                    tails[l - 1], abs=1e-12
                )


class TestOptimalPlan:
    def test_product_state(self):
        plan = optimal_plan(make_spectrum([1.0]))
        assert plan.probabilities == (1.0,)
        assert plan.expected_entanglement == 0.0

    @pytest.mark.parametrize("n", [2, 3, 5, 8])
    def test_uniform_spectrum_is_a_fixed_point(self, n):
        plan = optimal_plan(uniform_spectrum(n))
        assert plan.probabilities[-1] == pytest.approx(1.0, abs=1e-12)
        assert all(abs(p) <= 1e-12 for p in plan.probabilities[:-1])
        assert plan.expected_entanglement == pytest.approx(
            math.log(n), abs=1e-12
        )

    def test_worked_example(self):
        plan = optimal_plan(make_spectrum(WORKED_SPECTRUM))
        assert plan.probabilities == pytest.approx(WORKED_PLAN, abs=1e-12)
        assert plan.expected_entanglement == pytest.approx(
            WORKED_YIELD, abs=1e-12
        )

    def test_telescoping_sum(self):
        rng = np.random.default_rng(79)
        for _ in range(100):
            s = random_spectrum(rng, int(rng.integers(1, 12)))
            plan = optimal_plan(s)
            assert math.fsum(plan.probabilities) == pytest.approx(
                1.0, abs=1e-12
            )

    def test_yield_bounded_by_entropy(self):
        rng = np.random.default_rng(83)
        for _ in range(100):
            s = random_spectrum(rng, int(rng.integers(2, 10)))
            plan = optimal_plan(s)
            gap = entropy(s) - plan.expected_entanglement
            assert gap >= -1e-12
            if max(
                s.coeffs[i] - s.coeffs[i + 1] for i in range(s.rank - 1)
            ) > 1e-6:
                assert gap > 1e-12  # non-uniform spectra lose entanglement

    def test_uniform_saturates_entropy(self):
        for n in (1, 2, 5, 16):
            s = uniform_spectrum(n)
            assert optimal_plan(s).expected_entanglement == pytest.approx(
                entropy(s), abs=1e-12
            )

    def test_monotone_conservation(self):
        rng = np.random.default_rng(89)
        for _ in range(50):
            s = random_spectrum(rng, int(rng.integers(1, 9)))
            plan = optimal_plan(s)
            tails = vidal_monotones(s).values
            for l in range(1, s.rank + 1):
                conserved = math.fsum(
                    p * max_entangled_monotone(j, l)
                    for j, p in enumerate(plan.probabilities, start=1)
                )
                assert conserved == pytest.approx(tails[l - 1], abs=1e-10)


class TestConcentrationLp:
    def test_single_level(self):
        prob = concentration_lp(make_spectrum([1.0]))
        sol = simplex_solve(prob)
        assert sol.values == pytest.approx((1.0,))

    def test_worked_matrix_and_bounds(self):
        prob = concentration_lp(make_spectrum(WORKED_SPECTRUM))
        assert prob.bounds == pytest.approx((1.0, 0.5, 0.2), abs=1e-15)
        assert prob.constraint_matrix[1] == pytest.approx(
            (0.0, 0.5, 2.0 / 3.0), abs=1e-15
        )

    def test_weight_length_mismatch(self):
        with pytest.raises(ValueError, match="weights"):
            concentration_lp(make_spectrum([0.5, 0.5]), weights=(1.0,))

    def test_simplex_reproduces_plan(self):
        rng = np.random.default_rng(97)
        for _ in range(60):
            s = random_spectrum(rng, int(rng.integers(1, 9)))
            plan = optimal_plan(s)
            sol = simplex_solve(concentration_lp(s))
            assert sol.status == "optimal"
            assert sol.values == pytest.approx(plan.probabilities, abs=1e-9)
            assert float(sol.objective_value) == pytest.approx(
                plan.expected_entanglement, abs=1e-9
            )

    def test_saturation(self):
        from entmanip import constraint_residuals

        rng = np.random.default_rng(101)
        for _ in range(100):
            s = random_spectrum(rng, int(rng.integers(1, 10)))
            prob = concentration_lp(s)
            plan = optimal_plan(s)
            residuals = constraint_residuals(prob, plan.probabilities)
            assert max(abs(float(r)) for r in residuals) <= 1e-10


class TestStandardWeights:
    def test_ln(self):
        assert standard_weights("ln", 3) == pytest.approx(
            (0.0, math.log(2), math.log(3))
        )

    def test_indicator(self):
        assert standard_weights("indicator", 4) == (0.0, 1.0, 1.0, 1.0)

    def test_unknown(self):
        with pytest.raises(ValueError, match="unknown"):
            standard_weights("nats", 3)


class TestOptimalityCertificate:
    def test_third_value(self):
        cert = optimality_certificate(3)
        assert cert.z_values[2] == pytest.approx(
            3 * math.log(3) - 4 * math.log(2), abs=1e-15
        )
        assert cert.z_values[2] == pytest.approx(0.523248143764548, abs=1e-12)

    def test_all_nonnegative_up_to_64(self):
        cert = optimality_certificate(64)
        assert cert.passed
        assert all(z >= 0.0 for z in cert.z_values)

    def test_convexity_oracle(self):
        # x ln x is convex, so the second difference of k ln k is >= 0;
        # z_k is exactly that second difference
        for k in range(3, 65):
            f = lambda x: x * math.log(x) if x > 0 else 0.0
            second_diff = f(k) - 2 * f(k - 1) + f(k - 2)
            assert optimality_certificate(k).z_values[k - 1] == pytest.approx(
                second_diff, abs=1e-12
            )

    def test_inverse_matches_direct_inversion(self):
        for n in range(1, 13):
            matrix = np.array(
                [
                    [(j + 1 - l) / j if j >= l else 0.0 for j in range(1, n + 1)]
                    for l in range(1, n + 1)
                ]
            )
            direct = np.linalg.inv(matrix)
            closed = np.array(constraint_matrix_inverse(n))
            assert np.max(np.abs(direct - closed)) <= 1e-10

    def test_z_equals_weights_dot_inverse(self):
        n = 10
        weights = np.array(standard_weights("ln", n))
        inverse = np.array(constraint_matrix_inverse(n))
        z = weights @ inverse
        assert optimality_certificate(n).z_values == pytest.approx(
            tuple(z), abs=1e-12
        )


class TestSingleShotPovm:
    def test_uniform_pair(self):
        povm = single_shot_povm(make_spectrum([0.5, 0.5]))
        first, second = povm.elements
        assert first.diag == (0.0, 0.0)
        assert second.diag == pytest.approx((1.0, 1.0), abs=1e-15)
        prob, post = apply_povm_element(second.diag, make_spectrum([0.5, 0.5]))
        assert prob == pytest.approx(1.0, abs=1e-15)
        assert post.coeffs == pytest.approx((0.5, 0.5), abs=1e-15)

    def test_worked_example(self):
        s = make_spectrum(WORKED_SPECTRUM)
        povm = single_shot_povm(s)
        third = povm.elements[2]
        assert third.diag == pytest.approx(
            (math.sqrt(0.2 / 0.5), math.sqrt(0.2 / 0.3), 1.0), abs=1e-12
        )
        prob, post = apply_povm_element(third.diag, s)
        assert prob == pytest.approx(0.6, abs=1e-12)
        assert post.coeffs == pytest.approx((1 / 3,) * 3, abs=1e-12)

    def test_outcomes_match_plan_and_post_states_are_uniform(self):
        rng = np.random.default_rng(103)
        for _ in range(50):
            s = random_spectrum(rng, int(rng.integers(1, 9)))
            povm = single_shot_povm(s)
            plan = optimal_plan(s)
            for j, element in enumerate(povm.elements, start=1):
                prob, post = apply_povm_element(element.diag, s)
                assert prob == pytest.approx(
                    plan.probabilities[j - 1], abs=1e-12
                )
                if prob > 0:
                    assert post.rank == j
                    assert post.coeffs == pytest.approx(
                        (1.0 / j,) * j, abs=1e-12
                    )

    def test_completeness_residual(self):
        rng = np.random.default_rng(107)
        for _ in range(100):
            s = random_spectrum(rng, int(rng.integers(1, 17)))
            povm = single_shot_povm(s)
            for i in range(povm.support_rank):
                total = math.fsum(el.diag[i] ** 2 for el in povm.elements)
                assert abs(total - 1.0) <= 1e-12


class TestTensorPower:
    def test_uniform_pair_squared(self):
        tp = tensor_power(make_spectrum([0.5, 0.5]), 2)
        assert tp.coeffs == pytest.approx((0.25,) * 4, abs=1e-15)

    def test_single_copy_is_identity(self):
        rng = np.random.default_rng(109)
        for _ in range(20):
            s = random_spectrum(rng, int(rng.integers(1, 8)))
            assert tensor_power(s, 1).coeffs == s.coeffs

    def test_entropy_additivity(self):
        rng = np.random.default_rng(113)
        for _ in range(20):
            s = random_spectrum(rng, int(rng.integers(2, 5)))
            n = int(rng.integers(2, 6))
            assert entropy(tensor_power(s, n)) == pytest.approx(
                n * entropy(s), abs=1e-9
            )

    def test_matches_explicit_outer_product(self):
        rng = np.random.default_rng(127)
        for _ in range(10):
            s = random_spectrum(rng, int(rng.integers(2, 5)))
            explicit = np.sort(np.outer(s.as_array(), s.as_array()).ravel())[::-1]
            tp = tensor_power(s, 2)
            assert tp.as_array() == pytest.approx(explicit, abs=1e-13)

    def test_size_cap(self):
        s = make_spectrum([0.5, 0.3, 0.2])
        with pytest.raises(ValueError, match="cap"):
            tensor_power(s, 3, size_cap=26)

    def test_rejects_zero_copies(self):
        with pytest.raises(ValueError):
            tensor_power(make_spectrum([1.0]), 0)


class TestAsymptoticYieldCurve:
    def test_maximally_entangled_saturates(self):
        s = uniform_spectrum(2)
        curve = asymptotic_yield_curve(s, 5)
        for _, y in curve:
            assert y == pytest.approx(entropy(s), abs=1e-12)

    def test_first_point_is_single_copy_plan(self):
        s = make_spectrum(WORKED_SPECTRUM)
        curve = asymptotic_yield_curve(s, 1)
        assert curve[0][0] == 1
        assert curve[0][1] == pytest.approx(WORKED_YIELD, abs=1e-12)

    def test_skewed_pair_trends_toward_entropy(self):
        s = make_spectrum([0.8, 0.2])
        limit = entropy(s)
        curve = dict(asymptotic_yield_curve(s, 16))
        for n in (1, 2, 4, 8, 16):
            assert curve[n] <= limit + 1e-12
        assert limit - curve[16] < limit - curve[1]
