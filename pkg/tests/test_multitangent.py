import cmath
import json
import math
from fractions import Fraction

import pytest

from mtsmzv.errors import InvalidIndexError, PoleError
from mtsmzv.indices import IndexSum, mtgf_admissible_indices, stuffle
from mtsmzv.multitangent import (
    WPolynomial,
    bouillot_reduce,
    derivative_index_sum,
    eval_index_sum,
    eval_monotangent,
    eval_monotangent_combination,
    eval_multitangent,
    eval_multitangent_direct,
    monotangent_w_poly,
    multiply_w_polys,
    w_expand,
    w_of_z,
)
from mtsmzv.numerics import TWO_PI_I, PrecisionConfig
from mtsmzv.regularization import MzvCombination
from mtsmzv.symmetric import MonotangentCombination, main_theorem_rhs, zeta_rs

PI = math.pi
Z_SAMPLES = (0.3, 0.51, 0.3 + 0.2j, -0.7 + 1.1j)
F = Fraction


def csc(z):
    return 1 / cmath.sin(PI * z)


def cot(z):
    return cmath.cos(PI * z) / cmath.sin(PI * z)


# derivatives of pi cot(pi z)
CLOSED = {
    2: lambda z: PI**2 * csc(z) ** 2,
    3: lambda z: PI**3 * csc(z) ** 2 * cot(z),
    4: lambda z: PI**4 * (csc(z) ** 4 - F(2, 3) * csc(z) ** 2),
}


class TestWPolynomial:
    def test_golden(self):
        assert monotangent_w_poly(2) == WPolynomial(2, (F(0), F(1), F(1)))
        assert monotangent_w_poly(3) == WPolynomial(3, (F(0), F(1, 2), F(3, 2), F(1)))
        assert monotangent_w_poly(4) == WPolynomial(4, (F(0), F(1, 6), F(7, 6), F(2), F(1)))

    @pytest.mark.parametrize("s", range(2, 13))
    def test_structure(self, s):
        p = monotangent_w_poly(s)
        assert p.coeffs[0] == 0
        assert p.coeffs[1] == F(1, math.factorial(s - 1))
        assert p.degree == s
        assert abs(p.coefficient(1) - TWO_PI_I**s / math.factorial(s - 1)) < 1e-9 * abs(TWO_PI_I) ** s

    def test_invalid_weight(self):
        with pytest.raises(ValueError):
            monotangent_w_poly(1)

    @pytest.mark.parametrize("s", [2, 5, 9])
    def test_json_round_trip(self, s):
        p = monotangent_w_poly(s)
        data = json.loads(p.to_json())
        assert data["s"] == s and data["coefficients"][0]["power_of_2pii"] == s
        assert WPolynomial.from_json(p.to_json()) == p


class TestMonotangent:
    @pytest.mark.parametrize("s", [2, 3, 4])
    @pytest.mark.parametrize("z", Z_SAMPLES + (0.25, 0.5))
    def test_closed_forms(self, s, z):
        exact = CLOSED[s](z)
        assert abs(eval_monotangent(s, z) - exact) < 1e-9 * max(1, abs(exact))

    def test_examples(self):
        assert abs(eval_monotangent(2, 0.25) - 2 * PI**2) < 1e-10
        assert abs(eval_monotangent(2, 0.5) - PI**2) < 1e-10
        assert abs(eval_monotangent(3, 0.5)) < 1e-10

    @pytest.mark.parametrize("s", range(3, 13))
    def test_against_series(self, s):
        for z in Z_SAMPLES:
            oracle = eval_multitangent_direct((s,), z)
            assert abs(eval_monotangent(s, z) - oracle.value) < max(oracle.bound, 1e-9)

    @pytest.mark.parametrize("z", [1, 0, -3, 2 + 1e-13, 1e-13j])
    def test_poles(self, z):
        with pytest.raises(PoleError):
            w_of_z(z)
        with pytest.raises(PoleError):
            eval_multitangent_direct((2,), z)

    def test_near_pole_still_finite(self):
        assert cmath.isfinite(eval_monotangent(2, 1 + 1e-6))


class TestReduction:
    def test_golden(self):
        m = bouillot_reduce((2, 3))
        assert m.format() == "3·ζ(3)·Ψ_2 + ζ(2)·Ψ_3"
        flat = m.flatten()
        assert abs(flat[2] - 3 * 1.2020569031595942) < 1e-10
        assert abs(flat[3] - PI**2 / 6) < 1e-10

    def test_trivial(self):
        assert bouillot_reduce((2,)) == MonotangentCombination.psi(2)

    def test_rejects(self):
        for k in [(1, 2), (2, 1), ()]:
            with pytest.raises(InvalidIndexError):
                bouillot_reduce(k)

    @pytest.mark.parametrize("z", [0.3, 0.3 + 0.2j])
    @pytest.mark.parametrize("k", [(2,), (2, 2), (2, 3), (3, 2), (2, 1, 2)])
    def test_against_series(self, k, z):
        oracle = eval_multitangent_direct(k, z)
        assert abs(eval_multitangent(k, z) - oracle.value) < max(1e-5, 3 * oracle.bound)

    def test_agrees_with_main_theorem_exactly_after_flattening(self):
        for k in mtgf_admissible_indices(8):
            a = bouillot_reduce(k).flatten()
            b = main_theorem_rhs(k).flatten()
            for s in set(a) | set(b):
                assert abs(a.get(s, 0) - b.get(s, 0)) < 1e-8, (k, s)


class TestDirectOracle:
    def test_reported_bound_covers_error(self):
        for k in mtgf_admissible_indices(6):
            for z in Z_SAMPLES:
                oracle = eval_multitangent_direct(k, z)
                assert abs(oracle.value - eval_multitangent(k, z)) < oracle.bound + 1e-9, (k, z)

    def test_log_extrapolation(self):
        for k in mtgf_admissible_indices(7):
            oracle = eval_multitangent_direct(k, 0.3 + 0.2j, extrapolation="log")
            assert abs(oracle.value - eval_multitangent(k, 0.3 + 0.2j)) < 1e-6, k

    def test_smaller_cutoff(self):
        cfg = PrecisionConfig(oracle_cutoff=2000)
        oracle = eval_multitangent_direct((2, 3), 0.3, cfg)
        assert oracle.cutoff == 2000
        assert abs(oracle.value - eval_multitangent((2, 3), 0.3)) < oracle.bound

    def test_rejects(self):
        with pytest.raises(InvalidIndexError):
            eval_multitangent_direct((1, 2), 0.3)
        with pytest.raises(ValueError):
            eval_multitangent_direct((2,), 0.3, extrapolation="other")


class TestOperators:
    def test_derivative_examples(self):
        assert derivative_index_sum((2, 3)) == IndexSum({(3, 3): -2, (2, 4): -3})
        assert derivative_index_sum((2,)) == IndexSum({(3,): -2})
        assert derivative_index_sum((2, 1, 2)) == IndexSum({(3, 1, 2): -2, (2, 2, 2): -1, (2, 1, 3): -2})

    def test_derivative_numeric(self):
        h = 1e-5
        for k in mtgf_admissible_indices(6):
            for z in Z_SAMPLES:
                fd = (eval_multitangent(k, z + h) - eval_multitangent(k, z - h)) / (2 * h)
                exact = eval_index_sum(derivative_index_sum(k), z)
                assert abs(fd - exact) < 5e-6 * max(abs(exact), 1), (k, z)

    def test_reflection(self):
        for k in mtgf_admissible_indices(7):
            for z in Z_SAMPLES:
                lhs = eval_multitangent(k, -z)
                rhs = (-1) ** sum(k) * eval_multitangent(k[::-1], z)
                assert abs(lhs - rhs) < 1e-8 * max(1, abs(lhs)), (k, z)

    def test_harmonic_product(self):
        pool = mtgf_admissible_indices(6)
        for k in pool:
            for l in pool:
                if sum(k) + sum(l) > 8:
                    continue
                for z in Z_SAMPLES:
                    lhs = eval_index_sum(stuffle(k, l), z)
                    rhs = eval_multitangent(k, z) * eval_multitangent(l, z)
                    assert abs(lhs - rhs) < 1e-8 * max(1, abs(rhs)), (k, l, z)


class TestWExpansion:
    def test_psi2(self):
        w = w_expand(MonotangentCombination.psi(2))
        assert set(w) == {1, 2}
        assert abs(w[1] - TWO_PI_I**2) < 1e-12 and abs(w[2] - TWO_PI_I**2) < 1e-12

    def test_w1_coefficient_two_three(self):
        # the main theorem carries the sign (-1)^5, so the w^1 coefficient is minus (2 pi i)^2 zeta^RS(2,1)
        coeff = w_expand(main_theorem_rhs((2, 3)))[1]
        hand = TWO_PI_I**2 * (-1j * PI * PI**2 / 6 - 3 * 1.2020569031595942)
        assert abs(zeta_rs((2, 1)) * TWO_PI_I**2 - hand) < 1e-10
        assert abs(coeff + hand) < 1e-8

    def test_product_has_no_linear_term(self):
        for k in [(2,), (2, 3), (3, 1, 2)]:
            for l in [(2,), (4,), (2, 2)]:
                prod = multiply_w_polys(w_expand(main_theorem_rhs(k)), w_expand(main_theorem_rhs(l)))
                assert abs(prod.get(1, 0)) < 1e-8
                assert abs(prod.get(0, 0)) < 1e-8

    def test_expansion_evaluates_like_the_combination(self):
        m = main_theorem_rhs((2, 1, 3))
        for z in Z_SAMPLES:
            w = w_of_z(z)
            via_w = sum(c * w**p for p, c in w_expand(m).items())
            assert abs(via_w - eval_monotangent_combination(m, z)) < 1e-9 * max(1, abs(via_w))

    def test_constant_coefficients(self):
        m = MonotangentCombination.psi(3, MzvCombination.constant(F(1, 2)))
        assert abs(w_expand(m)[3] - TWO_PI_I**3 / 2) < 1e-10
