import json
import math
from fractions import Fraction

import pytest

from mtsmzv.errors import InvalidIndexError
from mtsmzv.indices import hoffman_dual, indices_up_to
from mtsmzv.numerics import PI_I, TWO_PI_I, eval_tpoly
from mtsmzv.regularization import MzvCombination, TPoly
from mtsmzv.symmetric import (
    MonotangentCombination,
    integrate_average,
    main_theorem_rhs,
    rho_apply,
    symmetric_T_polynomial,
    zeta_rs,
    zeta_rs_star,
)

PI = math.pi
Z = MzvCombination.symbol
ZETA2, ZETA3 = PI**2 / 6, 1.2020569031595942


class TestSymmetricPolynomial:
    @pytest.mark.parametrize("flavor", ["shuffle", "harmonic"])
    def test_empty(self, flavor):
        assert symmetric_T_polynomial((), flavor) == TPoly.one()

    def test_one(self):
        assert symmetric_T_polynomial((1,), "shuffle") == TPoly.T_power(1).scale(-1)

    def test_two_one_shuffle(self):
        p = symmetric_T_polynomial((2, 1), "shuffle")
        assert p == TPoly((Z((1, 2), -3), Z((2,), -1)))
        assert abs(eval_tpoly(p, 0) + 3 * ZETA3) < 1e-10

    def test_one_one_harmonic(self):
        p = symmetric_T_polynomial((1, 1), "harmonic")
        assert p == TPoly((Z((2,), -1), MzvCombination(), MzvCombination.constant(Fraction(1, 2))))

    def test_rank_at_most_two(self):
        for l in indices_up_to(6):
            p = symmetric_T_polynomial(l, "shuffle")
            assert all(c.rank() <= 2 for _, c in p)

    def test_unknown_flavor(self):
        with pytest.raises(ValueError):
            symmetric_T_polynomial((1,), "other")


class TestRefinedValues:
    @pytest.mark.parametrize("l, value", [((1,), -PI_I), ((2,), PI**2 / 3), ((1, 1), -2 * PI**2 / 3),
                                          ((2, 1), -PI_I * ZETA2 - 3 * ZETA3), ((), 1)])
    @pytest.mark.parametrize("route", ["harmonic_at_pi_i", "integral_of_shuffle"])
    def test_examples(self, l, value, route):
        assert abs(zeta_rs(l, route) - value) < 1e-10

    def test_routes_agree(self):
        for l in indices_up_to(6):
            assert abs(zeta_rs(l, "harmonic_at_pi_i") - zeta_rs(l, "integral_of_shuffle")) < 1e-8, l

    def test_integrate_average_of_monomials(self):
        # (1/2 pi i) int_0^{2 pi i} T^s dT = (2 pi i)^s / (s+1)
        for s in range(5):
            assert abs(integrate_average(TPoly.T_power(s)) - TWO_PI_I**s / (s + 1)) < 1e-9

    def test_unknown_route(self):
        with pytest.raises(ValueError):
            zeta_rs((1,), "other")

    def test_star_examples(self):
        assert abs(zeta_rs_star((2,)) - PI**2 / 3) < 1e-10
        assert abs(zeta_rs_star((1, 1)) + PI**2 / 3) < 1e-10
        assert abs(zeta_rs_star((1, 1)) + zeta_rs_star((2,)).conjugate()) < 1e-10
        with pytest.raises(InvalidIndexError):
            zeta_rs_star(())

    def test_star_duality(self):
        for k in indices_up_to(6):
            if k:
                lhs = zeta_rs_star(hoffman_dual(k)) + zeta_rs_star(k).conjugate()
                assert abs(lhs) < 1e-8, k


class TestRho:
    def test_powers(self):
        assert rho_apply(TPoly.one()) == MonotangentCombination.psi(2)
        assert rho_apply(TPoly.T_power(1)) == MonotangentCombination.psi(3)
        assert rho_apply(TPoly.T_power(2)) == MonotangentCombination.psi(4, MzvCombination.constant(2))

    def test_linear(self):
        p = TPoly((Z((3,), -3), Z((2,), -1)))
        expected = MonotangentCombination({2: Z((3,), -3), 3: Z((2,), -1)})
        assert rho_apply(p) == expected

    def test_keys_at_least_two(self):
        for l in indices_up_to(6):
            assert all(s >= 2 for s in rho_apply(symmetric_T_polynomial(l, "shuffle")))


class TestMainTheoremRhs:
    def test_small(self):
        assert main_theorem_rhs((2,)) == MonotangentCombination.psi(2)
        assert main_theorem_rhs((3,)) == MonotangentCombination.psi(3)

    def test_two_three(self):
        m = main_theorem_rhs((2, 3))
        assert m.format() == "3·ζ(1,2)·Ψ_2 + ζ(2)·Ψ_3"
        flat = m.flatten()
        assert abs(flat[2] - 3 * ZETA3) < 1e-10
        assert abs(flat[3] - ZETA2) < 1e-10

    def test_rejects(self):
        with pytest.raises(InvalidIndexError):
            main_theorem_rhs((1, 3))


class TestMonotangentCombination:
    def test_rejects_low_weight(self):
        with pytest.raises(ValueError):
            MonotangentCombination({1: MzvCombination.one()})

    def test_arithmetic(self):
        a = MonotangentCombination.psi(2, Z((3,)))
        b = MonotangentCombination.psi(3)
        assert (a + b - b) == a
        assert (a - a) == MonotangentCombination()
        assert (-a).format() == "-ζ(3)·Ψ_2"
        assert MonotangentCombination().format() == "0"

    def test_json_round_trip(self):
        m = main_theorem_rhs((2, 1, 3))
        text = m.to_json()
        assert all({"s", "combination"} <= d.keys() for d in json.loads(text))
        assert MonotangentCombination.from_json(text) == m
