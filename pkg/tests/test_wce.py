"""Tests for Bernoulli kernels and the two worst-case-error routes."""

import math

import numpy as np
import pytest

from ranlattice.lattice import LatticeRule
from ranlattice.space import KorobovParams, zeta
from ranlattice.wce import (
    BOX_GUARD,
    bernoulli_poly,
    brute_force_tail_bound,
    build_kernel_tables,
    finalize_squared_error,
    k_max_for_tail,
    kernel_coefficient,
    membership_Z,
    wce_brute_force,
    wce_closed_form,
)

sympy = pytest.importorskip("sympy")


class TestBernoulliPoly:
    def test_known_values(self):
        assert bernoulli_poly(2, 0.0) == pytest.approx(1.0 / 6, rel=1e-15)
        assert bernoulli_poly(2, 0.5) == pytest.approx(-1.0 / 12, rel=1e-15)
        assert bernoulli_poly(4, 0.0) == pytest.approx(-1.0 / 30, rel=1e-15)
        assert bernoulli_poly(6, 0.0) == pytest.approx(1.0 / 42, rel=1e-15)
        assert bernoulli_poly(8, 0.0) == pytest.approx(-1.0 / 30, rel=1e-15)

    def test_against_symbolic(self):
        x = sympy.symbols("x")
        for order in (2, 4, 6, 8):
            poly = sympy.bernoulli(order, x)
            for t in np.linspace(0.0, 1.0, 11):
                want = float(poly.subs(x, sympy.Rational(round(t * 10), 10)))
                assert bernoulli_poly(order, float(t)) == pytest.approx(
                    want, abs=1e-14
                )

    def test_vectorized(self):
        t = np.linspace(0.0, 1.0, 7)
        got = bernoulli_poly(2, t)
        np.testing.assert_allclose(got, t * t - t + 1.0 / 6, rtol=1e-15, atol=1e-16)

    def test_validation(self):
        with pytest.raises(ValueError):
            bernoulli_poly(3, 0.5)
        with pytest.raises(ValueError):
            bernoulli_poly(2, 1.5)


class TestKernelCoefficient:
    def test_signs_alternate(self):
        assert kernel_coefficient(1) == pytest.approx(2 * math.pi**2, rel=1e-15)
        assert kernel_coefficient(2) == pytest.approx(
            -((2 * math.pi) ** 4) / 24.0, rel=1e-15
        )

    def test_matches_zeta_at_origin(self):
        # sum_{k != 0} |k|^(-2 alpha) evaluated two ways
        for alpha in (1, 2, 3, 4):
            got = kernel_coefficient(alpha) * bernoulli_poly(2 * alpha, 0.0)
            assert got == pytest.approx(2 * zeta(2.0 * alpha), rel=1e-13)

    def test_non_integer_alpha_rejected(self):
        with pytest.raises(ValueError):
            kernel_coefficient(1.5)
        with pytest.raises(ValueError):
            kernel_coefficient(5)


class TestClosedForm:
    def test_two_point_rule(self):
        p = KorobovParams(1.0, (1.0,))
        rep = wce_closed_form(LatticeRule(2, (1,)), p)
        assert rep.squared_error == pytest.approx(math.pi**2 / 12, rel=1e-13)
        assert rep.method == "closed_form"
        assert rep.tail_bound == 0.0

    def test_three_point_rule(self):
        p = KorobovParams(1.0, (1.0,))
        rep = wce_closed_form(LatticeRule(3, (1,)), p)
        assert rep.squared_error == pytest.approx(math.pi**2 / 27, rel=1e-13)

    @pytest.mark.parametrize("alpha", [1.0, 2.0])
    @pytest.mark.parametrize("n", [2, 3, 5, 7, 11])
    @pytest.mark.parametrize("gamma", [1.0, 0.5])
    def test_single_dimension_identity(self, alpha, n, gamma):
        # in d = 1 the dual is the nonzero multiples of N
        p = KorobovParams(alpha, (gamma,))
        want = 2.0 * zeta(2.0 * alpha) * gamma**2 / n ** (2.0 * alpha)
        rep = wce_closed_form(LatticeRule(n, (1,)), p)
        assert rep.squared_error == pytest.approx(want, rel=1e-10)

    def test_generator_value_irrelevant_in_one_dimension(self):
        p = KorobovParams(2.0, (0.7,))
        errors = {
            wce_closed_form(LatticeRule(11, (z,)), p).squared_error
            for z in range(1, 11)
        }
        assert max(errors) - min(errors) <= 1e-15 * max(errors)

    def test_zero_weight_drops_coordinate(self):
        full = KorobovParams(2.0, (0.8, 0.0))
        reduced = KorobovParams(2.0, (0.8,))
        got = wce_closed_form(LatticeRule(11, (1, 7)), full).squared_error
        want = wce_closed_form(LatticeRule(11, (1,)), reduced).squared_error
        assert got == pytest.approx(want, rel=1e-13)

    def test_kernel_tables_shape(self):
        p = KorobovParams(2.0, (1.0, 0.25))
        tables = build_kernel_tables(p, 7)
        assert tables.shape == (2, 7)
        # column 0 is the kernel at the origin
        assert tables[0, 0] == pytest.approx(1 + 2 * zeta(4.0), rel=1e-13)

    def test_clamp(self):
        sq, clamped = finalize_squared_error(1.0 - 1e-9)
        assert sq == 0.0 and clamped
        sq, clamped = finalize_squared_error(1.5)
        assert sq == pytest.approx(0.5) and not clamped


class TestBruteForce:
    def test_matches_closed_form_within_tail(self):
        cases = [
            (LatticeRule(5, (1, 2)), KorobovParams(1.0, (1.0, 0.5)), 400),
            (LatticeRule(7, (1, 3)), KorobovParams(2.0, (1.0, 0.25)), 40),
            (LatticeRule(11, (1, 4, 9)), KorobovParams(2.0, (1.0, 0.25, 1.0 / 9)), 30),
            (LatticeRule(2, (1,)), KorobovParams(1.0, (1.0,)), 5000),
        ]
        for rule, params, k_max in cases:
            closed = wce_closed_form(rule, params).squared_error
            rep = wce_brute_force(rule, params, k_max)
            assert rep.method == "brute_force"
            assert rep.tail_bound > 0.0
            assert abs(closed - rep.squared_error) <= rep.tail_bound + 1e-9
            # truncation can only lose mass
            assert rep.squared_error <= closed + 1e-12

    def test_tail_bound_decreases(self):
        p = KorobovParams(2.0, (1.0, 0.5))
        assert brute_force_tail_bound(p, 40) < brute_force_tail_bound(p, 10)

    def test_k_max_for_tail(self):
        p = KorobovParams(2.0, (1.0,))
        k = k_max_for_tail(p, 1e-8)
        assert brute_force_tail_bound(p, k) <= 1e-8
        assert k == 2 or brute_force_tail_bound(p, k // 2) > 1e-8

    def test_unreachable_target(self):
        p = KorobovParams(1.0, (1.0,))
        with pytest.raises(ValueError, match="unreachable"):
            k_max_for_tail(p, 1e-30)

    def test_box_guard(self):
        p = KorobovParams(2.0, (1.0, 1.0, 1.0))
        with pytest.raises(ValueError):
            wce_brute_force(LatticeRule(7, (1, 2, 3)), p, 600)
        assert (2 * 600 + 1) ** 3 > BOX_GUARD


class TestMembership:
    def test_aligned_generator_fails(self):
        # z = (1, N-1) puts (1, 1) in the dual, so the error is order one
        p = KorobovParams(1.0, (1.0, 1.0))
        assert not membership_Z(LatticeRule(101, (1, 100)), 0.01, p)

    def test_constructed_generator_passes(self):
        p = KorobovParams(1.0, (1.0, 1.0))
        assert membership_Z(LatticeRule(101, (1, 57)), 0.01, p)

    def test_generous_eta_admits_everything(self, rng):
        p = KorobovParams(2.0, (1.0, 0.25))
        for _ in range(20):
            z = tuple(int(v) for v in rng.integers(1, 31, size=2))
            assert membership_Z(LatticeRule(31, z), 0.999, p)
