"""Structured catalog rows: derivative tables, integral modulations, and
the quartic-binomial tables, against their closed forms and the
formula-generated right-hand sides."""
from fractions import Fraction

import pytest
from mpmath import mp, mpf

from legseries.context import PrecisionContext
from legseries.core import dirichlet_beta
from legseries.rows import (cc_internal, chu_lhs, cor_binom_a, cor_binom_b,
                            cor_harmonic_lhs, cor_harmonic_rhs_formula,
                            int2pnu, quartic_inverse_4k1_lhs,
                            quartic_second_derivative_lhs, table1_lhs,
                            table5_lhs, table6_lhs)

from conftest import assert_agree

F = Fraction
CTX = PrecisionContext(30)
ALL_NU = (F(-1, 2), F(-1, 3), F(-1, 4), F(-1, 6))


class TestDerivativeTable:
    def test_first_row(self):
        with CTX.workdps():
            A = mp.gamma(mpf(1) / 4) ** 2 / (4 * mp.pi * mp.sqrt(mp.pi))
            assert_agree(table1_lhs(1, CTX),
                         -A * (mp.catalan - mp.pi**2 / 8), 30)

    def test_log_modulated_row(self):
        with CTX.workdps():
            A = mp.gamma(mpf(1) / 4) ** 2 / (4 * mp.pi * mp.sqrt(mp.pi))
            assert_agree(table1_lhs(4, CTX),
                         A / 4 * (mp.catalan - mp.pi**2 / 8) * mp.log(2), 30)

    def test_harmonic_modulated_row(self):
        with CTX.workdps():
            A = mp.gamma(mpf(1) / 4) ** 2 / (4 * mp.pi * mp.sqrt(mp.pi))
            lam = mp.log(2)
            ref = A / 2 * (7 * mp.zeta(3) + mp.catalan * (4 * lam - mp.pi)
                           - (4 * lam + mp.pi) * mp.pi**2 / 8)
            assert_agree(table1_lhs(6, CTX), ref, 30)

    def test_squared_harmonic_value(self):
        with CTX.workdps():
            g = mp.gamma(mpf(1) / 4)
            ref = 2 * g**2 / (mp.pi * mp.sqrt(mp.pi)) * (
                mp.catalan + (mp.pi / 4 - mp.log(2)) ** 2 - mp.pi**2 / 12)
            assert_agree(chu_lhs(CTX), ref, 30)

    def test_internal_4f3_relation(self):
        with CTX.workdps():
            lhs, rhs = cc_internal(CTX)
            assert_agree(lhs, rhs, 30)


class TestIntegralModulations:
    @pytest.mark.parametrize("nu", ALL_NU)
    def test_square_root_weight_base(self, nu):
        with CTX.workdps():
            lhs, rhs = cor_binom_a(nu, 0, CTX)
            assert_agree(lhs, rhs, 30, f"nu={nu}")

    @pytest.mark.parametrize("nu", ALL_NU)
    def test_symmetric_weight_base(self, nu):
        with CTX.workdps():
            lhs, rhs = cor_binom_b(nu, 0, CTX)
            assert_agree(lhs, rhs, 30, f"nu={nu}")

    @pytest.mark.parametrize("nu", ALL_NU)
    def test_shifted_weights(self, nu):
        ctx = PrecisionContext(25)
        with ctx.workdps():
            for m in (1, 2):
                lhs, rhs = cor_binom_a(nu, m, ctx)
                assert_agree(lhs, rhs, 25)
                lhs, rhs = cor_binom_b(nu, m, ctx)
                assert_agree(lhs, rhs, 25)

    def test_known_base_values(self):
        with CTX.workdps():
            lhs, _ = cor_binom_a(F(-1, 2), 0, CTX)
            assert_agree(lhs, 4 * mp.pi * mp.log(2), 30)
            lhs, _ = cor_binom_b(F(-1, 2), 0, CTX)
            assert_agree(lhs, mp.gamma(mpf(1) / 4) ** 4 * mp.log(2)
                         / (2 * mp.pi**3), 30)

    @pytest.mark.parametrize("nu", ALL_NU)
    def test_nested_harmonic_rows(self, nu):
        with CTX.workdps():
            lhs = cor_harmonic_lhs(nu, CTX)
            rhs = cor_harmonic_rhs_formula(nu, CTX)
            assert_agree(lhs, rhs, 30, f"nu={nu}")


class TestTwoLegendreCouplings:
    def test_central_values(self):
        with CTX.workdps():
            lhs, rhs = int2pnu(1, F(-1, 2), CTX)
            assert_agree(lhs, 4 * mp.catalan / mp.pi, 30)
            lhs, rhs = int2pnu(2, F(-1, 2), CTX)
            assert_agree(lhs, -mp.pi**2 / 2, 30)
            lhs, rhs = int2pnu(3, F(-1, 2), CTX)
            assert_agree(lhs, 28 * mp.zeta(3), 30)

    @pytest.mark.parametrize("which", [1, 2, 3])
    def test_generic_degree(self, which):
        with CTX.workdps():
            lhs, rhs = int2pnu(which, mpf(-37) / 100, CTX)
            assert_agree(lhs, rhs, 30, f"which={which}")


class TestQuarticTables:
    def test_diagonal_values(self):
        with CTX.workdps():
            g4 = mp.gamma(mpf(1) / 4)
            assert_agree(table5_lhs(1, CTX), g4**8 / (24 * mp.pi**5), 30)
            assert_agree(table5_lhs(2, CTX),
                         3 * mp.sqrt(3) * mp.gamma(mpf(1) / 3) ** 9
                         / (32 * mp.pi**5), 30)
            assert_agree(table5_lhs(3, CTX),
                         (mp.gamma(mpf(1) / 8) * mp.gamma(mpf(3) / 8)) ** 2
                         / (3 * mp.pi**3), 30)
            assert_agree(table5_lhs(4, CTX),
                         g4**4 / (mp.sqrt(2) * mp.root(3, 4) * mp.pi**3), 30)

    def test_derivative_rows(self):
        with CTX.workdps():
            assert_agree(table6_lhs(1, CTX), 8 / mp.pi**2, 30)
            assert_agree(table6_lhs(2, CTX), 64 / mp.pi**2, 30)
            assert_agree(table6_lhs(3, CTX), 576 / mp.pi**2 - 56, 30)
            assert_agree(table6_lhs(4, CTX), 12288 / mp.pi**2 - 1792, 30)

    def test_derivative_anchors(self):
        # rows n = 1..4 equal (1/pi) d^n/dnu^n of the closed off-diagonal
        # coupling at the central degree
        ctx = PrecisionContext(25)
        with ctx.workdps():
            f = lambda nv: mp.sin(nv * mp.pi) * mp.sin(2 * nv * mp.pi) \
                / (nv**2 * mp.pi**2)
            for n in range(1, 5):
                anchor = mp.diff(f, mpf(-1) / 2, n) / mp.pi
                row = table6_lhs(n, ctx)
                factor = 2 if n == 4 else 1
                assert_agree(row, factor * anchor, 20, f"n={n}")

    def test_plain_and_weighted_quartic(self):
        with CTX.workdps():
            g4 = mp.gamma(mpf(1) / 4)
            assert_agree(quartic_inverse_4k1_lhs(CTX),
                         g4**8 / (96 * mp.pi**5), 30)
            assert_agree(quartic_second_derivative_lhs(CTX),
                         g4**8 / (8 * mp.pi**5)
                         * (mp.catalan - 5 * mp.pi**2 / 48), 30)
