"""Series families: both sides of each named identity class, the sum
rules, the Clausen-coupling triple, and the Clebsch-Gordan machinery."""
from fractions import Fraction

import pytest
from mpmath import mp, mpf, mpc

from legseries.context import PrecisionContext
from legseries.errors import DivergenceError, DomainError
from legseries.families import (NU_HALF, NU_QUARTER, NU_SIXTH, NU_THIRD,
                                SeriesSpec, cg_T_2nu_closed, cg_T_bailey,
                                cg_T_closed, cg_T_eps, cg_T_integral,
                                cg_Ttilde_closed, cg_Ttilde_integral,
                                cg_U_eps, cg_U_integral, clausen_couplings,
                                eval_series, family_GR, family_GS, family_LS,
                                family_SE, family_Sigma,
                                family_sigma_rational, gr_4f3, gs_sum_rule,
                                harmonic_weight, se_sum_rule)
from legseries.core import C2K
from legseries.tailsum import WeightSum

from conftest import assert_agree

F = Fraction
CTX = PrecisionContext(30)


class TestEvalSeries:
    def test_plain_central_value(self):
        # sum C(2k,k)^2 (t/16)^k at t = 1/2 is the central Legendre value
        with CTX.workdps():
            spec = SeriesSpec(binomials=((C2K, 2),), ratio=F(1, 32))
            v = eval_series(spec, CTX)
            assert_agree(v, mp.sqrt(mp.pi) / mp.gamma(mpf(3) / 4) ** 2, 40)

    def test_zero_ratio_keeps_first_term(self):
        with CTX.workdps():
            spec = SeriesSpec(binomials=((C2K, 1),), ratio=0)
            assert eval_series(spec, CTX) == 1

    def test_divergent_spec_raises(self):
        spec = SeriesSpec(binomials=((C2K, 1),), ratio=F(1, 2))
        with pytest.raises(DivergenceError):
            eval_series(spec, CTX)

    def test_negative_multiplicity_and_weights(self):
        # sum (2H_2k - H_k) C(2k,k)/4^k /(2k+1) through the declarative form
        with CTX.workdps():
            w = harmonic_weight(2, 1, 2).plus(harmonic_weight(1, 1, -1))
            spec = SeriesSpec(binomials=((C2K, 1),), ratio=F(1, 4),
                              rational_factors=((2, F(1), -1),),
                              harmonic_factors=(w,))
            v = 4 * eval_series(spec, CTX)
            assert_agree(v, 4 * mp.pi * mp.log(2) / 4 * 4, 40)


class TestLogFamilies:
    @pytest.mark.parametrize("nu", [NU_HALF, NU_THIRD, NU_QUARTER, NU_SIXTH])
    def test_plain_family_random_t(self, nu, rng):
        with CTX.workdps():
            for _ in range(3):
                t = mpf(rng.uniform(-0.9, 0.93))
                lhs, rhs = family_LS(nu, t, ctx=CTX)
                assert_agree(lhs, rhs, CTX.target_digits, f"nu={nu} t={t}")

    @pytest.mark.parametrize("nu", [NU_HALF, NU_THIRD, NU_QUARTER, NU_SIXTH])
    def test_twin_family_random_t(self, nu, rng):
        with CTX.workdps():
            for _ in range(2):
                t = mpf(rng.uniform(0.03, 0.93))
                lhs, rhs = family_LS(nu, t, tilde=True, ctx=CTX)
                assert_agree(lhs, rhs, CTX.target_digits)

    def test_twin_complex_argument(self):
        with CTX.workdps():
            lhs, rhs = family_LS(NU_HALF, mpc(mpf(1) / 5, mpf(3) / 10),
                                 tilde=True, ctx=CTX)
            assert_agree(lhs, rhs, CTX.target_digits)

    def test_twin_negative_t_directional(self):
        with CTX.workdps():
            for approach in ("above", "below"):
                lhs, rhs = family_LS(NU_HALF, mpf(-1) / 2, tilde=True,
                                     approach=approach, ctx=CTX)
                assert_agree(lhs, rhs, CTX.target_digits)

    def test_twin_negative_t_needs_flag(self):
        with pytest.raises(DomainError):
            family_LS(NU_HALF, mpf(-1) / 2, tilde=True, ctx=CTX)


class TestRamanujanSun:
    @pytest.mark.parametrize("kind", ["ramanujan", "sun", "au"])
    def test_generic_point(self, kind):
        with CTX.workdps():
            lhs, rhs = family_sigma_rational(NU_QUARTER, mpf(31) / 100, kind, CTX)
            assert_agree(lhs, rhs, CTX.target_digits, kind)

    def test_other_degrees(self, rng):
        with CTX.workdps():
            for nu in (NU_HALF, NU_THIRD, NU_SIXTH):
                t = mpf(rng.uniform(0.1, 0.45))
                lhs, rhs = family_sigma_rational(nu, t, "sun", CTX)
                assert_agree(lhs, rhs, CTX.target_digits, f"nu={nu}")

    def test_discriminant163_instances(self):
        ctx = PrecisionContext(35)
        with ctx.workdps():
            a, b = 545140134, 13591409
            X = F(-1, 262537412640768000)
            C = 128 * mp.sqrt(mpf(111277861125)) / mp.pi
            v = family_Sigma(NU_SIXTH, a, b, X, None, ctx)
            assert_agree(v, C, 35)


class TestClausenCouplings:
    def test_triple_at_generic_point(self):
        with CTX.workdps():
            out = clausen_couplings(mpf("-0.37"), mpf("0.22"), CTX)
            for name, (series, closed) in out.items():
                assert_agree(series, closed, CTX.target_digits, name)

    def test_triple_at_symmetric_point(self):
        # t = 1/2 puts the coupled argument on the unit boundary
        with CTX.workdps():
            out = clausen_couplings(F(-1, 3), mpf(1) / 2, CTX)
            for name, (series, closed) in out.items():
                assert_agree(series, closed, CTX.target_digits, name)


class TestGreenEpsteinFamilies:
    def test_digamma_series_equals_integral(self):
        ctx = PrecisionContext(25)
        with ctx.workdps():
            s, i = family_GS(NU_QUARTER, mpf(37) / 100, ctx)
            assert_agree(s, i, 25)

    def test_trigamma_series_equals_integral(self):
        ctx = PrecisionContext(25)
        with ctx.workdps():
            s, i = family_SE(mpf(1) / 5, ctx)
            assert_agree(s, i, 25)

    def test_gs_limit_vanishes(self):
        with CTX.workdps():
            s, _ = family_GS(NU_SIXTH, mpf(10) ** (-25), CTX, want_integral=False)
            assert abs(s) < mpf(10) ** (-20)

    def test_se_sum_rule(self):
        ctx = PrecisionContext(25)
        with ctx.workdps():
            for t in (mpf(1) / 2, mpf(3) / 10):
                lhs, rhs = se_sum_rule(t, ctx)
                assert_agree(lhs, rhs, 25)

    def test_gs_sum_rule(self):
        ctx = PrecisionContext(20)
        with ctx.workdps():
            lhs, rhs = gs_sum_rule(NU_QUARTER, mpf(1) / 9, ctx)
            assert_agree(lhs, rhs, 20)


class TestUpsideDown:
    def test_level4_boundary_point(self):
        ctx = PrecisionContext(20)
        with ctx.workdps():
            lhs, rhs = family_GR(4, mpc(mpf(-1) / 2, mpf(45) / 100), ctx)
            assert_agree(lhs, rhs, 20)

    def test_inadmissible_point_rejected(self):
        ctx = PrecisionContext(20)
        with pytest.raises(DomainError):
            family_GR(4, mpc(mpf(-1) / 2, mpf(9) / 10), ctx)

    def test_4f3_form(self):
        with CTX.workdps():
            lhs, rhs = gr_4f3(mpf(-1) / 2, mpf(1) / 2 + mpf(3) / 5 * mpc(0, 1), CTX)
            assert_agree(lhs, rhs, CTX.target_digits)


class TestClebschGordan:
    MU, NU = mpf(-3) / 10, mpf(-45) / 100

    def test_deformation_order1_vs_integral(self):
        ctx = PrecisionContext(20)
        with ctx.workdps():
            assert_agree(cg_T_eps(self.MU, self.NU, ctx),
                         cg_T_integral(self.MU, self.NU, ctx), 20)

    def test_deformation_order2_vs_integral(self):
        ctx = PrecisionContext(20)
        with ctx.workdps():
            assert_agree(cg_U_eps(self.MU, self.NU, ctx),
                         cg_U_integral(self.MU, self.NU, ctx), 20)

    def test_diagonal_closed_form(self, rng):
        ctx = PrecisionContext(20)
        with ctx.workdps():
            nu = mpf(rng.uniform(-0.6, -0.1))
            assert_agree(cg_T_integral(nu, nu, ctx), cg_T_closed(nu, ctx), 20)

    def test_offdiagonal_closed_form(self):
        ctx = PrecisionContext(20)
        with ctx.workdps():
            nu = mpf(-3) / 10
            assert_agree(cg_T_integral(2 * nu - 1, nu, ctx),
                         cg_T_2nu_closed(nu, ctx), 20)

    def test_weighted_diagonal_closed_form(self):
        ctx = PrecisionContext(20)
        with ctx.workdps():
            nu = mpf(-45) / 100
            assert_agree(cg_Ttilde_integral(nu, ctx), cg_Ttilde_closed(nu, ctx), 20)

    @pytest.mark.parametrize("variant", list("abcde"))
    def test_bailey_variants(self, variant):
        ctx = PrecisionContext(25)
        with ctx.workdps():
            v = cg_T_bailey(self.MU, self.NU, variant, ctx)
            assert_agree(v, cg_T_eps(self.MU, self.NU, ctx), 25, variant)

    def test_recursion_exact(self):
        # closed-form diagonal values satisfy the contiguous recursion
        ctx = PrecisionContext(30)
        with ctx.workdps():
            for n in (0, 1, 2, mpf(1) / 3):
                lhs = cg_T_closed(2 * (n + 1) + mpf(4) / 3, ctx)
                coef = ((n + 1) * (3 * n + 4) * (6 * n + 7) ** 2
                        / ((2 * n + 3) * (3 * n + 5) ** 2 * (6 * n + 11)))
                rhs = coef * cg_T_closed(2 * n + mpf(4) / 3, ctx)
                assert_agree(lhs, rhs, 35, f"n={n}")
