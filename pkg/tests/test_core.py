"""Scalar layer: gamma/polygamma, harmonic numbers, constants, dilog,
rising factorials and binomial patterns, with independent oracles."""
import math
from fractions import Fraction

import pytest
from mpmath import mp, mpf, mpc, workdps

from legseries.context import PrecisionContext
from legseries.core import (C2K, C3K, C4K2K, C6K3K, binomial_pattern,
                            binomial_ratio, catalan, clausen_cl2, dilog,
                            dirichlet_beta, euler_gamma, gamma, harmonic,
                            harmonic_general, pi, pochhammer, polygamma, zeta)
from legseries.errors import DomainError, PoleError
from legseries.quadrature import SING_ENDPOINT, integrate_de

from conftest import assert_agree

CTX = PrecisionContext(30)


class TestGamma:
    def test_factorial_point(self):
        with CTX.workdps():
            assert gamma(1, CTX) == 1

    def test_half(self):
        with CTX.workdps():
            assert_agree(gamma(Fraction(1, 2), CTX), mp.sqrt(mp.pi), 40)

    def test_quarter_against_quadrature_oracle(self):
        # independent oracle: the defining integral, truncated at T with the
        # e^-T tail folded into the tolerance, evaluated by tanh-sinh
        ctx = PrecisionContext(30)
        with ctx.workdps():
            T = mpf(130)
            val = integrate_de(lambda dm, dp: mp.exp(-dm) * dm ** (mpf(1) / 4 - 1),
                               (0, T), ctx, SING_ENDPOINT, endpoint_form=True)
            assert_agree(val, gamma(Fraction(1, 4), ctx), 30, "Gamma(1/4)")

    def test_pole(self):
        with pytest.raises(PoleError):
            gamma(0, CTX)
        with pytest.raises(PoleError):
            gamma(-3, CTX)

    def test_reflection_random_rationals(self, rng):
        with CTX.workdps():
            for _ in range(100):
                q = rng.randrange(2, 60)
                p = rng.randrange(1, q)
                x = Fraction(p, q)
                lhs = gamma(x, CTX) * gamma(1 - x, CTX)
                rhs = mp.pi / mp.sin(mp.pi * p / q)
                assert_agree(lhs, rhs, CTX.working_digits - 3, f"reflection {x}")

    def test_duplication(self, rng):
        with CTX.workdps():
            for _ in range(20):
                x = mpf(rng.uniform(0.05, 4.0))
                lhs = gamma(x, CTX) * gamma(x + mpf(1) / 2, CTX)
                rhs = 2 ** (1 - 2 * x) * mp.sqrt(mp.pi) * gamma(2 * x, CTX)
                assert_agree(lhs, rhs, CTX.working_digits - 3)


class TestPolygamma:
    def test_euler_constant(self):
        with CTX.workdps():
            assert_agree(polygamma(0, 1, CTX), -mp.euler, 40)

    def test_trigamma_at_one(self):
        with CTX.workdps():
            assert_agree(polygamma(1, 1, CTX), mp.pi**2 / 6, 40)

    def test_half_point_series_oracle(self):
        # psi(x) = -gamma0 + sum_k (1/k - 1/(k+x-1)) summed with a tail bound
        ctx = PrecisionContext(25)
        with ctx.workdps():
            x = mpf(1) / 2
            s = -mp.euler
            K = 300_000
            for k in range(1, K):
                s += mpf(1) / k - 1 / (k + x - 1)
            # tail ~ (x-1) * sum_{k>=K} 1/k^2 ~ (x-1)/K
            assert abs(s - polygamma(0, x, ctx)) < mpf(2) / K
            assert_agree(polygamma(0, x, ctx), -mp.euler - 2 * mp.log(2), 38)

    def test_recurrence(self, rng):
        with CTX.workdps():
            for _ in range(20):
                x = mpf(rng.uniform(0.1, 5.0))
                assert_agree(polygamma(0, x + 1, CTX) - polygamma(0, x, CTX),
                             1 / x, CTX.working_digits - 3)

    def test_pole(self):
        with pytest.raises(PoleError):
            polygamma(2, -1, CTX)


class TestHarmonic:
    def test_exact_values(self):
        assert harmonic(3, 1) == Fraction(11, 6)
        assert harmonic(0, 2) == 0
        assert harmonic(4, 2) == Fraction(205, 144)

    def test_general_matches_exact(self):
        with CTX.workdps():
            for n in range(0, 51):
                exact = harmonic(n, 1)
                val = harmonic_general(n, CTX)
                assert_agree(val, mpf(exact.numerator) / exact.denominator,
                             CTX.working_digits - 2)

    def test_general_half(self):
        with CTX.workdps():
            assert_agree(harmonic_general(Fraction(1, 2), CTX),
                         2 - 2 * mp.log(2), 40)


class TestConstants:
    def test_catalan_alternating_oracle(self):
        # Euler-transformed alternating series as the independent oracle
        ctx = PrecisionContext(25)
        with ctx.workdps():
            a = [1 / mpf(2 * k + 1) ** 2 for k in range(220)]
            # sum (-1)^k a_k = sum_n (-1)^n (forward difference)^n a_0 / 2^(n+1)
            total = mpf(0)
            row = a[:]
            for n in range(200):
                total += (-1) ** n * row[0] / 2 ** (n + 1)
                row = [row[i + 1] - row[i] for i in range(len(row) - 1)]
            assert_agree(total, dirichlet_beta(2, ctx), 28, "beta(2)")
            assert_agree(dirichlet_beta(2, ctx), catalan(ctx), 39)

    def test_zeta3_directsum_oracle(self):
        ctx = PrecisionContext(15)
        with ctx.workdps():
            K = 40000
            s = sum(1 / mpf(k) ** 3 for k in range(1, K))
            # tail between 1/(2K^2) and 1/(2(K-1)^2)
            s += mpf(1) / (2 * K**2)
            assert abs(s - zeta(3, ctx)) < mpf(1) / K**3 + mpf(1) / K**2

    def test_dilog_at_one(self):
        with CTX.workdps():
            assert_agree(dilog(1, CTX), mp.pi**2 / 6, 40)

    def test_dilog_circle_against_mpmath(self, rng):
        with CTX.workdps():
            for _ in range(10):
                theta = mpf(rng.uniform(0.2, 6.0))
                v = dilog(mp.exp(mpc(0, 1) * theta), CTX)
                assert_agree(mp.im(v), mp.clsin(2, theta), 40)
                assert_agree(mp.re(v), mp.clcos(2, theta), 40)

    def test_dilog_domain(self):
        with pytest.raises(DomainError):
            dilog(mpf(2), CTX)

    def test_clausen_symmetry(self):
        with CTX.workdps():
            assert clausen_cl2(0, CTX) == 0
            assert_agree(clausen_cl2(mp.pi / 2, CTX), catalan(CTX), 40)


class TestPochhammerBinomial:
    def test_pochhammer_exact(self):
        assert pochhammer(1, 3) == 6
        assert pochhammer(Fraction(1, 2), 2) == Fraction(3, 4)
        assert pochhammer(Fraction(-1, 3), 4) == Fraction(-80, 81)
        assert pochhammer(Fraction(5, 7), 0) == 1

    def test_patterns_match_comb(self):
        for k in range(0, 40):
            assert binomial_pattern(k, C2K) == math.comb(2 * k, k)
            assert binomial_pattern(k, C3K) == math.comb(3 * k, k)
            assert binomial_pattern(k, C4K2K) == math.comb(4 * k, 2 * k)
            assert binomial_pattern(k, C6K3K) == math.comb(6 * k, 3 * k)

    def test_spec_points(self):
        assert binomial_pattern(2, C2K) == 6
        assert binomial_pattern(1, C6K3K) == 20
        assert binomial_pattern(3, C3K) == 84

    def test_ratio_recurrence(self):
        for pat in (C2K, C3K, C4K2K, C6K3K):
            for k in range(0, 25):
                r = binomial_ratio(k, pat)
                assert binomial_pattern(k, pat) * r == binomial_pattern(k + 1, pat)


def test_two_precision_agreement():
    # doubling the working precision must only move values below the
    # original target
    xs = [Fraction(1, 4), Fraction(3, 7)]
    for x in xs:
        c1 = PrecisionContext(25)
        c2 = PrecisionContext(50)
        with workdps(80):
            a = gamma(x, c1)
            b = gamma(x, c2)
            assert abs(a - b) < abs(b) * mpf(10) ** (-25)
