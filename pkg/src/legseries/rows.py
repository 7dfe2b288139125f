"""Left-hand-side builders for the structured catalog rows.

Each function returns the numeric value of one displayed series (or the
pair of sides when the right-hand side is itself formula-generated, as for
the integral-modulation corollaries whose rational coefficients come from
digamma derivatives of Beta-integral formulas).
"""
from __future__ import annotations

from fractions import Fraction
from typing import Tuple

from mpmath import mp, mpf, mpc

from .context import PrecisionContext, DEFAULT_CTX
from .core import C2K, C3K, C4K2K, C6K3K, to_mp
from .errors import DomainError
from .families import (BASE, BINOMS, NU_HALF, NU_QUARTER, NU_SIXTH, NU_THIRD,
                       ls_weight, pattern_gammas, poch_gammas, harmonic_weight)
from .hypergeo import pfq
from .tailsum import HyperTerm, WeightSum, hyperterm_sum

F = Fraction


def _h(m, r=1, coef=1, shift=0):
    return WeightSum.harmonic(m, r, coef, shift)


def _hk2():
    """h^(2): H^(2)_{2k} - H^(2)_k / 4."""
    return _h(2, 2, 1).plus(_h(1, 2, F(-1, 4)))


def _hkr(r):
    """h^(r): H^(r)_{2k} - 2^(-r) H^(r)_k."""
    return _h(2, r, 1).plus(_h(1, r, F(-1, 2**r)))


def _half_base(prefactor=1, weights=(), rationals=()):
    """C(2k,k)^2/2^(5k) skeleton common to the first derivative table."""
    gammas, pref = poch_gammas(NU_HALF)

    def p():
        return pref() * _tompx(prefactor)

    return HyperTerm(prefactor=p, gammas=gammas, rationals=tuple(rationals),
                     geometric=F(1, 2), weights=tuple(weights))


def _tompx(x):
    if callable(x):
        return x()
    if isinstance(x, Fraction):
        return mpf(x.numerator) / x.denominator
    return mpf(x)


def table1_lhs(n: int, ctx: PrecisionContext = DEFAULT_CTX):
    """Rows of the square-binomial derivative table (weights h^(r), H_k)."""
    h1, h2, h3 = _hkr(1), _hkr(2), _hkr(3)
    h4, h5, h6 = _hkr(4), _hkr(5), _hkr(6)
    Hk = _h(1, 1, 1)
    pieces = {
        1: [((h2,), 1)],
        2: [((h4,), 1), ((h2, h2), -1)],
        3: [((h6,), 1), ((h4, h2), F(-3, 2)), ((h2, h2, h2), F(1, 2))],
        4: [((h3,), 1), ((h1, h2), -1)],
        5: [((h5,), 1), ((h1, h4), F(-1, 2)), ((h2, h3), -1),
            ((h1, h2, h2), F(1, 2))],
        6: [((h2, Hk), 1)],
        7: [((h4, Hk), 1), ((h2, h2, Hk), -1)],
    }[n]
    with ctx.workdps():
        total = mpf(0)
        for weights, coef in pieces:
            total += hyperterm_sum(_half_base(coef, weights), ctx)
        return total


def chu_lhs(ctx: PrecisionContext = DEFAULT_CTX):
    """sum C(2k,k)^2/2^(5k) [H_k^(2) + H_k^2]."""
    Hk = _h(1, 1, 1)
    with ctx.workdps():
        return hyperterm_sum(_half_base(1, (_h(1, 2, 1),)), ctx) \
            + hyperterm_sum(_half_base(1, (Hk, Hk)), ctx)


def cc_internal(ctx: PrecisionContext = DEFAULT_CTX):
    """Both sides of the three-term relation between the H^(2)-weighted
    square-binomial series and two 4F3(1) constants with no known
    closed form (stored as verified opaque values)."""
    with ctx.workdps():
        lhs = hyperterm_sum(_half_base(1, (_h(1, 2, 1),)), ctx)
        f1 = pfq([1, 1, 1, F(3, 2)], [F(7, 4), F(7, 4), 2], 1, ctx)
        f2 = pfq([F(1, 2), F(1, 2), 1, 1], [F(5, 4), F(5, 4), F(3, 2)], 1, ctx)
        g = mp.gamma(mpf(1) / 4)
        rhs = mp.sqrt(mp.pi) * g**2 / 12 - g**2 / (9 * mp.pi * mp.sqrt(mp.pi)) * f1 \
            - 8 * mp.sqrt(mp.pi) / g**2 * f2
        return lhs, rhs


# ---------------------------------------------------------------------------
# integral modulations (both sides formula-generated)
# ---------------------------------------------------------------------------

_LS_PREF = {NU_HALF: 2, NU_THIRD: 1, NU_QUARTER: 2, NU_SIXTH: 1}


def cor_binom_a(nu: Fraction, m: int, ctx: PrecisionContext = DEFAULT_CTX):
    """Weighted-tail modulation: integral of the log family against
    (1-t)^(m-1/2).  Series side carries the double-factorial rational
    weight k!/prod_{j=0..m}(k+j+1/2); closed side is the sigma-derivative
    of the Beta-integral formula.
    """
    with ctx.workdps():
        gammas, pref = poch_gammas(nu)
        gammas = gammas + ((1, F(1), 1), (1, F(2 * m + 3, 2), -1))

        def p():
            return pref() * mp.gamma(mpf(2 * m + 1) / 2)

        term = HyperTerm(prefactor=p, gammas=gammas, weights=(ls_weight(nu),))
        lhs = hyperterm_sum(term, ctx)
        nu_ = mpf(Fraction(nu).numerator) / Fraction(nu).denominator
        s = mpf(2 * m - 1) / 2
        Fv = mp.gamma(1 + s) ** 2 / (mp.gamma(2 + nu_ + s) * mp.gamma(1 - nu_ + s))
        rhs = -Fv * (2 * mp.psi(0, 1 + s) - mp.psi(0, 2 + nu_ + s)
                     - mp.psi(0, 1 - nu_ + s))
        return lhs, rhs


def cor_binom_b(nu: Fraction, m: int, ctx: PrecisionContext = DEFAULT_CTX):
    """Symmetric-weight modulation: integral of (S + S~)/pi against
    [t(1-t)]^(m-1/2), series side with the central-Beta rational weight."""
    with ctx.workdps():
        gammas, pref = poch_gammas(nu)
        gammas = gammas + ((1, F(2 * m + 1, 2), 1), (1, F(2 * m + 1), -1))

        def p():
            return pref() * mp.rf(mpf(1) / 2, m) / mp.sqrt(mp.pi)

        w = ls_weight(nu).plus(harmonic_weight(1, 1, -1))
        term = HyperTerm(prefactor=p, gammas=gammas, weights=(w,))
        lhs = hyperterm_sum(term, ctx)
        nu_ = mpf(Fraction(nu).numerator) / Fraction(nu).denominator
        s = mpf(2 * m - 1) / 2
        A = mp.pi / 2 ** (1 + 2 * s) * mp.gamma(1 + s) ** 2 / (
            mp.gamma((nu_ + 3) / 2 + s) * mp.gamma(s + (2 - nu_) / 2)
            * mp.gamma((2 + nu_) / 2) * mp.gamma((1 - nu_) / 2))
        dA = A * (-2 * mp.log(2) + 2 * mp.psi(0, 1 + s)
                  - mp.psi(0, (nu_ + 3) / 2 + s) - mp.psi(0, s + (2 - nu_) / 2))
        Cnu = -mp.euler - (mp.psi(0, -nu_) + mp.psi(0, nu_ + 1)) / 2
        rhs = ((mp.pi / (2 * mp.sin(nu_ * mp.pi)) + Cnu) * A - dA / 2) / mp.pi
        return lhs, rhs


def cor_harmonic_lhs(nu: Fraction, ctx: PrecisionContext = DEFAULT_CTX):
    """Series side of the log^2 modulation: weight H_{k+1}/(k+1)."""
    with ctx.workdps():
        gammas, pref = poch_gammas(nu)

        term = HyperTerm(prefactor=pref, gammas=gammas,
                         rationals=((1, F(1), -1),),
                         weights=(ls_weight(nu), _h(1, 1, 1, shift=1)))
        return hyperterm_sum(term, ctx)


def cor_harmonic_rhs_formula(nu: Fraction, ctx: PrecisionContext = DEFAULT_CTX):
    """The same value as the second sigma-derivative of the Beta formula."""
    with ctx.workdps():
        nu_ = mpf(Fraction(nu).numerator) / Fraction(nu).denominator
        Fv = 1 / (mp.gamma(2 + nu_) * mp.gamma(1 - nu_))
        L = 2 * mp.psi(0, 1) - mp.psi(0, 2 + nu_) - mp.psi(0, 1 - nu_)
        V = 2 * mp.psi(1, 1) - mp.psi(1, 2 + nu_) - mp.psi(1, 1 - nu_)
        return Fv * (L**2 + V)


# ---------------------------------------------------------------------------
# integral couplings of two Legendre functions (corollary with 4G/pi etc.)
# ---------------------------------------------------------------------------

def _int2_base(nu_, extra_rationals=(), weights=()):
    gammas = ((1, -nu_, 1), (1, nu_ + 1, 1), (1, F(1), -2))

    def p():
        return 1 / (mp.gamma(_as_mp(-nu_)) * mp.gamma(_as_mp(nu_) + 1))

    return HyperTerm(prefactor=p, gammas=gammas,
                     rationals=((2, F(1), -1),) + tuple(extra_rationals),
                     weights=tuple(weights))


def _as_mp(x):
    if isinstance(x, Fraction):
        return mpf(x.numerator) / x.denominator
    return to_mp(x)


def _recip_2k1(coef=1):
    """coef/(2k+1) = coef [psi(k+3/2) - psi(k+1/2)]/2 as a WeightSum."""
    c = F(coef) if isinstance(coef, int) else coef
    return WeightSum(parts=((0, 1, F(3, 2), c / 2), (0, 1, F(1, 2), -c / 2)))


def _recip_2k1_sq(coef=1):
    """coef/(2k+1)^2 = coef [psi'(k+1/2) - psi'(k+3/2)]/4."""
    c = F(coef) if isinstance(coef, int) else coef
    return WeightSum(parts=((1, 1, F(1, 2), c / 4), (1, 1, F(3, 2), -c / 4)))


def int2pnu(which: int, nu, ctx: PrecisionContext = DEFAULT_CTX):
    """Both sides of the three two-Legendre integral couplings."""
    with ctx.workdps():
        nu_f = Fraction(nu) if isinstance(nu, (int, Fraction)) else None
        nu_ = _as_mp(nu)
        half = abs(nu_ + mpf(1) / 2) < mpf(10) ** (-(ctx.working_digits - 5))
        if which == 1:
            lhs = hyperterm_sum(_int2_base(nu_f if nu_f is not None else nu_), ctx)
            if half:
                rhs = 4 * mp.catalan / mp.pi
            else:
                rhs = (1 + mp.sin(nu_ * mp.pi) / mp.pi
                       * (mp.psi(0, (nu_ + 2) / 2) - mp.psi(0, (nu_ + 1) / 2))) \
                    / (2 * nu_ + 1)
            return lhs, rhs
        base_nu = nu_f if nu_f is not None else nu_
        if which == 2:
            w = WeightSum(parts=((0, 1, _c(base_nu, "neg"), 1),
                                 (0, 1, _c(base_nu, "pos"), 1),
                                 (0, 1, F(1), -2))) \
                .plus(_recip_2k1(-2))
            lhs = hyperterm_sum(_int2_base(base_nu, weights=(w,)), ctx)
            rhs = -mp.pi**2 / 2 if half else mp.pi / mp.tan(nu_ * mp.pi) / (2 * nu_ + 1)
            return lhs, rhs
        if which == 3:
            vs = WeightSum(parts=((0, 1, _c(base_nu, "neg"), 1),
                                  (0, 1, _c(base_nu, "pos"), 1),
                                  (0, 1, F(1), -3), (0, 1, F(1, 2), 1)))
            tau_x = WeightSum(parts=((1, 1, _c(base_nu, "neg"), 1),
                                     (1, 1, _c(base_nu, "pos"), 1),
                                     (1, 1, F(1), -3), (1, 1, F(1, 2), 1)))
            br = _h(2, 1, 1).plus(_h(1, 1, -1)).plus(_recip_2k1(1)) \
                .plus(WeightSum(consts=(("fn", lambda: -mp.log(2)),)))
            rest = _h(2, 2, 4).plus(_h(1, 2, -2)).plus(_recip_2k1_sq(4)) \
                .plus(WeightSum(consts=(("zeta", 2, F(-2)),)))
            lhs = hyperterm_sum(_int2_base(base_nu, weights=(vs, vs)), ctx) \
                + hyperterm_sum(_int2_base(base_nu, weights=(tau_x,)), ctx) \
                + hyperterm_sum(_int2_base(base_nu, weights=(br, vs)), ctx) * -4 \
                + hyperterm_sum(_int2_base(base_nu, weights=(br, br)), ctx) * 4 \
                + hyperterm_sum(_int2_base(base_nu, weights=(rest,)), ctx)
            rhs = 28 * mp.zeta(3) if half else \
                2 / (2 * nu_ + 1) * (mp.pi**2 / mp.sin(nu_ * mp.pi) ** 2
                                     - 2 * mp.psi(1, nu_ + 1))
            return lhs, rhs
        raise ValueError(which)


def _c(nu, kind):
    if kind == "neg":
        return -nu if isinstance(nu, Fraction) else -nu
    return nu + 1


# ---------------------------------------------------------------------------
# quartic-binomial tables
# ---------------------------------------------------------------------------

def _quartic_base(prefactor, rationals, weights=()):
    gammas = pattern_gammas(((C2K, 4),))

    def p():
        return _tompx(prefactor)

    return HyperTerm(prefactor=p, gammas=gammas, rationals=tuple(rationals),
                     geometric=F(1, 256), weights=tuple(weights))


def table5_lhs(n: int, ctx: PrecisionContext = DEFAULT_CTX):
    with ctx.workdps():
        if n == 1:
            term = _quartic_base(4, ((4, F(1), -1),))
            return hyperterm_sum(term, ctx)
        if n == 2:
            gammas = pattern_gammas(((C2K, 3), (C6K3K, -1)))
            term = HyperTerm(
                prefactor=lambda: 27 * mp.sqrt(3) / (4 * mp.pi),
                gammas=gammas,
                rationals=((4, F(1), 1), (6, F(1), -2), (3, F(1), -1)),
            )
            return hyperterm_sum(term, ctx)
        if n == 3:
            gammas = pattern_gammas(((C2K, 2),))
            term = HyperTerm(prefactor=lambda: 32 / mp.pi, gammas=gammas,
                             rationals=((8, F(1), -1), (8, F(3), -1)),
                             geometric=F(1, 16))
            return hyperterm_sum(term, ctx)
        if n == 4:
            gammas = pattern_gammas(((C2K, 1), (C6K3K, 1)))
            term = HyperTerm(prefactor=lambda: 27 * mp.sqrt(3) / mp.pi,
                             gammas=gammas,
                             rationals=((4, F(1), 1), (3, F(1), -1),
                                        (12, F(1), -1), (12, F(5), -1)),
                             geometric=F(1, 256))
            return hyperterm_sum(term, ctx)
        raise ValueError(n)


def table6_lhs(n: int, ctx: PrecisionContext = DEFAULT_CTX):
    with ctx.workdps():
        if n == 1:
            term = _quartic_base(1, ((4, F(1), 1), (1, F(1), -1), (-2, F(1), -1)))
            return hyperterm_sum(term, ctx)
        if n == 2:
            term = _quartic_base(6, ((4, F(1), 1), (1, F(1), -2), (-2, F(1), -2)))
            return hyperterm_sum(term, ctx)
        hterm = _h(1, 2, 1).plus(_h(2, 2, -2)).plus(
            WeightSum(consts=(("zeta", 2, F(-5, 2)),)))
        if n == 3:
            t1 = _quartic_base(12, ((4, F(1), 1), (1, F(1), -1), (-2, F(1), -1)),
                               (hterm,))
            t2 = _quartic_base(54, ((4, F(1), 1), (1, F(1), -3), (-2, F(1), -3)))
            t3 = _quartic_base(-12, ((4, F(1), 1), (1, F(1), -2), (-2, F(1), -2)))
            return sum(hyperterm_sum(t, ctx) for t in (t1, t2, t3))
        if n == 4:
            t1 = _quartic_base(288, ((4, F(1), 1), (1, F(1), -2), (-2, F(1), -2)),
                               (hterm,))
            t2 = _quartic_base(576, ((4, F(1), 1), (1, F(1), -2), (-2, F(1), -4)))
            t3 = _quartic_base(144, ((4, F(1), 1), (1, F(1), -4), (-2, F(1), -2)))
            return sum(hyperterm_sum(t, ctx) for t in (t1, t2, t3))
        raise ValueError(n)


def quartic_inverse_4k1_lhs(ctx: PrecisionContext = DEFAULT_CTX):
    """sum C(2k,k)^4/2^(8k)/(4k+1)."""
    with ctx.workdps():
        return hyperterm_sum(_quartic_base(1, ((4, F(1), -1),)), ctx)


def quartic_second_derivative_lhs(ctx: PrecisionContext = DEFAULT_CTX):
    """sum C^4/2^(8k) (1/(4k+1)) [2/(4k+1)^2 - pi^2/3 - 2H^(2)_{2k} + H^(2)_k]."""
    with ctx.workdps():
        t1 = _quartic_base(2, ((4, F(1), -3),))
        w = _h(2, 2, -2).plus(_h(1, 2, 1)).plus(
            WeightSum(consts=(("zeta", 2, F(-2)),)))
        t2 = _quartic_base(1, ((4, F(1), -1),), (w,))
        return hyperterm_sum(t1, ctx) + hyperterm_sum(t2, ctx)
