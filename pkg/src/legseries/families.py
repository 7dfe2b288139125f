"""Named series families and their closed/integral counterparts.

Every left-hand side in the identity catalog is assembled here as one or
more HyperTerm summands (see tailsum), so a single engine handles the
geometric, algebraic-tail and alternating regimes.  The degree set is

    nu in {-1/2, -1/3, -1/4, -1/6}

with series bases 2^4, 3^3, 2^6, 2^4 3^3: the generic coefficient
(-nu)_k (nu+1)_k / (k!)^2 equals the family's binomial product divided by
base^k, which is how binomial patterns enter the gamma-factor form.

Weight dictionaries:

    w_nu(k)  = psi(k-nu) + psi(k+nu+1) - psi(-nu) - psi(nu+1)
             = {2(2H_{2k}-H_k), 3H_{3k}-H_k, 2(2H_{4k}-H_{2k}),
                6H_{6k}-3H_{3k}-2H_{2k}+H_k}

for the log-type sums; varsigma/tau are the Clausen-coupling weights; the
c/d weights of the Ramanujan-Sun theorem are built from the same pieces.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence, Tuple, Union

from mpmath import mp, mpf, mpc

from .context import PrecisionContext, DEFAULT_CTX
from .core import C2K, C3K, C4K2K, C6K3K, Number, to_mp
from .errors import DivergenceError, DomainError
from .hypergeo import (legendre_p, legendre_p_dx, legendre_p_nu_derivative,
                       pfq, pfq_eps_derivative)
from .modular import (alpha_invariant, eichler_e4, epstein_levelN_difference,
                      epstein_zeta_level1, klein_j, ramanujan_R)
from .quadrature import SING_ENDPOINT, integrate_de, integrate_path
from .tailsum import HyperTerm, WeightSum, hyperterm_sum

NU_HALF = Fraction(-1, 2)
NU_THIRD = Fraction(-1, 3)
NU_QUARTER = Fraction(-1, 4)
NU_SIXTH = Fraction(-1, 6)
NU_SET = (NU_HALF, NU_THIRD, NU_QUARTER, NU_SIXTH)

#: series base: P_nu(1-2t) = sum binom_nu(k) (t/base)^k
BASE = {NU_HALF: 16, NU_THIRD: 27, NU_QUARTER: 64, NU_SIXTH: 432}

#: binomial products carried by each family (pattern, exponent)
BINOMS = {
    NU_HALF: ((C2K, 2),),
    NU_THIRD: ((C2K, 1), (C3K, 1)),
    NU_QUARTER: ((C2K, 1), (C4K2K, 1)),
    NU_SIXTH: ((C3K, 1), (C6K3K, 1)),
}

#: cubic products of the Ramanujan-type families: an extra C(2k,k)
SIGMA_BINOMS = {
    NU_HALF: ((C2K, 3),),
    NU_THIRD: ((C2K, 2), (C3K, 1)),
    NU_QUARTER: ((C2K, 2), (C4K2K, 1)),
    NU_SIXTH: ((C2K, 1), (C3K, 1), (C6K3K, 1)),
}

_PATTERN_GAMMAS = {
    C2K: ((2, Fraction(1), 1), (1, Fraction(1), -2)),
    C3K: ((3, Fraction(1), 1), (2, Fraction(1), -1), (1, Fraction(1), -1)),
    C4K2K: ((4, Fraction(1), 1), (2, Fraction(1), -2)),
    C6K3K: ((6, Fraction(1), 1), (3, Fraction(1), -2)),
}


def pattern_gammas(patterns: Sequence[Tuple[str, int]]):
    """Gamma factors of a product of binomial patterns with multiplicities."""
    out = []
    for pat, e in patterns:
        for m, c, e0 in _PATTERN_GAMMAS[pat]:
            out.append((m, c, e0 * e))
    return tuple(out)


def poch_gammas(nu: Fraction):
    """Gamma factors of (-nu)_k (nu+1)_k / (k!)^2 with its prefactor callable."""
    gammas = ((1, -Fraction(nu), 1), (1, Fraction(nu) + 1, 1), (1, Fraction(1), -2))

    def pref():
        return 1 / (mp.gamma(mpf((-nu).numerator) / (-nu).denominator)
                    * mp.gamma(mpf((nu + 1).numerator) / (nu + 1).denominator))

    return gammas, pref


def _fr(x) -> mpf:
    if isinstance(x, Fraction):
        return mpf(x.numerator) / x.denominator
    return to_mp(x)


# the S^L weight w_nu(k) as a WeightSum in harmonic-number form
_LS_WEIGHTS = {
    NU_HALF: ((2, 1, 4), (1, 1, -2)),
    NU_THIRD: ((3, 1, 3), (1, 1, -1)),
    NU_QUARTER: ((4, 1, 4), (2, 1, -2)),
    NU_SIXTH: ((6, 1, 6), (3, 1, -3), (2, 1, -2), (1, 1, 1)),
}


def ls_weight(nu: Fraction) -> WeightSum:
    """w_nu(k) = psi(k-nu) + psi(k+nu+1) - psi(-nu) - psi(nu+1) as harmonics."""
    w = WeightSum()
    for m, r, coef in _LS_WEIGHTS[nu]:
        w = w.plus(WeightSum.harmonic(m, r, coef))
    return w


def harmonic_weight(m: int, r: int = 1, coef=1, shift: int = 0) -> WeightSum:
    return WeightSum.harmonic(m, r, coef, shift)


# ---------------------------------------------------------------------------
# generic declarative series (the machine form of the binomial harmonic sums)
# ---------------------------------------------------------------------------

@dataclass
class SeriesSpec:
    """Declarative summand: binomial patterns, ratio, rational and harmonic
    weights.  harmonic_factors is a list of WeightSum (multiplied together);
    rational_factors are (m, c, e) meaning (m k + c)^e.
    """

    binomials: Tuple[Tuple[str, int], ...] = ()
    ratio: object = 1
    rational_factors: Tuple[Tuple[int, Fraction, int], ...] = ()
    harmonic_factors: Tuple[WeightSum, ...] = ()
    prefactor: object = 1
    start_index: int = 0

    def hyperterm(self) -> HyperTerm:
        return HyperTerm(
            prefactor=self.prefactor,
            gammas=pattern_gammas(self.binomials),
            rationals=tuple(self.rational_factors),
            geometric=self.ratio,
            weights=tuple(self.harmonic_factors),
        )


def eval_series(spec: SeriesSpec, ctx: PrecisionContext = DEFAULT_CTX) -> Number:
    """Evaluate a SeriesSpec; raises DivergenceError outside the certified region."""
    return hyperterm_sum(spec.hyperterm(), ctx, start=spec.start_index)


# ---------------------------------------------------------------------------
# Legendre-type families
# ---------------------------------------------------------------------------

def family_LS(nu: Fraction, t, tilde: bool = False, approach: Optional[str] = None,
              ctx: PrecisionContext = DEFAULT_CTX):
    """The log-weighted Legendre series S (or its lower-deformation twin).

    Returns (series value, closed right-hand side).  The closed side is
    -P_nu(1-2t) log(1-t) for the plain family and

        pi P_nu(2t-1)/(2 sin(nu pi))
        + (P_nu(1-2t)/2) [-2 gamma0 - psi(-nu) - psi(nu+1) + log((1-t)/t)]

    for the twin, interpreted by directional limits (approach flag, in the
    t-plane) for t < 0.
    """
    if nu not in NU_SET:
        raise DomainError("nu must be in {-1/2, -1/3, -1/4, -1/6}")
    with ctx.workdps():
        tt = to_mp(t, ctx)
        if abs(tt) > 1 or tt == 1:
            raise DomainError("need |t| <= 1, t != 1")
        gammas, pref = poch_gammas(nu)
        if not tilde:
            term = HyperTerm(prefactor=pref, gammas=gammas, geometric=tt,
                             weights=(ls_weight(nu),))
            lhs = hyperterm_sum(term, ctx)
            rhs = -legendre_p(_fr(nu), 1 - 2 * tt, ctx) * mp.log(1 - tt)
            return lhs, rhs
        if isinstance(tt, mpf) and tt < 0 and approach not in ("above", "below"):
            raise DomainError("tilde family on t < 0 requires an approach flag")
        term = HyperTerm(prefactor=pref, gammas=gammas, geometric=tt,
                         weights=(harmonic_weight(1, 1, -1),))
        lhs = hyperterm_sum(term, ctx)
        nu_ = _fr(nu)
        if isinstance(tt, mpf) and tt < 0:
            # t + i eps (above) maps x = 2t-1 to the cut from above
            P1 = legendre_p(nu_, 2 * tt - 1, ctx, approach=approach)
            logt = mp.log(-tt) + (1j if approach == "above" else -1j) * mp.pi
        else:
            P1 = legendre_p(nu_, 2 * tt - 1, ctx)
            logt = mp.log(tt)
        P0 = legendre_p(nu_, 1 - 2 * tt, ctx)
        rhs = mp.pi * P1 / (2 * mp.sin(nu_ * mp.pi)) + P0 / 2 * (
            -2 * mp.euler - mp.psi(0, -nu_) - mp.psi(0, nu_ + 1)
            + mp.log(1 - tt) - logt)
        return lhs, rhs


def family_GS(nu: Fraction, t, ctx: PrecisionContext = DEFAULT_CTX,
              want_integral: bool = True):
    """Digamma-weighted series with its Legendre-product integral twin."""
    if nu not in (NU_THIRD, NU_QUARTER, NU_SIXTH):
        raise DomainError("degree must be -1/3, -1/4 or -1/6")
    with ctx.workdps():
        tt = to_mp(t, ctx)
        nu_ = _fr(nu)
        gammas, pref = poch_gammas(nu)

        def prefactor():
            return pref() * 2 * mp.sin(nu_ * mp.pi) / ((2 * nu_ + 1) * mp.pi)

        cot = lambda: mp.pi / mp.tan(nu_ * mp.pi)
        w = WeightSum(consts=(("fn", cot),),
                      parts=((0, 1, Fraction(nu) + 1, 1), (0, 1, -Fraction(nu), -1)))
        term = HyperTerm(prefactor=prefactor, gammas=gammas, geometric=tt,
                         weights=(w,))
        series = hyperterm_sum(term, ctx)
        if not want_integral:
            return series, None

        def f(xi):
            return (legendre_p(nu_, -xi, ctx) * legendre_p(nu_, 1 - 2 * tt, ctx)
                    - legendre_p(nu_, xi, ctx) * legendre_p(nu_, 2 * tt - 1, ctx)) \
                * legendre_p(nu_, xi, ctx)

        integral = integrate_de(f, (1 - 2 * tt, 1), ctx, SING_ENDPOINT)
        return series, integral


def family_SE(t, ctx: PrecisionContext = DEFAULT_CTX, want_integral: bool = True):
    """The trigamma-weighted square-binomial series and its K-integral twin."""
    with ctx.workdps():
        tt = to_mp(t, ctx)
        gammas, pref = poch_gammas(NU_HALF)
        w = harmonic_weight(2, 2, 1).plus(harmonic_weight(1, 2, Fraction(-1, 4)))
        term = HyperTerm(prefactor=lambda: pref() * 8 / mp.pi, gammas=gammas,
                         geometric=tt, weights=(w,))
        series = hyperterm_sum(term, ctx)
        if not want_integral:
            return series, None

        def K(s):
            return mp.pi / 2 * legendre_p(mpf(-1) / 2, 1 - 2 * s, ctx)

        Kt = K(tt)
        K1t = K(1 - tt)

        def f(s):
            return K(s) * (K(1 - s) * Kt - K(s) * K1t)

        integral = 16 / mp.pi**3 * integrate_de(f, (0, tt), ctx, SING_ENDPOINT)
        return series, integral


def se_sum_rule(t, ctx: PrecisionContext = DEFAULT_CTX):
    """Both sides of the level-4 Epstein sum rule for the SE family."""
    from .modular import epstein_level4
    with ctx.workdps():
        tt = to_mp(t, ctx)
        se_t, _ = family_SE(tt, ctx, want_integral=False)
        se_1t, _ = family_SE(1 - tt, ctx, want_integral=False)
        K = lambda s: mp.pi / 2 * legendre_p(mpf(-1) / 2, 1 - 2 * s, ctx)
        Kt, K1t = K(tt), K(1 - tt)
        lhs = 2 - mp.re(se_t / K1t / mp.im(1j * Kt / K1t)
                        + se_1t / Kt / mp.im(1j * K1t / Kt))
        zE = -Kt / (2 * (1j * K1t - Kt))
        rhs = mpf(32) / 3 * epstein_level4(zE, ctx)
        return lhs, rhs


def gs_sum_rule(nu: Fraction, t, ctx: PrecisionContext = DEFAULT_CTX,
                g2_value=None):
    """Green's-function sum rule for the digamma-weighted family.

    Returns (lhs, rhs) where rhs uses the integral representation of G_2
    (or a supplied value).
    """
    from .modular import green_g2_integral
    with ctx.workdps():
        nu_ = _fr(nu)
        tt = to_mp(t, ctx)
        N = int(mp.nint(4 * mp.sin(nu_ * mp.pi) ** 2))
        sg_t, _ = family_GS(nu, tt, ctx, want_integral=False)
        sg_1t, _ = family_GS(nu, 1 - tt, ctx, want_integral=False)
        P0 = legendre_p(nu_, 1 - 2 * tt, ctx)
        P1 = legendre_p(nu_, 2 * tt - 1, ctx)
        s = mp.sin(nu_ * mp.pi)
        lhs = mp.re(s / mp.im(1j * P0 / P1) * sg_t / P1
                    + s / mp.im(1j * P1 / P0) * sg_1t / P0) \
            - mp.sin(2 * nu_ * mp.pi) / (2 * nu_ + 1)
        fac = (1 - 2 * mp.sin(2 * nu_ * mp.pi) ** 2) / (
            4 * (2 * nu_ + 1) ** 2 * mp.pi * mp.cos(nu_ * mp.pi) ** 2)
        if g2_value is None:
            z = P1 / (2j * s * P0)
            g2_value = green_g2_integral(N, z=z, t=tt, ctx=ctx)
        return lhs, fac * g2_value


# ---------------------------------------------------------------------------
# Ramanujan-Sun series (including the fast CM instances)
# ---------------------------------------------------------------------------

def sigma_weights(nu: Fraction):
    """(c_k, d_k) weight pair of the Ramanujan-Sun theorem."""
    c = {
        NU_HALF: ((2, 1, 6), (1, 1, -6)),
        NU_THIRD: ((3, 1, 3), (2, 1, 2), (1, 1, -5)),
        NU_QUARTER: ((4, 1, 4), (1, 1, -4)),
        NU_SIXTH: ((6, 1, 6), (3, 1, -3), (1, 1, -3)),
    }[nu]
    d = {
        NU_HALF: ((2, 2, -12), (1, 2, 6)),
        NU_THIRD: ((3, 2, -9), (2, 2, -4), (1, 2, 5)),
        NU_QUARTER: ((4, 2, -16), (1, 2, 4)),
        NU_SIXTH: ((6, 2, -36), (3, 2, 9), (1, 2, 3)),
    }[nu]
    cw = WeightSum()
    for m, r, coef in c:
        cw = cw.plus(WeightSum.harmonic(m, r, coef))
    dw = WeightSum()
    for m, r, coef in d:
        dw = dw.plus(WeightSum.harmonic(m, r, coef))
    return cw, dw


def family_Sigma(nu: Fraction, a, b, X, weight: Optional[str] = None,
                 ctx: PrecisionContext = DEFAULT_CTX) -> Number:
    """sum_k binom_nu(k) (a k + b) c_k X^k with c_k in {1, c_{nu,k},
    c^2 + d, or c alone} selected by weight in {None, "c", "c2d", "conly"}.
    """
    if nu not in NU_SET:
        raise DomainError("nu outside the catalog degree set")
    with ctx.workdps():
        gammas = pattern_gammas(SIGMA_BINOMS[nu])
        base_terms = []
        a_f = Fraction(a) if isinstance(a, int) else a
        b_f = Fraction(b) if isinstance(b, int) else b
        cw, dw = sigma_weights(nu)
        if weight is None:
            wlists = [()]
        elif weight == "c":
            wlists = [(cw,)]
        elif weight == "conly":
            wlists = [(cw,)]
        elif weight == "c2d":
            wlists = [(cw, cw), (dw,)]
        else:
            raise ValueError(weight)
        total = mpf(0)
        for wl in wlists:
            if a_f != 0:
                ratio = Fraction(b_f) / Fraction(a_f)
                term = HyperTerm(prefactor=a_f, gammas=gammas,
                                 rationals=((1, ratio, 1),),
                                 geometric=X, weights=wl)
                total += hyperterm_sum(term, ctx)
            else:
                term = HyperTerm(prefactor=b_f, gammas=gammas,
                                 geometric=X, weights=wl)
                total += hyperterm_sum(term, ctx)
        return total


def family_sigma_rational(nu: Fraction, t, kind: str,
                          ctx: PrecisionContext = DEFAULT_CTX):
    """Both sides of the Ramanujan/Sun/Au identities at a generic point
    t in (0, 1/2) (real), with R_nu from the defining derivative route."""
    with ctx.workdps():
        tt = to_mp(t, ctx)
        nu_ = _fr(nu)
        xi = 1 - 2 * tt
        R = ramanujan_R(nu, xi=xi, ctx=ctx)
        X = tt * (1 - tt) / BASE[nu]
        P0 = legendre_p(nu_, 1 - 2 * tt, ctx)
        P1 = legendre_p(nu_, 2 * tt - 1, ctx)
        s = mp.sin(nu_ * mp.pi)
        imr = P1 / P0     # Im of i P1/P0 for real t
        a = 2 * (2 * tt - 1)
        if kind == "ramanujan":
            lhs = _sigma_mp(nu, a, -R, X, None, ctx)
            rhs = 2 * s / (mp.pi * imr)
            return lhs, rhs
        if kind == "sun":
            lhs = _sigma_mp(nu, a, -R, X, "c", ctx) + _sigma_mp(nu, 0, a, X, None, ctx)
            rhs = -2 * s * mp.log(X) / (mp.pi * imr)
            return lhs, rhs
        if kind == "au":
            lhs = _sigma_mp(nu, a, -R, X, "c2d", ctx) \
                + _sigma_mp(nu, 0, 2 * a, X, "c", ctx)
            rhs = -2 * mp.pi * imr / s + 2 * s * mp.log(X) ** 2 / (mp.pi * imr)
            return lhs, rhs
        raise ValueError(kind)


def _sigma_mp(nu, a, b, X, weight, ctx):
    """family_Sigma with mp-valued a, b (affine weight folded as a*k + b)."""
    gammas = pattern_gammas(SIGMA_BINOMS[nu])
    cw, dw = sigma_weights(nu)
    wlists = {None: [()], "c": [(cw,)], "c2d": [(cw, cw), (dw,)]}[weight]
    total = mpf(0)
    for wl in wlists:
        # a*k + b handled as two plain series: a * [k-weighted] + b * [plain]
        if a != 0:
            term_k = HyperTerm(prefactor=a, gammas=gammas,
                               rationals=((1, Fraction(0), 1),),
                               geometric=X, weights=wl)
            total += hyperterm_sum(term_k, ctx, start=1)
        term_b = HyperTerm(prefactor=b, gammas=gammas, geometric=X, weights=wl)
        total += hyperterm_sum(term_b, ctx)
    return total


# ---------------------------------------------------------------------------
# upside-down (reciprocal-binomial) series of Epstein type
# ---------------------------------------------------------------------------

def family_GR(N: int, z, ctx: PrecisionContext = DEFAULT_CTX):
    """Both sides of the Epstein-valued reciprocal-binomial summation.

    LHS: sum_{k>=1} (k!)^2 (1-2a) [2k - R/(1-2a)]
                    / (k^3 C(2k,k) (-nu)_k (nu+1)_k X^k),  X = a(1-a),
    with a = alpha_N(z) and R the Ramanujan correction at 1-2a.

    RHS: -(8 pi^2/3) [E1(Nz,2) - E1(z,2)]/(N^2-1) + i * (elementary + Eichler)
    imaginary part, the Eichler integrals evaluated by vertical quadrature.
    """
    nu = {2: NU_QUARTER, 3: NU_THIRD, 4: NU_HALF}[N]
    with ctx.workdps():
        zz = mpc(to_mp(z, ctx))
        a = alpha_invariant(N, zz, ctx)
        X = a * (1 - a)
        if abs(4 * X) < 1:
            raise DomainError("|4 alpha (1-alpha)| >= 1 required")
        R = ramanujan_R(nu, z=zz, ctx=ctx)
        nu_ = _fr(nu)
        gammas = ((1, Fraction(1), 4), (2, Fraction(1), -1),
                  (1, -Fraction(nu), -1), (1, Fraction(nu) + 1, -1))

        def pref():
            return mp.gamma(_fr(-nu)) * mp.gamma(_fr(nu + 1))

        lhs = mpf(0)
        term2k = HyperTerm(prefactor=lambda: 2 * (1 - 2 * a) * pref(),
                           gammas=gammas, rationals=((1, Fraction(0), -2),),
                           geometric=1 / X)
        lhs += hyperterm_sum(term2k, ctx, start=1)
        termR = HyperTerm(prefactor=lambda: -R * pref(), gammas=gammas,
                          rationals=((1, Fraction(0), -3),), geometric=1 / X)
        lhs += hyperterm_sum(termR, ctx, start=1)

        rhs_re = -8 * mp.pi**2 / 3 * epstein_levelN_difference(N, zz, ctx)
        x, y = mp.re(zz), mp.im(zz)
        half = x / (2 * abs(x)) if x != 0 else mpf(0)
        elementary = 4 * mp.pi**2 / (3 * y) * (x - half) * (
            (x - half) ** 2 + 3 * y**2 + mpf(12 - N) / (4 * N))
        eich = 4 * mp.pi**2 * mp.re(eichler_e4(N * zz, ctx)
                                    - N * eichler_e4(zz, ctx)) / (N * (N**2 - 1) * y)
        return lhs, rhs_re + 1j * (elementary + eich)


def gr_4f3(nu, t, ctx: PrecisionContext = DEFAULT_CTX):
    """Reciprocal-binomial series against its 4F3 form, |4t(t-1)| >= 1."""
    with ctx.workdps():
        nu_ = to_mp(nu, ctx)
        tt = to_mp(t, ctx)
        X = tt * (1 - tt)
        gammas = ((1, Fraction(1), 4), (2, Fraction(1), -1),
                  (1, -nu_, -1), (1, nu_ + 1, -1))
        term = HyperTerm(prefactor=lambda: mp.gamma(-nu_) * mp.gamma(nu_ + 1),
                         gammas=gammas, rationals=((1, Fraction(0), -3),),
                         geometric=1 / X)
        lhs = hyperterm_sum(term, ctx, start=1)
        rhs = pfq([1, 1, 1, 1], [Fraction(3, 2), 1 - nu_, nu_ + 2],
                  1 / (4 * tt * (1 - tt)), ctx) / (-2 * tt * (1 - tt) * nu_ * (nu_ + 1))
        return lhs, rhs


# ---------------------------------------------------------------------------
# Clausen couplings
# ---------------------------------------------------------------------------

def clausen_sigma_weight() -> WeightSum:
    return WeightSum()


def clausen_varsigma_weight(nu) -> WeightSum:
    """varsigma_k = psi(k-nu) + psi(k+nu+1) - 3 psi(k+1) + psi(k+1/2)."""
    nu_f = Fraction(nu) if isinstance(nu, (int, Fraction)) else None
    if nu_f is not None:
        parts = ((0, 1, -nu_f, 1), (0, 1, nu_f + 1, 1),
                 (0, 1, Fraction(1), -3), (0, 1, Fraction(1, 2), 1))
    else:
        parts = ((0, 1, -nu, 1), (0, 1, nu + 1, 1),
                 (0, 1, Fraction(1), -3), (0, 1, Fraction(1, 2), 1))
    return WeightSum(parts=parts)


def clausen_tau_extra(nu) -> WeightSum:
    """tau_k - varsigma_k^2 = psi'(k-nu) + psi'(k+nu+1) - 3 psi'(k+1) + psi'(k+1/2)."""
    nu_f = Fraction(nu) if isinstance(nu, (int, Fraction)) else nu
    parts = ((1, 1, -nu_f, 1), (1, 1, nu_f + 1, 1),
             (1, 1, Fraction(1), -3), (1, 1, Fraction(1, 2), 1))
    return WeightSum(parts=parts)


def clausen_couplings(nu, t, ctx: PrecisionContext = DEFAULT_CTX):
    """(sigma, varsigma, tau) series values at argument 4t(1-t), paired with
    their Legendre closed forms.  Returns dict name -> (series, closed)."""
    with ctx.workdps():
        nu_ = to_mp(nu, ctx)
        tt = to_mp(t, ctx)
        u = tt * (1 - tt)
        gammas = ((2, Fraction(1), 1), (1, Fraction(1), -4),
                  (1, -nu_, 1), (1, nu_ + 1, 1))

        def pref():
            return 1 / (mp.gamma(-nu_) * mp.gamma(nu_ + 1))

        def term(weights):
            return HyperTerm(prefactor=pref, gammas=gammas, geometric=u,
                             weights=weights)

        P0 = legendre_p(nu_, 1 - 2 * tt, ctx)
        P1 = legendre_p(nu_, 2 * tt - 1, ctx)
        s = mp.sin(nu_ * mp.pi)
        logf = mp.log(1 / (4 * tt * (1 - tt)))
        sigma_series = hyperterm_sum(term(()), ctx)
        sigma_closed = P0**2
        vs = clausen_varsigma_weight(nu if isinstance(nu, Fraction) else nu_)
        varsigma_series = hyperterm_sum(term((vs,)), ctx)
        varsigma_closed = P0 * (mp.pi * P1 / s + P0 * logf)
        tau_series = hyperterm_sum(term((vs, vs)), ctx) \
            + hyperterm_sum(term((clausen_tau_extra(
                nu if isinstance(nu, Fraction) else nu_),)), ctx)
        tau_closed = (mp.pi * P0 / s) ** 2 + (mp.pi * P1 / s + P0 * logf) ** 2
        return {
            "sigma": (sigma_series, sigma_closed),
            "varsigma": (varsigma_series, varsigma_closed),
            "tau": (tau_series, tau_closed),
        }


# ---------------------------------------------------------------------------
# Clebsch-Gordan integrals T, T~, U
# ---------------------------------------------------------------------------

def cg_T_integral(mu, nu, ctx: PrecisionContext = DEFAULT_CTX) -> Number:
    with ctx.workdps():
        mu_, nu_ = to_mp(mu, ctx), to_mp(nu, ctx)

        def f(x):
            return legendre_p(mu_, x, ctx) * legendre_p(nu_, x, ctx) \
                * legendre_p(nu_, -x, ctx)

        return integrate_de(f, (-1, 1), ctx, SING_ENDPOINT)


def cg_U_integral(mu, nu, ctx: PrecisionContext = DEFAULT_CTX) -> Number:
    with ctx.workdps():
        mu_, nu_ = to_mp(mu, ctx), to_mp(nu, ctx)

        def f(x):
            return (legendre_p(mu_, x, ctx) + legendre_p(mu_, -x, ctx)) / 2 \
                * legendre_p(nu_, x, ctx) ** 2

        return integrate_de(f, (-1, 1), ctx, SING_ENDPOINT)


def cg_Ttilde_integral(nu, ctx: PrecisionContext = DEFAULT_CTX) -> Number:
    """T~ = int over (-1,1) of P^2(x) P(-x) (1-x^2)^((nu-1)/2) dx; the
    endpoint exponent can approach -1, so distances are passed stably."""
    with ctx.workdps():
        nu_ = to_mp(nu, ctx)
        expo = (nu_ - 1) / 2

        def f(dm, dp):
            x = 1 - dp if dp < 1 else dm - 1
            P_x = _p_from_distances(nu_, dm, dp, ctx)
            P_mx = _p_from_distances(nu_, dp, dm, ctx)
            return P_x**2 * P_mx * (dm * dp) ** expo

        return integrate_de(f, (-1, 1), ctx, SING_ENDPOINT, endpoint_form=True)


def _p_from_distances(nu_, dm, dp, ctx):
    """P_nu(x) from stable distances dm = x+1, dp = 1-x."""
    t = dp / 2
    if abs(t) <= mpf("0.95"):
        from .hypergeo import _legendre_series
        return _legendre_series(nu_, t, ctx)
    from .hypergeo import _legendre_log_series
    u = dm / 2
    return _legendre_log_series(nu_, u, mp.log(u), ctx)


def cg_T_closed(nu, ctx: PrecisionContext = DEFAULT_CTX) -> Number:
    """Diagonal closed form T_{nu,nu}."""
    with ctx.workdps():
        nu_ = to_mp(nu, ctx)
        return (1 + 2 * mp.cos(nu_ * mp.pi)) / 3 * mp.pi \
            * mp.gamma((nu_ + 1) / 2) * mp.gamma((3 * nu_ + 2) / 2) \
            / (mp.gamma((1 - nu_) / 2) ** 2 * mp.gamma((nu_ + 2) / 2) ** 3
               * mp.gamma((3 * nu_ + 3) / 2))


def cg_T_2nu_closed(nu, ctx: PrecisionContext = DEFAULT_CTX) -> Number:
    """Closed form T_{2 nu - 1, nu} = sin(nu pi) sin(2 nu pi)/(nu^2 pi^2)."""
    with ctx.workdps():
        nu_ = to_mp(nu, ctx)
        return mp.sin(nu_ * mp.pi) * mp.sin(2 * nu_ * mp.pi) / (nu_**2 * mp.pi**2)


def cg_Ttilde_closed(nu, ctx: PrecisionContext = DEFAULT_CTX) -> Number:
    with ctx.workdps():
        nu_ = to_mp(nu, ctx)
        return (mp.cos(nu_ * mp.pi / 2) / 2**nu_) ** 3 / mp.pi \
            * (mp.gamma((1 + nu_) / 2) / mp.gamma((2 + nu_) / 2)) ** 4


def cg_eps_prefactor_logs(mu_, nu_):
    """(c'/c, c''/c) of the Gamma prefactor in the T/U deformation theorem."""
    up = [mpf(1) / 2, -nu_, nu_ + 1]
    lo = [mpf(1), (2 - mu_) / 2, (mu_ + 3) / 2]
    L1 = sum(mp.psi(0, a) for a in up) - sum(mp.psi(0, b) for b in lo)
    L2 = sum(mp.psi(1, a) for a in up) - sum(mp.psi(1, b) for b in lo)
    return L1, L1**2 + L2


def cg_T_eps(mu, nu, ctx: PrecisionContext = DEFAULT_CTX) -> Number:
    """T_{mu,nu} through the order-1 deformation of the 4F3(1) family."""
    with ctx.workdps():
        mu_, nu_ = to_mp(mu, ctx), to_mp(nu, ctx)
        up = [(1, 0), (mpf(1) / 2, 1), (-nu_, 1), (nu_ + 1, 1)]
        lo = [(1, 1), ((2 - mu_) / 2, 1), ((mu_ + 3) / 2, 1)]
        F0 = pfq([a for a, _ in up], [b for b, _ in lo], 1, ctx)
        F1 = pfq_eps_derivative(up, lo, 1, 1, ctx)
        L1, _ = cg_eps_prefactor_logs(mu_, nu_)
        d1 = L1 * F0 + F1
        return 2 * mp.sin(mu_ * mp.pi) * mp.sin(nu_ * mp.pi) \
            / (mu_ * (mu_ + 1) * mp.pi**2) * d1


def cg_U_eps(mu, nu, ctx: PrecisionContext = DEFAULT_CTX) -> Number:
    """U_{mu,nu} through the order-2 deformation of the same family."""
    with ctx.workdps():
        mu_, nu_ = to_mp(mu, ctx), to_mp(nu, ctx)
        up = [(1, 0), (mpf(1) / 2, 1), (-nu_, 1), (nu_ + 1, 1)]
        lo = [(1, 1), ((2 - mu_) / 2, 1), ((mu_ + 3) / 2, 1)]
        F0 = pfq([a for a, _ in up], [b for b, _ in lo], 1, ctx)
        F1 = pfq_eps_derivative(up, lo, 1, 1, ctx)
        F2 = pfq_eps_derivative(up, lo, 1, 2, ctx)
        L1, L2sq = cg_eps_prefactor_logs(mu_, nu_)
        d2 = L2sq * F0 + 2 * L1 * F1 + F2
        return mp.sin(mu_ * mp.pi) * mp.sin(nu_ * mp.pi) ** 2 \
            / (mu_ * (mu_ + 1) * mp.pi**3) * d2


def cg_T_bailey(mu, nu, variant: str, ctx: PrecisionContext = DEFAULT_CTX) -> Number:
    """Well-poised pFq(1) forms of T_{mu,nu} (variants a..e)."""
    with ctx.workdps():
        mu_, nu_ = to_mp(mu, ctx), to_mp(nu, ctx)
        pi_ = mp.pi
        smu, snu = mp.sin(mu_ * pi_), mp.sin(nu_ * pi_)
        if variant == "a":
            pref = 2 * smu * mp.cos(nu_ * pi_) / (mu_ * (mu_ + 1) * (2 * nu_ + 1) * pi_)
            return pref * pfq([mpf(1) / 2, mpf(5) / 4, mpf(1) / 2, -mu_ / 2,
                               (mu_ + 1) / 2, -nu_, nu_ + 1],
                              [mpf(1) / 4, 1, (mu_ + 3) / 2, (2 - mu_) / 2,
                               (2 * nu_ + 3) / 2, (1 - 2 * nu_) / 2], 1, ctx)
        if variant == "b":
            pref = 2 * smu * snu / (mu_ * (mu_ + 1) * nu_ * (nu_ + 1) * pi_**2)
            return pref * pfq([1, mpf(3) / 2, (1 - mu_) / 2, (mu_ + 2) / 2, -nu_, nu_ + 1],
                              [mpf(1) / 2, (mu_ + 3) / 2, (2 - mu_) / 2, nu_ + 2, 1 - nu_],
                              1, ctx)
        if variant == "c":
            pref = 2 * (1 - 2 * nu_) * smu * snu / (mu_ * (mu_ + 1) * nu_ * pi_**2)
            return pref * pfq([1, (5 - 2 * nu_) / 4, mpf(1) / 2, (mu_ - 2 * nu_ + 1) / 2,
                               -(mu_ + 2 * nu_) / 2, -nu_],
                              [(1 - 2 * nu_) / 4, 1 - nu_, (2 - mu_) / 2,
                               (mu_ + 3) / 2, mpf(3) / 2], 1, ctx)
        if variant == "d":
            pref = -2 * (2 * nu_ + 3) * smu * snu / (mu_ * (mu_ + 1) * (nu_ + 1) * pi_**2)
            return pref * pfq([1, (2 * nu_ + 7) / 4, mpf(1) / 2, (mu_ + 2 * nu_ + 3) / 2,
                               (2 - mu_ + 2 * nu_) / 2, nu_ + 1],
                              [(2 * nu_ + 3) / 4, nu_ + 2, (2 - mu_) / 2,
                               (mu_ + 3) / 2, mpf(3) / 2], 1, ctx)
        if variant == "e":
            t1 = pfq([1, 1, (1 - mu_) / 2, (mu_ + 2) / 2],
                     [mpf(3) / 2, 1 - nu_, nu_ + 2], 1, ctx) / (nu_ * (nu_ + 1) * pi_**2)
            g1 = mp.gamma((mu_ + 1) / 2) * mp.gamma(-mu_ / 2)
            t2 = mp.tan(nu_ * pi_) / (2 * nu_ + 1) \
                / (mp.gamma((1 - mu_) / 2) * mp.gamma((mu_ + 2) / 2)) \
                * pfq([mpf(1) / 2, (1 + mu_) / 2, -mu_ / 2],
                      [(1 - 2 * nu_) / 2, (2 * nu_ + 3) / 2], 1, ctx)
            t3 = -snu / (2 ** (2 * nu_ + 1) * pi_**2) \
                * (mp.gamma(-nu_) * mp.gamma(2 * nu_ + 1)) ** 2 \
                / (mp.gamma((2 - mu_ + 2 * nu_) / 2) * mp.gamma((mu_ + 2 * nu_ + 3) / 2)) \
                * pfq([-(mu_ + 2 * nu_ + 1) / 2, (mu_ - 2 * nu_) / 2, -nu_],
                      [(1 - 2 * nu_) / 2, -2 * nu_], 1, ctx)
            t4 = -(2 ** (2 * nu_ + 1)) * snu / pi_**2 \
                * (mp.gamma(nu_ + 1) * mp.gamma(-2 * nu_ - 1)) ** 2 \
                / (mp.gamma((mu_ - 2 * nu_ + 1) / 2) * mp.gamma(-(mu_ + 2 * nu_) / 2)) \
                * pfq([(1 - mu_ + 2 * nu_) / 2, (2 + mu_ + 2 * nu_) / 2, nu_ + 1],
                      [(2 * nu_ + 3) / 2, 2 * nu_ + 2], 1, ctx)
            return smu * snu * (t1 + g1 / pi_ * (t2 + t3 + t4))
        raise ValueError(variant)
