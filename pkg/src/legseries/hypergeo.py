"""Generalized hypergeometric series, their deformation derivatives, and
the Legendre function family built on them.

The deformation ("epsilon") derivatives are always computed termwise and
analytically: differentiating a rising factorial brings down digamma
weights, and second derivatives add trigamma corrections.  No finite
differences are used anywhere.

Legendre conventions: P_nu(1-2t) is the Gauss series 2F1(-nu, nu+1; 1; t);
the principal branch has a cut on (-inf, -1] in x.  Directional limits onto
the cut are available through the approach flag; mpmath evaluates the limit
from below on the cut, so "above" conjugates (parameters are real).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Tuple, Union

from mpmath import mp, mpf, mpc

from .context import PrecisionContext, DEFAULT_CTX
from .core import Number, to_mp, is_nonpositive_int
from .errors import (
    BranchCutError,
    DivergenceError,
    DomainError,
    NonConvergenceError,
    ParameterPoleError,
)
from .tailsum import HyperTerm, WeightSum, hyperterm_sum


@dataclass
class PFQSpec:
    """Parameters of a pFq series: upper a_1..a_p, lower b_1..b_q, argument t."""

    upper: Sequence
    lower: Sequence
    argument: object

    def validate(self, ctx: PrecisionContext):
        for b in self.lower:
            if is_nonpositive_int(b):
                raise ParameterPoleError(f"lower parameter {b} is a nonpositive integer")


def _param_sum(params, ctx):
    s = mpf(0)
    for p in params:
        s += to_mp(p, ctx)
    return s


def _convergence_gap(upper, lower, ctx):
    """Re(sum lower) + 1 - Re(sum upper); positive means the unit-circle
    series converges (terms decay like k^(-1-gap) including the k! factor)."""
    with ctx.workdps():
        return mp.re(_param_sum(lower, ctx)) + 1 - mp.re(_param_sum(upper, ctx))


def pfq(spec_or_upper, lower=None, argument=None,
        ctx: PrecisionContext = DEFAULT_CTX) -> Number:
    """Evaluate pFq(a_1..a_p; b_1..b_q; t) on the closed unit disk."""
    if isinstance(spec_or_upper, PFQSpec):
        spec = spec_or_upper
    else:
        spec = PFQSpec(spec_or_upper, lower, argument)
    spec.validate(ctx)
    with ctx.workdps():
        t = to_mp(spec.argument, ctx)
        att = abs(t)
        if att > 1 + ctx.eps:
            raise DivergenceError(f"pFq series diverges for |t| = {float(att)} > 1")
        if abs(att - 1) <= ctx.eps:
            gap = _convergence_gap(spec.upper, spec.lower, ctx)
            if gap <= 0:
                raise DivergenceError(
                    "pFq at |t| = 1 requires Re sum(lower) + 1 > Re sum(upper)")
            tt = spec.argument if isinstance(spec.argument, (int, Fraction)) else t
            return hyperterm_sum(_pfq_hyperterm(spec, tt), ctx)
        return _pfq_direct(spec, t, ctx)


def _pfq_hyperterm(spec: PFQSpec, t) -> HyperTerm:
    gammas = [(1, a, 1) for a in spec.upper]
    gammas += [(1, b, -1) for b in spec.lower]
    gammas += [(1, Fraction(1), -1)]   # the k! factor

    def pref():
        v = mpf(1)
        for _, c, e in gammas[:-1]:
            v *= mp.gamma(to_mp_cur(c)) ** (-e)
        return v

    return HyperTerm(prefactor=pref, gammas=tuple(gammas), geometric=t)


def to_mp_cur(x):
    """Convert to mp at the currently active precision."""
    if isinstance(x, Fraction):
        return mpf(x.numerator) / x.denominator
    if isinstance(x, (mpf, mpc)):
        return +x
    return mpf(x)


def _pfq_direct(spec: PFQSpec, t, ctx: PrecisionContext,
                max_terms: int = 2_000_000) -> Number:
    with ctx.workdps():
        ups = [to_mp(a, ctx) for a in spec.upper]
        los = [to_mp(b, ctx) for b in spec.lower]
        eps = ctx.eps
        term = mpf(1)
        total = mpf(1)
        need_run = max(3, ctx.working_digits.bit_length())
        small_run = 0
        for k in range(max_terms):
            r = t / (k + 1)
            for a in ups:
                r *= a + k
            for b in los:
                r /= b + k
            term = term * r
            total += term
            if abs(term) < eps * max(1, abs(total)):
                small_run += 1
                if small_run >= need_run:
                    rr = abs(t)
                    for a in ups:
                        rr *= abs(a + k + 1)
                    for b in los:
                        rr /= abs(b + k + 1)
                    rr /= k + 2
                    if rr < 1:
                        if abs(term) * rr / (1 - rr) < eps * max(1, abs(total)):
                            return total
            else:
                small_run = 0
        raise NonConvergenceError("pFq direct summation exceeded term budget")


EpsSlot = Tuple[object, int]   # (parameter value, epsilon multiplicity)


def pfq_eps_derivative(upper: Sequence[EpsSlot], lower: Sequence[EpsSlot],
                       argument, order: int,
                       ctx: PrecisionContext = DEFAULT_CTX) -> Number:
    """d^order/d(eps)^order at eps = 0 of pFq with eps-shifted parameters.

    Each slot is (value, multiplicity): the parameter enters as value + m*eps.
    Order 1 weights each term by
        w_k = sum m_a [psi(a+k) - psi(a)] - sum m_b [psi(b+k) - psi(b)],
    order 2 by w_k^2 + v_k with the trigamma analogue v_k.
    """
    if order not in (1, 2):
        raise ValueError("order must be 1 or 2")
    ups = [(a, m) for a, m in upper]
    los = [(b, m) for b, m in lower]
    spec = PFQSpec([a for a, _ in ups], [b for b, _ in los], argument)
    spec.validate(ctx)
    with ctx.workdps():
        t = to_mp(argument, ctx)
        if abs(t) > 1 + ctx.eps:
            raise DivergenceError("eps-derivative series diverges for |t| > 1")
        tt = argument if isinstance(argument, (int, Fraction)) else t

        def wconst():
            s = mpf(0)
            for b, m in los:
                s += m * mp.psi(0, to_mp_cur(b))
            for a, m in ups:
                s -= m * mp.psi(0, to_mp_cur(a))
            return s

        def vconst():
            s = mpf(0)
            for b, m in los:
                s += m * m * mp.psi(1, to_mp_cur(b))
            for a, m in ups:
                s -= m * m * mp.psi(1, to_mp_cur(a))
            return s

        wparts = tuple([(0, 1, a, m) for a, m in ups if m] +
                       [(0, 1, b, -m) for b, m in los if m])
        vparts = tuple([(1, 1, a, m * m) for a, m in ups if m] +
                       [(1, 1, b, -m * m) for b, m in los if m])
        w = WeightSum(consts=(("fn", wconst),), parts=wparts)
        base = _pfq_hyperterm(spec, tt)
        if order == 1:
            term = HyperTerm(base.prefactor, base.gammas, base.rationals,
                             base.geometric, (w,))
            return hyperterm_sum(term, ctx)
        v = WeightSum(consts=(("fn", vconst),), parts=vparts)
        t_sq = HyperTerm(base.prefactor, base.gammas, base.rationals,
                         base.geometric, (w, w))
        t_v = HyperTerm(base.prefactor, base.gammas, base.rationals,
                        base.geometric, (v,))
        return hyperterm_sum(t_sq, ctx) + hyperterm_sum(t_v, ctx)


# ---------------------------------------------------------------------------
# Legendre functions
# ---------------------------------------------------------------------------

@dataclass
class LegendreArg:
    nu: object
    x: object


def legendre_p(nu, x, ctx: PrecisionContext = DEFAULT_CTX,
               approach: Optional[str] = None) -> Number:
    """P_nu(x) = 2F1(-nu, nu+1; 1; (1-x)/2) on the principal branch.

    Evaluation routes on t = (1-x)/2:

    * |t| <= 0.95: the Gauss series directly;
    * t near 1 (x near -1): the exact logarithmic connection series in
      powers of 1-t, which stays cheap arbitrarily close to the endpoint;
    * real x <= -1 (t >= 1): directional limit, selected by
      approach "above"/"below" (the limit of P_nu(x +/- i0)); here the
      connection series is used with log(1-t) = log|1-t| +/- i pi.
    """
    with ctx.workdps():
        nu = to_mp(nu, ctx)
        xx = to_mp(x, ctx)
        t = (1 - xx) / 2
        if isinstance(xx, mpf) and xx <= -1:
            if approach not in ("above", "below"):
                raise BranchCutError(
                    "P_nu on (-inf,-1] requires approach='above' or 'below'")
            u = 1 - t
            if abs(u) >= 1:
                raise DomainError("cut evaluation limited to -3 < x <= -1")
            # x + i eps corresponds to u = 1-t approached from above
            logu = mp.log(abs(u)) + (1j if approach == "above" else -1j) * mp.pi
            return _legendre_log_series(nu, u, logu, ctx)
        if abs(t) <= mpf("0.95"):
            return _legendre_series(nu, t, ctx)
        u = 1 - t
        if abs(u) < mpf("0.95"):
            return _legendre_log_series(nu, u, mp.log(u), ctx)
        raise DomainError("P_nu argument outside supported series domains")


def _legendre_log_series(nu, u, logu, ctx):
    """2F1(-nu, nu+1; 1; 1-u) for small |u| via the logarithmic expansion

    -(sin(nu pi)/pi) sum_n c_n u^n [2 psi(n+1) - psi(n-nu) - psi(n+nu+1) - log u],
    c_n = (-nu)_n (nu+1)_n / (n!)^2, exact for |u| < 1.
    """
    eps = ctx.eps
    c = mpf(1)
    up = mpf(1)
    A = 2 * mp.psi(0, 1) - mp.psi(0, -nu) - mp.psi(0, nu + 1)
    total = mpf(0)
    need_run = max(3, ctx.working_digits.bit_length())
    small = 0
    k = 0
    while True:
        contrib = c * up * (A - logu)
        total += contrib
        if k > 4 and abs(contrib) <= eps * max(1, abs(total)):
            small += 1
            if small >= need_run:
                break
        else:
            small = 0
        A += mpf(2) / (k + 1) - 1 / (k - nu) - 1 / (k + nu + 1)
        c = c * (k - nu) * (k + nu + 1) / mpf(k + 1) ** 2
        up = up * u
        k += 1
        if k > 4_000_000:
            raise NonConvergenceError(
                f"logarithmic Legendre series exceeded budget "
                f"(u={mp.nstr(u, 10)}, |u|={mp.nstr(abs(u), 10)}, "
                f"contrib={mp.nstr(contrib, 5)}, total={mp.nstr(total, 5)})")
    return -mp.sin(nu * mp.pi) / mp.pi * total


def _legendre_series(nu, t, ctx, dorder: int = 0):
    """Taylor sum of 2F1(-nu, nu+1; 1; t), optionally d^dorder/dt^dorder."""
    eps = ctx.eps
    c = mpf(1)
    total = mpf(0)
    k = 0
    tp = mpf(1) if dorder == 0 else None
    need_run = max(3, ctx.working_digits.bit_length())
    small = 0
    while True:
        if dorder == 0:
            contrib = c * tp
            tp = tp * t
        else:
            fac = mpf(1)
            for j in range(dorder):
                fac *= k - j
            contrib = c * fac * t ** (k - dorder) if k >= dorder else mpf(0)
        total += contrib
        if k > 4 and abs(contrib) <= eps * max(1, abs(total)):
            small += 1
            if small >= need_run:
                return total
        else:
            small = 0
        c = c * (k - nu) * (k + nu + 1) / mpf(k + 1) ** 2
        k += 1
        if k > 4_000_000:
            raise NonConvergenceError("Legendre series exceeded term budget")


def legendre_p_dx(nu, x, ctx: PrecisionContext = DEFAULT_CTX) -> Number:
    """dP_nu/dx by termwise differentiation of the Gauss series."""
    with ctx.workdps():
        nu = to_mp(nu, ctx)
        t = (1 - to_mp(x, ctx)) / 2
        if abs(t) >= 1:
            raise DomainError("P_nu series domain exceeded")
        return _legendre_series(nu, t, ctx, dorder=1) * mpf(-1) / 2


def legendre_q1(x, ctx: PrecisionContext = DEFAULT_CTX) -> Number:
    """Q_1(x) = -1 + (x/2) log((x+1)/(x-1)) for x > 1."""
    with ctx.workdps():
        xx = to_mp(x, ctx)
        if not isinstance(xx, mpf) or xx <= 1:
            raise DomainError("Q_1 requires real x > 1")
        return -1 + xx / 2 * mp.log((xx + 1) / (xx - 1))


def legendre_p_assoc(nu, mu, x, ctx: PrecisionContext = DEFAULT_CTX) -> Number:
    """Associated P_nu^mu(x) on (-1, 1) via Euler's transformation:

    Gamma(1-mu) P_nu^mu(x) = ((1+x)/(1-x))^(mu/2) 2F1(-nu, nu+1; 1-mu; (1-x)/2).
    """
    with ctx.workdps():
        nu = to_mp(nu, ctx)
        mu_ = to_mp(mu, ctx)
        xx = to_mp(x, ctx)
        if is_nonpositive_int(1 - mu_):
            raise ParameterPoleError("1 - mu is a nonpositive integer")
        t = (1 - xx) / 2
        f = pfq([-nu, nu + 1], [1 - mu_], t, ctx)
        return ((1 + xx) / (1 - xx)) ** (mu_ / 2) * f / mp.gamma(1 - mu_)


def legendre_p_nu_derivative(nu, x, order: int = 1,
                             ctx: PrecisionContext = DEFAULT_CTX) -> Number:
    """d^order P_nu(x)/d nu^order by termwise degree differentiation.

    Uses d/dnu log[(-nu)_k (nu+1)_k] = psi(k+nu+1) - psi(nu+1)
    - psi(k-nu) + psi(-nu) and its trigamma derivative for order 2.
    """
    if order not in (1, 2):
        raise ValueError("order must be 1 or 2")
    with ctx.workdps():
        nu = to_mp(nu, ctx)
        t = (1 - to_mp(x, ctx)) / 2
        if abs(t) >= 1:
            raise DomainError("P_nu series domain exceeded")
        eps = ctx.eps
        c = mpf(1)
        tp = mpf(1)
        total = mpf(0)
        psi_a = mp.psi(0, nu + 1)
        psi_b = mp.psi(0, -nu)
        w = mpf(0)       # psi(k+nu+1) - psi(nu+1) - psi(k-nu) + psi(-nu)
        v = mpf(0)       # its d/dnu
        need_run = max(3, ctx.working_digits.bit_length())
        small = 0
        k = 0
        while True:
            contrib = c * tp * (w if order == 1 else w * w + v)
            total += contrib
            if k > 6 and abs(contrib) <= eps * max(1, abs(total)):
                small += 1
                if small >= need_run:
                    return total
            else:
                small = 0
            w += 1 / (k + nu + 1) - 1 / (k - nu)
            v += -1 / (k + nu + 1) ** 2 - 1 / (k - nu) ** 2
            c = c * (k - nu) * (k + nu + 1) / mpf(k + 1) ** 2
            tp = tp * t
            k += 1
            if k > 4_000_000:
                raise NonConvergenceError("degree-derivative series exceeded budget")
