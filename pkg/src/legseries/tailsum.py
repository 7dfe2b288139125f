"""Summation engine for hypergeometric-type series with harmonic weights.

A series term is modeled as

    term(k) = prefactor * T^k * prod Gamma(m k + c)^e
                          * prod (m k + c)^e
                          * prod [ const + sum coef * psi^(r)(m k + c) ]

which covers every series family in the catalog: binomial patterns are
Gamma quotients, power/affine/double-factorial weights are the rational
factors, and harmonic-number weights are polygamma sums.

Three regimes:

* |T| < 1: direct summation with an exact rational term-ratio recurrence and
  incremental polygamma updates (one reciprocal addition per unit shift).
* T = 1 (algebraic decay, possibly with log^q k weight growth): head sum
  plus a closed-form tail.  The term is expanded asymptotically in powers of
  1/k and log k with exact Stirling/Bernoulli coefficients, and the tail
  becomes a finite combination of Hurwitz zeta values and their s-derivatives:
  sum_{k>=K} k^(-s) log^q k = (-1)^q d^q/ds^q zeta(s, K).
* T = -1: alternating; summed by Levin extrapolation of the partial sums.

The tail expansion's truncation error is estimated from the last retained
orders and checked against the working resolution; the caller-facing entry
point retries once with a deeper expansion before giving up.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple, Union

from mpmath import mp, mpf, mpc, workdps

from .context import PrecisionContext, DEFAULT_CTX
from .errors import DivergenceError, NonConvergenceError

Scalar = Union[int, Fraction, mpf, mpc]

# WeightSum constant atoms: exact numbers, gamma0/zeta multiples, or a
# context-dependent callable (for surd/pi constants that must track precision).
ConstAtom = Union[int, Fraction, tuple]


@dataclass(frozen=True)
class WeightSum:
    """const + sum of coef * psi^(r)(m k + c), one multiplicative weight factor."""

    consts: Tuple[ConstAtom, ...] = ()
    parts: Tuple[Tuple[int, int, Fraction, Scalar], ...] = ()
    # each part: (r, m, c, coef) meaning coef * psi^(r)(m k + c)

    @staticmethod
    def harmonic(m: int, r: int = 1, coef=1, shift: int = 0) -> "WeightSum":
        """coef * H^(r)_{m k + shift} (shift in {-1, 0} for the catalog).

        Uses H_n = psi(n+1) + gamma0 and, for r >= 2,
        H^(r)_n = zeta(r) - (-1)^r psi^(r-1)(n+1)/(r-1)!.
        """
        coef = Fraction(coef) if isinstance(coef, int) else coef
        c = Fraction(m * 0 + shift + 1)
        if r == 1:
            return WeightSum(consts=(("euler", coef),), parts=((0, m, c, coef),))
        fact = 1
        for j in range(1, r):
            fact *= j
        return WeightSum(
            consts=(("zeta", r, coef),),
            parts=((r - 1, m, c, -coef * (-1) ** r / Fraction(fact)),),
        )

    @staticmethod
    def number(value) -> "WeightSum":
        return WeightSum(consts=(value,), parts=())

    def plus(self, other: "WeightSum") -> "WeightSum":
        return WeightSum(self.consts + other.consts, self.parts + other.parts)


def weight_linear(*pieces) -> WeightSum:
    """Sum several (coef, WeightSum)-style pieces or plain WeightSums."""
    out = WeightSum()
    for p in pieces:
        out = out.plus(p)
    return out


@dataclass(frozen=True)
class HyperTerm:
    """Structured description of one series summand; see module docstring."""

    prefactor: Scalar = 1
    gammas: Tuple[Tuple[int, Fraction, int], ...] = ()      # (m, c, e)
    rationals: Tuple[Tuple[int, Fraction, int], ...] = ()   # (m, c, e)
    geometric: Scalar = 1                                   # T in T^k
    weights: Tuple[WeightSum, ...] = ()


def _tomp(x):
    if isinstance(x, Fraction):
        return mpf(x.numerator) / x.denominator
    if isinstance(x, (mpf, mpc)):
        return +x
    if isinstance(x, complex):
        return mpc(x)
    if callable(x):
        return x()
    return mpf(x)


def _const_value(consts) -> Scalar:
    total = mpf(0)
    for atom in consts:
        if isinstance(atom, tuple):
            kind = atom[0]
            if kind == "euler":
                total += mp.euler * _tomp(atom[1])
            elif kind == "zeta":
                total += mp.zeta(atom[1]) * _tomp(atom[2])
            elif kind == "fn":
                total += atom[1]()
            else:
                raise ValueError(f"unknown const atom {atom!r}")
        else:
            total = total + _tomp(atom)
    return total


def term_value(term: HyperTerm, k: int) -> Scalar:
    """Direct evaluation of term(k) at current mp precision."""
    lg = mpf(0)
    for m, c, e in term.gammas:
        lg += e * mp.loggamma(m * k + _tomp(c))
    v = mp.exp(lg) * _tomp(term.prefactor)
    T = _tomp(term.geometric)
    if T != 1:
        v *= T**k
    for m, c, e in term.rationals:
        v *= (m * k + _tomp(c)) ** e
    for w in term.weights:
        s = _const_value(w.consts)
        for r, m, c, coef in w.parts:
            s += _tomp(coef) * mp.psi(r, m * k + _tomp(c))
        v *= s
    return v


# ---------------------------------------------------------------------------
# direct geometric summation with incremental updates
# ---------------------------------------------------------------------------

class _WeightState:
    """Running value of a WeightSum with O(m) updates per unit k-shift."""

    def __init__(self, w: WeightSum, k0: int):
        self.w = w
        self.k = k0
        self.const = _const_value(w.consts)
        self.vals = [mp.psi(r, m * k0 + _tomp(c)) for r, m, c, coef in w.parts]
        self.factorials = []
        for r, m, c, coef in w.parts:
            fact = 1
            for j in range(1, r + 1):
                fact *= j
            self.factorials.append((-1) ** r * fact)

    def value(self) -> Scalar:
        s = self.const
        for (r, m, c, coef), v in zip(self.w.parts, self.vals):
            s += _tomp(coef) * v
        return s

    def advance(self):
        # psi^(r)(z + 1) = psi^(r)(z) + (-1)^r r! / z^(r+1)
        k = self.k
        for i, (r, m, c, coef) in enumerate(self.w.parts):
            inc = mpf(0)
            for j in range(m):
                z = _tomp(m * k + c + j)
                inc += self.factorials[i] / z ** (r + 1)
            self.vals[i] += inc
        self.k += 1


def _ratio_fraction(term: HyperTerm, k: int):
    """term(k+1)/term(k) without the geometric factor.

    Exact Fraction when every parameter is rational, mpf otherwise.
    """
    exact = all(isinstance(c, (int, Fraction)) for _, c, _ in term.gammas) and \
        all(isinstance(c, (int, Fraction)) for _, c, _ in term.rationals)
    num = Fraction(1) if exact else mpf(1)
    for m, c, e in term.gammas:
        block = Fraction(1) if exact else mpf(1)
        for j in range(m):
            block *= m * k + c + j
        num *= block**e
    for m, c, e in term.rationals:
        if exact:
            num *= Fraction(m * (k + 1) + c, m * k + c) ** e
        else:
            num *= ((m * (k + 1) + c) / (m * k + c)) ** e
    return num


def sum_geometric(term: HyperTerm, ctx: PrecisionContext, start: int = 0,
                  max_terms: int = 2_000_000) -> Scalar:
    """Direct summation for |T| < 1 with certified geometric tail bound."""
    with ctx.workdps():
        T = _tomp(term.geometric)
        eps = ctx.eps
        states = [_WeightState(w, start) for w in term.weights]
        base = term_value(
            HyperTerm(term.prefactor, term.gammas, term.rationals, term.geometric),
            start)
        total = mpf(0)
        small_run = 0
        need_run = max(3, ctx.working_digits.bit_length())
        k = start
        while k - start < max_terms:
            wv = mpf(1)
            for st in states:
                wv *= st.value()
            contrib = base * wv
            total += contrib
            if k - start > 8 and abs(contrib) < eps * max(1, abs(total)):
                small_run += 1
                if small_run >= need_run:
                    r = abs(T) * abs(float(_ratio_fraction(term, k)))
                    if r < 0.999:
                        tail = abs(contrib) * r / (1 - r)
                        if tail < eps * max(1, abs(total)):
                            return total
            else:
                small_run = 0
            frac = _ratio_fraction(term, k)
            if isinstance(frac, Fraction):
                base = base * mpf(frac.numerator) / frac.denominator * T
            else:
                base = base * frac * T
            for st in states:
                st.advance()
            k += 1
        raise NonConvergenceError("geometric summation exceeded term budget")


# ---------------------------------------------------------------------------
# asymptotic expansion machinery (series in w = 1/k and L = log k)
# ---------------------------------------------------------------------------

def _wmul(a, b, J):
    out = [mpf(0)] * J
    for i, ai in enumerate(a):
        if i >= J or ai == 0:
            continue
        for j in range(min(len(b), J - i)):
            if b[j] != 0:
                out[i + j] += ai * b[j]
    return out


def _wexp(a, J):
    # exp of a w-series with zero constant term
    out = [mpf(0)] * J
    out[0] = mpf(1)
    for n in range(J - 1):
        s = mpf(0)
        for i in range(n + 1):
            if i + 1 < len(a) and a[i + 1] != 0:
                s += (i + 1) * a[i + 1] * out[n - i]
        out[n + 1] = s / (n + 1)
    return out


def _compose(outer, inner, J):
    """outer(v) evaluated at v = inner(w); inner[0] must be 0."""
    out = [mpf(0)] * J
    out[0] = outer[0] if outer else mpf(0)
    vpow = [mpf(0)] * J
    vpow[0] = mpf(1)
    for n in range(1, min(len(outer), J)):
        vpow = _wmul(vpow, inner, J)
        if outer[n] == 0:
            continue
        for i in range(J):
            if vpow[i] != 0:
                out[i] += outer[n] * vpow[i]
    return out


class _Lau:
    """Truncated Laurent series sum_i c[i] w^(off+i)."""

    __slots__ = ("off", "c")

    def __init__(self, off, c):
        self.off = off
        self.c = c

    @staticmethod
    def const(v, J):
        return _Lau(0, [v] + [mpf(0)] * (J - 1))

    def mul(self, other, J):
        return _Lau(self.off + other.off, _wmul(self.c, other.c, J))

    def add(self, other, J):
        off = min(self.off, other.off)
        c = [mpf(0)] * (J + max(self.off, other.off) - off)
        for i, v in enumerate(self.c):
            c[i + self.off - off] += v
        for i, v in enumerate(other.c):
            c[i + other.off - off] += v
        return _Lau(off, c[:J])

    def scale(self, v):
        return _Lau(self.off, [v * x for x in self.c])


class _LPoly:
    """Polynomial in L = log k with _Lau coefficients."""

    def __init__(self, coeffs):
        self.coeffs = coeffs

    @staticmethod
    def from_lau(lau):
        return _LPoly([lau])

    def mul(self, other, J):
        deg = len(self.coeffs) + len(other.coeffs) - 1
        out = [None] * deg
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                p = a.mul(b, J)
                out[i + j] = p if out[i + j] is None else out[i + j].add(p, J)
        zero = _Lau.const(mpf(0), J)
        return _LPoly([zero if x is None else x for x in out])

    def add(self, other, J):
        zero = _Lau.const(mpf(0), J)
        n = max(len(self.coeffs), len(other.coeffs))
        ca = self.coeffs + [zero] * (n - len(self.coeffs))
        cb = other.coeffs + [zero] * (n - len(other.coeffs))
        return _LPoly([a.add(b, J) for a, b in zip(ca, cb)])

    def scale(self, v):
        return _LPoly([lau.scale(v) for lau in self.coeffs])


def _psi_v_series(r: int, J: int):
    """Asymptotic coefficients of psi^(r)(z) in v = 1/z, for r >= 1."""
    c = [mpf(0)] * (J + r)
    if len(c) > 1:
        c[1] = mpf(1)
    if len(c) > 2:
        c[2] = mpf(1) / 2
    n = 1
    while 2 * n + 1 < len(c):
        c[2 * n + 1] = mp.bernoulli(2 * n)
        n += 1
    for _ in range(r - 1):
        nc = [mpf(0)] * len(c)
        for j in range(len(c) - 1):
            nc[j + 1] = -j * c[j]
        c = nc
    return c[:J]


def _tompf(c):
    if isinstance(c, Fraction):
        return mpf(c.numerator) / c.denominator
    return mpf(c)


def _geom_v(m, x, J):
    """v = 1/(mk+c) = (w/m) sum_n (-x w)^n with x = c/m, as a w-series."""
    v = [mpf(0)] * J
    acc = mpf(1) / m
    for n in range(1, J):
        v[n] = acc
        acc *= -x
    return v


def _psi_lpoly(r: int, m: int, c, J: int) -> _LPoly:
    """psi^(r)(m k + c) as an (w, L)-polynomial."""
    x = _tompf(c) / m
    v = _geom_v(m, x, J)
    if r == 0:
        ws = [mpf(0)] * J
        ws[0] = mp.log(m)
        acc = mpf(1)
        for n in range(1, J):
            acc *= -x
            ws[n] = -acc / n                       # log(1 + x w)
        corr = [mpf(0)] * J                        # -v/2 - sum B_2n v^2n/(2n)
        if J > 1:
            corr[1] = mpf(-1) / 2
        n = 1
        while 2 * n < J:
            corr[2 * n] = -mp.bernoulli(2 * n) / (2 * n)
            n += 1
        corr = _compose(corr, v, J)
        ws = [ws[i] + corr[i] for i in range(J)]
        return _LPoly([_Lau(0, ws), _Lau.const(mpf(1), J)])
    return _LPoly.from_lau(_Lau(0, _compose(_psi_v_series(r, J), v, J)))


def sum_tail_zeta(term: HyperTerm, K: int, ctx: PrecisionContext,
                  order: Optional[int] = None) -> Scalar:
    """Closed-form tail sum_{k>=K} term(k) for unit ratio T = 1."""
    wd = ctx.working_digits
    J = order if order is not None else int(1.2 * wd) + 10
    with workdps(wd + 14):
        ln2pi = mp.log(2 * mp.pi)
        klin = mpf(0)
        kL = 0
        Lc = mpf(0)
        const = mpf(0)
        ws = [mpf(0)] * J
        for m, c, e in term.gammas:
            klin += e * m * (mp.log(m) - 1)
            kL += e * m
            Lc += e * (_tompf(c) - mpf(1) / 2)
            const += e * ((_tompf(c) - mpf(1) / 2) * mp.log(m) + ln2pi / 2)
            for n in range(1, J):
                ws[n] += e * (-1) ** (n + 1) * mp.bernpoly(n + 1, _tompf(c)) \
                    / (mpf(n) * (n + 1) * mpf(m) ** n)
        T = _tomp(term.geometric)
        if not (isinstance(T, mpf) and T > 0):
            raise DivergenceError("zeta-tail summation requires positive real T")
        klin += mp.log(T)
        if kL != 0 or abs(klin) > mpf(10) ** (-(wd - 2)):
            raise DivergenceError("term ratio is not asymptotically 1")
        rho = Lc
        amp = mp.exp(const) * _tomp(term.prefactor)
        poly = _LPoly.from_lau(_Lau(0, _wexp(ws, J)))
        for m, c, e in term.rationals:
            if e < 0:
                rl = _Lau(1, _geom_v(m, _tompf(c) / m, J)[1:] + [mpf(0)])
                for _ in range(-e):
                    poly = poly.mul(_LPoly.from_lau(rl), J)
            else:
                lin = _Lau(-1, [mpf(m), _tompf(c)] + [mpf(0)] * (J - 2))
                for _ in range(e):
                    poly = poly.mul(_LPoly.from_lau(lin), J)
        for w in term.weights:
            wp = _LPoly.from_lau(_Lau.const(_const_value(w.consts), J))
            for r, m, c, coef in w.parts:
                wp = wp.add(_psi_lpoly(r, m, c, J).scale(_tomp(coef)), J)
            poly = poly.mul(wp, J)
        total = mpf(0)
        last = mpf(0)
        for q, lau in enumerate(poly.coeffs):
            sgn = (-1) ** q
            for i, coeff in enumerate(lau.c):
                if coeff == 0:
                    continue
                s = (lau.off + i) - rho
                if s <= 1:
                    raise DivergenceError(
                        f"tail exponent s = {float(s):.3f} <= 1: series diverges")
                zx = mp.zeta(s, K, q) if q else mp.zeta(s, K)
                contrib = amp * coeff * sgn * zx
                total += contrib
                if i >= J - 2:
                    last += abs(contrib)
        if last > mpf(10) ** (-(wd + 2)) * max(1, abs(total)):
            raise NonConvergenceError(
                f"zeta-tail truncation too coarse (last order {float(last):.3g})")
    with ctx.workdps():
        return +total


def sum_alternating(term: HyperTerm, ctx: PrecisionContext, start: int = 0) -> Scalar:
    """Levin extrapolation for T = -1 terms with algebraic decay."""
    with workdps(2 * ctx.working_digits + 10):
        def f(k):
            return term_value(term, int(k))
        k0 = start
        while f(k0) == 0:
            k0 += 1
        head = sum(term_value(term, k) for k in range(start, k0))
        val = head + mp.nsum(f, [k0, mp.inf], method="l")
    with ctx.workdps():
        return +val


def asymptotic_ratio(term: HyperTerm) -> float:
    """|term(k+1)/term(k)| as k -> inf.

    Balanced gamma factors leave the constant prod m^(m e); the k-power
    parts must cancel for the series to converge at all, which the tail
    machinery re-checks exactly.
    """
    r = abs(complex(_tomp(term.geometric)))
    for m, c, e in term.gammas:
        r *= float(m) ** (m * e)
    return r


def hyperterm_sum(term: HyperTerm, ctx: PrecisionContext = DEFAULT_CTX,
                  start: int = 0) -> Scalar:
    """Sum of term(k) for k >= start, dispatching on the asymptotic ratio."""
    with ctx.workdps():
        T = _tomp(term.geometric)
        ratio = asymptotic_ratio(term)
        if ratio < 1 - 1e-9:
            return sum_geometric(term, ctx, start)
        if abs(ratio - 1) > 1e-9:
            raise DivergenceError(
                f"series ratio {ratio:.6g} > 1: term does not converge")
        if isinstance(T, mpf) and T > 0:
            wd = ctx.working_digits
            J = int(1.2 * wd) + 10
            for attempt in range(2):
                K = int(J * mpf(10) ** (mpf(wd + 5) / J) / (2 * mp.pi)) + 6
                K = max(K, start + 4)
                head = mpf(0)
                for k in range(start, K):
                    head += term_value(term, k)
                try:
                    return head + sum_tail_zeta(term, K, ctx, order=J)
                except NonConvergenceError:
                    if attempt == 1:
                        raise
                    J = J + wd // 2 + 10
        if isinstance(T, mpf) and T < 0:
            return sum_alternating(term, ctx, start)
    raise DivergenceError(f"unsupported unit-modulus series ratio T = {term.geometric}")
