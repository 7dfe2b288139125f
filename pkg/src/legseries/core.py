"""Scalar special functions and constants.

The classical layer every other module consumes: gamma, polygamma,
harmonic numbers, zeta/beta/Catalan constants, the dilogarithm on the
closed unit disk, rising factorials, and the four binomial-coefficient
patterns appearing in the series catalog.

mpmath supplies the underlying arbitrary-precision kernels for gamma,
polygamma and zeta; this module adds exact-rational paths, domain checks,
incremental binomial caches and the unit-circle dilogarithm split.
"""
from __future__ import annotations

import threading
from fractions import Fraction
from typing import Union

from mpmath import mp, mpf, mpc

from .context import PrecisionContext, DEFAULT_CTX
from .errors import DomainError, PoleError

Number = Union[mpf, mpc]
Rational = Union[int, Fraction]

# binomial patterns: C(2k,k), C(3k,k), C(4k,2k), C(6k,3k)
C2K = "C2K"
C3K = "C3K"
C4K2K = "C4K2K"
C6K3K = "C6K3K"
BINOMIAL_PATTERNS = (C2K, C3K, C4K2K, C6K3K)


def to_mp(x, ctx: PrecisionContext = DEFAULT_CTX) -> Number:
    """Convert int/Fraction/float/str/mp values to an mp scalar at working precision."""
    with ctx.workdps():
        if isinstance(x, (mpf, mpc)):
            return +x
        if isinstance(x, Fraction):
            return mpf(x.numerator) / x.denominator
        if isinstance(x, int):
            return mpf(x)
        if isinstance(x, complex):
            return mpc(x)
        return mpf(x)


def is_nonpositive_int(x) -> bool:
    if isinstance(x, Fraction):
        return x.denominator == 1 and x <= 0
    if isinstance(x, int):
        return x <= 0
    if isinstance(x, mpc):
        if x.imag != 0:
            return False
        x = x.real
    # an mpf counts as a nonpositive integer only if it is one exactly
    return x <= 0 and x == mp.floor(x)


def gamma(x, ctx: PrecisionContext = DEFAULT_CTX) -> Number:
    """Euler's gamma function; PoleError at nonpositive integers."""
    if is_nonpositive_int(x):
        raise PoleError(f"gamma pole at {x}")
    with ctx.workdps():
        return mp.gamma(to_mp(x, ctx))


def loggamma(x, ctx: PrecisionContext = DEFAULT_CTX) -> Number:
    if is_nonpositive_int(x):
        raise PoleError(f"log-gamma pole at {x}")
    with ctx.workdps():
        return mp.loggamma(to_mp(x, ctx))


def polygamma(m: int, x, ctx: PrecisionContext = DEFAULT_CTX) -> Number:
    """psi^(m)(x); PoleError at nonpositive integers."""
    if m < 0:
        raise ValueError("polygamma order must be >= 0")
    if is_nonpositive_int(x):
        raise PoleError(f"polygamma pole at {x}")
    with ctx.workdps():
        return mp.psi(m, to_mp(x, ctx))


def harmonic(m: int, r: int = 1) -> Fraction:
    """Exact harmonic number H_m^(r) = sum_{k=1}^m 1/k^r; H_0^(r) = 0."""
    if m < 0:
        raise ValueError("harmonic index must be >= 0")
    if r < 1:
        raise ValueError("harmonic order must be >= 1")
    total = Fraction(0)
    for k in range(1, m + 1):
        total += Fraction(1, k**r)
    return total


def euler_gamma(ctx: PrecisionContext = DEFAULT_CTX) -> mpf:
    with ctx.workdps():
        return +mp.euler


def harmonic_general(w, ctx: PrecisionContext = DEFAULT_CTX) -> Number:
    """H_w = psi(w+1) + gamma_0, the analytic continuation of H_n."""
    if is_nonpositive_int(to_mp(w, ctx) + 1):
        raise PoleError(f"generalized harmonic pole at {w}")
    with ctx.workdps():
        return mp.psi(0, to_mp(w, ctx) + 1) + mp.euler


def pi(ctx: PrecisionContext = DEFAULT_CTX) -> mpf:
    with ctx.workdps():
        return +mp.pi


def catalan(ctx: PrecisionContext = DEFAULT_CTX) -> mpf:
    with ctx.workdps():
        return +mp.catalan


def zeta(s: int, ctx: PrecisionContext = DEFAULT_CTX) -> mpf:
    if s < 2:
        raise DomainError("zeta constant requires integer s >= 2")
    with ctx.workdps():
        return mp.zeta(s)


def dirichlet_beta(s: int, ctx: PrecisionContext = DEFAULT_CTX) -> mpf:
    """beta(s) = sum_k (-1)^k/(2k+1)^s via Hurwitz zeta."""
    if s < 1:
        raise DomainError("beta constant requires integer s >= 1")
    with ctx.workdps():
        return (mp.zeta(s, mpf(1) / 4) - mp.zeta(s, mpf(3) / 4)) / mpf(4) ** s


def clausen_cl2(theta, ctx: PrecisionContext = DEFAULT_CTX) -> mpf:
    """Cl_2(theta) = sum_k sin(k theta)/k^2 = Im Li_2(e^{i theta}).

    Uses the geometrically convergent expansion

        Cl_2(t) = t - t log|t| + sum_{n>=1} zeta(2n) t^{2n+1} / (n (2n+1) (2pi)^{2n})

    valid for |t| < 2 pi, after reducing theta mod 2 pi into (-pi, pi].
    """
    work = ctx.bumped(8)
    with work.workdps():
        t = to_mp(theta, work)
        twopi = 2 * mp.pi
        t = t - twopi * mp.floor(t / twopi + mpf(1) / 2)
        if t == 0:
            out = mpf(0)
        else:
            s = t - t * mp.log(abs(t))
            u = (t / twopi) ** 2
            un = mpf(1)
            n = 1
            while True:
                un *= u
                term = mp.zeta(2 * n) * t * un / (n * (2 * n + 1))
                s += term
                if abs(term) < work.eps * max(1, abs(s)):
                    break
                n += 1
            out = s
    with ctx.workdps():
        return +out


def dilog(z, ctx: PrecisionContext = DEFAULT_CTX) -> Number:
    """Li_2(z) on the closed unit disk.

    Interior points go through mpmath's polylog; unit-circle points use the
    Fourier split Li_2(e^{i theta}) = pi^2/6 - theta (2 pi - theta)/4
    + i Cl_2(theta), which is exact for theta in [0, 2 pi).
    """
    with ctx.workdps():
        zz = to_mp(z, ctx)
        r = abs(zz)
        if r > 1 + ctx.eps * 10:
            raise DomainError("dilog implemented on the closed unit disk only")
        if abs(r - 1) <= ctx.eps * 10:
            theta = mp.arg(zz) if isinstance(zz, mpc) else (mpf(0) if zz > 0 else mp.pi)
            if theta < 0:
                theta += 2 * mp.pi
            re = mp.pi**2 / 6 - theta * (2 * mp.pi - theta) / 4
            im = clausen_cl2(theta, ctx)
            return mpc(re, im) if im != 0 or isinstance(zz, mpc) else re
        return mp.polylog(2, zz)


def pochhammer(a, k: int, ctx: PrecisionContext = DEFAULT_CTX):
    """Rising factorial (a)_k; exact Fraction when a is rational."""
    if k < 0:
        raise ValueError("pochhammer index must be >= 0")
    if isinstance(a, (int, Fraction)):
        out = Fraction(1)
        a = Fraction(a)
        for m in range(k):
            out *= a + m
        return out
    with ctx.workdps():
        return mp.rf(to_mp(a, ctx), k)


class _BinomialCache:
    """Incrementally extended exact values of one binomial pattern.

    Each pattern has an integer term ratio, so c_{k+1} is obtained from c_k
    by one small-int multiply/divide; the division is exact.
    """

    def __init__(self, pattern: str):
        self.pattern = pattern
        self.values = [1]
        self.lock = threading.Lock()

    def _step(self, k: int, c: int) -> int:
        if self.pattern == C2K:
            return c * (2 * (2 * k + 1)) // (k + 1)
        if self.pattern == C3K:
            return c * (3 * (3 * k + 1) * (3 * k + 2)) // (2 * (k + 1) * (2 * k + 1))
        if self.pattern == C4K2K:
            return c * (4 * (4 * k + 1) * (4 * k + 3)) // ((2 * k + 1) * (2 * k + 2))
        if self.pattern == C6K3K:
            num = c
            for j in range(1, 7):
                num *= 6 * k + j
            den = ((3 * k + 1) * (3 * k + 2) * (3 * k + 3)) ** 2
            return num // den
        raise ValueError(f"unknown binomial pattern {self.pattern}")

    def get(self, k: int) -> int:
        with self.lock:
            while len(self.values) <= k:
                j = len(self.values) - 1
                self.values.append(self._step(j, self.values[j]))
            return self.values[k]


_BINOMIAL_CACHES = {p: _BinomialCache(p) for p in BINOMIAL_PATTERNS}


def binomial_pattern(k: int, pattern: str) -> int:
    """Exact C(2k,k), C(3k,k), C(4k,2k) or C(6k,3k)."""
    if k < 0:
        raise ValueError("binomial index must be >= 0")
    return _BINOMIAL_CACHES[pattern].get(k)


def binomial_ratio(k: int, pattern: str) -> Fraction:
    """Exact ratio c_{k+1}/c_k for one pattern, for series term recurrences."""
    if pattern == C2K:
        return Fraction(2 * (2 * k + 1), k + 1)
    if pattern == C3K:
        return Fraction(3 * (3 * k + 1) * (3 * k + 2), 2 * (k + 1) * (2 * k + 1))
    if pattern == C4K2K:
        return Fraction(4 * (4 * k + 1) * (4 * k + 3), (2 * k + 1) * (2 * k + 2))
    if pattern == C6K3K:
        num = 1
        for j in range(1, 7):
            num *= 6 * k + j
        return Fraction(num, ((3 * k + 1) * (3 * k + 2) * (3 * k + 3)) ** 2)
    raise ValueError(f"unknown binomial pattern {pattern}")
