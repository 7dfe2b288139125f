"""Modular objects: eta, Eisenstein series, hauptmoduln, the
Legendre-Ramanujan correction function, Epstein zeta values, the weight-4
automorphic Green's function, and Eichler-type vertical integrals.

Conventions:

* q = exp(2 pi i z), Im z > 0 throughout.
* E2 is the completed (weight-2, non-holomorphic) series
  1 - 3/(pi Im z) - 24 sum n q^n/(1-q^n); E4 and E6 are the classical ones.
* alpha_N for N in {2,3,4} is the level-N hauptmodul built from the eta
  quotient; j is Klein's invariant, normalized so j(i) = 1728.
* The level-1 Epstein zeta value E(z,2) = (45/pi^4) sum' (Im z)^2/|mz+n|^4
  is evaluated through its Fourier-Bessel expansion, which at s = 2 is
  elementary and geometrically convergent; a directly truncated lattice
  double sum is kept as a low-precision cross-check.
* The Green's function lattice sum runs over integer quadruples with
  ad - N b c = 1 acting as z -> (az+b)/(Ncz+d); it converges slowly and is
  a float64 path good to ~1e-5..1e-6, with the integral representation
  carrying the high-precision burden.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np
from mpmath import mp, mpf, mpc

from .context import PrecisionContext, DEFAULT_CTX
from .core import Number, to_mp
from .errors import DivergencePoleError, DomainError, NonConvergenceError
from .hypergeo import legendre_p, legendre_p_dx
from .quadrature import integrate_de, integrate_path, integrate_vertical, SING_ENDPOINT


@dataclass(frozen=True)
class ModularPoint:
    """A point in the upper half-plane with an associated level."""

    z: object
    level: int = 1

    def validate(self):
        if mp.im(mpc(self.z)) <= 0:
            raise DomainError("modular point must have Im z > 0")

    def in_fundamental_region(self) -> bool:
        """Region for the Ramanujan base-change identities.

        Level 1: Im z > 0, |Re z| < 1/2, |z| >= 1.
        Level N in {2,3,4}: Im z > 0, |Re z| < 1/2, |z +/- 1/N| > 1/N.
        """
        z = mpc(self.z)
        if mp.im(z) <= 0 or abs(mp.re(z)) >= mpf(1) / 2:
            return False
        if self.level == 1:
            return abs(z) >= 1
        N = self.level
        return abs(z + mpf(1) / N) > mpf(1) / N and abs(z - mpf(1) / N) > mpf(1) / N


def _nome(z, ctx) -> Number:
    z = to_mp(z, ctx)
    y = mp.im(mpc(z))
    if y <= 0:
        raise DomainError("Im z must be positive")
    return mp.exp(2j * mp.pi * mpc(z))


def dedekind_eta(z, ctx: PrecisionContext = DEFAULT_CTX) -> Number:
    """eta(z) = e^(pi i z/12) prod (1 - q^n), truncated at |q|^n < resolution."""
    with ctx.workdps():
        q = _nome(z, ctx)
        aq = abs(q)
        prod = mpf(1)
        qn = mpf(1)
        n = 1
        while True:
            qn = qn * q
            prod *= 1 - qn
            if aq**n < ctx.eps / 10:
                break
            n += 1
        return mp.exp(mp.pi * 1j * mpc(to_mp(z, ctx)) / 12) * prod


def eisenstein(weight: int, z, ctx: PrecisionContext = DEFAULT_CTX) -> Number:
    """E2 (completed), E4 or E6 at z."""
    if weight not in (2, 4, 6):
        raise ValueError("weight must be 2, 4 or 6")
    with ctx.workdps():
        zz = mpc(to_mp(z, ctx))
        q = _nome(zz, ctx)
        aq = abs(q)
        s = mpf(0)
        qn = mpf(1)
        n = 1
        p = weight - 1
        while True:
            qn = qn * q
            s += n**p * qn / (1 - qn)
            if (n**p) * aq**n < ctx.eps / 10:
                break
            n += 1
        if weight == 2:
            return 1 - 3 / (mp.pi * mp.im(zz)) - 24 * s
        if weight == 4:
            return 1 + 240 * s
        return 1 - 504 * s


def alpha_invariant(N: int, z, ctx: PrecisionContext = DEFAULT_CTX) -> Number:
    """Level-N hauptmodul {1 + N^(-6/(N-1)) [eta(z)/eta(Nz)]^(24/(N-1))}^(-1)."""
    if N not in (2, 3, 4):
        raise ValueError("alpha_N defined for N in {2, 3, 4}")
    with ctx.workdps():
        r = dedekind_eta(z, ctx) / dedekind_eta(N * to_mp(z, ctx), ctx)
        expo = Fraction(24, N - 1)
        return 1 / (1 + mpf(N) ** (-mpf(6) / (N - 1)) * r ** int(expo))


def klein_j(z, ctx: PrecisionContext = DEFAULT_CTX) -> Number:
    """Klein's invariant via the level-4 hauptmodul at z/2."""
    with ctx.workdps():
        a = alpha_invariant(4, to_mp(z, ctx) / 2, ctx)
        return 2**8 * (1 - a + a**2) ** 3 / (a**2 * (1 - a) ** 2)


# ---------------------------------------------------------------------------
# Legendre-Ramanujan function
# ---------------------------------------------------------------------------

def ramanujan_R(nu, xi=None, z=None, route: str = "auto",
                ctx: PrecisionContext = DEFAULT_CTX) -> Number:
    """R_nu, the correction term of Ramanujan-type 1/pi series.

    Either give xi (the Legendre argument) for the defining-derivative route,
    or a modular point z for the Eisenstein-series route:

      N in {2,3,4}: R_nu(1 - 2 alpha_N(z)) with the completed E2;
      N = 1 (nu = -1/6): the j-parametrized form  -E6/(3 E4^2) [E2 - E6/E4]
      divided by sqrt((j-1728)/j).

    The defining route uses R(xi) = (1-xi^2)[P'(xi)/P(xi) - P'(-xi)/P(-xi)]
    for -1 < xi < 1, extended by R(xi) = -R(-xi), R(1) = 0, and smooth
    continuation across the cut for xi > 1 (evaluated as the directional
    limit; the imaginary parts cancel).
    """
    with ctx.workdps():
        nu = to_mp(nu, ctx)
        if route in ("auto", "eisenstein") and z is not None:
            return _ramanujan_R_eisenstein(nu, z, ctx)
        if xi is None:
            raise ValueError("need xi for the defining route")
        x = to_mp(xi, ctx)
        if x == 1:
            return mpf(0)
        if x == -1:
            return mpf(0)
        if isinstance(x, mpf) and abs(x) > 1:
            sign = 1 if x > 0 else -1
            xa = abs(x)
            P1 = legendre_p(nu, xa, ctx)
            dP1 = legendre_p_dx(nu, xa, ctx)
            P2 = legendre_p(nu, -xa, ctx, approach="above")
            dP2 = _legendre_p_dx_cut(nu, -xa, ctx)
            R = _ramanujan_R_formula(nu, xa, P1, dP1, P2, dP2)
            return sign * mp.re(R)
        P1 = legendre_p(nu, x, ctx)
        dP1 = legendre_p_dx(nu, x, ctx)
        P2 = legendre_p(nu, -x, ctx)
        dP2 = legendre_p_dx(nu, -x, ctx)
        if isinstance(x, mpf):
            if P1 == 0 or P2 == 0:
                raise ZeroDivisionError("P_nu vanishes at +/-xi")
            return (1 - x**2) * (dP1 / P1 - dP2 / P2)
        return _ramanujan_R_formula(nu, x, P1, dP1, P2, dP2)


def _legendre_p_dx_cut(nu, x, ctx, approach: str = "above"):
    """dP_nu/dx on the cut x < -1 as a directional limit.

    Termwise: P' = (nu (nu+1)/2) 2F1(1-nu, nu+2; 2; (1-x)/2); mpmath's value
    at real argument > 1 is the limit from below in t, i.e. from above in x.
    """
    with ctx.workdps():
        t = (1 - to_mp(x, ctx)) / 2
        h = mp.hyp2f1(1 - nu, nu + 2, 2, t)
        if approach == "below":
            h = mp.conj(h)
        return nu * (nu + 1) / 2 * h


def _ramanujan_R_formula(nu, xi, P1, dP1, P2, dP2):
    """Full defining expression; dP1/dP2 are P_nu' at xi and -xi.

    d/dxi P_nu(-xi) = -P_nu'(-xi), so the derivative part is
    (1-xi^2)(P'(xi)/P(xi) - P'(-xi)/P(-xi)).
    """
    d = (1 - xi**2) * (dP1 / P1 - dP2 / P2)
    corr = mp.sin(nu * mp.pi) / mp.pi * (
        1 / (P1**2 * mp.im(1j * P2 / P1)) - 1 / (P2**2 * mp.im(1j * P1 / P2)))
    return d - corr


def _ramanujan_R_eisenstein(nu, z, ctx):
    with ctx.workdps():
        z = mpc(to_mp(z, ctx))
        N = int(mp.nint(4 * mp.sin(nu * mp.pi) ** 2))
        if N == 1:
            j = klein_j(z, ctx)
            xi = mp.sqrt((j - 1728) / j)
            e2, e4, e6 = (eisenstein(w, z, ctx) for w in (2, 4, 6))
            return -e6 / (3 * e4**2) * (e2 - e6 / e4) / xi
        e2z, e4z = eisenstein(2, z, ctx), eisenstein(4, z, ctx)
        e2N, e4N = eisenstein(2, N * z, ctx), eisenstein(4, N * z, ctx)
        num = N**2 * e2N**2 - N**2 * e4N - e2z**2 + e4z
        den = (N * e2N - e2z) ** 2
        return -(N - 1) * num / (6 * den)


# ---------------------------------------------------------------------------
# Epstein zeta values at s = 2
# ---------------------------------------------------------------------------

_SIGMA3: list = [0, 1]


def _sigma3(n: int) -> int:
    while len(_SIGMA3) <= n:
        m = len(_SIGMA3)
        _SIGMA3.append(sum(d**3 for d in range(1, m + 1) if m % d == 0))
    return _SIGMA3[n]


def epstein_zeta_level1(z, ctx: PrecisionContext = DEFAULT_CTX) -> Number:
    """E^(Gamma0(1))(z, 2) = (45/pi^4) sum' (Im z)^2/|mz+n|^4.

    Evaluated through the exact Fourier expansion at s = 2:

        y^2 + 45 zeta(3)/(pi^3 y)
            + (180/pi^2) sum_n n sigma_{-3}(n) e^(-2 pi n y)
                          (1 + 1/(2 pi n y)) cos(2 pi n x),

    where sigma_{-3}(n) = sigma_3(n)/n^3.  The expansion converges
    geometrically, so precision is limited only by the context.
    """
    with ctx.workdps():
        zz = mpc(to_mp(z, ctx))
        x, y = mp.re(zz), mp.im(zz)
        if y <= 0:
            raise DomainError("Im z must be positive")
        total = y**2 + 45 * mp.zeta(3) / (mp.pi**3 * y)
        n = 1
        fac = 180 / mp.pi**2
        while True:
            w = 2 * mp.pi * n * y
            term = fac * mpf(_sigma3(n)) / n**2 * mp.exp(-w) * (1 + 1 / w) \
                * mp.cos(2 * mp.pi * n * x)
            total += term
            if mpf(_sigma3(n)) / n**2 * mp.exp(-w) < ctx.eps / 10:
                break
            n += 1
        return total


def epstein_lattice_direct(z, M: int = 120) -> float:
    """Literal truncation of the level-1 lattice sum at |m|,|n| <= M.

    Quartic decay gives an O(1/M^2) tail, so this is a float64 cross-check,
    not a precision path.
    """
    zz = complex(z)
    x, y = zz.real, zz.imag
    ms = np.arange(-M, M + 1, dtype=np.float64)
    ns = np.arange(-M, M + 1, dtype=np.float64)
    mm, nn = np.meshgrid(ms, ns, indexing="ij")
    den = (mm * x + nn) ** 2 + (mm * y) ** 2
    den[M, M] = np.inf
    total = float(np.sum(y**2 / den**2))
    return 45 / math.pi**4 * total


def epstein_level4(z, ctx: PrecisionContext = DEFAULT_CTX) -> Number:
    """E^(Gamma0(4))(z,2) = [E1(4z,2) - E1(2z,2)/4]/15."""
    with ctx.workdps():
        zz = mpc(to_mp(z, ctx))
        return (epstein_zeta_level1(4 * zz, ctx)
                - epstein_zeta_level1(2 * zz, ctx) / 4) / 15


def epstein_levelN_difference(N: int, z, ctx: PrecisionContext = DEFAULT_CTX) -> Number:
    """E^(Gamma0(N))(z,2) - E^(Gamma0(N))(-1/(Nz),2) = [E1(Nz,2)-E1(z,2)]/(N^2-1)."""
    if N not in (2, 3, 4):
        raise ValueError("level must be 2, 3 or 4")
    with ctx.workdps():
        zz = mpc(to_mp(z, ctx))
        return (epstein_zeta_level1(N * zz, ctx)
                - epstein_zeta_level1(zz, ctx)) / (N**2 - 1)


# ---------------------------------------------------------------------------
# weight-4 automorphic Green's function
# ---------------------------------------------------------------------------

def green_special_point(N: int):
    """The second argument z' = 1/2 + (i/2) sqrt((4-N)/N) used throughout."""
    return complex(0.5, 0.5 * math.sqrt((4 - N) / N))


def green_g2(N: int, z1, z2=None, bound: int = 400, mwin: int = 40,
             tol: float = 5e-6) -> float:
    """Lattice sum for G_2 at level N (float64; ~1e-5..1e-6 accuracy).

    Sums -Q_1(1 + |z1 - g z2|^2 / (2 Im z1 Im g z2)) over all integer
    quadruples ad - N b c = 1, enumerated by coprime (Nc, d) pairs plus
    translation orbits; the +/- quadruple doubling is folded into a factor 2.
    """
    if N not in (1, 2, 3):
        raise ValueError("green_g2 implemented for levels 1, 2, 3")
    z1 = complex(z1)
    z2 = complex(z2) if z2 is not None else green_special_point(N)
    y1 = z1.imag
    if y1 <= 0 or z2.imag <= 0:
        raise DomainError("both points must be in the upper half-plane")
    total = 0.0
    shells = []
    for c in range(0, bound + 1):
        shell = 0.0
        if c == 0:
            dvals = [1]
        else:
            dvals = [d for d in range(-bound, bound + 1) if math.gcd(N * c, d) == 1]
        for d in dvals:
            if c == 0:
                a, b = 1, 0
            else:
                g, x0, y0 = _ext_gcd(d, N * c)
                a, b = x0, -y0
            w = (a * z2 + b) / (N * c * z2 + d)
            yw = w.imag
            base = z1.real - w.real
            m0 = round(base)
            ms = np.arange(m0 - mwin, m0 + mwin + 1, dtype=np.float64)
            dx = base - ms
            X = 1.0 + (dx * dx + (y1 - yw) ** 2) / (2.0 * y1 * yw)
            if np.min(X) < 1 + 1e-12:
                raise DivergencePoleError("Green's function pole: points collide")
            shell += float(np.sum(_q1_np(X)))
        total += shell
        shells.append(abs(shell))
        if c > 8 and max(shells[-3:]) < tol / 10:
            break
    return -2.0 * total


def _q1_np(X):
    return -1.0 + X / 2.0 * np.log((X + 1.0) / (X - 1.0))


def _ext_gcd(a: int, b: int):
    if b == 0:
        return (a, 1, 0)
    g, x, y = _ext_gcd(b, a % b)
    return (g, y, x - (a // b) * y)


_GREEN_COEFS = {
    # level: (c1, c2, c3) multiplying the three integrals
    1: ("4/3", "8/3", "4/3"),
    2: ("1/4", "1/sqrt2", "1/2"),
    3: ("1/9", "1/(3 sqrt3)", "1/3"),
}

_GREEN_NU = {1: Fraction(-1, 6), 2: Fraction(-1, 4), 3: Fraction(-1, 3)}


def green_g2_integral(N: int, z=None, t=None,
                      ctx: PrecisionContext = DEFAULT_CTX) -> Number:
    """High-precision G_2(z, z'_N) through Legendre-product integrals.

    With t the hauptmodul value (alpha_N(z) for N in {2,3}; for N = 1,
    t = 1/2 - (1/2) sqrt((j-1728)/j)), the representation reads

      G_2 = -(c1 pi/Im z) Re I[P^2; 2t-1, 1]
            + (c2 pi Re z/Im z) Re I[i P(x) P(-x); 1-2t, 1]
            - (c3 pi |z|^2/Im z) Re I[P^2; 1-2t, 1]

    with (c1, c2, c3) = (4/3, 8/3, 4/3), (1/4, 1/sqrt2, 1/2),
    (1/9, 1/(3 sqrt3), 1/3) for N = 1, 2, 3.
    """
    if N not in (1, 2, 3):
        raise ValueError("levels 1, 2, 3 only")
    nu = _GREEN_NU[N]
    with ctx.workdps():
        if z is None:
            raise ValueError("z required")
        zz = mpc(to_mp(z, ctx))
        if t is None:
            if N == 1:
                j = klein_j(zz, ctx)
                t = (1 - mp.sqrt((j - 1728) / j)) / 2
            else:
                t = alpha_invariant(N, zz, ctx)
        else:
            t = to_mp(t, ctx)
        if N == 1:
            c1, c2, c3 = mpf(4) / 3, mpf(8) / 3, mpf(4) / 3
        elif N == 2:
            c1, c2, c3 = mpf(1) / 4, 1 / mp.sqrt(2), mpf(1) / 2
        else:
            c1, c2, c3 = mpf(1) / 9, 1 / (3 * mp.sqrt(3)), mpf(1) / 3
        y = mp.im(zz)
        nu_ = to_mp(nu, ctx)

        def P(x):
            return legendre_p(nu_, x, ctx)

        lo1 = 2 * t - 1
        lo2 = 1 - 2 * t
        if mp.im(t) == 0:
            I1 = integrate_de(lambda x: P(x) ** 2, (lo1, 1), ctx, SING_ENDPOINT)
            I3 = integrate_de(lambda x: P(x) ** 2, (lo2, 1), ctx, SING_ENDPOINT)
            I2 = integrate_path(lambda x: 1j * P(x) * P(-x), [lo2, 1], ctx)
        else:
            I1 = integrate_path(lambda x: P(x) ** 2, [lo1, 1], ctx)
            I3 = integrate_path(lambda x: P(x) ** 2, [lo2, 1], ctx)
            I2 = integrate_path(lambda x: 1j * P(x) * P(-x), [lo2, 1], ctx)
        G = (-c1 * mp.pi / y * mp.re(I1)
             + c2 * mp.pi * mp.re(zz) / y * mp.re(I2)
             - c3 * mp.pi * abs(zz) ** 2 / y * mp.re(I3))
        return G


# ---------------------------------------------------------------------------
# Eichler-type vertical integral for E4
# ---------------------------------------------------------------------------

def eichler_e4(z, ctx: PrecisionContext = DEFAULT_CTX) -> Number:
    """E~_4(z) = int_z^{i inf} [1 - E_4(w)] (z - w)(zbar - w) dw by vertical
    double-exponential quadrature with the analytic e^(-2 pi Im w) tail bound."""
    with ctx.workdps():
        zz = mpc(to_mp(z, ctx))
        zbar = mp.conj(zz)

        def f(w):
            return (1 - eisenstein(4, w, ctx)) * (zz - w) * (zbar - w)

        return integrate_vertical(f, zz, ctx, tail_coefficient=300,
                                  weight_degree=2)


def eichler_e4_qseries(z, ctx: PrecisionContext = DEFAULT_CTX) -> Number:
    """Same integral in closed q-series form (termwise integration oracle):

    E~_4(z) = 240 i sum_n sigma_3(n) e^(2 pi i n z) [y/(2 pi^2 n^2) + 1/(4 pi^3 n^3)].
    """
    with ctx.workdps():
        zz = mpc(to_mp(z, ctx))
        y = mp.im(zz)
        q = mp.exp(2j * mp.pi * zz)
        aq = abs(q)
        total = mpc(0)
        qn = mpc(1)
        n = 1
        while True:
            qn *= q
            total += _sigma3(n) * qn * (y / (2 * mp.pi**2 * n**2)
                                        + 1 / (4 * mp.pi**3 * n**3))
            if _sigma3(n) * aq**n / n**2 < ctx.eps / 10:
                break
            n += 1
        return 240j * total


# ---------------------------------------------------------------------------
# modular parametrization z(t)
# ---------------------------------------------------------------------------

def cm_ratio_z(nu, t, ctx: PrecisionContext = DEFAULT_CTX,
               approach: str = "above") -> ModularPoint:
    """z_{t,N} = i P_nu(2t-1) / (sqrt(N) P_nu(1-2t)) with N = 4 sin^2(nu pi).

    For t in (0,1) both Legendre values are direct; for t outside, the
    directional limit (t + i 0^+ by default) is taken.
    """
    with ctx.workdps():
        nu_ = to_mp(nu, ctx)
        N = int(mp.nint(4 * mp.sin(nu_ * mp.pi) ** 2))
        tt = to_mp(t, ctx)
        if tt == 0 or tt == 1:
            raise ZeroDivisionError("t in {0,1} degenerates the ratio")
        x1 = 2 * tt - 1
        x2 = 1 - 2 * tt
        kw = {}
        if isinstance(x1, mpf) and x1 <= -1:
            kw = {"approach": approach}
        P_num = legendre_p(nu_, x1, ctx, **kw)
        kw = {}
        if isinstance(x2, mpf) and x2 <= -1:
            kw = {"approach": approach}
        P_den = legendre_p(nu_, x2, ctx, **kw)
        if P_den == 0:
            raise ZeroDivisionError("P_nu(1-2t) = 0")
        z = 1j * P_num / (mp.sqrt(N) * P_den)
        return ModularPoint(z, N)
