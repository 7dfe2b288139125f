"""Double-exponential (tanh-sinh) quadrature.

Primary evaluator for the endpoint-singular real integrals and truncated
vertical-path integrals used across the library, and the independent
oracle for series identities.  The rule is the classical Takahashi-Mori
transformation x = tanh((pi/2) sinh t); node/weight tables are built per
(precision, level) and shared read-only.

Error control is by level-doubling agreement.  Two features matter for the
singular integrands in the catalog (strengths up to (1-x)^(-5/6)):

* nodes store the distance to the endpoint 1-|x| computed in exp-scale,
  so it never suffers cancellation; integrands may opt into the
  ``endpoint_form`` signature f(dist_left, dist_right) to exploit this;
* plain-signature integrands get a precision boost so that nodes
  double-exponentially close to an endpoint still resolve 1-x.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from mpmath import mp, mpf, mpc, workdps

from .context import PrecisionContext, DEFAULT_CTX
from .errors import NonConvergenceError, DomainError

SING_NONE = "none"
SING_ENDPOINT = "algebraic_log_endpoints"
SING_VERTICAL = "vertical_decay"


@dataclass
class IntegrandSpec:
    evaluator: Callable
    interval: tuple
    singularity_class: str = SING_NONE
    endpoint_form: bool = False


_NODE_TABLES: dict = {}


def _build_nodes(dps: int, level: int, depth_digits: int, odd_only: bool):
    """Positive-t abscissas for step h = 2^-level at dps digits.

    Each entry is (x, 1-x, w) with 1-x = 2/(1+e^(2u)) computed stably;
    nodes extend until 1-x < 10^-depth_digits, so strong algebraic endpoint
    singularities (whose truncated tail decays like (1-x)^(1-beta)) can be
    driven below tolerance by raising the depth.  With odd_only, only the
    nodes new to this level (odd multiples of h) are produced, letting the
    level iteration reuse the previous trapezoid sum.
    """
    key = (dps, level, depth_digits, odd_only)
    table = _NODE_TABLES.get(key)
    if table is not None:
        return table
    with workdps(dps):
        h = mpf(1) / 2**level
        # 1 - tanh((pi/2) sinh t) ~ 2 exp(-pi sinh t): cap where it hits 10^-depth
        t_cap = mp.asinh(mp.log(mpf(10)) * depth_digits / mp.pi)
        nodes = []
        j = 1
        step = 2 if odd_only else 1
        while True:
            t = j * h
            if t > t_cap:
                break
            u = mp.pi / 2 * mp.sinh(t)
            one_minus = 2 / (1 + mp.exp(2 * u))
            x = 1 - one_minus
            w = mp.pi / 2 * mp.cosh(t) / mp.cosh(u) ** 2
            nodes.append((x, one_minus, w))
            j += step
        table = (h, tuple(nodes))
    _NODE_TABLES[key] = table
    return table


def integrate_de(
    spec_or_f,
    interval: Optional[tuple] = None,
    ctx: PrecisionContext = DEFAULT_CTX,
    singularity_class: str = SING_NONE,
    max_level: int = 12,
    endpoint_form: bool = False,
):
    """Integrate over a finite interval with tanh-sinh quadrature.

    Accepts an IntegrandSpec or (callable, (a, b)).  With endpoint_form the
    integrand is called as f(x - a, b - x) with both distances computed
    stably, which sidesteps cancellation for strong endpoint singularities.
    Raises NonConvergenceError when level doubling stops improving before
    the budget is met (usually a mis-declared singularity class).
    """
    if isinstance(spec_or_f, IntegrandSpec):
        f = spec_or_f.evaluator
        a, b = spec_or_f.interval
        singularity_class = spec_or_f.singularity_class
        endpoint_form = spec_or_f.endpoint_form
    else:
        f = spec_or_f
        a, b = interval
    wd = ctx.working_digits
    if endpoint_form:
        boost = 10
    elif singularity_class != SING_NONE:
        boost = wd // 2 + 10
    else:
        boost = 10
    dps = wd + boost

    with workdps(dps):
        a = mp.mpmathify(a)
        b = mp.mpmathify(b)
        if a == b:
            return mpf(0)
        halfspan = (b - a) / 2
        mid = (a + b) / 2

        if endpoint_form:
            def g(x, dm, dp):
                return f(halfspan * dm, halfspan * dp)
            depth = 8 * (wd + 10)   # covers exponents as strong as (1-x)^(-7/8)
        else:
            def g(x, dm, dp):
                return f(mid + halfspan * x)
            depth = dps - 2         # nodes stay representable away from +/-1

        _precheck(g, dps)
        tol = mpf(10) ** (-wd)
        prev = None
        running = None
        result = None
        for level in range(3, max_level + 1):
            if running is None:
                running = _sum_nodes(g, level, dps, depth, odd_only=False)
                running += g(mpf(0), mpf(1), mpf(1)) * (mp.pi / 2)
                running *= mpf(1) / 2**level
            else:
                # halving h keeps old nodes; only odd multiples are new
                running = running / 2 \
                    + _sum_nodes(g, level, dps, depth, odd_only=True) \
                    * (mpf(1) / 2**level)
            cur = running * halfspan
            if prev is not None:
                err = abs(cur - prev)
                scale = max(mpf(1), abs(cur))
                if err <= tol * scale and level >= 5:
                    result = cur
                    break
            prev = cur
        if result is None:
            raise NonConvergenceError(
                f"tanh-sinh failed to converge by level {max_level} "
                f"(last delta {float(abs(cur - prev)):.3g})")
    with ctx.workdps():
        return +result


def _sum_nodes(g, level: int, dps: int, depth: int, odd_only: bool):
    _, nodes = _build_nodes(dps, level, depth, odd_only)
    with workdps(dps):
        two = mpf(2)
        total = mpf(0)
        for x, om, w in nodes:
            total += w * g(x, two - om, om)
            total += w * g(-x, om, two - om)
        return total


def _precheck(g, dps: int, samples: int = 64):
    """Sample the open interval; non-finite values mean a bad path/branch."""
    with workdps(dps):
        for i in range(1, samples + 1):
            u = mpf(2) * i / (samples + 1) - 1
            v = g(u, 1 + u, 1 - u)
            if not mp.isfinite(v):
                raise DomainError(f"integrand not finite at parameter {float(u)}")


def integrate_path(f, points: Sequence, ctx: PrecisionContext = DEFAULT_CTX,
                   singularity_class: str = SING_NONE):
    """Contour integral along straight segments through the given points."""
    total = None
    for z0, z1 in zip(points[:-1], points[1:]):
        z0 = mpc(z0)
        z1 = mpc(z1)
        seg = integrate_de(
            lambda u, z0=z0, z1=z1: f(z0 + (z1 - z0) * (u + 1) / 2) * (z1 - z0) / 2,
            (-1, 1),
            ctx,
            singularity_class,
        )
        total = seg if total is None else total + seg
    return total


def integrate_vertical(
    f,
    z0,
    ctx: PrecisionContext = DEFAULT_CTX,
    decay_rate=None,
    tail_coefficient=240,
    weight_degree: int = 2,
):
    """Integral of f along the upward ray [z0, z0 + i*inf).

    The integrand must decay like tail_coefficient * exp(-decay_rate * Im w)
    times a polynomial of degree weight_degree; the ray is truncated at a
    height H making the analytic tail bound smaller than the working
    resolution, and the finite segment goes through integrate_de.
    """
    wd = ctx.working_digits
    with ctx.workdps():
        z0 = mpc(z0)
        rate = mpf(decay_rate) if decay_rate is not None else 2 * mp.pi
        H = (wd + 8) * mp.log(10) / rate
        for _ in range(4):
            bound = tail_coefficient * mp.exp(-rate * H) * (abs(z0) + H + 1) ** weight_degree
            if bound <= mpf(10) ** (-wd):
                break
            H += mp.log(10) * 4 / rate
    return integrate_path(lambda w: f(w), [z0, z0 + mpc(0, 1) * H], ctx)
