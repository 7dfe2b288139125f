"""Machine-readable identity catalog.

Records live in data/catalog.txt as blank-line-separated blocks of
"key: value" lines with fields {id, family, params, rhs, tags, digits,
note}.  Parameters are exact expression strings (tiny infix grammar:
integers, rationals, sqrt/cbrt, arithmetic, the imaginary unit), so
catalog precision is unlimited; rhs is a prefix (s-expression) closed
form, or the word "internal" when the family evaluator produces both
sides itself.

The loader is strict: unknown keys, duplicate ids or unparsable fields
raise immediately.  Serialization is exactly the original text, so the
file -> records -> file round trip is byte-identical.
"""
from __future__ import annotations

import importlib.resources
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

from mpmath import mp, mpf, mpc

from .context import PrecisionContext
from .closedform import eval_closed_form, parse_exact, parse_sexpr
from .core import to_mp
from .errors import EvaluationError

_FIELDS = ("id", "family", "tags", "digits", "params", "rhs", "note")


@dataclass(frozen=True)
class Identity:
    id: str
    family: str
    params: Dict[str, str]
    rhs: str
    tags: Tuple[str, ...] = ()
    default_digits: int = 30
    note: str = ""
    raw: str = ""

    def param_value(self, key: str, ctx: PrecisionContext):
        """Exact parameter evaluated at context precision."""
        return eval_closed_form(parse_exact(self.params[key]), ctx)

    def param_fraction(self, key: str) -> Fraction:
        return _parse_fraction(self.params[key])

    def param_int(self, key: str) -> int:
        return int(self.params[key])


def _parse_fraction(s: str) -> Fraction:
    s = s.strip()
    if "/" in s:
        n, d = s.split("/")
        return Fraction(int(n), int(d))
    return Fraction(int(s))


def parse_catalog(text: str) -> List[Identity]:
    records = []
    seen = set()
    for block in text.split("\n\n"):
        block = block.strip("\n")
        if not block.strip() or all(ln.startswith("#") for ln in block.splitlines()):
            continue
        fields = {}
        for line in block.splitlines():
            if line.startswith("#") or not line.strip():
                continue
            key, _, value = line.partition(":")
            key = key.strip()
            if key not in _FIELDS:
                raise ValueError(f"unknown catalog key {key!r} in block:\n{block}")
            if key in fields:
                raise ValueError(f"duplicate key {key!r} in record")
            fields[key] = value.strip()
        ident = fields.get("id")
        if not ident:
            raise ValueError(f"record without id:\n{block}")
        if ident in seen:
            raise ValueError(f"duplicate identity id {ident!r}")
        seen.add(ident)
        params = {}
        for piece in fields.get("params", "").split(";"):
            piece = piece.strip()
            if not piece:
                continue
            k, _, v = piece.partition("=")
            params[k.strip()] = v.strip()
        records.append(Identity(
            id=ident,
            family=fields.get("family", "generic"),
            params=params,
            rhs=fields.get("rhs", "internal"),
            tags=tuple(fields.get("tags", "").split()),
            default_digits=int(fields.get("digits", "30")),
            note=fields.get("note", ""),
            raw=block,
        ))
    return records


def serialize_catalog(records: List[Identity]) -> str:
    return "\n\n".join(r.raw for r in records) + "\n"


_CATALOG_CACHE: Optional[List[Identity]] = None


def load_catalog(path: Optional[str] = None) -> List[Identity]:
    global _CATALOG_CACHE
    if path is not None:
        with open(path, "r", encoding="utf-8") as fh:
            return parse_catalog(fh.read())
    if _CATALOG_CACHE is None:
        text = importlib.resources.files("legseries").joinpath(
            "data/catalog.txt").read_text(encoding="utf-8")
        _CATALOG_CACHE = parse_catalog(text)
    return _CATALOG_CACHE


def catalog_by_id(path: Optional[str] = None) -> Dict[str, Identity]:
    return {r.id: r for r in load_catalog(path)}


# ---------------------------------------------------------------------------
# family evaluators: (identity, ctx) -> (lhs, rhs or None)
# ---------------------------------------------------------------------------

def _eval_LS(ident: Identity, ctx):
    from .families import family_LS
    nu = ident.param_fraction("nu")
    t = ident.param_value("t", ctx)
    tilde = ident.params.get("tilde", "0") == "1"
    lhs, _ = family_LS(nu, t, tilde=tilde, ctx=ctx)
    return lhs, None


def _eval_sigma163(ident: Identity, ctx):
    from .families import family_Sigma, NU_SIXTH
    a = int(ident.params["a"])
    b = int(ident.params["b"])
    X = _parse_fraction(ident.params["X"])
    kind = ident.params["kind"]
    if kind == "pi":
        lhs = family_Sigma(NU_SIXTH, a, b, X, None, ctx)
    elif kind == "sun":
        lhs = family_Sigma(NU_SIXTH, a, b, X, "c", ctx) \
            + family_Sigma(NU_SIXTH, 0, a, X, None, ctx)
    elif kind == "au":
        lhs = family_Sigma(NU_SIXTH, a, b, X, "c2d", ctx) \
            + family_Sigma(NU_SIXTH, 0, 2 * a, X, "c", ctx)
    else:
        raise ValueError(kind)
    return lhs, None


def _eval_r163(ident: Identity, ctx):
    from .modular import ramanujan_R
    from .families import NU_SIXTH
    with ctx.workdps():
        z = (1 + mpc(0, 1) * mp.sqrt(163)) / 2
        return ramanujan_R(NU_SIXTH, z=z, ctx=ctx), None


def _eval_table1(ident: Identity, ctx):
    from .rows import table1_lhs
    return table1_lhs(ident.param_int("n"), ctx), None


def _eval_chu(ident: Identity, ctx):
    from .rows import chu_lhs
    return chu_lhs(ctx), None


def _eval_cc(ident: Identity, ctx):
    from .rows import cc_internal
    return cc_internal(ctx)


def _eval_cor25a(ident: Identity, ctx):
    from .rows import cor_binom_a
    return cor_binom_a(ident.param_fraction("nu"), ident.param_int("m"), ctx)


def _eval_cor25b(ident: Identity, ctx):
    from .rows import cor_binom_b
    return cor_binom_b(ident.param_fraction("nu"), ident.param_int("m"), ctx)


def _eval_cor26(ident: Identity, ctx):
    from .rows import cor_harmonic_lhs
    return cor_harmonic_lhs(ident.param_fraction("nu"), ctx), None


def _eval_cor35(ident: Identity, ctx):
    from .rows import int2pnu
    nu_s = ident.params["nu"]
    try:
        nu = _parse_fraction(nu_s)
    except ValueError:
        nu = ident.param_value("nu", ctx)
    return int2pnu(ident.param_int("which"), nu, ctx)


def _eval_table5(ident: Identity, ctx):
    from .rows import table5_lhs
    return table5_lhs(ident.param_int("n"), ctx), None


def _eval_table6(ident: Identity, ctx):
    from .rows import table6_lhs
    return table6_lhs(ident.param_int("n"), ctx), None


def _eval_eq117(ident: Identity, ctx):
    from .rows import quartic_inverse_4k1_lhs
    return quartic_inverse_4k1_lhs(ctx), None


def _eval_eq118(ident: Identity, ctx):
    from .rows import quartic_second_derivative_lhs
    return quartic_second_derivative_lhs(ctx), None


def _eval_table3_green(ident: Identity, ctx):
    from .modular import green_g2_integral
    N = ident.param_int("N")
    with ctx.workdps():
        z = ident.param_value("z", ctx)
        scale = ident.param_value("scale", ctx)
        return scale * green_g2_integral(N, z=z, ctx=ctx), None


def _eval_table3_series(ident: Identity, ctx):
    from .families import family_GS, NU_THIRD, NU_QUARTER, NU_SIXTH
    nu = {1: NU_SIXTH, 2: NU_QUARTER, 3: NU_THIRD}[ident.param_int("N")]
    with ctx.workdps():
        pref = ident.param_value("pref", ctx)
        w = ident.param_value("w", ctx)
        t1 = ident.param_value("t1", ctx)
        t2 = ident.param_value("t2", ctx)
        sub = ident.param_value("sub", ctx)
        s1, _ = family_GS(nu, t1, ctx, want_integral=False)
        s2, _ = family_GS(nu, t2, ctx, want_integral=False)
        return pref * (w * s1 + s2) - sub, None


def _eval_table4_epstein(ident: Identity, ctx):
    from .modular import epstein_level4
    with ctx.workdps():
        y = ident.param_value("y", ctx)
        z = mpf(-1) / 2 + mpc(0, 1) * y
        return epstein_level4(-1 / (4 * z), ctx), None


def _eval_table4_series(ident: Identity, ctx):
    from .families import family_SE
    with ctx.workdps():
        pref = ident.param_value("pref", ctx)
        w = ident.param_value("w", ctx)
        t1 = ident.param_value("t1", ctx)
        s1, _ = family_SE(t1, ctx, want_integral=False)
        if "t2" in ident.params:
            t2 = ident.param_value("t2", ctx)
            s2, _ = family_SE(t2, ctx, want_integral=False)
        else:
            s2 = mpf(0)
        return mpf(3) / 16 - pref * (w * s1 + s2), None


def _eval_eq114(ident: Identity, ctx):
    from .families import family_SE
    with ctx.workdps():
        s, _ = family_SE(mpf(1) / 2, ctx, want_integral=False)
        return mp.pi / 8 * s, None


def _eval_se_sumrule(ident: Identity, ctx):
    from .families import se_sum_rule
    t = ident.param_value("t", ctx)
    return se_sum_rule(t, ctx)


def _eval_gr_epstein(ident: Identity, ctx):
    from .families import family_GR
    with ctx.workdps():
        z = ident.param_value("z", ctx)
        return family_GR(ident.param_int("N"), z, ctx)


def _eval_gr_4f3(ident: Identity, ctx):
    from .families import gr_4f3
    with ctx.workdps():
        nu = ident.param_value("nu", ctx)
        t = ident.param_value("t", ctx)
        return gr_4f3(nu, t, ctx)


FAMILY_EVALUATORS: Dict[str, Callable] = {
    "LS": _eval_LS,
    "Sigma163": _eval_sigma163,
    "R163": _eval_r163,
    "table1": _eval_table1,
    "chu": _eval_chu,
    "cc_internal": _eval_cc,
    "cor25a": _eval_cor25a,
    "cor25b": _eval_cor25b,
    "cor26": _eval_cor26,
    "cor35": _eval_cor35,
    "table3_green": _eval_table3_green,
    "table3_series": _eval_table3_series,
    "table4_epstein": _eval_table4_epstein,
    "table4_series": _eval_table4_series,
    "table5": _eval_table5,
    "table6": _eval_table6,
    "eq114": _eval_eq114,
    "eq117": _eval_eq117,
    "eq118": _eval_eq118,
    "se_sumrule": _eval_se_sumrule,
    "gr_epstein": _eval_gr_epstein,
    "gr_4f3": _eval_gr_4f3,
}


def evaluate_identity(ident: Identity, ctx: PrecisionContext):
    """Both sides of a catalog identity at the given precision."""
    try:
        evaluator = FAMILY_EVALUATORS[ident.family]
        # the context wraps the whole evaluation so that glue arithmetic in
        # the evaluators (sums of family calls, parameter algebra) can never
        # run at a lower ambient precision
        with ctx.workdps():
            lhs, rhs = evaluator(ident, ctx)
            if ident.rhs != "internal":
                # an explicit cataloged closed form wins over the family's own
                rhs = eval_closed_form(parse_sexpr(ident.rhs), ctx)
            elif rhs is None:
                raise ValueError(f"{ident.id}: family gave no rhs and none cataloged")
        return lhs, rhs
    except Exception as exc:   # noqa: BLE001 - wrapped with identity id
        if isinstance(exc, EvaluationError):
            raise
        raise EvaluationError(ident.id, exc) from exc
