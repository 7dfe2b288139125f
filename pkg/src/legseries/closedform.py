"""Closed-form constant expressions and their two text grammars.

Right-hand sides of catalog identities live in a small expression language
over pi, gamma0, Catalan's constant, zeta/beta values, Gamma at rationals,
logs, square/cube roots and unit-circle dilogarithm parts.  Expressions are
nested tuples, e.g. ("mul", ("rat", 1, 2), ("pi",)).

Two parsers:

* prefix s-expressions for rhs fields:  (* 1/2 (log (- (sqrt 2) 1)))
* a tiny infix grammar for exact parameters:  "1/2 - 7/10*sqrt(2/5)"

Both produce the same tree shape, and eval_closed_form resolves a tree at
any precision context, so parameters stay exact until evaluation.
"""
from __future__ import annotations

import re
from fractions import Fraction

from mpmath import mp, mpf, mpc

from .context import PrecisionContext, DEFAULT_CTX
from .core import clausen_cl2, dirichlet_beta


def eval_closed_form(expr, ctx: PrecisionContext = DEFAULT_CTX):
    with ctx.workdps():
        return _ev(expr)


def _ev(e):
    if isinstance(e, (int, Fraction)):
        return mpf(e.numerator) / e.denominator if isinstance(e, Fraction) else mpf(e)
    tag = e[0]
    if tag == "int":
        return mpf(e[1])
    if tag == "rat":
        return mpf(e[1]) / e[2]
    if tag == "pi":
        return +mp.pi
    if tag == "euler_gamma":
        return +mp.euler
    if tag == "catalan":
        return +mp.catalan
    if tag == "imag":
        return mpc(0, 1)
    if tag == "add":
        return sum((_ev(x) for x in e[1:]), mpf(0))
    if tag == "mul":
        out = mpf(1)
        for x in e[1:]:
            out *= _ev(x)
        return out
    if tag == "sub":
        return _ev(e[1]) - _ev(e[2])
    if tag == "neg":
        return -_ev(e[1])
    if tag == "div":
        return _ev(e[1]) / _ev(e[2])
    if tag == "pow":
        b = _ev(e[1])
        x = e[2]
        if isinstance(x, tuple):
            x = _ev(x)
        elif isinstance(x, Fraction):
            x = mpf(x.numerator) / x.denominator
        return b**x
    if tag == "sqrt":
        return mp.sqrt(_ev(e[1]))
    if tag == "cbrt":
        return mp.cbrt(_ev(e[1]))
    if tag == "log":
        return mp.log(_ev(e[1]))
    if tag == "exp":
        return mp.exp(_ev(e[1]))
    if tag == "gamma_at":
        return mp.gamma(mpf(e[1].numerator) / e[1].denominator)
    if tag == "zeta":
        return mp.zeta(e[1])
    if tag == "beta":
        return dirichlet_beta(e[1], PrecisionContext(mp.dps, 10))
    if tag == "cl2":
        # Im Li_2(e^{i pi r}) for rational r
        r = e[1]
        return clausen_cl2(mp.pi * r.numerator / r.denominator,
                           PrecisionContext(mp.dps, 10))
    if tag == "li2re":
        r = e[1]
        theta = mp.pi * r.numerator / r.denominator
        theta = theta - 2 * mp.pi * mp.floor(theta / (2 * mp.pi))
        return mp.pi**2 / 6 - theta * (2 * mp.pi - theta) / 4
    raise ValueError(f"unknown expression node {e!r}")


# ---------------------------------------------------------------------------
# prefix (s-expression) parser for rhs fields
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\(|\)|[^\s()]+")

_NULLARY = {"pi": ("pi",), "gamma0": ("euler_gamma",), "catalan": ("catalan",)}
_OPS = {
    "+": "add", "*": "mul", "-": "sub", "/": "div", "^": "pow",
    "sqrt": "sqrt", "cbrt": "cbrt", "log": "log", "exp": "exp", "neg": "neg",
}
_RATIONAL_HEADS = {"gamma": "gamma_at", "cl2": "cl2", "li2re": "li2re"}
_INT_HEADS = {"zeta": "zeta", "beta": "beta"}


def parse_sexpr(text: str):
    tokens = _TOKEN.findall(text)
    pos = 0

    def parse():
        nonlocal pos
        tok = tokens[pos]
        pos += 1
        if tok == "(":
            head = tokens[pos]
            pos += 1
            args = []
            while tokens[pos] != ")":
                args.append(parse())
            pos += 1
            return _apply(head, args)
        if tok == ")":
            raise ValueError("unbalanced )")
        return _atom(tok)

    def _apply(head, args):
        if head in _OPS:
            tag = _OPS[head]
            if tag == "sub" and len(args) == 1:
                return ("neg", args[0])
            if tag in ("add", "mul"):
                return (tag, *args)
            if tag in ("sub", "div", "pow"):
                if len(args) != 2:
                    raise ValueError(f"{head} wants 2 arguments")
                return (tag, args[0], args[1])
            if len(args) != 1:
                raise ValueError(f"{head} wants 1 argument")
            return (tag, args[0])
        if head in _RATIONAL_HEADS:
            (a,) = args
            return (_RATIONAL_HEADS[head], _as_fraction(a))
        if head in _INT_HEADS:
            (a,) = args
            return (_INT_HEADS[head], _as_int(a))
        raise ValueError(f"unknown operator {head!r}")

    def _atom(tok):
        if tok in _NULLARY:
            return _NULLARY[tok]
        if "/" in tok:
            n, d = tok.split("/")
            return ("rat", int(n), int(d))
        return ("int", int(tok))

    out = parse()
    if pos != len(tokens):
        raise ValueError("trailing tokens in expression")
    return out


def _as_fraction(node) -> Fraction:
    if node[0] == "int":
        return Fraction(node[1])
    if node[0] == "rat":
        return Fraction(node[1], node[2])
    if node[0] == "neg":
        return -_as_fraction(node[1])
    raise ValueError(f"expected a rational literal, got {node!r}")


def _as_int(node) -> int:
    if node[0] == "int":
        return node[1]
    raise ValueError(f"expected an integer literal, got {node!r}")


# ---------------------------------------------------------------------------
# infix parser for exact surd parameters
# ---------------------------------------------------------------------------

_INFIX_TOKEN = re.compile(r"\d+|[A-Za-z_][A-Za-z_0-9]*|\*\*|[()+\-*/^,]|\S")


def parse_exact(text: str):
    """Parse "1/2 - 7/10*sqrt(2/5)" style exact parameter expressions."""
    tokens = _INFIX_TOKEN.findall(text)
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def eat(tok=None):
        nonlocal pos
        cur = peek()
        if tok is not None and cur != tok:
            raise ValueError(f"expected {tok!r}, found {cur!r}")
        pos += 1
        return cur

    def parse_sum():
        node = parse_product()
        while peek() in ("+", "-"):
            op = eat()
            rhs = parse_product()
            node = ("add", node, rhs) if op == "+" else ("sub", node, rhs)
        return node

    def parse_product():
        node = parse_power()
        while peek() in ("*", "/"):
            op = eat()
            rhs = parse_power()
            node = ("mul", node, rhs) if op == "*" else ("div", node, rhs)
        return node

    def parse_power():
        node = parse_unary()
        if peek() in ("^", "**"):
            eat()
            expo = parse_unary()
            return ("pow", node, expo)
        return node

    def parse_unary():
        if peek() == "-":
            eat()
            return ("neg", parse_unary())
        if peek() == "+":
            eat()
            return parse_unary()
        return parse_atom()

    def parse_atom():
        tok = eat()
        if tok == "(":
            node = parse_sum()
            eat(")")
            return node
        if tok in ("sqrt", "cbrt", "log", "exp"):
            eat("(")
            node = parse_sum()
            eat(")")
            return (tok, node)
        if tok == "gamma":
            eat("(")
            node = parse_sum()
            eat(")")
            return ("gamma_at", _as_fraction_infix(node))
        if tok in _NULLARY:
            return _NULLARY[tok]
        if tok == "i":
            return ("imag",)
        if tok and tok.isdigit():
            return ("int", int(tok))
        raise ValueError(f"unexpected token {tok!r}")

    out = parse_sum()
    if pos != len(tokens):
        raise ValueError(f"trailing tokens at {tokens[pos:]}")
    return out


def _as_fraction_infix(node) -> Fraction:
    if node[0] == "int":
        return Fraction(node[1])
    if node[0] == "div":
        return _as_fraction_infix(node[1]) / _as_fraction_infix(node[2])
    if node[0] == "neg":
        return -_as_fraction_infix(node[1])
    raise ValueError(f"gamma() wants a rational argument, got {node!r}")
