"""ASCII rendering of formulas; inverse of hotk.kernel.parser.

Precedence (loose to tight): quantifiers < "<->" < "->" < "|" < "&" < "~".
The binary connectives associate to the right; quantifier scope extends as
far right as possible.
"""

from __future__ import annotations

from hotk.kernel.syntax import (And, Apply, DownRel, Exists, Forall, Iff,
                                Implies, InSet, Not, Or, Raised, Sugar,
                                StrictEq, Term)

_PREC = {Iff: 1, Implies: 2, Or: 3, And: 4}
_OPS = {Iff: "<->", Implies: "->", Or: "|", And: "&"}


def print_term(t: Term) -> str:
    if isinstance(t, Raised):
        return f"up({print_term(t.inner)})"
    if t.index is None:
        return t.name
    idx = str(t.index)
    if not t.index.is_finite:
        idx = f"({idx})"
    return f"{t.name}^{idx}"


def _quant(word: str, var, body, bound=None) -> str:
    head = f"{word} {print_term(var)}"
    if bound is not None:
        rel, term = bound
        head += f" {rel} {print_term(term)}"
    return f"{head}. {_render(body, 0)}"


def _render(f, parent_prec: int) -> str:
    if isinstance(f, Apply):
        return f"{print_term(f.head)}({print_term(f.arg)})"
    if isinstance(f, StrictEq):
        return f"{print_term(f.left)} = {print_term(f.right)}"
    if isinstance(f, DownRel):
        return f"{print_term(f.left)} dn {print_term(f.right)}"
    if isinstance(f, InSet):
        return f"{print_term(f.left)} in {print_term(f.right)}"
    if isinstance(f, Not):
        return f"~{_render(f.body, 5)}"
    if isinstance(f, (And, Or, Implies, Iff)):
        prec = _PREC[type(f)]
        left = _render(f.left, prec + 1)   # right-assoc: left child binds tighter
        right = _render(f.right, prec)
        s = f"{left} {_OPS[type(f)]} {right}"
        return f"({s})" if prec < parent_prec else s
    if isinstance(f, Forall):
        s = _quant("all", f.var, f.body)
        return f"({s})" if parent_prec > 0 else s
    if isinstance(f, Exists):
        s = _quant("some", f.var, f.body)
        return f"({s})" if parent_prec > 0 else s
    if isinstance(f, Sugar):
        return _render_sugar(f, parent_prec)
    raise TypeError(f"unknown formula node {f!r}")


def _render_sugar(f: Sugar, parent_prec: int) -> str:
    k = f.kind
    if k in ("eq", "in", "coext", "downeq", "subset"):
        token = {"eq": "eq", "in": "in", "coext": "coext",
                 "downeq": "downeq", "subset": "sub"}[k]
        l, r = f.args
        return f"{print_term(l)} {token} {print_term(r)}"
    if k == "coext_k":
        n, l, r = f.args
        return f"{print_term(l)} coext_{n} {print_term(r)}"
    if k == "level":
        return f"Lev({print_term(f.args[0])})"
    if k == "history":
        return f"Hist({print_term(f.args[0])})"
    if k == "rank":
        a, s = f.args
        return f"Rank({print_term(a)}, {print_term(s)})"
    if k == "bounded":
        quant, var, rel, bound, body = f.args
        word = "all" if quant == "all" else "some"
        s = _quant(word, var, body, bound=(rel, bound))
        return f"({s})" if parent_prec > 0 else s
    raise TypeError(f"unknown sugar kind {k!r}")


def print_formula(f) -> str:
    return _render(f, 0)
