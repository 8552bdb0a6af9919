"""Expansion of every defined symbol into primitive notation.

Typed sugars bottom out in Apply/StrictEq/DownRel; the set-theoretic
macros of the untyped language bottom out in primitive membership.  The
defined identity at types (a, b) quantifies at max(a, b)+1, and defined
membership nests a second quantifier one higher, so expansion is where the
"+2 below the bound" requirement comes from.
"""

from __future__ import annotations

from typing import Optional

from hotk.errors import FormationError
from hotk.kernel import regimes as rg
from hotk.kernel.formation import sugar_violation
from hotk.kernel.indices import TypeIndex, max_index
from hotk.kernel.syntax import (And, Apply, DownRel, Exists, Forall, Formula,
                                Iff, Implies, InSet, Not, Or, StrictEq, Sugar,
                                Term, Var, all_names, term_index)


class _Fresh:
    def __init__(self, used):
        self.used = set(used)
        self.n = 0

    def var(self, index: Optional[TypeIndex]) -> Var:
        while True:
            self.n += 1
            name = f"v{self.n}"
            if name not in self.used:
                self.used.add(name)
                return Var(name, index)


def _member(left: Term, right: Term) -> Formula:
    """Ambient membership: defined membership when typed, primitive when not."""
    if term_index(left) is None:
        return InSet(left, right)
    return Sugar("in", (left, right))


def _conj(parts):
    parts = list(parts)
    if not parts:
        raise ValueError("empty conjunction")
    out = parts[-1]
    for p in reversed(parts[:-1]):
        out = And(p, out)
    return out


def _one_step(f: Sugar, fresh: _Fresh) -> Formula:
    k = f.kind
    if k == "eq":
        l, r = f.args
        gamma = max_index(term_index(l), term_index(r)).succ()
        x = fresh.var(gamma)
        return Forall(x, Iff(Apply(x, l), Apply(x, r)))
    if k == "in":
        l, r = f.args
        gamma = max_index(term_index(l), term_index(r)).succ()
        x = fresh.var(gamma)
        return Exists(x, And(Sugar("eq", (x, r)), Apply(x, l)))
    if k == "coext":
        l, r = f.args
        x = fresh.var(term_index(l).pred())
        return Forall(x, Iff(Apply(l, x), Apply(r, x)))
    if k == "coext_k":
        n, l, r = f.args
        conjuncts = []
        for i in range(n - 1, -1, -1):
            x = fresh.var(TypeIndex(0, i))
            conjuncts.append(Forall(x, Iff(Apply(l, x), Apply(r, x))))
        return _conj(conjuncts)
    if k == "downeq":
        l, r = f.args
        n = term_index(l)
        if n == TypeIndex(0, 1):
            return StrictEq(l, l)   # stipulated vacuous truth at type 1
        x = fresh.var(n.pred())
        return Forall(x, Iff(DownRel(l, x), DownRel(r, x)))
    if k == "bounded":
        quant, var, rel, bound, body = f.args
        if rel == "eq":
            atom: Formula = Sugar("eq", (var, bound))
        elif rel == "in":
            atom = _member(var, bound)
        else:
            atom = DownRel(var, bound)
        if quant == "all":
            return Forall(var, Implies(atom, body))
        return Exists(var, And(atom, body))
    if k == "subset":
        l, r = f.args
        v = fresh.var(term_index(l))
        return Forall(v, Implies(_member(v, l), _member(v, r)))
    if k == "history":
        (h,) = f.args
        idx = term_index(h)
        a, x, c = fresh.var(idx), fresh.var(idx), fresh.var(idx)
        inner = Exists(c, And(_member(c, h),
                              And(Sugar("subset", (x, c)), _member(c, a))))
        return Forall(a, Implies(_member(a, h),
                                 Forall(x, Iff(_member(x, a), inner))))
    if k == "level":
        (s,) = f.args
        idx = term_index(s)
        h, x, c = fresh.var(idx), fresh.var(idx), fresh.var(idx)
        body = Forall(x, Iff(_member(x, s),
                             Exists(c, And(Sugar("subset", (x, c)), _member(c, h)))))
        return Exists(h, And(Sugar("history", (h,)), body))
    if k == "rank":
        a, s = f.args
        idx = term_index(s)
        r = fresh.var(idx)
        least = Forall(r, Implies(_member(r, s),
                                  Implies(Sugar("level", (r,)),
                                          Not(Sugar("subset", (a, r))))))
        return And(Sugar("level", (s,)),
                   And(Sugar("subset", (a, s)), least))
    raise TypeError(f"unknown sugar kind {k!r}")


def expand_abbreviations(f: Formula, regime: Optional[rg.Regime] = None,
                         _fresh: Optional[_Fresh] = None) -> Formula:
    """Eliminate sugar nodes, innermost first.

    With a regime, each sugar's side-condition is enforced before it is
    rewritten; regime=None expands permissively (model evaluation uses
    this, since bundled models answer liberal queries anyway).
    """
    fresh = _fresh if _fresh is not None else _Fresh(all_names(f))

    def go(g: Formula) -> Formula:
        if isinstance(g, (Apply, StrictEq, DownRel, InSet)):
            return g
        if isinstance(g, Not):
            return Not(go(g.body))
        if isinstance(g, (And, Or, Implies, Iff)):
            return type(g)(go(g.left), go(g.right))
        if isinstance(g, (Forall, Exists)):
            return type(g)(g.var, go(g.body))
        if isinstance(g, Sugar):
            if regime is not None:
                err = sugar_violation(g, regime)
                if err:
                    raise FormationError(err)
            if g.kind == "bounded":
                quant, var, rel, bound, body = g.args
                g = Sugar("bounded", (quant, var, rel, bound, go(body)))
            return go(_one_step(g, fresh))
        raise TypeError(f"unknown formula node {g!r}")

    return go(f)
