"""Abstract syntax for typed higher-order formulas and the untyped set language.

Terms carry an optional TypeIndex; None marks terms of the untyped
set-theoretic language.  Sugar nodes hold every defined symbol; they are
eliminable via hotk.kernel.expand.  All nodes are immutable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple, Union

from hotk.errors import SubstitutionError
from hotk.kernel.indices import TypeIndex


# ---------------------------------------------------------------------------
# Terms

@dataclass(frozen=True)
class Var:
    name: str
    index: Optional[TypeIndex]


@dataclass(frozen=True)
class Const:
    name: str
    index: Optional[TypeIndex]


@dataclass(frozen=True)
class Raised:
    """The up(...) term former of the raised-type theory; type = succ(inner)."""
    inner: "Term"


Term = Union[Var, Const, Raised]


def term_index(t: Term) -> Optional[TypeIndex]:
    if isinstance(t, Raised):
        inner = term_index(t.inner)
        return None if inner is None else inner.succ()
    return t.index


def base_atom(t: Term) -> Union[Var, Const]:
    """Strip Raised wrappers down to the underlying variable/constant."""
    while isinstance(t, Raised):
        t = t.inner
    return t


def raise_term(t: Term, times: int) -> Term:
    for _ in range(times):
        t = Raised(t)
    return t


# ---------------------------------------------------------------------------
# Formulas

@dataclass(frozen=True)
class Apply:
    head: Term
    arg: Term


@dataclass(frozen=True)
class StrictEq:
    left: Term
    right: Term


@dataclass(frozen=True)
class DownRel:
    """left dn right: left projects down to right (types n+1 over n, n >= 1)."""
    left: Term
    right: Term


@dataclass(frozen=True)
class InSet:
    """Primitive membership of the untyped set-theoretic language."""
    left: Term
    right: Term


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Iff:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Forall:
    var: Var
    body: "Formula"


@dataclass(frozen=True)
class Exists:
    var: Var
    body: "Formula"


# Sugar kinds: eq, in, coext, coext_k, downeq, bounded, subset, level,
# history, rank.  Arguments per kind:
#   eq/in/coext/subset/downeq: (left, right)
#   coext_k:  (k, left, right)
#   bounded:  (quant, var, rel, bound, body)   quant in {all, some}, rel in {eq, in, dn}
#   level/history: (term,)
#   rank:     (term, level)   "level is the in-least level including term"
@dataclass(frozen=True)
class Sugar:
    kind: str
    args: Tuple


Formula = Union[Apply, StrictEq, DownRel, InSet, Not, And, Or, Implies, Iff,
                Forall, Exists, Sugar]

BINARY = (And, Or, Implies, Iff)
QUANTIFIERS = (Forall, Exists)


def subformulas(f: Formula):
    yield f
    if isinstance(f, Not):
        yield from subformulas(f.body)
    elif isinstance(f, BINARY):
        yield from subformulas(f.left)
        yield from subformulas(f.right)
    elif isinstance(f, QUANTIFIERS):
        yield from subformulas(f.body)
    elif isinstance(f, Sugar):
        for a in f.args:
            if isinstance(a, (Apply, StrictEq, DownRel, InSet, Not, And, Or,
                              Implies, Iff, Forall, Exists, Sugar)):
                yield from subformulas(a)


def _terms_of(f: Formula):
    if isinstance(f, (Apply,)):
        yield f.head
        yield f.arg
    elif isinstance(f, (StrictEq, DownRel, InSet)):
        yield f.left
        yield f.right
    elif isinstance(f, Sugar):
        for a in f.args:
            if isinstance(a, (Var, Const, Raised)):
                yield a


def free_atoms(f: Formula) -> frozenset:
    """Free variables and constants of f (Raised wrappers stripped)."""
    def go(g: Formula, bound: frozenset) -> frozenset:
        if isinstance(g, Not):
            return go(g.body, bound)
        if isinstance(g, BINARY):
            return go(g.left, bound) | go(g.right, bound)
        if isinstance(g, Forall) or isinstance(g, Exists):
            return go(g.body, bound | {(g.var.name, g.var.index)})
        if isinstance(g, Sugar) and g.kind == "bounded":
            quant, var, rel, bnd, body = g.args
            out = _atom_free(bnd, bound)
            return out | go(body, bound | {(var.name, var.index)})
        out = frozenset()
        if isinstance(g, Sugar):
            for a in g.args:
                if isinstance(a, (Var, Const, Raised)):
                    out |= _atom_free(a, bound)
                elif not isinstance(a, (int, str)):
                    out |= go(a, bound)
            return out
        for t in _terms_of(g):
            out |= _atom_free(t, bound)
        return out

    def _atom_free(t: Term, bound: frozenset) -> frozenset:
        a = base_atom(t)
        if isinstance(a, Var) and (a.name, a.index) in bound:
            return frozenset()
        return frozenset([a])

    return go(f, frozenset())


def free_names(f: Formula) -> frozenset:
    return frozenset(a.name for a in free_atoms(f))


def all_names(f: Formula) -> frozenset:
    """Every variable/constant name occurring in f, bound or free."""
    names = set()

    def go(g):
        if isinstance(g, Not):
            go(g.body)
        elif isinstance(g, BINARY):
            go(g.left)
            go(g.right)
        elif isinstance(g, QUANTIFIERS):
            names.add(g.var.name)
            go(g.body)
        elif isinstance(g, Sugar):
            if g.kind == "bounded":
                quant, var, rel, bnd, body = g.args
                names.add(var.name)
                names.add(base_atom(bnd).name)
                go(body)
            else:
                for a in g.args:
                    if isinstance(a, (Var, Const, Raised)):
                        names.add(base_atom(a).name)
                    elif not isinstance(a, (int, str)):
                        go(a)
        else:
            for t in _terms_of(g):
                names.add(base_atom(t).name)

    go(f)
    return frozenset(names)


def fresh_name(stem: str, used) -> str:
    i = 1
    while f"{stem}{i}" in used:
        i += 1
    return f"{stem}{i}"


def _subst_term(t: Term, var: Var, repl: Term) -> Term:
    if isinstance(t, Raised):
        return Raised(_subst_term(t.inner, var, repl))
    if isinstance(t, Var) and t.name == var.name and t.index == var.index:
        return repl
    return t


def substitute(f: Formula, var: Var, repl: Term, strict_type: bool = True) -> Formula:
    """Capture-avoiding substitution of repl for free occurrences of var.

    strict_type=True insists the replacement has the variable's type; the
    quantifier rules of the cumulative regimes pass strict_type=False and
    enforce their own discipline.
    """
    if strict_type and term_index(repl) != var.index:
        raise SubstitutionError(
            f"cannot substitute term of type {term_index(repl)} for {var.name}^{var.index}")
    repl_names = {base_atom(repl).name}

    def go(g: Formula) -> Formula:
        if isinstance(g, Apply):
            return Apply(_subst_term(g.head, var, repl), _subst_term(g.arg, var, repl))
        if isinstance(g, StrictEq):
            return StrictEq(_subst_term(g.left, var, repl), _subst_term(g.right, var, repl))
        if isinstance(g, DownRel):
            return DownRel(_subst_term(g.left, var, repl), _subst_term(g.right, var, repl))
        if isinstance(g, InSet):
            return InSet(_subst_term(g.left, var, repl), _subst_term(g.right, var, repl))
        if isinstance(g, Not):
            return Not(go(g.body))
        if isinstance(g, BINARY):
            return type(g)(go(g.left), go(g.right))
        if isinstance(g, QUANTIFIERS):
            if g.var.name == var.name and g.var.index == var.index:
                return g
            if g.var.name in repl_names and var.name in free_names(g.body):
                renamed = Var(fresh_name("r", all_names(g.body) | repl_names), g.var.index)
                body = substitute(g.body, g.var, renamed, strict_type=False)
                return type(g)(renamed, go(body))
            return type(g)(g.var, go(g.body))
        if isinstance(g, Sugar):
            if g.kind == "bounded":
                quant, bvar, rel, bnd, body = g.args
                bnd2 = _subst_term(bnd, var, repl)
                if bvar.name == var.name and bvar.index == var.index:
                    return Sugar("bounded", (quant, bvar, rel, bnd2, body))
                if bvar.name in repl_names and var.name in free_names(body):
                    renamed = Var(fresh_name("r", all_names(body) | repl_names), bvar.index)
                    body = substitute(body, bvar, renamed, strict_type=False)
                    bvar = renamed
                return Sugar("bounded", (quant, bvar, rel, bnd2, go(body)))
            new_args = []
            for a in g.args:
                if isinstance(a, (Var, Const, Raised)):
                    new_args.append(_subst_term(a, var, repl))
                elif isinstance(a, (int, str)):
                    new_args.append(a)
                else:
                    new_args.append(go(a))
            return Sugar(g.kind, tuple(new_args))
        raise TypeError(f"unknown formula node {g!r}")

    return go(f)


def alpha_normalize(f: Formula) -> Formula:
    """Rename bound variables canonically (v1, v2, ... in binder order).

    Alpha-equivalent formulas become structurally equal; canonical names
    skip anything occurring free so no capture is possible.
    """
    taken = free_names(f)
    counter = [0]

    def next_var(index) -> Var:
        while True:
            counter[0] += 1
            name = f"v{counter[0]}"
            if name not in taken:
                return Var(name, index)

    def go(g: Formula, env: dict) -> Formula:
        if isinstance(g, (Apply, StrictEq, DownRel, InSet)):
            return _map_terms(g, env)
        if isinstance(g, Not):
            return Not(go(g.body, env))
        if isinstance(g, BINARY):
            return type(g)(go(g.left, env), go(g.right, env))
        if isinstance(g, QUANTIFIERS):
            fresh = next_var(g.var.index)
            env2 = dict(env)
            env2[(g.var.name, g.var.index)] = fresh
            return type(g)(fresh, go(g.body, env2))
        if isinstance(g, Sugar):
            if g.kind == "bounded":
                quant, bvar, rel, bnd, body = g.args
                bnd2 = _ren_term(bnd, env)
                fresh = next_var(bvar.index)
                env2 = dict(env)
                env2[(bvar.name, bvar.index)] = fresh
                return Sugar("bounded", (quant, fresh, rel, bnd2, go(body, env2)))
            new_args = []
            for a in g.args:
                if isinstance(a, (Var, Const, Raised)):
                    new_args.append(_ren_term(a, env))
                elif isinstance(a, (int, str)):
                    new_args.append(a)
                else:
                    new_args.append(go(a, env))
            return Sugar(g.kind, tuple(new_args))
        raise TypeError(f"unknown formula node {g!r}")

    def _ren_term(t: Term, env: dict) -> Term:
        if isinstance(t, Raised):
            return Raised(_ren_term(t.inner, env))
        if isinstance(t, Var) and (t.name, t.index) in env:
            return env[(t.name, t.index)]
        return t

    def _map_terms(g, env):
        if isinstance(g, Apply):
            return Apply(_ren_term(g.head, env), _ren_term(g.arg, env))
        return type(g)(_ren_term(g.left, env), _ren_term(g.right, env))

    return go(f, {})


def alpha_equal(f: Formula, g: Formula) -> bool:
    return alpha_normalize(f) == alpha_normalize(g)
