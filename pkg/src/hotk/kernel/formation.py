"""Formation checking for all six regimes.

Application gaps are the heart of it: standard regimes demand head type =
argument type + 1, the cumulative formation rules demand head > argument
(stringent) or nothing at all (liberal).  Sugar nodes are checked against
their own side-conditions before any expansion happens.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from hotk.kernel import regimes as rg
from hotk.kernel.indices import TypeIndex, max_index
from hotk.kernel.printer import print_formula, print_term
from hotk.kernel.syntax import (And, Apply, Const, DownRel, Exists, Forall,
                                Formula, Iff, Implies, InSet, Not, Or, Raised,
                                StrictEq, Sugar, Term, Var, term_index)


@dataclass(frozen=True)
class FormationVerdict:
    ok: bool
    reason: Optional[str] = None
    offender: Optional[str] = None

    def __bool__(self) -> bool:
        return self.ok


WELL_FORMED = FormationVerdict(True)


def _bad(reason: str, offender) -> FormationVerdict:
    if not isinstance(offender, str):
        try:
            offender = print_formula(offender)
        except TypeError:
            offender = print_term(offender)
    return FormationVerdict(False, reason, offender)


def _check_term(t: Term, regime: rg.Regime) -> Optional[FormationVerdict]:
    if isinstance(t, Raised):
        if regime.kind != rg.STT_UP:
            return _bad("up(...) terms exist only in the raised-type theory", t)
        return _check_term(t.inner, regime)
    if t.index is None:
        return _bad("untyped term in a typed regime", t)
    if not regime.admits_index(t.index):
        if regime.finite_only:
            return _bad(f"transfinite index {t.index} in a finite-type theory", t)
        return _bad(f"index {t.index} is not below the bound {regime.bound}", t)
    return None


def _apply_gap_ok(head: TypeIndex, arg: TypeIndex, regime: rg.Regime) -> Optional[str]:
    if regime.kind in (rg.STT, rg.STT_UP, rg.STT_DOWN):
        if head != arg.succ():
            gap = "transfinite" if not (head.is_finite and arg.is_finite) \
                else str(head.finite_value - arg.finite_value)
            return f"application gap {gap} != 1 (head {head} over argument {arg})"
        return None
    if regime.kind in (rg.CTT_STRINGENT, rg.FJT):
        if not head > arg:
            return f"head type {head} not above argument type {arg}"
        return None
    return None   # liberal: any pair


def sugar_violation(f: Sugar, regime: rg.Regime) -> Optional[str]:
    """Side-condition of a sugar node in the regime; None when satisfied."""
    k = f.kind
    if k in ("eq", "in"):
        a, b = (term_index(f.args[0]), term_index(f.args[1]))
        gamma = max_index(a, b).succ()
        if regime.kind in (rg.STT, rg.STT_UP, rg.STT_DOWN):
            if k == "in":
                return "defined membership is not available in standard-type regimes"
            if a != b:
                return f"defined identity needs equal types in this regime ({a} vs {b})"
            return None
        need = gamma if k == "eq" else gamma.succ()
        if regime.is_ctt and not regime.admits_index(need):
            return f"expansion needs type {need}, not below bound {regime.bound}"
        return None
    if k == "coext":
        a, b = (term_index(f.args[0]), term_index(f.args[1]))
        if a != b:
            return f"coextensiveness needs equal types ({a} vs {b})"
        if a == TypeIndex(0, 0):
            return "coextensiveness undefined at type 0"
        return None
    if k == "coext_k":
        n, l, r = f.args
        if regime.kind not in (rg.FJT, rg.CTT_STRINGENT, rg.CTT_LIBERAL):
            return "bounded coextensiveness lives in the cumulative-formation regimes"
        a, b = term_index(l), term_index(r)
        low = min((a, b))
        if n < 1 or TypeIndex(0, n) > low:
            return f"bound {n} must satisfy 1 <= {n} <= min({a}, {b})"
        return None
    if k == "downeq":
        if regime.kind != rg.STT_DOWN:
            return "downward-projection equivalence needs the projection theory"
        a, b = (term_index(f.args[0]), term_index(f.args[1]))
        if a != b or a == TypeIndex(0, 0):
            return f"projection equivalence needs equal types >= 1 ({a} vs {b})"
        return None
    if k == "bounded":
        quant, var, rel, bound, body = f.args
        if rel == "dn":
            if regime.kind != rg.STT_DOWN:
                return "dn-bounded quantifier needs the projection theory"
            a, b = term_index(var), term_index(bound)
            if b == TypeIndex(0, 0):
                return "no projection constant reaches type 0"
            if a != b.succ():
                return f"projection relates type n+1 to type n, got {a} over {b}"
            return None
        return sugar_violation(Sugar(rel, (var, bound)), regime)
    if k in ("subset", "level", "history", "rank"):
        idxs = [term_index(a) for a in f.args]
        if any(i is None for i in idxs):
            return None   # untyped set language: always fine
        if len(set(idxs)) != 1:
            return f"set-theoretic sugar needs one common type, got {idxs}"
        if regime.kind in (rg.STT, rg.STT_UP, rg.STT_DOWN):
            return "set-theoretic sugar expands through defined membership, unavailable here"
        kappa = idxs[0]
        if regime.is_ctt and not regime.admits_index(kappa.plus(2)):
            return f"expansion needs type {kappa.plus(2)}, not below bound {regime.bound}"
        return None
    raise TypeError(f"unknown sugar kind {k!r}")


def check_formation(f: Formula, regime: rg.Regime) -> FormationVerdict:
    """Verdict on f under the regime, locating the offending subformula."""
    if isinstance(f, Apply):
        for t in (f.head, f.arg):
            v = _check_term(t, regime)
            if v is not None:
                return v
        err = _apply_gap_ok(term_index(f.head), term_index(f.arg), regime)
        return _bad(err, f) if err else WELL_FORMED
    if isinstance(f, StrictEq):
        for t in (f.left, f.right):
            v = _check_term(t, regime)
            if v is not None:
                return v
        a, b = term_index(f.left), term_index(f.right)
        if a != b:
            return _bad(f"strict identity needs equal types ({a} vs {b})", f)
        return WELL_FORMED
    if isinstance(f, DownRel):
        if regime.kind != rg.STT_DOWN:
            return _bad("dn atoms exist only in the projection theory", f)
        for t in (f.left, f.right):
            v = _check_term(t, regime)
            if v is not None:
                return v
        a, b = term_index(f.left), term_index(f.right)
        if b == TypeIndex(0, 0):
            return _bad("no projection constant reaches type 0", f)
        if a != b.succ():
            return _bad(f"projection relates type n+1 to type n, got {a} over {b}", f)
        return WELL_FORMED
    if isinstance(f, InSet):
        return _bad("untyped membership atom in a typed regime", f)
    if isinstance(f, Not):
        return check_formation(f.body, regime)
    if isinstance(f, (And, Or, Implies, Iff)):
        v = check_formation(f.left, regime)
        if not v:
            return v
        return check_formation(f.right, regime)
    if isinstance(f, (Forall, Exists)):
        v = _check_term(f.var, regime)
        if v is not None:
            return v
        return check_formation(f.body, regime)
    if isinstance(f, Sugar):
        if f.kind == "bounded":
            quant, var, rel, bound, body = f.args
            for t in (var, bound):
                v = _check_term(t, regime)
                if v is not None:
                    return v
            err = sugar_violation(f, regime)
            if err:
                return _bad(err, f)
            return check_formation(body, regime)
        for a in f.args:
            if isinstance(a, (Var, Const, Raised)):
                v = _check_term(a, regime)
                if v is not None:
                    return v
        err = sugar_violation(f, regime)
        if err:
            return _bad(err, f)
        return WELL_FORMED
    raise TypeError(f"unknown formula node {f!r}")
