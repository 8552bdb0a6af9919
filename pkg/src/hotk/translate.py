"""The four translation schemes between theories, plus round-trip checking.

All translators expand defined symbols first and return primitive formulas;
the maps themselves only ever touch atoms, so the logical skeleton is
preserved.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from hotk.errors import FormationError
from hotk.kernel import regimes as rg
from hotk.kernel.expand import expand_abbreviations
from hotk.kernel.indices import TypeIndex, fin
from hotk.kernel.syntax import (And, Apply, DownRel, Exists, Forall, Formula,
                                Iff, Implies, InSet, Not, Or, Raised,
                                StrictEq, Sugar, Term, Var, alpha_normalize,
                                all_names, fresh_name, free_atoms, raise_term,
                                term_index)
from hotk.models.core import Assignment, Model, akey, eval_formula

_BINARY = (And, Or, Implies, Iff)
_QUANT = (Forall, Exists)


def _map_formula(f: Formula, atom_fn) -> Formula:
    """Rebuild f, sending every atom through atom_fn."""
    if isinstance(f, Not):
        return Not(_map_formula(f.body, atom_fn))
    if isinstance(f, _BINARY):
        return type(f)(_map_formula(f.left, atom_fn), _map_formula(f.right, atom_fn))
    if isinstance(f, _QUANT):
        return type(f)(f.var, _map_formula(f.body, atom_fn))
    return atom_fn(f)


# ---------------------------------------------------------------------------
# The superscripting translation from the set language into the cumulative
# theory: every variable gets the chosen type, membership becomes defined
# membership, identity becomes defined identity.

def kappa_translate(f: Formula, kappa: TypeIndex) -> Formula:
    def term(t: Term) -> Term:
        if isinstance(t, Raised):
            raise FormationError("raised term in a set-language formula")
        if t.index is not None:
            raise FormationError("input to the superscripting translation must be untyped")
        return type(t)(t.name, kappa)

    def go(g: Formula) -> Formula:
        if isinstance(g, InSet):
            return Sugar("in", (term(g.left), term(g.right)))
        if isinstance(g, StrictEq):
            return Sugar("eq", (term(g.left), term(g.right)))
        if isinstance(g, Not):
            return Not(go(g.body))
        if isinstance(g, _BINARY):
            return type(g)(go(g.left), go(g.right))
        if isinstance(g, _QUANT):
            return type(g)(Var(g.var.name, kappa), go(g.body))
        if isinstance(g, Sugar):
            k = g.kind
            if k == "bounded":
                quant, var, rel, bound, body = g.args
                if rel not in ("in",):
                    raise FormationError(f"{rel!r}-bounded quantifier in set language")
                return Sugar("bounded",
                             (quant, Var(var.name, kappa), "in", term(bound), go(body)))
            if k in ("subset", "level", "history", "rank"):
                return Sugar(k, tuple(term(a) for a in g.args))
            raise FormationError(f"sugar {k!r} has no place in the set language")
        if isinstance(g, (Apply, DownRel)):
            raise FormationError("typed atom in a set-language formula")
        raise TypeError(f"unknown formula node {g!r}")

    return go(f)


# ---------------------------------------------------------------------------
# Cumulative theory over finite types  <->  raised-type theory.

def ctt_to_sttu(f: Formula) -> Formula:
    """Wrap every application gap in raising: y^n(x^m) becomes y^n applied
    to x^m raised n-1-m times.  Finite types only."""
    f = expand_abbreviations(f, None)

    def atom(g: Formula) -> Formula:
        if isinstance(g, Apply):
            n, m = term_index(g.head), term_index(g.arg)
            if not (n.is_finite and m.is_finite):
                raise FormationError("the interpretation is defined on finite types only")
            gap = n.finite_value - 1 - m.finite_value
            if gap < 0:
                raise FormationError("liberal atom has no raised-type image")
            return Apply(g.head, raise_term(g.arg, gap))
        if isinstance(g, StrictEq):
            return g
        raise FormationError(f"unexpected atom {g!r} in the cumulative theory")

    return _map_formula(f, atom)


def sttu_to_ctt(f: Formula) -> Formula:
    """Raised terms denote the unique defined-identity copy one type up;
    the description is eliminated Russell-style inside its atom."""
    f = expand_abbreviations(f, None)
    used = set(all_names(f))

    def fresh(index) -> Var:
        name = fresh_name("w", used)
        used.add(name)
        return Var(name, index)

    def strip_one(t: Term):
        """Replace the innermost-leftmost Raised subterm by a variable."""
        if isinstance(t, Raised):
            if isinstance(t.inner, Raised):
                inner, var, core = strip_one(t.inner)
                return Raised(inner), var, core
            idx = term_index(t.inner).succ()
            var = fresh(idx)
            return var, var, t.inner
        return t, None, None

    def atom(g: Formula) -> Formula:
        if not isinstance(g, (Apply, StrictEq)):
            raise FormationError(f"unexpected atom {g!r} in the raised-type theory")
        terms = ((g.head, g.arg) if isinstance(g, Apply)
                 else (g.left, g.right))
        for pos, t in enumerate(terms):
            stripped, var, core = strip_one(t)
            if var is None:
                continue
            new_terms = list(terms)
            new_terms[pos] = stripped
            inner = type(g)(*new_terms)
            u = fresh(var.index)
            uniq = Forall(u, Implies(Sugar("eq", (core, u)), StrictEq(u, var)))
            return Exists(var, And(Sugar("eq", (core, var)),
                                   And(uniq, atom(inner))))
        return g

    return expand_abbreviations(_map_formula(f, atom), None)


# ---------------------------------------------------------------------------
# Finitary cumulative-formation theory  <->  projection theory.

def fjt_to_sttd(f: Formula) -> Formula:
    """Applications with a gap become universally guarded projection chains."""
    f = expand_abbreviations(f, None)
    used = set(all_names(f))

    def atom(g: Formula) -> Formula:
        if isinstance(g, StrictEq):
            return g
        if not isinstance(g, Apply):
            raise FormationError(f"unexpected atom {g!r} in the finitary theory")
        n, m = term_index(g.head), term_index(g.arg)
        if not (n.is_finite and m.is_finite):
            raise FormationError("finitary theory admits finite types only")
        n, m = n.finite_value, m.finite_value
        if n == m + 1:
            return g
        if n <= m:
            raise FormationError("liberal atom has no projection image")
        chain_vars = []
        for k in range(n - 1, m, -1):
            name = fresh_name(f"y{k}_", used)
            used.add(name)
            chain_vars.append(Var(name, fin(k)))
        links = []
        prev: Term = g.head
        for v in chain_vars:
            links.append(DownRel(prev, v))
            prev = v
        guard = links[-1]
        for l in reversed(links[:-1]):
            guard = And(l, guard)
        body: Formula = Implies(guard, Apply(chain_vars[-1], g.arg))
        for v in reversed(chain_vars):
            body = Forall(v, body)
        return body

    return _map_formula(f, atom)


def sttd_to_fjt(f: Formula) -> Formula:
    """Projection atoms become bounded coextensiveness one level down."""
    f = expand_abbreviations(f, None)

    def atom(g: Formula) -> Formula:
        if isinstance(g, DownRel):
            n = term_index(g.right).finite_value
            return Sugar("coext_k", (n, g.left, g.right))
        if isinstance(g, (Apply, StrictEq)):
            return g
        raise FormationError(f"unexpected atom {g!r} in the projection theory")

    return expand_abbreviations(_map_formula(f, atom), None)


# ---------------------------------------------------------------------------
# Translation maps as data, plus round-trip checking.

KAPPA = "kappa"
I_CTT_TO_STTU = "i-ctt-sttu"
J_STTU_TO_CTT = "j-sttu-ctt"
I_FJT_TO_STTD = "i-fjt-sttd"
J_STTD_TO_FJT = "j-sttd-fjt"


@dataclass(frozen=True)
class TranslationMap:
    name: str
    kappa: Optional[TypeIndex] = None

    @property
    def source_regime(self) -> Optional[rg.Regime]:
        return {KAPPA: None,
                I_CTT_TO_STTU: rg.ctt(),
                J_STTU_TO_CTT: rg.stt_up(),
                I_FJT_TO_STTD: rg.fjt(),
                J_STTD_TO_FJT: rg.stt_down()}[self.name]

    @property
    def target_regime(self) -> rg.Regime:
        return {KAPPA: rg.ctt(),
                I_CTT_TO_STTU: rg.stt_up(),
                J_STTU_TO_CTT: rg.ctt(),
                I_FJT_TO_STTD: rg.stt_down(),
                J_STTD_TO_FJT: rg.fjt()}[self.name]

    def apply(self, f: Formula) -> Formula:
        if self.name == KAPPA:
            return kappa_translate(f, self.kappa)
        return {I_CTT_TO_STTU: ctt_to_sttu,
                J_STTU_TO_CTT: sttu_to_ctt,
                I_FJT_TO_STTD: fjt_to_sttd,
                J_STTD_TO_FJT: sttd_to_fjt}[self.name](f)


def parse_map(text: str) -> TranslationMap:
    from hotk.kernel.indices import parse_index
    s = text.strip().lower()
    if s.startswith("kappa:"):
        return TranslationMap(KAPPA, parse_index(s.split(":", 1)[1]))
    if s in (I_CTT_TO_STTU, J_STTU_TO_CTT, I_FJT_TO_STTD, J_STTD_TO_FJT):
        return TranslationMap(s)
    raise FormationError(f"unknown translation map {text!r}")


_ROUNDTRIPS = {
    rg.CTT_STRINGENT: (ctt_to_sttu, sttu_to_ctt),
    rg.STT_UP: (sttu_to_ctt, ctt_to_sttu),
    rg.FJT: (fjt_to_sttd, sttd_to_fjt),
    rg.STT_DOWN: (sttd_to_fjt, fjt_to_sttd),
}


@dataclass
class RoundTripReport:
    regime_kind: str
    syntactic_equal: bool
    semantic_equivalent: Optional[bool]
    assignments_checked: int
    counterexample: Optional[dict] = None


def all_assignments(m: Model, atoms) -> Iterable[Assignment]:
    atoms = sorted(atoms, key=lambda a: (str(a.index), a.name))
    if not atoms:
        yield {}
        return

    def go(i: int, env: Assignment):
        if i == len(atoms):
            yield dict(env)
            return
        a = atoms[i]
        for e in m.domain(a.index):
            env[akey(a)] = e
            yield from go(i + 1, env)
        env.pop(akey(a), None)

    yield from go(0, {})


def roundtrip_check(f: Formula, source: rg.Regime,
                    model: Optional[Model] = None) -> RoundTripReport:
    """Check the there-and-back image of f both syntactically (after
    expansion and renaming) and semantically (same truth value under every
    assignment in the reference model)."""
    if source.kind not in _ROUNDTRIPS:
        raise FormationError(f"no round trip from regime {source}")
    there, back = _ROUNDTRIPS[source.kind]
    image = back(there(f))
    original = expand_abbreviations(f, None)
    syntactic = alpha_normalize(image) == alpha_normalize(original)
    if model is None:
        return RoundTripReport(source.kind, syntactic, None, 0)
    checked = 0
    for env in all_assignments(model, free_atoms(original)):
        checked += 1
        a = eval_formula(model, original, env)
        b = eval_formula(model, image, env)
        if a != b:
            return RoundTripReport(
                source.kind, syntactic, False, checked,
                counterexample={f"{k[0]}^{k[1]}": v for k, v in env.items()})
    return RoundTripReport(source.kind, syntactic, True, checked)
