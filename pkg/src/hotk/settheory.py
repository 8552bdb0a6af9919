"""Level theory over finite membership graphs.

Histories, levels and rank are computed by brute force straight from their
defining formulas; the level theory LT (extensionality, separation,
stratification) and its extension Zr (endless, infinity) are checked on
graphs; transitive graphs convert to cumulative typed models and back via
the slice construction and Mostowski collapse.
"""

from __future__ import annotations

from itertools import chain, combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from hotk.errors import BudgetExceeded, EvalError, GraphError, RankUndefined
from hotk.graphs import MembershipGraph, brace_name, graph_from_sets
from hotk.kernel.expand import expand_abbreviations
from hotk.kernel.indices import fin, t_shunt
from hotk.kernel.syntax import (And, Exists, Forall, Formula, Iff, Implies,
                                InSet, Not, Or, StrictEq, Sugar, Var,
                                free_atoms, free_names)
from hotk.models.builders import DEFAULT_BUDGET
from hotk.models.core import Model, akey, eval_formula
from hotk.report import FAIL, PASS, SKIPPED, SuiteReport
from hotk.translate import kappa_translate


# ---------------------------------------------------------------------------
# The pure hierarchy as graphs.

def build_V(n: int, budget: int = DEFAULT_BUDGET) -> MembershipGraph:
    """Transitive graph of the pure hierarchy up to rank n (V_0 is empty)."""
    if n < 0:
        raise ValueError("n must be a natural")
    level: set = set()
    for _ in range(n):
        if 2 ** len(level) > budget:
            raise BudgetExceeded(f"powerset of {len(level)} sets exceeds budget")
        level = {frozenset(s) for s in _powerset(level)}
    collected = set()
    stack = list(level)
    while stack:
        s = stack.pop()
        if s in collected:
            continue
        collected.add(s)
        stack.extend(s)
    return graph_from_sets(collected)


def _powerset(items):
    items = list(items)
    return chain.from_iterable(combinations(items, r) for r in range(len(items) + 1))


# ---------------------------------------------------------------------------
# Histories, levels, rank (Definition-style brute force).

def is_history(g: MembershipGraph, h: str) -> bool:
    for a in g.members(h):
        for x in g.nodes:
            lhs = x in g.members(a)
            rhs = any(g.subset(x, c) and c in g.members(a) for c in g.members(h))
            if lhs != rhs:
                return False
    return True


def is_level(g: MembershipGraph, s: str) -> bool:
    for h in g.nodes:
        if not is_history(g, h):
            continue
        ok = True
        for x in g.nodes:
            lhs = x in g.members(s)
            rhs = any(g.subset(x, c) and c in g.members(h) for c in g.nodes)
            if lhs != rhs:
                ok = False
                break
        if ok:
            return True
    return False


def levels_of(g: MembershipGraph) -> List[str]:
    """All levels, sorted by member count (the in-order when B.3 holds)."""
    return sorted((s for s in g.nodes if is_level(g, s)),
                  key=lambda s: (len(g.members(s)), s))


def rank(g: MembershipGraph, a: str, levels: Optional[List[str]] = None) -> int:
    """Index of the in-least level including a as a subset: the number of
    levels that are members of it."""
    if a not in g.nodes:
        raise GraphError(f"no node {a!r}")
    if levels is None:
        levels = levels_of(g)
    best = None
    for s in levels:
        if g.subset(a, s):
            if best is None or g.members(s) < g.members(best):
                best = s
    if best is None:
        raise RankUndefined(f"no level includes {a!r} as a subset")
    return sum(1 for t in levels if t in g.members(best))


# ---------------------------------------------------------------------------
# The set-theoretic language: axiom formulas and evaluation over a graph.

def _v(name: str) -> Var:
    return Var(name, None)


def extensionality_formula() -> Formula:
    a, b, x = _v("a"), _v("b"), _v("x")
    return Forall(a, Forall(b, Implies(
        Forall(x, Iff(InSet(x, a), InSet(x, b))), StrictEq(a, b))))


def stratification_formula() -> Formula:
    a, s = _v("a"), _v("s")
    return Forall(a, Exists(s, And(Sugar("subset", (a, s)), Sugar("level", (s,)))))


def endless_formula() -> Formula:
    a, b = _v("a"), _v("b")
    return Forall(a, Exists(b, InSet(a, b)))


def infinity_formula() -> Formula:
    a, x, y = _v("a"), _v("x"), _v("y")
    return Exists(a, And(
        Exists(x, InSet(x, a)),
        Forall(x, Implies(InSet(x, a),
                          Exists(y, And(InSet(x, y), InSet(y, a)))))))


def separation_instance(phi: Formula, x: Var = None, a: Var = None) -> Formula:
    """For every a there is b holding exactly the members of a satisfying phi.

    phi's designated variable is x (default the free 'x'); its remaining
    free variables are closed universally as parameters.
    """
    x = x or _v("x")
    a = a or _v("a")
    names = free_names(phi)
    b = _v("b" if "b" not in names else "b0")
    body = Forall(a, Exists(b, Forall(
        x, Iff(InSet(x, b), And(phi, InSet(x, a))))))
    params = sorted(names - {x.name, a.name})
    for p in reversed(params):
        body = Forall(_v(p), body)
    return body


def eval_set_formula(g: MembershipGraph, f: Formula, env: Optional[dict] = None) -> bool:
    """Brute-force truth over g's nodes; quantifiers range over all nodes."""
    f = expand_abbreviations(f, None)
    env = dict(env) if env else {}
    memo: Dict[Tuple, bool] = {}
    fv_cache: Dict[int, frozenset] = {}

    def fv(node) -> frozenset:
        got = fv_cache.get(id(node))
        if got is None:
            got = frozenset(a.name for a in free_atoms(node))
            fv_cache[id(node)] = got
        return got

    def term(t, env):
        if t.name not in env:
            raise EvalError(f"unassigned set variable {t.name}")
        return env[t.name]

    def go(h: Formula, env: dict) -> bool:
        if isinstance(h, InSet):
            return term(h.left, env) in g.members(term(h.right, env))
        if isinstance(h, StrictEq):
            return term(h.left, env) == term(h.right, env)
        if isinstance(h, Not):
            return not go(h.body, env)
        if isinstance(h, And):
            return go(h.left, env) and go(h.right, env)
        if isinstance(h, Or):
            return go(h.left, env) or go(h.right, env)
        if isinstance(h, Implies):
            return (not go(h.left, env)) or go(h.right, env)
        if isinstance(h, Iff):
            return go(h.left, env) == go(h.right, env)
        if isinstance(h, (Forall, Exists)):
            free = fv(h)
            key = (id(h), tuple(sorted((k, v) for k, v in env.items() if k in free)))
            got = memo.get(key)
            if got is not None:
                return got
            is_all = isinstance(h, Forall)
            result = is_all
            for e in g.nodes:
                env2 = dict(env)
                env2[h.var.name] = e
                val = go(h.body, env2)
                if is_all and not val:
                    result = False
                    break
                if not is_all and val:
                    result = True
                    break
            memo[key] = result
            return result
        raise EvalError(f"cannot evaluate set formula node {h!r}")

    return go(f, {k if isinstance(k, str) else k[0]: v for k, v in env.items()})


# ---------------------------------------------------------------------------
# Axiom suites on graphs.

def check_set_axioms(g: MembershipGraph, which: str = "lt",
                     separation_corpus: Iterable[Formula] = (),
                     budget: int = DEFAULT_BUDGET) -> SuiteReport:
    """Check LT (extensionality, separation, stratification) or Zr (plus
    endless, infinity).  Separation is checked on the corpus and by direct
    subset search (every subset of every node's members realized)."""
    if which not in ("lt", "zr"):
        raise ValueError("which must be 'lt' or 'zr'")
    report = SuiteReport(subject=f"{which} on {len(g.nodes)}-node graph")
    n = len(g.nodes)
    brute_ok = n ** 3 <= budget   # the definitional checks nest three quantifiers

    witness = _ext_witness(g)
    report.add("extensionality", PASS if witness is None else FAIL, witness=witness)

    member_sets = {g.members(a) for a in g.nodes}
    sep_fail = None
    skipped = False
    enumerated = 0
    for a in g.nodes:
        ms = sorted(g.members(a), key=lambda s: (len(s), s))
        enumerated += 2 ** len(ms)
        if enumerated > budget:
            skipped = True
            break
        for sub in _powerset(ms):
            if frozenset(sub) not in member_sets:
                sep_fail = f"{a}: subset {brace_name(sub)} unrealized"
                break
        if sep_fail:
            break
    if sep_fail:
        report.add("separation-full", FAIL, witness=sep_fail)
    elif skipped:
        report.add("separation-full", SKIPPED, note="budget")
    else:
        report.add("separation-full", PASS)

    corpus = list(separation_corpus)
    if corpus and not brute_ok:
        report.add("separation-corpus", SKIPPED, note="budget")
    elif corpus:
        bad = None
        for i, phi in enumerate(corpus):
            if not eval_set_formula(g, separation_instance(phi)):
                bad = f"corpus formula #{i}"
                break
        report.add("separation-corpus", PASS if bad is None else FAIL,
                   witness=bad, note=f"{len(corpus)} instances")

    def brute(name, formula):
        if not brute_ok:
            report.add(name, SKIPPED, note="budget")
        else:
            report.add(name, PASS if eval_set_formula(g, formula) else FAIL)

    brute("stratification", stratification_formula())
    if which == "zr":
        brute("endless", endless_formula())
        brute("infinity", infinity_formula())
    return report


def _ext_witness(g: MembershipGraph) -> Optional[str]:
    seen: Dict[FrozenSet[str], str] = {}
    for a in sorted(g.nodes, key=lambda s: (len(s), s)):
        ms = g.members(a)
        if ms in seen:
            return f"{seen[ms]} and {a} share members"
        seen[ms] = a
    return None


def check_wellordering_of_levels(g: MembershipGraph, subset_budget: int = 2 ** 16) -> bool:
    """Trichotomy and least-witness clauses for the levels, plus the
    accumulation identity: every level is exactly the collection of things
    included in some level that is a member of it."""
    levels = levels_of(g)
    for s in levels:
        for t in levels:
            if s != t and not (s in g.members(t) or t in g.members(s)):
                return False
    if 2 ** len(levels) <= subset_budget:
        subsets = (c for r in range(1, len(levels) + 1)
                   for c in combinations(levels, r))
    else:
        subsets = ([s] for s in levels)   # linearity makes singletons enough
    for chosen in subsets:
        least = [s for s in chosen
                 if not any(r in g.members(s) for r in chosen if r != s)]
        if not least:
            return False
    for s in levels:
        expected = {x for x in g.nodes
                    if any(is_level(g, r) and g.subset(x, r) and r in g.members(s)
                           for r in g.nodes)}
        if expected != g.members(s):
            return False
    return True


# ---------------------------------------------------------------------------
# Between graphs and typed models.

def T_construction(g: MembershipGraph) -> Model:
    """Expand a transitive graph into a cumulative typed model: the type-b
    domain collects the nodes of rank <= b, application is membership.
    Ranks here are finite, so the rank-to-type shunt is the identity.

    Domains stabilize at the top rank, so the model is safe to query above
    its nominal height (every higher type has the same, full, domain)."""
    if not g.transitive:
        raise GraphError("the typed expansion needs a transitive graph")
    ranks = g.structural_ranks()
    top = g.ord()
    if top == 0:
        raise GraphError("cannot expand the empty graph")
    max_type = t_shunt(fin(top)).finite_value - 1
    domains = tuple(tuple(sorted((n for n in g.nodes if ranks[n] <= b),
                                 key=lambda s: (len(s), s)))
                    for b in range(max_type + 1))
    members = {a: g.members(a) for a in g.nodes}
    return Model(kind="pure", max_type=max_type, domains=domains,
                 members=members, cumulative=True, open_above=True,
                 meta={"source": "t-construction", "ord": top})


def S_construction(m: Model, kappa: int) -> MembershipGraph:
    """Slice a cumulative typed model at one type: the domain is the type's
    entities, membership is the evaluated defined-membership relation."""
    if not 0 <= kappa <= m.max_type:
        raise EvalError(f"model has no type {kappa}")
    nodes = m.domains[kappa]
    k = fin(kappa)
    a, b = Var("a", k), Var("b", k)
    member = expand_abbreviations(Sugar("in", (a, b)), None)
    edges = set()
    for x in nodes:
        for y in nodes:
            if eval_formula(m, member, {akey(a): x, akey(b): y}):
                edges.add((x, y))
    return MembershipGraph(tuple(nodes), frozenset(edges))


def mostowski_collapse(g: MembershipGraph) -> Tuple[MembershipGraph, Dict[str, str]]:
    """The unique transitive isomorph of an extensional well-founded graph,
    with the witnessing node map.  Output names are canonical, so collapsing
    twice is the identity."""
    cyc = g.find_cycle()
    if cyc:
        raise GraphError(f"ill-founded graph (cycle {' -> '.join(cyc)})")
    wit = g.extensional_witness
    if wit:
        raise GraphError(f"not extensional ({wit[0]} and {wit[1]} share members)")
    image: Dict[str, str] = {}

    def collapse(a: str) -> str:
        if a not in image:
            image[a] = brace_name(collapse(x) for x in g.members(a))
        return image[a]

    for a in g.nodes:
        collapse(a)
    names = [image[a] for a in g.nodes]
    if len(set(names)) != len(names):
        raise GraphError("collapse failed to separate nodes")   # unreachable
    edges = frozenset((image[x], image[a]) for x, a in g.edges)
    out = MembershipGraph(tuple(sorted(names, key=lambda s: (len(s), s))), edges)
    out = MembershipGraph(out.nodes, out.edges, ranks=out.structural_ranks())
    return out, image


def hereditary_part(g: MembershipGraph, kappa: int) -> MembershipGraph:
    """Restriction of a transitive graph to its nodes of rank <= kappa."""
    ranks = g.structural_ranks()
    keep = [n for n in g.nodes if ranks[n] <= kappa]
    kept = set(keep)
    edges = frozenset((x, a) for x, a in g.edges if x in kept and a in kept)
    return MembershipGraph(tuple(sorted(keep, key=lambda s: (len(s), s))), edges,
                           ranks={n: ranks[n] for n in keep})


def is_standard(g: MembershipGraph, budget: int = DEFAULT_BUDGET) -> bool:
    """Every subset of every bounded-rank stratum is realized as a node.

    Checked for strata whose subsets still have room to appear (rank below
    the top); at the top rank no finite structure could qualify.
    """
    if not g.transitive:
        raise GraphError("standardness is defined for transitive graphs")
    ranks = g.structural_ranks()
    top = g.ord()
    member_sets = {g.members(a) for a in g.nodes}
    for alpha in range(top - 1):
        stratum = sorted((n for n in g.nodes if ranks[n] <= alpha),
                         key=lambda s: (len(s), s))
        if 2 ** len(stratum) > budget:
            raise BudgetExceeded(f"stratum of {len(stratum)} nodes at rank {alpha}")
        for sub in _powerset(stratum):
            if frozenset(sub) not in member_sets:
                return False
    return True


def is_standard_typed(m: Model, budget: int = DEFAULT_BUDGET) -> bool:
    """Typed-model standardness: for each type below the greatest, some
    next-type property applies exactly to any given entities of that type."""
    for alpha in range(m.max_type):
        dom = m.domains[alpha]
        if 2 ** len(dom) > budget:
            raise BudgetExceeded(f"domain of {len(dom)} entities at type {alpha}")
        exts = {m.extension(z, alpha) for z in m.domains[alpha + 1]}
        for sub in _powerset(dom):
            if frozenset(sub) not in exts:
                return False
    return True


def check_kappa_axioms_in_T(g: MembershipGraph, kappa: int,
                            separation_corpus: Iterable[Formula] = (),
                            budget: int = DEFAULT_BUDGET) -> SuiteReport:
    """Evaluate the superscripted set axioms in the typed expansion of g.

    Extensionality, stratification and the corpus separation instances are
    the finite-successor surrogate of the interpretation lemmas; endless
    and infinity are reported too (expected to fail at finite scale).
    """
    if kappa + 2 > g.ord():
        raise EvalError(f"need kappa + 2 <= ord = {g.ord()}, got kappa = {kappa}")
    m = T_construction(g)
    k = fin(kappa)
    report = SuiteReport(subject=f"kappa={kappa} axioms in typed expansion")

    def ev(name: str, f: Formula, expect_note: Optional[str] = None) -> None:
        ok = eval_formula(m, kappa_translate(f, k))
        report.add(name, PASS if ok else FAIL, note=expect_note)

    ev("extensionality^k", extensionality_formula())
    bad = None
    corpus = list(separation_corpus)
    for i, phi in enumerate(corpus):
        inst = kappa_translate(separation_instance(phi), k)
        if not eval_formula(m, inst):
            bad = f"corpus formula #{i}"
            break
    if corpus:
        report.add("separation^k", PASS if bad is None else FAIL,
                   witness=bad, note=f"{len(corpus)} instances")
    ev("stratification^k", stratification_formula())
    ev("endless^k", endless_formula(), expect_note="expected FAIL at finite scale")
    ev("infinity^k", infinity_formula(), expect_note="expected FAIL at finite scale")
    return report


def valid_slice_types(g: MembershipGraph) -> List[int]:
    """Types at which the slice of the typed expansion provably recovers
    membership: the strict bound kappa + 2 < ord, plus kappa = ord - 2 when
    the graph is standard (separating singletons then exist one rank up)."""
    top = g.ord()
    ks = list(range(max(top - 2, 0)))
    if top >= 2 and is_standard(g):
        ks.append(top - 2)
    return sorted(set(ks))
