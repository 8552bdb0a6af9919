"""Finite typed structures and formula evaluation.

Every bundled model is membership-backed: apply(b, a) asks whether a is in
b's member set, which covers the cumulative hierarchies, the tuple-extension
models (a member's own shape determines which slot it sits in), and graph
structures alike.  Entities are canonical name strings, so a model survives
a JSON round trip byte-for-byte.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Optional, Set, Tuple

from hotk.errors import EvalError
from hotk.kernel.expand import expand_abbreviations
from hotk.kernel.indices import TypeIndex
from hotk.kernel.syntax import (And, Apply, DownRel, Exists, Forall, Formula,
                                Iff, Implies, InSet, Not, Or, Raised,
                                StrictEq, Term, free_atoms, term_index)

Entity = str
Assignment = Dict[Tuple[str, Optional[TypeIndex]], Entity]


def set_name(member_names) -> str:
    """Canonical brace name of a set given its members' names."""
    return "{" + ",".join(sorted(member_names, key=lambda s: (len(s), s))) + "}"


@dataclass
class Model:
    kind: str
    max_type: int
    domains: Tuple[Tuple[Entity, ...], ...]
    members: Dict[Entity, FrozenSet[Entity]]
    cumulative: bool
    open_above: bool = False
    up_map: Optional[Dict[Tuple[int, Entity], Entity]] = None
    down_rel: Optional[Set[Tuple[int, Entity, Entity]]] = None
    meta: dict = field(default_factory=dict)

    def domain(self, index: TypeIndex) -> Tuple[Entity, ...]:
        if not index.is_finite:
            raise EvalError(f"type bound exceeded: no transfinite domain {index}")
        n = index.finite_value
        if n <= self.max_type:
            return self.domains[n]
        if self.cumulative and self.open_above:
            return self.domains[self.max_type]
        raise EvalError(f"type bound exceeded: model has no type {n}")

    def applies(self, b: Entity, a: Entity) -> bool:
        return a in self.members.get(b, frozenset())

    def extension(self, e: Entity, n: int) -> FrozenSet[Entity]:
        dom = frozenset(self.domain(TypeIndex(0, n)))
        return self.members.get(e, frozenset()) & dom

    def entity_count(self) -> int:
        return len(self.members)

    # -- serialization ------------------------------------------------------

    def to_json(self) -> dict:
        doc = {
            "kind": self.kind,
            "height": self.max_type,
            "domains": [list(d) for d in self.domains],
            "apply": {e: sorted(ms, key=lambda s: (len(s), s))
                      for e, ms in sorted(self.members.items()) if ms},
            "meta": dict(self.meta, cumulative=self.cumulative,
                         open_above=self.open_above),
        }
        if self.up_map is not None:
            up: Dict[str, Dict[str, str]] = {}
            for (n, e), v in sorted(self.up_map.items()):
                up.setdefault(str(n), {})[e] = v
            doc["up_map"] = up
        if self.down_rel is not None:
            dn: Dict[str, list] = {}
            for (n, b, a) in sorted(self.down_rel):
                dn.setdefault(str(n), []).append([b, a])
            doc["down_rel"] = dn
        return doc

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, doc: dict) -> "Model":
        meta = dict(doc.get("meta", {}))
        cumulative = meta.pop("cumulative", False)
        open_above = meta.pop("open_above", False)
        members = {e: frozenset(ms) for e, ms in doc.get("apply", {}).items()}
        domains = tuple(tuple(d) for d in doc["domains"])
        for dom in domains:
            for e in dom:
                members.setdefault(e, frozenset())
        up_map = None
        if "up_map" in doc:
            up_map = {(int(n), e): v
                      for n, m in doc["up_map"].items() for e, v in m.items()}
        down_rel = None
        if "down_rel" in doc:
            down_rel = {(int(n), b, a)
                        for n, pairs in doc["down_rel"].items() for b, a in pairs}
        return cls(kind=doc["kind"], max_type=doc["height"], domains=domains,
                   members=members, cumulative=cumulative,
                   open_above=open_above, up_map=up_map, down_rel=down_rel,
                   meta=meta)

    @classmethod
    def loads(cls, text: str) -> "Model":
        return cls.from_json(json.loads(text))


def akey(t: Term) -> Tuple[str, Optional[TypeIndex]]:
    if isinstance(t, Raised):
        raise EvalError("raised terms are not assignment keys")
    return (t.name, t.index)


def _eval_term(m: Model, t: Term, env: Assignment) -> Entity:
    if isinstance(t, Raised):
        inner = _eval_term(m, t.inner, env)
        n = term_index(t.inner)
        if n is None or not n.is_finite:
            raise EvalError(f"cannot raise a term of type {n}")
        if m.up_map is None:
            raise EvalError("model has no raising map")
        key = (n.finite_value, inner)
        if key not in m.up_map:
            raise EvalError(f"raising map undefined at type {n} for {inner}")
        return m.up_map[key]
    key = akey(t)
    if key not in env:
        raise EvalError(f"unassigned free term {t.name}^{t.index}")
    return env[key]


def eval_formula(m: Model, f: Formula, assignment: Optional[Assignment] = None) -> bool:
    """Classical truth value of f in m under the assignment.

    Sugar is expanded up front; quantifiers range over the full domain of
    the variable's type (cumulative or not, as the model dictates).
    """
    f = expand_abbreviations(f, None)
    env: Assignment = dict(assignment) if assignment else {}
    fv_cache: Dict[int, Tuple] = {}
    memo: Dict[Tuple, bool] = {}

    def fv_keys(g: Formula) -> Tuple:
        got = fv_cache.get(id(g))
        if got is None:
            got = tuple(sorted((a.name, str(a.index)) for a in free_atoms(g)))
            fv_cache[id(g)] = got
        return got

    def go(g: Formula, env: Assignment) -> bool:
        if isinstance(g, Apply):
            return m.applies(_eval_term(m, g.head, env), _eval_term(m, g.arg, env))
        if isinstance(g, StrictEq):
            return _eval_term(m, g.left, env) == _eval_term(m, g.right, env)
        if isinstance(g, DownRel):
            if m.down_rel is None:
                raise EvalError("model has no projection relation")
            hi = term_index(g.left)
            if hi is None or not hi.is_finite:
                raise EvalError(f"bad projection type {hi}")
            return (hi.finite_value, _eval_term(m, g.left, env),
                    _eval_term(m, g.right, env)) in m.down_rel
        if isinstance(g, InSet):
            raise EvalError("untyped membership atom in a typed model")
        if isinstance(g, Not):
            return not go(g.body, env)
        if isinstance(g, And):
            return go(g.left, env) and go(g.right, env)
        if isinstance(g, Or):
            return go(g.left, env) or go(g.right, env)
        if isinstance(g, Implies):
            return (not go(g.left, env)) or go(g.right, env)
        if isinstance(g, Iff):
            return go(g.left, env) == go(g.right, env)
        if isinstance(g, (Forall, Exists)):
            free = set(fv_keys(g))
            key = (id(g), tuple(sorted((k[0], str(k[1]), v)
                                       for k, v in env.items()
                                       if (k[0], str(k[1])) in free)))
            got = memo.get(key)
            if got is not None:
                return got
            if g.var.index is None:
                raise EvalError("untyped quantifier in a typed model")
            dom = m.domain(g.var.index)
            vkey = akey(g.var)
            is_all = isinstance(g, Forall)
            result = is_all
            for e in dom:
                env2 = dict(env)
                env2[vkey] = e
                val = go(g.body, env2)
                if is_all and not val:
                    result = False
                    break
                if not is_all and val:
                    result = True
                    break
            memo[key] = result
            return result
        raise EvalError(f"cannot evaluate node {g!r}")

    return go(f, env)
