"""Finite typed structures: builders, evaluation, axiom suites, decision."""

from hotk.models.axioms import PairTables, check_axiom_suite
from hotk.models.builders import (DEFAULT_BUDGET, build_class_model,
                                  build_fjt_canonical, build_graph_model,
                                  build_pure_model, build_sttd_companion,
                                  build_sttu_companion, count_entities,
                                  fjt_counts)
from hotk.models.core import Assignment, Entity, Model, akey, eval_formula
from hotk.models.decide import decide_fjt, max_finite_type
from hotk.models.domains import (KINDS, M_RUSSELLIAN, M_RUSSELLIAN_STAR,
                                 M_UNRESTRICTED, UNRESTRICTED_STT,
                                 domain_const, gen_domain_formula)

__all__ = [
    "PairTables", "check_axiom_suite",
    "DEFAULT_BUDGET", "build_class_model", "build_fjt_canonical",
    "build_graph_model", "build_pure_model", "build_sttd_companion",
    "build_sttu_companion", "count_entities", "fjt_counts",
    "Assignment", "Entity", "Model", "akey", "eval_formula",
    "decide_fjt", "max_finite_type",
    "KINDS", "M_RUSSELLIAN", "M_RUSSELLIAN_STAR", "M_UNRESTRICTED",
    "UNRESTRICTED_STT", "domain_const", "gen_domain_formula",
]
