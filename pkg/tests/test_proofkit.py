import copy
import json

import pytest

from hotk.errors import ProofError
from hotk.kernel import fin, parse_formula, print_formula
from hotk.proofkit import (axiom_instance, check_proof, load_fixture,
                           load_proof, verify_fixture_suite)
from hotk.proofkit.checker import loads_proof
from hotk.proofkit.fixtures import fixture_manifest


def test_fixture_suite_all_as_expected():
    report = verify_fixture_suite()
    assert report.all_as_expected, "\n".join(report.lines())
    manifest = fixture_manifest()
    assert len(manifest["positive"]) >= 6
    assert len(manifest["negative"]) >= 5


def test_type_raising_proof_steps():
    proof = load_fixture("raising_0_1.proof")
    assert check_proof(proof).accepted
    # the same derivation under standard rules is rejected
    doc = json.loads((_proof_path("raising_0_1.proof")).read_text())
    doc["theory"] = "stt"
    verdict = check_proof(load_proof(doc))
    assert not verdict.accepted


def _proof_path(name):
    from importlib import resources
    return resources.files("hotk") / "data" / "proofs" / name


def test_cross_type_instantiation_tagged_at_the_rule():
    doc = json.loads(_proof_path("neg_cross_exists_stt.proof").read_text())
    verdict = check_proof(load_proof(doc))
    assert verdict.tag == "type-side-condition" and verdict.step == 8
    # under cumulative rules the very same proof goes through
    doc["theory"] = "ctt:w"
    assert check_proof(load_proof(doc)).accepted


def test_condition_ii_enforcement_is_exact():
    # inserting the eigenvariable into an undischarged assumption flips
    # the verdict of an accepted proof
    doc = json.loads(_proof_path("indiscern_transfer.proof").read_text())
    assert check_proof(load_proof(doc)).accepted
    bad = copy.deepcopy(doc)
    bad["hypotheses"].append("c^1(a^0)")
    bad["steps"].insert(0, {"n": 0, "formula": "c^1(a^0)", "rule": "hyp"})
    # make the case derivation depend on the tainted hypothesis
    for step in bad["steps"]:
        if step.get("n") == 7:
            step["rule"] = "reiterate"
            step["premises"] = [0]
            step["formula"] = "c^1(a^0)"
    verdict = check_proof(load_proof(bad))
    assert not verdict.accepted
    assert verdict.tag == "eigenvariable-assumption"


def test_determinism():
    proof = load_fixture("raising_1_2.proof")
    first = check_proof(proof)
    second = check_proof(proof)
    assert first.accepted == second.accepted == True


def test_regime_monotonicity_stt_to_ctt():
    # an accepted standard-theory proof re-checks under cumulative rules
    for name in ("identity_refl.proof",):
        doc = json.loads(_proof_path(name).read_text())
        assert check_proof(load_proof(doc)).accepted
        doc["theory"] = "ctt:w"
        assert check_proof(load_proof(doc)).accepted


def test_undischarged_assumption_rejected():
    doc = {"theory": "stt",
           "steps": [{"n": 1, "formula": "z^1(a^0)", "rule": "assume"}]}
    verdict = check_proof(load_proof(doc))
    assert not verdict.accepted and verdict.tag == "undischarged"


def test_goal_mismatch():
    doc = {"theory": "stt", "goal": "z^1(b^0)",
           "hypotheses": ["z^1(a^0)"],
           "steps": [{"n": 1, "formula": "z^1(a^0)", "rule": "hyp"}]}
    verdict = check_proof(load_proof(doc))
    assert verdict.tag == "goal-mismatch"


def test_malformed_file_raises():
    with pytest.raises(ProofError):
        loads_proof("{\"steps\": [{\"formula\": \"x^0 = x^0\"}]}")


class TestAxiomInstances:
    def test_stt_comprehension_display(self):
        f = axiom_instance("comprehension", {"phi": "x^0 = x^0", "type": 0})
        assert print_formula(f) == "some z^1. all x^0. z^1(x^0) <-> x^0 = x^0"

    def test_fjt_comprehension_display(self):
        f = axiom_instance("fjt-comprehension",
                           {"phis": ["~x^0 = x^0", "x^1 = x^1"], "n": 2})
        assert print_formula(f) == ("some z^2. (all x^1. z^2(x^1) <-> x^1 = x^1)"
                                    " & (all x^0. z^2(x^0) <-> ~x^0 = x^0)")

    def test_type_base_display(self):
        f = axiom_instance("type-base", {"alpha": 1})
        assert print_formula(f) == "all x^0. all y^1. ~y^1 in x^0"

    def test_witness_occurrence_rejected(self):
        with pytest.raises(ProofError):
            axiom_instance("comprehension", {"phi": "z^1(x^0)", "type": 0})

    def test_sttd_comprehension_shape(self):
        f = axiom_instance("sttd-comprehension", {"phi": "x^1(a^0)", "n": 1})
        from hotk.kernel.syntax import And, DownRel, Exists, Forall
        assert isinstance(f, Forall) and isinstance(f.body, Exists)
        assert isinstance(f.body.body, And)
        assert isinstance(f.body.body.left, DownRel)

    def test_missing_parameter(self):
        with pytest.raises(ProofError):
            axiom_instance("type-founded", {"alpha": 0})


def test_accepted_conclusions_hold_in_reference_models(pure4, pure4_up):
    # soundness spot-check: the universal closure of hyps -> conclusion
    # evaluates true
    from genutil import universal_closure
    from hotk.models import eval_formula

    for name in fixture_manifest()["positive"]:
        proof = load_fixture(name)
        model = pure4_up if proof.theory.kind == "stt_up" else pure4
        f = universal_closure(proof)
        assert eval_formula(model, f) is True, name
