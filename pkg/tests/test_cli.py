import json

import pytest

from hotk.cli import main
from hotk.kernel import fin, parse_formula
from hotk.models import Model, check_axiom_suite, eval_formula
from hotk.kernel.regimes import parse_regime


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out


def test_check_exit_codes(capsys):
    code, out = run(capsys, "check", "--theory", "stt", "c^2(a^0)")
    assert code == 1
    assert "gap" in out
    code, out = run(capsys, "check", "--theory", "ctt:w", "c^2(a^0)")
    assert code == 0


def test_parse_error_exit_code(capsys):
    code, _ = run(capsys, "check", "--theory", "stt", "c^(w*w)(a^0)")
    assert code == 2


def test_budget_exit_code(capsys):
    code, _ = run(capsys, "--budget", "10", "model", "build", "--kind", "pure",
                  "--height", "4")
    assert code == 3


def test_expand_golden(capsys):
    code, out = run(capsys, "expand", "--theory", "ctt:w", "--normalize",
                    "a^0 eq b^1")
    assert code == 0
    assert out.strip() == "all v1^2. v1^2(a^0) <-> v1^2(b^1)"


def test_decide(capsys):
    code, out = run(capsys, "decide", "--height", "2",
                    "all x^0. all y^0. x^0 = y^0")
    assert code == 0 and out.strip() == "true"
    code, out = run(capsys, "decide", "--height", "2",
                    "some x^0. ~x^0 = x^0")
    assert code == 1 and out.strip() == "false"


def test_model_json_round_trip_matches_in_process(tmp_path, capsys):
    path = tmp_path / "m.json"
    code, out = run(capsys, "model", "build", "--kind", "pure", "--height", "3")
    assert code == 0
    path.write_text(out)

    from hotk.models import build_pure_model
    direct = build_pure_model(3)
    loaded = Model.loads(path.read_text())
    rep_a = check_axiom_suite(direct, parse_regime("pctt:w"), 1)
    rep_b = check_axiom_suite(loaded, parse_regime("pctt:w"), 1)
    assert rep_a.to_json() == rep_b.to_json()
    f = parse_formula("all x^0. some y^1. x^0 eq y^1")
    assert eval_formula(direct, f) == eval_formula(loaded, f) is True

    code, out = run(capsys, "eval", "--model", str(path),
                    "all x^0. some y^1. x^0 eq y^1")
    assert code == 0 and out.strip() == "true"


def test_cli_deterministic_output(capsys):
    _, out1 = run(capsys, "model", "build", "--kind", "fjt", "--height", "2")
    _, out2 = run(capsys, "model", "build", "--kind", "fjt", "--height", "2")
    assert out1 == out2


def test_sets_pipeline(tmp_path, capsys):
    code, out = run(capsys, "sets", "build-v", "3")
    assert code == 0
    g = tmp_path / "v3.json"
    g.write_text(out)
    code, out = run(capsys, "sets", "check", "lt", str(g))
    assert code == 0
    code, out = run(capsys, "sets", "check", "zr", str(g))
    assert code == 1    # endless and infinity fail at finite scale
    code, out = run(capsys, "sets", "levels", str(g))
    assert code == 0 and "levels:" in out
    code, out = run(capsys, "sets", "collapse", str(g))
    assert code == 0
    code, out = run(capsys, "sets", "t-model", str(g))
    assert code == 0
    m = tmp_path / "t3.json"
    m.write_text(out)
    code, out = run(capsys, "model", "check", "--model", str(m),
                    "--theory", "pctt:w", "--max-type", "1")
    assert code == 0


def test_prove_commands(tmp_path, capsys):
    code, out = run(capsys, "prove", "fixtures")
    assert code == 0
    doc = {"theory": "stt",
           "steps": [{"n": 1, "formula": "z^1(a^0)", "rule": "assume"}]}
    f = tmp_path / "bad.proof"
    f.write_text(json.dumps(doc))
    code, out = run(capsys, "--format", "json", "prove", "check", str(f))
    assert code == 1
    assert json.loads(out)["tag"] == "undischarged"


def test_corpus_run(capsys):
    code, out = run(capsys, "corpus", "run")
    assert code == 0
    assert "PASS formation matrix" in out


def test_json_format_stable_fields(capsys):
    code, out = run(capsys, "--format", "json", "check", "--theory", "stt",
                    "b^1(a^0)")
    doc = json.loads(out)
    assert doc["results"][0]["well_formed"] is True


def test_sets_slice_and_companions(tmp_path, capsys):
    code, out = run(capsys, "sets", "build-v", "3")
    g = tmp_path / "v3.json"
    g.write_text(out)
    code, out = run(capsys, "sets", "t-model", str(g))
    assert code == 0
    m = tmp_path / "t3.json"
    m.write_text(out)
    code, out = run(capsys, "sets", "slice", "--kappa", "1", str(m))
    assert code == 0
    doc = json.loads(out)
    assert set(map(tuple, doc["edges"])) == {("{}", "{{}}")}

    code, out = run(capsys, "model", "build", "--kind", "fjt", "--height", "2",
                    "--companion", "down")
    assert code == 0
    md = tmp_path / "fd.json"
    md.write_text(out)
    code, out = run(capsys, "model", "check", "--model", str(md),
                    "--theory", "stt-down", "--max-type", "2")
    assert code == 0
    code, out = run(capsys, "sets", "standard", str(g))
    assert code == 0


def test_check_file_mode(tmp_path, capsys):
    hol = tmp_path / "formulas.hol"
    hol.write_text("# matrix slice\nb^1(a^0)\nc^2(a^1)\n")
    code, out = run(capsys, "check", "--theory", "stt", "--file", str(hol))
    assert code == 0
    assert out.count("well-formed") == 2
    hol.write_text("b^1(a^0)\nc^2(a^0)\n")
    code, out = run(capsys, "check", "--theory", "stt", "--file", str(hol))
    assert code == 1

    code, _ = run(capsys, "check", "--theory", "stt")
    assert code == 2
