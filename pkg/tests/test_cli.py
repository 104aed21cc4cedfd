from __future__ import annotations

import json
from importlib import resources

import jsonschema
import pytest

from cmhopf.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, SessionConfig, UsageError, main
from cmhopf.hopf import HopfAlgebra
from cmhopf.syntax import parse_poly, parse_tensor

SCHEMA = json.loads(resources.files("cmhopf").joinpath("schema.json").read_text())


def run(capsys, *argv: str) -> tuple[int, str, str]:
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv: str):
    code, out, _ = run(capsys, *argv, "--format", "json")
    assert code == EXIT_OK
    data = json.loads(out)
    jsonschema.validate(data, SCHEMA)
    return data


# -- examples ----------------------------------------------------------------------------------


def test_nf_examples(capsys):
    assert run(capsys, "nf", "--dim", "1", "Y(1,1) X(1)")[:2] == (EXIT_OK, "X(1) Y(1,1) + X(1)\n")
    assert run(capsys, "nf", "--dim", "1", "X(1)")[:2] == (EXIT_OK, "X(1)\n")
    code, out, err = run(capsys, "nf", "--dim", "2", "X(3)")
    assert code == EXIT_USAGE and out == ""
    assert "index 3 exceeds dim 2" in err


def test_parse_error_reports_position(capsys):
    code, _, err = run(capsys, "nf", "--dim", "1", "X(1")
    assert code == EXIT_USAGE
    assert "position 3" in err


def test_coproduct_of_one(capsys):
    assert run(capsys, "coproduct", "--dim", "1", "1")[:2] == (EXIT_OK, "1 (x) 1\n")


def test_coproduct_via_trees(capsys):
    code, out, _ = run(capsys, "coproduct", "--dim", "2", "d(1;1,1;2)", "--via", "trees")
    assert code == EXIT_OK
    H = HopfAlgebra(2)
    assert parse_tensor(out.strip(), 2) == H.coproduct(parse_poly("d(1;1,1;2)", 2))


def test_antipode_check_agree(capsys):
    code, out, _ = run(capsys, "antipode", "--dim", "2", "d(1;1,2;1 2)", "--check-agree")
    assert code == EXIT_OK
    H = HopfAlgebra(2)
    assert parse_poly(out.strip(), 2) == H.antipode(parse_poly("d(1;1,2;1 2)", 2))


def test_via_trees_needs_a_single_delta(capsys):
    code, _, err = run(capsys, "coproduct", "--dim", "2", "X(1)", "--via", "trees")
    assert code == EXIT_USAGE and err.startswith("error:")


def test_check_agree_reports_disagreement(capsys, monkeypatch):
    from cmhopf import trees

    monkeypatch.setattr(trees, "antipode_tree", lambda A, tail, dim: HopfAlgebra(dim).one())
    code, _, err = run(capsys, "antipode", "--dim", "2", "d(1;1,2;1)", "--check-agree")
    assert code == EXIT_FAIL
    assert "disagree" in err


def test_usage_errors(capsys):
    assert run(capsys, "nf", "--dim", "0", "X(1)")[0] == EXIT_USAGE
    assert run(capsys, "verify", "hopf", "--max-tail", "-1")[0] == EXIT_USAGE
    with pytest.raises(UsageError):
        SessionConfig(dim=1, max_degree=-2)
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == EXIT_USAGE
    capsys.readouterr()


def test_trees_and_cuts_text(capsys):
    code, out, _ = run(capsys, "trees", "--dim", "2", "d(1;1,2;2 1)")
    assert (code, out) == (EXIT_OK, "t(1;1,2)(2(1)) + t(1;1,2)(2)(1)\n")
    code, out, _ = run(capsys, "cuts", "--dim", "2", "t(1;1,2)(1(2))", "--admissible-only")
    assert code == EXIT_OK
    assert out.count("(admissible)") == 2 and "not admissible" not in out
    assert "  + d(1;1,2) | d(1;1,2;1)" in out


def test_latex_output(capsys):
    code, out, _ = run(capsys, "nf", "--dim", "1", "--format", "latex", "Y(1,1) X(1)")
    assert (code, out) == (EXIT_OK, "X_{1} Y^{1}_{1} + X_{1}\n")
    code, out, _ = run(capsys, "trees", "--dim", "2", "--format", "latex", "d(1;1,2;1)")
    assert code == EXIT_OK and "\\begin{picture}" in out


# -- JSON schema -------------------------------------------------------------------------------


def test_json_outputs_match_the_schema(capsys):
    poly = run_json(capsys, "nf", "--dim", "2", "Y(1,2) X(1) - 1/2 d(1;1,2;1)")
    assert len(poly) == 5  # the non-reduced delta is rewritten
    run_json(capsys, "coproduct", "--dim", "2", "X(1)")
    run_json(capsys, "antipode", "--dim", "1", "d(1;1,1;1)")
    trees = run_json(capsys, "trees", "--dim", "2", "d(1;1,1;1 2 2)")
    assert sum(t["multiplicity"] for t in trees) == 6
    cuts = run_json(capsys, "cuts", "--dim", "2", "t(1;1,2)(1)(2)")
    assert len(cuts["cuts"]) == 3 and all(c["admissible"] for c in cuts["cuts"])
    reports = run_json(capsys, "verify", "trees", "--dim", "1", "--max-tail", "2")
    assert [r["status"] for r in reports] == ["PASS"]


def test_schema_rejects_malformed_payloads():
    with pytest.raises(jsonschema.ValidationError):
        jsonschema.validate([{"coeff": "1.5", "monomial": []}], SCHEMA)
    with pytest.raises(jsonschema.ValidationError):
        jsonschema.validate([{"coeff": "1", "monomial": [{"kind": "Z", "index": 1}]}], SCHEMA)


# -- verify ------------------------------------------------------------------------------------


@pytest.mark.parametrize("suite", ["hopf", "trees", "oracle", "geometry"])
def test_verify_suites_pass_at_dim_one(capsys, suite):
    code, out, _ = run(capsys, "verify", suite, "--dim", "1", "--max-tail", "2")
    assert code == EXIT_OK
    assert out.rstrip().endswith(f"PASS {suite}")
    assert "FAIL" not in out


def test_verify_is_deterministic(capsys):
    argv = ("verify", "oracle", "--dim", "1", "--seed", "42", "--format", "json")
    first = json.loads(run(capsys, *argv)[1])
    second = json.loads(run(capsys, *argv)[1])

    def strip_times(reports):
        return [[(c["name"], c["status"], c.get("detail")) for c in rep["checks"]] for rep in reports]

    assert strip_times(first) == strip_times(second)


def test_verify_failure_sets_exit_code(capsys, monkeypatch):
    from cmhopf import cli
    from cmhopf.verify import Report

    def failing(name, dim, seed=0, max_tail=None, max_degree=3):
        rep = Report(name, dim, seed, max_tail or 0)
        rep.run("always fails", [0], lambda _: False)
        return [rep]

    monkeypatch.setattr(cli, "run_suite", failing)
    code, out, _ = run(capsys, "verify", "hopf", "--dim", "1")
    assert code == EXIT_FAIL
    assert "FAIL" in out
