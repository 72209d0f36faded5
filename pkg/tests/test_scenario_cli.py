import json

import pytest

from gradalg import ParseError
from gradalg.cli import main
from gradalg.scenario import parse_scenario, run_scenario

HEADER = "field gf32003\nring R = quotient(x, y, z, w; grevlex; ideal(x*y))\n"


def run_text(text, **kw):
    return run_scenario(parse_scenario(text, name="t"), **kw)


def test_pd_of_free_fails_with_computed_value():
    rep = run_text(HEADER + "module F = free(1)\nassert pd(F) == 1  # trivial\n")
    assert rep.verdict == "fail"
    assert rep.checks[0].computed == "Finite(0)"
    assert rep.checks[0].status == "fail"


def test_empty_scenario_passes():
    rep = run_text("")
    assert rep.verdict == "pass" and rep.checks == []
    assert json.loads(rep.dumps())["checks"] == []


def test_not_equal_assertion():
    rep = run_text(HEADER + "ideal p = (y, z, w)\nassert height(p) != 3  # derived\n")
    assert rep.verdict == "pass"
    assert rep.checks[0].expected == "!= 3"


@pytest.mark.parametrize("text, line, col", [
    ("field zz\n", 1, 9),
    (HEADER + "assert dim(R) == 3\n", 3, 19),
    (HEADER + "assert dim(R) = 3  # paper\n", 3, 15),
    (HEADER + "module M = cyclic(\n", 3, 19),
    ("bogus statement\n", 1, 1),
])
def test_parse_errors_cite_line_and_column(text, line, col):
    with pytest.raises(ParseError) as info:
        parse_scenario(text)
    assert (info.value.line, info.value.col) == (line, col)


def test_polynomial_errors_cite_line_and_column():
    with pytest.raises(ParseError) as info:
        run_text(HEADER + "ideal p = (y, q)\n")
    assert (info.value.line, info.value.col) == (3, 15)


def test_report_schema_is_exact():
    rep = run_text(HEADER + "assert dim(R) == 3  # paper\n")
    data = json.loads(rep.dumps())
    assert list(data) == ["scenario", "config", "checks", "verdict"]
    assert list(data["config"]) == ["field", "maxDegree", "maxRes", "seed"]
    assert list(data["checks"][0]) == ["name", "kind", "expected", "computed", "status", "millis"]
    assert data["checks"][0]["expected"] == 3 and data["checks"][0]["computed"] == 3


def test_field_override():
    rep = run_text(HEADER + "assert dim(R) == 3  # paper\n", field="qq")
    assert rep.config["field"] == "qq" and rep.verdict == "pass"


def test_engine_error_carries_line():
    from gradalg.scenario import EvalError
    text = HEADER + "module M = cyclic((x))\nassert rank(M) == 1  # derived\n"
    with pytest.raises(EvalError) as info:
        run_text(text)
    assert info.value.line == 4


def test_theorem_statement_reports_failed_hypothesis():
    text = HEADER + "ideal p = (y, z, w)\nverify theorem(p, cyclic(p), cyclic((x)), 2)\n"
    rep = run_text(text)
    assert rep.verdict == "fail"
    failed = [c.name for c in rep.checks if c.status == "fail"]
    assert any("height(p) = n+1" in n for n in failed)
    assert not any(c.name.startswith("conclusion:") for c in rep.checks)


def test_note_is_advisory():
    rep = run_text("note full torsion-freeness is not decided here\n")
    assert rep.verdict == "pass"
    assert rep.checks[0].status == "advisory" and rep.checks[0].kind == "out-of-scope"


def test_cli_exit_codes(tmp_path, capsys):
    good = tmp_path / "good.scn"
    good.write_text(HEADER + "assert dim(R) == 3  # paper\n")
    bad = tmp_path / "bad.scn"
    bad.write_text(HEADER + "module F = free(1)\nassert pd(F) == 1  # trivial\n")
    broken = tmp_path / "broken.scn"
    broken.write_text("ring R = quotient(x; grevlex; ideal(x+1))\n")
    assert main(["run", str(good)]) == 0
    assert main(["run", str(bad)]) == 1
    assert main(["run", str(broken)]) == 2
    assert main(["run", str(tmp_path / "missing.scn")]) == 2
    assert main(["paper", "--example", "nope"]) == 2
    capsys.readouterr()


def test_cli_json_output(tmp_path):
    out = tmp_path / "r.json"
    assert main(["paper", "--example", "2.4", "--report", "json", "--out", str(out), "--no-timing"]) == 0
    data = json.loads(out.read_text())
    assert data["verdict"] == "pass" and data["scenario"] == "paper/hypersurface-mcm"
    assert all(c["millis"] == 0 for c in data["checks"])


def test_cli_property_suite(capsys):
    assert main(["property", "--suite", "obs-2.6", "--trials", "3", "--seed", "1", "--report", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["config"]["seed"] == 1 and len(data["checks"]) == 3
    assert main(["property", "--suite", "gb-oracle", "--trials", "0"]) == 2
