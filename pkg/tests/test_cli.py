"""Command-line front end, driven in-process through run()."""
import io

import orjson
import pytest

from services.cli.main import run
from services.cone.services.pipeline_service import PipelineService
from services.model.services.dsl_service import parse_structure
from services.polyhedron.services.porta_service import read_ieq
from services.scenarios.services.builders_service import emit_scenario, get_scenario

NO_CLONING = (
    "system Q quantum\n"
    "system X classical\n"
    "system Y classical\n"
    "prepare {Q}\n"
    "op f in {Q} out {X}\n"
    "op g in {Q} out {Y}\n"
)

PAIR = "system A classical\nsystem B classical\nprepare {A, B}\nmarginal {A, B}\n"


def _run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def _error(err: str) -> dict:
    return orjson.loads(err.strip().splitlines()[-1])


def test_scenario_list():
    code, out, _ = _run("scenario", "list")
    assert code == 0
    assert "triangle" in out.splitlines()
    assert "IC_tight" in out.splitlines()


def test_scenario_emit_round_trip():
    code, out, _ = _run("scenario", "ic2", "--emit")
    assert code == 0
    assert parse_structure(out) == get_scenario("ic2")


def test_scenario_summary():
    code, out, _ = _run("scenario", "triangle")
    assert code == 0
    assert out.splitlines()[0] == "systems 9"
    assert "context {A, B, C}" in out


def test_validate_triangle(write_file):
    path = write_file("triangle.ent", emit_scenario("triangle"))
    code, out, _ = _run("validate", path)
    lines = out.splitlines()
    assert code == 0
    assert lines[0] == "ok"
    assert len([l for l in lines if l.startswith("coexisting")]) == 8


def test_validate_reports_violations(write_file):
    code, out, _ = _run("validate", write_file("clone.ent", NO_CLONING))
    assert code == 1
    assert out.startswith("no-cloning:")


def test_check_writes_certificate(write_file, tmp_path):
    """IC_tight holds on the quantum IC structure and the certificate says so."""
    path = write_file("ic2.ent", emit_scenario("ic2"))
    cert = tmp_path / "cert.json"
    code, out, _ = _run("check", path, "--ineq", "IC_tight", "--certificate", str(cert))
    assert code == 0
    assert out == "valid\n"
    payload = orjson.loads(cert.read_bytes())
    assert payload["verdict"] == "valid"
    assert payload["multipliers"]


def test_check_not_implied(write_file):
    code, out, _ = _run("check", write_file("pair.ent", PAIR), "--ineq", "H(A) >= H(A,B)")
    assert code == 0
    assert out == "not implied\n"


def test_eval_correlated_coins(write_file):
    """Three equal coins break monogamy by exactly one bit."""
    dist = {"vars": [["V1", 2], ["V2", 2], ["V3", 2]], "p": ["1/2", 0, 0, 0, 0, 0, 0, "1/2"]}
    path = write_file("coins.json", orjson.dumps(dist).decode())
    code, out, _ = _run("eval", "--dist", path, "--ineq", "monogamy(3,1)")
    assert code == 0
    assert out.splitlines() == ["slack 1", "exact 1", "violated"]


def test_eval_satisfied(write_file):
    dist = {"vars": [["A", 2]], "p": ["1/3", "2/3"]}
    code, out, _ = _run("eval", "--dist", write_file("a.json", orjson.dumps(dist).decode()), "--ineq", "H(A) >= 0")
    assert code == 0
    assert out.splitlines()[-1] == "satisfied"
    assert not any(line.startswith("exact") for line in out.splitlines())


def test_unknown_command_is_usage_error():
    code, _, err = _run("bogus")
    assert code == 2
    assert _error(err)["code"] == "USAGE_ERROR"


def test_help_exits_cleanly():
    code, _, _ = _run("--help")
    assert code == 0


def test_missing_file(tmp_path):
    code, _, err = _run("validate", str(tmp_path / "absent.ent"))
    assert code == 1
    assert _error(err)["code"] == "NOT_FOUND"


def test_dsl_parse_error(write_file):
    code, _, err = _run("validate", write_file("bad.ent", "system X bogus\n"))
    assert code == 1
    payload = _error(err)
    assert payload["code"] == "PARSE_ERROR"
    assert payload["details"] == {"line": 1, "column": 10}


def test_scan_rejects_other_scenarios():
    code, _, _ = _run("scan", "--scenario", "ic3", "--ineq", "IC_original", "--step", "1/8")
    assert code == 2


def test_scan_rejects_coarse_step():
    code, _, err = _run("scan", "--ineq", "IC_original", "--step", "1/2")
    assert code == 1
    assert _error(err)["code"] == "VALIDATION_ERROR"


def test_scan_csv(tmp_path):
    target = tmp_path / "scan.csv"
    code, _, _ = _run(
        "scan", "--ineq", "IC_original", "--step", "1/8", "--resolution", "0.001", "--workers", "1",
        "-o", str(target),
    )
    assert code == 0
    lines = target.read_text().splitlines()
    assert lines[:3] == [
        "# candidate=IC_original",
        "# protocol=van-dam, step=1/8, resolution=0.001",
        "epsilon,gamma_star",
    ]
    assert len(lines) == 12


def test_cone_marginal_only(write_file):
    chain = (
        "system X classical\nsystem Y classical\nsystem Z classical\n"
        "prepare {X}\nop f in {X} out {Y}\nop g in {Y} out {Z}\nmarginal {X, Z}\n"
    )
    code, out, _ = _run("cone", write_file("chain.ent", chain), "--marginal-only")
    assert code == 0
    assert out.startswith("# shannon\n")
    assert "# causal\n" in out
    assert "# full system" not in out


def test_rays_of_two_bits(write_file):
    code, out, _ = _run("rays", write_file("pair.ent", PAIR))
    assert code == 0
    assert out.splitlines() == ["# H(B) H(A) H(A,B)", "0 1 1", "1 0 1", "1 1 1"]


@pytest.mark.slow
def test_cone_ieq_round_trip(write_file, tmp_path):
    """The ieq output reads back to the computed marginal cone."""
    path = write_file("star.ent", emit_scenario("star3_classical"))
    target = tmp_path / "star.ieq"
    code, _, _ = _run("cone", path, "--format", "ieq", "-o", str(target))
    assert code == 0
    report = PipelineService(get_scenario("star3_classical")).run()
    back = read_ieq(target.read_text(), report.system.index)
    assert sorted(r.key for r in back.rows) == sorted(r.key for r in report.system.rows)
