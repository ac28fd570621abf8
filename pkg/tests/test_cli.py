import json

import pytest

from twistlab.cli import main
from twistlab.report import FAIL, FLAGGED, PASS, Check, SuiteResult, emit_report
from twistlab.suites import Options, UnknownSuite, run_suite, suite_names


def test_verify_spacetime_passes(capsys):
    assert main(["verify", "spacetime"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("== spacetime: pass")
    assert "summary: 1 suites (1 passed, 0 failed); checks: 37 passed, 0 failed, 0 flagged" in out


def test_json_schema(capsys):
    main(["verify", "spacetime", "--format", "json"])
    data = json.loads(capsys.readouterr().out)
    (suite,) = data["suites"]
    assert suite["name"] == "spacetime" and suite["status"] == "pass"
    assert set(suite["checks"][0]) == {"name", "status", "expected", "actual", "runtime_ms"}
    assert all(c["runtime_ms"] == 0 for c in suite["checks"])


def test_empty_report():
    assert json.loads(emit_report([], "json")) == {"suites": []}


def test_output_is_byte_stable(capsys, tmp_path):
    out = tmp_path / "r.txt"
    main(["verify", "duflo", "--output", str(out)])
    first = capsys.readouterr().out
    main(["verify", "duflo"])
    assert capsys.readouterr().out == first
    assert out.read_text().rstrip("\n") == first.rstrip("\n")


def test_failing_check_shows_a_diff():
    r = SuiteResult("demo", [Check("a", FAIL, "[1, [2, 3], 4]", "[1, [2, 5], 4]"), Check("b", PASS, "1", "1")])
    text = emit_report([r], "text")
    assert "== demo: fail" in text
    assert "      -1: [2, 3]" in text and "      +1: [2, 5]" in text
    assert "summary: 1 suites (0 passed, 1 failed); checks: 1 passed, 1 failed, 0 flagged" in text


def test_flagged_check_does_not_fail_the_suite():
    r = SuiteResult("demo", [Check("a", FLAGGED, "1", "2"), Check("b", PASS, "1", "1")])
    assert r.status == PASS
    assert "checks: 1 passed, 0 failed, 1 flagged" in emit_report([r])


def test_unknown_suite_is_a_usage_error(capsys):
    with pytest.raises(SystemExit) as e:
        main(["verify", "nope"])
    assert e.value.code == 2
    assert "valid: bplus" in capsys.readouterr().err
    with pytest.raises(UnknownSuite):
        suite_names("nope")


def test_bad_algebra_is_a_usage_error(capsys):
    with pytest.raises(SystemExit):
        main(["verify", "lie", "--algebra", "nosuchalgebra"])


def test_bad_alpha_is_a_usage_error():
    with pytest.raises(SystemExit):
        main(["verify", "lie", "--alpha", "x/y"])


def test_alpha_and_algebra_options(capsys):
    assert main(["verify", "dcalc", "--algebra", "bplus", "--alpha", "-1/4"]) == 0
    out = capsys.readouterr().out
    assert "alpha=-1/4" in out and "alpha=0" not in out


def test_twist_suite_reports_the_zeta_control_as_failing():
    r = run_suite("twist", Options(algebra="sl2"))
    bad = [c.name for c in r.checks if c.status != PASS]
    assert r.status == FAIL
    assert bad and all("zeta=0" in n for n in bad)


def test_options_validate():
    with pytest.raises(ValueError):
        Options(order=-1)
    with pytest.raises(ValueError):
        Options(jobs=0)


def test_parallel_matches_serial(capsys):
    main(["verify", "all", "--jobs", "1", "--max-degree", "1", "--order", "1", "--algebra", "sl2"])
    serial = capsys.readouterr().out
    main(["verify", "all", "--jobs", "4", "--max-degree", "1", "--order", "1", "--algebra", "sl2"])
    assert capsys.readouterr().out == serial
