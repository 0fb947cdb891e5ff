"""Verification harness and command-line interface."""

import json
import subprocess
import sys
from fractions import Fraction as F

from qracah.report import CheckReport, residual_string, serialize_value
from qracah.verify import SUITE_IDS, SUITES, RunConfig, run_suite

# the externally promised suite registry, one id per machine-checked result
SUITE_MANIFEST = {
    "lemma2.1", "relations", "star", "lemma3.1", "ev3.x", "prop3.3", "prop3.4",
    "lemma3.5", "cor3.6", "prop3.7", "lemma3.8", "lemma3.9", "cor3.10",
    "cor4.1", "ev4.x", "cor4.3", "prop4.4", "lemma4.5", "prop4.5", "prop4.6",
    "lemma4.8", "cor4.9", "all",
}


def test_registry_matches_manifest():
    assert set(SUITE_IDS) == SUITE_MANIFEST
    assert set(SUITES) == SUITE_MANIFEST - {"all"}


def test_report_serialization():
    rep = CheckReport("s", "c", {"p": F(1, 2), "N": 3}, "0", True, "exact", 1.234)
    payload = json.loads(rep.to_json())
    assert payload["schema_version"] == 1
    assert payload["params"] == {"p": "1/2", "N": 3}
    assert payload["pass"] is True and payload["residual"] == "0"
    assert residual_string(F(0, 1)) == "0"
    assert residual_string(F(-3, 7)) == "-3/7"
    assert serialize_value([F(1, 3), 2]) == ["1/3", 2]


def _suite_reports(suite, **cfg_kw):
    cfg = RunConfig(**cfg_kw)
    return list(run_suite(suite, cfg))


def test_small_suites_pass():
    for suite in ("relations", "star", "lemma3.1", "ev3.x", "ev4.x", "cor4.1"):
        reports = _suite_reports(suite, p=F(1, 2))
        assert reports and all(r.passed for r in reports), suite
        assert all(r.residual == "0" for r in reports), suite


def test_exact_suites_zero_residuals():
    reports = _suite_reports("lemma3.5", p=F(1, 2), n_max=2)
    assert reports and all(r.passed and r.residual == "0" for r in reports)
    reports = _suite_reports("lemma3.8", p=F(1, 2), n_max=2)
    assert reports and all(r.passed and r.residual == "0" for r in reports)


def test_certified_suite_passes_with_label():
    reports = _suite_reports("prop4.5", tolerance=1e-9)
    assert reports and all(r.passed for r in reports)
    assert all(r.backend == "certified" for r in reports)


def test_exact_mode_invariant():
    # no report labeled exact may combine pass=True with a nonzero residual
    for suite in ("lemma2.1", "prop3.3", "cor3.6"):
        for r in _suite_reports(suite, p=F(1, 2), n_max=2):
            if r.backend == "exact" and r.passed:
                assert r.residual == "0"
            assert r.passed


def test_determinism_up_to_timing():
    def stream(jobs):
        out = []
        for r in _suite_reports("lemma3.5", p=F(1, 2), n_max=1, jobs=jobs):
            payload = json.loads(r.to_json())
            payload.pop("elapsed_ms")
            out.append(json.dumps(payload, sort_keys=True))
        return out

    a, b = stream(1), stream(1)
    assert a == b
    # a worker pool must not change content or order
    c = stream(2)
    assert a == c


def test_certificate_honesty():
    # demanding an impossible tolerance with a shallow term budget must
    # produce reported failures (error or over-tolerance), never a silent
    # pass: every passing report genuinely meets the demanded tolerance
    reports = _suite_reports("prop4.4", tolerance=1e-20, max_terms=25)
    assert any(not r.passed for r in reports)
    for r in reports:
        if r.passed:
            assert not r.error
            assert abs(float(r.residual)) <= 1e-20


def test_float_mode_uses_tolerance_contract():
    reports = _suite_reports("ev3.x", mode="float", p=F(1, 2), n_max=1, tolerance=1e-9)
    assert reports and all(r.passed for r in reports)
    assert all(r.backend == "float" for r in reports)


# ---------------------------------------------------------------------------
# CLI
# ---------------------------------------------------------------------------


def _cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "qracah.cli", *args],
        capture_output=True,
        text=True,
    )


def test_cli_eval_trivial():
    out = _cli("eval", "--fn", "kraw", "--p", "1/2", "--N", "3", "--s", "1",
               "--n", "0", "--x", "2")
    assert out.returncode == 0
    assert out.stdout.strip() == "1"


def test_cli_eval_exact_rational():
    point = ("--p", "1/2", "--N", "2", "--s", "2", "--t", "1", "--v", "-1",
             "--x", "2", "--y", "1")
    out = _cli("eval", "--fn", "rr_inner", *point)
    assert out.returncode == 0
    ref = _cli("eval", "--fn", "rr_closed", *point)
    assert ref.stdout.strip() == out.stdout.strip() == "-195"


def test_cli_eval_pole_exit_code():
    out = _cli("eval", "--fn", "rr_closed", "--p", "1/2", "--N", "2", "--s", "1",
               "--t", "0", "--v", "0", "--x", "1", "--y", "1")
    assert out.returncode == 2
    assert "DenominatorPole" in out.stderr


def test_cli_eval_multivariate():
    out = _cli("eval", "--fn", "rr_multi", "--p", "1/2", "--N", "2,2", "--s", "1",
               "--t", "0", "--v", "0", "--x", "1,0", "--y", "0,2")
    assert out.returncode == 0
    assert "/" in out.stdout or out.stdout.strip().lstrip("-").isdigit()


def test_cli_verify_pass_and_stream(tmp_path):
    out_file = tmp_path / "report.jsonl"
    out = _cli("verify", "--suite", "lemma3.1", "--p", "1/2", "--out", str(out_file))
    assert out.returncode == 0
    lines = out_file.read_text().strip().splitlines()
    assert lines
    for line in lines:
        payload = json.loads(line)
        assert payload["schema_version"] == 1
        assert payload["pass"] is True
        assert payload["residual"] == "0"
        assert payload["backend"] == "exact"
    assert "checks passed" in out.stderr


def test_cli_verify_failure_exit_code():
    out = _cli("verify", "--suite", "prop4.4", "--tol", "1e-20", "--max-terms", "25")
    assert out.returncode == 1
    assert "FAILED" in out.stderr


def test_cli_verify_unknown_suite():
    out = _cli("verify", "--suite", "nope")
    assert out.returncode == 2


def test_cli_table_csv_deterministic(tmp_path):
    args = ("table", "--fn", "rr_inner", "--p", "1/2", "--N", "2", "--s", "1",
            "--t", "0", "--v", "0", "--grid", "x=0:2,y=0:2", "--format", "csv")
    a, b = _cli(*args), _cli(*args)
    assert a.returncode == 0
    assert a.stdout == b.stdout
    lines = a.stdout.strip().splitlines()
    assert lines[0].strip() == "x,y,value"
    assert len(lines) == 1 + 9  # header plus the full grid, row-major
    assert lines[1].startswith("0,0,")


def test_cli_table_json(tmp_path):
    out = _cli("table", "--fn", "weights", "--p", "1/2", "--N", "2", "--s", "0",
               "--grid", "n=0:2,x=0:2", "--format", "json")
    assert out.returncode == 0
    rows = [json.loads(line) for line in out.stdout.strip().splitlines()]
    assert len(rows) == 9
    assert set(rows[0]) == {"n", "x", "w", "W_invbase"}


def test_cli_jobs_parallel_matches_serial():
    base = ("verify", "--suite", "ev3.x", "--p", "1/2")
    serial = _cli(*base)
    parallel = _cli(*base, "--jobs", "2")
    strip = lambda s: [
        json.dumps({k: v for k, v in json.loads(l).items() if k != "elapsed_ms"},
                   sort_keys=True)
        for l in s.strip().splitlines()
    ]
    assert strip(serial.stdout) == strip(parallel.stdout)


def test_cli_table_multivariate_grid():
    out = _cli("table", "--fn", "rr_multi", "--p", "1/2", "--N", "2,2",
               "--s", "1", "--t", "0", "--v", "0",
               "--grid", "x1=0:1,x2=0:1,y1=0:1,y2=0:1", "--format", "csv")
    assert out.returncode == 0
    lines = out.stdout.strip().splitlines()
    assert lines[0].strip() == "x1,x2,y1,y2,value"
    assert len(lines) == 1 + 16
