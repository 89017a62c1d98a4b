import json

import pytest

from subadjoint.cases import CaseExcludedError
from subadjoint.cli import main
from subadjoint.verify import (
    CheckRecord,
    RunOptions,
    VerificationReport,
    emit,
    exit_code,
    list_cases,
    run,
)


def test_registry_default_counts():
    cases = list_cases()
    active = [c for c in cases if not c.excluded]
    # 6 B-ranks + 5 D-ranks + 4 exceptional
    assert len(active) == 6 + 5 + 4
    excluded = [c for c in cases if c.excluded]
    assert [c.case_id for c in excluded] == ["G2"]
    assert "twisted cubic" in excluded[0].note


def test_registry_rank_ceiling_filter():
    active = [c.case_id for c in list_cases(4) if not c.excluded]
    assert active == ["B3", "B4", "D4", "F4", "E6", "E7", "E8"]


def test_registry_dims_internally_consistent():
    for c in list_cases():
        if c.excluded:
            continue
        assert c.dim_V == 2 * c.dim_l1 + 2
        assert sum(c.g_dims) == 1 + c.dim_l + c.dim_V


def test_run_excluded_case_raises():
    with pytest.raises(CaseExcludedError):
        run("G2", {"jacobi"})


def test_run_unknown_check_rejected():
    with pytest.raises(ValueError):
        run("B3", {"bogus"})


def test_empty_check_set_is_vacuous():
    rep = run("B3", set())
    assert rep.vacuous
    assert rep.checks == []
    assert rep.status == "PASS"
    assert exit_code(rep) == 0


def test_b3_full_run_passes():
    rep = run("B3", {"all"}, RunOptions(seed=7))
    assert rep.status == "PASS"
    ids = [c.check_id for c in rep.checks]
    for expected in ("case-dims", "contact-grading", "jacobi-ambient",
                     "sigma-form", "xvv-kernel", "prolong-dims",
                     "restricted-differentials", "cI-six-families"):
        assert expected in ids
    assert exit_code(rep) == 0


def test_report_status_ordering():
    mk = lambda status: CheckRecord(check_id="x", status=status)
    rep = VerificationReport("B3", "0", [mk("PASS"), mk("FAIL"),
                                         mk("INCONCLUSIVE")], {}, {})
    assert rep.status == "FAIL"          # INCONCLUSIVE never masks FAIL
    assert exit_code(rep) == 1
    rep = VerificationReport("B3", "0", [mk("PASS"), mk("SKIPPED")], {}, {})
    assert rep.status == "DEGRADED"
    assert exit_code(rep) == 2
    rep = VerificationReport("B3", "0", [mk("PASS")], {}, {})
    assert exit_code(rep) == 0


def test_json_roundtrip():
    rep = run("B3", {"weights"}, RunOptions(seed=7))
    doc = emit(rep, fmt="json")
    parsed = json.loads(doc)
    assert parsed["case"] == "B3"
    assert parsed["status"] == rep.status
    assert parsed["environment"]["seed"] == 7
    byid = {c["id"]: c for c in parsed["checks"]}
    assert byid["cI-embedding-weight"]["values"]["cI_omega_star"] == "3/2"
    assert all(c["millis"] == 0 for c in parsed["checks"])


def test_emit_deterministic_in_process():
    a = emit(run("D4", {"weights"}, RunOptions(seed=7)), fmt="json")
    b = emit(run("D4", {"weights"}, RunOptions(seed=7)), fmt="json")
    assert a == b


def test_e_series_defaults_skip_solvers():
    rep = run("E6", {"prolong", "spencer"}, RunOptions(seed=1))
    statuses = {c.check_id: c.status for c in rep.checks}
    assert statuses["prolong-dims"] == "SKIPPED"
    assert statuses["spencer-checks"] == "SKIPPED"
    assert rep.status == "DEGRADED"
    assert exit_code(rep) == 2


def test_e_series_exact_mode_guard():
    rep = run("E6", {"prolong"}, RunOptions(seed=1, heavy=True, mode="exact"))
    statuses = {c.check_id: c.status for c in rep.checks}
    assert statuses["prolong-dims"] == "SKIPPED"
    assert "size guard" in [
        c.values.get("reason", "") for c in rep.checks
        if c.check_id == "prolong-dims"
    ][0]


def test_cli_list(capsys):
    assert main(["--list"]) == 0
    out = capsys.readouterr().out
    assert "G2" in out and "EXCLUDED" in out


def test_cli_excluded_case_usage_error(capsys):
    assert main(["--case", "G2"]) == 3


def test_cli_unknown_check_usage_error(capsys):
    assert main(["--case", "B3", "--checks", "nope"]) == 3


def test_cli_single_case_json(capsys, tmp_path):
    out = tmp_path / "rep.json"
    code = main(["--case", "B3", "--checks", "weights", "--seed", "7",
                 "--format", "json", "--out", str(out)])
    assert code == 0
    parsed = json.loads(out.read_text())
    assert parsed["case"] == "B3"
