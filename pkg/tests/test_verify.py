from __future__ import annotations

import json

import pytest

from ringfano.constructions import build_complete
from ringfano.io import write_3g
from ringfano.verify import (
    CLAIMS,
    ClaimResult,
    FixtureError,
    VerifyConfig,
    exit_code,
    render_figures,
    report_json,
    run_all,
)

FAST = ["ring-lm-property", "turan-t-parity", "bound-constants", "q3-blowup-rings", "ex2-empty-family"]


def test_registry_ids_unique():
    ids = [c.claim_id for c in CLAIMS]
    assert len(ids) == len(set(ids)) == 15
    assert {c.claim_id for c in CLAIMS if c.slow} == {"density-limits", "s-optimization"}


def test_selected_claims_pass_and_others_skip():
    res = run_all(VerifyConfig(only=FAST))
    assert [r.claim_id for r in res] == [c.claim_id for c in CLAIMS]
    status = {r.claim_id: r.status for r in res}
    assert all(status[c] == "pass" for c in FAST)
    assert sum(s == "skipped" for s in status.values()) == len(CLAIMS) - len(FAST)
    assert exit_code(res) == 0


def test_skip_slow_marks_slow_claims():
    cfg = VerifyConfig(only=["density-limits", "s-optimization", "bound-constants"], skip_slow=True)
    res = {r.claim_id: r for r in run_all(cfg)}
    assert res["density-limits"].status == "skipped"
    assert res["density-limits"].details["reason"] == "slow claim skipped"
    assert res["bound-constants"].status == "pass"


def test_report_is_byte_identical_across_runs():
    cfg = VerifyConfig(only=FAST + ["chvatal-szemeredi"], seed=1234)
    a = report_json(run_all(cfg), cfg)
    b = report_json(run_all(cfg), cfg)
    assert a == b
    doc = json.loads(a)
    assert doc["seed"] == 1234 and doc["summary"]["fail"] == 0


def test_parallel_run_matches_serial():
    serial = VerifyConfig(only=FAST)
    parallel = VerifyConfig(only=FAST, jobs=2)
    assert report_json(run_all(serial), serial) == report_json(run_all(parallel), serial)


def test_unknown_claim_rejected():
    with pytest.raises(ValueError, match="no-such-claim"):
        run_all(VerifyConfig(only=["no-such-claim"]))


def test_bad_fixture_names_file(tmp_path):
    bad = tmp_path / "broken.3g"
    bad.write_text("this is not a graph\n", encoding="utf-8")
    with pytest.raises(FixtureError) as info:
        run_all(VerifyConfig(only=["bound-constants"], fixtures=[str(bad)]))
    d = info.value.to_dict()
    assert d["error"] == "fixture" and d["file"] == str(bad)


def test_fixture_host_is_used(tmp_path):
    host = tmp_path / "k9.3g"
    write_3g(build_complete(9), host)
    res = {r.claim_id: r for r in run_all(VerifyConfig(only=["fano-pipeline"], fixtures=[str(host)]))}
    assert res["fano-pipeline"].status == "pass"
    assert str(host) in json.dumps(res["fano-pipeline"].details)


def test_exit_code():
    ok = ClaimResult("a", "s", "pass")
    assert exit_code([ok, ClaimResult("b", "s", "skipped")]) == 0
    assert exit_code([ok, ClaimResult("b", "s", "fail")]) == 1


def test_figures_written(tmp_path):
    res = run_all(VerifyConfig(only=["bound-constants"]))
    paths = render_figures(res, tmp_path / "figs")
    assert [p.name for p in paths] == ["s_density_curves.png"]
    assert paths[0].read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
