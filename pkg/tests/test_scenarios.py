import json

import pytest

from harmconv import scenarios
from harmconv.errors import UnknownScenario

FAST = {"grid_radii": 10, "grid_angles": 128}


@pytest.mark.parametrize("sid", sorted(scenarios.REGISTRY))
def test_defaults(sid):
    res = scenarios.run_scenario(sid)
    d = json.loads(json.dumps(res.as_dict()))
    assert d["verdict"] == ("probe" if sid == "th4.1" else "pass")
    assert scenarios.recompute_verdict(d) == d["verdict"]
    assert d["runtime"] > 0 and d["tolerances"]["cert_tol"] == scenarios.CERT_TOL


def test_th43_case1_worked_instance():
    d = scenarios.run_scenario("th4.3-case1", {"a": 0.5, "a2": 0.2}).as_dict()
    assert d["preconditions"]["condition"]
    assert (d["inputs"]["zero_counts"]["zeros_inside"], d["inputs"]["zero_counts"]["zeros_on_boundary"]) == (2, 1)
    assert d["verdict"] == "pass"


def test_th42_n1():
    d = scenarios.run_scenario("th4.2", {"a": 0.0, "n": 1}).as_dict()
    assert d["preconditions"]["abs_a1_plus_1_in_range"] and d["verdict"] == "pass"
    assert {c["case"] for c in d["certificates"]} == {"case1", "case2"}


def test_th42_out_of_range_is_skipped():
    d = scenarios.run_scenario("th4.2", {"a": -0.5, "n": 2}).as_dict()
    assert d["verdict"] == "skipped" and "outside" in d["reason"]


def test_th34_single_member_reduces_to_th32():
    a = scenarios.run_scenario("th3.4", dict(FAST, n=1)).as_dict()
    b = scenarios.run_scenario("th3.2", FAST).as_dict()
    assert a["verdict"] == b["verdict"] == "pass"
    assert a["inputs"]["weights"] == [1.0]
    ma = [c["certificate"]["min_real_part"] for c in a["certificates"]]
    mb = [c["certificate"]["min_real_part"] for c in b["certificates"]]
    assert ma == pytest.approx(mb, abs=1e-12)


def test_seed_is_deterministic():
    a = scenarios.run_scenario("th3.4", dict(FAST, seed=7)).as_dict()
    b = scenarios.run_scenario("th3.4", dict(FAST, seed=7)).as_dict()
    assert a["inputs"]["weights"] == b["inputs"]["weights"] and a["certificates"] == b["certificates"]


def test_unknown():
    with pytest.raises(UnknownScenario):
        scenarios.run_scenario("th0")


def test_verdict_follows_reports():
    d = scenarios.run_scenario("th2.2", FAST).as_dict()
    d["certificates"][0]["certificate"]["min_real_part"] = -1.0
    assert scenarios.recompute_verdict(d) == "fail"
    d["preconditions"]["locally_univalent"] = False
    assert scenarios.recompute_verdict(d) == "skipped"


def test_threads_env(monkeypatch):
    monkeypatch.setenv("HARMCONV_THREADS", "3")
    assert scenarios.threads() == 3
    monkeypatch.setenv("HARMCONV_THREADS", "junk")
    assert scenarios.threads() == 1
    a = scenarios.run_scenario("th3.2", FAST).as_dict()
    assert a["verdict"] == "pass"
