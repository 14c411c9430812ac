import json

import pytest

from wittforge.scenarios import TAMPERS, run, run_dim5, run_dim7


def test_dim5_passes():
    r = run_dim5()
    assert r.passed and r.verdict == "pass"
    assert [c.id for c in r.checks] == [1, 2, 3, 4, 5]
    assert r.check(5).data["index"] == 16


def test_dim7_passes_with_expected_sizes():
    r = run_dim7()
    assert r.passed and len(r.checks) == 9
    sizes = [case["size"] for case in r.check(9).data["cases"]]
    assert sizes == [1, 1, 3, 3]
    assert r.check(5).data["index"] == 64


@pytest.mark.parametrize("name", ["dim5", "dim7"])
def test_reports_are_deterministic(name):
    a, b = run(name).to_json(), run(name).to_json()
    assert a == b
    d = json.loads(a)
    assert d["verdict"] == "pass" and "failed_check" not in d
    for c in d["checks"]:
        assert set(c) == {"id", "anchor", "pass", "data"}
        assert c["anchor"] and "description" in c["data"]
    assert d["assumptions"]


def test_specialisation_breaks_ramification():
    r = run_dim5(subst={"c": "1"}, keep_going=True)
    assert not r.passed
    assert not r.check(2).passed
    five = r.check(5)
    assert not five.passed and five.data["verdict"] == "Inconclusive" and five.data["index"] == 8


def test_abort_on_first_failure():
    r = run_dim5(subst={"c": "1"})
    assert len(r.checks) == 2 and r.first_failure.id == 2
    assert json.loads(r.to_json())["failed_check"] == 2
    assert "aborted" in r.summary()


@pytest.mark.parametrize("name", ["dim5", "dim7"])
def test_variable_renaming(name):
    ren = {"a": "t", "b": "u", "c": "w"}
    r = run(name, rename=ren)
    assert r.passed
    assert "t" in r.field


def test_tampers():
    assert set(TAMPERS) == {"one-coset", "coset-pair", "mirrored-cosets"}
    r = run_dim7(tamper="mirrored-cosets")
    assert not r.passed and r.first_failure.id == 9
    assert [c["size"] for c in r.check(9).data["cases"]] == [6, 6, 2, 2]
    for mode, sizes in [("one-coset", [2, 2, 3, 3]), ("coset-pair", [3, 3, 3, 3])]:
        r = run_dim7(tamper=mode)
        assert r.passed
        assert [c["size"] for c in r.check(9).data["cases"]] == sizes
    with pytest.raises(ValueError):
        run_dim7(tamper="nope")
    with pytest.raises(ValueError):
        run("dim9")
