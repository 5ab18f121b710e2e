"""Example registry and command-line entry point."""

import json

import pytest

from forge import bench
from forge.cli import main


FAST_IDS = ["es321", "bpf", "inose", "brauer", "figure3", "odd-M",
            "triv-disc", "cti-lattice", "tau-anti", "2x4star"]


def test_registry_ids_unique_and_tagged():
    ids = bench.example_ids()
    assert len(ids) == len(set(ids))
    assert "singular-24" in ids and "m2-family" in ids
    for case_id in ids:
        case = bench.REGISTRY[case_id]
        assert case.description


@pytest.mark.parametrize("case_id", FAST_IDS)
def test_fast_examples_pass(case_id):
    rep = bench.run_example(case_id)
    assert rep.passed, [a.label for a in rep.assertions if not a.passed]
    assert rep.runtime_ms >= 0
    for a in rep.assertions:
        assert a.provenance.startswith(("[PAPER", "[TRIVIAL", "[DERIVED"))


def test_report_json_round_trip():
    rep = bench.run_example("figure3")
    blob = bench.emit_report(rep, "json")
    data = json.loads(blob)
    assert data["id"] == "figure3"
    assert all(a["pass"] for a in data["assertions"])
    assert set(data["assertions"][0]) == {
        "label", "expected", "computed", "provenance", "pass"}


def test_report_text_format():
    rep = bench.run_example("inose")
    text = bench.emit_report(rep, "text")
    assert "PASS" in text and "inose" in text


def test_suffix_overrides():
    rep = bench.run_example("brauer-1-5")
    assert rep.passed
    with pytest.raises(KeyError):
        bench.run_example("no-such-example")


def test_cli_classify_and_lattice():
    assert main(["classify", "y^2 = x^3 + x^2 + s*x"]) == 0
    assert main(["lattice", "U + E8(-1)", "disc"]) == 0


def test_cli_verify():
    assert main(["verify", "figure3"]) == 0
    assert main(["verify", "brauer-1-5", "--format", "json"]) == 0


def test_cli_exit_codes():
    assert main(["classify", "this is not a model"]) == 2
    assert main(["verify", "no-such-example"]) == 2
    assert main(["nonsense-command"]) == 2


def test_cli_height_and_twist():
    assert main(["height", "y^2 = x^3 - x + (1 - t^3 + t)", "(t, 1)"]) == 0
    assert main(["twist", "y^2 = x^3 + x^2 + t^2", "--d", "t"]) == 0
    assert main(["basechange", "y^2 = x^3 + x^2 + t^2*(t-1)*x",
                 "--f", "t^2 + 2"]) == 0
