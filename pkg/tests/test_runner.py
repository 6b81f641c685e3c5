from liext.corpus import CASES
from liext.dsl import parse_spec
from liext.parsing import parse
from liext.report import parse_machine
from liext.runner import run, run_text


def _blocks(cid):
    return parse_machine(run(parse_spec(CASES[cid].spec)).render("machine"))


def test_header_carries_version_seed_and_digest():
    head = _blocks("T1")[0]
    assert head["version"] == "0.1.0" and head["seed"] == "20240611" and len(head["spec_sha256"]) == 64


def test_poincare_check_algebra_section():
    sec = _blocks("P1")[1]
    assert sec["bracket.P_t.P_x"] == "0"
    assert sec["bracket.P_t.J"] == "P_x"
    assert sec["bracket.P_x.J"] == "P_t"


def test_two_dim_extend_family_dimension():
    sec = next(b for b in _blocks("A1") if b.get("task") == "extend")
    assert sec["dimension"] == "6"
    assert sec["member.2"] == "(1, x)"


def test_scaled_realisation_batch_all_absolute():
    sec = next(b for b in _blocks("P2") if b.get("task") == "verify_adi")
    assert sec["status"] == "OK"
    assert [sec[f"verdict.{k}"] for k in range(1, 6)] == ["ADI"] * 5


def test_module_errors_become_failed_sections():
    report = run_text("vars x; op Q = d/dx; op W = x^2*d/dx; task check_algebra; task verify_adi \"x\";")
    first, second = report.sections
    assert first.failed and "NotClosed" in first.lines[0]
    assert second.failed
    assert report.failed


def test_determinism_and_round_trip():
    text = run(parse_spec(CASES["P1"].spec)).render()
    assert text == run(parse_spec(CASES["P1"].spec)).render()
    for block in parse_machine(text):
        for key, value in block.items():
            if key.startswith(("expr.", "adi.", "factor")):
                assert str(parse(value)) == value


def test_seed_is_recorded_and_results_are_stable():
    a = parse_machine(run(parse_spec(CASES["P1"].spec), seed=5).render("machine"))
    b = parse_machine(run(parse_spec(CASES["P1"].spec)).render("machine"))
    assert a[0]["seed"] == "5"
    assert a[1:] == b[1:]
