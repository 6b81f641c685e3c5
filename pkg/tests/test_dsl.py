import pytest

from liext.corpus import CASES
from liext.dsl import AnsatzText, SpecError, parse_operator, parse_spec


def test_minimal_spec():
    spec = parse_spec("vars x; deps u(x); op Q = d/dx; task check_algebra;")
    assert spec.independent == ("x",) and list(spec.ops) == ["Q"]


def test_bundled_poincare_case_has_three_operators():
    spec = parse_spec(CASES["P1"].spec)
    assert list(spec.ops) == ["P_t", "P_x", "J"]
    assert str(spec.ops["J"]) == "x*d/dt + t*d/dx"


@pytest.mark.parametrize("text, line", [
    ("vars x;\nop Q = d/dx;\ntask prolong op=W;", 3),
    ("vars x;\nop Q = y*d/dx;", 2),
    ("vars x;\nvars x;", 2),
    ("vars x;\ndeps u(t);", 2),
    ("vars x;\naux R;\naux S;", 3),
    ("vars x;\nop Q = d/dx;\ntask frobnicate;", 3),
    ("vars x;\nop Q = x;", 2),
    ("vars x;\nop Q = d/dx", 2),
    ("vars x;\ntask check_algebra;\nvars y;", 3),
])
def test_errors_carry_line_numbers(text, line):
    with pytest.raises(SpecError) as info:
        parse_spec(text)
    assert info.value.line == line


def test_task_parameters():
    spec = parse_spec('vars t, x; aux R; op P = d/dt;\n'
                      'task solve_adi ansatz=poly(t, x; deg<=2) * {1, exp(t)} kmin=-2 kmax=2 ext={1};\n'
                      'task pushforward op=P fwd={t: "t", R: "R*exp(-t)"};\n'
                      'task verify_adi "x" "x^2" order=0;')
    solve, push, verify = spec.tasks
    assert solve.params["ansatz"] == AnsatzText("poly(t, x; deg<=2) * {1, exp(t)}")
    assert (solve.params["kmin"], solve.params["kmax"], solve.params["ext"]) == (-2, 2, ["1"])
    assert push.params["fwd"] == {"t": "t", "R": "R*exp(-t)"}
    assert verify.args == ["x", "x^2"] and verify.params == {"order": 0}


def test_comments_and_strings_with_semicolons():
    spec = parse_spec('# header\nvars x; # trailing\nop Q = d/dx;\ntask verify_adi "1";')
    assert spec.tasks[0].args == ["1"]


def test_operator_grouping_and_aliases():
    Q = parse_operator("t*(d/dx + R*d/dR) - 2*u_xt*d/du_xt", {"u_xt": "u_tx"})
    assert Q.coefficients == parse_operator("t*d/dx + R*t*d/dR - 2*u_tx*d/du_tx").coefficients


def test_operator_must_be_linear_in_derivatives():
    with pytest.raises(ValueError):
        parse_operator("d/dx*d/dy")
