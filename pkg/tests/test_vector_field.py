import pytest

from liext import (
    Chart,
    DependentBasis,
    NotClosed,
    NotInverse,
    VectorField,
    commutator,
    d,
    parse,
    pushforward,
    structure_constants,
)
from liext.dsl import parse_operator

P_t, P_x, J = d("t"), d("x"), parse_operator("t*d/dx + x*d/dt")


def test_poincare_structure_constants():
    c = structure_constants([P_t, P_x, J], ("P_t", "P_x", "J"))
    assert c.format_bracket(0, 1) == "[P_t, P_x] = 0"
    assert c.format_bracket(0, 2) == "[P_t, J] = P_x"
    assert c.format_bracket(1, 2) == "[P_x, J] = P_t"
    assert c.is_antisymmetric() and c.satisfies_jacobi()


@pytest.mark.parametrize("q2, rhs", [("x*d/dx", "Q1"), ("y*d/dx", "0"), ("x*d/dx + d/dy", "Q1")])
def test_two_dimensional_brackets(q2, rhs):
    c = structure_constants([d("x"), parse_operator(q2)])
    assert c.format_bracket(0, 1) == f"[Q1, Q2] = {rhs}"


def test_non_closed_pair_reports_residual():
    with pytest.raises(NotClosed) as info:
        structure_constants([d("x"), parse_operator("x^2*d/dx")])
    assert info.value.residual is not None


def test_dependent_basis_is_rejected():
    with pytest.raises(DependentBasis):
        structure_constants([d("x"), d("x", 2)])


def test_commutator_is_a_derivation_bracket():
    Q1 = parse_operator("x*y*d/dx + d/dy")
    Q2 = parse_operator("y^2*d/dx")
    f = parse("x^3*y")
    assert commutator(Q1, Q2)(f) == Q1(Q2(f)) - Q2(Q1(f))


def test_chart_orders_printing():
    chart = Chart(("t", "x"), ("u",), ("R",))
    Q = VectorField({"R": parse("R"), "x": parse("t"), "t": parse("x")}, chart)
    assert str(Q) == "x*d/dt + t*d/dx + R*d/dR"


def test_pushforward_straightens_an_extended_translation():
    Q = parse_operator("d/dx + R*d/dR")
    out = pushforward(Q, {"x": "x", "S": "R*exp(-x)"}, {"x": "x", "R": "S*exp(x)"})
    assert out == d("x")


def test_pushforward_rejects_non_inverse_maps():
    with pytest.raises(NotInverse):
        pushforward(d("x"), {"y": "2*x"}, {"x": "y"})
