import pytest
import sympy as sp

from liext import Chart, JetSpace, OrderOverflow, d, parse, prolong, total_derivative
from liext.dsl import parse_operator

from oracles import characteristic_prolongation, to_sympy

TX = Chart(("t", "x"), ("u",))
XY = Chart(("x", "y"), ("u",))


def test_coordinates_are_graded_and_sorted():
    assert JetSpace(TX, 2).coordinates == ("u_t", "u_x", "u_tt", "u_tx", "u_xx")


def test_total_derivatives_commute():
    jet = JetSpace(TX, 3)
    f = parse("u_t^2*x + u*u_x*t")
    assert total_derivative(jet, "t", total_derivative(jet, "x", f)) == \
        total_derivative(jet, "x", total_derivative(jet, "t", f))


def test_total_derivative_order_overflow():
    with pytest.raises(OrderOverflow):
        total_derivative(JetSpace(TX, 1), "t", parse("u_x"))


def test_boost_prolongation_second_order():
    Q = prolong(parse_operator("t*d/dx + x*d/dt"), JetSpace(TX, 2))
    assert Q.coefficient("u_tx") == parse("-u_tt - u_xx")
    assert Q.coefficient("u_tt") == parse("-2*u_tx")


def test_scaling_doubles_on_second_derivatives():
    Q = prolong(parse_operator("x*d/dx"), JetSpace(XY, 2))
    assert Q.coefficient("u_xx") == parse("-2*u_xx")
    assert Q.coefficient("u_xy") == parse("-u_xy")


def test_shear_acts_with_factor_two_on_u_yy():
    Q = prolong(parse_operator("y*d/dx"), JetSpace(XY, 2))
    assert Q.coefficient("u_yy") == parse("-2*u_xy")


def test_ancillary_component_passes_through():
    chart = Chart(("t", "x"), ("u",), ("R",))
    Q = prolong(parse_operator("d/dt + R*d/dR").with_chart(chart), JetSpace(chart, 2))
    assert str(Q) == "d/dt + R*d/dR"


@pytest.mark.parametrize("op", ["t*d/dx + x*d/dt + u*d/du", "x^2*d/dt + u*t*d/du", "u*d/dx + t*d/du"])
def test_matches_characteristic_formula(op):
    Q = parse_operator(op).with_chart(TX)
    got = prolong(Q, JetSpace(TX, 2))
    xi = {v: to_sympy(Q.coefficient(v)) for v in ("t", "x")}
    ref = characteristic_prolongation(xi, to_sympy(Q.coefficient("u")), ("t", "x"), "u", 2)
    for name, val in ref.items():
        assert sp.expand(to_sympy(got.coefficient(name)) - val) == 0
