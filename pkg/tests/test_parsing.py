import pytest

from liext import ParseError, parse
from liext.parsing import tokenize


def test_power_operator_spellings_agree():
    assert parse("x**2") == parse("x^2")


def test_unary_minus_and_negative_exponent():
    assert parse("-x^-2") == parse("-1/x^2")


def test_aliases_rename_jet_permutations():
    assert parse("u_xt", {"u_xt": "u_tx"}) == parse("u_tx")


def test_function_names_split_into_head_and_index():
    e = parse("Phi_yx(x,y)")
    assert str(e) == "Phi_xy(x,y)"


@pytest.mark.parametrize("text", ["x +", "(x", "x $ y", "exp()", "2^x", ""])
def test_bad_input_reports_a_position(text):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert info.value.position >= 0


def test_tokenizer_keeps_rationals_exact():
    assert [t[1] for t in tokenize("3/4*x")][:3] == ["3", "/", "4"]
