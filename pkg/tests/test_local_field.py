"""Tests for valuations, exact tails and differentials in F_p(x)((t))."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from base_algebra import RESIDUE_VARIABLES, RatFunc
from conftest import local_elements
from errors import PreconditionError
from expression_parser import parse_expression
from local_field import (
    INFINITY,
    coefficient,
    d_form,
    laurent_polynomial,
    leading_coefficient,
    local_zero,
    principal_part,
    tail,
    valuation,
)


def residue(text, p):
    return parse_expression(text, p, RESIDUE_VARIABLES)


@pytest.mark.parametrize(
    "text, p, expected",
    [
        ("x/t^2", 2, -2),
        ("x*t^3 + t", 3, 1),
        ("1/(t^2*(1 + x*t))", 2, -2),
        ("(t + x)/t", 3, -1),
        ("x", 5, 0),
    ],
)
def test_valuation(text, p, expected):
    assert valuation(parse_expression(text, p)) == expected


def test_valuation_of_zero():
    assert valuation(local_zero(2)) == INFINITY


def test_geometric_series_tail():
    a = parse_expression("1/(1 - t)", 3)
    window = tail(a, 0, 5)
    assert all(window.coefficient(e) == 1 for e in range(5))


def test_tail_of_unit_denominator():
    # x/(t^2 (1 + x t)) = x t^-2 + x^2 t^-1 + x^3 + ... in characteristic 2
    a = parse_expression("x/(t^2*(1 + x*t))", 2)
    assert coefficient(a, -2) == residue("x", 2)
    assert coefficient(a, -1) == residue("x^2", 2)
    assert coefficient(a, 0) == residue("x^3", 2)
    assert coefficient(a, -3) == 0


def test_tail_window_bounds():
    window = tail(parse_expression("x/t", 2), -2, 1)
    with pytest.raises(PreconditionError):
        window.coefficient(1)
    with pytest.raises(PreconditionError):
        tail(parse_expression("x/t", 2), 2, 1)


def test_principal_part_and_leading_coefficient():
    a = parse_expression("x/t^3 + (x + 1)/t + t", 3)
    assert principal_part(a) == {-3: residue("x", 3), -1: residue("x + 1", 3)}
    assert leading_coefficient(a) == residue("x", 3)
    assert principal_part(parse_expression("t + x", 3)) == {}


def test_d_form():
    d_t, d_x = d_form(parse_expression("x/t^3", 2))
    assert d_t == parse_expression("x/t^4", 2)
    assert d_x == parse_expression("1/t^3", 2)


@given(st.data())
def test_laurent_polynomial_rebuilds_tail(data):
    p = data.draw(st.sampled_from((2, 3)))
    a = data.draw(local_elements(p))
    rebuilt = laurent_polynomial(tail(a, -4, 3).coefficients, p)
    assert rebuilt == a


@given(st.data())
def test_valuation_is_multiplicative(data):
    p = data.draw(st.sampled_from((2, 3)))
    a = data.draw(local_elements(p).filter(bool))
    b = data.draw(local_elements(p).filter(bool))
    assert valuation(a * b) == valuation(a) + valuation(b)
    assert valuation(a + b) >= min(valuation(a), valuation(b))


def test_coefficient_of_constant_has_residue_names():
    c = coefficient(RatFunc.constant(1, 2, ("t", "x")), 0)
    assert c.names == RESIDUE_VARIABLES
