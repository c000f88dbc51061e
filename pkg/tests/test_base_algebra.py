"""Tests for F_p(x1..xk) arithmetic, p-th roots and the radicial extension."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from base_algebra import (
    LOCAL_VARIABLES,
    RESIDUE_VARIABLES,
    RadicialElem,
    RatFunc,
    cancel_factors,
    coprime_basis,
    derivative,
    evaluate_fraction,
    evaluate_polynomial,
    format_ratfunc,
    frobenius_power,
    function_ring,
    is_pth_power,
    prime_field,
    pth_root,
    radicial_root,
    ratfunc_normalize,
    substitute,
    transfer,
)
from conftest import local_elements, residue_fractions, residue_polys
from errors import DivisionByZeroError, NotPthPowerError, PreconditionError, UnsupportedError
from expression_parser import parse_expression


def residue(text, p):
    return parse_expression(text, p, RESIDUE_VARIABLES)


class TestRatFunc:
    def test_normalize_cancels_common_factor(self):
        assert residue("(x^2 - 1)/(x - 1)", 3) == residue("x + 1", 3)

    def test_denominator_is_monic(self):
        f = residue("1/(2*x + 1)", 3)
        assert f.denom.LC == f.ring.domain.one
        assert f == residue("2/(x + 2)", 3)

    def test_constants_reduce_mod_p(self):
        assert RatFunc.constant(5, 3, RESIDUE_VARIABLES) == 2
        assert RatFunc.constant(5, 3, RESIDUE_VARIABLES).constant_value() == 2

    def test_division_by_zero(self):
        x = RatFunc.gen("x", 2, RESIDUE_VARIABLES)
        with pytest.raises(DivisionByZeroError, match="division by zero"):
            x / (x - x)
        with pytest.raises(DivisionByZeroError):
            (x - x) ** -1

    def test_mixing_fields_is_rejected(self):
        with pytest.raises(PreconditionError):
            RatFunc.gen("x", 2, RESIDUE_VARIABLES) + RatFunc.gen("x", 3, RESIDUE_VARIABLES)
        with pytest.raises(PreconditionError):
            RatFunc.gen("x", 2, RESIDUE_VARIABLES) + RatFunc.gen("x", 2, LOCAL_VARIABLES)

    def test_unsupported_prime(self):
        with pytest.raises(UnsupportedError, match=r"p must be prime in \{2,3,5,7\}"):
            prime_field(11)

    def test_used_variables(self):
        f = parse_expression("x/(1 + x)", 2)
        assert f.names == LOCAL_VARIABLES
        assert f.used_variables() == ("x",)
        assert not f.is_constant()

    @given(st.data())
    def test_field_axioms(self, data):
        p = data.draw(st.sampled_from((2, 3, 5)))
        a = data.draw(residue_fractions(p))
        b = data.draw(residue_fractions(p))
        c = data.draw(residue_fractions(p))
        assert a + b == b + a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a - a == 0
        if b:
            assert (a / b) * b == a

    @given(st.data())
    def test_format_parses_back(self, data):
        p = data.draw(st.sampled_from((2, 3, 5, 7)))
        f = data.draw(residue_fractions(p))
        assert residue(format_ratfunc(f), p) == f


class TestPthPowers:
    def test_pth_root_of_square(self):
        assert pth_root(residue("x^4 + 1", 2)) == residue("x^2 + 1", 2)

    def test_non_power(self):
        x = residue("x", 2)
        assert not is_pth_power(x)
        with pytest.raises(NotPthPowerError, match="not a p-th power"):
            pth_root(x)

    def test_constants_are_powers(self):
        assert is_pth_power(RatFunc.constant(2, 3, RESIDUE_VARIABLES))

    def test_multivariate_test_unsupported(self):
        with pytest.raises(UnsupportedError):
            is_pth_power(parse_expression("x*t", 2))

    @given(st.data())
    def test_frobenius_power_is_pth_power(self, data):
        p = data.draw(st.sampled_from((2, 3)))
        f = data.draw(residue_fractions(p))
        image = frobenius_power(f)
        assert image == f ** p
        assert is_pth_power(image)
        assert pth_root(image) == f

    @given(st.data())
    def test_derivative_kills_pth_powers(self, data):
        p = data.draw(st.sampled_from((2, 3)))
        f = data.draw(residue_polys(p))
        assert not derivative(f ** p, "x")

    def test_derivative_quotient_rule(self):
        f = parse_expression("x/t^2", 3)
        assert derivative(f, "t") == parse_expression("x/t^3", 3)
        assert derivative(f, "x") == parse_expression("1/t^2", 3)


class TestTransfer:
    def test_rename_into_global_field(self):
        f = parse_expression("x/t^3", 2)
        g = transfer(f, ("x1", "x2"), {"t": "x1", "x": "x2"})
        assert g == parse_expression("x2/x1^3", 2, ("x1", "x2"))

    def test_missing_counterpart(self):
        with pytest.raises(UnsupportedError):
            transfer(parse_expression("x/t", 2), RESIDUE_VARIABLES)

    def test_substitute(self):
        f = parse_expression("x/t", 3)
        images = {"t": parse_expression("t + t^2", 3), "x": parse_expression("x + t", 3)}
        assert substitute(f, images) == parse_expression("(x + t)/(t + t^2)", 3)


class TestRadicial:
    def test_root_powers_back_to_embedding(self):
        for p in (2, 3):
            f = residue("x^2 + x + 1", p)
            assert radicial_root(f) ** p == RadicialElem.embed(f)

    def test_descent(self):
        embedded = RadicialElem.embed(residue("x + 1", 3))
        assert embedded.descends()
        assert embedded.descend() == residue("x + 1", 3)
        root = radicial_root(residue("x", 3))
        assert not root.descends()
        with pytest.raises(PreconditionError):
            root.descend()

    def test_mixed_arithmetic(self):
        y = radicial_root(residue("x", 2))
        total = y + residue("1", 2)
        assert str(total) == "y + 1"
        assert total - 1 == y

    def test_root_needs_residue_element(self):
        with pytest.raises(PreconditionError):
            radicial_root(parse_expression("t", 2))


class TestPolynomialEvaluation:
    def gens(self, p):
        return function_ring(p, LOCAL_VARIABLES).gens

    def test_coprime_basis(self):
        t, x = self.gens(3)
        u = 1 + x * t
        basis = coprime_basis([t ** 4 * u, t * u ** 3, 2 * x * (1 + t)])
        assert sorted(map(str, basis)) == sorted(map(str, [t, x, u, 1 + t]))

    def test_cancel_over_irreducible_bases(self):
        t, x = self.gens(3)
        u = 1 + x * t
        numer, denom = cancel_factors(t * u ** 2 * (x + 1), [(t, 3), (u, 1)])
        assert (numer, denom) == (u * (x + 1), t ** 2)

    def test_cancel_splits_composite_base(self):
        t, x = self.gens(2)
        numer, denom = cancel_factors(t * (1 + x), [((1 + t) * (1 + x), 2)])
        assert numer == t
        assert denom == (1 + t) ** 2 * (1 + x)

    def test_lcm_denominator(self):
        t, x = self.gens(2)
        u = 1 + x * t
        a, b = function_ring(2, ("a", "b")).gens
        # a^2 + a*b at 1/(t u) and 1/(t^2 u): lcm t^3 u^2, not the product t^4 u^3
        numer, denom = evaluate_fraction(a ** 2 + a * b, [(t.ring.one, t * u), (t.ring.one, t ** 2 * u)])
        assert denom == t ** 3 * u ** 2
        assert numer == t + 1

    @given(st.data())
    def test_matches_field_arithmetic(self, data):
        p = data.draw(st.sampled_from((2, 3)))
        f = data.draw(local_elements(p, lowest=-2, highest=1, units=True))
        g = data.draw(local_elements(p, lowest=-2, highest=1, units=True))
        a, b = function_ring(p, ("a", "b")).gens
        poly = a ** p * b - a * b ** 2 + 1
        value = evaluate_polynomial(poly, [f, g])
        assert value == f ** p * g - f * g ** 2 + 1
        assert value == ratfunc_normalize(*evaluate_fraction(poly, [f.as_fraction(), g.as_fraction()]))
