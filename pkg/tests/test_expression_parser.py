"""Tests for the expression grammar and spec files."""

import pytest

from base_algebra import GLOBAL_VARIABLES, LOCAL_VARIABLES, RatFunc
from errors import SpecSyntaxError, SpecValidationError
from expression_parser import parse_expression, parse_spec, tokenize


def gen(name, p, names=LOCAL_VARIABLES):
    return RatFunc.gen(name, p, names)


class TestExpressions:
    def test_precedence(self):
        t, x = gen("t", 3), gen("x", 3)
        assert parse_expression("x + 2*x/t^2", 3) == x + 2 * x / t ** 2
        assert parse_expression("-x^2", 3) == -(x ** 2)
        assert parse_expression("(x + t)^2", 3) == (x + t) ** 2

    def test_negative_exponent(self):
        t = gen("t", 2)
        assert parse_expression("t^-3", 2) == t ** -3

    def test_coefficients_reduce_mod_p(self):
        assert parse_expression("7*x", 5) == 2 * gen("x", 5)

    def test_global_variables(self):
        x1 = gen("x1", 2, GLOBAL_VARIABLES)
        assert parse_expression("x1^2", 2, GLOBAL_VARIABLES) == x1 ** 2

    @pytest.mark.parametrize(
        "text, message",
        [
            ("x/0", "division by zero"),
            ("x/(t - t)", "division by zero"),
            ("0^-1", "division by zero"),
            ("z + 1", "unknown variable 'z'"),
            ("x +", "unexpected"),
            ("(x + t", r"expected '\)'"),
            ("x^t", "exponent must be an integer"),
            ("", "empty expression"),
            ("x $ t", "unexpected character"),
        ],
    )
    def test_errors(self, text, message):
        with pytest.raises(SpecSyntaxError, match=message):
            parse_expression(text, 2)

    def test_error_position(self):
        with pytest.raises(SpecSyntaxError) as info:
            parse_expression("x + z", 2)
        assert (info.value.line, info.value.column) == (1, 5)

    def test_tokens(self):
        kinds = [token.kind for token in tokenize('p = 2 # note\ncomponents = ["x"]')]
        assert kinds == ["name", "op", "int", "name", "op", "op", "string", "op", "eof"]


SPEC = """
# a wild character
p = 2
s = 2
mode = local
components = ["x/t", "1/t^3"]
"""


class TestSpecFiles:
    def test_parse(self):
        spec = parse_spec(SPEC)
        assert (spec.p, spec.s, spec.mode) == (2, 2, "local")
        assert spec.elements() == [parse_expression("x/t", 2), parse_expression("1/t^3", 2)]

    def test_single_line(self):
        spec = parse_spec('p=3 s=1 mode=global components=["x2/x1^3"]')
        assert spec.variables == GLOBAL_VARIABLES

    def test_empty_length(self):
        assert parse_spec("p=2 s=0 mode=local components=[]").elements() == []

    @pytest.mark.parametrize(
        "text, message",
        [
            ('p=4 s=1 mode=local components=["x"]', r"p must be prime in \{2,3,5,7\}"),
            ('p=2 s=2 mode=local components=["x"]', "component count ≠ s"),
            ('p=5 s=3 mode=local components=["x", "x", "x"]', "s must be in 0..2"),
            ('p=2 s=1 mode=plane components=["x"]', "mode must be local or global"),
            ('p=2 s=1 mode=local', "missing keys: components"),
            ('p=x s=1 mode=local components=["x"]', "p must be an integer"),
        ],
    )
    def test_validation_errors(self, text, message):
        with pytest.raises(SpecValidationError, match=message):
            parse_spec(text)

    @pytest.mark.parametrize(
        "text, message",
        [
            ('p=2 p=2 s=1 mode=local components=["x"]', "duplicate key 'p'"),
            ('q=2 s=1 mode=local components=["x"]', "unknown key 'q'"),
            ('p=2 s=1 mode=local components=x', "bracketed list"),
            ('p=2 s=1 mode=local components=["x"', "expected ','"),
            ('p=2 s=1 mode=local components=["x', "unterminated string"),
        ],
    )
    def test_syntax_errors(self, text, message):
        with pytest.raises(SpecSyntaxError, match=message):
            parse_spec(text)

    def test_component_errors_point_into_file(self):
        text = 'p = 2\ns = 1\nmode = local\ncomponents = ["x + w"]\n'
        with pytest.raises(SpecSyntaxError) as info:
            parse_spec(text)
        assert info.value.line == 4
        assert info.value.column == 20
