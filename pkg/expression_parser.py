# expression_parser.py

"""
Recursive descent parser for rational expressions and character spec files.

Expression grammar:

    expression := term (('+' | '-') term)*
    term       := unary (('*' | '/') unary)*
    unary      := ('+' | '-') unary | power
    power      := atom ('^' ['-'] integer)?
    atom       := integer | variable | '(' expression ')'

A spec file is a sequence of ``key = value`` pairs separated by whitespace
or newlines; ``#`` starts a comment. Keys are p, s, mode and components,
the latter a bracketed list of quoted expressions:

    p = 2
    s = 1
    mode = local
    components = ["x/t^2"]
"""

import logging
from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Tuple

from base_algebra import (
    GLOBAL_VARIABLES,
    LOCAL_VARIABLES,
    SUPPORTED_PRIMES,
    RatFunc,
)
from errors import SpecSyntaxError, SpecValidationError, UnsupportedError
from witt import WITT_LENGTH_CAPS

logger = logging.getLogger(__name__)

MODES = {"local": LOCAL_VARIABLES, "global": GLOBAL_VARIABLES}
SPEC_KEYS = ("p", "s", "mode", "components")

OPERATORS = "+-*/^()[],="


@dataclass(frozen=True)
class Token:
    kind: str  # "int", "name", "string", "op" or "eof"
    text: str
    line: int
    column: int


def tokenize(text: str, line: int = 1, column: int = 1) -> Iterator[Token]:
    """Split text into tokens, tracking 1-based line and column."""
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "\n":
            line, column = line + 1, 1
            i += 1
        elif ch.isspace():
            column += 1
            i += 1
        elif ch == "#":
            while i < len(text) and text[i] != "\n":
                i += 1
        elif ch.isdigit():
            start = i
            while i < len(text) and text[i].isdigit():
                i += 1
            yield Token("int", text[start:i], line, column)
            column += i - start
        elif ch.isalpha() or ch == "_":
            start = i
            while i < len(text) and (text[i].isalnum() or text[i] == "_"):
                i += 1
            yield Token("name", text[start:i], line, column)
            column += i - start
        elif ch == '"':
            end = text.find('"', i + 1)
            if end < 0 or "\n" in text[i:end]:
                raise SpecSyntaxError("unterminated string", line, column)
            yield Token("string", text[i + 1:end], line, column)
            column += end + 1 - i
            i = end + 1
        elif ch in OPERATORS:
            yield Token("op", ch, line, column)
            column += 1
            i += 1
        else:
            raise SpecSyntaxError(f"unexpected character {ch!r}", line, column)
    yield Token("eof", "", line, column)


class _TokenStream:
    def __init__(self, tokens: Iterator[Token]):
        self._tokens = list(tokens)
        self._pos = 0

    def peek(self) -> Token:
        return self._tokens[self._pos]

    def next(self) -> Token:
        token = self._tokens[self._pos]
        if token.kind != "eof":
            self._pos += 1
        return token

    def accept(self, text: str) -> Optional[Token]:
        token = self.peek()
        if token.kind == "op" and token.text == text:
            return self.next()
        return None

    def expect(self, text: str) -> Token:
        token = self.accept(text)
        if token is None:
            found = self.peek()
            raise SpecSyntaxError(
                f"expected {text!r}, found {found.text or 'end of input'!r}",
                found.line,
                found.column,
            )
        return token


class ExpressionParser:
    """Parses rational expressions into RatFunc over F_p(names)."""

    def __init__(self, p: int, names: Sequence[str]):
        self.p = p
        self.names = tuple(names)

    def parse(self, text: str, line: int = 1, column: int = 1) -> RatFunc:
        stream = _TokenStream(tokenize(text, line, column))
        if stream.peek().kind == "eof":
            token = stream.peek()
            raise SpecSyntaxError("empty expression", token.line, token.column)
        value = self._expression(stream)
        token = stream.peek()
        if token.kind != "eof":
            raise SpecSyntaxError(f"unexpected {token.text!r}", token.line, token.column)
        return value

    def _expression(self, stream: _TokenStream) -> RatFunc:
        value = self._term(stream)
        while True:
            if stream.accept("+"):
                value = value + self._term(stream)
            elif stream.accept("-"):
                value = value - self._term(stream)
            else:
                return value

    def _term(self, stream: _TokenStream) -> RatFunc:
        value = self._unary(stream)
        while True:
            if stream.accept("*"):
                value = value * self._unary(stream)
                continue
            token = stream.accept("/")
            if token is None:
                return value
            divisor = self._unary(stream)
            if not divisor:
                raise SpecSyntaxError("division by zero", token.line, token.column)
            value = value / divisor

    def _unary(self, stream: _TokenStream) -> RatFunc:
        if stream.accept("-"):
            return -self._unary(stream)
        if stream.accept("+"):
            return self._unary(stream)
        return self._power(stream)

    def _power(self, stream: _TokenStream) -> RatFunc:
        base = self._atom(stream)
        if not stream.accept("^"):
            return base
        negative = stream.accept("-") is not None
        token = stream.next()
        if token.kind != "int":
            raise SpecSyntaxError("exponent must be an integer", token.line, token.column)
        exponent = int(token.text)
        if negative and not base:
            raise SpecSyntaxError("division by zero", token.line, token.column)
        return base ** (-exponent if negative else exponent)

    def _atom(self, stream: _TokenStream) -> RatFunc:
        token = stream.next()
        if token.kind == "int":
            return RatFunc.constant(int(token.text), self.p, self.names)
        if token.kind == "name":
            if token.text not in self.names:
                raise SpecSyntaxError(
                    f"unknown variable {token.text!r}; expected one of {', '.join(self.names)}",
                    token.line,
                    token.column,
                )
            return RatFunc.gen(token.text, self.p, self.names)
        if token.kind == "op" and token.text == "(":
            value = self._expression(stream)
            stream.expect(")")
            return value
        raise SpecSyntaxError(
            f"unexpected {token.text or 'end of input'!r}", token.line, token.column
        )


def parse_expression(text: str, p: int, names: Sequence[str] = LOCAL_VARIABLES) -> RatFunc:
    """Parse one rational expression over F_p(names)."""
    return ExpressionParser(p, names).parse(text)


@dataclass(frozen=True)
class CharacterSpec:
    """A validated spec file."""

    p: int
    s: int
    mode: str
    components: Tuple[str, ...]

    @property
    def variables(self) -> Tuple[str, ...]:
        return MODES[self.mode]

    def elements(self) -> List[RatFunc]:
        """Components as RatFunc, leftmost (a_{s-1}) first."""
        parser = ExpressionParser(self.p, self.variables)
        return [parser.parse(text) for text in self.components]


def _read_value(stream: _TokenStream, key: Token):
    token = stream.next()
    if key.text == "components":
        if not (token.kind == "op" and token.text == "["):
            raise SpecSyntaxError("components must be a bracketed list", token.line, token.column)
        items: List[Token] = []
        if stream.accept("]"):
            return items
        while True:
            item = stream.next()
            if item.kind != "string":
                raise SpecSyntaxError("expected a quoted expression", item.line, item.column)
            items.append(item)
            if stream.accept("]"):
                return items
            stream.expect(",")
    if token.kind in ("int", "name", "string"):
        return token
    raise SpecSyntaxError(f"missing value for {key.text!r}", token.line, token.column)


def _int_value(token: Token, key: str) -> int:
    if token.kind != "int":
        raise SpecValidationError(f"{key} must be an integer, got {token.text!r}")
    return int(token.text)


def parse_spec(text: str) -> CharacterSpec:
    """Parse and validate a character spec document."""
    stream = _TokenStream(tokenize(text))
    values = {}
    while stream.peek().kind != "eof":
        key = stream.next()
        if key.kind != "name":
            raise SpecSyntaxError(f"expected a key, found {key.text!r}", key.line, key.column)
        if key.text not in SPEC_KEYS:
            raise SpecSyntaxError(f"unknown key {key.text!r}", key.line, key.column)
        if key.text in values:
            raise SpecSyntaxError(f"duplicate key {key.text!r}", key.line, key.column)
        stream.expect("=")
        values[key.text] = _read_value(stream, key)

    missing = [k for k in SPEC_KEYS if k not in values]
    if missing:
        raise SpecValidationError(f"missing keys: {', '.join(missing)}")

    p = _int_value(values["p"], "p")
    if p not in SUPPORTED_PRIMES:
        raise SpecValidationError("p must be prime in {2,3,5,7}")
    s = _int_value(values["s"], "s")
    if s < 0 or s > WITT_LENGTH_CAPS[p]:
        raise SpecValidationError(f"s must be in 0..{WITT_LENGTH_CAPS[p]} for p={p}, got {s}")
    mode = values["mode"].text
    if mode not in MODES:
        raise SpecValidationError(f"mode must be local or global, got {mode!r}")
    items = values["components"]
    if len(items) != s:
        raise SpecValidationError(f"component count ≠ s ({len(items)} != {s})")

    # parse now so that errors point into the file
    parser = ExpressionParser(p, MODES[mode])
    for item in items:
        try:
            parser.parse(item.text, item.line, item.column + 1)
        except UnsupportedError as exc:
            raise SpecValidationError(str(exc)) from exc
    logger.debug("parsed spec p=%d s=%d mode=%s", p, s, mode)
    return CharacterSpec(p=p, s=s, mode=mode, components=tuple(item.text for item in items))
