"""Parser for polynomial expressions and the line-oriented system format.

System files look like::

    # comments run to the end of the line
    parameters: r, a
    variables: x, y
    equations:
        a*x^2*y + 5*a*y^3 - r^3
        a - r^2
    inequations:
        r

Expressions use integer and rational literals (``3/4``), declared identifiers,
``+ - * ^`` and parentheses. ``^`` binds tightest, then unary minus, then ``*``,
then ``+``/``-``. Juxtaposition is not multiplication.

Syntax errors carry a 1-based line and column (SystemParseError). Names that are
well formed but undeclared, and structurally incomplete files, raise InputError.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from pydantic import ValidationError

from discvar.core.errors import InputError, SystemParseError
from discvar.core.ordering import degrevlex, elimination_order, parameter_order
from discvar.core.pipeline import ParametricSystem
from discvar.core.poly import MAX_EXPONENT, Polynomial, RingContext, canonical_string
from discvar.systems.schema import SystemFile

logger = logging.getLogger(__name__)

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<ident>[A-Za-z][A-Za-z0-9_]*)|(?P<op>[-+*^/()]))")

HEADERS = ("parameters", "variables", "equations", "inequations")
_NAME_SECTIONS = ("parameters", "variables")
MAX_NESTING = 100


@dataclass(frozen=True)
class Token:
    kind: str  # "int", "ident", "op" or "end"
    text: str
    column: int


def tokenize(text: str, line: int = 1, column: int = 1) -> list[Token]:
    """Split an expression into tokens; ``column`` is the position of text[0]."""
    tokens: list[Token] = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if m is None or m.lastgroup is None:
            bad = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise SystemParseError(line, column + bad, f"unexpected character {text[bad]!r}")
        kind = m.lastgroup
        tokens.append(Token(kind, m.group(kind), column + m.start(kind)))
        pos = m.end()
    tokens.append(Token("end", "", column + len(text.rstrip())))
    return tokens


class ExpressionParser:
    """Recursive-descent parser producing a Polynomial in a fixed ring.

    expr  := term (("+" | "-") term)*
    term  := unary ("*" unary)*
    unary := "-" unary | power
    power := atom ("^" INT)?
    atom  := INT ("/" INT)? | IDENT | "(" expr ")"
    """

    def __init__(self, ring: RingContext, text: str, line: int = 1, column: int = 1):
        self.ring = ring
        self.line = line
        self.tokens = tokenize(text, line, column)
        self.pos = 0
        self.depth = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def _advance(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def _error(self, tok: Token, message: str) -> SystemParseError:
        return SystemParseError(self.line, tok.column, message)

    def _describe(self, tok: Token) -> str:
        return "end of expression" if tok.kind == "end" else repr(tok.text)

    def _expect_op(self, text: str) -> Token:
        tok = self.current
        if tok.kind != "op" or tok.text != text:
            raise self._error(tok, f"expected {text!r}, found {self._describe(tok)}")
        return self._advance()

    def parse(self) -> Polynomial:
        if self.current.kind == "end":
            raise self._error(self.current, "empty expression")
        result = self._expr()
        tok = self.current
        if tok.kind != "end":
            if tok.kind in ("int", "ident") or tok.text == "(":
                raise self._error(tok, "implicit multiplication is not supported; use '*'")
            raise self._error(tok, f"unexpected {self._describe(tok)}")
        return result

    def _expr(self) -> Polynomial:
        result = self._term()
        while self.current.kind == "op" and self.current.text in "+-":
            op = self._advance().text
            rhs = self._term()
            result = result + rhs if op == "+" else result - rhs
        return result

    def _term(self) -> Polynomial:
        result = self._unary()
        while self.current.kind == "op" and self.current.text == "*":
            self._advance()
            result = result * self._unary()
        return result

    def _nested(self, tok: Token) -> None:
        self.depth += 1
        if self.depth > MAX_NESTING:
            raise self._error(tok, f"expression nested too deeply (more than {MAX_NESTING} levels)")

    def _unary(self) -> Polynomial:
        if self.current.kind == "op" and self.current.text == "-":
            self._nested(self._advance())
            result = -self._unary()
            self.depth -= 1
            return result
        return self._power()

    def _power(self) -> Polynomial:
        base = self._atom()
        if self.current.kind == "op" and self.current.text == "^":
            self._advance()
            tok = self.current
            if tok.kind != "int":
                raise self._error(tok, f"exponent must be a non-negative integer literal, found {self._describe(tok)}")
            self._advance()
            exponent = int(tok.text)
            if exponent > MAX_EXPONENT:
                raise self._error(tok, f"exponent exceeds {MAX_EXPONENT}")
            if self.current.kind == "op" and self.current.text == "^":
                raise self._error(self.current, "chained exponents need parentheses")
            return base**exponent
        return base

    def _atom(self) -> Polynomial:
        tok = self.current
        if tok.kind == "int":
            self._advance()
            value = Fraction(int(tok.text))
            if self.current.kind == "op" and self.current.text == "/":
                self._advance()
                den = self.current
                if den.kind != "int":
                    raise self._error(den, f"expected an integer denominator, found {self._describe(den)}")
                self._advance()
                if int(den.text) == 0:
                    raise self._error(den, "zero denominator")
                value /= int(den.text)
            return Polynomial.constant(self.ring, value)
        if tok.kind == "ident":
            self._advance()
            if tok.text not in self.ring:
                raise InputError(f"line {self.line}, column {tok.column}: undeclared identifier {tok.text!r}")
            return Polynomial.variable(self.ring, tok.text)
        if tok.kind == "op" and tok.text == "(":
            self._nested(self._advance())
            inner = self._expr()
            self._expect_op(")")
            self.depth -= 1
            return inner
        raise self._error(tok, f"unexpected {self._describe(tok)}")


def parse_polynomial(text: str, ring: RingContext, line: int = 1, column: int = 1) -> Polynomial:
    return ExpressionParser(ring, text, line, column).parse()


@dataclass(frozen=True)
class _Entry:
    line: int
    column: int
    text: str


def _strip_comment(raw: str) -> str:
    return raw.split("#", 1)[0].rstrip()


def _scan(text: str) -> Iterator[tuple[int, str]]:
    for number, raw in enumerate(text.splitlines(), start=1):
        stripped = _strip_comment(raw)
        if stripped.strip():
            yield number, stripped


def _split_names(entry: _Entry) -> list[str]:
    if not entry.text.strip():
        return []
    names = []
    offset = 0
    for piece in entry.text.split(","):
        name = piece.strip()
        column = entry.column + offset + (len(piece) - len(piece.lstrip()))
        if not name:
            raise SystemParseError(entry.line, column, "empty name in list")
        if " " in name or "\t" in name:
            raise SystemParseError(entry.line, column, f"names must be separated by commas: {name!r}")
        names.append(name)
        offset += len(piece) + 1
    return names


def _sections(text: str) -> dict[str, list[_Entry]]:
    sections: dict[str, list[_Entry]] = {}
    current: str | None = None
    for number, line in _scan(text):
        indent = len(line) - len(line.lstrip())
        if indent:
            if current not in ("equations", "inequations"):
                raise SystemParseError(number, indent + 1, "indented line outside an equations or inequations section")
            sections[current].append(_Entry(number, indent + 1, line.strip()))
            continue
        header, colon, rest = line.partition(":")
        header = header.strip()
        if not colon:
            raise SystemParseError(number, 1, f"expected a section header such as 'equations:', found {line.strip()!r}")
        if header not in HEADERS:
            raise SystemParseError(number, 1, f"unknown section {header!r}; expected one of {', '.join(HEADERS)}")
        if header in sections:
            raise SystemParseError(number, 1, f"duplicate section {header!r}")
        rest_column = len(header) + 2
        if header in _NAME_SECTIONS:
            sections[header] = [_Entry(number, rest_column, rest)]
            current = None
        else:
            if rest.strip():
                raise SystemParseError(
                    number,
                    rest_column + len(rest) - len(rest.lstrip()),
                    f"{header} go on the following indented lines",
                )
            sections[header] = []
            current = header
    return sections


def build_system(model: SystemFile, positions: dict[str, list[_Entry]] | None = None) -> ParametricSystem:
    """Parse the expressions of a validated SystemFile in its declared ring."""
    if not model.equations:
        raise InputError("empty equations section")
    ring = RingContext.from_blocks(model.parameters, model.variables)

    def parse_all(key: str, exprs: list[str]) -> tuple[Polynomial, ...]:
        entries = (positions or {}).get(key)
        out = []
        for i, expr in enumerate(exprs):
            line, column = (entries[i].line, entries[i].column) if entries else (i + 1, 1)
            out.append(parse_polynomial(expr, ring, line, column))
        return tuple(out)

    system = ParametricSystem(ring, parse_all("equations", model.equations), parse_all("inequations", model.inequations))
    logger.debug(
        "parsed system: %d parameters, %d unknowns, %d equations, %d inequations",
        len(ring.parameters),
        len(ring.unknowns),
        len(system.equalities),
        len(system.inequations),
    )
    return system


def validate_system_model(data: dict) -> SystemFile:
    try:
        return SystemFile.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        raise InputError(f"invalid system description: {first['msg']}") from e


def parse_system_file(text: str) -> ParametricSystem:
    """Parse the line-oriented system format into a ParametricSystem."""
    sections = _sections(text)
    data = {
        key: _split_names(sections[key][0]) if key in sections else [] for key in _NAME_SECTIONS
    }
    for key in ("equations", "inequations"):
        data[key] = [e.text for e in sections.get(key, [])]
    return build_system(validate_system_model(data), sections)


def format_polynomial(p: Polynomial) -> str:
    """Canonical text: (X ≻ U) order for mixed polynomials, ≺_U for U-only ones."""
    ring = p.ring
    if p.involves(ring.unknowns):
        return canonical_string(p, elimination_order(ring))
    if ring.parameters:
        return canonical_string(p, parameter_order(ring))
    return canonical_string(p, degrevlex(ring))


def format_system(system: ParametricSystem) -> str:
    """Inverse of ``parse_system_file`` up to comments and whitespace."""
    lines = [
        f"parameters: {', '.join(system.parameters)}",
        f"variables: {', '.join(system.unknowns)}",
        "equations:",
    ]
    lines.extend(f"    {format_polynomial(p)}" for p in system.equalities)
    if system.inequations:
        lines.append("inequations:")
        lines.extend(f"    {format_polynomial(p)}" for p in system.inequations)
    return "\n".join(lines) + "\n"
