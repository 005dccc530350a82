"""Tokenizer and recursive-descent parser for the expression grammar.

Grammar (whitespace-insensitive)::

    expr     := term (('+' | '-') term)*
    term     := factor ('*' factor)*
    factor   := atom ('^' uint)? | '-' factor | '(' expr ')'
    atom     := rational | 'sqrt2' | 'x' uint | 'y[' uint ',' uint ']'
              | 'Dx' uint | 'Dy[' uint ',' uint ']'
    rational := int ('/' uint)?

``Dx``/``Dy`` atoms denote coordinate vector fields and are legal only when
parsing a vector-field expression.  ``y[k,j]`` with ``k > j`` resolves to
``-y[j,k]`` and ``y[j,j]`` to zero at parse time; the same applies to ``Dy``.
All reported errors carry the 1-based line and column of the offending token.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Tuple, Union

from .errors import ParseError
from .geometry import VectorField
from .polynomials import Chart, Polynomial, chart as make_chart
from .scalars import ExactScalar

Token = Tuple[str, object, int, int]  # (type, value, line, col)

_OPS = set("+-*^()[],:/")


def tokenize(text: str, start_line: int = 1, start_col: int = 1) -> List[Token]:
    tokens: List[Token] = []
    line, col = start_line, start_col
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            col += 1
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("num", int(text[i:j]), line, col))
            col += j - i
            i = j
            continue
        if text.startswith("sqrt2", i):
            tokens.append(("sqrt2", None, line, col))
            i += 5
            col += 5
            continue
        if text.startswith("Dx", i):
            tokens.append(("dx", None, line, col))
            i += 2
            col += 2
            continue
        if text.startswith("Dy", i):
            tokens.append(("dy", None, line, col))
            i += 2
            col += 2
            continue
        if ch == "x":
            tokens.append(("x", None, line, col))
            i += 1
            col += 1
            continue
        if ch == "y":
            tokens.append(("y", None, line, col))
            i += 1
            col += 1
            continue
        if ch in _OPS:
            tokens.append((ch, None, line, col))
            i += 1
            col += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(("end", None, line, col))
    return tokens


Value = Tuple[str, Union[Polynomial, VectorField]]  # ('p', poly) | ('v', field)


class _Parser:
    def __init__(self, tokens: List[Token], chart_: Chart,
                 allow_fields: bool, allow_coords: bool):
        self.tokens = tokens
        self.pos = 0
        self.chart = chart_
        self.allow_fields = allow_fields
        self.allow_coords = allow_coords

    # --- token helpers ----------------------------------------------------
    def peek(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        t = self.tokens[self.pos]
        self.pos += 1
        return t

    def expect(self, ttype: str, what: str) -> Token:
        t = self.next()
        if t[0] != ttype:
            raise ParseError(f"expected {what}", t[2], t[3])
        return t

    def error(self, msg: str, tok: Optional[Token] = None) -> ParseError:
        t = tok if tok is not None else self.peek()
        return ParseError(msg, t[2], t[3])

    # --- value algebra ------------------------------------------------------
    def _add(self, a: Value, b: Value, op: str, tok: Token) -> Value:
        if a[0] != b[0]:
            raise self.error("cannot combine a scalar expression with a "
                             "vector field", tok)
        if a[0] == "p":
            return ("p", a[1] + b[1] if op == "+" else a[1] - b[1])
        return ("v", a[1] + b[1] if op == "+" else a[1] - b[1])

    def _mul(self, a: Value, b: Value, tok: Token) -> Value:
        if a[0] == "p" and b[0] == "p":
            return ("p", a[1] * b[1])
        if a[0] == "p" and b[0] == "v":
            return ("v", b[1].scale(a[1]))
        if a[0] == "v" and b[0] == "p":
            return ("v", a[1].scale(b[1]))
        raise self.error("cannot multiply vector fields", tok)

    # --- grammar -------------------------------------------------------------
    def parse_expr(self) -> Value:
        v = self.parse_term()
        while self.peek()[0] in ("+", "-"):
            tok = self.next()
            w = self.parse_term()
            v = self._add(v, w, tok[0], tok)
        return v

    def parse_term(self) -> Value:
        v = self.parse_factor()
        while self.peek()[0] == "*":
            tok = self.next()
            w = self.parse_factor()
            v = self._mul(v, w, tok)
        return v

    def parse_factor(self) -> Value:
        t = self.peek()
        if t[0] == "-":
            self.next()
            v = self.parse_factor()
            return (v[0], -v[1])
        if t[0] == "(":
            self.next()
            v = self.parse_expr()
            self.expect(")", "')'")
            return v
        v = self.parse_atom()
        if self.peek()[0] == "^":
            tok = self.next()
            if v[0] != "p":
                raise self.error("cannot raise a vector field to a power", tok)
            n = self.expect("num", "a non-negative integer exponent")
            return ("p", v[1] ** n[1])
        return v

    def parse_atom(self) -> Value:
        t = self.next()
        if t[0] == "num":
            if self.peek()[0] == "/":
                self.next()
                d = self.expect("num", "a denominator")
                if d[1] == 0:
                    raise self.error("zero denominator", d)
                q = Fraction(t[1], d[1])
            else:
                q = Fraction(t[1])
            return ("p", Polynomial.const(self.chart, ExactScalar(q)))
        if t[0] == "sqrt2":
            return ("p", Polynomial.const(self.chart, ExactScalar.sqrt2()))
        if t[0] == "x":
            i = self._index_after(t, "x")
            return ("p", Polynomial.coordinate(self.chart,
                                               self.chart.x_index(i)))
        if t[0] == "y":
            j, k = self._pair_after(t, "y")
            if j == k:
                return ("p", Polynomial.zero(self.chart))
            if j > k:
                p = Polynomial.coordinate(self.chart, self.chart.y_index(k, j))
                return ("p", -p)
            return ("p", Polynomial.coordinate(self.chart,
                                               self.chart.y_index(j, k)))
        if t[0] == "dx":
            self._require_fields(t)
            i = self._index_after(t, "Dx")
            return ("v", VectorField.coordinate_x(self.chart, i))
        if t[0] == "dy":
            self._require_fields(t)
            j, k = self._pair_after(t, "Dy")
            if j == k:
                return ("v", VectorField.zero(self.chart))
            if j > k:
                return ("v", -VectorField.coordinate_y(self.chart, k, j))
            return ("v", VectorField.coordinate_y(self.chart, j, k))
        raise ParseError("expected a number, 'sqrt2', a coordinate, or '('",
                         t[2], t[3])

    # --- atom helpers -----------------------------------------------------
    def _require_fields(self, t: Token) -> None:
        if not self.allow_fields:
            raise ParseError("vector-field symbol is not allowed in a scalar "
                             "expression", t[2], t[3])

    def _index_after(self, t: Token, sym: str) -> int:
        n = self.expect("num", f"an index after '{sym}'")
        i = n[1]
        if not self.allow_coords:
            raise ParseError("coordinates are not allowed in this expression",
                             t[2], t[3])
        if not 1 <= i <= self.chart.l:
            raise ParseError(f"{sym}{i} is out of range for l={self.chart.l}",
                             n[2], n[3])
        return i

    def _pair_after(self, t: Token, sym: str) -> Tuple[int, int]:
        self.expect("[", f"'[' after '{sym}'")
        a = self.expect("num", "a pair index")
        self.expect(",", "','")
        b = self.expect("num", "a pair index")
        close = self.expect("]", "']'")
        if not self.allow_coords:
            raise ParseError("coordinates are not allowed in this expression",
                             t[2], t[3])
        for n in (a, b):
            if not 1 <= n[1] <= self.chart.l:
                raise ParseError(
                    f"{sym}[{a[1]},{b[1]}] is out of range for l={self.chart.l}",
                    n[2], n[3])
        del close
        return a[1], b[1]


def _run_parser(tokens: List[Token], chart_: Chart, allow_fields: bool,
                allow_coords: bool) -> Value:
    p = _Parser(tokens, chart_, allow_fields, allow_coords)
    v = p.parse_expr()
    t = p.peek()
    if t[0] != "end":
        raise ParseError("unexpected trailing input", t[2], t[3])
    return v


def parse_expression(text: str, chart_: Chart) -> Polynomial:
    """Parse a scalar polynomial expression on the given chart."""
    v = _run_parser(tokenize(text), chart_, allow_fields=False,
                    allow_coords=True)
    return v[1]


def parse_scalar(text: str) -> ExactScalar:
    """Parse a coordinate-free expression to an exact Q(sqrt2) value."""
    v = _run_parser(tokenize(text), make_chart(2), allow_fields=False,
                    allow_coords=False)
    return v[1].constant_value()


def parse_vector_field(text: str, chart_: Chart, start_line: int = 1,
                       start_col: int = 1) -> VectorField:
    tokens = tokenize(text, start_line, start_col)
    v = _run_parser(tokens, chart_, allow_fields=True, allow_coords=True)
    if v[0] != "v":
        raise ParseError("expression does not denote a vector field",
                         tokens[0][2], tokens[0][3])
    return v[1]


def parse_frame_file(text: str) -> Tuple[int, List[VectorField]]:
    """Parse a frame file: an ``l: <int>`` header then lines ``X<i>: <expr>``.

    ``#`` starts a comment; blank lines are ignored.  The field lines must
    appear in order X1..Xl.
    """
    l: Optional[int] = None
    fields: List[VectorField] = []
    chart_: Optional[Chart] = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        stripped = line.strip()
        indent = len(line) - len(line.lstrip())
        if l is None:
            if not stripped.startswith("l"):
                raise ParseError("expected header 'l: <int>'", lineno,
                                 indent + 1)
            rest = stripped[1:].lstrip()
            if not rest.startswith(":"):
                raise ParseError("expected ':' in header", lineno, indent + 2)
            num = rest[1:].strip()
            if not num.isdigit():
                raise ParseError("expected an integer rank after 'l:'",
                                 lineno, indent + 1)
            l = int(num)
            if l < 2:
                raise ParseError("rank must be at least 2", lineno, indent + 1)
            chart_ = make_chart(l)
            continue
        if len(fields) == l:
            raise ParseError("unexpected extra line after the frame fields",
                             lineno, indent + 1)
        want = len(fields) + 1
        if not stripped.startswith("X") or ":" not in line:
            raise ParseError(f"expected 'X{want}: <expr>'", lineno, indent + 1)
        ci = line.index(":")
        head = line[:ci].strip()[1:]
        if not head.isdigit() or int(head) != want:
            raise ParseError(f"expected field 'X{want}' here", lineno,
                             indent + 1)
        fields.append(parse_vector_field(line[ci + 1:], chart_,
                                         start_line=lineno, start_col=ci + 2))
    last = text.count("\n") + 1
    if l is None:
        raise ParseError("empty frame file: expected 'l: <int>' header",
                         last, 1)
    if len(fields) != l:
        raise ParseError(
            f"frame file ends after {len(fields)} of {l} fields", last, 1)
    return l, fields
