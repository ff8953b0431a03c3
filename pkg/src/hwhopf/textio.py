"""Text formats: ``.hwd`` diagram files, operator-word expressions, DOT and JSON.

``.hwd`` grammar (``#`` starts a comment)::

    vertices N
    edge T H        # T a vertex index or 'in', H a vertex index or 'out'

Word expressions use ``a``, ``ad`` (alias ``a+``) and ``e``, with ``^n``
powers, juxtaposition or ``*`` for products, ``+``/``-``, rational numbers
``p/q`` and parentheses, e.g. ``(a ad)^2 - 3/2 e``. ``a+`` is read as the
alias only when followed by whitespace, ``^``, ``*``, ``)`` or the end, so
``a+a`` is a sum.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Union

from .diagram import FREE, Diagram, canonical_diagram
from .envelope import Gen, HWPolynomial, PBWPolynomial, Word, compress
from .errors import (
    CycleDetected,
    DiagramError,
    IsolatedVertex,
    ParseDiagnostic,
    ParseError,
)
from .galgebra import DiagramSum, linear_combine
from .hopf import TensorSum

MAX_PARSED_VERTICES = 100_000
MAX_EXPONENT = 64
MAX_EXPANSION_TERMS = 20_000
MAX_WORD_LENGTH = 512
MAX_DIGITS = 1000
MAX_NESTING = 100


def _fail(line: int, column: int, message: str) -> ParseError:
    return ParseError([ParseDiagnostic(line, column, message)])


def _decode(text: Union[str, bytes]) -> str:
    if isinstance(text, str):
        return text
    try:
        return text.decode("utf-8")
    except UnicodeDecodeError as exc:
        before = text[: exc.start]
        line = before.count(b"\n") + 1
        column = exc.start - (before.rfind(b"\n") + 1) + 1
        raise _fail(line, column, "input is not valid UTF-8") from None


# -- .hwd --------------------------------------------------------------------

_INT = re.compile(r"(0|[1-9][0-9]*)\Z")


def _tokens(line: str):
    for m in re.finditer(r"\S+", line):
        yield m.start() + 1, m.group()


def parse_diagram(text: Union[str, bytes]) -> Diagram:
    """Parse ``.hwd`` text into a validated :class:`Diagram`.

    Syntax problems raise :class:`ParseError`; definition violations raise
    the matching :class:`DiagramError` with its ``diagnostic`` set.
    """
    text = _decode(text)
    vertex_count = None
    vertices_line = 0
    edges: list[tuple[int, int]] = []
    edge_lines: list[int] = []
    for lineno, raw in enumerate(text.split("\n"), start=1):
        body = raw.split("#", 1)[0]
        toks = list(_tokens(body))
        if not toks:
            continue
        col, word = toks[0]
        if word == "vertices":
            if vertex_count is not None:
                raise _fail(lineno, col, "duplicate 'vertices' declaration")
            if len(toks) != 2:
                raise _fail(lineno, col, "expected 'vertices N'")
            ncol, num = toks[1]
            if not _INT.match(num):
                raise _fail(lineno, ncol, f"vertex count must be a natural number, got {num!r}")
            if len(num) > 9 or int(num) > MAX_PARSED_VERTICES:
                raise _fail(lineno, ncol, f"vertex count above {MAX_PARSED_VERTICES}")
            vertex_count = int(num)
            vertices_line = lineno
        elif word == "edge":
            if vertex_count is None:
                raise _fail(lineno, col, "'vertices N' must come before any edge")
            if len(toks) != 3:
                raise _fail(lineno, col, "expected 'edge TAIL HEAD'")
            (tcol, tail), (hcol, head) = toks[1], toks[2]
            t = _end(tail, "in", lineno, tcol)
            h = _end(head, "out", lineno, hcol)
            edges.append((t, h))
            edge_lines.append(lineno)
        else:
            raise _fail(lineno, col, f"unknown directive {word!r}")
    if vertex_count is None:
        raise _fail(1, 1, "missing 'vertices N' declaration")
    try:
        return Diagram(vertex_count, edges)
    except DiagramError as exc:
        if isinstance(exc, IsolatedVertex):
            where = vertices_line
        elif isinstance(exc, CycleDetected):
            where = edge_lines[exc.cycle[0]]
        else:
            where = edge_lines[exc.edge]
        exc.diagnostic = ParseDiagnostic(where, 1, str(exc))
        raise


def _end(tok: str, free_word: str, line: int, col: int) -> int:
    if tok == free_word:
        return FREE
    if _INT.match(tok):
        if len(tok) > 9:
            raise _fail(line, col, f"vertex index {tok[:12]}... is too large")
        return int(tok)
    other = "out" if free_word == "in" else "in"
    if tok == other:
        role = "tail" if free_word == "in" else "head"
        raise _fail(line, col, f"{tok!r} cannot be an edge {role}")
    raise _fail(line, col, f"expected a vertex index or {free_word!r}, got {tok!r}")


def format_diagram(d: Diagram) -> str:
    lines = [f"vertices {d.vertex_count}"]
    for t, h in d.edges:
        lines.append(f"edge {'in' if t == FREE else t} {'out' if h == FREE else h}")
    return "\n".join(lines) + "\n"


def read_diagram(path) -> Diagram:
    with open(path, "rb") as fh:
        return parse_diagram(fh.read())


# -- word expressions --------------------------------------------------------

_WORD_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>[0-9]+)
  | (?P<gen>ad|a\+(?=\s|\^|\*|\)|\Z)|a|e)
  | (?P<op>[-+*/^()])
    """,
    re.VERBOSE,
)

_GENS = {"ad": Gen.A_DAG, "a+": Gen.A_DAG, "a": Gen.A, "e": Gen.E}

LinComb = dict[tuple[int, ...], Fraction]


class _WordParser:
    def __init__(self, text: str):
        self.text = text
        self.toks: list[tuple[str, str, int, int]] = []
        line, line_start = 1, 0
        pos = 0
        while pos < len(text):
            m = _WORD_TOKEN.match(text, pos)
            if m is None:
                raise _fail(line, pos - line_start + 1, f"unexpected character {text[pos]!r}")
            kind = m.lastgroup
            if kind == "ws":
                for i, ch in enumerate(m.group(), start=pos):
                    if ch == "\n":
                        line, line_start = line + 1, i + 1
            else:
                if kind == "num" and len(m.group()) > MAX_DIGITS:
                    raise _fail(line, pos - line_start + 1, f"number longer than {MAX_DIGITS} digits")
                self.toks.append((kind, m.group(), line, pos - line_start + 1))
            pos = m.end()
        self.i = 0
        self.depth = 0
        self.end_pos = (line, len(text) - line_start + 1)

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def error(self, message: str) -> ParseError:
        tok = self.peek()
        line, col = (tok[2], tok[3]) if tok else self.end_pos
        return _fail(line, col, message)

    def take(self, value: str):
        tok = self.peek()
        if tok is None or tok[1] != value:
            raise self.error(f"expected {value!r}")
        self.i += 1

    def expr(self) -> LinComb:
        sign = 1
        tok = self.peek()
        if tok and tok[1] in "+-" and tok[0] == "op":
            sign = -1 if tok[1] == "-" else 1
            self.i += 1
        total = _scale(self.term(), sign)
        while True:
            tok = self.peek()
            if tok is None or tok[0] != "op" or tok[1] not in "+-":
                return total
            self.i += 1
            total = _add(total, _scale(self.term(), -1 if tok[1] == "-" else 1))

    def _starts_power(self, tok) -> bool:
        return tok is not None and (tok[0] in ("num", "gen") or tok[1] == "(")

    def term(self) -> LinComb:
        value = self.power()
        while True:
            tok = self.peek()
            if tok is not None and tok[1] == "*":
                self.i += 1
            elif not self._starts_power(tok):
                return value
            value = _mul(value, self.power(), self)

    def power(self) -> LinComb:
        base = self.atom()
        tok = self.peek()
        if tok is None or tok[1] != "^":
            return base
        self.i += 1
        tok = self.peek()
        if tok is None or tok[0] != "num":
            raise self.error("expected an exponent after '^'")
        n = int(tok[1])
        if n > MAX_EXPONENT:
            raise self.error(f"exponent above {MAX_EXPONENT}")
        self.i += 1
        out: LinComb = {(): Fraction(1)}
        for _ in range(n):
            out = _mul(out, base, self)
        return out

    def atom(self) -> LinComb:
        tok = self.peek()
        if tok is None:
            raise self.error("unexpected end of expression")
        kind, value = tok[0], tok[1]
        if kind == "num":
            self.i += 1
            num = Fraction(int(value))
            nxt = self.peek()
            if nxt is not None and nxt[1] == "/":
                self.i += 1
                den = self.peek()
                if den is None or den[0] != "num":
                    raise self.error("expected a denominator after '/'")
                if int(den[1]) == 0:
                    raise self.error("division by zero")
                self.i += 1
                num /= int(den[1])
            return {(): num} if num else {}
        if kind == "gen":
            self.i += 1
            return {(int(_GENS[value]),): Fraction(1)}
        if value == "(":
            if self.depth >= MAX_NESTING:
                raise self.error(f"parentheses nested deeper than {MAX_NESTING}")
            self.i += 1
            self.depth += 1
            inner = self.expr()
            self.take(")")
            self.depth -= 1
            return inner
        raise self.error(f"unexpected {value!r}")


def _add(x: LinComb, y: LinComb) -> LinComb:
    out = dict(x)
    for w, c in y.items():
        out[w] = out.get(w, 0) + c
    return {w: c for w, c in out.items() if c}


def _scale(x: LinComb, s: int) -> LinComb:
    return {w: s * c for w, c in x.items()}


def _mul(x: LinComb, y: LinComb, parser: _WordParser) -> LinComb:
    if len(x) * len(y) > MAX_EXPANSION_TERMS:
        raise parser.error("expression expands to too many terms")
    out: LinComb = {}
    for wx, cx in x.items():
        for wy, cy in y.items():
            w = wx + wy
            if len(w) > MAX_WORD_LENGTH:
                raise parser.error(f"word longer than {MAX_WORD_LENGTH} letters")
            out[w] = out.get(w, 0) + cx * cy
    return {w: c for w, c in out.items() if c}


def parse_word(text: Union[str, bytes]) -> list[tuple[Fraction, Word]]:
    """Parse an operator expression into ``(coefficient, word)`` pairs.

    Words are returned unordered as written (no commutation is applied); an
    empty input is the identity.

    >>> parse_word("2 ad^2 a - 1/2 e")
    [(Fraction(2, 1), ((<Gen.A_DAG: 0>, 2), (<Gen.A: 1>, 1))), (Fraction(-1, 2), ((<Gen.E: 2>, 1),))]
    """
    text = _decode(text)
    if not text.strip():
        return [(Fraction(1), ())]
    parser = _WordParser(text)
    value = parser.expr()
    if parser.peek() is not None:
        raise parser.error(f"unexpected {parser.peek()[1]!r}")
    return [(c, compress(Gen(g) for g in w)) for w, c in value.items()]


# -- DOT ---------------------------------------------------------------------


def render_dot(d: Diagram, name: str = "") -> str:
    """DOT digraph drawn bottom-to-top: incoming stubs below, outgoing above.

    Vertices are named after the canonical labelling, so isomorphic inputs
    give identical output.
    """
    c = canonical_diagram(d)
    header = f"digraph {name} {{" if name else "digraph {"
    lines = [header, "  rankdir=BT;"]
    if c.vertex_count:
        lines.append('  node [shape=circle, label="", width=0.2];')
    for v in range(c.vertex_count):
        lines.append(f"  v{v};")
    n_in = n_out = 0
    for t, h in c.edges:
        if t == FREE:
            lines.append(f"  in{n_in} [shape=point];")
            lines.append(f"  in{n_in} -> v{h};")
            n_in += 1
        elif h == FREE:
            lines.append(f"  out{n_out} [shape=point];")
            lines.append(f"  v{t} -> out{n_out};")
            n_out += 1
        else:
            lines.append(f"  v{t} -> v{h};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- JSON --------------------------------------------------------------------

Serializable = Union[DiagramSum, TensorSum, PBWPolynomial, HWPolynomial]


def _coeff(c: Fraction) -> str:
    return str(c)


def diagram_to_json(d: Diagram) -> dict:
    return {
        "vertices": d.vertex_count,
        "edges": [["in" if t == FREE else t, "out" if h == FREE else h] for t, h in d.edges],
    }


def diagram_from_json(obj) -> Diagram:
    if not isinstance(obj, dict) or "vertices" not in obj:
        raise ValueError("diagram object needs 'vertices' and 'edges'")
    return Diagram(obj["vertices"], [tuple(e) for e in obj.get("edges", [])])


def to_jsonable(x: Serializable) -> dict:
    if isinstance(x, DiagramSum):
        terms = [{"coeff": _coeff(c), "diagram": diagram_to_json(d)} for c, d in x.terms()]
    elif isinstance(x, TensorSum):
        terms = [
            {"coeff": _coeff(c), "left": diagram_to_json(l), "right": diagram_to_json(r)}
            for c, l, r in x.terms()
        ]
    elif isinstance(x, (PBWPolynomial, HWPolynomial)):
        terms = [{"coeff": _coeff(c), "monomial": list(mono)} for mono, c in x.items()]
    else:
        raise TypeError(f"cannot serialize {type(x).__name__}")
    return {"type": type(x).__name__, "terms": terms}


def serialize_sum(x: Serializable) -> str:
    """Deterministic JSON text; terms appear in canonical order."""
    return json.dumps(to_jsonable(x), indent=2) + "\n"


def deserialize_sum(text: str) -> Serializable:
    obj = json.loads(text)
    kind = obj.get("type", "DiagramSum")
    terms = obj["terms"]
    if kind == "DiagramSum":
        return linear_combine((Fraction(t["coeff"]), diagram_from_json(t["diagram"])) for t in terms)
    if kind == "TensorSum":
        out = TensorSum()
        for t in terms:
            out = out + TensorSum.of(
                diagram_from_json(t["left"]), diagram_from_json(t["right"]), Fraction(t["coeff"])
            )
        return out
    if kind == "PBWPolynomial":
        return PBWPolynomial({tuple(t["monomial"]): Fraction(t["coeff"]) for t in terms})
    if kind == "HWPolynomial":
        return HWPolynomial({tuple(t["monomial"]): Fraction(t["coeff"]) for t in terms})
    raise ValueError(f"unknown value type {kind!r}")


def format_sum_text(x: DiagramSum) -> str:
    """One ``.hwd`` block per term, headed by its coefficient."""
    if not x:
        return "0\n"
    blocks = []
    for c, d in x.terms():
        blocks.append(f"# coeff {c}\n" + format_diagram(d))
    return "\n".join(blocks)


def format_tensor_text(x: TensorSum) -> str:
    if not x:
        return "0\n"
    blocks = []
    for c, l, r in x.terms():
        blocks.append(
            f"# coeff {c}\n# left\n" + format_diagram(l) + "# right\n" + format_diagram(r)
        )
    return "\n".join(blocks)
