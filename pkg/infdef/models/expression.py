"""Element expressions.

    expr   := ['-'] term (('+' | '-') term)*  |  '0'
    term   := [scalar '*'] factor
    factor := 'e_'vertex | arrowname ('*' arrowname)*
    scalar := integer | integer '/' integer
"""
import re
from typing import Dict, Iterator, List, NamedTuple

from ..core.errors import ParseError, SessionError
from ..core.field import Field
from .quiver import Path, Quiver

PathCombination = Dict[Path, object]

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_']*)|(?P<op>[-+*/]))")


class Token(NamedTuple):
    kind: str
    text: str
    column: int


def tokenize(text: str) -> List[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            col = pos + len(text[pos:]) - len(text[pos:].lstrip()) + 1
            raise ParseError(f"unexpected character {text[col - 1]!r}", column=col, expression=text)
        kind = m.lastgroup
        tokens.append(Token(kind, m.group(kind), m.start(kind) + 1))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str, Q: Quiver, K: Field):
        self.text = text
        self.Q = Q
        self.K = K
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self, kind: str = None, text: str = None) -> Token:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of expression", column=len(self.text) + 1, expression=self.text)
        if (kind and tok.kind != kind) or (text and tok.text != text):
            want = text or kind
            raise ParseError(f"expected {want}, found {tok.text!r}", column=tok.column, expression=self.text)
        self.i += 1
        return tok

    def fail(self, message: str, tok: Token):
        raise ParseError(message, column=tok.column, expression=self.text)

    def expression(self) -> PathCombination:
        if len(self.tokens) == 1 and self.tokens[0].text == "0":
            return {}
        if not self.tokens:
            raise ParseError("empty expression", column=1, expression=self.text)
        out: PathCombination = {}
        sign = self.K.one
        tok = self.peek()
        if tok.kind == "op" and tok.text == "-":
            self.take()
            sign = -sign
        while True:
            coeff, path = self.term()
            if path is not None:
                total = out.get(path, self.K.zero) + sign * coeff
                if total:
                    out[path] = total
                else:
                    out.pop(path, None)
            tok = self.peek()
            if tok is None:
                return out
            if tok.kind != "op" or tok.text not in "+-":
                self.fail(f"expected '+' or '-', found {tok.text!r}", tok)
            self.take()
            sign = self.K.one if tok.text == "+" else -self.K.one

    def term(self):
        coeff = self.K.one
        tok = self.peek()
        if tok is not None and tok.kind == "int":
            num = int(self.take().text)
            den = 1
            nxt = self.peek()
            if nxt is not None and nxt.text == "/":
                self.take()
                den = int(self.take("int").text)
            try:
                coeff = self.K.ratio(num, den)
            except SessionError as exc:
                self.fail(exc.message, tok)
            self.take("op", "*")
        return coeff, self.factor()

    def factor(self):
        tok = self.take("name")
        if tok.text.startswith("e_") and not self.Q.has_arrow(tok.text):
            vertex = tok.text[2:]
            if vertex not in self.Q.vertices:
                self.fail(f"unknown vertex {vertex!r}", tok)
            return Path(vertex, vertex)
        names = [tok]
        while self.peek() is not None and self.peek().text == "*":
            self.take()
            names.append(self.take("name"))
        for n in names:
            if not self.Q.has_arrow(n.text):
                self.fail(f"unknown arrow {n.text!r}", n)
        return self.Q.path([n.text for n in names])


def parse_combination(text: str, Q: Quiver, K: Field) -> PathCombination:
    """Parse an expression into a formal combination of paths of kQ.

    Products of non-composable arrows are zero in kQ and drop out.
    """
    return _Parser(text, Q, K).expression()


def format_terms(terms: Iterator, K: Field) -> str:
    """Render ``(label, coefficient)`` pairs in the expression grammar."""
    parts: List[str] = []
    for label, c in terms:
        negative = K.is_negative(c)
        mag = -c if negative else c
        body = label if mag == K.one else f"{K.format(mag)}*{label}"
        if not parts:
            parts.append(f"-{body}" if negative else body)
        else:
            parts.append(f"- {body}" if negative else f"+ {body}")
    return " ".join(parts) if parts else "0"
