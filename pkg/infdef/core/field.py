"""Exact base fields: the rationals or the residues modulo a prime."""
from fractions import Fraction
from typing import Any, Optional

from sympy import isprime
from sympy.polys.domains import GF, QQ

from .errors import SessionError


class Field:
    """Thin wrapper around a sympy domain with parsing and printing."""

    def __init__(self, kind: str = "rational", p: Optional[int] = None):
        if kind == "rational":
            self.domain = QQ
            self.p = None
        elif kind == "prime":
            if p is None or not isprime(p):
                raise SessionError(f"field characteristic {p!r} is not a prime", field=p)
            self.domain = GF(p)
            self.p = p
        else:
            raise SessionError(f"unknown field kind {kind!r}", field=kind)
        self.kind = kind
        self.zero = self.domain.zero
        self.one = self.domain.one

    def __repr__(self) -> str:
        return "Field(QQ)" if self.p is None else f"Field(GF({self.p}))"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Field) and other.kind == self.kind and other.p == self.p

    def __hash__(self) -> int:
        return hash((self.kind, self.p))

    def __call__(self, value: Any):
        """Coerce an int, Fraction or domain element into the field."""
        if isinstance(value, Fraction):
            return self.ratio(value.numerator, value.denominator)
        if isinstance(value, int):
            return self.domain(value)
        return self.domain.convert(value)

    def ratio(self, numerator: int, denominator: int):
        if self.p is None:
            if denominator == 0:
                raise SessionError("zero denominator in scalar literal")
            return QQ(numerator, denominator)
        if denominator % self.p == 0:
            raise SessionError(f"denominator {denominator} vanishes modulo {self.p}")
        return self.domain(numerator) / self.domain(denominator)

    def parse(self, text: str):
        """Parse `n` or `n/d` (optionally signed)."""
        text = text.strip()
        try:
            if "/" in text:
                num, den = text.split("/", 1)
                return self.ratio(int(num), int(den))
            return self.domain(int(text))
        except ValueError as exc:
            raise SessionError(f"invalid scalar literal {text!r}") from exc

    def format(self, value) -> str:
        return str(self.domain.to_sympy(value))

    def is_negative(self, value) -> bool:
        """Sign used only for pretty-printing (symmetric residues for GF(p))."""
        return self.domain.to_sympy(value) < 0
