import re

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from enum import Enum
from pathlib import Path
from typing import List, Optional, Union

from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator
from sympy import isprime

from ..core.errors import ParseError, SessionError


class FieldKind(str, Enum):
    RATIONAL = "rational"
    PRIME = "prime"


class OutputFormat(str, Enum):
    TEXT = "text"
    JSON = "json"


class FieldSection(BaseModel):
    kind: FieldKind = FieldKind.RATIONAL
    p: Optional[int] = None

    @model_validator(mode="after")
    def prime_when_needed(self):
        if self.kind == FieldKind.PRIME and (self.p is None or not isprime(self.p)):
            raise ValueError(f"field kind 'prime' needs a prime p, got {self.p!r}")
        return self


class ArrowSchema(BaseModel):
    name: str
    source: str
    target: str

    @field_validator("name")
    def name_not_stationary(cls, v):
        if not v or v.startswith("e_"):
            raise ValueError("arrow names must be nonempty and must not start with 'e_'")
        return v


class QuiverSection(BaseModel):
    vertices: List[str]
    arrows: List[ArrowSchema] = []

    @field_validator("vertices")
    def unique_vertices(cls, v):
        if len(set(v)) != len(v):
            raise ValueError("vertex labels must be unique")
        return v

    @model_validator(mode="after")
    def endpoints_declared(self):
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise ValueError("arrow names must be unique")
        for a in self.arrows:
            for end in (a.source, a.target):
                if end not in self.vertices:
                    raise ValueError(f"arrow {a.name!r} uses undeclared vertex {end!r}")
        return self


class AlgebraSection(BaseModel):
    relations: List[str] = []
    length_bound: Optional[int] = Field(default=None, ge=1)


class RuleSchema(BaseModel):
    pattern: str
    value: str


class EntrySchema(BaseModel):
    left: str
    right: str
    value: str


class CocycleSection(BaseModel):
    rules: List[RuleSchema] = []
    entries: List[EntrySchema] = []


class OptionsSection(BaseModel):
    degree: Optional[int] = Field(default=None, ge=0)
    format: OutputFormat = OutputFormat.TEXT


class SessionFile(BaseModel):
    title: Optional[str] = None
    field: FieldSection = FieldSection()
    quiver: QuiverSection
    algebra: AlgebraSection = AlgebraSection()
    cocycle: CocycleSection = CocycleSection()
    options: OptionsSection = OptionsSection()

    class Config:
        extra = "forbid"


_WHERE = re.compile(r"\s*\(at line (\d+), column (\d+)\)\s*$")


def _split_location(message: str):
    """tomllib appends '(at line L, column C)' to its messages."""
    m = _WHERE.search(message)
    if not m:
        return message, None, None
    return message[: m.start()], int(m.group(1)), int(m.group(2))


def parse_session(text: str, source: str = "<session>") -> SessionFile:
    """Parse TOML text into a validated SessionFile."""
    try:
        raw = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        message, line, column = _split_location(str(exc))
        raise ParseError(f"{source}: {message}", line=line, column=column) from None
    try:
        return SessionFile.model_validate(raw)
    except ValidationError as exc:
        first = exc.errors()[0]
        where = ".".join(str(p) for p in first["loc"])
        raise SessionError(f"{source}: {where}: {first['msg']}", field=where, errors=len(exc.errors())) from None


def load_session(path: Union[str, Path]) -> SessionFile:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise SessionError(f"cannot read session file {path}: {exc.strerror}", path=str(path)) from None
    return parse_session(text, source=str(path))
