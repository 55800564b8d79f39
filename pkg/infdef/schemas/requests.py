from enum import Enum
from typing import Optional

from pydantic import BaseModel, Field, model_validator


class Over(str, Enum):
    BASE = "base"
    DEFORMED = "deformed"


class ResolutionMethod(str, Enum):
    GENERIC = "generic"
    THEOREM = "theorem"


class ProductMethod(str, Enum):
    FORMULA = "formula"
    STRUCTURED = "structured"
    GENERIC = "generic"


class SessionRequest(BaseModel):
    """A session given inline as TOML text or by packaged fixture name."""

    session: Optional[str] = None
    fixture: Optional[str] = None
    degree: Optional[int] = Field(None, ge=0)

    @model_validator(mode="after")
    def exactly_one_source(self):
        if (self.session is None) == (self.fixture is None):
            raise ValueError("give exactly one of 'session' (TOML text) or 'fixture'")
        return self

    class Config:
        json_schema_extra = {"example": {"fixture": "ex1", "degree": 3}}


class DeformRequest(SessionRequest):
    hom_dims: bool = False


class ResolveRequest(SessionRequest):
    simple: Optional[str] = None
    over: Over = Over.BASE
    method: ResolutionMethod = ResolutionMethod.GENERIC
    compare: bool = False
    witnesses: bool = False


class SimpleRequest(SessionRequest):
    simple: Optional[str] = None


class ExtDimsRequest(SimpleRequest):
    over: Optional[Over] = None


class ExtBasisRequest(SessionRequest):
    n: int = Field(..., ge=0)


class YonedaRequest(SessionRequest):
    h: str
    g: str
    method: ProductMethod = ProductMethod.FORMULA
    check: bool = False


class CorollaryRequest(SessionRequest):
    associativity: bool = False
