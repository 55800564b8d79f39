"""Class syntax ``n:[c c …|c c …|…]``: degree, then one coordinate block per component."""
import re
from typing import List, Sequence

from pydantic import BaseModel, field_validator, model_validator

from ..core.errors import DimensionMismatch, ParseError
from ..core.field import Field
from ..core.linalg import Vector

_CLASS = re.compile(r"^\s*(\d+)\s*:\s*\[(.*)\]\s*$")
_SCALAR = re.compile(r"^-?\d+(/\d+)?$")


class ClassSpec(BaseModel):
    degree: int
    blocks: List[List[str]]

    @field_validator("blocks")
    def scalars_well_formed(cls, v):
        for block in v:
            for c in block:
                if not _SCALAR.match(c):
                    raise ValueError(f"invalid scalar literal {c!r}")
        return v

    @model_validator(mode="after")
    def one_block_per_component(self):
        if len(self.blocks) != self.degree + 1:
            raise ValueError(f"a degree-{self.degree} class needs {self.degree + 1} blocks, got {len(self.blocks)}")
        return self

    @classmethod
    def parse(cls, text: str) -> "ClassSpec":
        m = _CLASS.match(text)
        if not m:
            raise ParseError(f"class {text!r} does not read as n:[c …|c …]", column=1, text=text)
        body = m.group(2)
        blocks = [[c for c in re.split(r"[\s,]+", part.strip()) if c] for part in body.split("|")]
        try:
            return cls(degree=int(m.group(1)), blocks=blocks)
        except ValueError as exc:
            raise ParseError(f"class {text!r}: {exc}", column=m.start(2) + 1, text=text) from None

    def components(self, K: Field, dims: Sequence[int]) -> List[Vector]:
        out = []
        for k, block in enumerate(self.blocks):
            if len(block) != dims[k]:
                raise DimensionMismatch(
                    f"component {k} has {len(block)} coordinates, Ext^{k} has dimension {dims[k]}",
                    component=k,
                )
            vec = {}
            for b, c in enumerate(block):
                value = K.parse(c)
                if value:
                    vec[b] = value
            out.append(vec)
        return out

    @classmethod
    def from_components(cls, degree: int, components: Sequence[Vector], dims: Sequence[int], K: Field) -> "ClassSpec":
        blocks = [[K.format(comp.get(b, K.zero)) for b in range(dims[k])] for k, comp in enumerate(components)]
        return cls(degree=degree, blocks=blocks)

    def __str__(self) -> str:
        return f"{self.degree}:[" + "|".join(" ".join(block) for block in self.blocks) + "]"
