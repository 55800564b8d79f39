"""Structure-constant view of a basic algebra (used for both A and A_f)."""
import logging
from functools import cached_property
from typing import Dict, List, Sequence, Tuple

from sympy.polys.matrices import DomainMatrix

from ..core import linalg
from ..core.errors import VerificationFailed
from ..core.field import Field
from ..core.linalg import Vector

logger = logging.getLogger(__name__)


class StructuredAlgebra:
    """Finite-dimensional algebra given by structure constants c_ij^k.

    The basis is frame-adapted: every basis element x satisfies
    x = e_source(x) * x * e_target(x) for the frame idempotents.
    """

    def __init__(
        self,
        field: Field,
        labels: Sequence[str],
        table: Dict[Tuple[int, int], Vector],
        source: Sequence[str],
        target: Sequence[str],
        vertices: Sequence[str],
        frame: Dict[str, int],
        radical: Sequence[int],
        name: str = "A",
    ):
        self.field = field
        self.K = field.domain
        self.labels = list(labels)
        self.table = table
        self.source = list(source)
        self.target = list(target)
        self.vertices = list(vertices)
        self.frame = dict(frame)
        self.radical = list(radical)
        self.name = name

    def __repr__(self) -> str:
        return f"StructuredAlgebra({self.name}, dim={self.dim})"

    @property
    def dim(self) -> int:
        return len(self.labels)

    def mul_basis(self, i: int, j: int) -> Vector:
        return self.table.get((i, j), {})

    def multiply(self, u: Vector, v: Vector) -> Vector:
        out: Vector = {}
        for i, a in u.items():
            for j, b in v.items():
                prod = self.mul_basis(i, j)
                if prod:
                    out = linalg.add_vectors(out, prod, a * b)
        return out

    @cached_property
    def unit(self) -> Vector:
        return {self.frame[v]: self.K.one for v in self.vertices}

    def left_matrix(self, i: int) -> DomainMatrix:
        """Matrix of y -> b_i * y on the algebra itself."""
        cols = [self.mul_basis(i, j) for j in range(self.dim)]
        return linalg.from_columns(cols, self.dim, self.K)

    def with_target(self, v: str) -> List[int]:
        return [x for x in range(self.dim) if self.target[x] == v]

    def between(self, i: str, j: str) -> List[int]:
        return [x for x in range(self.dim) if self.source[x] == i and self.target[x] == j]

    def is_radical(self, x: int) -> bool:
        return x in self._radical_set

    @cached_property
    def _radical_set(self):
        return set(self.radical)

    @cached_property
    def radical_generators(self) -> List[int]:
        """Radical basis elements spanning rad / rad^2, chosen greedily."""
        square = []
        for i in self.radical:
            for j in self.radical:
                prod = self.mul_basis(i, j)
                if prod:
                    square.append(prod)
        square = linalg.row_basis(square, self.dim, self.K)
        candidates = square + [{x: self.K.one} for x in self.radical]
        picked = linalg.independent_columns(candidates, self.dim, self.K)
        return [self.radical[p - len(square)] for p in picked if p >= len(square)]

    @cached_property
    def generators(self) -> List[int]:
        """Frame idempotents plus radical generators; they generate the algebra."""
        return [self.frame[v] for v in self.vertices] + self.radical_generators

    def radical_power_dims(self) -> List[int]:
        """dim rad^k for k = 1, 2, ... until zero."""
        layer = linalg.row_basis([{x: self.K.one} for x in self.radical], self.dim, self.K)
        dims = []
        while layer:
            dims.append(len(layer))
            if len(dims) > self.dim + 1:
                raise VerificationFailed("radical is not nilpotent", algebra=self.name)
            products = []
            for r in self.radical_generators:
                for vec in layer:
                    prod = self.multiply({r: self.K.one}, vec)
                    if prod:
                        products.append(prod)
            layer = linalg.row_basis(products, self.dim, self.K)
        return dims

    def loewy_length(self) -> int:
        return len(self.radical_power_dims()) + 1

    def verify(self) -> None:
        """Check associativity, unit, frame and radical; raise VerificationFailed."""
        K = self.K
        d = self.dim
        for x in range(d):
            for y in range(d):
                xy = self.mul_basis(x, y)
                for z in range(d):
                    left = self.multiply(xy, {z: K.one})
                    right = self.multiply({x: K.one}, self.mul_basis(y, z))
                    if linalg.add_vectors(left, right, -K.one):
                        raise VerificationFailed(
                            "multiplication is not associative",
                            algebra=self.name,
                            triple=[self.labels[x], self.labels[y], self.labels[z]],
                        )
        for x in range(d):
            basis = {x: K.one}
            if self.multiply(self.unit, basis) != basis or self.multiply(basis, self.unit) != basis:
                raise VerificationFailed("unit does not act as identity", algebra=self.name, element=self.labels[x])
            left = self.multiply({self.frame[self.source[x]]: K.one}, basis)
            right = self.multiply(basis, {self.frame[self.target[x]]: K.one})
            if left != basis or right != basis:
                raise VerificationFailed("basis is not frame-adapted", algebra=self.name, element=self.labels[x])
        for v in self.vertices:
            for w in self.vertices:
                prod = self.mul_basis(self.frame[v], self.frame[w])
                want = {self.frame[v]: K.one} if v == w else {}
                if prod != want:
                    raise VerificationFailed("frame idempotents are not orthogonal", algebra=self.name, pair=[v, w])
        rad = set(self.radical)
        for x in range(d):
            for r in self.radical:
                for prod in (self.mul_basis(x, r), self.mul_basis(r, x)):
                    if any(k not in rad for k in prod):
                        raise VerificationFailed("radical is not an ideal", algebra=self.name)
        if d - len(self.radical) != len(self.vertices):
            raise VerificationFailed("semisimple quotient has the wrong dimension", algebra=self.name)
        self.radical_power_dims()
        logger.debug("verified %s (dim %d)", self.name, d)
