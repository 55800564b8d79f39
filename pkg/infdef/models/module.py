"""Finite-dimensional left modules over a StructuredAlgebra."""
import logging
from functools import cached_property
from typing import Dict, List, Sequence, Tuple

from sympy.polys.matrices import DomainMatrix

from ..core import linalg
from ..core.errors import NotAModule
from ..core.linalg import Vector
from .structured import StructuredAlgebra

logger = logging.getLogger(__name__)


class Representation:
    """Module given by one action matrix per algebra basis element (column vectors)."""

    def __init__(self, algebra: StructuredAlgebra, dim: int, action: Sequence[DomainMatrix], name: str = "M"):
        self.algebra = algebra
        self.dim = dim
        self.action = list(action)
        self.name = name

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name}, dim={self.dim})"

    @property
    def K(self):
        return self.algebra.K

    def act(self, x: int) -> DomainMatrix:
        return self.action[x]

    def act_element(self, vec: Vector) -> DomainMatrix:
        out = linalg.zeros(self.dim, self.dim, self.K)
        for k, c in vec.items():
            out = out + linalg.scale(self.action[k], c)
        return out

    @cached_property
    def vertex_dims(self) -> Dict[str, int]:
        A = self.algebra
        return {v: linalg.rank(self.action[A.frame[v]]) for v in A.vertices}

    def verify(self) -> "Representation":
        A = self.algebra
        K = self.K
        if not linalg.equal(self.act_element(A.unit), linalg.identity(self.dim, K)):
            raise NotAModule("unit does not act as the identity", module=self.name)
        for i in range(A.dim):
            for j in range(A.dim):
                lhs = self.action[i] * self.action[j]
                rhs = self.act_element(A.mul_basis(i, j))
                if not linalg.equal(lhs, rhs):
                    raise NotAModule(
                        "action does not respect multiplication",
                        module=self.name,
                        pair=[A.labels[i], A.labels[j]],
                    )
        return self

    # constructors

    @classmethod
    def semisimple(cls, algebra: StructuredAlgebra, vertices: Sequence[str], name: str = "S") -> "Representation":
        """Direct sum of the simples S_v in the given order; the radical acts by zero."""
        n = len(vertices)
        K = algebra.K
        action = []
        for x in range(algebra.dim):
            entries = {}
            if not algebra.is_radical(x):
                for k, v in enumerate(vertices):
                    if algebra.frame[v] == x:
                        entries[k, k] = K.one
            action.append(linalg.from_entries(entries, (n, n), K))
        return cls(algebra, n, action, name)

    @classmethod
    def simple(cls, algebra: StructuredAlgebra, v: str) -> "Representation":
        return cls.semisimple(algebra, [v], name=f"S_{v}")

    @classmethod
    def regular(cls, algebra: StructuredAlgebra) -> "Representation":
        return cls(algebra, algebra.dim, [algebra.left_matrix(x) for x in range(algebra.dim)], name=algebra.name)

    @classmethod
    def direct_sum(cls, summands: Sequence["Representation"], name: str = "") -> "Representation":
        algebra = summands[0].algebra
        dim = sum(M.dim for M in summands)
        action = []
        for x in range(algebra.dim):
            blocks, offset = [], 0
            for M in summands:
                blocks.append((offset, offset, M.action[x]))
                offset += M.dim
            action.append(linalg.assemble((dim, dim), blocks, algebra.K))
        return cls(algebra, dim, action, name or "+".join(M.name for M in summands))

    def submodule(self, vectors: Sequence[Vector], name: str = "") -> Tuple["Representation", DomainMatrix]:
        """Submodule spanned by ``vectors`` (assumed closed under the action) and its inclusion."""
        basis = linalg.row_basis(vectors, self.dim, self.K)
        incl = linalg.from_columns(basis, self.dim, self.K)
        solver = linalg.Solver(incl)
        action = []
        for x in range(self.algebra.dim):
            images = []
            for b in basis:
                coords = solver.solve(linalg.apply(self.action[x], b))
                if coords is None:
                    raise NotAModule("span is not closed under the action", module=name or self.name)
                images.append(coords)
            action.append(linalg.from_columns(images, len(basis), self.K))
        return Representation(self.algebra, len(basis), action, name or f"sub({self.name})"), incl


class ProjectiveModule(Representation):
    """P = ⊕_k Λe_{v_k}; coordinates (slot k, basis x with target(x) = v_k)."""

    def __init__(self, algebra: StructuredAlgebra, vertices: Sequence[str], name: str = "P"):
        self.vertices = list(vertices)
        self.slot_basis: List[List[int]] = [algebra.with_target(v) for v in self.vertices]
        self.offsets: List[int] = []
        pos = 0
        for b in self.slot_basis:
            self.offsets.append(pos)
            pos += len(b)
        self.position: Dict[Tuple[int, int], int] = {
            (k, x): self.offsets[k] + i for k, b in enumerate(self.slot_basis) for i, x in enumerate(b)
        }
        super().__init__(algebra, pos, self._actions(algebra, pos), name)

    def _actions(self, algebra: StructuredAlgebra, dim: int) -> List[DomainMatrix]:
        out = []
        for a in range(algebra.dim):
            entries = {}
            for k, basis in enumerate(self.slot_basis):
                for x in basis:
                    for y, c in algebra.mul_basis(a, x).items():
                        entries[self.position[k, y], self.position[k, x]] = c
            out.append(linalg.from_entries(entries, (dim, dim), algebra.K))
        return out

    @property
    def rank(self) -> int:
        return len(self.vertices)

    def multiplicities(self) -> Dict[str, int]:
        counts = {v: 0 for v in self.algebra.vertices}
        for v in self.vertices:
            counts[v] += 1
        return counts

    def generator(self, k: int) -> int:
        return self.position[k, self.algebra.frame[self.vertices[k]]]

    def slot_of(self, index: int) -> Tuple[int, int]:
        return self.coordinates[index]

    @cached_property
    def coordinates(self) -> List[Tuple[int, int]]:
        out = [None] * self.dim
        for key, p in self.position.items():
            out[p] = key
        return out

    def corner(self, v: str) -> List[int]:
        """Coordinates spanning e_v P."""
        if v not in self._corners:
            A = self.algebra
            self._corners[v] = [p for p, (k, x) in enumerate(self.coordinates) if A.source[x] == v]
        return self._corners[v]

    @cached_property
    def _corners(self) -> Dict[str, List[int]]:
        return {}

    def top_coordinates(self) -> List[int]:
        return [self.generator(k) for k in range(self.rank)]

    def in_radical(self, vec: Vector) -> bool:
        A = self.algebra
        return all(A.is_radical(self.coordinates[p][1]) for p in vec)

    def hom_to(self, target: Representation, images: Sequence[Vector]) -> DomainMatrix:
        """Module map sending the k-th generator to images[k]; column (k,x) = x·images[k]."""
        cols = []
        for k, x in self.coordinates:
            cols.append(linalg.apply(target.action[x], images[k]) if images[k] else {})
        return linalg.from_columns(cols, target.dim, self.K)

    def generator_images(self, f: DomainMatrix) -> List[Vector]:
        return [linalg.column(f, self.generator(k)) for k in range(self.rank)]


def hom_dimension(M: Representation, N: Representation) -> int:
    """dim Hom(M, N) by solving X·act_M(g) = act_N(g)·X on algebra generators."""
    A = M.algebra
    m, n = M.dim, N.dim
    if m == 0 or n == 0:
        return 0
    K = M.K
    rows: List[Vector] = []
    for g in A.generators:
        am = linalg.entries(M.action[g])
        an = linalg.entries(N.action[g])
        am_cols: Dict[int, Dict[int, object]] = {}
        for j, row in am.items():
            for q, c in row.items():
                am_cols.setdefault(q, {})[j] = c
        for p in range(n):
            for q in range(m):
                eq: Vector = {}
                for i, c in an.get(p, {}).items():
                    eq = linalg.add_vectors(eq, {i * m + q: c})
                for j, c in am_cols.get(q, {}).items():
                    eq = linalg.add_vectors(eq, {p * m + j: -c})
                if eq:
                    rows.append(eq)
    if not rows:
        return m * n
    return m * n - linalg.rank(linalg.from_rows(rows, m * n, K))
