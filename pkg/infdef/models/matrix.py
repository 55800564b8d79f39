"""Matrices with entries in a quotient algebra A, acting on row vectors."""
from typing import Callable, List, Optional, Sequence

from ..core.errors import AlgebraMismatch, DimensionMismatch
from .algebra import AlgebraElement, QuotientAlgebra


class MatrixOverA:
    """m x n matrix over A; optional frame (row vertices, column vertices)."""

    def __init__(
        self,
        algebra: QuotientAlgebra,
        rows: Sequence[Sequence[AlgebraElement]],
        ncols: Optional[int] = None,
        row_frame: Optional[Sequence[str]] = None,
        col_frame: Optional[Sequence[str]] = None,
    ):
        self.algebra = algebra
        self.rows: List[List[AlgebraElement]] = [list(r) for r in rows]
        self.m = len(self.rows)
        self.n = ncols if ncols is not None else (len(self.rows[0]) if self.rows else 0)
        for r in self.rows:
            if len(r) != self.n:
                raise DimensionMismatch("ragged matrix rows")
            for e in r:
                if e.algebra is not algebra:
                    raise AlgebraMismatch("matrix entry from another algebra")
        self.row_frame = list(row_frame) if row_frame is not None else None
        self.col_frame = list(col_frame) if col_frame is not None else None

    @classmethod
    def zeros(cls, algebra: QuotientAlgebra, m: int, n: int, row_frame=None, col_frame=None) -> "MatrixOverA":
        return cls(algebra, [[algebra.zero() for _ in range(n)] for _ in range(m)], n, row_frame, col_frame)

    @classmethod
    def frame(cls, algebra: QuotientAlgebra, vertices: Sequence[str]) -> "MatrixOverA":
        """Diagonal matrix E = diag(e_v)."""
        rows = [
            [algebra.idempotent(v) if i == j else algebra.zero() for j in range(len(vertices))]
            for i, v in enumerate(vertices)
        ]
        return cls(algebra, rows, len(vertices), vertices, vertices)

    def __getitem__(self, idx):
        i, j = idx
        return self.rows[i][j]

    @property
    def shape(self):
        return (self.m, self.n)

    def _same_shape(self, other: "MatrixOverA") -> None:
        if other.algebra is not self.algebra:
            raise AlgebraMismatch("matrices over different algebras")
        if other.shape != self.shape:
            raise DimensionMismatch(f"shapes {self.shape} and {other.shape} differ")

    def map(self, fn: Callable[[int, int, AlgebraElement], AlgebraElement]) -> "MatrixOverA":
        rows = [[fn(i, j, e) for j, e in enumerate(r)] for i, r in enumerate(self.rows)]
        return MatrixOverA(self.algebra, rows, self.n, self.row_frame, self.col_frame)

    def __add__(self, other: "MatrixOverA") -> "MatrixOverA":
        self._same_shape(other)
        return self.map(lambda i, j, e: e + other.rows[i][j])

    def __sub__(self, other: "MatrixOverA") -> "MatrixOverA":
        self._same_shape(other)
        return self.map(lambda i, j, e: e - other.rows[i][j])

    def __neg__(self) -> "MatrixOverA":
        return self.map(lambda i, j, e: -e)

    def scaled(self, c) -> "MatrixOverA":
        return self.map(lambda i, j, e: e * c)

    def __matmul__(self, other: "MatrixOverA") -> "MatrixOverA":
        if other.algebra is not self.algebra:
            raise AlgebraMismatch("matrices over different algebras")
        if self.n != other.m:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        A = self.algebra
        rows = []
        for i in range(self.m):
            row = []
            for j in range(other.n):
                acc = A.zero()
                for l in range(self.n):
                    a, b = self.rows[i][l], other.rows[l][j]
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            rows.append(row)
        return MatrixOverA(A, rows, other.n, self.row_frame, other.col_frame)

    def restrict(self, row_vertices: Sequence[str], col_vertices: Sequence[str]) -> "MatrixOverA":
        """E B E' for the diagonal frames on the given vertices."""
        A = self.algebra
        if len(row_vertices) != self.m or len(col_vertices) != self.n:
            raise DimensionMismatch("frame size does not match the matrix")
        out = MatrixOverA.frame(A, row_vertices) @ self @ MatrixOverA.frame(A, col_vertices)
        out.row_frame, out.col_frame = list(row_vertices), list(col_vertices)
        return out

    def is_zero(self) -> bool:
        return not any(e for r in self.rows for e in r)

    def respects_frame(self) -> bool:
        if self.row_frame is None or self.col_frame is None:
            return True
        return self.restrict(self.row_frame, self.col_frame) == self

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MatrixOverA):
            return NotImplemented
        return other.algebra is self.algebra and other.shape == self.shape and all(
            a == b for ra, rb in zip(self.rows, other.rows) for a, b in zip(ra, rb)
        )

    def to_strings(self) -> List[List[str]]:
        return [[str(e) for e in r] for r in self.rows]

    def __str__(self) -> str:
        if not self.rows:
            return f"[] ({self.m}x{self.n})"
        return "[" + "; ".join(" ".join(r) for r in self.to_strings()) + "]"
