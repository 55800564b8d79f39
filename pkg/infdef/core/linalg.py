"""Exact sparse linear algebra on sympy DomainMatrix.

Vectors are sparse dicts ``{index: nonzero value}``; linear maps are sparse
``DomainMatrix`` objects acting on column vectors. Every elimination goes
through ``DomainMatrix.rref`` so pivots are lex-least and results are
deterministic.
"""
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from sympy.polys.matrices import DomainMatrix

Vector = Dict[int, object]


def zeros(nrows: int, ncols: int, K) -> DomainMatrix:
    return DomainMatrix({}, (nrows, ncols), K)


def identity(n: int, K) -> DomainMatrix:
    return DomainMatrix({i: {i: K.one} for i in range(n)}, (n, n), K)


def from_entries(entries: Dict[Tuple[int, int], object], shape: Tuple[int, int], K) -> DomainMatrix:
    rows: Dict[int, Dict[int, object]] = {}
    for (i, j), value in entries.items():
        if value:
            rows.setdefault(i, {})[j] = value
    return DomainMatrix(rows, shape, K)


def from_columns(columns: Sequence[Vector], nrows: int, K) -> DomainMatrix:
    rows: Dict[int, Dict[int, object]] = {}
    for j, col in enumerate(columns):
        for i, value in col.items():
            if value:
                rows.setdefault(i, {})[j] = value
    return DomainMatrix(rows, (nrows, len(columns)), K)


def from_rows(vectors: Sequence[Vector], ncols: int, K) -> DomainMatrix:
    rows = {i: {j: v for j, v in vec.items() if v} for i, vec in enumerate(vectors)}
    return DomainMatrix({i: r for i, r in rows.items() if r}, (len(vectors), ncols), K)


def entries(M: DomainMatrix) -> Dict[int, Dict[int, object]]:
    """Row dict of the nonzero entries."""
    rep = M.to_sparse().rep
    return {i: {j: v for j, v in row.items() if v} for i, row in rep.items()}


def columns(M: DomainMatrix) -> List[Vector]:
    cols: List[Vector] = [dict() for _ in range(M.shape[1])]
    for i, row in entries(M).items():
        for j, value in row.items():
            cols[j][i] = value
    return cols


def column(M: DomainMatrix, j: int) -> Vector:
    return {i: row[j] for i, row in entries(M).items() if j in row}


def submatrix(M: DomainMatrix, rows: Sequence[int], cols: Sequence[int]) -> DomainMatrix:
    row_pos = {r: k for k, r in enumerate(rows)}
    col_pos = {c: k for k, c in enumerate(cols)}
    picked: Dict[Tuple[int, int], object] = {}
    for i, row in entries(M).items():
        if i not in row_pos:
            continue
        for j, value in row.items():
            if j in col_pos:
                picked[row_pos[i], col_pos[j]] = value
    return from_entries(picked, (len(rows), len(cols)), M.domain)


def assemble(shape: Tuple[int, int], blocks: Iterable[Tuple[int, int, DomainMatrix]], K) -> DomainMatrix:
    """Place blocks ``(row_offset, col_offset, M)`` into a zero matrix; overlaps add."""
    acc: Dict[Tuple[int, int], object] = {}
    for r0, c0, M in blocks:
        for i, row in entries(M).items():
            for j, value in row.items():
                key = (r0 + i, c0 + j)
                acc[key] = acc.get(key, K.zero) + value
    return from_entries(acc, shape, K)


def scale(M: DomainMatrix, c) -> DomainMatrix:
    if not c:
        return zeros(M.shape[0], M.shape[1], M.domain)
    return M.scalarmul(c)


def is_zero(M: DomainMatrix) -> bool:
    return not entries(M)


def equal(A: DomainMatrix, B: DomainMatrix) -> bool:
    return A.shape == B.shape and is_zero(A - B)


def apply(M: DomainMatrix, v: Vector) -> Vector:
    if M.shape[0] == 0 or not v:
        return {}
    col = from_columns([v], M.shape[1], M.domain)
    return column(M * col, 0)


def add_vectors(u: Vector, v: Vector, c=None) -> Vector:
    """u + c*v (c defaults to one)."""
    out = dict(u)
    for k, value in v.items():
        term = value if c is None else c * value
        total = out.get(k)
        total = term if total is None else total + term
        if total:
            out[k] = total
        else:
            out.pop(k, None)
    return out


def scale_vector(v: Vector, c) -> Vector:
    if not c:
        return {}
    return {k: c * value for k, value in v.items()}


def rref(M: DomainMatrix) -> Tuple[DomainMatrix, Tuple[int, ...]]:
    if M.shape[0] == 0 or M.shape[1] == 0:
        return M, ()
    R, pivots = M.to_sparse().rref()
    return R, tuple(pivots)


def rank(M: DomainMatrix) -> int:
    return len(rref(M)[1])


def nullspace(M: DomainMatrix) -> List[Vector]:
    """Basis of {x : Mx = 0}, one vector per free column of the rref."""
    n = M.shape[1]
    R, pivots = rref(M)
    rows = entries(R)
    pivot_set = set(pivots)
    basis: List[Vector] = []
    for free in range(n):
        if free in pivot_set:
            continue
        vec: Vector = {free: M.domain.one}
        for i, pc in enumerate(pivots):
            value = rows.get(i, {}).get(free)
            if value:
                vec[pc] = -value
        basis.append(vec)
    return basis


def row_basis(vectors: Sequence[Vector], n: int, K) -> List[Vector]:
    """Reduced row echelon basis of the span of ``vectors`` (length-n)."""
    if not vectors:
        return []
    R, pivots = rref(from_rows(vectors, n, K))
    rows = entries(R)
    return [rows.get(i, {}) for i in range(len(pivots))]


def independent_columns(vectors: Sequence[Vector], n: int, K) -> Tuple[int, ...]:
    """Indices of a maximal independent subfamily, chosen greedily from the left."""
    if not vectors:
        return ()
    return rref(from_columns(vectors, n, K))[1]


class Solver:
    """Solve Mx = b for many right-hand sides with one elimination.

    The rref of [M | I] yields T with TM = rref(M); the particular solution
    sets every free variable to zero.
    """

    def __init__(self, M: DomainMatrix):
        self.M = M
        m, n = M.shape
        K = M.domain
        augmented = M.to_sparse().hstack(identity(m, K))
        R, pivots = rref(augmented)
        self.pivots = tuple(p for p in pivots if p < n)
        self.transform = submatrix(R, range(m), range(n, n + m))

    def solve(self, b: Vector) -> Optional[Vector]:
        if self.M.shape[0] == 0:
            return {} if not b else None
        c = apply(self.transform, b)
        r = len(self.pivots)
        if any(i >= r for i in c):
            return None
        return {self.pivots[i]: value for i, value in c.items()}
