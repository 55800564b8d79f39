"""Hochschild 2-cochains A⊗A -> A, the cocycle test and the matrix extension f̃."""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from ..core import linalg
from ..core.errors import AlgebraMismatch, AmbiguousPattern, DimensionMismatch, SessionError
from ..core.linalg import Vector
from ..models.algebra import AlgebraElement, QuotientAlgebra
from ..models.expression import PathCombination
from ..models.matrix import MatrixOverA
from ..models.quiver import Path

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PatternRule:
    """f(a⊗b) = a'·value·b' whenever ab = a'·pattern·b' with the pattern straddling the cut."""

    pattern: Path
    value: PathCombination = field(hash=False)

    def __post_init__(self):
        if self.pattern.length < 2:
            raise SessionError(f"pattern {self.pattern} must have length >= 2 to straddle a cut", pattern=str(self.pattern))
        for p in self.value:
            if (p.source, p.target) != (self.pattern.source, self.pattern.target):
                raise SessionError(
                    f"value term {p} is not parallel to pattern {self.pattern}",
                    pattern=str(self.pattern),
                )


class Cochain2:
    """Bilinear map on basis pairs, materialized from explicit entries and pattern rules."""

    def __init__(
        self,
        algebra: QuotientAlgebra,
        rules: Sequence[PatternRule] = (),
        entries: Optional[Dict[Tuple[int, int], AlgebraElement]] = None,
    ):
        self.algebra = algebra
        self.rules = list(rules)
        self.entries = dict(entries or {})
        for e in self.entries.values():
            if e.algebra is not algebra:
                raise AlgebraMismatch("cochain entry from another algebra")
        self.table: Dict[Tuple[int, int], Vector] = self._materialize()
        logger.debug("cochain materialized: %d nonzero basis values", len(self.table))

    @classmethod
    def zero(cls, algebra: QuotientAlgebra) -> "Cochain2":
        return cls(algebra)

    def _pattern_value(self, p: Path, q: Path) -> Optional[Vector]:
        A = self.algebra
        found: Optional[Vector] = None
        witness = None
        for rule in self.rules:
            w = rule.pattern.arrows
            for cut in range(1, len(w)):
                w1, w2 = w[:cut], w[cut:]
                if len(p.arrows) < len(w1) or len(q.arrows) < len(w2):
                    continue
                if p.arrows[len(p.arrows) - len(w1):] != w1 or q.arrows[:len(w2)] != w2:
                    continue
                prefix = p.arrows[: len(p.arrows) - len(w1)]
                suffix = q.arrows[len(w2):]
                comb: PathCombination = {}
                for t, c in rule.value.items():
                    arrows = prefix + t.arrows + suffix
                    path = Path(p.source, q.target, arrows) if arrows else Path(p.source, p.source)
                    comb[path] = comb.get(path, A.field.zero) + c
                value = A.normal_form(comb).vector
                if found is None:
                    found, witness = value, (str(rule.pattern), cut)
                elif value != found:
                    raise AmbiguousPattern(
                        f"patterns give different values on ({p}, {q})",
                        pair=[str(p), str(q)],
                        first=A.format(found),
                        second=A.format(value),
                        occurrences=[witness, (str(rule.pattern), cut)],
                    )
        return found

    def _materialize(self) -> Dict[Tuple[int, int], Vector]:
        A = self.algebra
        table: Dict[Tuple[int, int], Vector] = {}
        for i, p in enumerate(A.basis):
            for j, q in enumerate(A.basis):
                if (i, j) in self.entries:
                    value = self.entries[i, j].vector
                elif self.rules and p.length and q.length and p.target == q.source:
                    value = self._pattern_value(p, q)
                else:
                    value = None
                if value:
                    table[i, j] = value
        return table

    def value(self, i: int, j: int) -> Vector:
        return self.table.get((i, j), {})

    def apply(self, u: Vector, v: Vector) -> Vector:
        out: Vector = {}
        for i, a in u.items():
            for j, b in v.items():
                val = self.table.get((i, j))
                if val:
                    out = linalg.add_vectors(out, val, a * b)
        return out

    def __call__(self, a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
        return eval_f(self, a, b)

    def is_zero(self) -> bool:
        return not self.table

    def vanishes_on_frame(self) -> bool:
        """True when f(x⊗y) = 0 whenever x or y is a stationary path."""
        A = self.algebra
        return not any(A.basis[i].is_stationary or A.basis[j].is_stationary for i, j in self.table)


def eval_f(f: Cochain2, a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    if a.algebra is not f.algebra or b.algebra is not f.algebra:
        raise AlgebraMismatch("arguments do not belong to the cochain's algebra")
    return AlgebraElement(f.algebra, f.apply(a.vector, b.vector))


@dataclass
class Violation:
    triple: Tuple[str, str, str]
    residual: AlgebraElement


@dataclass
class CocycleReport:
    passed: bool
    violations: List[Violation]


def check_cocycle(f: Cochain2) -> CocycleReport:
    """Evaluate a·f(b⊗c) − f(ab⊗c) + f(a⊗bc) − f(a⊗b)·c on all basis triples."""
    A = f.algebra
    S = A.structured
    one = A.field.one
    violations: List[Violation] = []
    for x in range(A.dim):
        ex = {x: one}
        for y in range(A.dim):
            ey = {y: one}
            fxy = f.value(x, y)
            xy = S.mul_basis(x, y)
            for z in range(A.dim):
                ez = {z: one}
                res = S.multiply(ex, f.value(y, z))
                res = linalg.add_vectors(res, f.apply(xy, ez), -one)
                res = linalg.add_vectors(res, f.apply(ex, S.mul_basis(y, z)))
                res = linalg.add_vectors(res, S.multiply(fxy, ez), -one)
                if res:
                    violations.append(
                        Violation((A.label(x), A.label(y), A.label(z)), AlgebraElement(A, res))
                    )
    logger.info("cocycle check: %s (%d violations)", "pass" if not violations else "fail", len(violations))
    return CocycleReport(not violations, violations)


def tilde_f(f: Cochain2, B: MatrixOverA, Bp: MatrixOverA) -> MatrixOverA:
    """f̃(B⊗B')_ij = Σ_l f(b_il ⊗ b'_lj)."""
    A = f.algebra
    if B.algebra is not A or Bp.algebra is not A:
        raise AlgebraMismatch("matrices over a different algebra")
    if B.n != Bp.m:
        raise DimensionMismatch(f"cannot pair {B.shape} with {Bp.shape}")
    rows = []
    for i in range(B.m):
        row = []
        for j in range(Bp.n):
            acc: Vector = {}
            for l in range(B.n):
                a, b = B.rows[i][l], Bp.rows[l][j]
                if a and b:
                    acc = linalg.add_vectors(acc, f.apply(a.vector, b.vector))
            row.append(AlgebraElement(A, acc))
        rows.append(row)
    return MatrixOverA(A, rows, Bp.n, B.row_frame, Bp.col_frame)
