"""The deformed algebra A_f on A ⊕ At and tuple modules (M0, M1, T, f_M) over it."""
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from sympy.polys.matrices import DomainMatrix

from ..core import linalg
from ..core.errors import FrameNotPreserved, NotACocycle, NotAModule, NotAMorphism, VerificationFailed
from ..core.linalg import Vector
from ..models.algebra import QuotientAlgebra
from ..models.matrix import MatrixOverA
from ..models.module import ProjectiveModule, Representation
from ..models.structured import StructuredAlgebra
from .hochschild import Cochain2, check_cocycle

logger = logging.getLogger(__name__)


def _shift(vec: Vector, d: int) -> Vector:
    return {k + d: c for k, c in vec.items()}


class DeformedAlgebra(StructuredAlgebra):
    """A_f with basis (b, 0) at index k and b·t at index d + k.

    (a0 + a1 t)(b0 + b1 t) = a0 b0 + (a0 b1 + a1 b0 + f(a0, b0)) t
    """

    def __init__(self, base: QuotientAlgebra, cochain: Cochain2):
        self.base = base
        self.cochain = cochain
        S = base.structured
        d = S.dim
        table: Dict[Tuple[int, int], Vector] = {}
        for i in range(d):
            for j in range(d):
                prod = S.mul_basis(i, j)
                value = linalg.add_vectors(prod, _shift(cochain.value(i, j), d))
                if value:
                    table[i, j] = value
                if prod:
                    shifted = _shift(prod, d)
                    table[i, d + j] = shifted
                    table[d + i, j] = shifted
        super().__init__(
            base.field,
            S.labels + [f"({label})t" for label in S.labels],
            table,
            S.source + S.source,
            S.target + S.target,
            S.vertices,
            S.frame,
            S.radical + list(range(d, 2 * d)),
            name="A_f",
        )

    def __repr__(self) -> str:
        return f"DeformedAlgebra(dim={self.dim})"

    @property
    def base_dim(self) -> int:
        return self.base.dim

    def embed(self, vec: Vector) -> Vector:
        """a ↦ (a, 0)."""
        return dict(vec)

    def times_t(self, vec: Vector) -> Vector:
        """a ↦ a·t."""
        return _shift(vec, self.base_dim)

    def split(self, vec: Vector) -> Tuple[Vector, Vector]:
        d = self.base_dim
        return ({k: c for k, c in vec.items() if k < d}, {k - d: c for k, c in vec.items() if k >= d})

    def format(self, vec: Vector) -> str:
        a0, a1 = self.split(vec)
        if not a1:
            return self.base.format(a0)
        tail = f"({self.base.format(a1)})t"
        return tail if not a0 else f"{self.base.format(a0)} + {tail}"


def build_deformed_algebra(A: QuotientAlgebra, f: Cochain2, verify: bool = False) -> DeformedAlgebra:
    if f.algebra is not A:
        raise NotACocycle("cochain belongs to another algebra")
    report = check_cocycle(f)
    if not report.passed:
        first = report.violations[0]
        raise NotACocycle(
            f"f is not a Hochschild 2-cocycle ({len(report.violations)} violating triples)",
            triple=list(first.triple),
            residual=str(first.residual),
        )
    if not f.vanishes_on_frame():
        raise FrameNotPreserved("f does not vanish on stationary paths; (e_i, 0) are not idempotents of A_f")
    Af = DeformedAlgebra(A, f)
    if verify:
        Af.verify()
    logger.info("built A_f: dim %d, dim rad %d", Af.dim, len(Af.radical))
    return Af


def minimal_polynomial_degree(algebra: StructuredAlgebra, vec: Vector) -> int:
    """Degree of the minimal polynomial of an element, by stacking its powers."""
    powers = [dict(algebra.unit)]
    while True:
        nxt = algebra.multiply(powers[-1], vec)
        candidate = powers + [nxt]
        if linalg.rank(linalg.from_rows(candidate, algebra.dim, algebra.K)) < len(candidate):
            return len(powers)
        powers = candidate


# Tuple modules


@dataclass
class TupleModule:
    """(M0, M1, T, f_M); ``fM[a]`` is the linear map M0 -> M1, m ↦ f_M(a ⊗ m)."""

    algebra: QuotientAlgebra
    cochain: Cochain2
    M0: Representation
    M1: Representation
    T: DomainMatrix
    fM: List[DomainMatrix]
    name: str = "M"

    def fM_element(self, vec: Vector) -> DomainMatrix:
        out = linalg.zeros(self.M1.dim, self.M0.dim, self.algebra.K)
        for k, c in vec.items():
            out = out + linalg.scale(self.fM[k], c)
        return out

    def verify(self) -> "TupleModule":
        S = self.algebra.structured
        M0, M1, T = self.M0, self.M1, self.T
        if M0.dim and linalg.rank(T) != M0.dim:
            raise NotAModule("T is not injective", module=self.name)
        for a in range(S.dim):
            if not linalg.equal(T * M0.action[a], M1.action[a] * T):
                raise NotAModule("T is not A-linear", module=self.name, element=S.labels[a])
        for a in range(S.dim):
            for b in range(S.dim):
                lhs = M1.action[a] * self.fM[b] - self.fM_element(S.mul_basis(a, b)) + self.fM[a] * M0.action[b]
                fab = self.cochain.value(a, b)
                if fab:
                    lhs = lhs - M1.act_element(fab) * T
                if not linalg.is_zero(lhs):
                    raise NotAModule(
                        "module condition fails for f_M",
                        module=self.name,
                        pair=[S.labels[a], S.labels[b]],
                    )
        return self


@dataclass
class TupleMorphism:
    """(u0, u1, u2): M -> N with u0 : M0 -> N0, u1 : M0 -> N1, u2 : M1 -> N1."""

    source: TupleModule
    target: TupleModule
    u0: DomainMatrix
    u1: DomainMatrix
    u2: DomainMatrix

    def verify(self) -> "TupleMorphism":
        M, N = self.source, self.target
        S = M.algebra.structured
        if not linalg.equal(N.T * self.u0, self.u2 * M.T):
            raise NotAMorphism("square with T does not commute")
        for a in range(S.dim):
            if not linalg.equal(self.u0 * M.M0.action[a], N.M0.action[a] * self.u0):
                raise NotAMorphism("u0 is not A-linear", element=S.labels[a])
            if not linalg.equal(self.u2 * M.M1.action[a], N.M1.action[a] * self.u2):
                raise NotAMorphism("u2 is not A-linear", element=S.labels[a])
            lhs = self.u1 * M.M0.action[a]
            rhs = N.M1.action[a] * self.u1 - self.u2 * M.fM[a] + N.fM[a] * self.u0
            if not linalg.equal(lhs, rhs):
                raise NotAMorphism("morphism condition fails for u1", element=S.labels[a])
        return self


def identity_morphism(M: TupleModule) -> TupleMorphism:
    K = M.algebra.K
    return TupleMorphism(
        M, M, linalg.identity(M.M0.dim, K), linalg.zeros(M.M1.dim, M.M0.dim, K), linalg.identity(M.M1.dim, K)
    )


def compose(v: TupleMorphism, u: TupleMorphism) -> TupleMorphism:
    """v ∘ u = (v0 u0, v2 u1 + v1 u0, v2 u2)."""
    return TupleMorphism(u.source, v.target, v.u0 * u.u0, v.u2 * u.u1 + v.u1 * u.u0, v.u2 * u.u2)


def realize_tuple(M: TupleModule, Af: DeformedAlgebra, check: bool = True) -> Representation:
    """M0 ⊕ M1 with (a0 + a1 t)(m0, m1) = (a0 m0, a0 m1 + a1 T m0 + f_M(a0 ⊗ m0))."""
    n0, n1 = M.M0.dim, M.M1.dim
    dim = n0 + n1
    K = Af.K
    d = Af.base_dim
    action: List[DomainMatrix] = []
    for a in range(d):
        action.append(
            linalg.assemble((dim, dim), [(0, 0, M.M0.action[a]), (n0, 0, M.fM[a]), (n0, n0, M.M1.action[a])], K)
        )
    for a in range(d):
        action.append(linalg.assemble((dim, dim), [(n0, 0, M.M1.action[a] * M.T)], K))
    rep = Representation(Af, dim, action, name=f"real({M.name})")
    if check:
        rep.verify()
    return rep


def realize_morphism(u: TupleMorphism, source: Optional[Representation] = None, target: Optional[Representation] = None) -> DomainMatrix:
    """(m0, m1) ↦ (u0 m0, u1 m0 + u2 m1); checked against the realized modules when given."""
    M, N = u.source, u.target
    K = M.algebra.K
    shape = (N.M0.dim + N.M1.dim, M.M0.dim + M.M1.dim)
    mat = linalg.assemble(shape, [(0, 0, u.u0), (N.M0.dim, 0, u.u1), (N.M0.dim, M.M0.dim, u.u2)], K)
    if source is not None and target is not None:
        for a in range(source.algebra.dim):
            if not linalg.equal(mat * source.action[a], target.action[a] * mat):
                raise NotAMorphism("realized map is not A_f-linear", element=source.algebra.labels[a])
    return mat


def zero_tuple(A: QuotientAlgebra, f: Cochain2, M1: Representation, name: str = "") -> TupleModule:
    """(0, M, 0, 0)."""
    K = A.K
    empty = Representation(A.structured, 0, [linalg.zeros(0, 0, K) for _ in range(A.dim)], name="0")
    return TupleModule(
        A, f, empty, M1, linalg.zeros(M1.dim, 0, K), [linalg.zeros(M1.dim, 0, K) for _ in range(A.dim)],
        name=name or f"(0,{M1.name})",
    )


def projective_f_action(P: ProjectiveModule, f: Cochain2, a: int) -> DomainMatrix:
    """Linear map x ↦ f_P(a ⊗ x) on P = ⊕Λe_v, applying f slotwise."""
    entries = {}
    for col, (k, x) in enumerate(P.coordinates):
        for y, c in f.value(a, x).items():
            row = P.position.get((k, y))
            if row is None:
                raise VerificationFailed(
                    "f(a ⊗ x) leaves the summand Ae_v",
                    element=P.algebra.labels[a],
                    basis=P.algebra.labels[x],
                )
            entries[row, col] = c
    return linalg.from_entries(entries, (P.dim, P.dim), P.K)


def hat_projective(A: QuotientAlgebra, f: Cochain2, vertices: Sequence[str], name: str = "") -> TupleModule:
    """P̂ = (P, P, Id, f_P) for P = ⊕_k Ae_{v_k}."""
    P = ProjectiveModule(A.structured, vertices, name=name or "P")
    fM = [projective_f_action(P, f, a) for a in range(A.dim)]
    return TupleModule(A, f, P, P, linalg.identity(P.dim, A.K), fM, name=f"hat({P.name})")


def _place(P: ProjectiveModule, slot: int, y: int) -> int:
    pos = P.position.get((slot, y))
    if pos is None:
        raise VerificationFailed(
            "entry does not lie in the summand of its slot",
            slot=slot,
            basis=P.algebra.labels[y],
        )
    return pos


def right_multiplication(P: ProjectiveModule, Pt: ProjectiveModule, B: MatrixOverA) -> DomainMatrix:
    """The A-map [x] ↦ [x]B sending generator k to Σ_l B[k,l] in slot l."""
    images = []
    for k in range(P.rank):
        img: Vector = {}
        for l in range(Pt.rank):
            for y, c in B.rows[k][l].vector.items():
                img[_place(Pt, l, y)] = c
        images.append(img)
    return P.hom_to(Pt, images)


def hat_map(src: TupleModule, tgt: TupleModule, B: MatrixOverA, C: Optional[MatrixOverA] = None) -> TupleMorphism:
    """Morphism of hat projectives with u0 = u2 = (·B) and u1 = f(− ⊗ B) + (·C)."""
    P, Pt = src.M0, tgt.M0
    f = src.cochain
    u = right_multiplication(P, Pt, B)
    cols = []
    for k, x in P.coordinates:
        col: Vector = {}
        for l in range(Pt.rank):
            b = B.rows[k][l]
            if b:
                for y, c in f.apply({x: f.algebra.field.one}, b.vector).items():
                    col = linalg.add_vectors(col, {_place(Pt, l, y): c})
        cols.append(col)
    u1 = linalg.from_columns(cols, Pt.dim, P.K)
    if C is not None:
        u1 = u1 + right_multiplication(P, Pt, C)
    return TupleMorphism(src, tgt, u, u1, u)


def hom_hat_basis(A: QuotientAlgebra, f: Cochain2, i: str, j: str) -> List[TupleMorphism]:
    """Basis of Hom(P̂_i, P̂_j): the b-branch (·b, f(−⊗b), ·b) then the c-branch (0, ·c, 0)."""
    src = hat_projective(A, f, [i], name=f"P_{i}")
    tgt = hat_projective(A, f, [j], name=f"P_{j}")
    K = A.K
    zero = linalg.zeros(tgt.M0.dim, src.M0.dim, K)
    out = []
    hom = A.hom_basis(i, j)
    for b in hom:
        out.append(hat_map(src, tgt, MatrixOverA(A, [[b]], 1)))
    for c in hom:
        out.append(TupleMorphism(src, tgt, zero, right_multiplication(src.M0, tgt.M0, MatrixOverA(A, [[c]], 1)), zero))
    return out
