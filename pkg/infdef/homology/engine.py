"""Projective covers, minimal resolutions, chain-map lifting and Yoneda products.

Works over any StructuredAlgebra: the quotient A itself or the deformed A_f.
Maps are DomainMatrix objects on column vectors; for a resolution,
``differentials[0]`` is the augmentation Q_0 -> M and ``differentials[i]``
maps Q_i -> Q_{i-1}.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from sympy.polys.matrices import DomainMatrix

from ..core import linalg
from ..core.errors import DegreeMismatch, LiftFailed, VerificationFailed
from ..core.linalg import Vector
from ..models.algebra import QuotientAlgebra
from ..models.matrix import MatrixOverA
from ..models.module import ProjectiveModule, Representation
from ..models.structured import StructuredAlgebra

logger = logging.getLogger(__name__)


def _top_generators(algebra: StructuredAlgebra, action: Sequence[DomainMatrix], space: Sequence[Vector], dim: int) -> List[Tuple[str, Vector]]:
    """Vectors of ``space`` lifting a basis of space / rad(space), grouped by vertex."""
    K = algebra.K
    rad: List[Vector] = []
    for r in algebra.radical_generators:
        for w in space:
            image = linalg.apply(action[r], w)
            if image:
                rad.append(image)
    rad = linalg.row_basis(rad, dim, K)
    out = []
    for v in algebra.vertices:
        ev = [img for img in (linalg.apply(action[algebra.frame[v]], w) for w in space) if img]
        if not ev:
            continue
        picked = linalg.independent_columns(rad + ev, dim, K)
        out.extend((v, ev[p - len(rad)]) for p in picked if p >= len(rad))
    return out


def projective_cover(M: Representation, name: str = "P") -> Tuple[ProjectiveModule, DomainMatrix]:
    basis = [{i: M.K.one} for i in range(M.dim)]
    gens = _top_generators(M.algebra, M.action, basis, M.dim)
    P = ProjectiveModule(M.algebra, [v for v, _ in gens], name=name)
    return P, P.hom_to(M, [w for _, w in gens])


@dataclass
class Resolution:
    module: Representation
    terms: List[ProjectiveModule]
    differentials: List[DomainMatrix]
    sources: Optional[List[List[str]]] = None
    _solvers: Dict[Tuple[int, str], Tuple[List[int], linalg.Solver]] = field(default_factory=dict, repr=False)

    @property
    def algebra(self) -> StructuredAlgebra:
        return self.module.algebra

    @property
    def degree(self) -> int:
        return len(self.terms) - 1

    def vertices(self, i: int) -> List[str]:
        return list(self.terms[i].vertices)

    def multiplicities(self, i: int) -> Dict[str, int]:
        return self.terms[i].multiplicities()

    def truncated(self, N: int) -> "Resolution":
        sources = self.sources[: N + 1] if self.sources else None
        return Resolution(self.module, self.terms[: N + 1], self.differentials[: N + 1], sources)

    def corner_solver(self, i: int, v: str) -> Tuple[List[int], linalg.Solver]:
        """Solver for differentials[i] restricted to the coordinates of e_v Q_i."""
        key = (i, v)
        if key not in self._solvers:
            d = self.differentials[i]
            corner = self.terms[i].corner(v)
            self._solvers[key] = (corner, linalg.Solver(linalg.submatrix(d, range(d.shape[0]), corner)))
        return self._solvers[key]

    def preimage(self, i: int, v: str, value: Vector) -> Optional[Vector]:
        """y in e_v Q_i with differentials[i] y = value, or None."""
        if not value:
            return {}
        corner, solver = self.corner_solver(i, v)
        y = solver.solve(value)
        if y is None:
            return None
        return {corner[p]: c for p, c in y.items()}

    def verify(self, exact_through: Optional[int] = None) -> "Resolution":
        """Composition zero, minimality and exactness (through ``exact_through``)."""
        N = self.degree
        if exact_through is None:
            exact_through = N - 1
        d = self.differentials
        if linalg.rank(d[0]) != self.module.dim:
            raise VerificationFailed("augmentation is not surjective", degree=0)
        for i in range(1, N + 1):
            if not linalg.is_zero(d[i - 1] * d[i]):
                raise VerificationFailed("consecutive differentials do not compose to zero", degree=i)
            P = self.terms[i - 1]
            for col in linalg.columns(d[i]):
                if not P.in_radical(col):
                    raise VerificationFailed("differential leaves the radical", degree=i)
        for i in range(0, min(exact_through, N - 1) + 1):
            kernel = self.terms[i].dim - linalg.rank(d[i])
            if linalg.rank(d[i + 1]) != kernel:
                raise VerificationFailed("complex is not exact", degree=i, kernel=kernel)
        return self


def _resolve(M: Representation, N: int) -> Resolution:
    P, eps = projective_cover(M, name="Q_0")
    terms, diffs = [P], [eps]
    kernel = linalg.nullspace(eps)
    for i in range(1, N + 1):
        prev = terms[-1]
        gens = _top_generators(M.algebra, prev.action, kernel, prev.dim)
        P = ProjectiveModule(M.algebra, [v for v, _ in gens], name=f"Q_{i}")
        d = P.hom_to(prev, [w for _, w in gens])
        terms.append(P)
        diffs.append(d)
        kernel = linalg.nullspace(d) if P.dim else []
        logger.debug("%s degree %d: %s", M.name, i, P.vertices)
    return Resolution(M, terms, diffs)


def minimal_resolution(M: Representation, N: int) -> Resolution:
    """Degrees 0..N; one extra degree is computed to certify exactness at N."""
    if N < 0:
        raise DegreeMismatch(f"resolution degree must be >= 0, got {N}")
    full = _resolve(M, N + 1)
    full.verify(exact_through=N)
    logger.info("resolved %s to degree %d", M.name, N)
    return full.truncated(N)


def direct_sum_resolution(resolutions: Sequence[Resolution]) -> Resolution:
    """Block direct sum; ``sources`` records which summand each slot resolves."""
    algebra = resolutions[0].algebra
    K = algebra.K
    N = min(r.degree for r in resolutions)
    module = Representation.direct_sum([r.module for r in resolutions], name="S")
    terms, diffs, sources = [], [], []
    for i in range(N + 1):
        vertices, origin = [], []
        for r in resolutions:
            vertices.extend(r.terms[i].vertices)
            origin.extend([_source_label(r)] * r.terms[i].rank)
        terms.append(ProjectiveModule(algebra, vertices, name=f"Q_{i}"))
        sources.append(origin)
        rows = module.dim if i == 0 else terms[i - 1].dim
        blocks, r0, c0 = [], 0, 0
        for r in resolutions:
            blocks.append((r0, c0, r.differentials[i]))
            r0 += r.module.dim if i == 0 else r.terms[i - 1].dim
            c0 += r.terms[i].dim
        diffs.append(linalg.assemble((rows, terms[i].dim), blocks, K))
    return Resolution(module, terms, diffs, sources)


def _source_label(r: Resolution) -> str:
    name = r.module.name
    return name[2:] if name.startswith("S_") else name


def simple_resolution(algebra: StructuredAlgebra, v: str, N: int) -> Resolution:
    res = minimal_resolution(Representation.simple(algebra, v), N)
    res.sources = [[v] * t.rank for t in res.terms]
    return res


def differential_matrix(res: Resolution, i: int, A: QuotientAlgebra) -> MatrixOverA:
    """B_i with [δ_i(x)] = [x] B_i; rows are slots of Q_i, columns slots of Q_{i-1}."""
    if res.algebra is not A.structured:
        raise VerificationFailed("resolution is not over this quotient algebra")
    src, tgt = res.terms[i], res.terms[i - 1]
    d = res.differentials[i]
    rows = []
    for k in range(src.rank):
        col = linalg.column(d, src.generator(k))
        per_slot: List[Vector] = [dict() for _ in range(tgt.rank)]
        for p, c in col.items():
            l, y = tgt.coordinates[p]
            per_slot[l][y] = c
        rows.append([A.from_vector(vec) for vec in per_slot])
    return MatrixOverA(A, rows, tgt.rank, src.vertices, tgt.vertices)


def frame_matrix(res: Resolution, i: int, A: QuotientAlgebra) -> MatrixOverA:
    return MatrixOverA.frame(A, res.terms[i].vertices)


def lift_chain_map(g: DomainMatrix, source: Resolution, target: Resolution, n: int, depth: int) -> List[DomainMatrix]:
    """γ_t : Q_{n+t} -> Q'_t with δ'_0 γ_0 = g and δ'_t γ_t = γ_{t-1} δ_{n+t}."""
    if n + depth > source.degree or depth > target.degree:
        raise DegreeMismatch(
            f"lifting a degree-{n} map to depth {depth} needs more degrees than computed",
            source_degree=source.degree,
            target_degree=target.degree,
        )
    lifts: List[DomainMatrix] = []
    for t in range(depth + 1):
        src = source.terms[n + t]
        tgt = target.terms[t]
        composite = g if t == 0 else lifts[-1] * source.differentials[n + t]
        values = linalg.columns(composite) if src.dim else []
        images = []
        for k in range(src.rank):
            value = values[src.generator(k)]
            y = target.preimage(t, src.vertices[k], value) if tgt.dim else (None if value else {})
            if y is None:
                raise LiftFailed("no preimage while lifting", degree=t, slot=k)
            images.append(y)
        lifts.append(src.hom_to(tgt, images))
        logger.debug("lifted degree-%d map to depth %d", n, t)
    return lifts


# Ext over a semisimple module


@dataclass(frozen=True)
class ExtClass:
    degree: int
    vector: Tuple[Tuple[int, object], ...]

    @classmethod
    def of(cls, degree: int, vec: Vector) -> "ExtClass":
        return cls(degree, tuple(sorted((k, c) for k, c in vec.items() if c)))

    @property
    def coords(self) -> Vector:
        return dict(self.vector)


class ExtAlgebra:
    """Ext*(S, S) for S = ⊕_j S_{vertices[j]} via a minimal resolution of S.

    Minimality makes every cochain a cocycle and kills coboundaries, so the
    degree-n classes are Hom(Q_n, S), one basis element per pair (slot k, j)
    with matching vertex.
    """

    def __init__(self, resolution: Resolution, vertices: Sequence[str]):
        self.resolution = resolution
        self.vertices = list(vertices)
        if resolution.module.dim != len(self.vertices):
            raise VerificationFailed("augmented module is not the given semisimple module")
        self._basis: Dict[int, List[Tuple[int, int]]] = {}
        self._lifts: Dict[Tuple[int, int], List[DomainMatrix]] = {}
        self._star: Dict[Tuple[int, int, int, int], Vector] = {}

    @property
    def algebra(self) -> StructuredAlgebra:
        return self.resolution.algebra

    @property
    def degree(self) -> int:
        return self.resolution.degree

    def basis(self, n: int) -> List[Tuple[int, int]]:
        if n < 0 or n > self.degree:
            raise DegreeMismatch(f"degree {n} outside the computed range 0..{self.degree}")
        if n not in self._basis:
            term = self.resolution.terms[n]
            self._basis[n] = [
                (k, j) for k, v in enumerate(term.vertices) for j, w in enumerate(self.vertices) if v == w
            ]
        return self._basis[n]

    def dim(self, n: int) -> int:
        return len(self.basis(n))

    def labels(self, n: int) -> List[str]:
        src = self.resolution.sources
        out = []
        for k, j in self.basis(n):
            origin = src[n][k] if src else "?"
            out.append(f"Ext^{n}(S_{origin},S_{self.vertices[j]})#{k}")
        return out

    def class_map(self, n: int, vec: Vector) -> DomainMatrix:
        """The module map Q_n -> S sending generator k to Σ_j c_(k,j) s_j."""
        basis = self.basis(n)
        if any(b >= len(basis) for b in vec):
            raise DegreeMismatch(f"class has coordinates beyond dim Ext^{n} = {len(basis)}")
        term = self.resolution.terms[n]
        images: List[Vector] = [dict() for _ in range(term.rank)]
        for b, c in vec.items():
            k, j = basis[b]
            images[k][j] = c
        return term.hom_to(self.resolution.module, images)

    def coordinates(self, n: int, g: DomainMatrix) -> Vector:
        term = self.resolution.terms[n]
        index = {kj: b for b, kj in enumerate(self.basis(n))}
        out: Vector = {}
        for k in range(term.rank):
            for j, c in linalg.column(g, term.generator(k)).items():
                b = index.get((k, j))
                if b is None:
                    raise VerificationFailed("map to S does not respect vertices", degree=n, slot=k)
                out[b] = c
        return out

    def lift(self, n: int, b: int, depth: int) -> List[DomainMatrix]:
        """Cached lifting of the basis class (n, b); extended on demand."""
        key = (n, b)
        cached = self._lifts.get(key)
        if cached is None or len(cached) <= depth:
            g = self.class_map(n, {b: self.algebra.K.one})
            self._lifts[key] = lift_chain_map(g, self.resolution, self.resolution, n, depth)
        return self._lifts[key][: depth + 1]

    def star(self, m: int, a: int, n: int, b: int) -> Vector:
        """Product of basis classes (m, a) ⋆ (n, b) in degree n + m."""
        key = (m, a, n, b)
        if key not in self._star:
            gamma = self.lift(n, b, m)[m]
            h = self.class_map(m, {a: self.algebra.K.one})
            self._star[key] = self.coordinates(n + m, h * gamma)
        return self._star[key]

    def multiply(self, m: int, h: Vector, n: int, g: Vector) -> Vector:
        out: Vector = {}
        for a, ca in h.items():
            for b, cb in g.items():
                out = linalg.add_vectors(out, self.star(m, a, n, b), ca * cb)
        return out

    def product(self, h: ExtClass, g: ExtClass) -> ExtClass:
        if h.degree + g.degree > self.degree:
            raise DegreeMismatch(
                f"product lands in degree {h.degree + g.degree} beyond the computed {self.degree}"
            )
        return ExtClass.of(h.degree + g.degree, self.multiply(h.degree, h.coords, g.degree, g.coords))

    def unit(self) -> Vector:
        """Σ identity components in degree 0."""
        return {b: self.algebra.K.one for b in range(self.dim(0))}

    def dims(self, N: Optional[int] = None) -> List[int]:
        N = self.degree if N is None else N
        return [self.dim(n) for n in range(N + 1)]


def yoneda_base(ext: ExtAlgebra, h: ExtClass, g: ExtClass) -> ExtClass:
    return ext.product(h, g)


def check_associativity(ext: ExtAlgebra, N: int) -> List[Tuple[Tuple[int, int], Tuple[int, int], Tuple[int, int]]]:
    """Basis triples with (a⋆b)⋆c != a⋆(b⋆c) and total degree <= N."""
    failures = []
    one = ext.algebra.K.one
    for p in range(N + 1):
        for q in range(N + 1 - p):
            for r in range(N + 1 - p - q):
                for a in range(ext.dim(p)):
                    for b in range(ext.dim(q)):
                        ab = ext.star(p, a, q, b)
                        for c in range(ext.dim(r)):
                            left = ext.multiply(p + q, ab, r, {c: one})
                            right = ext.multiply(p, {a: one}, q + r, ext.star(q, b, r, c))
                            if left != right:
                                failures.append(((p, a), (q, b), (r, c)))
    return failures
