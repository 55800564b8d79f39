"""Condition (∗), the correction matrices C_i, the maps α_i and the explicit A_f-resolution.

For a minimal A-resolution (Q_i, δ_i) of a semisimple module the deformed
complex has terms ⊕_{j≤m} Q̂_j and differentials (u_m, v_m, u_m) with

    u_m block (j, j+1) = δ_{j+1}
    v_m row j          = (−1)^j Id at column j, (−1)^j α_{j+1} at column j+1

written for maps acting on column vectors (rows index the target blocks).
"""
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Dict, List, Optional, Tuple

from sympy.polys.matrices import DomainMatrix

from ..core import linalg
from ..core.errors import (
    ConditionFailed,
    DegreeMismatch,
    Mismatch,
    NoSolution,
    StarNotCertified,
    VerificationFailed,
)
from ..core.linalg import Vector
from ..models.algebra import QuotientAlgebra
from ..models.matrix import MatrixOverA
from ..models.module import ProjectiveModule
from .deformation import DeformedAlgebra, projective_f_action, realize_tuple, zero_tuple
from .engine import Resolution, differential_matrix, frame_matrix, minimal_resolution
from .hochschild import Cochain2, tilde_f

logger = logging.getLogger(__name__)


@dataclass
class StarData:
    algebra: QuotientAlgebra
    cochain: Cochain2
    resolution: Resolution
    alpha1: DomainMatrix
    holds: bool
    witness: Optional[Dict[str, object]] = None
    C: Dict[int, MatrixOverA] = field(default_factory=dict)
    alphas: Dict[int, DomainMatrix] = field(default_factory=dict)
    correction_identities: Dict[int, bool] = field(default_factory=dict)
    _f_cache: Dict[int, List[DomainMatrix]] = field(default_factory=dict, repr=False)

    @property
    def degree(self) -> int:
        return self.resolution.degree

    @property
    def name(self) -> str:
        return self.resolution.module.name

    @cached_property
    def B(self) -> Dict[int, MatrixOverA]:
        return {i: differential_matrix(self.resolution, i, self.algebra) for i in range(1, self.degree + 1)}

    @cached_property
    def E(self) -> List[MatrixOverA]:
        return [frame_matrix(self.resolution, i, self.algebra) for i in range(self.degree + 1)]

    def f_actions(self, i: int) -> List[DomainMatrix]:
        """x ↦ f_{Q_i}(a ⊗ x) for every basis element a."""
        if i not in self._f_cache:
            P = self.resolution.terms[i]
            self._f_cache[i] = [projective_f_action(P, self.cochain, a) for a in range(self.algebra.dim)]
        return self._f_cache[i]

    def radical_images(self) -> Dict[int, bool]:
        """Whether Im α_i ⊆ rad Q_{i-1}, per degree."""
        out = {}
        for i, alpha in sorted(self.alphas.items()):
            P = self.resolution.terms[i - 1]
            out[i] = all(P.in_radical(col) for col in linalg.columns(alpha))
        return out


def _alpha_map(star: StarData, i: int, C: Optional[MatrixOverA], sign) -> DomainMatrix:
    """[α(x)] = sign·(f̃([x]⊗B_i)E_{i-1} − [x]C) as a linear map Q_i -> Q_{i-1}."""
    A = star.algebra
    S = A.structured
    one = A.field.one
    src, tgt = star.resolution.terms[i], star.resolution.terms[i - 1]
    B = star.B[i]
    cols = []
    for k, y in src.coordinates:
        col: Vector = {}
        for l in range(tgt.rank):
            value = S.multiply(star.cochain.apply({y: one}, B.rows[k][l].vector), {S.frame[tgt.vertices[l]]: one})
            if C is not None and C.rows[k][l]:
                value = linalg.add_vectors(value, S.multiply({y: one}, C.rows[k][l].vector), -one)
            for z, c in value.items():
                pos = tgt.position.get((l, z))
                if pos is None:
                    raise VerificationFailed("α value leaves its summand", degree=i, slot=l)
                col[pos] = sign * c
        cols.append(col)
    return linalg.from_columns(cols, tgt.dim, A.K)


def check_star(resolution: Resolution, A: QuotientAlgebra, f: Cochain2) -> StarData:
    """Evaluate δ_0 α_1 δ_2 on Q_2 with [α_1(x)] = f̃([x]⊗B_1)E_0."""
    if resolution.degree < 2:
        raise DegreeMismatch("condition (∗) needs the resolution through degree 2", degree=resolution.degree)
    if resolution.algebra is not A.structured:
        raise VerificationFailed("resolution is not over the base algebra")
    star = StarData(A, f, resolution, linalg.zeros(0, 0, A.K), True)
    star.alpha1 = _alpha_map(star, 1, None, A.field.one)
    d = resolution.differentials
    composite = d[0] * star.alpha1 * d[2]
    if not linalg.is_zero(composite):
        star.holds = False
        bad = min(j for j, col in enumerate(linalg.columns(composite)) if col)
        k, x = resolution.terms[2].coordinates[bad]
        star.witness = {"slot": k, "vertex": resolution.terms[2].vertices[k], "basis": A.label(x)}
        logger.warning("condition (∗) fails for %s at %s", star.name, star.witness)
    else:
        logger.info("condition (∗) holds for %s", star.name)
    return star


def solve_C(star: StarData) -> Dict[int, MatrixOverA]:
    """C_1 = 0 and C_{i+1}B_i = E_{i+1} f̃(B_{i+1}⊗B_i) E_{i-1} − B_{i+1}C_i, row by row."""
    if not star.holds:
        raise StarNotCertified(f"condition (∗) does not hold for {star.name}", witness=star.witness)
    A = star.algebra
    res = star.resolution
    B = star.B
    C = {1: MatrixOverA.zeros(A, res.terms[1].rank, res.terms[0].rank, res.vertices(1), res.vertices(0))}
    for i in range(1, star.degree):
        rows_v, cols_v = res.vertices(i + 1), res.vertices(i - 1)
        target = tilde_f(star.cochain, B[i + 1], B[i]).restrict(rows_v, cols_v) - B[i + 1] @ C[i]
        Q, Qprev = res.terms[i], res.terms[i - 1]
        rows = []
        for s, v in enumerate(rows_v):
            value = {Qprev.position[t, z]: c for t, e in enumerate(target.rows[s]) for z, c in e.vector.items()}
            y = res.preimage(i, v, value)
            if y is None:
                raise NoSolution("no C row solves the correction equation", degree=i + 1, row=s)
            per_slot: List[Vector] = [dict() for _ in range(Q.rank)]
            for p, c in y.items():
                t, x = Q.coordinates[p]
                per_slot[t][x] = c
            rows.append([A.from_vector(vec) for vec in per_slot])
        C[i + 1] = MatrixOverA(A, rows, Q.rank, rows_v, res.vertices(i))
        logger.debug("solved C_%d for %s", i + 1, star.name)
    star.C = C
    star.correction_identities = check_correction_identity(star)
    return C


def check_correction_identity(star: StarData) -> Dict[int, bool]:
    """E_i f̃(B_i⊗B_{i-1}) E_{i-2} = C_i B_{i-1} + B_i C_{i-1} and E_i C_i E_{i-1} = C_i."""
    res = star.resolution
    out = {}
    for i in range(2, star.degree + 1):
        lhs = tilde_f(star.cochain, star.B[i], star.B[i - 1]).restrict(res.vertices(i), res.vertices(i - 2))
        rhs = star.C[i] @ star.B[i - 1] + star.B[i] @ star.C[i - 1]
        out[i] = lhs == rhs and star.C[i].respects_frame()
    return out


def build_alphas(star: StarData) -> Dict[int, DomainMatrix]:
    """[α_i(x)] = (−1)^{i+1}(f̃([x]⊗B_i)E_{i-1} − [x]C_i), with both chain conditions verified."""
    if not star.C:
        solve_C(star)
    A = star.algebra
    one = A.field.one
    res = star.resolution
    d = res.differentials
    alphas = {i: _alpha_map(star, i, star.C[i], one if i % 2 else -one) for i in range(1, star.degree + 1)}
    for i, alpha in alphas.items():
        sign = one if i % 2 else -one
        Fi, Fprev = star.f_actions(i), star.f_actions(i - 1)
        act, act_prev = res.terms[i].action, res.terms[i - 1].action
        for a in range(A.dim):
            lhs = alpha * act[a] - act_prev[a] * alpha
            rhs = linalg.scale(Fprev[a] * d[i] - d[i] * Fi[a], sign)
            if not linalg.equal(lhs, rhs):
                raise ConditionFailed("α fails the module condition", condition="i", degree=i, element=A.label(a))
        if i + 1 in alphas and not linalg.equal(alpha * d[i + 1], d[i] * alphas[i + 1]):
            raise ConditionFailed("α does not commute with the differentials", condition="ii", degree=i)
    star.alphas = alphas
    return alphas


def prepare_star(resolution: Resolution, A: QuotientAlgebra, f: Cochain2) -> StarData:
    """(∗) verdict, and when it holds the C_i and α_i."""
    star = check_star(resolution, A, f)
    if star.holds:
        solve_C(star)
        build_alphas(star)
    return star


# The deformed complex


def _remap(M: DomainMatrix, rows: List[int], cols: List[int], shape: Tuple[int, int]) -> DomainMatrix:
    entries = {}
    for i, row in linalg.entries(M).items():
        for j, c in row.items():
            entries[rows[i], cols[j]] = c
    return linalg.from_entries(entries, shape, M.domain)


@dataclass
class DeformedComplex:
    """Realized terms ⊕_{j≤m} Q̂_j laid out as (m0 blocks, m1 blocks), plus the A_f-projective form."""

    star: StarData
    algebra: DeformedAlgebra
    realized: List[DomainMatrix]
    offsets: List[List[int]]
    base_dims: List[int]
    permutations: List[List[int]]
    resolution: Resolution

    @property
    def degree(self) -> int:
        return len(self.realized) - 1

    def realized_dim(self, m: int) -> int:
        return 2 * self.base_dims[m]

    def summands(self, m: int) -> List[str]:
        return list(self.resolution.terms[m].vertices)

    def blocks(self, m: int) -> List[Tuple[int, int]]:
        """(block j, slot k) for each hat-projective slot of term m, in order."""
        res = self.star.resolution
        return [(j, k) for j in range(m + 1) for k in range(res.terms[j].rank)]

    def multiplicities(self, m: int) -> Dict[str, int]:
        return self.resolution.multiplicities(m)

    def to_realized(self, M: DomainMatrix, src: int, tgt: Optional[int]) -> DomainMatrix:
        """A matrix in projective coordinates (term src -> term tgt, or S when tgt is None)."""
        inv_src = _inverse(self.permutations[src])
        if tgt is None:
            rows = list(range(M.shape[0]))
            return _remap(M, rows, inv_src, (M.shape[0], self.realized_dim(src)))
        return _remap(M, _inverse(self.permutations[tgt]), inv_src, (self.realized_dim(tgt), self.realized_dim(src)))

    def to_projective(self, M: DomainMatrix, src: int, tgt: int) -> DomainMatrix:
        """Inverse of to_realized for maps between terms."""
        res = self.resolution
        return _remap(M, self.permutations[tgt], self.permutations[src], (res.terms[tgt].dim, res.terms[src].dim))

    def part(self, M: DomainMatrix, src: int, tgt: int, which: str) -> DomainMatrix:
        """Corner of a realized map: u0 (m0->m0), u1 (m0->m1), u2 (m1->m1) or 'upper' (m1->m0)."""
        ns, nt = self.base_dims[src], self.base_dims[tgt]
        rows = {"u0": range(nt), "u1": range(nt, 2 * nt), "u2": range(nt, 2 * nt), "upper": range(nt)}[which]
        cols = {"u0": range(ns), "u1": range(ns), "u2": range(ns, 2 * ns), "upper": range(ns, 2 * ns)}[which]
        return linalg.submatrix(M, rows, cols)

    def block(self, M: DomainMatrix, src: int, s: int, tgt: int, t: int) -> DomainMatrix:
        """Block Q_s -> Q_t of a map ⊕_{j≤src} Q_j -> ⊕_{j≤tgt} Q_j."""
        res = self.star.resolution
        r0, c0 = self.offsets[tgt][t], self.offsets[src][s]
        return linalg.submatrix(M, range(r0, r0 + res.terms[t].dim), range(c0, c0 + res.terms[s].dim))


def _inverse(perm: List[int]) -> List[int]:
    inv = [0] * len(perm)
    for i, p in enumerate(perm):
        inv[p] = i
    return inv


def build_deformed_complex(
    star: StarData,
    Af: DeformedAlgebra,
    N: Optional[int] = None,
    row_signs: Optional[Callable[[int], int]] = None,
) -> DeformedComplex:
    """Explicit resolution of (0, S, 0, 0) over A_f to degree N (exact through N)."""
    if not star.alphas:
        if not star.holds:
            raise StarNotCertified(f"condition (∗) does not hold for {star.name}", witness=star.witness)
        build_alphas(star)
    D = star.degree if N is None else N + 1
    if D > star.degree:
        raise DegreeMismatch(f"base data only reaches degree {star.degree}", requested=N)
    A = star.algebra
    K = A.K
    one = A.field.one
    res = star.resolution
    d = res.differentials
    sign = row_signs or (lambda j: 1 if j % 2 == 0 else -1)

    offsets, base_dims = [], []
    for m in range(D + 1):
        off, total = [], 0
        for j in range(m + 1):
            off.append(total)
            total += res.terms[j].dim
        offsets.append(off)
        base_dims.append(total)

    realized = [linalg.assemble((res.module.dim, 2 * base_dims[0]), [(0, 0, d[0])], K)]
    for m in range(1, D + 1):
        nt, ns = base_dims[m - 1], base_dims[m]
        blocks = []
        for j in range(m):
            r, c_same, c_next = offsets[m - 1][j], offsets[m][j], offsets[m][j + 1]
            s = one if sign(j) > 0 else -one
            blocks.append((r, c_next, d[j + 1]))
            blocks.append((nt + r, ns + c_next, d[j + 1]))
            blocks.append((nt + r, c_same, linalg.scale(linalg.identity(res.terms[j].dim, K), s)))
            blocks.append((nt + r, c_next, linalg.scale(star.alphas[j + 1], s)))
        realized.append(linalg.assemble((2 * nt, 2 * ns), blocks, K))

    terms, perms, sources = [], [], []
    for m in range(D + 1):
        vertices, origin, perm_m0, perm_m1 = [], [], [], []
        for j in range(m + 1):
            vertices.extend(res.terms[j].vertices)
            if res.sources:
                origin.extend(res.sources[j])
        P = ProjectiveModule(Af, vertices, name=f"Qhat_{m}")
        slot = 0
        for j in range(m + 1):
            Q = res.terms[j]
            for k, b in Q.coordinates:
                perm_m0.append(P.position[slot + k, b])
                perm_m1.append(P.position[slot + k, Af.base_dim + b])
            slot += Q.rank
        terms.append(P)
        perms.append(perm_m0 + perm_m1)
        sources.append(origin or None)

    module = realize_tuple(zero_tuple(A, star.cochain, res.module, name=res.module.name), Af)
    module.name = f"(0,{res.module.name})"
    diffs = [_remap(realized[0], list(range(res.module.dim)), perms[0], (res.module.dim, terms[0].dim))]
    for m in range(1, D + 1):
        diffs.append(_remap(realized[m], perms[m - 1], perms[m], (terms[m - 1].dim, terms[m].dim)))
    resolution = Resolution(module, terms, diffs, sources if res.sources else None)

    complex_ = DeformedComplex(star, Af, realized, offsets, base_dims, perms, resolution)
    _verify_complex(complex_)
    logger.info("built deformed complex for %s to degree %d", star.name, D)
    return complex_


def _verify_complex(cx: DeformedComplex) -> None:
    res = cx.resolution
    d = res.differentials
    for m in range(1, cx.degree + 1):
        if not linalg.is_zero(d[m - 1] * d[m]):
            raise VerificationFailed("consecutive differentials do not compose to zero", degree=m, invariant="composition")
    for m in range(cx.degree + 1):
        src = res.terms[m]
        tgt = res.module if m == 0 else res.terms[m - 1]
        for a in range(cx.algebra.dim):
            if not linalg.equal(d[m] * src.action[a], tgt.action[a] * d[m]):
                raise VerificationFailed(
                    "differential is not A_f-linear", degree=m, invariant="linearity", element=cx.algebra.labels[a]
                )
    res.verify(exact_through=cx.degree - 1)


def kernel_witness(cx: DeformedComplex, m: int, vec: Vector) -> Vector:
    """Preimage of a kernel element of δ̂_m: z_{m+1} solves δ_{m+1} z = x_m, z_j = (−1)^j y_j − α_{j+1}(z_{j+1})."""
    if m + 1 > cx.degree:
        raise DegreeMismatch(f"witness for degree {m} needs term {m + 1}")
    if linalg.apply(cx.realized[m], vec):
        raise VerificationFailed("vector is not in the kernel", degree=m)
    res = cx.star.resolution
    one = cx.star.algebra.field.one
    n = cx.base_dims[m]
    off = cx.offsets[m]

    def component(j: int, shift: int) -> Vector:
        lo = shift + off[j]
        hi = lo + res.terms[j].dim
        return {p - lo: c for p, c in vec.items() if lo <= p < hi}

    x = [component(j, 0) for j in range(m + 1)]
    y = [component(j, n) for j in range(m + 1)]
    z: List[Vector] = [dict() for _ in range(m + 2)]
    top = linalg.Solver(res.differentials[m + 1]).solve(x[m])
    if top is None:
        raise VerificationFailed("top component has no preimage", degree=m)
    z[m + 1] = top
    for j in range(m, -1, -1):
        sign = one if j % 2 == 0 else -one
        z[j] = linalg.add_vectors(linalg.scale_vector(y[j], sign), linalg.apply(cx.star.alphas[j + 1], z[j + 1]), -one)
    out: Vector = {}
    for j in range(m + 2):
        out.update({cx.offsets[m + 1][j] + p: c for p, c in z[j].items()})
    if linalg.apply(cx.realized[m + 1], out) != {p: c for p, c in vec.items() if c}:
        raise VerificationFailed("witness does not map onto the kernel element", degree=m)
    return out


def kernel_witness_check(cx: DeformedComplex, m: int) -> int:
    """Run the witness on a kernel basis of δ̂_m; returns the number of vectors checked."""
    basis = linalg.nullspace(cx.realized[m])
    for vec in basis:
        kernel_witness(cx, m, vec)
    return len(basis)


@dataclass
class Comparison:
    degree: int
    theorem: Dict[str, int]
    generic: Dict[str, int]


def compare_with_generic(cx: DeformedComplex, N: int) -> List[Comparison]:
    """Projective multiplicities of the explicit complex against the generic engine over A_f."""
    if N > cx.degree:
        raise DegreeMismatch(f"complex only reaches degree {cx.degree}", requested=N)
    generic = minimal_resolution(cx.resolution.module, N)
    rows = []
    for m in range(N + 1):
        expected, got = cx.multiplicities(m), generic.multiplicities(m)
        if expected != got:
            raise Mismatch("multiplicities differ", degree=m, expected=expected, got=got)
        rows.append(Comparison(m, expected, got))
    return rows


@dataclass
class ExtDims:
    base: List[int]
    deformed: List[int]
    partial_sums_hold: bool


def hom_to_simples(res: Resolution, target: List[str], N: int) -> List[int]:
    """dim Hom(term_n, S) for n = 0..N; equals dim Ext^n for a minimal resolution."""
    return [sum(target.count(v) for v in res.terms[n].vertices) for n in range(N + 1)]


def ext_dims_deformed(res_deformed: Resolution, res_base: Resolution, target: List[str], N: int) -> ExtDims:
    """dim Ext^n over A_f and over A; checks deformed_n = Σ_{k≤n} base_k."""
    base, deformed = hom_to_simples(res_base, target, N), hom_to_simples(res_deformed, target, N)
    holds = all(deformed[n] == sum(base[: n + 1]) for n in range(N + 1))
    return ExtDims(base, deformed, holds)
