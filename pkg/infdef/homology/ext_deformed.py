"""Yoneda products on Ext*_{A_f}(S, S) for S the sum of all simples.

A class of degree n is a tuple of components (g_0, ..., g_n), g_k a class in
Ext^k_A(S, S), read as the polynomial Σ g_k x^{n-k}. Products are computed
three ways: the closed representatives through base products, the
structured lifting family, and a generic lifting over A_f.
"""
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Dict, List, Optional, Tuple

from sympy.polys.matrices import DomainMatrix

from ..core import linalg
from ..core.errors import DegreeMismatch, EquationFailed, NotALinearRepresentative, StarNotCertified
from ..core.linalg import Vector
from .deformed_resolution import DeformedComplex
from .engine import ExtAlgebra, lift_chain_map

logger = logging.getLogger(__name__)


@lru_cache(maxsize=None)
def a_coeff(k: int, r: int, i: int) -> int:
    """a^k_{r,i}; zero outside 0 <= i <= r."""
    if r < 0 or i < 0 or i > r or k < 0:
        return 0
    if k == 0:
        return 1 if i == 0 else 0
    sign = 1 if r % 2 == 0 else -1
    return sign * a_coeff(k - 1, r, i) + a_coeff(k, r - 1, i) - sign * a_coeff(k, r - 1, i - 1)


@dataclass(frozen=True)
class DeformedExtClass:
    degree: int
    components: Tuple[Tuple[Tuple[int, object], ...], ...]

    @classmethod
    def of(cls, degree: int, components: List[Vector]) -> "DeformedExtClass":
        if len(components) != degree + 1:
            raise DegreeMismatch(f"a degree-{degree} class has {degree + 1} components, got {len(components)}")
        return cls(degree, tuple(tuple(sorted((b, c) for b, c in comp.items() if c)) for comp in components))

    def component(self, k: int) -> Vector:
        if 0 <= k <= self.degree:
            return dict(self.components[k])
        return {}

    def is_zero(self) -> bool:
        return not any(self.components)


@dataclass
class LiftingFamily:
    """γ_t^{s,m}, β_t^{s,m} extracted from a generic lifting, and the assembled φ, ϕ."""

    cls: DeformedExtClass
    depth: int
    gamma: Dict[Tuple[int, int, int], DomainMatrix] = field(default_factory=dict)
    beta: Dict[Tuple[int, int, int], DomainMatrix] = field(default_factory=dict)
    checked: List[str] = field(default_factory=list)


@dataclass
class Correction:
    i: int
    s: int
    component: int
    vector: Vector


class DeformedExtAlgebra:
    """Ext*_{A_f}(S, S) over the explicit deformed complex of S."""

    def __init__(self, complex_: DeformedComplex, vertices: List[str]):
        star = complex_.star
        if not star.holds:
            raise StarNotCertified("condition (∗) does not hold for the simple sum", witness=star.witness)
        self.complex = complex_
        self.star = star
        self.vertices = list(vertices)
        self.base = ExtAlgebra(star.resolution, vertices)
        self._generic: Optional[ExtAlgebra] = None
        self._flat: Dict[int, Dict[Tuple[int, int], int]] = {}
        self._chains: Dict[Tuple[int, int], DomainMatrix] = {}
        self._reps: Dict[Tuple[int, int, int, int, int], Vector] = {}
        self._families: Dict[Tuple[DeformedExtClass, int], LiftingFamily] = {}

    @property
    def A(self):
        return self.star.algebra

    @property
    def K(self):
        return self.A.K

    @property
    def degree(self) -> int:
        return self.complex.degree - 1

    # bases

    def dim(self, n: int) -> int:
        return sum(self.base.dim(k) for k in range(n + 1))

    def basis(self, n: int) -> List[Tuple[int, int]]:
        """(component k, base index b) in component order."""
        return [(k, b) for k in range(n + 1) for b in range(self.base.dim(k))]

    def basis_class(self, n: int, k: int, b: int) -> DeformedExtClass:
        comps: List[Vector] = [dict() for _ in range(n + 1)]
        comps[k] = {b: self.K.one}
        return DeformedExtClass.of(n, comps)

    def unit(self) -> DeformedExtClass:
        return DeformedExtClass.of(0, [self.base.unit()])

    def x_class(self) -> DeformedExtClass:
        """The polynomial variable: degree 1 with g_0 the identity and g_1 = 0."""
        return DeformedExtClass.of(1, [self.base.unit(), {}])

    def _check_degree(self, total: int) -> None:
        if total > self.degree:
            raise DegreeMismatch(f"degree {total} is beyond the computed range 0..{self.degree}")

    # flat coordinates over the generic Hom(term_n, S) basis

    @property
    def generic(self) -> ExtAlgebra:
        if self._generic is None:
            self._generic = ExtAlgebra(self.complex.resolution, self.vertices)
        return self._generic

    def _flat_index(self, n: int) -> Dict[Tuple[int, int], int]:
        """(component k, base index b) -> index in the generic basis of degree n."""
        if n not in self._flat:
            blocks = self.complex.blocks(n)
            generic_index = {kj: p for p, kj in enumerate(self.generic.basis(n))}
            out = {}
            for k in range(n + 1):
                for b, (slot, j) in enumerate(self.base.basis(k)):
                    glob = blocks.index((k, slot))
                    out[k, b] = generic_index[glob, j]
            self._flat[n] = out
        return self._flat[n]

    def flatten(self, g: DeformedExtClass) -> Vector:
        index = self._flat_index(g.degree)
        return {index[k, b]: c for k in range(g.degree + 1) for b, c in g.component(k).items()}

    def unflatten(self, n: int, vec: Vector) -> DeformedExtClass:
        back = {p: kb for kb, p in self._flat_index(n).items()}
        comps: List[Vector] = [dict() for _ in range(n + 1)]
        for p, c in vec.items():
            k, b = back[p]
            comps[k][b] = c
        return DeformedExtClass.of(n, comps)

    # closed representatives

    def _chain(self, l: int, s: int) -> DomainMatrix:
        """α_{l+1} ⋯ α_s : Q_s -> Q_l (identity when l = s)."""
        key = (l, s)
        if key not in self._chains:
            res = self.star.resolution
            if l == s:
                self._chains[key] = linalg.identity(res.terms[s].dim, self.K)
            else:
                self._chains[key] = self.star.alphas[l + 1] * self._chain(l + 1, s)
        return self._chains[key]

    def alpha_composite(self, l: int, vec: Vector, s: int) -> Vector:
        """Base coordinates of g α_{l+1} ⋯ α_s in Ext^s_A(S, S) for g in Ext^l_A(S, S)."""
        self._check_degree(s)
        return self.base.coordinates(s, self.base.class_map(l, vec) * self._chain(l, s))

    def _term(self, n: int, comps: Dict[int, Vector], l: int, s: int) -> Optional[DomainMatrix]:
        if l < 0 or l > n or not comps.get(l):
            return None
        return self.base.class_map(l, comps[l]) * self._chain(l, s)

    def representative_map(self, g: DeformedExtClass, s: int, m: int) -> DomainMatrix:
        """δ_0 φ_0^{s,m} as a combination of g_l α_{l+1} ⋯ α_s."""
        n = g.degree
        comps = {k: g.component(k) for k in range(n + 1)}
        S = self.star.resolution.module
        acc = linalg.zeros(S.dim, self.star.resolution.terms[s].dim, self.K)

        def add(term, coeff):
            nonlocal acc
            if term is not None and coeff:
                acc = acc + linalg.scale(term, self.A.field(coeff))

        if s == n + m:
            exponent = m * (n + 1) + m * (m + 1) // 2
            add(self._term(n, comps, n, s), 1 if exponent % 2 == 0 else -1)
            return acc
        r = m // 2
        for k in range(r + 1):
            c = comb(r, k) * (1 if k % 2 == 0 else -1)
            if m % 2 == 0:
                add(self._term(n, comps, s - 2 * k, s), c)
            else:
                c = c if s % 2 == 0 else -c
                add(self._term(n, comps, s - 2 * k, s), c)
                add(self._term(n, comps, s - 2 * k - 1, s), -c)
        return acc

    def representative(self, g: DeformedExtClass, s: int, m: int) -> Vector:
        """Base coordinates of the representative in Ext^s_A(S, S), checked A-linear."""
        out: Vector = {}
        for k in range(g.degree + 1):
            for b, c in g.component(k).items():
                key = (g.degree, k, b, s, m)
                if key not in self._reps:
                    L = self.representative_map(self.basis_class(g.degree, k, b), s, m)
                    self._assert_linear(L, s, m)
                    self._reps[key] = self.base.coordinates(s, L)
                out = linalg.add_vectors(out, self._reps[key], c)
        return out

    def _assert_linear(self, L: DomainMatrix, s: int, m: int) -> None:
        res = self.star.resolution
        Q, S = res.terms[s], res.module
        for a in range(self.A.dim):
            if not linalg.equal(L * Q.action[a], S.action[a] * L):
                raise NotALinearRepresentative(
                    "representative is not A-linear", degree=s, depth=m, element=self.A.label(a)
                )

    # products

    def product(self, h: DeformedExtClass, g: DeformedExtClass, method: str = "formula") -> DeformedExtClass:
        if method == "formula":
            return self.yoneda_formula(h, g)
        if method == "structured":
            return self.yoneda_structured(h, g)
        if method == "generic":
            return self.yoneda_generic(h, g)
        raise ValueError(f"unknown product method {method!r}")

    def yoneda_formula(self, h: DeformedExtClass, g: DeformedExtClass) -> DeformedExtClass:
        """Σ_i Σ_s h_i ⋆ rep(ĝ, s, m−i) in component i + s."""
        m, n = h.degree, g.degree
        self._check_degree(n + m)
        comps: List[Vector] = [dict() for _ in range(n + m + 1)]
        for i in range(m + 1):
            hi = h.component(i)
            if not hi:
                continue
            for s in range(n + m - i + 1):
                rep = self.representative(g, s, m - i)
                if rep:
                    comps[i + s] = linalg.add_vectors(comps[i + s], self.base.multiply(i, hi, s, rep))
        return DeformedExtClass.of(n + m, comps)

    def corrections(self, h: DeformedExtClass, g: DeformedExtClass) -> List[Correction]:
        """Per (i, s): h_i ⋆ (rep(ĝ, s, m−i) − (−1)^{s(m−i)} g_s), the terms beyond the twisted product."""
        m, n = h.degree, g.degree
        self._check_degree(n + m)
        out = []
        for i in range(m + 1):
            hi = h.component(i)
            if not hi:
                continue
            for s in range(n + m - i + 1):
                rep = self.representative(g, s, m - i)
                sign = self.K.one if (s * (m - i)) % 2 == 0 else -self.K.one
                diff = linalg.add_vectors(rep, g.component(s), -sign)
                vec = self.base.multiply(i, hi, s, diff) if diff else {}
                if vec:
                    out.append(Correction(i, s, i + s, vec))
        return out

    def twisted_product(self, h: DeformedExtClass, g: DeformedExtClass) -> DeformedExtClass:
        """Σ (−1)^{s(m−i)} h_i ⋆ g_s x^{m+n−i−s}: the product of Ext_A(S,S) ⊗ k[x]."""
        m, n = h.degree, g.degree
        self._check_degree(n + m)
        comps: List[Vector] = [dict() for _ in range(n + m + 1)]
        for i in range(m + 1):
            for s in range(n + 1):
                hi, gs = h.component(i), g.component(s)
                if hi and gs:
                    sign = self.K.one if (s * (m - i)) % 2 == 0 else -self.K.one
                    comps[i + s] = linalg.add_vectors(comps[i + s], self.base.multiply(i, hi, s, gs), sign)
        return DeformedExtClass.of(n + m, comps)

    def yoneda_generic(self, h: DeformedExtClass, g: DeformedExtClass) -> DeformedExtClass:
        """Lift ĝ over the A_f-resolution, compose with ĥ, read back the components."""
        self._check_degree(h.degree + g.degree)
        vec = self.generic.multiply(h.degree, self.flatten(h), g.degree, self.flatten(g))
        return self.unflatten(h.degree + g.degree, vec)

    # structured liftings

    def lifting_family(self, g: DeformedExtClass, depth: int) -> LiftingFamily:
        """Generic lifting of ĝ split into γ and β blocks, checked against the lifting equations."""
        key = (g, depth)
        if key in self._families:
            return self._families[key]
        cx = self.complex
        n = g.degree
        self._check_degree(n + depth)
        res = cx.resolution
        ghat = self.generic.class_map(n, self.flatten(g))
        lifts = lift_chain_map(ghat, res, res, n, depth)
        fam = LiftingFamily(g, depth)
        for mm, lift in enumerate(lifts):
            real = cx.to_realized(lift, n + mm, mm)
            if not linalg.is_zero(cx.part(real, n + mm, mm, "upper")):
                raise EquationFailed("lifting has a nonzero m1 -> m0 block", label="shape", depth=mm)
            u0 = cx.part(real, n + mm, mm, "u0")
            u1 = cx.part(real, n + mm, mm, "u1")
            u2 = cx.part(real, n + mm, mm, "u2")
            if not linalg.equal(u0, u2):
                raise EquationFailed("diagonal blocks of the lifting differ", label="shape", depth=mm)
            for t in range(mm + 1):
                for s in range(n + mm + 1):
                    fam.gamma[t, s, mm] = cx.block(u0, n + mm, s, mm, t)
                    fam.beta[t, s, mm] = cx.block(u1, n + mm, s, mm, t)
        self._verify_family(fam)
        self._families[key] = fam
        return fam

    def _zero(self, t: int, s: int) -> DomainMatrix:
        terms = self.star.resolution.terms
        return linalg.zeros(terms[t].dim, terms[s].dim, self.K)

    def _get(self, table, t: int, s: int, mm: int) -> DomainMatrix:
        value = table.get((t, s, mm))
        if value is not None:
            return value
        return self._zero(t, s) if t >= 0 and s >= 0 else None

    def _verify_family(self, fam: LiftingFamily) -> None:
        n, m = fam.cls.degree, fam.depth
        res = self.star.resolution
        d = res.differentials
        alphas = self.star.alphas
        A = self.A
        one = self.K.one

        def sgn(e: int):
            return one if e % 2 == 0 else -one

        def G(t, s, mm):
            return self._get(fam.gamma, t, s, mm)

        def Bt(t, s, mm):
            return self._get(fam.beta, t, s, mm)

        def fail(label, **where):
            raise EquationFailed(f"lifting equation ({label}) fails", label=label, **where)

        for mm in range(m + 1):
            for t in range(mm + 1):
                Ft = self.star.f_actions(t)
                for s in range(n + mm + 1):
                    Fs = self.star.f_actions(s)
                    g_, b_ = G(t, s, mm), Bt(t, s, mm)
                    for a in range(A.dim):
                        lhs = b_ * res.terms[s].action[a] - res.terms[t].action[a] * b_
                        rhs = Ft[a] * g_ - g_ * Fs[a]
                        if not linalg.equal(lhs, rhs):
                            fail("a", t=t, s=s, m=mm, element=A.label(a))
        for s in range(n + 1):
            if not linalg.equal(d[0] * G(0, s, 0), self.base.class_map(s, fam.cls.component(s))):
                fail("b", s=s)
        for mm in range(1, m + 1):
            for t in range(1, mm + 1):
                if not linalg.is_zero(d[t] * G(t, 0, mm)):
                    fail("c", t=t, m=mm)
                for s in range(1, n + mm + 1):
                    if not linalg.equal(d[t] * G(t, s, mm), G(t - 1, s - 1, mm - 1) * d[s]):
                        fail("d", t=t, s=s, m=mm)
                for s in range(0, n + mm + 1):
                    lhs = linalg.scale(G(t - 1, s, mm), sgn(t)) + linalg.scale(G(t - 1, s, mm - 1), sgn(s))
                    rhs = d[t] * Bt(t, s, mm) + linalg.scale(alphas[t] * G(t, s, mm), sgn(t - 1))
                    if s > 0:
                        rhs = rhs - Bt(t - 1, s - 1, mm - 1) * d[s]
                        rhs = rhs + linalg.scale(G(t - 1, s - 1, mm - 1) * alphas[s], sgn(s))
                    if not linalg.equal(lhs, rhs):
                        fail("e" if s == 0 else ("g" if s == n + mm else "f"), t=t, s=s, m=mm)
        fam.checked = ["a", "b", "c", "d", "e", "f", "g"]

    def phi(self, fam: LiftingFamily, t: int, s: int, mm: int, which: str = "gamma") -> DomainMatrix:
        """φ_t^{s,m} (which='gamma') or ϕ_t^{s,m} (which='beta')."""
        table = fam.gamma if which == "gamma" else fam.beta
        if s < t:
            return self._zero(t, s)
        if mm <= s:
            return self._get(table, t, s, mm)
        r = s - t
        acc = self._zero(t, s)
        for i in range(r + 1):
            c = a_coeff(mm - s, r, i)
            if c:
                acc = acc + linalg.scale(self._get(table, t, s, s - i), self.A.field(c))
        return acc

    def structured_lifting(self, g: DeformedExtClass, depth: int) -> List[DomainMatrix]:
        """Realized maps (φ_m, ϕ_m, φ_m) for m = 0..depth, checked as a lifting of ĝ."""
        fam = self.lifting_family(g, depth)
        cx = self.complex
        n = g.degree
        K = self.K
        maps = []
        for mm in range(depth + 1):
            src, tgt = n + mm, mm
            ns, nt = cx.base_dims[src], cx.base_dims[tgt]
            blocks = []
            for t in range(mm + 1):
                for s in range(src + 1):
                    r0, c0 = cx.offsets[tgt][t], cx.offsets[src][s]
                    Phi = self.phi(fam, t, s, mm)
                    blocks.append((r0, c0, Phi))
                    blocks.append((nt + r0, ns + c0, Phi))
                    blocks.append((nt + r0, c0, self.phi(fam, t, s, mm, "beta")))
            maps.append(linalg.assemble((2 * nt, 2 * ns), blocks, K))
        ghat = cx.to_realized(self.generic.class_map(n, self.flatten(g)), n, None)
        if not linalg.equal(cx.realized[0] * maps[0], ghat):
            raise EquationFailed("assembled lifting does not cover ĝ", label="phi", depth=0)
        for mm in range(1, depth + 1):
            if not linalg.equal(cx.realized[mm] * maps[mm], maps[mm - 1] * cx.realized[n + mm]):
                raise EquationFailed("assembled lifting is not a chain map", label="phi", depth=mm)
        for mm in range(depth + 1):
            self._assert_af_linear(maps[mm], n + mm, mm)
        return maps

    def _assert_af_linear(self, real: DomainMatrix, src: int, tgt: int) -> None:
        cx = self.complex
        res = cx.resolution
        proj = cx.to_projective(real, src, tgt)
        for a in range(cx.algebra.dim):
            if not linalg.equal(proj * res.terms[src].action[a], res.terms[tgt].action[a] * proj):
                raise EquationFailed("assembled lifting is not A_f-linear", label="phi", depth=tgt)

    def representative_oracle(self, g: DeformedExtClass, depth: int) -> bool:
        """δ_0 φ_0^{s,m} from the structured lifting equals the closed representative."""
        fam = self.lifting_family(g, depth)
        d0 = self.star.resolution.differentials[0]
        for mm in range(depth + 1):
            for s in range(g.degree + mm + 1):
                if not linalg.equal(d0 * self.phi(fam, 0, s, mm), self.representative_map(g, s, mm)):
                    return False
        return True

    def yoneda_structured(self, h: DeformedExtClass, g: DeformedExtClass) -> DeformedExtClass:
        """ĥ φ_m: component j = Σ_{i≤j} h_i φ_i^{j,m}."""
        m, n = h.degree, g.degree
        self._check_degree(n + m)
        self.structured_lifting(g, m)
        fam = self.lifting_family(g, m)
        comps: List[Vector] = []
        for j in range(n + m + 1):
            acc: Vector = {}
            for i in range(min(j, m) + 1):
                hi = h.component(i)
                if hi:
                    composite = self.base.class_map(i, hi) * self.phi(fam, i, j, m)
                    acc = linalg.add_vectors(acc, self.base.coordinates(j, composite))
            comps.append(acc)
        return DeformedExtClass.of(n + m, comps)

    # tables

    def table(self, N: int, method: str = "formula") -> Dict[Tuple[Tuple[int, int, int], Tuple[int, int, int]], DeformedExtClass]:
        """Products of basis classes ((m, k, a), (n, l, b)) with n + m <= N."""
        self._check_degree(N)
        out = {}
        for m in range(N + 1):
            for n in range(N + 1 - m):
                for k, a in self.basis(m):
                    h = self.basis_class(m, k, a)
                    for l, b in self.basis(n):
                        out[(m, k, a), (n, l, b)] = self.product(h, self.basis_class(n, l, b), method)
        return out

    def _mul(self, table, h: DeformedExtClass, g: DeformedExtClass) -> DeformedExtClass:
        comps: List[Vector] = [dict() for _ in range(h.degree + g.degree + 1)]
        for k in range(h.degree + 1):
            for a, ca in h.component(k).items():
                for l in range(g.degree + 1):
                    for b, cb in g.component(l).items():
                        prod = table[(h.degree, k, a), (g.degree, l, b)]
                        for c in range(len(comps)):
                            comps[c] = linalg.add_vectors(comps[c], prod.component(c), ca * cb)
        return DeformedExtClass.of(h.degree + g.degree, comps)

    def associativity_failures(self, table, N: int) -> List[Tuple]:
        failures = []
        for p in range(N + 1):
            for q in range(N + 1 - p):
                for r in range(N + 1 - p - q):
                    for x in self.basis(p):
                        X = self.basis_class(p, *x)
                        for y in self.basis(q):
                            XY = table[(p, *x), (q, *y)]
                            for z in self.basis(r):
                                Z = self.basis_class(r, *z)
                                left = self._mul(table, XY, Z)
                                right = self._mul(table, X, table[(q, *y), (r, *z)])
                                if left != right:
                                    failures.append(((p, *x), (q, *y), (r, *z)))
        return failures


@dataclass
class CorollaryReport:
    radical_images: Dict[int, bool]
    hypothesis: bool
    compared: int
    mismatches: List[Tuple]
    match: Optional[bool]


def corollary_check(ext: DeformedExtAlgebra, N: int) -> CorollaryReport:
    """If Im α_i ⊆ rad Q_{i−1} for all i, compare every product with the twisted tensor product."""
    images = {i: ok for i, ok in ext.star.radical_images().items() if i <= N}
    hypothesis = all(images.values())
    if not hypothesis:
        return CorollaryReport(images, False, 0, [], None)
    compared, mismatches = 0, []
    for m in range(N + 1):
        for n in range(N + 1 - m):
            for k, a in ext.basis(m):
                h = ext.basis_class(m, k, a)
                for l, b in ext.basis(n):
                    g = ext.basis_class(n, l, b)
                    compared += 1
                    if ext.yoneda_formula(h, g) != ext.twisted_product(h, g):
                        mismatches.append(((m, k, a), (n, l, b)))
    logger.info("corollary check: %d products compared, %d mismatches", compared, len(mismatches))
    return CorollaryReport(images, True, compared, mismatches, not mismatches)


@dataclass
class ExtTable:
    degree: int
    dims: List[int]
    products: Dict
    associative: bool
    failures: List[Tuple]


def ext_table(ext: DeformedExtAlgebra, N: int, method: str = "formula") -> ExtTable:
    table = ext.table(N, method)
    failures = ext.associativity_failures(table, N)
    return ExtTable(N, [ext.dim(n) for n in range(N + 1)], table, not failures, failures)
