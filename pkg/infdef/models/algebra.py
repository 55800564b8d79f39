"""Quotients A = kQ/I of path algebras with a certified normal-form basis."""
import logging
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple

from ..core import linalg
from ..core.errors import (
    AlgebraMismatch,
    FinitenessNotCertified,
    NonParallelRelation,
    SessionError,
)
from ..core.field import Field
from ..core.linalg import Vector
from .expression import PathCombination, format_terms, parse_combination
from .quiver import Path, Quiver
from .structured import StructuredAlgebra

logger = logging.getLogger(__name__)


class Rule:
    """Rewriting rule lead -> tail, with tail < lead in length-then-lex order."""

    __slots__ = ("lead", "tail")

    def __init__(self, lead: Path, tail: PathCombination):
        self.lead = lead
        self.tail = tail

    def __repr__(self) -> str:
        return f"Rule({self.lead} -> {dict((str(p), c) for p, c in self.tail.items())})"


def _splice(whole: Path, prefix: Tuple[str, ...], middle: Path, suffix: Tuple[str, ...]) -> Path:
    arrows = prefix + middle.arrows + suffix
    if not arrows:
        return Path(whole.source, whole.source)
    return Path(whole.source, whole.target, arrows)


def _occurrence(word: Tuple[str, ...], sub: Tuple[str, ...]) -> int:
    n, k = len(word), len(sub)
    for i in range(n - k + 1):
        if word[i:i + k] == sub:
            return i
    return -1


class RewritingSystem:
    """Overlap completion on paths, truncated at a word length."""

    def __init__(self, Q: Quiver, K: Field, generators: Sequence[PathCombination], max_word: int):
        self.Q = Q
        self.K = K
        self.max_word = max_word
        self.rules: List[Rule] = []
        self._complete(generators)

    def _key(self, p: Path):
        return self.Q.sort_key(p)

    def find(self, p: Path) -> Optional[Tuple[Rule, int]]:
        for rule in self.rules:
            pos = _occurrence(p.arrows, rule.lead.arrows)
            if pos >= 0:
                return rule, pos
        return None

    def reduce(self, poly: PathCombination) -> PathCombination:
        poly = {p: c for p, c in poly.items() if c}
        while True:
            hit = None
            for p in sorted(poly, key=self._key, reverse=True):
                hit = self.find(p)
                if hit:
                    break
            if not hit:
                return poly
            rule, pos = hit
            c = poly.pop(p)
            prefix = p.arrows[:pos]
            suffix = p.arrows[pos + rule.lead.length:]
            for tp, tc in rule.tail.items():
                q = _splice(p, prefix, tp, suffix)
                total = poly.get(q, self.K.zero) + c * tc
                if total:
                    poly[q] = total
                else:
                    poly.pop(q, None)

    def _make_rule(self, poly: PathCombination) -> Rule:
        lead = max(poly, key=self._key)
        inv = self.K.one / poly[lead]
        tail = {p: -c * inv for p, c in poly.items() if p != lead}
        return Rule(lead, tail)

    @staticmethod
    def _as_poly(rule: Rule, K: Field) -> PathCombination:
        poly = {rule.lead: K.one}
        for p, c in rule.tail.items():
            poly[p] = poly.get(p, K.zero) - c
        return {p: c for p, c in poly.items() if c}

    def _shift(self, poly: PathCombination, whole: Path, prefix, suffix) -> PathCombination:
        out: PathCombination = {}
        for p, c in poly.items():
            q = _splice(whole, prefix, p, suffix)
            out[q] = out.get(q, self.K.zero) + c
        return {p: c for p, c in out.items() if c}

    def _overlaps(self, a: Rule, b: Rule) -> List[PathCombination]:
        """S-polynomials for suffixes of a.lead equal to prefixes of b.lead."""
        out = []
        la, lb = a.lead.arrows, b.lead.arrows
        for k in range(1, min(len(la), len(lb))):
            if la[-k:] != lb[:k]:
                continue
            if len(la) + len(lb) - k > self.max_word:
                continue
            word = Path(a.lead.source, b.lead.target, la + lb[k:])
            left = self._shift(a.tail, word, (), lb[k:])
            right = self._shift(b.tail, word, la[:-k], ())
            s = dict(left)
            for p, c in right.items():
                s[p] = s.get(p, self.K.zero) - c
            out.append({p: c for p, c in s.items() if c})
        return out

    def _complete(self, generators: Sequence[PathCombination]) -> None:
        queue = [dict(g) for g in generators]
        rounds = 0
        while queue:
            g = self.reduce(queue.pop(0))
            if not g:
                continue
            rounds += 1
            new = self._make_rule(g)
            kept = []
            for r in self.rules:
                if _occurrence(r.lead.arrows, new.lead.arrows) >= 0:
                    queue.append(self._as_poly(r, self.K))
                else:
                    kept.append(r)
            self.rules = kept + [new]
            for r in self.rules:
                queue.extend(self._overlaps(r, new))
                if r is not new:
                    queue.extend(self._overlaps(new, r))
        for r in self.rules:
            r.tail = self.reduce(r.tail)
        self.rules.sort(key=lambda r: self._key(r.lead))
        logger.debug("rewriting system complete: %d rules after %d insertions", len(self.rules), rounds)

    def certify(self) -> None:
        """Every overlap of the final rules within the word bound resolves to zero."""
        for a in self.rules:
            for b in self.rules:
                for s in self._overlaps(a, b):
                    rest = self.reduce(s)
                    if rest:
                        raise FinitenessNotCertified(
                            "overlap of the completed rules does not resolve",
                            rules=[str(a.lead), str(b.lead)],
                            residue=format_terms(((p.label(), c) for p, c in sorted(rest.items(), key=lambda pc: self._key(pc[0]))), self.K),
                        )


class QuotientAlgebra:
    """A = kQ/I, I generated by combinations of parallel paths of length >= 2."""

    def __init__(self, Q: Quiver, K: Field, relations: Sequence[PathCombination], length_bound: Optional[int] = None):
        self.quiver = Q
        self.field = K
        self.relations = [dict(r) for r in relations if r]
        for rel in self.relations:
            _check_relation(rel)
        if length_bound is None:
            longest = max((p.length for rel in self.relations for p in rel), default=0)
            length_bound = 2 * longest + 2
        if length_bound < 1:
            raise SessionError("length bound must be positive")
        self.length_bound = length_bound
        self.system = RewritingSystem(Q, K, self.relations, 2 * length_bound)
        self.system.certify()
        self.basis = self._normal_words()
        self.index: Dict[Path, int] = {p: i for i, p in enumerate(self.basis)}
        self.table = self._structure_constants()
        logger.info("built %s: dim %d, %d rewriting rules", self.name, self.dim, len(self.system.rules))

    name = "A"

    def _normal_words(self) -> List[Path]:
        Q = self.quiver
        layer = [Path(v, v) for v in Q.vertices]
        words = list(layer)
        for length in range(1, self.length_bound + 1):
            nxt = []
            for p in layer:
                for a in Q.arrows:
                    if a.source != p.target:
                        continue
                    q = Path(p.source, a.target, p.arrows + (a.name,))
                    if self.system.find(q) is None:
                        nxt.append(q)
            nxt.sort(key=Q.sort_key)
            if length == self.length_bound:
                if nxt:
                    raise FinitenessNotCertified(
                        f"{len(nxt)} path(s) of length {length} are irreducible; raise the length bound",
                        length_bound=self.length_bound,
                        witness=str(nxt[0]),
                    )
                break
            words.extend(nxt)
            layer = nxt
        return words

    def _structure_constants(self) -> Dict[Tuple[int, int], Vector]:
        table = {}
        for i, p in enumerate(self.basis):
            for j, q in enumerate(self.basis):
                if p.target != q.source:
                    continue
                if p.is_stationary:
                    table[i, j] = {j: self.field.one}
                    continue
                if q.is_stationary:
                    table[i, j] = {i: self.field.one}
                    continue
                prod = self.system.reduce({Path(p.source, q.target, p.arrows + q.arrows): self.field.one})
                vec = {self.index[r]: c for r, c in prod.items()}
                if vec:
                    table[i, j] = vec
        return table

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def K(self):
        return self.field.domain

    def __repr__(self) -> str:
        return f"QuotientAlgebra(dim={self.dim}, L={self.length_bound})"

    # elements

    def element(self, data) -> "AlgebraElement":
        """Element from an expression, a Path or a combination of paths."""
        if isinstance(data, str):
            data = parse_combination(data, self.quiver, self.field)
        elif isinstance(data, Path):
            data = {data: self.field.one}
        return self.normal_form(data)

    def normal_form(self, comb: PathCombination) -> "AlgebraElement":
        reduced = self.system.reduce(comb)
        return AlgebraElement(self, {self.index[p]: c for p, c in reduced.items()})

    def from_vector(self, vec: Vector) -> "AlgebraElement":
        return AlgebraElement(self, vec)

    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, {})

    def idempotent(self, v: str) -> "AlgebraElement":
        return AlgebraElement(self, {self.index[self.quiver.stationary(v)]: self.field.one})

    def one(self) -> "AlgebraElement":
        return AlgebraElement(self, {self.index[Path(v, v)]: self.field.one for v in self.quiver.vertices})

    def multiply(self, a: "AlgebraElement", b: "AlgebraElement") -> "AlgebraElement":
        if a.algebra is not self or b.algebra is not self:
            raise AlgebraMismatch("elements belong to different algebras")
        return AlgebraElement(self, self.structured.multiply(a.vector, b.vector))

    def hom_basis(self, i: str, j: str) -> List["AlgebraElement"]:
        """Basis of e_i A e_j; b stands for x -> xb from Ae_i to Ae_j."""
        self.quiver.vertex_index(i)
        self.quiver.vertex_index(j)
        return [
            AlgebraElement(self, {k: self.field.one})
            for k, p in enumerate(self.basis)
            if p.source == i and p.target == j
        ]

    def label(self, k: int) -> str:
        return self.basis[k].label()

    def format(self, vec: Vector) -> str:
        return format_terms(((self.label(k), vec[k]) for k in sorted(vec)), self.field)

    # structured view

    @cached_property
    def structured(self) -> StructuredAlgebra:
        return StructuredAlgebra(
            self.field,
            [p.label() for p in self.basis],
            self.table,
            [p.source for p in self.basis],
            [p.target for p in self.basis],
            self.quiver.vertices,
            {v: self.index[Path(v, v)] for v in self.quiver.vertices},
            [k for k, p in enumerate(self.basis) if not p.is_stationary],
            name=self.name,
        )

    def as_structured(self) -> StructuredAlgebra:
        return self.structured


def _check_relation(rel: PathCombination) -> None:
    ends = {(p.source, p.target) for p in rel}
    if len(ends) > 1:
        raise NonParallelRelation(
            "relation mixes paths with different endpoints",
            relation=" + ".join(sorted(str(p) for p in rel)),
        )
    short = [str(p) for p in rel if p.length < 2]
    if short:
        raise SessionError(
            f"relation term {short[0]} has length < 2; relations must lie in the square of the arrow ideal",
            term=short[0],
        )


def build_quotient(Q: Quiver, K: Field, relations: Sequence[PathCombination], L: Optional[int] = None) -> QuotientAlgebra:
    return QuotientAlgebra(Q, K, relations, L)


class AlgebraElement:
    """Element of a QuotientAlgebra as sparse coordinates over its basis."""

    __slots__ = ("algebra", "vector")

    def __init__(self, algebra: QuotientAlgebra, vector: Vector):
        self.algebra = algebra
        self.vector = {k: c for k, c in vector.items() if c}

    @property
    def terms(self) -> List[Tuple[Path, object]]:
        return [(self.algebra.basis[k], self.vector[k]) for k in sorted(self.vector)]

    def _check(self, other: "AlgebraElement") -> None:
        if not isinstance(other, AlgebraElement) or other.algebra is not self.algebra:
            raise AlgebraMismatch("elements belong to different algebras")

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        return AlgebraElement(self.algebra, linalg.add_vectors(self.vector, other.vector))

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        return AlgebraElement(self.algebra, linalg.add_vectors(self.vector, other.vector, -self.algebra.field.one))

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.algebra, linalg.scale_vector(self.vector, -self.algebra.field.one))

    def __mul__(self, other) -> "AlgebraElement":
        if isinstance(other, AlgebraElement):
            return self.algebra.multiply(self, other)
        return AlgebraElement(self.algebra, linalg.scale_vector(self.vector, self.algebra.field(other)))

    def __rmul__(self, scalar) -> "AlgebraElement":
        return AlgebraElement(self.algebra, linalg.scale_vector(self.vector, self.algebra.field(scalar)))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, AlgebraElement):
            return other.algebra is self.algebra and other.vector == self.vector
        if other == 0:
            return not self.vector
        return NotImplemented

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.vector.items())))

    def __bool__(self) -> bool:
        return bool(self.vector)

    def __str__(self) -> str:
        return self.algebra.format(self.vector)

    def __repr__(self) -> str:
        return f"AlgebraElement({self})"
