"""One parsed session and the domain objects built from it, built lazily and cached."""
import logging
from functools import cached_property
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

from ..core.config import settings
from ..core.errors import DegreeMismatch, SessionError
from ..core.field import Field
from ..homology.deformation import DeformedAlgebra, build_deformed_algebra
from ..homology.deformed_resolution import DeformedComplex, StarData, build_deformed_complex, prepare_star
from ..homology.engine import Resolution, direct_sum_resolution, minimal_resolution, simple_resolution
from ..homology.ext_deformed import DeformedExtAlgebra
from ..homology.hochschild import Cochain2, PatternRule
from ..models.algebra import QuotientAlgebra
from ..models.expression import parse_combination
from ..models.module import Representation
from ..models.quiver import Arrow, Quiver
from ..schemas.session import FieldKind, SessionFile, load_session, parse_session

logger = logging.getLogger(__name__)

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


class SessionContext:
    def __init__(self, session: SessionFile, degree: Optional[int] = None, name: str = "session"):
        self.session = session
        self.name = name
        self._degree = degree
        self._base: Dict[Tuple[str, int], Resolution] = {}
        self._deformed: Dict[Tuple[str, int], Resolution] = {}
        self._stars: Dict[Tuple[Optional[str], int], StarData] = {}
        self._complexes: Dict[Tuple[Optional[str], int], DeformedComplex] = {}
        self._ext: Dict[int, DeformedExtAlgebra] = {}

    @classmethod
    def from_path(cls, path: Union[str, Path], degree: Optional[int] = None) -> "SessionContext":
        return cls(load_session(path), degree, name=Path(path).stem)

    @classmethod
    def from_text(cls, text: str, degree: Optional[int] = None) -> "SessionContext":
        return cls(parse_session(text), degree)

    @classmethod
    def fixture(cls, name: str, degree: Optional[int] = None) -> "SessionContext":
        path = FIXTURES / f"{name}.toml"
        if not path.exists():
            raise SessionError(f"unknown fixture {name!r}", fixture=name)
        return cls.from_path(path, degree)

    @property
    def degree(self) -> int:
        """CLI option, then the session's [options], then the configured default."""
        if self._degree is not None:
            return self._degree
        if self.session.options.degree is not None:
            return self.session.options.degree
        return settings.default_degree

    # algebra side

    @cached_property
    def field(self) -> Field:
        section = self.session.field
        return Field("prime", section.p) if section.kind == FieldKind.PRIME else Field("rational")

    @cached_property
    def quiver(self) -> Quiver:
        q = self.session.quiver
        return Quiver(tuple(q.vertices), tuple(Arrow(a.name, a.source, a.target) for a in q.arrows))

    @cached_property
    def algebra(self) -> QuotientAlgebra:
        relations = [parse_combination(r, self.quiver, self.field) for r in self.session.algebra.relations]
        return QuotientAlgebra(self.quiver, self.field, relations, self.session.algebra.length_bound)

    @cached_property
    def cochain(self) -> Cochain2:
        A = self.algebra
        rules = []
        for r in self.session.cocycle.rules:
            pattern = parse_combination(r.pattern, self.quiver, self.field)
            if len(pattern) != 1 or next(iter(pattern.values())) != self.field.one:
                raise SessionError(f"pattern {r.pattern!r} must be a single path", pattern=r.pattern)
            rules.append(PatternRule(next(iter(pattern)), parse_combination(r.value, self.quiver, self.field)))
        entries = {}
        for e in self.session.cocycle.entries:
            key = (self._basis_index(e.left), self._basis_index(e.right))
            if key in entries:
                raise SessionError(f"duplicate cocycle entry ({e.left}, {e.right})", left=e.left, right=e.right)
            entries[key] = A.element(e.value)
        return Cochain2(A, rules, entries)

    def _basis_index(self, text: str) -> int:
        A = self.algebra
        comb = parse_combination(text, self.quiver, self.field)
        if len(comb) != 1:
            raise SessionError(f"cocycle entry argument {text!r} must be a single basis path", argument=text)
        path, c = next(iter(comb.items()))
        if c != self.field.one or path not in A.index:
            raise SessionError(f"cocycle entry argument {text!r} is not a basis path of A", argument=text)
        return A.index[path]

    @cached_property
    def deformed(self) -> DeformedAlgebra:
        return build_deformed_algebra(self.algebra, self.cochain)

    def _vertex(self, v: Optional[str]) -> Optional[str]:
        if v is not None:
            self.quiver.vertex_index(v)
        return v

    # resolutions

    def base_resolution(self, v: Optional[str], N: int) -> Resolution:
        """Resolution over A of S_v, or of the sum of all simples when v is None."""
        v = self._vertex(v)
        key = (v or "", N)
        if key not in self._base:
            if v is None:
                self._base[key] = direct_sum_resolution([self.base_resolution(w, N) for w in self.quiver.vertices])
            else:
                self._base[key] = simple_resolution(self.algebra.structured, v, N)
        return self._base[key]

    def deformed_resolution(self, v: Optional[str], N: int) -> Resolution:
        """Generic-engine resolution over A_f of the simple (0, S_v) or of the sum."""
        v = self._vertex(v)
        key = (v or "", N)
        if key not in self._deformed:
            Af = self.deformed
            vertices = [v] if v is not None else list(self.quiver.vertices)
            S = Representation.semisimple(Af, vertices, name=f"S_{v}" if v else "S")
            res = minimal_resolution(S, N)
            res.sources = None
            self._deformed[key] = res
        return self._deformed[key]

    def star(self, v: Optional[str], N: int) -> StarData:
        """(∗) data over a base resolution reaching N + 1 (at least 2)."""
        key = (self._vertex(v), N)
        if key not in self._stars:
            res = self.base_resolution(v, max(N + 1, 2))
            self._stars[key] = prepare_star(res, self.algebra, self.cochain)
        return self._stars[key]

    def deformed_complex(self, v: Optional[str], N: int, row_signs=None) -> DeformedComplex:
        key = (self._vertex(v), N)
        if row_signs is not None:
            return build_deformed_complex(self.star(v, N), self.deformed, N, row_signs=row_signs)
        if key not in self._complexes:
            self._complexes[key] = build_deformed_complex(self.star(v, N), self.deformed, N)
        return self._complexes[key]

    def ext(self, N: int) -> DeformedExtAlgebra:
        if N < 0:
            raise DegreeMismatch(f"Ext degree must be >= 0, got {N}")
        if N not in self._ext:
            self._ext[N] = DeformedExtAlgebra(self.deformed_complex(None, N), list(self.quiver.vertices))
        return self._ext[N]

    def vertices(self) -> List[str]:
        return list(self.quiver.vertices)
