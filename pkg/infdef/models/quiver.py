"""Quivers and paths.

Paths compose in diagram order: ``pq`` means first ``p`` then ``q``, so the
composite exists when ``target(p) == source(q)``.
"""
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from ..core.errors import SessionError


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class Path:
    source: str
    target: str
    arrows: Tuple[str, ...] = ()

    @property
    def length(self) -> int:
        return len(self.arrows)

    @property
    def is_stationary(self) -> bool:
        return not self.arrows

    def label(self) -> str:
        if self.is_stationary:
            return f"e_{self.source}"
        return "*".join(self.arrows)

    def __str__(self) -> str:
        return self.label()


@dataclass(frozen=True)
class Quiver:
    vertices: Tuple[str, ...]
    arrows: Tuple[Arrow, ...]
    _arrow_index: Dict[str, int] = field(init=False, repr=False, compare=False, hash=False)
    _vertex_index: Dict[str, int] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise SessionError("vertex labels must be unique")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise SessionError("arrow names must be unique")
        for a in self.arrows:
            for end in (a.source, a.target):
                if end not in self.vertices:
                    raise SessionError(f"arrow {a.name!r} uses undeclared vertex {end!r}", arrow=a.name)
        object.__setattr__(self, "_arrow_index", {a.name: i for i, a in enumerate(self.arrows)})
        object.__setattr__(self, "_vertex_index", {v: i for i, v in enumerate(self.vertices)})

    def arrow(self, name: str) -> Arrow:
        try:
            return self.arrows[self._arrow_index[name]]
        except KeyError:
            raise SessionError(f"unknown arrow {name!r}", arrow=name) from None

    def has_arrow(self, name: str) -> bool:
        return name in self._arrow_index

    def vertex_index(self, v: str) -> int:
        try:
            return self._vertex_index[v]
        except KeyError:
            raise SessionError(f"unknown vertex {v!r}", vertex=v) from None

    def arrow_index(self, name: str) -> int:
        self.arrow(name)
        return self._arrow_index[name]

    def stationary(self, v: str) -> Path:
        self.vertex_index(v)
        return Path(v, v)

    def path(self, names: Sequence[str]) -> Optional[Path]:
        """Path through the named arrows, or None when they do not compose."""
        if not names:
            raise SessionError("a path needs at least one arrow; use e_v for stationary paths")
        arrows = [self.arrow(n) for n in names]
        for a, b in zip(arrows, arrows[1:]):
            if a.target != b.source:
                return None
        return Path(arrows[0].source, arrows[-1].target, tuple(names))

    def sort_key(self, p: Path) -> Tuple[int, Tuple[int, ...]]:
        """Length first, then lexicographic by vertex order (stationary) or arrow order."""
        if p.is_stationary:
            return (0, (self._vertex_index[p.source],))
        return (p.length, tuple(self._arrow_index[a] for a in p.arrows))

    def adjacency(self) -> List[List[int]]:
        n = len(self.vertices)
        adj = [[0] * n for _ in range(n)]
        for a in self.arrows:
            adj[self._vertex_index[a.source]][self._vertex_index[a.target]] += 1
        return adj


def compose_paths(p: Path, q: Path) -> Optional[Path]:
    """``p`` then ``q``; None stands for the zero marker."""
    if p.target != q.source:
        return None
    return Path(p.source, q.target, p.arrows + q.arrows)


def enumerate_paths(Q: Quiver, L: int) -> List[Path]:
    if L < 0:
        raise SessionError("path length bound must be non-negative")
    layer = [Path(v, v) for v in Q.vertices]
    out = list(layer)
    for _ in range(L):
        nxt = []
        for p in layer:
            for a in Q.arrows:
                if a.source == p.target:
                    nxt.append(Path(p.source, a.target, p.arrows + (a.name,)))
        out.extend(sorted(nxt, key=Q.sort_key))
        layer = nxt
    return out


def emit_dot(Q: Quiver, name: str = "quiver") -> str:
    lines = [f"digraph {name} {{"]
    for v in Q.vertices:
        lines.append(f'  "{v}";')
    for a in Q.arrows:
        lines.append(f'  "{a.source}" -> "{a.target}" [label="{a.name}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
