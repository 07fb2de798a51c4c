"""Simple graphs, complements, triangles and constrained 3-colorings.

Vertex labels are opaque strings. Everything iterates in declaration order so
that downstream certificates are byte-for-byte reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping, Sequence

CLASSES = ("O", "D", "I")


class GraphFormatError(ValueError):
    """Malformed graph file; carries the 1-based line number."""

    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def _edge(u: str, v: str) -> frozenset:
    return frozenset((u, v))


@dataclass(frozen=True)
class SimpleGraph:
    vertices: tuple[str, ...]
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex")
        vs = set(self.vertices)
        for e in self.edges:
            if len(e) != 2:
                raise ValueError(f"self-loop or malformed edge {sorted(e)}")
            if not e <= vs:
                raise ValueError(f"edge {sorted(e)} has an unknown endpoint")

    @classmethod
    def build(cls, vertices: Iterable, edges: Iterable = ()) -> "SimpleGraph":
        vs = tuple(str(v) for v in vertices)
        es = set()
        for u, v in edges:
            if str(u) == str(v):
                raise ValueError(f"self-loop at {u}")
            es.add(_edge(str(u), str(v)))
        return cls(vs, frozenset(es))

    def has_edge(self, u: str, v: str) -> bool:
        return _edge(u, v) in self.edges

    def neighbors(self, v: str) -> list[str]:
        return [u for u in self.vertices if u != v and _edge(u, v) in self.edges]

    def position(self, v: str) -> int:
        return self.vertices.index(v)

    def edge_list(self) -> list[tuple[str, str]]:
        """Edges as ordered pairs, sorted by declaration order."""
        pos = {v: i for i, v in enumerate(self.vertices)}
        out = []
        for e in self.edges:
            u, v = sorted(e, key=pos.__getitem__)
            out.append((u, v))
        out.sort(key=lambda p: (pos[p[0]], pos[p[1]]))
        return out

    def relabel(self, mapping: Mapping[str, str]) -> "SimpleGraph":
        return SimpleGraph.build(
            [mapping[v] for v in self.vertices],
            [(mapping[u], mapping[v]) for u, v in self.edge_list()],
        )

    def same_as(self, other: "SimpleGraph") -> bool:
        """Equality as labeled graphs, ignoring vertex declaration order."""
        return set(self.vertices) == set(other.vertices) and self.edges == other.edges

    def __len__(self):
        return len(self.vertices)


def parse_graph(text: str) -> SimpleGraph:
    vertices: list[str] = []
    seen: set[str] = set()
    pending: list[tuple[int, str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "v" and len(parts) == 2:
            if parts[1] in seen:
                raise GraphFormatError(lineno, f"duplicate vertex {parts[1]!r}")
            seen.add(parts[1])
            vertices.append(parts[1])
        elif parts[0] == "e" and len(parts) == 3:
            if parts[1] == parts[2]:
                raise GraphFormatError(lineno, f"self-loop at {parts[1]!r}")
            pending.append((lineno, parts[1], parts[2]))
        else:
            raise GraphFormatError(lineno, f"malformed line {raw.strip()!r}")
    edges = set()
    for lineno, u, v in pending:
        for w in (u, v):
            if w not in seen:
                raise GraphFormatError(lineno, f"unknown endpoint {w!r}")
        edges.add(_edge(u, v))
    return SimpleGraph(tuple(vertices), frozenset(edges))


def format_graph(g: SimpleGraph) -> str:
    lines = [f"v {v}" for v in g.vertices]
    lines += [f"e {u} {v}" for u, v in g.edge_list()]
    return "\n".join(lines) + "\n"


def complement(g: SimpleGraph) -> SimpleGraph:
    edges = {
        _edge(u, v)
        for u, v in combinations(g.vertices, 2)
        if _edge(u, v) not in g.edges
    }
    return SimpleGraph(g.vertices, frozenset(edges))


def induced_subgraph(g: SimpleGraph, s: Iterable[str]) -> SimpleGraph:
    keep = set(s)
    unknown = keep - set(g.vertices)
    if unknown:
        raise ValueError(f"unknown vertices {sorted(unknown)}")
    vs = tuple(v for v in g.vertices if v in keep)
    return SimpleGraph(vs, frozenset(e for e in g.edges if e <= keep))


def triangles(g: SimpleGraph) -> list[tuple[str, str, str]]:
    """All 3-cliques, each once, as triples in declaration order."""
    out = []
    vs = g.vertices
    for i, a in enumerate(vs):
        na = set(g.neighbors(a))
        for j in range(i + 1, len(vs)):
            b = vs[j]
            if b not in na:
                continue
            for k in range(j + 1, len(vs)):
                c = vs[k]
                if c in na and g.has_edge(b, c):
                    out.append((a, b, c))
    return out


# ---------------------------------------------------------------------------
# 3-colorings


@dataclass(frozen=True)
class ThreeColoring:
    O: tuple[str, ...]
    D: tuple[str, ...]
    I: tuple[str, ...]

    def color_of(self, v: str) -> str:
        for name in CLASSES:
            if v in getattr(self, name):
                return name
        raise KeyError(v)

    def as_dict(self) -> dict[str, str]:
        return {v: name for name in CLASSES for v in getattr(self, name)}

    def is_proper_for(self, g: SimpleGraph) -> bool:
        colors = self.as_dict()
        if sorted(colors) != sorted(g.vertices):
            return False
        if sum(len(getattr(self, c)) for c in CLASSES) != len(g.vertices):
            return False
        return all(colors[u] != colors[v] for u, v in g.edge_list())


@dataclass(frozen=True)
class Pin:
    vertex: str
    cls: str


@dataclass(frozen=True)
class Monochromatic:
    vertices: tuple[str, ...]


@dataclass(frozen=True)
class Within:
    vertices: tuple[str, ...]
    cls: str


class ContradictoryConstraints(ValueError):
    pass


def _initial_domains(g: SimpleGraph, constraints: Sequence) -> dict[str, set[str]]:
    domains = {v: set(CLASSES) for v in g.vertices}
    for c in constraints:
        if isinstance(c, Pin):
            targets, allowed = (c.vertex,), {c.cls}
        elif isinstance(c, Within):
            targets, allowed = c.vertices, {c.cls}
        elif isinstance(c, Monochromatic):
            continue
        else:
            raise TypeError(f"unsupported constraint {c!r}")
        if not allowed <= set(CLASSES):
            raise ValueError(f"unknown class in {c!r}")
        for v in targets:
            if v not in domains:
                raise ValueError(f"constraint mentions unknown vertex {v!r}")
            domains[v] &= allowed
            if not domains[v]:
                raise ContradictoryConstraints(f"vertex {v!r} pinned to two classes")
    for c in constraints:
        if isinstance(c, Monochromatic):
            for v in c.vertices:
                if v not in domains:
                    raise ValueError(f"constraint mentions unknown vertex {v!r}")
            common = set(CLASSES)
            for v in c.vertices:
                common &= domains[v]
            if c.vertices and not common:
                raise ContradictoryConstraints(
                    f"monochromatic set {list(c.vertices)} has pinned vertices in different classes"
                )
    return domains


def constrained_three_coloring(
    g: SimpleGraph, constraints: Sequence = ()
) -> ThreeColoring | None:
    """Exhaustive backtracking search for a constrained proper 3-coloring.

    Picks the unassigned vertex with the fewest remaining classes (ties by
    declaration order) and forward-checks neighbours and monochromatic groups.
    Returns None when no coloring exists.
    """
    domains = _initial_domains(g, constraints)
    adj = {v: g.neighbors(v) for v in g.vertices}
    groups: dict[str, list[tuple[str, ...]]] = {v: [] for v in g.vertices}
    for c in constraints:
        if isinstance(c, Monochromatic):
            for v in c.vertices:
                groups[v].append(c.vertices)
    order = {v: i for i, v in enumerate(g.vertices)}
    assignment: dict[str, str] = {}

    def search(doms: dict[str, set[str]]) -> bool:
        free = [v for v in g.vertices if v not in assignment]
        if not free:
            return True
        v = min(free, key=lambda u: (len(doms[u]), order[u]))
        for color in CLASSES:
            if color not in doms[v]:
                continue
            new = {u: set(d) for u, d in doms.items()}
            new[v] = {color}
            ok = True
            for u in adj[v]:
                if u in assignment:
                    if assignment[u] == color:
                        ok = False
                        break
                    continue
                new[u].discard(color)
                if not new[u]:
                    ok = False
                    break
            if ok:
                for grp in groups[v]:
                    for u in grp:
                        new[u] &= {color}
                        if not new[u]:
                            ok = False
                            break
                    if not ok:
                        break
            if not ok:
                continue
            assignment[v] = color
            if search(new):
                return True
            del assignment[v]
        return False

    if not search(domains):
        return None
    by_class = {c: tuple(v for v in g.vertices if assignment[v] == c) for c in CLASSES}
    return ThreeColoring(by_class["O"], by_class["D"], by_class["I"])


def satisfies(coloring: ThreeColoring, constraints: Sequence) -> bool:
    colors = coloring.as_dict()
    for c in constraints:
        if isinstance(c, Pin) and colors.get(c.vertex) != c.cls:
            return False
        if isinstance(c, Within) and any(colors.get(v) != c.cls for v in c.vertices):
            return False
        if isinstance(c, Monochromatic) and len({colors.get(v) for v in c.vertices}) > 1:
            return False
    return True


# ---------------------------------------------------------------------------
# Orientations

_LEVEL = {"O": 0, "D": 1, "I": 2}


@dataclass(frozen=True)
class Digraph:
    graph: SimpleGraph
    arcs: tuple[tuple[str, str], ...]

    def __post_init__(self):
        if len(self.arcs) != len(self.graph.edges):
            raise ValueError("every edge needs exactly one direction")
        if {frozenset(a) for a in self.arcs} != set(self.graph.edges):
            raise ValueError("arcs do not match the underlying edges")

    def successors(self, v: str) -> list[str]:
        return [b for a, b in self.arcs if a == v]

    def predecessors(self, v: str) -> list[str]:
        return [a for a, b in self.arcs if b == v]


def orient_by_coloring(g: SimpleGraph, c: ThreeColoring) -> Digraph:
    """Direct every edge from O to D to I."""
    if not c.is_proper_for(g):
        raise ValueError("coloring is not proper for this graph")
    colors = c.as_dict()
    arcs = []
    for u, v in g.edge_list():
        if _LEVEL[colors[u]] > _LEVEL[colors[v]]:
            u, v = v, u
        arcs.append((u, v))
    return Digraph(g, tuple(arcs))


def has_directed_3path(d: Digraph) -> bool:
    succ: dict[str, list[str]] = {}
    for a, b in d.arcs:
        succ.setdefault(a, []).append(b)
    for a, b in d.arcs:
        for c in succ.get(b, ()):
            if c == a:
                continue
            for e in succ.get(c, ()):
                if e not in (a, b):
                    return True
    return False
