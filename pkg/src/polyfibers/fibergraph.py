"""Dual graphs of fibers and their augmentations by places at infinity."""

from __future__ import annotations

from dataclasses import dataclass, field

import networkx as nx

KINDS = ("affine-component", "divisor-component", "dicritical")


class UnknownComponent(ValueError):
    pass


@dataclass(frozen=True)
class Vertex:
    id: str
    kind: str
    mult: int | None = None
    label: str | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown vertex kind {self.kind!r}")
        if self.kind != "affine-component" and (self.mult is None or self.mult < 0):
            raise ValueError("divisor vertices carry a multiplicity")


@dataclass
class DualGraph:
    """Finite multigraph with loops; vertices carry a kind and a multiplicity."""

    vertices: list = field(default_factory=list)
    edges: list = field(default_factory=list)

    def copy(self) -> "DualGraph":
        return DualGraph(list(self.vertices), list(self.edges))

    def ids(self):
        return [v.id for v in self.vertices]

    def vertex(self, vid: str) -> Vertex:
        for v in self.vertices:
            if v.id == vid:
                return v
        raise UnknownComponent(vid)

    def add_vertex(self, v: Vertex):
        if v.id in self.ids():
            raise ValueError(f"duplicate vertex {v.id}")
        self.vertices.append(v)

    def add_edge(self, a: str, b: str):
        known = set(self.ids())
        if a not in known or b not in known:
            raise UnknownComponent(f"edge {a}-{b} references an unknown vertex")
        self.edges.append((a, b) if a <= b else (b, a))

    def to_networkx(self) -> nx.MultiGraph:
        g = nx.MultiGraph()
        g.add_nodes_from(self.ids())
        g.add_edges_from(self.edges)
        return g

    @property
    def components(self) -> int:
        return nx.number_connected_components(self.to_networkx()) if self.vertices else 0

    @property
    def betti1(self) -> int:
        return len(self.edges) - len(self.vertices) + self.components

    def is_tree(self) -> bool:
        return self.components == 1 and self.betti1 == 0

    def induced(self, keep) -> "DualGraph":
        keep = set(keep)
        return DualGraph([v for v in self.vertices if v.id in keep],
                         [e for e in self.edges if e[0] in keep and e[1] in keep])

    def to_json(self) -> dict:
        verts = []
        for v in self.vertices:
            d = {"id": v.id, "kind": v.kind}
            if v.mult is not None:
                d["mult"] = v.mult
            verts.append(d)
        return {"vertices": verts, "edges": [list(e) for e in self.edges]}

    def to_dot(self, name: str = "G") -> str:
        lines = [f"graph {_dot_id(name)} {{"]
        for v in self.vertices:
            label = v.id
            if v.kind != "affine-component":
                label += f" +{v.mult}"
            shape = {"affine-component": "ellipse", "divisor-component": "box",
                     "dicritical": "diamond"}[v.kind]
            lines.append(f'  {_dot_id(v.id)} [label="{label}", shape={shape}];')
        for a, b in self.edges:
            lines.append(f"  {_dot_id(a)} -- {_dot_id(b)};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def _dot_id(s: str) -> str:
    return '"' + s.replace('"', r"\"") + '"'


def graph_invariants(g: DualGraph):
    """``(connected components, first Betti number)``."""
    return g.components, g.betti1


def affine_id(i: int) -> str:
    return f"A{i}"


def affine_dual_graph(f, c, pattern: str = "path") -> DualGraph:
    """Dual graph of the affine fiber ``f = c``.

    One vertex per absolutely irreducible component; a singular point with
    ``k`` local branches contributes ``k - 1`` edges joining the owners of
    those branches, as a path (default) or a star.
    """
    from .fiber import fiber_components, fiber_singularities

    fc = fiber_components(f, c)
    g = DualGraph([Vertex(affine_id(i), "affine-component") for i in range(fc.r)])
    for pt in fiber_singularities(f, c):
        owners = list(pt.owners)
        for _ in range(pt.weight):
            for k in range(1, len(owners)):
                a = owners[k - 1] if pattern == "path" else owners[0]
                g.add_edge(affine_id(a), affine_id(owners[k]))
    return g


def augment_by_place(g: DualGraph, place) -> DualGraph:
    """``G_{c,P}``: join the components whose branches enter the place ``P``."""
    out = g.copy()
    owners = sorted(b.owner for b in place.branches)
    for k in range(1, len(owners)):
        out.add_edge(affine_id(owners[k - 1]), affine_id(owners[k]))
    return out


def augment_by_places(g: DualGraph, places) -> DualGraph:
    out = g
    for p in places:
        out = augment_by_place(out, p)
    return out
