"""Plumbing graphs with signed edges.

A vertex carries genus, Euler number, multiplicity, a kind tag and, during
the curve-configuration stage only, a decoration triple (m; n, nu).  Edges
are unordered, signed +1/-1, may be parallel, may be loops, and may be
arrows (edges into an arrowhead vertex).  Graphs are immutable: every
operation returns a new graph.

Vertex ids double as ordering keys.  The pipeline assigns structured ids
 ("v3" line 3, "w5" point 5, "s1_4#0" first string vertex on the edge from
line 1 toward point 4, "a2" arrowhead of line 2) and vertex_order sorts
line vertices first by line index, then point and string vertices by host
point, then everything else by id.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from typing import Iterable, Optional

from .errors import InvalidInput, UnknownVertex

KINDS = ("line", "point", "string", "arrowhead", "plain")


@dataclass(frozen=True)
class Vertex:
    id: str
    genus: int = 0
    euler: Optional[int] = None
    mult: Optional[int] = None
    kind: str = "plain"
    dec: Optional[tuple[int, int, int]] = None

    def __post_init__(self):
        if not isinstance(self.id, str) or not self.id:
            raise InvalidInput(f"vertex id must be a non-empty string: {self.id!r}")
        if not isinstance(self.genus, int) or self.genus < 0:
            raise InvalidInput(f"vertex {self.id}: genus must be a non-negative integer")
        if self.euler is not None and not isinstance(self.euler, int):
            raise InvalidInput(f"vertex {self.id}: euler must be an integer or None")
        if self.mult is not None and (not isinstance(self.mult, int) or self.mult < 1):
            raise InvalidInput(f"vertex {self.id}: multiplicity must be a positive integer")
        if self.kind not in KINDS:
            raise InvalidInput(f"vertex {self.id}: unknown kind {self.kind!r}")
        if self.dec is not None:
            d = tuple(self.dec)
            if len(d) != 3 or not all(isinstance(x, int) for x in d):
                raise InvalidInput(f"vertex {self.id}: dec must be three integers")
            if d[0] < 1 or d[1] < 0 or d[2] < 1:
                raise InvalidInput(f"vertex {self.id}: bad decoration {d}")
            object.__setattr__(self, "dec", d)
        if self.kind == "arrowhead":
            if self.euler is not None:
                raise InvalidInput(f"arrowhead {self.id} must not carry an Euler number")
            if self.genus != 0:
                raise InvalidInput(f"arrowhead {self.id} must have genus 0")


@dataclass(frozen=True)
class Edge:
    a: str
    b: str
    sign: int = 1
    edge_type: Optional[int] = None
    arrow: bool = False

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise InvalidInput(f"edge {self.a}--{self.b}: sign must be +1 or -1")
        if self.edge_type not in (None, 1, 2):
            raise InvalidInput(f"edge {self.a}--{self.b}: type must be 1, 2 or None")

    def other(self, vid: str) -> str:
        if vid == self.a:
            return self.b
        if vid == self.b:
            return self.a
        raise UnknownVertex(f"edge {self.a}--{self.b} does not touch {vid}")

    def touches(self, vid: str) -> bool:
        return vid == self.a or vid == self.b

    def is_loop(self) -> bool:
        return self.a == self.b


_ID_V = re.compile(r"^v(\d+)$")
_ID_W = re.compile(r"^w(\d+)$")
_ID_S = re.compile(r"^s(\d+)_(\d+)#(\d+)$")
_ID_A = re.compile(r"^a(\d+)$")


def _order_key(vid: str):
    m = _ID_V.match(vid)
    if m:
        return (0, int(m.group(1)), 0, 0, 0, vid)
    m = _ID_W.match(vid)
    if m:
        return (1, int(m.group(1)), 0, 0, 0, vid)
    m = _ID_S.match(vid)
    if m:
        line, point, pos = (int(g) for g in m.groups())
        return (1, point, 1, line, pos, vid)
    m = _ID_A.match(vid)
    if m:
        return (2, int(m.group(1)), 0, 0, 0, vid)
    return (3, 0, 0, 0, 0, vid)


@dataclass(frozen=True)
class PlumbingGraph:
    vertices: tuple[Vertex, ...]
    edges: tuple[Edge, ...]
    _index: dict = field(init=False, repr=False, compare=False, default=None)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(self.edges))
        index = {}
        for v in self.vertices:
            if v.id in index:
                raise InvalidInput(f"duplicate vertex id {v.id!r}")
            index[v.id] = v
        object.__setattr__(self, "_index", index)
        for e in self.edges:
            for vid in (e.a, e.b):
                if vid not in index:
                    raise UnknownVertex(f"edge references unknown vertex {vid!r}")
            heads = sum(1 for vid in (e.a, e.b) if index[vid].kind == "arrowhead")
            if e.arrow and heads != 1:
                raise InvalidInput(
                    f"arrow edge {e.a}--{e.b} must join a vertex to one arrowhead"
                )
            if not e.arrow and heads != 0:
                raise InvalidInput(
                    f"edge {e.a}--{e.b} touches an arrowhead but is not an arrow"
                )
        for v in self.vertices:
            if v.kind == "arrowhead" and self.degree(v.id) != 1:
                raise InvalidInput(f"arrowhead {v.id} must have degree 1")

    # -- access ------------------------------------------------------------

    def vertex(self, vid: str) -> Vertex:
        try:
            return self._index[vid]
        except KeyError:
            raise UnknownVertex(f"no vertex {vid!r}") from None

    def has_vertex(self, vid: str) -> bool:
        return vid in self._index

    def edges_at(self, vid: str) -> list[Edge]:
        return [e for e in self.edges if e.touches(vid)]

    def degree(self, vid: str) -> int:
        """Number of edge ends at the vertex; a loop contributes 2."""
        return sum((e.a == vid) + (e.b == vid) for e in self.edges)

    def neighbors(self, vid: str) -> list[str]:
        out = []
        for e in self.edges:
            if e.a == vid and e.b != vid:
                out.append(e.b)
            elif e.b == vid and e.a != vid:
                out.append(e.a)
        return sorted(set(out), key=_order_key)

    @property
    def ids(self) -> list[str]:
        return [v.id for v in self.vertices]

    def non_arrowhead_vertices(self) -> list[Vertex]:
        return [v for v in self.vertices if v.kind != "arrowhead"]

    def plain_edges(self) -> list[Edge]:
        return [e for e in self.edges if not e.arrow]

    # -- predicates ---------------------------------------------------------

    def is_closed(self) -> bool:
        """No arrowheads left and every vertex has its Euler number."""
        return all(v.kind != "arrowhead" and v.euler is not None for v in self.vertices)

    def is_simple(self) -> bool:
        """No loops and no parallel edges (arrows ignored)."""
        seen = set()
        for e in self.plain_edges():
            if e.is_loop():
                return False
            key = frozenset((e.a, e.b))
            if key in seen:
                return False
            seen.add(key)
        return True

    # -- structural edits (all return new graphs) ---------------------------

    def replace_vertex(self, v: Vertex) -> "PlumbingGraph":
        if v.id not in self._index:
            raise UnknownVertex(f"no vertex {v.id!r}")
        return PlumbingGraph(
            tuple(v if u.id == v.id else u for u in self.vertices), self.edges
        )

    def bump_euler(self, vid: str, delta: int) -> "PlumbingGraph":
        v = self.vertex(vid)
        if v.euler is None:
            raise InvalidInput(f"vertex {vid} has no Euler number to adjust")
        return self.replace_vertex(replace(v, euler=v.euler + delta))

    def remove_vertices(self, ids: Iterable[str]) -> "PlumbingGraph":
        drop = set(ids)
        for vid in drop:
            self.vertex(vid)
        return PlumbingGraph(
            tuple(v for v in self.vertices if v.id not in drop),
            tuple(e for e in self.edges if e.a not in drop and e.b not in drop),
        )

    def add_vertices(self, vs: Iterable[Vertex]) -> "PlumbingGraph":
        return PlumbingGraph(self.vertices + tuple(vs), self.edges)

    def add_edges(self, es: Iterable[Edge]) -> "PlumbingGraph":
        return PlumbingGraph(self.vertices, self.edges + tuple(es))

    def remove_edge_once(self, e: Edge) -> "PlumbingGraph":
        es = list(self.edges)
        es.remove(e)
        return PlumbingGraph(self.vertices, tuple(es))

    def fresh_id(self, prefix: str) -> str:
        k = 0
        while f"{prefix}{k}" in self._index:
            k += 1
        return f"{prefix}{k}"

    # -- canonical form ------------------------------------------------------

    def canonical(self) -> "PlumbingGraph":
        """Same graph with vertices in canonical order and edges sorted with
        normalized endpoint order.  Two graphs are structurally equal iff
        their canonical forms are equal."""
        verts = tuple(sorted(self.vertices, key=lambda v: _order_key(v.id)))
        edges = []
        for e in self.edges:
            if _order_key(e.b) < _order_key(e.a):
                e = replace(e, a=e.b, b=e.a)
            edges.append(e)
        edges.sort(key=lambda e: (_order_key(e.a), _order_key(e.b), -e.sign,
                                  e.arrow, e.edge_type or 0))
        return PlumbingGraph(verts, tuple(edges))


def vertex_order(g: PlumbingGraph) -> list[str]:
    """Canonical vertex id order: line vertices by line index, then point and
    string vertices grouped by host point (strings after their point, by host
    line and position), then arrowheads, then anything else by id."""
    return sorted(g.ids, key=_order_key)


def first_betti_of_graph(g: PlumbingGraph) -> int:
    """b_1 of the underlying topological graph, arrowheads and arrows
    excluded: edges - vertices + components."""
    verts = [v.id for v in g.non_arrowhead_vertices()]
    vset = set(verts)
    parent = {v: v for v in verts}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    edge_count = 0
    for e in g.plain_edges():
        if e.a in vset and e.b in vset:
            edge_count += 1
            ra, rb = find(e.a), find(e.b)
            if ra != rb:
                parent[ra] = rb
    components = len({find(v) for v in verts})
    return edge_count - len(verts) + components


# -- serialization ----------------------------------------------------------

def graph_to_json(g: PlumbingGraph) -> dict:
    g = g.canonical()
    return {
        "vertices": [
            {
                "id": v.id,
                "genus": v.genus,
                "euler": v.euler,
                "mult": v.mult,
                "kind": v.kind,
                "dec": list(v.dec) if v.dec is not None else None,
            }
            for v in g.vertices
        ],
        "edges": [
            {
                "a": e.a,
                "b": e.b,
                "sign": "+" if e.sign == 1 else "-",
                "type": e.edge_type,
                "arrow": e.arrow,
            }
            for e in g.edges
        ],
    }


def graph_from_json(obj: dict) -> PlumbingGraph:
    if not isinstance(obj, dict) or "vertices" not in obj or "edges" not in obj:
        raise InvalidInput('graph JSON needs "vertices" and "edges"')
    verts = []
    for row in obj["vertices"]:
        dec = row.get("dec")
        verts.append(
            Vertex(
                id=row["id"],
                genus=row.get("genus", 0),
                euler=row.get("euler"),
                mult=row.get("mult"),
                kind=row.get("kind", "plain"),
                dec=tuple(dec) if dec is not None else None,
            )
        )
    edges = []
    for row in obj["edges"]:
        sign = row.get("sign", "+")
        if sign in ("+", 1):
            s = 1
        elif sign in ("-", -1):
            s = -1
        else:
            raise InvalidInput(f"bad edge sign {sign!r}")
        edges.append(
            Edge(
                a=row["a"],
                b=row["b"],
                sign=s,
                edge_type=row.get("type"),
                arrow=bool(row.get("arrow", False)),
            )
        )
    return PlumbingGraph(tuple(verts), tuple(edges))


def _vertex_label(v: Vertex) -> str:
    if v.dec is not None:
        core = f"({v.dec[0]};{v.dec[1]},{v.dec[2]})"
    else:
        parts = []
        if v.euler is not None:
            parts.append(str(v.euler))
        if v.genus:
            parts.append(f"[{v.genus}]")
        if v.mult is not None:
            parts.append(f"({v.mult})")
        core = " ".join(parts) if parts else "."
    return f"{v.id}: {core}"


def to_dot(g: PlumbingGraph) -> str:
    """Graphviz rendering.  Arrows keep their direction, ordinary edges are
    drawn without one; edge labels show the sign and, if present, the type."""
    g = g.canonical()
    lines = ["digraph plumbing {", "  edge [dir=none];"]
    for v in g.vertices:
        shape = "point" if v.kind == "arrowhead" else "ellipse"
        lines.append(f'  "{v.id}" [shape={shape} label="{_vertex_label(v)}"];')
    for e in g.edges:
        label = "+" if e.sign == 1 else "-"
        if e.edge_type is not None:
            label += f" t{e.edge_type}"
        attrs = [f'label="{label}"']
        if e.arrow:
            head, tail = (e.a, e.b) if g.vertex(e.a).kind == "arrowhead" else (e.b, e.a)
            lines.append(f'  "{tail}" -> "{head}" [dir=forward {" ".join(attrs)}];')
        else:
            lines.append(f'  "{e.a}" -> "{e.b}" [{" ".join(attrs)}];')
    lines.append("}")
    return "\n".join(lines) + "\n"
