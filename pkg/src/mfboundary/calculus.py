"""Plumbing calculus: local moves that change a closed plumbing graph
without changing the 3-manifold it describes.

Every move validates its precondition and returns a new graph; nothing is
mutated.  Multiplicities are input-stage data and are carried along
unchanged; the moves maintain Euler numbers, genus and signs only.

Moves:
  sign_reversal      flip the sign of every non-loop edge at a vertex;
  blow_down_a        remove a genus-0 leaf with Euler number +-1,
                     decrementing its neighbor by that number;
  blow_down_b        remove a genus-0 degree-2 vertex with Euler number
                     e = +-1 between distinct neighbors, joining them by an
                     edge of sign -e*e1*e2 and decrementing both by e;
  zero_chain_absorb  remove a genus-0 Euler-0 degree-2 vertex and merge its
                     two distinct neighbors (Euler numbers and genus add;
                     the far side's edges pick up the sign factor -e*ebar);
  handle_absorb      remove a genus-0 Euler-0 vertex doubly joined to one
                     vertex by a + and a - edge, adding 1 to that genus;
  split              remove a vertex that carries a degree-1 Euler-0
                     genus-0 companion; the remaining components survive
                     and 2g + sum(k_j - 1) isolated Euler-0 vertices are
                     added, k_j counting the removed edges into each
                     component;
  two_alteration     replace Euler number +2 by -2 on a genus-0 degree-2
                     vertex between distinct neighbors, flipping the sign
                     of exactly one of its two edges and decrementing both
                     neighbors by 1.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional

from .errors import (
    InvalidInput,
    MFBoundaryError,
    NotAbsorbable,
    NotApplicable,
    NotBlowdownable,
    NotSplittable,
)
from .graph_core import Edge, PlumbingGraph, Vertex, _order_key


def _closed_vertex(g: PlumbingGraph, vid: str, move: str, err) -> Vertex:
    v = g.vertex(vid)
    if v.kind == "arrowhead":
        raise err(f"{move}: {vid} is an arrowhead")
    return v


def sign_reversal(g: PlumbingGraph, vid: str) -> PlumbingGraph:
    """Flip the sign of every non-loop edge at the vertex."""
    g.vertex(vid)
    edges = tuple(
        replace(e, sign=-e.sign) if e.touches(vid) and not e.is_loop() else e
        for e in g.edges
    )
    return PlumbingGraph(g.vertices, edges)


def blow_down_a(g: PlumbingGraph, vid: str) -> PlumbingGraph:
    v = _closed_vertex(g, vid, "blow_down_a", NotBlowdownable)
    if v.genus != 0 or v.euler not in (1, -1):
        raise NotBlowdownable(f"{vid}: need genus 0 and Euler +-1, have {v.genus}, {v.euler}")
    incident = g.edges_at(vid)
    if g.degree(vid) != 1:
        raise NotBlowdownable(f"{vid}: need degree 1, have {g.degree(vid)}")
    (edge,) = incident
    u = g.vertex(edge.other(vid))
    if u.kind == "arrowhead" or u.euler is None:
        raise NotBlowdownable(f"{vid}: neighbor {u.id} has no Euler number")
    return g.remove_vertices([vid]).bump_euler(u.id, -v.euler)


def blow_down_b(g: PlumbingGraph, vid: str) -> PlumbingGraph:
    v = _closed_vertex(g, vid, "blow_down_b", NotBlowdownable)
    if v.genus != 0 or v.euler not in (1, -1):
        raise NotBlowdownable(f"{vid}: need genus 0 and Euler +-1, have {v.genus}, {v.euler}")
    incident = g.edges_at(vid)
    if g.degree(vid) != 2 or len(incident) != 2:
        raise NotBlowdownable(f"{vid}: need two edges to distinct neighbors")
    e1, e2 = incident
    i, j = e1.other(vid), e2.other(vid)
    if i == j:
        raise NotBlowdownable(f"{vid}: both edges go to {i}")
    for nid in (i, j):
        u = g.vertex(nid)
        if u.kind == "arrowhead" or u.euler is None:
            raise NotBlowdownable(f"{vid}: neighbor {nid} has no Euler number")
    sign0 = -v.euler * e1.sign * e2.sign
    out = g.remove_vertices([vid])
    out = out.add_edges([Edge(a=i, b=j, sign=sign0)])
    return out.bump_euler(i, -v.euler).bump_euler(j, -v.euler)


def zero_chain_absorb(g: PlumbingGraph, vid: str, keep: Optional[str] = None) -> PlumbingGraph:
    """Merge the two neighbors of a 0-vertex.  The merged vertex keeps the
    id, kind and multiplicity of ``keep`` (default: the canonically first
    neighbor); genus and Euler numbers add.  Edges formerly at the other
    neighbor are re-signed by -e*ebar unless they are loops."""
    v = _closed_vertex(g, vid, "zero_chain_absorb", NotAbsorbable)
    if v.genus != 0 or v.euler != 0:
        raise NotAbsorbable(f"{vid}: need genus 0 and Euler 0, have {v.genus}, {v.euler}")
    incident = g.edges_at(vid)
    if g.degree(vid) != 2 or len(incident) != 2:
        raise NotAbsorbable(f"{vid}: need two edges to distinct neighbors")
    e1, e2 = incident
    n1, n2 = e1.other(vid), e2.other(vid)
    if n1 == n2:
        raise NotAbsorbable(f"{vid}: both edges go to {n1}, use handle_absorb")
    if keep is None:
        keep = min(n1, n2, key=_order_key)
    if keep not in (n1, n2):
        raise NotAbsorbable(f"{vid}: keep={keep!r} is not a neighbor")
    kid = keep
    jid = n2 if kid == n1 else n1
    eps = next(e.sign for e in incident if e.other(vid) == kid)
    eps_bar = next(e.sign for e in incident if e.other(vid) == jid)
    ki, kj = g.vertex(kid), g.vertex(jid)
    for u in (ki, kj):
        if u.kind == "arrowhead" or u.euler is None:
            raise NotAbsorbable(f"{vid}: neighbor {u.id} has no Euler number")
    factor = -eps * eps_bar
    merged = replace(ki, euler=ki.euler + kj.euler, genus=ki.genus + kj.genus)
    vertices = tuple(
        merged if u.id == kid else u
        for u in g.vertices
        if u.id not in (vid, jid)
    )
    edges = []
    for e in g.edges:
        if e.touches(vid):
            continue
        ja, jb = e.a == jid, e.b == jid
        a = kid if ja else e.a
        b = kid if jb else e.b
        sign = e.sign * factor if ja != jb else e.sign
        edges.append(replace(e, a=a, b=b, sign=sign))
    return PlumbingGraph(vertices, tuple(edges))


def handle_absorb(g: PlumbingGraph, vid: str) -> PlumbingGraph:
    v = _closed_vertex(g, vid, "handle_absorb", NotAbsorbable)
    if v.genus != 0 or v.euler != 0:
        raise NotAbsorbable(f"{vid}: need genus 0 and Euler 0, have {v.genus}, {v.euler}")
    incident = g.edges_at(vid)
    if g.degree(vid) != 2 or len(incident) != 2:
        raise NotAbsorbable(f"{vid}: need exactly two edges")
    e1, e2 = incident
    i, j = e1.other(vid), e2.other(vid)
    if i != j or i == vid:
        raise NotAbsorbable(f"{vid}: need a double edge to a single other vertex")
    if {e1.sign, e2.sign} != {1, -1}:
        raise NotAbsorbable(f"{vid}: the double edge must carry one + and one -")
    host = g.vertex(i)
    out = g.remove_vertices([vid])
    return out.replace_vertex(replace(host, genus=host.genus + 1))


def split(g: PlumbingGraph, vid: str, companion: Optional[str] = None) -> PlumbingGraph:
    """Split at a vertex with an Euler-0 leaf companion.

    The vertex and the companion disappear; each remaining component
    survives, and one isolated Euler-0 vertex appears for every handle the
    removal frees: 2*genus plus (k_j - 1) per component joined by k_j
    edges."""
    v = _closed_vertex(g, vid, "split", NotSplittable)
    if any(e.is_loop() for e in g.edges_at(vid)):
        raise NotSplittable(f"{vid}: loops at the split vertex are not supported")
    candidates = [
        u
        for u in g.neighbors(vid)
        if g.degree(u) == 1
        and g.vertex(u).euler == 0
        and g.vertex(u).genus == 0
        and g.vertex(u).kind != "arrowhead"
    ]
    if companion is not None:
        if companion not in candidates:
            raise NotSplittable(f"{vid}: {companion!r} is not an Euler-0 leaf neighbor")
    else:
        if not candidates:
            raise NotSplittable(f"{vid}: no Euler-0 leaf companion")
        companion = candidates[0]
    rest = g.remove_vertices([vid, companion])

    # component id for every surviving vertex
    comp: dict[str, int] = {}
    for u in rest.ids:
        if u in comp:
            continue
        stack, cid = [u], len(comp)
        label = comp.setdefault(u, cid)
        while stack:
            x = stack.pop()
            for y in rest.neighbors(x):
                if y not in comp:
                    comp[y] = label
                    stack.append(y)

    links: dict[int, int] = {}
    for e in g.edges_at(vid):
        other = e.other(vid)
        if other == companion:
            continue
        links[comp[other]] = links.get(comp[other], 0) + 1
    extras = 2 * v.genus + sum(k - 1 for k in links.values())
    out = rest
    for _ in range(extras):
        nid = out.fresh_id("z")
        nv = Vertex(id=nid, genus=0, euler=0, kind="plain")
        out = out.add_vertices([nv])
    return out


def two_alteration(g: PlumbingGraph, vid: str, flip: Optional[str] = None) -> PlumbingGraph:
    """Trade Euler number +2 for -2 on a degree-2 vertex, flipping one of
    its two edge signs (``flip`` names which neighbor's edge; either choice
    is legitimate) and decrementing both neighbors."""
    v = _closed_vertex(g, vid, "two_alteration", NotApplicable)
    if v.genus != 0 or v.euler != 2:
        raise NotApplicable(f"{vid}: need genus 0 and Euler +2, have {v.genus}, {v.euler}")
    incident = g.edges_at(vid)
    if g.degree(vid) != 2 or len(incident) != 2:
        raise NotApplicable(f"{vid}: need two edges to distinct neighbors")
    e1, e2 = incident
    i, j = e1.other(vid), e2.other(vid)
    if i == j:
        raise NotApplicable(f"{vid}: both edges go to {i}")
    if flip is None:
        flip = min(i, j, key=_order_key)
    if flip not in (i, j):
        raise NotApplicable(f"{vid}: flip={flip!r} is not a neighbor")
    for nid in (i, j):
        u = g.vertex(nid)
        if u.kind == "arrowhead" or u.euler is None:
            raise NotApplicable(f"{vid}: neighbor {nid} has no Euler number")
    flip_edge = e1 if e1.other(vid) == flip else e2
    edges = []
    flipped = False
    for e in g.edges:
        if e is flip_edge and not flipped:
            edges.append(replace(e, sign=-e.sign))
            flipped = True
        else:
            edges.append(e)
    out = PlumbingGraph(g.vertices, tuple(edges))
    out = out.replace_vertex(replace(v, euler=-2))
    return out.bump_euler(i, -1).bump_euler(j, -1)


def blow_up_edge(g: PlumbingGraph, a: str, b: str, euler: int = -1,
                 sign_a: Optional[int] = None, new_id: Optional[str] = None) -> PlumbingGraph:
    """Inverse of blow_down_b: subdivide an existing a--b edge by a fresh
    genus-0 vertex with Euler number +-1, incrementing both ends by it.

    The two new signs may be chosen freely subject to
    sign_a * sign_b = -euler * old_sign; blowing the new vertex back down
    restores the original graph.  Exists to express the +-2-alteration as a
    derived move."""
    if euler not in (1, -1):
        raise InvalidInput("blow-up Euler number must be +1 or -1")
    edge = next((e for e in g.edges if not e.arrow and not e.is_loop()
                 and {e.a, e.b} == {a, b}), None)
    if edge is None:
        raise InvalidInput(f"no edge {a}--{b} to blow up")
    if sign_a is None:
        sign_a = 1
    sign_b = -euler * edge.sign * sign_a
    nid = new_id or g.fresh_id("u")
    out = g.remove_edge_once(edge)
    out = out.add_vertices([Vertex(id=nid, genus=0, euler=euler, kind="plain")])
    out = out.add_edges([Edge(a=a, b=nid, sign=sign_a), Edge(a=nid, b=b, sign=sign_b)])
    return out.bump_euler(a, euler).bump_euler(b, euler)


# -- scripted application ----------------------------------------------------

MOVES = {
    "sign_reversal": sign_reversal,
    "blow_down_a": blow_down_a,
    "blow_down_b": blow_down_b,
    "zero_chain_absorb": zero_chain_absorb,
    "handle_absorb": handle_absorb,
    "split": split,
    "two_alteration": two_alteration,
}


@dataclass(frozen=True)
class MoveSpec:
    kind: str
    target: str
    keep: Optional[str] = None
    flip: Optional[str] = None
    companion: Optional[str] = None

    def __post_init__(self):
        if self.kind not in MOVES:
            raise InvalidInput(f"unknown move kind {self.kind!r}")

    def to_json(self) -> dict:
        out = {"kind": self.kind, "target": self.target}
        for key in ("keep", "flip", "companion"):
            if getattr(self, key) is not None:
                out[key] = getattr(self, key)
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "MoveSpec":
        if not isinstance(obj, dict) or "kind" not in obj or "target" not in obj:
            raise InvalidInput('move spec needs "kind" and "target"')
        return cls(
            kind=obj["kind"],
            target=obj["target"],
            keep=obj.get("keep"),
            flip=obj.get("flip"),
            companion=obj.get("companion"),
        )


def apply_move(g: PlumbingGraph, spec: MoveSpec) -> PlumbingGraph:
    fn = MOVES[spec.kind]
    if spec.kind == "zero_chain_absorb":
        return fn(g, spec.target, keep=spec.keep)
    if spec.kind == "split":
        return fn(g, spec.target, companion=spec.companion)
    if spec.kind == "two_alteration":
        return fn(g, spec.target, flip=spec.flip)
    return fn(g, spec.target)


def run_script(g: PlumbingGraph, script: list[MoveSpec]):
    """Yield the graph after each move, in order."""
    for spec in script:
        g = apply_move(g, spec)
        yield g


def apply_script(g: PlumbingGraph, script: list[MoveSpec],
                 check_h1: bool = False) -> PlumbingGraph:
    """Apply the moves in order.  With check_h1, compare the first homology
    of every closed simple intermediate graph against the start."""
    if check_h1:
        from .homology import homology_of_graph

        reference = None
        if g.is_closed() and g.is_simple():
            reference = homology_of_graph(g)
        for step, out in enumerate(run_script(g, script)):
            if out.is_closed() and out.is_simple():
                h = homology_of_graph(out)
                if reference is None:
                    reference = h
                elif h != reference:
                    raise MFBoundaryError(
                        f"H1 changed after move {step}: {reference} -> {h}"
                    )
            g = out
        return g
    for out in run_script(g, script):
        g = out
    return g
