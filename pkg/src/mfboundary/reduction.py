"""Reduction recipes: move scripts that compact a freshly built boundary
graph toward its small normal forms.

The workhorse is the double-point chain reduction.  The chain of an
ordinary double point consists of Euler-2 string vertices around the point
vertex (Euler 2 for even n, Euler 1 with two Euler-3 neighbors for odd n).
Blowing down the point vertex when its Euler number is 1, trading the
Euler 2 at the line end for -2 with one sign flip, and blowing down the
resulting chain of 1s leaves a single middle vertex with Euler number -n,
joined to the two line vertices by a - edge (smaller line index) and a +
edge, and decrements both line vertices by 1.

For a generic arrangement doing this on every chain produces the compact
model whose intersection matrix is the block matrix of the closed-form
route.  The pencil and near-pencil scripts finish their families off to
normal form.
"""

from __future__ import annotations

from .arrangement import IncidenceData, is_generic
from .calculus import MoveSpec, apply_script
from .errors import InvalidInput
from .graph_core import PlumbingGraph


def double_chain_script(g: PlumbingGraph, inc: IncidenceData, j: int) -> list[MoveSpec]:
    """Script reducing the chain of double point j to a single middle
    vertex.  The surviving vertex is the string vertex next to the smaller
    line (the point vertex itself when the chain has no strings)."""
    pt = inc.points[j]
    if pt.multiplicity != 2:
        raise InvalidInput(f"point {j} has multiplicity {pt.multiplicity}, not 2")
    i1, i2 = pt.lines
    wid = f"w{j}"
    t = 0
    while g.has_vertex(f"s{i1}_{j}#{t}"):
        t += 1
    left = [f"s{i1}_{j}#{p}" for p in range(t)]
    right = [f"s{i2}_{j}#{p}" for p in reversed(range(t))]
    chain = left + [wid] + right
    script: list[MoveSpec] = []
    if g.vertex(wid).euler == 1:
        script.append(MoveSpec("blow_down_b", wid))
        chain.remove(wid)
    first, rest = chain[0], chain[1:]
    flip = rest[0] if rest else f"v{i2}"
    script.append(MoveSpec("two_alteration", first, flip=flip))
    script += [MoveSpec("blow_down_b", c) for c in rest]
    return script


def chain_survivor(inc: IncidenceData, j: int, n: int) -> str:
    """Id of the middle vertex left by double_chain_script."""
    i1, _ = inc.points[j].lines
    return f"w{j}" if n == 2 else f"s{i1}_{j}#0"


def generic_reduction_script(g: PlumbingGraph, inc: IncidenceData) -> list[MoveSpec]:
    if not is_generic(inc):
        raise InvalidInput("generic reduction needs an arrangement with only double points")
    script: list[MoveSpec] = []
    for j in range(len(inc.points)):
        script += double_chain_script(g, inc, j)
    return script


def reduce_double_chains(g: PlumbingGraph, inc: IncidenceData) -> PlumbingGraph:
    """Compact every double-point chain of a boundary graph; points of
    higher multiplicity are left alone."""
    for j, pt in enumerate(inc.points):
        if pt.multiplicity == 2:
            g = apply_script(g, double_chain_script(g, inc, j))
    return g


def pencil_reduction_script(g: PlumbingGraph, inc: IncidenceData) -> list[MoveSpec]:
    """One splitting at the central point, companion line 0."""
    if len(inc.points) != 1 or inc.points[0].multiplicity != inc.n:
        raise InvalidInput("pencil reduction needs all lines through one point")
    return [MoveSpec("split", "w0", companion="v0")]


def near_pencil_roles(inc: IncidenceData) -> tuple[int, int, list[int]]:
    """(big point index, generic line, double point indices) of a
    near-pencil arrangement."""
    n = inc.n
    cands = [j for j, p in enumerate(inc.points) if p.multiplicity == n - 1]
    if n < 3 or not cands or len(inc.points) != n:
        raise InvalidInput("not a near-pencil arrangement")
    # For n = 3 the triangle is a near-pencil in three symmetric ways
    # (every point has multiplicity n - 1 = 2); take the first.
    big = cands[0]
    doubles = [j for j in range(len(inc.points)) if j != big]
    if any(inc.points[j].multiplicity != 2 for j in doubles):
        raise InvalidInput("not a near-pencil arrangement")
    (gline,) = set(range(n)) - set(inc.points[big].lines)
    return big, gline, doubles


def near_pencil_reduction_script(g: PlumbingGraph, inc: IncidenceData) -> list[MoveSpec]:
    """Reduce a near-pencil boundary graph to a single vertex of genus n-2.

    After the double chains are compacted, each pencil line has Euler
    number 0 and joins its chain's survivor to the string vertex heading to
    the big point; absorbing it merges the two into an Euler-0 middle.
    Absorbing the first middle merges the generic line (Euler -1) with the
    big point vertex (Euler 1); the remaining middles become +- handles."""
    n = inc.n
    big, gline, doubles = near_pencil_roles(inc)
    script: list[MoveSpec] = []
    survivors = {}
    for j in doubles:
        script += double_chain_script(g, inc, j)
        survivors[j] = chain_survivor(inc, j, n)
    for j in doubles:
        pline = next(i for i in inc.points[j].lines if i != gline)
        script.append(MoveSpec("zero_chain_absorb", f"v{pline}", keep=survivors[j]))
    first, rest = doubles[0], doubles[1:]
    script.append(MoveSpec("zero_chain_absorb", survivors[first], keep=f"v{gline}"))
    script += [MoveSpec("handle_absorb", survivors[j]) for j in rest]
    return script
