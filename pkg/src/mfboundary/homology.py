"""Integral first homology of plumbed 3-manifolds, plus the closed-form
Betti number and torsion probes for arrangement boundaries.

The core computation: for a closed simple plumbing graph, form the weighted
incidence matrix A (Euler numbers on the diagonal, edge signs off it); then

    H_1 = Z^(corank A + 2*total genus + b_1(graph)) (+) torsion of A,

the torsion being the invariant factors of A that exceed 1.  Invariant
factors come from an exact integer Smith normal form: fraction-free
elimination on a sparse representation, always pivoting on an entry of
minimal absolute value, with a divisibility-repair pass so the diagonal
comes out as a divisibility chain.  Everything runs over unbounded Python
integers; no floating point anywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .arrangement import IncidenceData
from .errors import InvalidInput, MissingEuler, NonSimpleGraph
from .graph_core import PlumbingGraph, first_betti_of_graph, vertex_order


# -- Smith normal form -------------------------------------------------------

@dataclass(frozen=True)
class SmithForm:
    """Outcome of a Smith normal form computation.

    ``factors`` are the positive diagonal entries d_1 | d_2 | ... | d_r in
    divisibility order; ``corank`` is the kernel rank cols - r (for the
    square symmetric matrices used here, the usual corank)."""

    rows: int
    cols: int
    factors: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.factors)

    @property
    def corank(self) -> int:
        return self.cols - self.rank

    def __post_init__(self):
        for a, b in zip(self.factors, self.factors[1:]):
            if b % a != 0:
                raise InvalidInput(f"invariant factors out of order: {self.factors}")


def _validate_matrix(M: Sequence[Sequence[int]]) -> tuple[int, int]:
    if not isinstance(M, (list, tuple)):
        raise InvalidInput("matrix must be a list of rows")
    nrows = len(M)
    ncols = None
    for row in M:
        if not isinstance(row, (list, tuple)):
            raise InvalidInput("matrix rows must be lists")
        if ncols is None:
            ncols = len(row)
        elif len(row) != ncols:
            raise InvalidInput("matrix rows have unequal lengths")
        for v in row:
            if not isinstance(v, int) or isinstance(v, bool):
                raise InvalidInput(f"matrix entries must be integers, got {v!r}")
    return nrows, (ncols or 0)


def _bareiss_rank_modulus(B: list[list[int]]) -> tuple[int, int]:
    """Fraction-free elimination of a dense integer matrix (destroyed).

    Returns (rank, R) where R is a positive multiple of the largest
    nonzero invariant factor, or (0, 0) for a zero matrix.  Bareiss keeps
    every intermediate entry equal to a minor of the input, so sizes grow
    polynomially instead of doubling per pivot.  After r-1 steps the live
    block consists of r x r minors; the gcd of the final live block is
    therefore a multiple of the r-th determinantal divisor, hence of the
    last invariant factor d_r.  That gcd is usually far smaller than any
    single minor, which keeps the modular stage below cheap.
    """
    nr = len(B)
    nc = len(B[0]) if nr else 0
    rows_act = list(range(nr))
    cols_act = list(range(nc))
    prev = 1
    r = 0
    final_block: list[int] = []
    while r < min(nr, nc):
        best = None
        for ii in range(r, nr):
            bi = B[rows_act[ii]]
            for jj in range(r, nc):
                v = bi[cols_act[jj]]
                if v:
                    key = (abs(v), ii, jj)
                    if best is None or key < best:
                        best = key
        if best is None:
            break
        final_block = [
            B[rows_act[ii]][cols_act[jj]]
            for ii in range(r, nr)
            for jj in range(r, nc)
            if B[rows_act[ii]][cols_act[jj]]
        ]
        _, pi, pj = best
        rows_act[r], rows_act[pi] = rows_act[pi], rows_act[r]
        cols_act[r], cols_act[pj] = cols_act[pj], cols_act[r]
        prow = B[rows_act[r]]
        pcol = cols_act[r]
        p = prow[pcol]
        for ii in range(r + 1, nr):
            brow = B[rows_act[ii]]
            f = brow[pcol]
            for jj in range(r + 1, nc):
                c = cols_act[jj]
                brow[c] = (brow[c] * p - f * prow[c]) // prev
            brow[pcol] = 0
        prev = p
        r += 1
    if r == 0:
        return 0, 0
    g = 0
    for v in final_block:
        g = math.gcd(g, v)
        if g == 1:
            break
    return r, g


def smith_normal_form(M: Sequence[Sequence[int]]) -> SmithForm:
    """Invariant factors of an integer matrix, by exact sparse elimination.

    Strategy, tuned for the mostly-empty matrices of boundary graphs:

      * pivot on +-1 entries while any exist, chosen to minimize fill-in;
        these eliminate without remainders and keep entries small;
      * when no unit entry is left, the gcd g of the remaining entries is
        the next invariant factor's content: divide it out (the factors of
        g*M are g times those of M), which in the graph cases turns the
        torsion core back into a unit-pivot matrix;
      * a content-1 remainder with no unit entry is finished by a bounded
        modular pass: one Bareiss sweep yields the exact rank r and a
        modulus R (a multiple of the last invariant factor), after which
        elimination may reduce every entry symmetrically mod R, because
        the presented group is unchanged by adding R times a basis vector
        to any row.  Each pivot p then contributes gcd(p, R), rows that
        vanish mod R contribute R itself, and the first r factors of that
        chain are the remaining invariant factors.  Nothing can blow up:
        every entry stays below R.

    The naive minimum-entry Euclidean strategy is catastrophic here: on
    the raw boundary graph of ten generic lines it manufactures pivots
    with hundreds of digits.  The unit phase plus the modular finish keep
    the whole computation in word-sized integers unless the input really
    has giant invariant factors.

    Entries are unbounded Python integers throughout; nothing is floated.
    """
    nrows, ncols = _validate_matrix(M)
    rows: dict[int, dict[int, int]] = {}
    cols: dict[int, set[int]] = {}
    for i, row in enumerate(M):
        for j, v in enumerate(row):
            if v:
                rows.setdefault(i, {})[j] = v
                cols.setdefault(j, set()).add(i)

    modulus = 0  # 0 until the Bareiss stage switches the modular finish on

    def set_entry(r: int, c: int, v: int):
        if modulus:
            v %= modulus
            if 2 * v > modulus:
                v -= modulus
        if v:
            rows.setdefault(r, {})[c] = v
            cols.setdefault(c, set()).add(r)
        else:
            if r in rows and c in rows[r]:
                del rows[r][c]
                if not rows[r]:
                    del rows[r]
                cols[c].discard(r)
                if not cols[c]:
                    del cols[c]

    def row_op(r: int, i: int, q: int):
        # row_r -= q * row_i
        for c, v in list(rows.get(i, {}).items()):
            set_entry(r, c, rows.get(r, {}).get(c, 0) - q * v)

    def col_op(c: int, j: int, q: int):
        # col_c -= q * col_j
        for r in list(cols.get(j, set())):
            set_entry(r, c, rows.get(r, {}).get(c, 0) - q * rows[r][j])

    def best_unit() -> Optional[tuple[int, int]]:
        best = None
        for i in rows:
            ri = rows[i]
            for c, v in ri.items():
                if v in (1, -1):
                    key = ((len(ri) - 1) * (len(cols[c]) - 1), i, c)
                    if best is None or key < best:
                        best = key
        return None if best is None else (best[1], best[2])

    def global_min() -> tuple[int, int]:
        best = None
        for i in rows:
            for c, v in rows[i].items():
                key = (abs(v), i, c)
                if best is None or key < best:
                    best = key
        return (best[1], best[2])

    def extract_content() -> int:
        g = 0
        for ri in rows.values():
            for v in ri.values():
                g = math.gcd(g, v)
                if g == 1:
                    return 1
        if g > 1:
            for i in list(rows):
                for c in list(rows[i]):
                    rows[i][c] //= g
        return g

    def extract_unit(i: int, j: int):
        p = rows[i][j]
        for r in list(cols[j]):
            if r != i:
                # exact elimination: quotient is the entry over +-1
                row_op(r, i, rows[r][j] * p)
        # column j now holds only the pivot; the implicit column ops
        # clearing row i touch no other row, so the row just goes away
        for c in list(rows[i]):
            set_entry(i, c, 0)

    def modular_chain() -> list[int]:
        """Finish the matrix under an active modulus; factors, chained."""
        produced: list[int] = []
        while rows:
            unit = best_unit()
            if unit is not None:
                extract_unit(*unit)
                produced.append(1)
                continue
            i, j = global_min()
            while True:
                p = rows[i][j]
                r = next((t for t in sorted(cols[j]) if t != i), None)
                if r is not None:
                    row_op(r, i, rows[r][j] // p)
                    if rows.get(r, {}).get(j, 0):
                        i = r  # remainder is strictly smaller: chase it
                    continue
                c = next((t for t in sorted(rows[i]) if t != j), None)
                if c is not None:
                    col_op(c, j, rows[i][c] // p)
                    if rows.get(i, {}).get(c, 0):
                        j = c
                    continue
                g = math.gcd(rows[i][j], modulus)
                bad = next(
                    (t for t in sorted(rows) if t != i
                     and any(v % g for v in rows[t].values())),
                    None,
                )
                if bad is None:
                    break
                row_op(i, bad, -1)  # fold the offending row in; the next
                #                     sweep shrinks the pivot toward a
                #                     common divisor
            set_entry(i, j, 0)
            produced.append(g)
        return produced

    factors: list[int] = []
    scale = 1
    while rows:
        unit = best_unit()
        if unit is None:
            scale *= extract_content()
            unit = best_unit()
        if unit is not None:
            extract_unit(*unit)
            factors.append(scale)
            continue
        # No unit entry and content 1: hand the core to the bounded
        # modular finish.  Everything left contributes either one of the
        # rank many remaining invariant factors or a zero column.
        core_rows = sorted(rows)
        core_cols = sorted({c for i in core_rows for c in rows[i]})
        cmap = {c: t for t, c in enumerate(core_cols)}
        dense = [[0] * len(core_cols) for _ in core_rows]
        for t, i in enumerate(core_rows):
            for c, v in rows[i].items():
                dense[t][cmap[c]] = v
        rank_core, R = _bareiss_rank_modulus(dense)
        assert rank_core >= 1  # rows is nonempty and holds nonzero entries
        if R == 1:
            factors.extend([scale] * rank_core)
            break
        modulus = R
        for i in list(rows):
            for c, v in list(rows[i].items()):
                set_entry(i, c, v)  # re-store to reduce into (-R/2, R/2]
        chain = modular_chain()
        chain.extend([R] * (len(core_cols) - len(chain)))
        factors.extend(scale * f for f in chain[:rank_core])
        break
    for a, b in zip(factors, factors[1:]):
        assert b % a == 0, factors
    return SmithForm(nrows, ncols, tuple(factors))


# -- finitely generated abelian groups ---------------------------------------

@dataclass(frozen=True)
class AbelianGroup:
    """Z^free_rank plus cyclic factors in invariant-factor form (each at
    least 2, each dividing the next).  Equality is isomorphism."""

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise InvalidInput("free rank cannot be negative")
        object.__setattr__(self, "torsion", tuple(self.torsion))
        for d in self.torsion:
            if not isinstance(d, int) or d < 2:
                raise InvalidInput(f"torsion orders must be >= 2, got {d}")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a != 0:
                raise InvalidInput(f"torsion not in invariant-factor form: {self.torsion}")

    @classmethod
    def cyclic_powers(cls, free_rank: int, n: int, k: int) -> "AbelianGroup":
        """Z^free_rank (+) (Z_n)^k."""
        return cls(free_rank, ((n,) * k) if k else ())

    def as_prime_powers(self) -> tuple[tuple[int, int], ...]:
        """Torsion re-expressed as a sorted multiset of prime powers, e.g.
        Z_6 (+) Z_2 -> ((2,1), (2,1), (3,1))."""
        out = []
        for d in self.torsion:
            left = d
            p = 2
            while p * p <= left:
                if left % p == 0:
                    e = 0
                    while left % p == 0:
                        left //= p
                        e += 1
                    out.append((p, e))
                p += 1
            if left > 1:
                out.append((left, 1))
        return tuple(sorted(out))

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    @property
    def is_torsion_free(self) -> bool:
        return not self.torsion

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank:
            parts.append(f"Z^{self.free_rank}")
        parts += [f"Z_{d}" for d in self.torsion]
        return " (+) ".join(parts) if parts else "0"


# -- graph homology ----------------------------------------------------------

def incidence_matrix(g: PlumbingGraph, order: Optional[list[str]] = None) -> list[list[int]]:
    """Weighted incidence matrix of a closed simple plumbing graph in
    canonical vertex order: Euler numbers on the diagonal, the sign of the
    unique i-j edge elsewhere."""
    if any(v.kind == "arrowhead" for v in g.vertices):
        raise InvalidInput("graph still has arrowheads; strip them first")
    for v in g.vertices:
        if v.euler is None:
            raise MissingEuler(f"vertex {v.id} has no Euler number")
    if not g.is_simple():
        raise NonSimpleGraph(
            "graph has loops or parallel edges; absorb them first "
            "(a +- double edge is a handle_absorb target, an Euler-0 "
            "degree-2 vertex a zero_chain_absorb target)"
        )
    if order is None:
        order = vertex_order(g)
    pos = {vid: k for k, vid in enumerate(order)}
    if sorted(pos) != sorted(g.ids):
        raise InvalidInput("order must enumerate exactly the graph's vertices")
    size = len(order)
    A = [[0] * size for _ in range(size)]
    for vid in order:
        A[pos[vid]][pos[vid]] = g.vertex(vid).euler
    for e in g.edges:
        a, b = pos[e.a], pos[e.b]
        A[a][b] = e.sign
        A[b][a] = e.sign
    return A


def homology_of_graph(g: PlumbingGraph) -> AbelianGroup:
    """First integral homology of the plumbed manifold of a closed simple
    graph: corank of the incidence matrix plus 2*genus plus b_1 of the
    graph free summands, invariant factors >= 2 as torsion."""
    A = incidence_matrix(g)
    snf = smith_normal_form(A)
    free = snf.corank + 2 * sum(v.genus for v in g.vertices) + first_betti_of_graph(g)
    torsion = tuple(d for d in snf.factors if d >= 2)
    return AbelianGroup(free, torsion)


# -- closed forms and probes -------------------------------------------------

def betti_formula(inc: IncidenceData) -> int:
    """First Betti number of the boundary straight from the incidence data:
    sum over intersection points of 1 + (m - 2) * gcd(m, n)."""
    if inc.n < 2:
        raise InvalidInput("Betti formula needs n >= 2")
    return sum(
        1 + (p.multiplicity - 2) * math.gcd(p.multiplicity, inc.n)
        for p in inc.points
    )


def projective_complement_euler(inc: IncidenceData) -> int:
    """Euler characteristic of the complement of the projectivized
    arrangement: 3 - 2n + sum (m_j - 1)."""
    return 3 - 2 * inc.n + sum(p.multiplicity - 1 for p in inc.points)


def _pencil_like(inc: IncidenceData) -> bool:
    return len(inc.points) == 1 and inc.points[0].multiplicity == inc.n


def _near_pencil_like(inc: IncidenceData) -> bool:
    if inc.n < 3 or len(inc.points) != inc.n:
        return False
    mults = sorted(p.multiplicity for p in inc.points)
    return mults == [2] * (inc.n - 1) + [inc.n - 1]


@dataclass(frozen=True)
class ConjectureReport:
    """Evidence for the three torsion predictions on one arrangement.

    flat_hypothesis     every point has (m-2)(gcd(m,n)-1) = 0, i.e. no
                        point vertex carries genus;
    flat_prediction_ok  under that hypothesis, whether the torsion is
                        exactly (Z_n)^chi with chi the complement Euler
                        characteristic (None when the hypothesis fails);
    orders_divide_n     every invariant factor divides n;
    torsion_free_iff    torsion-freeness happens exactly for pencil and
                        near-pencil shapes.
    """

    n: int
    group: AbelianGroup
    betti_matches: bool
    flat_hypothesis: bool
    complement_euler: int
    flat_prediction_ok: Optional[bool]
    orders_divide_n: bool
    torsion_free: bool
    pencil_like: bool
    near_pencil_like: bool
    torsion_free_iff: bool

    def all_hold(self) -> bool:
        checks = [self.betti_matches, self.orders_divide_n, self.torsion_free_iff]
        if self.flat_prediction_ok is not None:
            checks.append(self.flat_prediction_ok)
        return all(checks)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "h1": str(self.group),
            "rank": self.group.free_rank,
            "torsion": list(self.group.torsion),
            "betti_matches": self.betti_matches,
            "flat_hypothesis": self.flat_hypothesis,
            "complement_euler": self.complement_euler,
            "flat_prediction_ok": self.flat_prediction_ok,
            "orders_divide_n": self.orders_divide_n,
            "torsion_free": self.torsion_free,
            "pencil_like": self.pencil_like,
            "near_pencil_like": self.near_pencil_like,
            "torsion_free_iff": self.torsion_free_iff,
            "all_hold": self.all_hold(),
        }


def probe_conjecture(inc: IncidenceData) -> ConjectureReport:
    from .pipeline import boundary_graph

    g = boundary_graph(inc)
    group = homology_of_graph(g)
    n = inc.n
    flat = all(
        (p.multiplicity - 2) * (math.gcd(p.multiplicity, n) - 1) == 0
        for p in inc.points
    )
    chi = projective_complement_euler(inc)
    prediction = None
    if flat and chi >= 0:
        prediction = group.torsion == ((n,) * chi if chi else ())
    torsion_free = group.is_torsion_free
    pencil = _pencil_like(inc)
    near = _near_pencil_like(inc)
    return ConjectureReport(
        n=n,
        group=group,
        betti_matches=group.free_rank == betti_formula(inc),
        flat_hypothesis=flat,
        complement_euler=chi,
        flat_prediction_ok=prediction,
        orders_divide_n=all(n % d == 0 for d in group.torsion),
        torsion_free=torsion_free,
        pencil_like=pencil,
        near_pencil_like=near,
        torsion_free_iff=torsion_free == (pencil or near),
    )
