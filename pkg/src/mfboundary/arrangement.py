"""Central plane arrangements in C^3, handled through their projectivized
line arrangements in the projective plane.

Coordinates are exact rationals.  Lines and points are stored as primitive
integer triples with the first nonzero entry positive, so equality of
projective objects is plain tuple equality.  The combinatorial outcome of an
arrangement is an IncidenceData: the list of intersection points, each with
the set of lines through it.
"""

from __future__ import annotations

import itertools
import json
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import IdenticalLines, InvalidIncidence, InvalidInput, InvalidSize

Triple = tuple[int, int, int]


def _primitive(coeffs: Sequence[Fraction]) -> Triple:
    """Canonical representative of a projective triple: integral, content 1,
    first nonzero entry positive."""
    if len(coeffs) != 3:
        raise InvalidInput(f"expected 3 coordinates, got {len(coeffs)}")
    fracs = [Fraction(c) for c in coeffs]
    if all(f == 0 for f in fracs):
        raise InvalidInput("zero vector does not define a projective object")
    denom = math.lcm(*(f.denominator for f in fracs))
    ints = [int(f * denom) for f in fracs]
    g = math.gcd(*ints)
    ints = [v // g for v in ints]
    lead = next(v for v in ints if v != 0)
    if lead < 0:
        ints = [-v for v in ints]
    return (ints[0], ints[1], ints[2])


def _parse_rational(value) -> Fraction:
    # accepts ints, Fractions and "p/q" strings; floats are rejected on
    # purpose, exactness is the whole point
    if isinstance(value, bool):
        raise InvalidInput(f"not a rational coefficient: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidInput(f"cannot parse rational {value!r}") from exc
    raise InvalidInput(f"not a rational coefficient: {value!r}")


@dataclass(frozen=True)
class ProjLine:
    """A projective line a*x + b*y + c*z = 0 with a 0-based label."""

    coeffs: Triple
    label: int

    @classmethod
    def from_coeffs(cls, coeffs: Sequence, label: int = 0) -> "ProjLine":
        return cls(_primitive([_parse_rational(c) for c in coeffs]), label)

    def contains(self, point: "ProjPoint") -> bool:
        return sum(a * x for a, x in zip(self.coeffs, point.coords)) == 0


@dataclass(frozen=True)
class ProjPoint:
    coords: Triple

    @classmethod
    def from_coords(cls, coords: Sequence) -> "ProjPoint":
        return cls(_primitive([_parse_rational(c) for c in coords]))


def intersect_lines(l1: ProjLine, l2: ProjLine) -> ProjPoint:
    """Intersection point of two distinct lines (cross product of coefficient
    vectors).  Raises IdenticalLines when the lines coincide."""
    a, b = l1.coeffs, l2.coeffs
    cross = (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )
    if cross == (0, 0, 0):
        raise IdenticalLines(f"lines {l1.label} and {l2.label} coincide")
    return ProjPoint(_primitive([Fraction(c) for c in cross]))


@dataclass(frozen=True)
class MultiPoint:
    """An intersection point of the arrangement, recorded combinatorially:
    the sorted tuple of labels of all lines through it."""

    lines: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "lines", tuple(sorted(self.lines)))

    @property
    def multiplicity(self) -> int:
        return len(self.lines)


@dataclass(frozen=True)
class IncidenceData:
    """Incidence combinatorics of an arrangement of n projective lines.

    Invariants checked at construction:
      * every point lists at least two distinct lines, all in range;
      * every unordered pair of lines lies on exactly one common point.

    Points are kept sorted by their line tuple, which keeps everything
    downstream deterministic.
    """

    n: int
    points: tuple[MultiPoint, ...]

    def __post_init__(self):
        object.__setattr__(
            self, "points", tuple(sorted(self.points, key=lambda p: p.lines))
        )
        self._validate()

    def _validate(self):
        if self.n < 1:
            raise InvalidSize(f"need at least one line, got n={self.n}")
        seen_pairs: dict[tuple[int, int], int] = {}
        for idx, pt in enumerate(self.points):
            if pt.multiplicity < 2:
                raise InvalidIncidence(f"point {idx} has fewer than two lines")
            if len(set(pt.lines)) != pt.multiplicity:
                raise InvalidIncidence(f"point {idx} repeats a line")
            for i in pt.lines:
                if not 0 <= i < self.n:
                    raise InvalidIncidence(f"point {idx} references line {i}, out of range")
            for pair in itertools.combinations(pt.lines, 2):
                if pair in seen_pairs:
                    raise InvalidIncidence(
                        f"line pair {pair} appears on points {seen_pairs[pair]} and {idx}"
                    )
                seen_pairs[pair] = idx
        if self.n >= 2:
            for pair in itertools.combinations(range(self.n), 2):
                if pair not in seen_pairs:
                    raise InvalidIncidence(f"line pair {pair} meets no point")

    @property
    def multiplicities(self) -> tuple[int, ...]:
        return tuple(p.multiplicity for p in self.points)

    def points_on_line(self, i: int) -> list[int]:
        return [j for j, p in enumerate(self.points) if i in p.lines]


def incidence_from_lines(lines: Sequence[ProjLine]) -> IncidenceData:
    """Group the pairwise intersections of distinct lines into multiple
    points.  Two pairs meeting at the same projective point merge."""
    if len(lines) < 1:
        raise InvalidSize("need at least one line")
    labels = [l.label for l in lines]
    if labels != list(range(len(lines))):
        raise InvalidInput("line labels must be 0..n-1 in order")
    by_point: dict[Triple, set[int]] = {}
    for l1, l2 in itertools.combinations(lines, 2):
        pt = intersect_lines(l1, l2)
        by_point.setdefault(pt.coords, set()).update((l1.label, l2.label))
    points = tuple(MultiPoint(tuple(sorted(s))) for s in by_point.values())
    return IncidenceData(len(lines), points)


def generate_family(kind: str, n: int) -> IncidenceData:
    """Combinatorial models of the three named families.

    generic      all points double, one per pair of lines;
    pencil       all n lines through a single point;
    near_pencil  lines 0..n-2 through one point, line n-1 generic to them.
    """
    if n < 2:
        raise InvalidSize(f"family {kind!r} needs n >= 2, got {n}")
    if kind == "generic":
        points = tuple(
            MultiPoint(pair) for pair in itertools.combinations(range(n), 2)
        )
    elif kind == "pencil":
        points = (MultiPoint(tuple(range(n))),)
    elif kind == "near_pencil":
        if n < 3:
            raise InvalidSize("near_pencil needs n >= 3")
        big = MultiPoint(tuple(range(n - 1)))
        doubles = tuple(MultiPoint((i, n - 1)) for i in range(n - 1))
        points = (big,) + doubles
    else:
        raise InvalidInput(f"unknown family kind {kind!r}")
    return IncidenceData(n, points)


def is_generic(inc: IncidenceData) -> bool:
    """True when every intersection point is an ordinary double point."""
    return all(p.multiplicity == 2 for p in inc.points)


def moment_curve_lines(n: int) -> list[ProjLine]:
    """n rational lines in general position: x + t*y + t^2*z for t = 0..n-1.

    Any two meet at (t1*t2 : -(t1+t2) : 1), and distinct pairs give distinct
    points, so the resulting arrangement is generic.
    """
    return [ProjLine.from_coeffs((1, t, t * t), t) for t in range(n)]


def random_rational_lines(n: int, rng: random.Random) -> list[ProjLine]:
    """n pairwise distinct lines with small integer coefficients.

    Coefficients are drawn from a deliberately small box so that coincident
    intersections (triple and higher points) actually occur.
    """
    if n < 2:
        raise InvalidSize("need n >= 2")
    seen: set[Triple] = set()
    lines: list[ProjLine] = []
    while len(lines) < n:
        raw = [rng.randint(-2, 2) for _ in range(3)]
        if all(v == 0 for v in raw):
            continue
        triple = _primitive([Fraction(v) for v in raw])
        if triple in seen:
            continue
        seen.add(triple)
        lines.append(ProjLine(triple, len(lines)))
    return lines


# -- JSON input -------------------------------------------------------------

def arrangement_from_json(obj: dict) -> IncidenceData:
    """Accept either explicit lines or bare incidence combinatorics.

      {"lines": [[a,b,c], ...]}        coefficients as ints or "p/q" strings
      {"n": 5, "points": [[0,1,2], ...]}
    """
    if not isinstance(obj, dict):
        raise InvalidInput("arrangement JSON must be an object")
    if "lines" in obj:
        rows = obj["lines"]
        if not isinstance(rows, list) or not rows:
            raise InvalidInput('"lines" must be a non-empty list')
        lines = [ProjLine.from_coeffs(row, i) for i, row in enumerate(rows)]
        for l1, l2 in itertools.combinations(lines, 2):
            if l1.coeffs == l2.coeffs:
                raise IdenticalLines(f"lines {l1.label} and {l2.label} coincide")
        return incidence_from_lines(lines)
    if "points" in obj:
        if "n" not in obj:
            raise InvalidInput('"points" form needs an "n" field')
        n = obj["n"]
        if not isinstance(n, int):
            raise InvalidInput('"n" must be an integer')
        pts = obj["points"]
        if not isinstance(pts, list):
            raise InvalidInput('"points" must be a list')
        return IncidenceData(n, tuple(MultiPoint(tuple(p)) for p in pts))
    raise InvalidInput('arrangement JSON needs "lines" or "points"')


def load_arrangement(path: str) -> IncidenceData:
    with open(path) as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InvalidInput(f"invalid JSON in {path}: {exc}") from exc
    return arrangement_from_json(obj)


def incidence_to_json(inc: IncidenceData) -> dict:
    return {"n": inc.n, "points": [list(p.lines) for p in inc.points]}
