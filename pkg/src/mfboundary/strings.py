"""String graphs: the chains of rational vertices that replace the edges of
a curve-configuration graph.

For parameters (a, b, c) with gcd(a, b, c) = 1 the chain of type
(i, j, k) = (0, 0, 1) is determined by the congruence

    b + lambda * a/(a,c)  =  m1 * c/(a,c),   0 <= lambda < c/(a,c),

whose unique solution gives the first interior multiplicity m1.  When
lambda = 0 the chain is empty (the two ends are joined directly); otherwise
the interior Euler data is the negative continued fraction expansion of
c/(a,c) over lambda and the interior multiplicities follow a three-term
recurrence seeded by m1 and a/(a,c).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidInput, NoSolution, UnsupportedCase


def solve_lambda(a: int, b: int, c: int) -> tuple[int, int]:
    """Solve b + lambda*(a/(a,c)) == m1*(c/(a,c)) with 0 <= lambda < c/(a,c).

    Returns (lambda, m1).  Requires a, b, c >= 1 and gcd(a, b, c) == 1;
    the solution exists and is unique because a/(a,c) is invertible mod
    c/(a,c).
    """
    if a < 1 or b < 1 or c < 1:
        raise InvalidInput(f"string parameters must be positive: ({a}, {b}, {c})")
    if math.gcd(a, b, c) != 1:
        raise InvalidInput(f"string parameters must be coprime: ({a}, {b}, {c})")
    d = math.gcd(a, c)
    a1, c1 = a // d, c // d
    lam = (-b * pow(a1, -1, c1)) % c1
    num = b + lam * a1
    if num % c1 != 0:
        raise NoSolution(f"no admissible lambda for ({a}, {b}, {c})")
    m1 = num // c1
    if m1 < 1:
        raise NoSolution(f"non-positive first multiplicity for ({a}, {b}, {c})")
    return lam, m1


def hj_continued_fraction(p: int, q: int) -> list[int]:
    """Negative (Hirzebruch-Jung) continued fraction of p/q:

        p/q = k1 - 1/(k2 - 1/(... - 1/ks)),  all ki >= 2.

    Requires 0 < q <= p.  Computed by repeated ceiling division.
    """
    if q < 1 or p < q:
        raise InvalidInput(f"need 0 < q <= p, got p={p}, q={q}")
    # a common factor of p and q drops out: the ceiling-division orbit only
    # sees the ratio
    terms = []
    while q:
        k = -(-p // q)
        terms.append(k)
        p, q = q, k * q - p
    return terms


def evaluate_negative_cf(terms: list[int]) -> Fraction:
    """Value of [k1, ..., ks] as k1 - 1/(k2 - 1/(...))."""
    if not terms:
        raise InvalidInput("empty continued fraction")
    value = Fraction(terms[-1])
    for k in reversed(terms[:-1]):
        value = k - 1 / value
    return value


@dataclass(frozen=True)
class StringGraph:
    """One computed chain.

    cf_terms        negative continued fraction of c/(a,c) over lambda,
                    empty when lambda = 0;
    interior_mults  multiplicities of the interior vertices, same length;
    end_mults       (a/(a,c), b/(b,c)), the multiplicities the two attached
                    ends are expected to carry;
    sign            common sign of every edge on the chain.

    Interior vertices carry no Euler numbers here; those are recovered
    later from the multiplicities (for an all-minus chain the local formula
    yields e_i = +k_i, since m_{i-1} + m_{i+1} = k_i * m_i).
    """

    a: int
    b: int
    c: int
    lam: int
    m1: int
    cf_terms: tuple[int, ...]
    interior_mults: tuple[int, ...]
    end_mults: tuple[int, int]
    sign: int

    @property
    def is_double_arrow(self) -> bool:
        return not self.interior_mults


def build_string(a: int, b: int, c: int, sign: int = -1,
                 ijk: tuple[int, int, int] = (0, 0, 1)) -> StringGraph:
    """Compute the chain Str(a, b; c) of type (0, 0, 1).

    Any other (i, j, k) triple is rejected: only the type arising for
    arrangement boundaries is implemented.
    """
    if ijk != (0, 0, 1):
        raise UnsupportedCase(f"string type {ijk} not supported, only (0, 0, 1)")
    if sign not in (1, -1):
        raise InvalidInput("sign must be +1 or -1")
    lam, m1 = solve_lambda(a, b, c)
    d = math.gcd(a, c)
    a1, c1 = a // d, c // d
    ends = (a1, b // math.gcd(b, c))
    if lam == 0:
        return StringGraph(a, b, c, 0, m1, (), (), ends, sign)
    cf = hj_continued_fraction(c1, lam)
    mults = [m1]
    prev = a1  # the multiplicity the chain sees behind its first vertex
    for k in cf[:-1]:
        mults.append(k * mults[-1] - prev)
        prev = mults[-2]
    if any(m < 1 for m in mults):
        raise NoSolution(f"non-positive interior multiplicity for ({a}, {b}, {c})")
    # the recurrence extended across the last vertex must reproduce the
    # multiplicity at the far end; a failure here is a bug, not bad input
    tail = cf[-1] * mults[-1] - (mults[-2] if len(mults) > 1 else a1)
    assert tail == ends[1], (a, b, c, cf, mults, tail, ends)
    return StringGraph(a, b, c, lam, m1, tuple(cf), tuple(mults), ends, sign)
