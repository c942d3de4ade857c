"""Closed-form algebra for boundaries of generic arrangements.

The compact plumbing graph of a generic n-line arrangement has n line
vertices of Euler number -1 and one vertex of Euler number -n per pair of
lines, the pair vertex joined to its smaller line by a - edge and to its
larger line by a + edge.  Its intersection matrix is the block matrix

    A_n = [ -E_n     -X_n^T ]
          [ -X_n   -n E_{n(n-1)/2} ]

where the pair-by-line matrix X_n has a row per pair (i, j), i < j, in
lexicographic order, with +1 in column i and -1 in column j, defined
inductively by X_2 = (1 -1) and

    X_n = [ ones   -E_{n-1} ]
          [ zeros   X_{n-1} ].

Everything here is exact integer arithmetic on plain nested lists; matrix
identities and the Smith normal form E_{2n-2} (+) n*E_{(n-2)(n-3)/2} (+) 0
feed the closed-form homology answer.
"""

from __future__ import annotations

from .errors import InvalidSize
from .homology import AbelianGroup

Matrix = list[list[int]]


def _zeros(r: int, c: int) -> Matrix:
    return [[0] * c for _ in range(r)]


def _eye(k: int, scale: int = 1) -> Matrix:
    out = _zeros(k, k)
    for i in range(k):
        out[i][i] = scale
    return out


def _neg(M: Matrix) -> Matrix:
    return [[-v for v in row] for row in M]


def transpose(M: Matrix) -> Matrix:
    return [list(col) for col in zip(*M)]


def matmul(A: Matrix, B: Matrix) -> Matrix:
    if not A or not B or len(A[0]) != len(B):
        raise InvalidSize("matrix dimensions do not match")
    Bt = transpose(B)
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matsub(A: Matrix, B: Matrix) -> Matrix:
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def _block(tl: Matrix, tr: Matrix, bl: Matrix, br: Matrix) -> Matrix:
    top = [rl + rr for rl, rr in zip(tl, tr)]
    bottom = [rl + rr for rl, rr in zip(bl, br)]
    return top + bottom


def build_Xn(n: int) -> Matrix:
    """The pair-by-line matrix, built by the inductive block definition."""
    if n < 2:
        raise InvalidSize(f"X_n needs n >= 2, got {n}")
    if n == 2:
        return [[1, -1]]
    prev = build_Xn(n - 1)
    top = [[1] + row for row in _neg(_eye(n - 1))]
    bottom = [[0] + row for row in prev]
    return top + bottom


def build_Bn(n: int) -> Matrix:
    """B_n = n E - X_n X_n^T, the pair-pair Gram complement."""
    X = build_Xn(n)
    k = len(X)
    return matsub(_eye(k, n), matmul(X, transpose(X)))


def build_An(n: int) -> Matrix:
    """Intersection matrix of the compact generic boundary graph."""
    if n < 2:
        raise InvalidSize(f"A_n needs n >= 2, got {n}")
    X = build_Xn(n)
    k = len(X)
    return _block(_eye(n, -1), _neg(transpose(X)), _neg(X), _eye(k, -n))


def check_lemma_identities(n: int) -> dict[str, bool]:
    """The four block identities used to diagonalize A_n:

      (1) X_n X_n^T has the block form [[J + E, -X'^T], [-X', X' X'^T]]
          with X' = X_{n-1};
      (2) X_n^T X_n = n E - J;
      (3) B_n has the block form [[X'^T X', X'^T], [X', n E - X' X'^T]];
      (4) B_n X_n = 0, and (n E - X' X'^T) X' = X'.
    """
    if n < 3:
        raise InvalidSize(f"lemma identities need n >= 3, got {n}")
    X = build_Xn(n)
    Xp = build_Xn(n - 1)
    kp = len(Xp)
    out = {}

    gram = matmul(X, transpose(X))
    expect1 = _block(
        [[1 + (1 if a == b else 0) for b in range(n - 1)] for a in range(n - 1)],
        _neg(transpose(Xp)),
        _neg(Xp),
        matmul(Xp, transpose(Xp)),
    )
    out["gram_blocks"] = gram == expect1

    # n E - J has n-1 on the diagonal and -1 off it
    out["normal_equations"] = matmul(transpose(X), X) == [
        [n - 1 if a == b else -1 for b in range(n)] for a in range(n)
    ]

    B = build_Bn(n)
    expect3 = _block(
        matmul(transpose(Xp), Xp),
        transpose(Xp),
        Xp,
        matsub(_eye(kp, n), matmul(Xp, transpose(Xp))),
    )
    out["complement_blocks"] = B == expect3

    out["annihilation"] = matmul(B, X) == _zeros(len(B), n) and matmul(
        matsub(_eye(kp, n), matmul(Xp, transpose(Xp))), Xp
    ) == Xp
    return out


def expected_An_factors(n: int) -> tuple[tuple[int, ...], int]:
    """(invariant factors, corank) of A_n: 2n-2 ones, (n-2)(n-3)/2 copies
    of n, and n-1 zero columns."""
    if n < 2:
        raise InvalidSize(f"need n >= 2, got {n}")
    ones = 2 * n - 2
    ns = (n - 2) * (n - 3) // 2
    size = n + n * (n - 1) // 2
    return (1,) * ones + (n,) * ns, size - ones - ns


def generic_h1_closed_form(n: int) -> AbelianGroup:
    """H_1 of the boundary for a generic n-line arrangement:
    Z^(n(n-1)/2) (+) (Z_n)^((n-2)(n-3)/2)."""
    if n < 2:
        raise InvalidSize(f"need n >= 2, got {n}")
    return AbelianGroup.cyclic_powers(n * (n - 1) // 2, n, (n - 2) * (n - 3) // 2)
