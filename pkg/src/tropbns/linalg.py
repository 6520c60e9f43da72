"""Exact rational linear algebra on small dense matrices.

Vectors and matrices are plain tuples/lists of ``int`` or ``Fraction``.
"""

from fractions import Fraction
from math import gcd
from typing import Sequence

Vector = tuple


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def rref(rows: Sequence[Sequence], ncols: int | None = None):
    """Reduced row echelon form over Q.

    Returns ``(reduced_rows, pivot_columns)``; zero rows are dropped.
    """
    mat = [[Fraction(x) for x in r] for r in rows]
    if ncols is None:
        ncols = len(mat[0]) if mat else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        p = mat[r][c]
        mat[r] = [x / p for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def rank(rows: Sequence[Sequence], ncols: int | None = None) -> int:
    return len(rref(rows, ncols)[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[tuple]:
    """Basis of ``{x : A x = 0}`` as primitive integer vectors."""
    red, pivots = rref(rows, ncols) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, p in zip(red, pivots):
            x[p] = -row[f]
        basis.append(primitive(x))
    return basis


def primitive(v: Sequence) -> tuple:
    """Scale a nonzero rational vector to the primitive integer vector on its ray."""
    fr = [Fraction(x) for x in v]
    den = 1
    for x in fr:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return tuple(0 for _ in ints)
    return tuple(x // g for x in ints)


def span_basis(vectors: Sequence[Sequence], n: int) -> list[tuple]:
    """Primitive integer basis (echelon) of the rational span of ``vectors``."""
    red, _ = rref(vectors, n) if vectors else ([], [])
    return [primitive(r) for r in red]


def orth_complement(vectors: Sequence[Sequence], n: int) -> list[tuple]:
    return nullspace(list(vectors), n) if vectors else [
        tuple(int(i == j) for j in range(n)) for i in range(n)]


def in_span(v: Sequence, basis: Sequence[Sequence], n: int) -> bool:
    if not any(v):
        return True
    return rank(list(basis) + [list(v)], n) == rank(basis, n) if basis else False


def mat_vec(A: Sequence[Sequence], x: Sequence) -> tuple:
    return tuple(dot(row, x) for row in A)


def mat_mul(A, B):
    cols = list(zip(*B))
    return [[dot(r, c) for c in cols] for r in A]


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def det(A: Sequence[Sequence]):
    """Exact determinant by fraction-free elimination."""
    n = len(A)
    if n == 0:
        return 1
    red = [[Fraction(x) for x in r] for r in A]
    sign = 1
    result = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if red[i][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            red[c], red[piv] = red[piv], red[c]
            sign = -sign
        p = red[c][c]
        result *= p
        for i in range(c + 1, n):
            f = red[i][c] / p
            if f:
                red[i] = [a - f * b for a, b in zip(red[i], red[c])]
    out = sign * result
    return int(out) if out.denominator == 1 else out
