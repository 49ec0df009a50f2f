"""Dense linear algebra over the rationals (fractions.Fraction)."""

from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence

from .poly import DP, ONE, ZERO, MPoly, rational_roots, split_over_q

QMatrix = List[List[Fraction]]


def rref(rows: Sequence[Sequence], ncols: int):
    """Reduced row echelon form; returns ``(rows, pivot_columns)``."""
    A = [[Fraction(x) for x in r] for r in rows]
    piv = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(A)) if A[i][c]), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        piv.append(c)
        r += 1
        if r == len(A):
            break
    return A[:r], piv


def nullspace(rows: Sequence[Sequence], ncols: int) -> List[List[Fraction]]:
    """Basis of ``{x : A x = 0}`` for the matrix with the given rows."""
    R, piv = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, p in zip(R, piv):
            x[p] = -row[f]
        basis.append(x)
    return basis


def rank(rows: Sequence[Sequence], ncols: int) -> int:
    return len(rref(rows, ncols)[1])


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> QMatrix:
    n = len(B[0]) if B else 0
    return [[sum((a * B[k][j] for k, a in enumerate(row)), Fraction(0)) for j in range(n)] for row in A]


def identity(n: int) -> QMatrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def charpoly(A: Sequence[Sequence]) -> MPoly:
    """det(t·I − A) as a polynomial in the variable ``d`` (Faddeev–LeVerrier)."""
    n = len(A)
    M = [[Fraction(0)] * n for _ in range(n)]
    coeffs = [Fraction(1)]
    for k in range(1, n + 1):
        AM = matmul(A, M) if k > 1 else [[Fraction(0)] * n for _ in range(n)]
        M = [[AM[i][j] + (coeffs[-1] if i == j else 0) for j in range(n)] for i in range(n)]
        AM = matmul(A, M)
        c = -sum(AM[i][i] for i in range(n)) / k
        coeffs.append(c)
    p = ZERO
    for k, c in enumerate(coeffs):
        p = p + c * DP ** (n - k)
    return p


def rational_eigenvalues(A: Sequence[Sequence]):
    """``(sorted rational eigenvalues, spectrum_is_rational, characteristic polynomial)``."""
    cp = charpoly(A) if A else ONE
    return rational_roots(cp), split_over_q(cp), cp


def in_span(vectors: Sequence[Sequence], x: Sequence, ncols: int) -> bool:
    return rank(list(vectors) + [list(x)], ncols) == rank(vectors, ncols)


def solve_combination(vectors: Sequence[Sequence], x: Sequence, ncols: int):
    """Coefficients c with Σ c_i vectors_i = x, or None."""
    k = len(vectors)
    rows = [[vectors[i][j] for i in range(k)] + [-Fraction(x[j])] for j in range(ncols)]
    for sol in nullspace(rows, k + 1):
        if sol[k]:
            return [s / sol[k] for s in sol[:k]]
    if not any(x):
        return [Fraction(0)] * k
    return None
