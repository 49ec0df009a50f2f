"""Linear algebra over the Euclidean domain H = k[∂].

Submodules of free modules H^n are stored by their canonical row Hermite
basis: rows in echelon form, pivots monic, entries above a pivot reduced
modulo it.  Two submodules are equal exactly when their bases are equal.
Smith form is used only where invariant factors or complements are needed,
and every unimodular transform it returns is re-checked by multiplication.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

from .poly import D, LAM, ONE, ZERO, MPoly, is_univariate, udivmod, vec_str

Vector = Tuple[MPoly, ...]


def zero_vector(n: int) -> Vector:
    return (ZERO,) * n


def unit_vector(n: int, i: int) -> Vector:
    return tuple(ONE if j == i else ZERO for j in range(n))


def vadd(a: Sequence[MPoly], b: Sequence[MPoly]) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def vsub(a: Sequence[MPoly], b: Sequence[MPoly]) -> Vector:
    return tuple(x - y for x, y in zip(a, b))


def vscale(c, a: Sequence[MPoly]) -> Vector:
    return tuple(c * x for x in a)


def is_zero_vector(a: Sequence[MPoly]) -> bool:
    return not any(a)


def vec_times_matrix(x: Sequence[MPoly], rows: Sequence[Sequence[MPoly]], ncols: int) -> Vector:
    """Row vector times a matrix given by its rows."""
    out = [ZERO] * ncols
    for xi, row in zip(x, rows):
        if xi:
            for j, r in enumerate(row):
                if r:
                    out[j] = out[j] + xi * r
    return tuple(out)


def lambda_parts(v: Sequence[MPoly], var=LAM) -> dict:
    """Split a vector with coefficients in k[∂, λ] into {power of λ: vector over H}."""
    out: dict = {}
    n = len(v)
    for j, p in enumerate(v):
        for k, c in p.coeffs(var).items():
            out.setdefault(k, [ZERO] * n)[j] = c
    return {k: tuple(w) for k, w in sorted(out.items())}


class PolyMatrix:
    """Rectangular matrix with entries in k[∂]."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries, cols: int | None = None):
        ent = tuple(tuple(MPoly.coerce(x) for x in row) for row in entries)
        if cols is None:
            cols = len(ent[0]) if ent else 0
        for row in ent:
            if len(row) != cols:
                raise ValueError("ragged matrix")
            for x in row:
                if not is_univariate(x, D):
                    raise ValueError(f"matrix entry {x} involves λ or μ")
        self.rows = len(ent)
        self.cols = cols
        self.entries = ent

    @classmethod
    def identity(cls, n):
        return cls([unit_vector(n, i) for i in range(n)], n)

    @classmethod
    def zeros(cls, r, c):
        return cls([zero_vector(c) for _ in range(r)], c)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i) -> Vector:
        return self.entries[i]

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix([tuple(self.entries[i][j] for i in range(self.rows)) for j in range(self.cols)], self.rows)

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        return PolyMatrix([vec_times_matrix(r, other.entries, other.cols) for r in self.entries], other.cols)

    def __eq__(self, other):
        return isinstance(other, PolyMatrix) and (self.rows, self.cols, self.entries) == (
            other.rows,
            other.cols,
            other.entries,
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def is_diagonal(self) -> bool:
        return all(not self.entries[i][j] for i in range(self.rows) for j in range(self.cols) if i != j)

    def __str__(self):
        return "[" + ", ".join(vec_str(r) for r in self.entries) + "]"

    __repr__ = __str__


# -- echelon machinery -------------------------------------------------------
def _deg(p: MPoly) -> int:
    return p.degree(D)


def _row_sub(a: list, b: Sequence[MPoly], q: MPoly) -> None:
    for j, bj in enumerate(b):
        if bj:
            a[j] = a[j] - q * bj


def _echelon(rows: Sequence[Sequence[MPoly]], ncols: int, track: bool = False):
    """Row-reduce to canonical Hermite form.

    Returns ``(H, U, pivots)`` where ``U·A = H`` (when ``track``), the first
    ``len(pivots)`` rows of ``H`` form the basis, the rest are zero.
    """
    A = [list(r) for r in rows]
    m = len(A)
    U = [list(unit_vector(m, i)) for i in range(m)] if track else None
    pivots: List[int] = []
    prow = 0
    for col in range(ncols):
        if prow >= m:
            break
        while True:
            nz = [i for i in range(prow, m) if A[i][col]]
            if not nz:
                break
            p = min(nz, key=lambda i: (_deg(A[i][col]), i))
            clean = True
            for i in nz:
                if i == p:
                    continue
                q, r = udivmod(A[i][col], A[p][col])
                _row_sub(A[i], A[p], q)
                if track:
                    _row_sub(U[i], U[p], q)
                if r:
                    clean = False
            if clean:
                break
        nz = [i for i in range(prow, m) if A[i][col]]
        if not nz:
            continue
        p = nz[0]
        if p != prow:
            A[p], A[prow] = A[prow], A[p]
            if track:
                U[p], U[prow] = U[prow], U[p]
        lc = A[prow][col].leading_coefficient(D).constant_term()
        if lc != 1:
            inv = 1 / lc
            A[prow] = [x * inv for x in A[prow]]
            if track:
                U[prow] = [x * inv for x in U[prow]]
        for i in range(prow):
            if A[i][col]:
                q, _ = udivmod(A[i][col], A[prow][col])
                if q:
                    _row_sub(A[i], A[prow], q)
                    if track:
                        _row_sub(U[i], U[prow], q)
        pivots.append(col)
        prow += 1
    H = [tuple(r) for r in A]
    return H, ([tuple(r) for r in U] if track else None), pivots


# -- submodules ------------------------------------------------------------
@dataclass(frozen=True)
class Submodule:
    """Finitely generated submodule of H^ambient_rank in canonical Hermite form."""

    ambient_rank: int
    basis: Tuple[Vector, ...]
    pivots: Tuple[int, ...] = field(default=(), compare=False)

    @property
    def rank(self) -> int:
        return len(self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def is_full(self) -> bool:
        return self.rank == self.ambient_rank and all(
            self.basis[i][self.pivots[i]] == ONE for i in range(self.rank)
        )

    def matrix(self) -> PolyMatrix:
        return PolyMatrix(self.basis, self.ambient_rank)

    def __contains__(self, x) -> bool:
        return membership(x, self)

    def __le__(self, other: "Submodule") -> bool:
        return all(membership(b, other) for b in self.basis)

    def __str__(self):
        return "span{" + ", ".join(vec_str(b) for b in self.basis) + "}"


def span(rows: Sequence[Sequence[MPoly]], ambient_rank: int) -> Submodule:
    return hermite_form(PolyMatrix([tuple(r) for r in rows], ambient_rank) if rows else PolyMatrix.zeros(0, ambient_rank))


def zero_submodule(n: int) -> Submodule:
    return Submodule(n, (), ())


def full_submodule(n: int) -> Submodule:
    return Submodule(n, tuple(unit_vector(n, i) for i in range(n)), tuple(range(n)))


def coordinate_submodule(n: int, indices) -> Submodule:
    idx = sorted(indices)
    return Submodule(n, tuple(unit_vector(n, i) for i in idx), tuple(idx))


def hermite_form(A: PolyMatrix) -> Submodule:
    """Canonical Hermite basis of the row span of ``A``."""
    H, _, piv = _echelon(A.entries, A.cols)
    return Submodule(A.cols, tuple(H[: len(piv)]), tuple(piv))


def reduce(x: Sequence[MPoly], S: Submodule):
    """Reduce ``x`` by the Hermite basis of ``S``.

    Returns ``(remainder, coefficients)`` with ``x = Σ c_i·basis_i + remainder``;
    the remainder is zero exactly when ``x ∈ S``.
    """
    r = list(x)
    coeffs = [ZERO] * S.rank
    for i, (b, c) in enumerate(zip(S.basis, S.pivots)):
        if r[c]:
            q, _ = udivmod(r[c], b[c])
            if q:
                coeffs[i] = q
                _row_sub(r, b, q)
    return tuple(r), tuple(coeffs)


def membership(x: Sequence[MPoly], S: Submodule) -> bool:
    if len(x) != S.ambient_rank:
        raise ValueError("vector does not live in the ambient module")
    rem, _ = reduce(x, S)
    return is_zero_vector(rem)


def coordinates(x: Sequence[MPoly], S: Submodule) -> Vector:
    """Coordinates of ``x ∈ S`` with respect to the Hermite basis; ValueError if ``x ∉ S``."""
    rem, c = reduce(x, S)
    if not is_zero_vector(rem):
        raise ValueError(f"{vec_str(x)} is not in the submodule")
    return c


def coordinates_lambda(v: Sequence[MPoly], S: Submodule) -> Vector:
    """Coordinates of a vector with coefficients in k[∂, λ] lying in S[λ]."""
    out = [ZERO] * S.rank
    lam = MPoly.var(LAM)
    for k, w in lambda_parts(v).items():
        c = coordinates(w, S)
        f = lam**k
        for i, ci in enumerate(c):
            if ci:
                out[i] = out[i] + ci * f
    return tuple(out)


@dataclass(frozen=True)
class SmithData:
    D: PolyMatrix
    U: PolyMatrix
    V: PolyMatrix
    V_inv: PolyMatrix

    @property
    def diagonal(self) -> List[MPoly]:
        return [self.D[i, i] for i in range(min(self.D.rows, self.D.cols))]


def smith_form(A: PolyMatrix) -> SmithData:
    """Smith normal form ``U·A·V = D`` with monic diagonal and ``d_i | d_{i+1}``."""
    m, n = A.rows, A.cols
    M = [list(r) for r in A.entries]
    U = [list(unit_vector(m, i)) for i in range(m)]
    V = [list(unit_vector(n, i)) for i in range(n)]
    Vi = [list(unit_vector(n, i)) for i in range(n)]

    def swap_cols(a, b):
        for row in M:
            row[a], row[b] = row[b], row[a]
        for row in V:
            row[a], row[b] = row[b], row[a]
        Vi[a], Vi[b] = Vi[b], Vi[a]

    def col_sub(j, t, q):  # col_j -= q * col_t
        for row in M:
            if row[t]:
                row[j] = row[j] - q * row[t]
        for row in V:
            if row[t]:
                row[j] = row[j] - q * row[t]
        for k in range(n):  # inverse: row_t(Vi) += q * row_j(Vi)
            if Vi[j][k]:
                Vi[t][k] = Vi[t][k] + q * Vi[j][k]

    for t in range(min(m, n)):
        while True:
            cands = [(_deg(M[i][j]), j, i) for i in range(t, m) for j in range(t, n) if M[i][j]]
            if not cands:
                break
            _, j0, i0 = min(cands)
            if i0 != t:
                M[i0], M[t] = M[t], M[i0]
                U[i0], U[t] = U[t], U[i0]
            if j0 != t:
                swap_cols(j0, t)
            piv = M[t][t]
            for i in range(t + 1, m):
                if M[i][t]:
                    q, _ = udivmod(M[i][t], piv)
                    _row_sub(M[i], M[t], q)
                    _row_sub(U[i], U[t], q)
            for j in range(t + 1, n):
                if M[t][j]:
                    q, _ = udivmod(M[t][j], piv)
                    col_sub(j, t, q)
            if any(M[i][t] for i in range(t + 1, m)) or any(M[t][j] for j in range(t + 1, n)):
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if M[i][j] and udivmod(M[i][j], piv)[1]),
                None,
            )
            if bad is None:
                break
            M[t] = [a + b for a, b in zip(M[t], M[bad])]
            U[t] = [a + b for a, b in zip(U[t], U[bad])]
        if t < m and t < n and M[t][t]:
            lc = M[t][t].leading_coefficient(D).constant_term()
            if lc != 1:
                inv = 1 / lc
                M[t] = [x * inv for x in M[t]]
                U[t] = [x * inv for x in U[t]]
    data = SmithData(PolyMatrix(M, n), PolyMatrix(U, m), PolyMatrix(V, n), PolyMatrix(Vi, n))
    if data.U @ A @ data.V != data.D or data.V_inv @ data.V != PolyMatrix.identity(n):
        raise AssertionError("Smith form certificate failed")  # pragma: no cover
    return data


def kernel(A: PolyMatrix) -> Submodule:
    """Left kernel ``{x ∈ H^rows : x·A = 0}`` in canonical form."""
    H, U, piv = _echelon(A.entries, A.cols, track=True)
    rows = U[len(piv):]
    K = span(rows, A.rows)
    for b in K.basis:
        if any(vec_times_matrix(b, A.entries, A.cols)):
            raise AssertionError("kernel certificate failed")  # pragma: no cover
    return K


def saturate(S: Submodule) -> Submodule:
    """Largest T ⊇ S with T/S torsion: the left kernel of the right kernel of S."""
    n = S.ambient_rank
    if S.is_zero():
        return S
    B = S.matrix()
    right = kernel(B.transpose())  # columns y with B·y = 0
    if right.is_zero():
        return full_submodule(n)
    N = right.matrix().transpose()  # n × k
    return kernel(N)


def is_saturated(S: Submodule) -> bool:
    return saturate(S) == S


def intersect(S: Submodule, T: Submodule) -> Submodule:
    if S.ambient_rank != T.ambient_rank:
        raise ValueError("ambient ranks differ")
    n = S.ambient_rank
    if S.is_zero() or T.is_zero():
        return zero_submodule(n)
    stacked = PolyMatrix(list(S.basis) + list(T.basis), n)
    K = kernel(stacked)
    rows = [vec_times_matrix(k[: S.rank], S.basis, n) for k in K.basis]
    return span(rows, n)


def add(S: Submodule, T: Submodule) -> Submodule:
    return span(list(S.basis) + list(T.basis), S.ambient_rank)


def quotient_presentation(S: Submodule):
    """``(free_rank, torsion_invariants)`` of H^n / S from the Smith form of the basis."""
    n = S.ambient_rank
    if S.is_zero():
        return n, []
    sd = smith_form(S.matrix())
    torsion = [d for d in sd.diagonal if d and d.degree(D) > 0]
    return n - S.rank, torsion


@dataclass(frozen=True)
class QuotientBasis:
    """Free basis of H^n / S for saturated S.

    ``kept`` lists the ambient coordinates that name the new generators,
    ``lifts`` are representatives in H^n and ``projection`` is the n × q matrix
    sending H^n onto the quotient coordinates.
    """

    kept: Tuple[int, ...]
    lifts: Tuple[Vector, ...]
    projection: PolyMatrix
    unit_pivots: bool

    def project(self, x: Sequence[MPoly]) -> Vector:
        return vec_times_matrix(x, self.projection.entries, self.projection.cols)


def quotient_basis(S: Submodule) -> QuotientBasis:
    """Choose a free basis of H^n/S; S must be saturated.

    Coordinates outside the support of S are kept untouched.  When every
    Hermite pivot is 1 the complement of the pivot columns is used;
    otherwise the support part is re-based through its Smith form.
    """
    n = S.ambient_rank
    piv = S.pivots
    kept = tuple(j for j in range(n) if j not in piv)
    q = len(kept)
    index = {c: k for k, c in enumerate(kept)}
    if all(S.basis[i][c] == ONE for i, c in enumerate(piv)):
        proj = [[ZERO] * q for _ in range(n)]
        for c in kept:
            proj[c][index[c]] = ONE
        for b, c in zip(S.basis, piv):
            for j in kept:
                if b[j]:
                    proj[c][index[j]] = -b[j]
        lifts = tuple(unit_vector(n, c) for c in kept)
        return QuotientBasis(kept, lifts, PolyMatrix(proj, q), True)
    support = sorted({j for b in S.basis for j in range(n) if b[j]})
    outside = [j for j in range(n) if j not in support]
    s = len(support)
    sub = PolyMatrix([tuple(b[j] for j in support) for b in S.basis], s)
    sd = smith_form(sub)
    r = S.rank
    if any(d != ONE for d in sd.diagonal[:r]):
        raise ValueError("submodule is not saturated")
    # new generators from the support occupy the non-pivot support slots, in order
    slots = [c for c in kept if c in support]
    proj = [[ZERO] * q for _ in range(n)]
    lifts: List[Vector] = [zero_vector(n)] * q
    for c in outside:
        proj[c][index[c]] = ONE
        lifts[index[c]] = unit_vector(n, c)
    for t, slot in enumerate(slots):
        col = r + t
        for a, j in enumerate(support):
            proj[j][index[slot]] = sd.V[a, col]
        lift = [ZERO] * n
        for a, j in enumerate(support):
            lift[j] = sd.V_inv[col, a]
        lifts[index[slot]] = tuple(lift)
    qb = QuotientBasis(kept, tuple(lifts), PolyMatrix(proj, q), False)
    for b in S.basis:
        if any(qb.project(b)):
            raise AssertionError("quotient projection does not kill the submodule")  # pragma: no cover
    for k, lift in enumerate(qb.lifts):
        if qb.project(lift) != unit_vector(q, k):
            raise AssertionError("quotient lift certificate failed")  # pragma: no cover
    return qb


def content(x: Sequence[MPoly]) -> MPoly:
    from .poly import ugcd

    g = ZERO
    for p in x:
        if p:
            g = ugcd(g, p) if g else ugcd(p, ZERO)
    return g


def poly_det(rows: Sequence[Sequence[MPoly]]) -> MPoly:
    """Division-free determinant (Laplace expansion over column subsets)."""
    n = len(rows)
    if n == 0:
        return ONE
    memo = {}

    def minor(r: int, cols: Tuple[int, ...]) -> MPoly:
        if r == n:
            return ONE
        key = cols
        if key in memo:
            return memo[key]
        total = ZERO
        for pos, c in enumerate(cols):
            a = rows[r][c]
            if a:
                sub = minor(r + 1, cols[:pos] + cols[pos + 1:])
                if sub:
                    term = a * sub
                    total = total + term if pos % 2 == 0 else total - term
        memo[key] = total
        return total

    return minor(0, tuple(range(n)))
