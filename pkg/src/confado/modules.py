"""Conformal modules: action tables, irreducibles, submodule search, triangular series.

A module of rank m over an algebra of rank n is stored as
``table[i][j] = (q_1, …, q_m)`` with ``e_i λ u_j = Σ_k q_k(∂, λ) u_k``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

from . import qlinalg
from .algebra import (
    CUR,
    VIR,
    VIRCUR,
    CheckResult,
    ConformalAlgebra,
    LieAlgebraFD,
    LieRep,
    Summand,
    check_action,
    commutant,
    pair,
    trivial_part,
    annihilator,
)
from .errors import IncompatibleSpec, NoIrreducibleFound, NonSplitSpectrum, NotModule, NotSaturated
from .hmodule import (
    PolyMatrix,
    QuotientBasis,
    Submodule,
    Vector,
    add,
    coordinates,
    coordinates_lambda,
    is_saturated,
    kernel,
    lambda_parts,
    membership,
    poly_det,
    quotient_basis,
    quotient_presentation,
    saturate,
    span,
    unit_vector,
    vec_times_matrix,
    zero_submodule,
)
from .poly import D, DP, LAM, LP, MU, ONE, ZERO, MPoly, rational_roots, rename, split_over_q, ugcd, vec_str


@dataclass(frozen=True, eq=False)
class ConformalModule:
    algebra: ConformalAlgebra
    table: Tuple[Tuple[Tuple[MPoly, ...], ...], ...]
    names: Tuple[str, ...] = ()
    spec: Optional["IrreducibleSpec"] = None

    def __post_init__(self):
        m = len(self.table[0]) if self.table else 0
        if len(self.table) != self.algebra.rank:
            raise ValueError("one action row per algebra generator is required")
        for row in self.table:
            if len(row) != m or any(len(cell) != m for cell in row):
                raise ValueError("action table must be n × m × m")
        if not self.names:
            object.__setattr__(self, "names", tuple(f"u{j + 1}" for j in range(m)))

    @classmethod
    def from_table(cls, algebra, table, names=(), spec=None, rank=None) -> "ConformalModule":
        if rank == 0 or (rank is None and table and not table[0]):
            t = tuple(() for _ in range(algebra.rank))
            return cls(algebra, t, (), spec)
        t = tuple(tuple(tuple(MPoly.coerce(p) for p in cell) for cell in row) for row in table)
        return cls(algebra, t, tuple(names), spec)

    @property
    def rank(self) -> int:
        return len(self.names)

    def act(self, a: Sequence[MPoly], x: Sequence[MPoly], var: MPoly = LP) -> Vector:
        """a λ x for an algebra element a and a module element x."""
        return pair(self.table, a, x, var, self.rank)

    def act_gen(self, i: int, x: Sequence[MPoly], var: MPoly = LP) -> Vector:
        return self.act(self.algebra.generator(i), x, var)

    def generator(self, j: int) -> Vector:
        return unit_vector(self.rank, j)

    def __eq__(self, other):
        return isinstance(other, ConformalModule) and self.algebra == other.algebra and self.table == other.table

    def __hash__(self):
        return hash((self.algebra, self.table))

    def __str__(self):
        lines = [f"module of rank {self.rank} over rank-{self.algebra.rank} algebra"]
        for i in range(self.algebra.rank):
            for j in range(self.rank):
                if any(self.table[i][j]):
                    lines.append(f"  {self.algebra.names[i]} λ {self.names[j]} = {vec_str(self.table[i][j])}")
        return "\n".join(lines)


def adjoint(C: ConformalAlgebra) -> ConformalModule:
    return ConformalModule(C, C.table, C.names)


def zero_module(C: ConformalAlgebra, m: int) -> ConformalModule:
    return ConformalModule.from_table(C, _zero_table_mod(C.rank, m), rank=m)


def _zero_table_mod(n: int, m: int):
    return [[[ZERO] * m for _ in range(m)] for _ in range(n)]


def check_module(M: ConformalModule, over: Optional[Sequence[int]] = None) -> CheckResult:
    """Exact module identity a λ (b μ u) − b μ (a λ u) = [a λ b]_{λ+μ} u on generators."""
    if M.rank == 0:
        return CheckResult(True)
    return check_action(M.algebra.table, M.table, M.algebra.rank, M.rank, over)


def require_module(M: ConformalModule) -> ConformalModule:
    res = check_module(M)
    if not res:
        raise NotModule("action table is not a conformal module: " + res.describe(), res)
    return M


# -- the classified irreducibles ---------------------------------------------
M_ALPHA_DELTA, CUR_U, M_ALPHA_DELTA_U = "M", "CurU", "MU"


@dataclass(frozen=True)
class IrreducibleSpec:
    kind: str
    alpha: Optional[Fraction] = None
    delta: Optional[Fraction] = None
    rep: Optional[LieRep] = None

    @classmethod
    def m(cls, alpha, delta) -> "IrreducibleSpec":
        return cls(M_ALPHA_DELTA, Fraction(alpha), Fraction(delta))

    @classmethod
    def cur(cls, rep: LieRep) -> "IrreducibleSpec":
        return cls(CUR_U, rep=rep)

    @classmethod
    def mu(cls, alpha, delta, rep: LieRep) -> "IrreducibleSpec":
        return cls(M_ALPHA_DELTA_U, Fraction(alpha), Fraction(delta), rep)

    @property
    def rank(self) -> int:
        return 1 if self.kind == M_ALPHA_DELTA else self.rep.dim

    def is_irreducible(self) -> bool:
        if self.kind == M_ALPHA_DELTA:
            return self.delta != 0
        if self.kind == CUR_U:
            return self.rep.is_irreducible()
        if self.rep.is_trivial() and self.rep.dim == 1:
            return self.delta != 0
        return self.rep.is_irreducible() and not self.rep.is_trivial()

    def __str__(self):
        if self.kind == M_ALPHA_DELTA:
            return f"M(alpha={self.alpha}, delta={self.delta})"
        if self.kind == CUR_U:
            return f"Cur U (dim {self.rep.dim})"
        return f"M(alpha={self.alpha}, delta={self.delta}, U dim {self.rep.dim})"


_COMPATIBLE = {M_ALPHA_DELTA: (VIR,), CUR_U: (CUR,), M_ALPHA_DELTA_U: (VIRCUR,)}


def _summand_for(L: ConformalAlgebra, kinds: Sequence[str], summand: Optional[Summand]) -> Summand:
    if summand is not None:
        return summand
    if L.split is None:
        raise IncompatibleSpec("algebra carries no split structure; pass the summand explicitly")
    for s in L.split.summands:
        if s.kind in kinds:
            return s
    raise IncompatibleSpec(f"no summand of kind {'/'.join(kinds)} in the algebra")


def make_irreducible(L: ConformalAlgebra, spec: IrreducibleSpec, summand: Optional[Summand] = None) -> ConformalModule:
    """The module of the given spec; generators outside the summand act by zero."""
    s = _summand_for(L, _COMPATIBLE[spec.kind], summand)
    if s.kind not in _COMPATIBLE[spec.kind]:
        raise IncompatibleSpec(f"spec {spec.kind} does not fit a {s.kind} summand")
    d = spec.rank
    if spec.rep is not None and spec.rep.lie.dim != len(s.current_indices):
        raise IncompatibleSpec("representation dimension does not match the current part")
    t = _zero_table_mod(L.rank, d)
    if spec.kind in (M_ALPHA_DELTA, M_ALPHA_DELTA_U):
        v = s.virasoro_index
        f = spec.alpha + DP + spec.delta * LP
        for j in range(d):
            t[v][j][j] = f
    if spec.kind in (CUR_U, M_ALPHA_DELTA_U):
        for a, gi in enumerate(s.current_indices):
            mat = spec.rep.matrices[a]
            for j in range(d):
                for k in range(d):
                    t[gi][j][k] = MPoly.const(mat[k][j])
    M = ConformalModule.from_table(L, t, ("u",) if d == 1 else tuple(f"u{j + 1}" for j in range(d)), spec)
    return require_module(M)


def recognize_spec(M: ConformalModule, summand: Optional[Summand] = None) -> Optional[IrreducibleSpec]:
    """Read the spec off a module whose table already has the classified shape; None otherwise."""
    s = summand or _nontrivial_summand(M)
    if s is None:
        return None
    m = M.rank
    alpha = delta = None
    if s.has_virasoro:
        cells = M.table[s.virasoro_index]
        f = cells[0][0]
        if f.degree(D) != 1 or f.coeff(D, 1) != ONE:
            return None
        rest = f - DP
        if rest.degree(D) > 0 or rest.degree(LAM) > 1:
            return None
        alpha, delta = rest.coeff(LAM, 0).constant_term(), rest.coeff(LAM, 1).constant_term()
        for j in range(m):
            for k in range(m):
                if cells[j][k] != (f if j == k else ZERO):
                    return None
    rep = None
    if s.current_indices:
        mats = []
        for gi in s.current_indices:
            cells = M.table[gi]
            if any(not p.is_constant() for row in cells for p in row):
                return None
            mats.append([[cells[j][k].constant_term() for j in range(m)] for k in range(m)])
        rep = LieRep(s.lie or _lie_from_block(M.algebra, s), tuple(tuple(tuple(r) for r in mm) for mm in mats))
        if not rep.check():
            return None
    if s.kind == VIR:
        return IrreducibleSpec.m(alpha, delta) if m == 1 else None
    if s.kind == CUR:
        return IrreducibleSpec.cur(rep)
    return IrreducibleSpec.mu(alpha, delta, rep)


def _lie_from_block(C: ConformalAlgebra, s: Summand) -> LieAlgebraFD:
    from .algebra import lie_of_block

    g = lie_of_block(C, s.current_indices)
    if g is None:
        raise IncompatibleSpec("current block is not a Lie algebra")
    return g


def is_trivial(M: ConformalModule, over: Optional[Sequence[int]] = None) -> bool:
    gens = range(M.algebra.rank) if over is None else over
    return not any(p for i in gens for cell in M.table[i] for p in cell)


def summand_generators(s: Summand) -> Tuple[int, ...]:
    return s.indices


def _nontrivial_summand(M: ConformalModule, kinds=(VIR, VIRCUR, CUR)) -> Optional[Summand]:
    if M.algebra.split is None:
        return None
    for s in M.algebra.split.summands:
        if s.kind in kinds and not is_trivial(M, s.indices):
            return s
    for s in M.algebra.split.summands:
        if s.kind in kinds:
            return s
    return None


def act_submodule(M: ConformalModule, A: Submodule, N: Submodule) -> Submodule:
    """H-span of all λ-coefficients of a λ x, a ∈ A, x ∈ N."""
    rows = []
    for a in A.basis:
        for x in N.basis:
            rows.extend(w for w in lambda_parts(M.act(a, x)).values() if any(w))
    return span(rows, M.rank)


def invariant(M: ConformalModule, S: Submodule, over: Optional[Sequence[int]] = None) -> bool:
    """Is S closed under the action of the listed generators (default: all)?"""
    gens = range(M.algebra.rank) if over is None else over
    for i in gens:
        for x in S.basis:
            for w in lambda_parts(M.act_gen(i, x)).values():
                if not membership(w, S):
                    return False
    return True


def submodule_module(M: ConformalModule, S: Submodule, over: Optional[Sequence[int]] = None) -> ConformalModule:
    """S as a module on its Hermite basis; generators outside ``over`` are dropped to zero."""
    gens = set(range(M.algebra.rank) if over is None else over)
    if not invariant(M, S, gens):
        raise NotModule("submodule is not invariant under the action")
    r = S.rank
    t = _zero_table_mod(M.algebra.rank, r)
    for i in gens:
        for j in range(r):
            t[i][j] = list(coordinates_lambda(M.act_gen(i, S.basis[j]), S))
    return ConformalModule.from_table(M.algebra, t, tuple(f"s{j + 1}" for j in range(r)), rank=r)


@dataclass(frozen=True)
class QuotientModule:
    module: ConformalModule
    basis: QuotientBasis
    submodule: Submodule

    def project(self, x: Sequence[MPoly]) -> Vector:
        return self.basis.project(x)

    def lift(self, y: Sequence[MPoly]) -> Vector:
        n = self.submodule.ambient_rank
        out = [ZERO] * n
        for c, l in zip(y, self.basis.lifts):
            if c:
                for t in range(n):
                    if l[t]:
                        out[t] = out[t] + c * l[t]
        return tuple(out)


def quotient_module(M: ConformalModule, S: Submodule, over: Optional[Sequence[int]] = None) -> QuotientModule:
    """M/S for a saturated invariant S, on the basis chosen by :func:`quotient_basis`."""
    if not is_saturated(S):
        raise NotSaturated("quotient by a non-saturated submodule has torsion")
    gens = set(range(M.algebra.rank) if over is None else over)
    if not invariant(M, S, gens):
        raise NotModule("cannot take a quotient by a non-invariant submodule")
    qb = quotient_basis(S)
    q = len(qb.kept)
    P = qb.projection
    t = _zero_table_mod(M.algebra.rank, q)
    for i in gens:
        for j in range(q):
            t[i][j] = list(vec_times_matrix(M.act_gen(i, qb.lifts[j]), P.entries, q))
    names = tuple(M.names[c] for c in qb.kept)
    return QuotientModule(ConformalModule.from_table(M.algebra, t, names, rank=q), qb, S)


def change_basis(M: ConformalModule, P: Sequence[Sequence[MPoly]], P_inv: Sequence[Sequence[MPoly]]) -> ConformalModule:
    """Re-express M on the basis u'_j = Σ_k P[j][k] u_k (P unimodular, P_inv its inverse)."""
    m = M.rank
    t = _zero_table_mod(M.algebra.rank, m)
    for i in range(M.algebra.rank):
        for j in range(m):
            t[i][j] = list(vec_times_matrix(M.act_gen(i, P[j]), P_inv, m))
    return ConformalModule.from_table(M.algebra, t, M.names, rank=m)


def module_morphism_residual(M1: ConformalModule, M2: ConformalModule, phi: Sequence[Sequence[MPoly]]) -> CheckResult:
    """Check that the H-linear map u_j ↦ phi[j] intertwines the two actions."""
    m2 = M2.rank
    for i in range(M1.algebra.rank):
        for j in range(M1.rank):
            lhs = vec_times_matrix(M1.act_gen(i, M1.generator(j)), phi, m2)
            rhs = M2.act_gen(i, phi[j])
            res = tuple(x - y for x, y in zip(lhs, rhs))
            if any(res):
                return CheckResult(False, (i, j), res, "map does not intertwine the actions")
    return CheckResult(True)


def direct_sum_modules(*mods: ConformalModule) -> ConformalModule:
    L = mods[0].algebra
    m = sum(M.rank for M in mods)
    t = _zero_table_mod(L.rank, m)
    names: List[str] = []
    off = 0
    for M in mods:
        if M.algebra != L:
            raise ValueError("direct sum needs modules over the same algebra")
        for i in range(L.rank):
            for j in range(M.rank):
                cell = [ZERO] * m
                for k, p in enumerate(M.table[i][j]):
                    cell[off + k] = p
                t[i][off + j] = cell
        names.extend(M.names)
        off += M.rank
    return ConformalModule.from_table(L, t, _dedupe(names), rank=m)


def _dedupe(names):
    from .algebra import _unique_names

    return tuple(_unique_names(names))


def pullback(M: ConformalModule, L: ConformalAlgebra, projection: Sequence[Sequence[MPoly]]) -> ConformalModule:
    """Module over L acting through an algebra map π: L → M.algebra, given by the rows π(e_i)."""
    m = M.rank
    t = [[list(M.act(projection[i], M.generator(j))) for j in range(m)] for i in range(L.rank)]
    return ConformalModule.from_table(L, t, M.names, rank=m)


def rep_kernel(M: ConformalModule) -> Submodule:
    """{a ∈ L : a λ M = 0}."""
    return annihilator(M.table, M.algebra.rank, M.rank)


def fixed_part(M: ConformalModule, over: Sequence[int]) -> Submodule:
    """{x ∈ M : e_i λ x = 0 for the listed generators}."""
    return trivial_part(M.table, over, M.rank)


# -- irreducible submodule search ----------------------------------------------
class IrreducibleFound(NamedTuple):
    """An irreducible submodule: its Hermite span, spec, and the generators realizing the spec."""

    submodule: Submodule
    spec: IrreducibleSpec
    generators: Tuple[Vector, ...]


def _d0_matrix(M: ConformalModule, v: int) -> List[List[MPoly]]:
    return [[M.table[v][j][k].subs({LAM: ZERO}) for k in range(M.rank)] for j in range(M.rank)]


def alpha_candidates(M: ConformalModule, v: int):
    """Rational α with det(D₀ − (∂+α)) ≡ 0, plus the polynomial those α are roots of."""
    m = M.rank
    A0 = _d0_matrix(M, v)
    mu = MPoly.var(MU)
    rows = [[A0[j][k] - ((DP + mu) if j == k else ZERO) for k in range(m)] for j in range(m)]
    det = poly_det(rows)
    g = ZERO
    for c in det.coeffs(D).values():
        g = ugcd(g, rename(c, MU, D)) if g else ugcd(rename(c, MU, D), ZERO)
    if not g:
        return None, g  # every α works; cannot happen for a finite module over Vir
    if g.degree(D) <= 0:
        return [], g
    return rational_roots(g), g


class _Space:
    """Coordinates for H-vectors of bounded ∂-degree over a fixed Hermite basis of K."""

    def __init__(self, K: Submodule, d: int):
        self.K = K
        self.k = K.rank
        self.d = d
        self.N = self.k * (d + 1)

    def element(self, c: Sequence[Fraction]) -> Vector:
        n = self.K.ambient_rank
        out = [ZERO] * n
        for idx, val in enumerate(c):
            if val:
                t, i = divmod(idx, self.k)
                f = val * DP**t
                for a in range(n):
                    if self.K.basis[i][a]:
                        out[a] = out[a] + f * self.K.basis[i][a]
        return tuple(out)

    def basis_element(self, idx: int) -> Vector:
        t, i = divmod(idx, self.k)
        return tuple(DP**t * p for p in self.K.basis[i])

    def coords(self, z: Sequence[MPoly]):
        """Coordinates of z ∈ K as (in-range vector, overflow list of (key, value))."""
        c = coordinates(z, self.K)
        vec = [Fraction(0)] * self.N
        over = {}
        for i, f in enumerate(c):
            for (e, _, _), val in f.items():
                if e <= self.d:
                    vec[e * self.k + i] += val
                else:
                    over[(e, i)] = val
        return vec, over


def _flatten_keys(dicts: Sequence[Dict]) -> Tuple[list, List[List[Fraction]]]:
    """Turn a list of sparse {key: value} images into constraint rows over the image index."""
    keys = sorted({k for dct in dicts for k in dct})
    pos = {k: a for a, k in enumerate(keys)}
    rows = [[Fraction(0)] * len(dicts) for _ in keys]
    for col, dct in enumerate(dicts):
        for k, val in dct.items():
            rows[pos[k]][col] = val
    return keys, rows


def _vector_terms(v: Sequence[MPoly], tag=()) -> Dict:
    out = {}
    for j, p in enumerate(v):
        for e, val in p.items():
            out[tag + (j,) + e] = val
    return out


def _restrict(B: List[List[Fraction]], rows: List[List[Fraction]], N: int) -> List[List[Fraction]]:
    """Vectors of span(B) killed by the functionals whose values on the standard basis are ``rows``."""
    if not B or not rows:
        return B
    vals = [[sum((r[t] * b[t] for t in range(N) if b[t]), Fraction(0)) for b in B] for r in rows]
    sols = qlinalg.nullspace(vals, len(B))
    return [_combine(B, s, N) for s in sols]


def _combine(B, c, N):
    out = [Fraction(0)] * N
    for coef, b in zip(c, B):
        if coef:
            for t in range(N):
                if b[t]:
                    out[t] += coef * b[t]
    return out


def _stable(B: List[List[Fraction]], ops: Sequence[List[List[Fraction]]], N: int) -> List[List[Fraction]]:
    """Largest subspace of span(B) mapped into itself by every op (ops given as column images)."""
    while B:
        keep = B
        for op in ops:
            imgs = [_apply(op, b, N) for b in keep]
            # solve Σ c_i op(b_i) = Σ e_j b_j
            r = len(keep)
            mat = [[imgs[i][t] for i in range(r)] + [-keep[j][t] for j in range(r)] for t in range(N)]
            sols = qlinalg.nullspace(mat, 2 * r)
            cs = [s[:r] for s in sols]
            basis, _ = qlinalg.rref(cs, r) if cs else ([], [])
            keep = [_combine(keep, c, N) for c in basis]
            if not keep:
                break
        if len(keep) == len(B):
            return keep
        B = keep
    return B


def _apply(op: List[List[Fraction]], x: Sequence[Fraction], N: int) -> List[Fraction]:
    out = [Fraction(0)] * N
    for idx, val in enumerate(x):
        if val:
            col = op[idx]
            for t in range(N):
                if col[t]:
                    out[t] += val * col[t]
    return out


def _matrix_on(B: List[List[Fraction]], op: List[List[Fraction]], N: int) -> List[List[Fraction]]:
    """Matrix (column convention) of op restricted to the invariant subspace span(B)."""
    r = len(B)
    cols = []
    for b in B:
        img = _apply(op, b, N)
        c = qlinalg.solve_combination(B, img, N)
        if c is None:
            raise AssertionError("subspace is not invariant")  # pragma: no cover
        cols.append(c)
    return [[cols[j][i] for j in range(r)] for i in range(r)]


def _eigenspace(B, mat, value, N):
    r = len(B)
    shifted = [[mat[i][j] - (value if i == j else 0) for j in range(r)] for i in range(r)]
    return [_combine(B, s, N) for s in qlinalg.nullspace(shifted, r)]


def _irreducible_subrep(B, ops, N):
    """A nonzero irreducible subspace of span(B) under the Lie operators ``ops``.

    Uses the commutant: dimension one means absolutely irreducible, otherwise
    a rational eigenspace of a non-scalar commuting operator is a proper
    invariant subspace.  Returns None when no rational splitting exists.
    """
    while True:
        r = len(B)
        mats = [_matrix_on(B, op, N) for op in ops]
        comm = commutant(mats, r)
        if len(comm) <= 1:
            return B, mats
        found = None
        for X in comm:
            if all(X[i][j] == (X[0][0] if i == j else 0) for i in range(r) for j in range(r)):
                continue
            roots, _, _ = qlinalg.rational_eigenvalues(X)
            if roots:
                sub = [[X[i][j] - (roots[0] if i == j else 0) for j in range(r)] for i in range(r)]
                ker = qlinalg.nullspace(sub, r)
                if 0 < len(ker) < r:
                    found = [_combine(B, s, N) for s in ker]
                    break
        if found is None:
            return None
        B = found


def _h_independent(vectors: Sequence[Vector], n: int) -> bool:
    return span(vectors, n).rank == len(vectors)


def _search_alpha(M: ConformalModule, s: Summand, alpha: Fraction, degree_bound: int, irrational: list):
    v = s.virasoro_index
    m = M.rank
    A0 = _d0_matrix(M, v)
    T = PolyMatrix([[A0[j][k] - ((DP + alpha) if j == k else ZERO) for k in range(m)] for j in range(m)], m)
    K = kernel(T)
    if K.is_zero():
        return None
    ev = M.algebra.generator(v)
    cur = s.current_indices
    for d in range(degree_bound + 1):
        sp = _Space(K, d)
        N = sp.N
        c1_cols, over_c1, high = [], [], []
        g_cols = {g: [] for g in cur}
        g_over, g_high = [], []
        for idx in range(N):
            w = sp.basis_element(idx)
            parts = lambda_parts(M.act(ev, w))
            vec, over = sp.coords(parts.get(1, (ZERO,) * m))
            c1_cols.append(vec)
            over_c1.append({("c1",) + k: val for k, val in over.items()})
            hi = {}
            for p, z in parts.items():
                if p >= 2:
                    hi.update(_vector_terms(z, ("hi", p)))
            high.append(hi)
            go, gh = {}, {}
            for g in cur:
                gp = lambda_parts(M.act(M.algebra.generator(g), w))
                gv, gov = sp.coords(gp.get(0, (ZERO,) * m))
                g_cols[g].append(gv)
                go.update({("g", g) + k: val for k, val in gov.items()})
                for p, z in gp.items():
                    if p >= 1:
                        gh.update(_vector_terms(z, ("gh", g, p)))
            g_over.append(go)
            g_high.append(gh)
        start = [[Fraction(int(a == b)) for a in range(N)] for b in range(N)]
        _, rows = _flatten_keys([{**a, **b} for a, b in zip(high, over_c1)])
        Y = _restrict(start, rows, N)
        Y = _stable(Y, [c1_cols], N)
        if not Y:
            continue
        C1 = _matrix_on(Y, c1_cols, N)
        roots, rational, cp = qlinalg.rational_eigenvalues(C1)
        if not rational:
            irrational.append(cp)
        for delta in sorted(roots, key=lambda x: (x == 0, abs(x), x)):
            E = _eigenspace(Y, C1, delta, N)
            if not cur:
                if delta == 0:
                    continue
                x = sp.element(E[0])
                return IrreducibleFound(span([x], m), IrreducibleSpec.m(alpha, delta), (x,))
            _, grows = _flatten_keys([{**a, **b} for a, b in zip(g_high, g_over)])
            W = _restrict(E, grows, N)
            W = _stable(W, [g_cols[g] for g in cur], N)
            if not W:
                continue
            if delta == 0:
                # keep only the nontrivial isotypic part g·W
                imgs = [_apply(g_cols[g], w, N) for g in cur for w in W]
                gw, _ = qlinalg.rref(imgs, N)
                if not gw:
                    continue
                W = _stable(gw, [g_cols[g] for g in cur], N)
            sub = _irreducible_subrep(W, [g_cols[g] for g in cur], N)
            if sub is None:
                irrational.append(None)
                continue
            Yb, mats = sub
            gens = tuple(sp.element(y) for y in Yb)
            if not _h_independent(gens, m):
                continue
            lie = s.lie or _lie_from_block(M.algebra, s)
            rep = LieRep(lie, tuple(tuple(tuple(r) for r in mm) for mm in mats))
            spec = IrreducibleSpec.mu(alpha, delta, rep)
            if not spec.is_irreducible():
                continue
            return IrreducibleFound(span(gens, m), spec, gens)
    return None


def find_irreducible_submodule(M: ConformalModule, summand: Optional[Summand] = None,
                               degree_bound: int = 6) -> Optional[IrreducibleFound]:
    """An irreducible submodule of M over a Vir-bearing summand, or None if M is trivial there.

    Raises :class:`NonSplitSpectrum` when the eigenvalues that would be needed
    are irrational, and :class:`NoIrreducibleFound` when the search exhausts
    ``degree_bound`` without a candidate.
    """
    s = summand or _nontrivial_summand(M, (VIR, VIRCUR))
    if s is None or not s.has_virasoro:
        raise IncompatibleSpec("irreducible search needs a Vir-bearing summand")
    if M.rank == 0 or is_trivial(M, s.indices):
        return None
    alphas, g = alpha_candidates(M, s.virasoro_index)
    if alphas is None:
        raise NoIrreducibleFound("zero-mode determinant vanishes for every α")
    irrational: list = []
    for alpha in alphas:
        found = _search_alpha(M, s, alpha, degree_bound, irrational)
        if found is not None:
            return found
    if g.degree(D) > 0 and not split_over_q(g):
        # g is a polynomial in α, printed in the variable d
        raise NonSplitSpectrum("zero-mode eigenvalues are not rational", str(g))
    if irrational:
        cp = next((p for p in irrational if p is not None), None)
        raise NonSplitSpectrum("conformal weights are not rational", None if cp is None else str(cp))
    raise NoIrreducibleFound(f"no irreducible submodule with generators of ∂-degree ≤ {degree_bound}")


# -- triangular series ---------------------------------------------------------
IRREDUCIBLE, TRIVIAL_FREE, TORSION = "irreducible", "trivial-free", "torsion"


@dataclass(frozen=True)
class Layer:
    """One step M_{k-1} ⊂ M_k of a triangular series."""

    submodule: Submodule
    tag: str
    spec: Optional[IrreducibleSpec] = None
    generators: Tuple[Vector, ...] = ()
    torsion: Tuple[MPoly, ...] = ()

    def __str__(self):
        if self.tag == IRREDUCIBLE:
            return f"rank {self.submodule.rank}: irreducible {self.spec}"
        if self.tag == TORSION:
            return f"rank {self.submodule.rank}: torsion " + ", ".join(map(str, self.torsion))
        return f"rank {self.submodule.rank}: trivial free"


def triangular_series(M: ConformalModule, summand: Optional[Summand] = None, degree_bound: int = 6) -> List[Layer]:
    """Chain 0 ⊂ M_0 ⊂ … ⊂ M_n = M with irreducible, trivial torsion-free or torsion quotients."""
    s = summand or _nontrivial_summand(M, (VIR, VIRCUR))
    if s is None or not s.has_virasoro:
        raise IncompatibleSpec("triangular series needs a Vir-bearing summand")
    m = M.rank
    layers: List[Layer] = []
    S = zero_submodule(m)
    while not S.is_full():
        if not is_saturated(S):
            T = saturate(S)
            _, tors = quotient_presentation(_relative(S, T))
            layers.append(Layer(T, TORSION, torsion=tuple(tors)))
            S = T
            continue
        Q = quotient_module(M, S, s.indices)
        found = find_irreducible_submodule(Q.module, s, degree_bound)
        if found is None:
            layers.append(Layer(span([M.generator(j) for j in range(m)], m), TRIVIAL_FREE))
            break
        gens = tuple(Q.lift(y) for y in found.generators)
        S = add(S, span(gens, m))
        layers.append(Layer(S, IRREDUCIBLE, found.spec, gens))
    for k, layer in enumerate(layers):
        prev = layers[k - 1].submodule if k else zero_submodule(m)
        res = verify_layer(M, s, prev, layer)
        if not res:
            raise NoIrreducibleFound("triangular layer failed verification: " + res.describe())
    return layers


def _relative(S: Submodule, T: Submodule) -> Submodule:
    """S expressed inside T's Hermite coordinates (T ⊇ S)."""
    rows = [coordinates(b, T) for b in S.basis]
    return span(rows, T.rank)


def verify_layer(M: ConformalModule, s: Summand, prev: Submodule, layer: Layer) -> CheckResult:
    """Check a layer's tag against the induced action modulo ``prev``."""
    def inside(vec, where):
        for w in lambda_parts(vec).values():
            if not membership(w, prev):
                return CheckResult(False, where, tuple(w), "induced action leaves the previous term")
        return CheckResult(True)

    if not prev <= layer.submodule:
        return CheckResult(False, None, None, "chain is not increasing")
    if layer.tag == IRREDUCIBLE:
        spec = layer.spec
        if not spec.is_irreducible():
            return CheckResult(False, None, None, "spec is not irreducible")
        if span(list(prev.basis) + list(layer.generators), M.rank) != layer.submodule:
            return CheckResult(False, None, None, "generators do not span the layer")
        v = s.virasoro_index
        f = spec.alpha + DP + spec.delta * LP
        for j, y in enumerate(layer.generators):
            r = inside(tuple(a - f * b for a, b in zip(M.act_gen(v, y), y)), ("v", j))
            if not r:
                return r
            for gpos, g in enumerate(s.current_indices):
                mat = spec.rep.matrices[gpos]
                target = [ZERO] * M.rank
                for k, yk in enumerate(layer.generators):
                    if mat[k][j]:
                        target = [t + mat[k][j] * p for t, p in zip(target, yk)]
                r = inside(tuple(a - b for a, b in zip(M.act_gen(g, y), target)), ("g", g, j))
                if not r:
                    return r
        return CheckResult(True)
    for x in layer.submodule.basis:
        for i in s.indices:
            r = inside(M.act_gen(i, x), (i,))
            if not r:
                return r
    if layer.tag == TORSION:
        if saturate(prev) != layer.submodule or layer.submodule.rank != prev.rank:
            return CheckResult(False, None, None, "torsion layer is not the saturation")
    return CheckResult(True)
