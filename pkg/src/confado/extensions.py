"""Abelian extensions of conformal modules by trivial modules, and their splitting.

A cochain φ from (L, M) to a trivial free module V of rank r is a table
``φ[i][j] = (f_1, …, f_r)`` with ``φ_λ(e_i, u_j) = Σ_k f_k(∂, λ) w_k``.
It is extended 3/2-linearly exactly like a module action:
``φ_λ(f(∂)a, g(∂)u) = f(−λ) g(∂+λ) φ_λ(a, u)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .algebra import CheckResult, Summand, pair
from .errors import HypothesisViolation, InternalResidual, NotCocycle
from .hmodule import Vector, unit_vector, vec_times_matrix
from .modules import (
    M_ALPHA_DELTA,
    M_ALPHA_DELTA_U,
    ConformalModule,
    _nontrivial_summand,
    direct_sum_modules,
    module_morphism_residual,
    recognize_spec,
    zero_module,
)
from .poly import DP, LAM, LP, MP, ZERO, MPoly, poly_divmod_linear, udivmod, vec_str


@dataclass(frozen=True, eq=False)
class Cochain:
    module: ConformalModule
    target_rank: int
    table: Tuple[Tuple[Tuple[MPoly, ...], ...], ...]

    @classmethod
    def from_table(cls, M: ConformalModule, r: int, table) -> "Cochain":
        t = tuple(tuple(tuple(MPoly.coerce(p) for p in cell) for cell in row) for row in table)
        if len(t) != M.algebra.rank or any(len(row) != M.rank for row in t):
            raise ValueError("cochain table must be n × m")
        if any(len(cell) != r for row in t for cell in row):
            raise ValueError("cochain values must have the target rank")
        return cls(M, r, t)

    @classmethod
    def zero(cls, M: ConformalModule, r: int) -> "Cochain":
        return cls.from_table(M, r, [[[ZERO] * r for _ in range(M.rank)] for _ in range(M.algebra.rank)])

    @property
    def algebra(self):
        return self.module.algebra

    def __call__(self, a: Sequence[MPoly], u: Sequence[MPoly], var: MPoly = LP) -> Vector:
        return pair(self.table, a, u, var, self.target_rank)

    def __sub__(self, other: "Cochain") -> "Cochain":
        t = [[[p - q for p, q in zip(c1, c2)] for c1, c2 in zip(r1, r2)] for r1, r2 in zip(self.table, other.table)]
        return Cochain.from_table(self.module, self.target_rank, t)

    def is_zero(self) -> bool:
        return not any(p for row in self.table for cell in row for p in cell)

    def __eq__(self, other):
        return isinstance(other, Cochain) and self.table == other.table and self.target_rank == other.target_rank

    def __hash__(self):
        return hash(self.table)


@dataclass(frozen=True)
class SplittingMap:
    """H-linear τ: M → V, ``matrix[j]`` = τ(u_j) as a vector of polynomials in ∂."""

    matrix: Tuple[Tuple[MPoly, ...], ...]

    @classmethod
    def make(cls, rows) -> "SplittingMap":
        m = tuple(tuple(MPoly.coerce(p) for p in row) for row in rows)
        for row in m:
            for p in row:
                if p.degree(LAM) > 0 or p.degree(2) > 0:
                    raise ValueError("a splitting map has coefficients in k[∂] only")
        return cls(m)

    @property
    def target_rank(self) -> int:
        return len(self.matrix[0]) if self.matrix else 0

    def __call__(self, x: Sequence[MPoly]) -> Vector:
        return vec_times_matrix(x, self.matrix, self.target_rank)

    def __str__(self):
        return "\n".join(vec_str(row) for row in self.matrix)


def cocycle_residual(phi: Cochain, i: int, j: int, k: int) -> Vector:
    """φ_λ(a, b μ u) − φ_μ(b, a λ u) − φ_{λ+μ}([a λ b], u) on generators."""
    M = phi.module
    L = M.algebra
    a, b, u = L.generator(i), L.generator(j), M.generator(k)
    t1 = phi(a, M.act(b, u, MP), LP)
    t2 = phi(b, M.act(a, u, LP), MP)
    t3 = phi(L.bracket(a, b), u, LP + MP)
    return tuple(x - y - z for x, y, z in zip(t1, t2, t3))


def check_cocycle(phi: Cochain) -> CheckResult:
    L = phi.algebra
    for i in range(L.rank):
        for j in range(L.rank):
            for k in range(phi.module.rank):
                res = cocycle_residual(phi, i, j, k)
                if any(res):
                    return CheckResult(False, (i, j, k), res, "cocycle identity")
    return CheckResult(True)


def differential(tau: SplittingMap, M: ConformalModule) -> Cochain:
    """(δτ)_λ(a, u) = τ(a λ u)."""
    r = tau.target_rank
    t = [[list(tau(M.act_gen(i, M.generator(j)))) for j in range(M.rank)] for i in range(M.algebra.rank)]
    return Cochain.from_table(M, r, t)


def build_extension(phi: Cochain) -> ConformalModule:
    """E(M, V, φ) on V ⊕ M (the r generators of V first)."""
    res = check_cocycle(phi)
    if not res:
        raise NotCocycle("cochain is not a cocycle: " + res.describe(), res)
    M = phi.module
    r, m = phi.target_rank, M.rank
    n = M.algebra.rank
    t = [[[ZERO] * (r + m) for _ in range(r + m)] for _ in range(n)]
    for i in range(n):
        for j in range(m):
            t[i][r + j] = list(phi.table[i][j]) + list(M.table[i][j])
    names = tuple(f"w{k + 1}" for k in range(r)) + M.names
    return ConformalModule.from_table(M.algebra, t, names, rank=r + m)


def _spec_and_summand(M: ConformalModule, summand: Optional[Summand]):
    s = summand or _nontrivial_summand(M)
    if s is None or not s.has_virasoro:
        raise HypothesisViolation("splitting needs a Vir or Vir ⋉ Cur g acting algebra")
    if sorted(s.indices) != list(range(M.algebra.rank)):
        raise HypothesisViolation("the acting algebra must be exactly the Vir-bearing summand")
    spec = M.spec or recognize_spec(M, s)
    if spec is None or spec.kind not in (M_ALPHA_DELTA, M_ALPHA_DELTA_U):
        raise HypothesisViolation("module is not of the classified irreducible shape")
    if not spec.is_irreducible():
        raise HypothesisViolation(f"module {spec} is not irreducible")
    return spec, s


def split_cocycle(phi: Cochain, summand: Optional[Summand] = None) -> SplittingMap:
    """τ with φ = δτ for a cocycle on an irreducible module over Vir or Vir ⋉ Cur g.

    For Δ ≠ 0 each v-component f(∂, λ) is divided by ∂ + α + Δλ; for Δ = 0
    it is reduced modulo ∂ + α, the quotient giving τ.  The residual φ − δτ
    is then checked on every generator.
    """
    M = phi.module
    spec, s = _spec_and_summand(M, summand)
    res = check_cocycle(phi)
    if not res:
        raise NotCocycle("cochain is not a cocycle: " + res.describe(), res)
    v = s.virasoro_index
    alpha, delta = spec.alpha, spec.delta
    rows: List[List[MPoly]] = []
    for j in range(M.rank):
        row = []
        for f in phi.table[v][j]:
            if delta != 0:
                q, _ = poly_divmod_linear(f, DP + alpha + delta * LP)
            else:
                q, _ = udivmod(f, DP + alpha) if f.degree(LAM) <= 0 else (ZERO, f)
            row.append(q if q.degree(LAM) <= 0 else ZERO)
        rows.append(row)
    tau = SplittingMap.make(rows) if rows else SplittingMap(())
    rest = phi - differential(tau, M) if M.rank else phi
    if not rest.is_zero():
        bad = next((i, j, c) for i, row in enumerate(rest.table) for j, c in enumerate(row) if any(c))
        raise InternalResidual(f"φ − δτ is nonzero at {bad[:2]}: {vec_str(bad[2])}")
    return tau


def split_module(M: ConformalModule, r: int) -> ConformalModule:
    """The direct sum V ⊕ M with V trivial of rank r."""
    return direct_sum_modules(zero_module(M.algebra, r), M)


def extension_isomorphism(E: ConformalModule, M: ConformalModule, tau: SplittingMap) -> CheckResult:
    """Check that w ↦ w, u ↦ u − τ(u) is a module isomorphism E → V ⊕ M."""
    r = tau.target_rank
    m = M.rank
    phi_rows = [unit_vector(r + m, k) for k in range(r)]
    for j in range(m):
        row = [-p for p in tau.matrix[j]] + [ZERO] * m
        row[r + j] = MPoly.const(1)
        phi_rows.append(tuple(row))
    return module_morphism_residual(E, split_module(M, r), phi_rows)
