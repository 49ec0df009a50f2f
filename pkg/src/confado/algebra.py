"""Finite conformal Lie algebras given by λ-bracket tables on free generators.

A rank-n algebra is stored as ``table[i][j] = (p_1, …, p_n)`` meaning
``[e_i λ e_j] = Σ_k p_k(∂, λ) e_k``.  Elements of the algebra are vectors of
polynomials in ∂ (H-combinations of generators); λ-bracket values are vectors
of polynomials in ∂ and λ.

The same 3/2-linear evaluation rule drives brackets, module actions and
cochains (see :func:`pair`):

    [f(∂)a  x  g(∂)b] = f(−x) · g(∂ + x) · [a x b]

where ``x`` is the bracket variable (λ, μ or λ + μ).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import qlinalg
from .errors import CertificateFailure, NotDerivation, NotIdeal, NotLie, NotModule, NotSaturated
from .hmodule import (
    PolyMatrix,
    QuotientBasis,
    Submodule,
    Vector,
    coordinate_submodule,
    coordinates_lambda,
    full_submodule,
    intersect,
    is_saturated,
    kernel,
    lambda_parts,
    membership,
    quotient_basis,
    saturate,
    span,
    unit_vector,
    vec_times_matrix,
)
from .poly import D, DP, LAM, LP, MP, MU, ONE, ZERO, MPoly, rename, vec_str

Table = Tuple[Tuple[Tuple[MPoly, ...], ...], ...]


# -- the 3/2-linear evaluation rule ------------------------------------------
_SUBST_CACHE: Dict[tuple, tuple] = {}


def _table_at(table: Table, x: MPoly) -> Table:
    if x == LP:
        return table
    key = (id(table), x)
    hit = _SUBST_CACHE.get(key)
    if hit is not None and hit[0] is table:
        return hit[1]
    sub = tuple(tuple(tuple(p.subs({LAM: x}) if p else p for p in cell) for cell in row) for row in table)
    if len(_SUBST_CACHE) > 4096:
        _SUBST_CACHE.clear()
    _SUBST_CACHE[key] = (table, sub)
    return sub


def pair(table: Table, a: Sequence[MPoly], b: Sequence[MPoly], x: MPoly = LP, nout: int | None = None) -> Vector:
    """Evaluate a table 3/2-linearly on arbitrary arguments with bracket variable ``x``."""
    if nout is None:
        nout = _width(table)
    tab = _table_at(table, x)
    neg_x = -x
    shift = DP + x
    fa = [(i, ai if ai.degree(D) <= 0 else ai.subs({D: neg_x})) for i, ai in enumerate(a) if ai]
    gb = [(j, bj if bj.degree(D) <= 0 else bj.subs({D: shift})) for j, bj in enumerate(b) if bj]
    out = [ZERO] * nout
    for i, f in fa:
        row = tab[i]
        for j, g in gb:
            cell = row[j]
            if not any(cell):
                continue
            c = f * g
            for k, p in enumerate(cell):
                if p:
                    out[k] = out[k] + c * p
    return tuple(out)


def _width(table: Table) -> int:
    for row in table:
        for cell in row:
            return len(cell)
    return 0


def coefficient_span(values: Sequence[Sequence[MPoly]], n: int) -> Submodule:
    """H-span of all λ-coefficients of the given λ-valued vectors."""
    rows = []
    for v in values:
        rows.extend(w for w in lambda_parts(v).values() if any(w))
    return span(rows, n)


@dataclass(frozen=True)
class CheckResult:
    """Outcome of an exact identity check; carries the first failing witness."""

    ok: bool
    where: Optional[tuple] = None
    residual: Optional[Tuple[MPoly, ...]] = None
    message: str = ""

    def __bool__(self):
        return self.ok

    def describe(self) -> str:
        if self.ok:
            return "pass"
        s = self.message or "fail"
        if self.where is not None:
            s += f" at {self.where}"
        if self.residual is not None:
            s += f": residual {vec_str(self.residual)}"
        return s


PASS = CheckResult(True)


# -- finite-dimensional Lie algebras and their representations ----------------
@dataclass(frozen=True)
class LieAlgebraFD:
    """Finite-dimensional Lie algebra by structure constants ``[x_i, x_j] = Σ c[i][j][k] x_k``."""

    structure_constants: Tuple[Tuple[Tuple[Fraction, ...], ...], ...]
    names: Tuple[str, ...] = ()

    def __post_init__(self):
        if not self.names:
            object.__setattr__(self, "names", tuple(f"x{i + 1}" for i in range(self.dim)))

    @property
    def dim(self) -> int:
        return len(self.structure_constants)

    @classmethod
    def from_brackets(cls, dim: int, brackets: dict, names=()) -> "LieAlgebraFD":
        """Build from ``{(i, j): {k: c}}``; the antisymmetric partners are filled in."""
        c = [[[Fraction(0)] * dim for _ in range(dim)] for _ in range(dim)]
        for (i, j), out in brackets.items():
            for k, v in out.items():
                c[i][j][k] = Fraction(v)
                c[j][i][k] = -Fraction(v)
        return cls(tuple(tuple(tuple(r) for r in m) for m in c), tuple(names))

    def bracket(self, x: Sequence, y: Sequence) -> List[Fraction]:
        n = self.dim
        out = [Fraction(0)] * n
        for i, xi in enumerate(x):
            if xi:
                for j, yj in enumerate(y):
                    if yj:
                        for k in range(n):
                            out[k] += xi * yj * self.structure_constants[i][j][k]
        return out

    def check(self) -> CheckResult:
        n = self.dim
        c = self.structure_constants
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if c[i][j][k] != -c[j][i][k]:
                        return CheckResult(False, (i, j, k), None, "antisymmetry")
        e = [[Fraction(int(a == b)) for b in range(n)] for a in range(n)]
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    a = self.bracket(e[i], self.bracket(e[j], e[k]))
                    b = self.bracket(e[j], self.bracket(e[k], e[i]))
                    cc = self.bracket(e[k], self.bracket(e[i], e[j]))
                    if any(x + y + z for x, y, z in zip(a, b, cc)):
                        return CheckResult(False, (i, j, k), None, "Jacobi identity")
        return PASS

    def require_lie(self) -> "LieAlgebraFD":
        res = self.check()
        if not res:
            raise NotLie(f"structure constants fail the {res.message} at {res.where}")
        return self

    def ad(self, i: int) -> List[List[Fraction]]:
        """Matrix of ad(x_i) acting on column vectors."""
        n = self.dim
        return [[self.structure_constants[i][j][k] for j in range(n)] for k in range(n)]

    def killing_form(self) -> List[List[Fraction]]:
        n = self.dim
        ads = [self.ad(i) for i in range(n)]
        return [[sum(qlinalg.matmul(ads[i], ads[j])[t][t] for t in range(n)) for j in range(n)] for i in range(n)]

    def is_semisimple(self) -> bool:
        return self.dim > 0 and qlinalg.rank(self.killing_form(), self.dim) == self.dim

    def is_abelian(self) -> bool:
        return not any(x for m in self.structure_constants for r in m for x in r)


def sl2() -> LieAlgebraFD:
    """sl₂ with basis (e, h, f): [e,f] = h, [h,e] = 2e, [h,f] = −2f."""
    return LieAlgebraFD.from_brackets(3, {(0, 2): {1: 1}, (1, 0): {0: 2}, (1, 2): {2: -2}}, ("e", "h", "f"))


def heisenberg() -> LieAlgebraFD:
    return LieAlgebraFD.from_brackets(3, {(0, 1): {2: 1}}, ("x", "y", "z"))


def abelian_lie(n: int) -> LieAlgebraFD:
    return LieAlgebraFD.from_brackets(n, {}, tuple(f"a{i + 1}" for i in range(n)) if n > 1 else ("a",))


def solvable2() -> LieAlgebraFD:
    """The two-dimensional non-abelian Lie algebra [x, y] = y."""
    return LieAlgebraFD.from_brackets(2, {(0, 1): {1: 1}}, ("x", "y"))


@dataclass(frozen=True)
class LieRep:
    """Matrix representation: ``x_i · u_j = Σ_k matrices[i][k][j] u_k`` (column convention)."""

    lie: LieAlgebraFD
    matrices: Tuple[Tuple[Tuple[Fraction, ...], ...], ...]

    @classmethod
    def make(cls, lie, matrices) -> "LieRep":
        mats = tuple(tuple(tuple(Fraction(x) for x in row) for row in m) for m in matrices)
        rep = cls(lie, mats)
        if not rep.check():
            raise NotModule("matrices do not represent the Lie algebra")
        return rep

    @property
    def dim(self) -> int:
        return len(self.matrices[0]) if self.matrices else 0

    def check(self) -> bool:
        n = self.lie.dim
        c = self.lie.structure_constants
        d = self.dim
        for i in range(n):
            for j in range(n):
                A, B = self.matrices[i], self.matrices[j]
                comm = [[x - y for x, y in zip(r1, r2)] for r1, r2 in zip(qlinalg.matmul(A, B), qlinalg.matmul(B, A))]
                target = [[sum((c[i][j][k] * self.matrices[k][a][b] for k in range(n)), Fraction(0)) for b in range(d)] for a in range(d)]
                if comm != target:
                    return False
        return True

    def is_trivial(self) -> bool:
        return not any(x for m in self.matrices for r in m for x in r)

    def commutant_dimension(self) -> int:
        return len(commutant(self.matrices, self.dim))

    def is_irreducible(self) -> bool:
        """Absolute irreducibility via a one-dimensional commutant (g semisimple)."""
        return self.dim > 0 and self.commutant_dimension() == 1


def commutant(matrices, d: int) -> List[List[List[Fraction]]]:
    """Basis of the matrices X with X·A = A·X for every A in ``matrices``."""
    rows = []
    for A in matrices:
        for a in range(d):
            for b in range(d):
                row = [Fraction(0)] * (d * d)
                # (XA - AX)[a][b] = Σ_k X[a][k] A[k][b] - A[a][k] X[k][b]
                for k in range(d):
                    row[a * d + k] += A[k][b]
                    row[k * d + b] -= A[a][k]
                rows.append(row)
    sols = qlinalg.nullspace(rows, d * d) if rows else [
        [Fraction(int(t == s)) for t in range(d * d)] for s in range(d * d)
    ]
    return [[s[a * d:(a + 1) * d] for a in range(d)] for s in sols]


def adjoint_rep(g: LieAlgebraFD) -> LieRep:
    return LieRep.make(g, [g.ad(i) for i in range(g.dim)])


def sl2_standard_rep() -> LieRep:
    e = [[0, 1], [0, 0]]
    h = [[1, 0], [0, -1]]
    f = [[0, 0], [1, 0]]
    return LieRep.make(sl2(), [e, h, f])


def trivial_rep(g: LieAlgebraFD, d: int = 1) -> LieRep:
    return LieRep.make(g, [[[0] * d for _ in range(d)] for _ in range(g.dim)])


# -- split structure -------------------------------------------------------
VIR, CUR, VIRCUR = "vir", "cur", "vircur"


@dataclass(frozen=True)
class Summand:
    """One simple-type summand of L₀: ``vir``, ``cur`` (current over g) or ``vircur``.

    ``indices`` are 0-based generator positions; for ``vir``/``vircur`` the first
    index is the Virasoro generator and the remaining ones span the current part.
    """

    kind: str
    indices: Tuple[int, ...]
    lie: Optional[LieAlgebraFD] = None

    @property
    def virasoro_index(self) -> Optional[int]:
        return self.indices[0] if self.kind in (VIR, VIRCUR) else None

    @property
    def current_indices(self) -> Tuple[int, ...]:
        if self.kind == CUR:
            return self.indices
        if self.kind == VIRCUR:
            return self.indices[1:]
        return ()

    @property
    def has_virasoro(self) -> bool:
        return self.kind in (VIR, VIRCUR)

    def shifted(self, mapping: Dict[int, int]) -> "Summand":
        return Summand(self.kind, tuple(mapping[i] for i in self.indices), self.lie)


@dataclass(frozen=True)
class SplitStructure:
    summands: Tuple[Summand, ...]
    radical: Tuple[int, ...] = ()

    def semisimple_indices(self) -> Tuple[int, ...]:
        return tuple(i for s in self.summands for i in s.indices)

    def remap(self, mapping: Dict[int, int]) -> "SplitStructure":
        return SplitStructure(
            tuple(s.shifted(mapping) for s in self.summands),
            tuple(sorted(mapping[i] for i in self.radical if i in mapping)),
        )


# -- the algebra type --------------------------------------------------------
@dataclass(frozen=True, eq=False)
class ConformalAlgebra:
    table: Table
    names: Tuple[str, ...] = ()
    split: Optional[SplitStructure] = field(default=None, compare=False)

    def __post_init__(self):
        n = len(self.table)
        if not self.names:
            object.__setattr__(self, "names", tuple(f"e{i + 1}" for i in range(n)))
        if len(self.names) != n:
            raise ValueError("one name per generator is required")
        for row in self.table:
            if len(row) != n or any(len(cell) != n for cell in row):
                raise ValueError("bracket table must be n × n × n")
            for cell in row:
                for p in cell:
                    if p.degree(MU) > 0:
                        raise ValueError("bracket coefficients may only involve ∂ and λ")

    @classmethod
    def from_table(cls, table, names=(), split=None, check: bool = False) -> "ConformalAlgebra":
        t = tuple(tuple(tuple(MPoly.coerce(p) for p in cell) for cell in row) for row in table)
        C = cls(t, tuple(names), split)
        if check:
            for res in (check_anticommutativity(C), check_jacobi(C)):
                if not res:
                    raise NotLie("not a Lie conformal algebra: " + res.describe())
        return C

    @property
    def rank(self) -> int:
        return len(self.table)

    def generator(self, i: int) -> Vector:
        return unit_vector(self.rank, i)

    def bracket(self, a, b, x: MPoly = LP) -> Vector:
        return pair(self.table, a, b, x, self.rank)

    def is_trivial(self) -> bool:
        return not any(p for row in self.table for cell in row for p in cell)

    def with_split(self, split: Optional[SplitStructure]) -> "ConformalAlgebra":
        return ConformalAlgebra(self.table, self.names, split)

    def __eq__(self, other):
        return isinstance(other, ConformalAlgebra) and self.table == other.table and self.names == other.names

    def __hash__(self):
        return hash((self.table, self.names))

    def __str__(self):
        lines = [f"rank {self.rank}: " + ", ".join(self.names)]
        for i in range(self.rank):
            for j in range(self.rank):
                if any(self.table[i][j]):
                    lines.append(f"  [{self.names[i]} λ {self.names[j]}] = {vec_str(self.table[i][j])}")
        return "\n".join(lines)


def bracket_eval(C: ConformalAlgebra, a, b) -> Vector:
    """[a λ b] for H-combinations of generators."""
    return C.bracket(a, b)


def _zero_table(n: int, width: int | None = None) -> list:
    w = n if width is None else width
    return [[[ZERO] * w for _ in range(n)] for _ in range(n)]


# -- axiom checks ------------------------------------------------------------
def check_anticommutativity(C: ConformalAlgebra) -> CheckResult:
    """[e_i λ e_j] + [e_j_{−∂−λ} e_i] = 0 for all generator pairs."""
    flip = -DP - LP
    for i in range(C.rank):
        for j in range(i, C.rank):
            res = tuple(p + q.subs({LAM: flip}) for p, q in zip(C.table[i][j], C.table[j][i]))
            if any(res):
                return CheckResult(False, (i, j), res, "anti-commutativity")
    return PASS


def check_jacobi(C: ConformalAlgebra) -> CheckResult:
    """[a λ [b μ c]] − [b μ [a λ c]] = [[a λ b]_{λ+μ} c] on all generator triples."""
    n = C.rank
    T = C.table
    E = [C.generator(i) for i in range(n)]
    in_mu = {(j, k): pair(T, E[j], E[k], MP, n) for j in range(n) for k in range(n)}
    in_lam = {(i, k): pair(T, E[i], E[k], LP, n) for i in range(n) for k in range(n)}
    lm = LP + MP
    for i in range(n):
        for j in range(n):
            ab = in_lam[(i, j)]
            for k in range(n):
                lhs1 = pair(T, E[i], in_mu[(j, k)], LP, n)
                lhs2 = pair(T, E[j], in_lam[(i, k)], MP, n)
                rhs = pair(T, ab, E[k], lm, n)
                res = tuple(x - y - z for x, y, z in zip(lhs1, lhs2, rhs))
                if any(res):
                    return CheckResult(False, (i, j, k), res, "Jacobi identity")
    return PASS


def action_residual(alg: Table, action: Table, i: int, j: int, k: int, nalg: int, m: int) -> Vector:
    """Module identity residual for algebra generators i, j on module generator k."""
    a = unit_vector(nalg, i)
    b = unit_vector(nalg, j)
    u = unit_vector(m, k)
    lhs1 = pair(action, a, pair(action, b, u, MP, m), LP, m)
    lhs2 = pair(action, b, pair(action, a, u, LP, m), MP, m)
    rhs = pair(action, pair(alg, a, b, LP, nalg), u, LP + MP, m)
    return tuple(x - y - z for x, y, z in zip(lhs1, lhs2, rhs))


def check_action(alg: Table, action: Table, nalg: int, m: int, left=None) -> CheckResult:
    """Exact module identity for every (generator, generator, module generator) triple.

    ``left`` restricts the algebra generators (used for sub-actions).
    """
    gens = range(nalg) if left is None else left
    E = {i: unit_vector(nalg, i) for i in gens}
    U = [unit_vector(m, k) for k in range(m)]
    act_mu = {(j, k): pair(action, E[j], U[k], MP, m) for j in gens for k in range(m)}
    act_lam = {(i, k): pair(action, E[i], U[k], LP, m) for i in gens for k in range(m)}
    lm = LP + MP
    for i in gens:
        for j in gens:
            ab = pair(alg, E[i], E[j], LP, nalg)
            for k in range(m):
                lhs1 = pair(action, E[i], act_mu[(j, k)], LP, m)
                lhs2 = pair(action, E[j], act_lam[(i, k)], MP, m)
                rhs = pair(action, ab, U[k], lm, m)
                res = tuple(x - y - z for x, y, z in zip(lhs1, lhs2, rhs))
                if any(res):
                    return CheckResult(False, (i, j, k), res, "module Jacobi identity")
    return PASS


# -- constructors ------------------------------------------------------------
def make_current(g: LieAlgebraFD) -> ConformalAlgebra:
    """Cur g: λ-bracket equal to the Lie bracket, constant in ∂ and λ."""
    g.require_lie()
    n = g.dim
    t = [[tuple(MPoly.const(g.structure_constants[i][j][k]) for k in range(n)) for j in range(n)] for i in range(n)]
    split = SplitStructure((Summand(CUR, tuple(range(n)), g),), ()) if g.is_semisimple() else None
    return ConformalAlgebra.from_table(t, g.names, split)


def make_virasoro() -> ConformalAlgebra:
    """Vir = Hv with [v λ v] = (∂ + 2λ)v."""
    return ConformalAlgebra.from_table([[[DP + 2 * LP]]], ("v",), SplitStructure((Summand(VIR, (0,)),), ()))


def zero_algebra(n: int, names=()) -> ConformalAlgebra:
    """Trivial algebra of rank n (all brackets vanish)."""
    return ConformalAlgebra.from_table(_zero_table(n), names)


def semidirect(L0: ConformalAlgebra, R: ConformalAlgebra, action, check: bool = True) -> ConformalAlgebra:
    """L0 ⋉ R for an action table ``action[i][j]`` = e_i λ r_j in R's generators.

    The generators of L0 come first.  Raises :class:`NotModule` if the action
    is not a conformal module and :class:`NotDerivation` if it does not act by
    conformal derivations of R.
    """
    n0, nr = L0.rank, R.rank
    n = n0 + nr
    act = tuple(tuple(tuple(MPoly.coerce(p) for p in cell) for cell in row) for row in action) if nr else tuple(() for _ in range(n0))
    if check and nr:
        res = check_action(L0.table, act, n0, nr)
        if not res:
            raise NotModule("action is not a conformal module: " + res.describe(), res)
    flip = -DP - LP
    t = _zero_table(n)
    for i in range(n0):
        for j in range(n0):
            t[i][j] = list(L0.table[i][j]) + [ZERO] * nr
    for i in range(n0):
        for j in range(nr):
            cell = act[i][j]
            t[i][n0 + j] = [ZERO] * n0 + list(cell)
            t[n0 + j][i] = [ZERO] * n0 + [-p.subs({LAM: flip}) for p in cell]
    for i in range(nr):
        for j in range(nr):
            t[n0 + i][n0 + j] = [ZERO] * n0 + list(R.table[i][j])
    split = None
    if L0.split is not None:
        split = SplitStructure(L0.split.summands, tuple(L0.split.radical) + tuple(range(n0, n)))
    C = ConformalAlgebra.from_table(t, L0.names + R.names, split)
    if check:
        res = check_jacobi(C)
        if not res:
            raise NotDerivation("L0 does not act by conformal derivations: " + res.describe(), res)
        res = check_anticommutativity(C)
        if not res:
            raise NotDerivation("semidirect table is not anti-commutative: " + res.describe(), res)
    return C


def make_vir_cur(g: LieAlgebraFD) -> ConformalAlgebra:
    """Vir ⋉ Cur g with [v λ a] = (∂ + λ)a."""
    g.require_lie()
    cur = make_current(g)
    n = g.dim
    action = [[tuple((DP + LP) if k == j else ZERO for k in range(n)) for j in range(n)]]
    C = semidirect(make_virasoro().with_split(None), cur, action)
    return C.with_split(SplitStructure((Summand(VIRCUR, tuple(range(n + 1)), g),), ()))


def direct_sum(*algebras: ConformalAlgebra) -> ConformalAlgebra:
    """Block direct sum; split structures are concatenated when all are present."""
    n = sum(A.rank for A in algebras)
    t = _zero_table(n)
    names: List[str] = []
    summands: List[Summand] = []
    radical: List[int] = []
    have_split = all(A.split is not None for A in algebras)
    off = 0
    for A in algebras:
        for i in range(A.rank):
            for j in range(A.rank):
                cell = [ZERO] * n
                for k, p in enumerate(A.table[i][j]):
                    cell[off + k] = p
                t[off + i][off + j] = cell
        names.extend(A.names)
        if have_split:
            mp = {i: off + i for i in range(A.rank)}
            summands.extend(s.shifted(mp) for s in A.split.summands)
            radical.extend(off + i for i in A.split.radical)
        off += A.rank
    split = SplitStructure(tuple(summands), tuple(radical)) if have_split else None
    return ConformalAlgebra.from_table(t, tuple(_unique_names(names)), split)


def _unique_names(names: Sequence[str]) -> List[str]:
    seen: Dict[str, int] = {}
    out = []
    for nm in names:
        if nm in seen:
            seen[nm] += 1
            out.append(f"{nm}{seen[nm]}")
        else:
            seen[nm] = 1
            out.append(nm)
    return out


# -- spans, series, center -----------------------------------------------------
def bracket_span(C: ConformalAlgebra, A: Sequence[Vector], B: Sequence[Vector]) -> Submodule:
    """H-span of the λ-coefficients of [a λ b], a ∈ A, b ∈ B."""
    return coefficient_span([C.bracket(a, b) for a in A for b in B], C.rank)


def _series(C, S, nxt, limit):
    S = full_submodule(C.rank) if S is None else S
    out = [S]
    cur = S
    for _ in range(limit):
        new = nxt(cur)
        out.append(new)
        if new.is_zero() or new == cur:
            break
        cur = new
    return out


def lower_central_series(C: ConformalAlgebra, S: Submodule | None = None) -> List[Submodule]:
    """S ⊇ S² ⊇ … with S^{l+1} = span of λ-coefficients of [S λ S^l]; stops at 0 or a repeat."""
    S0 = full_submodule(C.rank) if S is None else S
    return _series(C, S0, lambda T: bracket_span(C, S0.basis, T.basis), 4 * C.rank + 8)


def derived_series(C: ConformalAlgebra, S: Submodule | None = None) -> List[Submodule]:
    return _series(C, S, lambda T: bracket_span(C, T.basis, T.basis), 4 * C.rank + 8)


def is_nilpotent(C: ConformalAlgebra, S: Submodule | None = None) -> bool:
    return lower_central_series(C, S)[-1].is_zero()


def is_solvable(C: ConformalAlgebra, S: Submodule | None = None) -> bool:
    return derived_series(C, S)[-1].is_zero()


def annihilator(table: Table, n_left: int, n_right: int) -> Submodule:
    """{a ∈ H^n_left : a λ e_j = 0 for all j} for a 3/2-linear table.

    With a = Σ f_i(∂) e_i the value is Σ_i f_i(−λ)·table[i][j](∂, λ); the
    conditions are linear over k[λ] in g_i(λ) = f_i(−λ), one per power of ∂.
    """
    cols = []
    for j in range(n_right):
        for k in range(len(table[0][j]) if n_left else 0):
            by_power: Dict[int, List[MPoly]] = {}
            for i in range(n_left):
                for t, c in table[i][j][k].coeffs(D).items():
                    by_power.setdefault(t, [ZERO] * n_left)[i] = rename(c, LAM, D)
            cols.extend(by_power.values())
    if not cols:
        return full_submodule(n_left)
    Q = PolyMatrix([tuple(col[i] for col in cols) for i in range(n_left)], len(cols))
    K = kernel(Q)
    rows = [tuple(g.subs({D: -DP}) for g in b) for b in K.basis]
    return span(rows, n_left)


def trivial_part(table: Table, generators: Sequence[int], n_right: int) -> Submodule:
    """{x ∈ H^n_right : e_i λ x = 0 for the listed generators i}.

    e_i λ Σ f_j(∂)u_j = Σ_j f_j(∂ + λ) table[i][j]; substituting λ = μ − ∂
    makes the conditions linear over k[μ] in f_j(μ).
    """
    cols = []
    for i in generators:
        for k in range(len(table[i][0]) if n_right else 0):
            by_power: Dict[int, List[MPoly]] = {}
            for j in range(n_right):
                p = table[i][j][k]
                if not p:
                    continue
                q = p.subs({LAM: MP - DP})
                for t, c in q.coeffs(D).items():
                    by_power.setdefault(t, [ZERO] * n_right)[j] = rename(c, MU, D)
            cols.extend(by_power.values())
    if not cols:
        return full_submodule(n_right)
    Q = PolyMatrix([tuple(col[j] for col in cols) for j in range(n_right)], len(cols))
    return kernel(Q)


def center(C: ConformalAlgebra) -> Submodule:
    """Z(C) = {a : [a λ e_j] = 0 for every generator e_j}."""
    return annihilator(C.table, C.rank, C.rank)


# -- ideals and quotients ------------------------------------------------------
def is_ideal(C: ConformalAlgebra, I: Submodule) -> bool:
    for j in range(C.rank):
        e = C.generator(j)
        for b in I.basis:
            for w in lambda_parts(C.bracket(e, b)).values():
                if not membership(w, I):
                    return False
    return True


def is_subalgebra(C: ConformalAlgebra, S: Submodule) -> bool:
    return bracket_span(C, S.basis, S.basis) <= S


def ideal_closure(C: ConformalAlgebra, seed: Submodule) -> Submodule:
    """Smallest ideal containing ``seed`` (fixpoint of adjoining bracket coefficients)."""
    I = seed
    gens = [C.generator(j) for j in range(C.rank)]
    while True:
        rows = list(I.basis)
        for e in gens:
            for b in I.basis:
                rows.extend(w for w in lambda_parts(C.bracket(e, b)).values() if any(w))
        new = span(rows, C.rank)
        if new == I:
            return I
        I = new


def saturation_ideal(C: ConformalAlgebra, I: Submodule) -> Submodule:
    """Î = {a : h(∂)a ∈ I for some h ≠ 0}; checked to be an ideal again."""
    if not is_ideal(C, I):
        raise NotIdeal("input is not an ideal")
    S = saturate(I)
    if not is_ideal(C, S):
        raise CertificateFailure("saturation of an ideal failed to be an ideal")
    Z = center(C)
    if intersect(I, Z).is_zero() and not intersect(S, Z).is_zero():
        raise CertificateFailure("saturation created a nonzero intersection with the center")
    return S


@dataclass(frozen=True)
class Quotient:
    """Quotient algebra together with its projection data."""

    algebra: ConformalAlgebra
    basis: QuotientBasis
    ideal: Submodule

    def project(self, x: Sequence[MPoly]) -> Vector:
        return self.basis.project(x)

    @property
    def index_map(self) -> Dict[int, int]:
        """Old generator index → new generator index for generators kept verbatim."""
        return {c: k for k, c in enumerate(self.basis.kept) if self.basis.lifts[k] == unit_vector(len(self.basis.projection.entries), c)}


def quotient_algebra(C: ConformalAlgebra, I: Submodule, check: bool = True) -> Quotient:
    """C/I for a saturated ideal I, on the free basis chosen by :func:`quotient_basis`."""
    if not is_ideal(C, I):
        raise NotIdeal("cannot take a quotient by a non-ideal")
    if not is_saturated(I):
        raise NotSaturated("quotient would have torsion; saturate the ideal first")
    qb = quotient_basis(I)
    q = len(qb.kept)
    P = qb.projection
    t = [[vec_times_matrix(C.bracket(qb.lifts[i], qb.lifts[j]), P.entries, q) for j in range(q)] for i in range(q)]
    names = tuple(C.names[c] if qb.lifts[k] == C.generator(c) else C.names[c] + "'" for k, c in enumerate(qb.kept))
    Q = ConformalAlgebra.from_table(t, names)
    if check:
        for res in (check_anticommutativity(Q), check_jacobi(Q)):
            if not res:
                raise CertificateFailure("quotient failed the axioms: " + res.describe())
    return Quotient(Q, qb, I)


def subalgebra(C: ConformalAlgebra, S: Submodule) -> ConformalAlgebra:
    """The subalgebra S on its Hermite basis (generators named after unit rows)."""
    if not is_subalgebra(C, S):
        raise ValueError("submodule is not closed under the λ-bracket")
    r = S.rank
    t = [[coordinates_lambda(C.bracket(S.basis[i], S.basis[j]), S) for j in range(r)] for i in range(r)]
    names = []
    for k, b in enumerate(S.basis):
        nz = [i for i, x in enumerate(b) if x]
        names.append(C.names[nz[0]] if len(nz) == 1 and b[nz[0]] == ONE else f"s{k + 1}")
    return ConformalAlgebra.from_table(t, tuple(_unique_names(names)))


def restrict(C: ConformalAlgebra, indices: Sequence[int]) -> ConformalAlgebra:
    """Subalgebra spanned by a set of generators (which must be closed)."""
    return subalgebra(C, coordinate_submodule(C.rank, indices))


# -- split-structure verification -----------------------------------------------
def lie_of_block(C: ConformalAlgebra, indices: Sequence[int]) -> Optional[LieAlgebraFD]:
    """Read structure constants off a block whose brackets are constant and closed; else None."""
    idx = list(indices)
    pos = {g: a for a, g in enumerate(idx)}
    n = len(idx)
    c = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    for a, i in enumerate(idx):
        for b, j in enumerate(idx):
            for k, p in enumerate(C.table[i][j]):
                if not p:
                    continue
                if k not in pos or not p.is_constant():
                    return None
                c[a][b][pos[k]] = p.constant_term()
    return LieAlgebraFD(tuple(tuple(tuple(r) for r in m) for m in c), tuple(C.names[i] for i in idx))


def _expect(C: ConformalAlgebra, i: int, j: int, expected: Dict[int, MPoly]) -> bool:
    cell = C.table[i][j]
    return all(cell[k] == expected.get(k, ZERO) for k in range(C.rank))


def _check_summand_shape(C: ConformalAlgebra, s: Summand) -> Optional[str]:
    if s.kind not in (VIR, CUR, VIRCUR):
        return f"unknown summand kind {s.kind!r}"
    if s.has_virasoro:
        v = s.virasoro_index
        if not _expect(C, v, v, {v: DP + 2 * LP}):
            return f"generator {C.names[v]} is not Virasoro"
        for a in s.current_indices:
            if not _expect(C, v, a, {a: DP + LP}):
                return f"[{C.names[v]} λ {C.names[a]}] is not (∂+λ){C.names[a]}"
    if s.kind == VIR and len(s.indices) != 1:
        return "a vir summand has exactly one generator"
    if s.kind in (CUR, VIRCUR):
        g = lie_of_block(C, s.current_indices)
        if g is None:
            return "current block is not constant and closed"
        if s.lie is not None and g.structure_constants != s.lie.structure_constants:
            return "current block does not match the declared Lie algebra"
        if not g.check():
            return "current block is not a Lie algebra"
        if not g.is_semisimple():
            return "current block is not semisimple"
    return None


def verify_split_structure(C: ConformalAlgebra, S: SplitStructure) -> CheckResult:
    """Check a declared decomposition L = (L₁ ⊕ … ⊕ L_s) ⋉ R.

    Conditions: (a) summand shapes, (b) distinct summands commute,
    (d) summands map R into R, (c) R is a solvable subalgebra.
    """
    n = C.rank
    used = [i for s in S.summands for i in s.indices] + list(S.radical)
    if sorted(used) != list(range(n)):
        return CheckResult(False, None, None, "index sets do not partition the generators")
    for s in S.summands:
        msg = _check_summand_shape(C, s)
        if msg:
            return CheckResult(False, ("a", s.kind, s.indices), None, "(a) " + msg)
    for x, s in enumerate(S.summands):
        for t in S.summands[x + 1:]:
            for i in s.indices:
                for j in t.indices:
                    if any(C.table[i][j]):
                        return CheckResult(False, ("b", i, j), C.table[i][j], "(b) summands do not commute")
    R = coordinate_submodule(n, S.radical)
    for i in S.semisimple_indices():
        e = C.generator(i)
        for b in R.basis:
            for w in lambda_parts(C.bracket(e, b)).values():
                if not membership(w, R):
                    return CheckResult(False, ("d", i), w, "(d) summand does not preserve the radical")
    if not is_subalgebra(C, R):
        return CheckResult(False, ("c",), None, "(c) radical is not closed")
    if not is_solvable(C, R):
        return CheckResult(False, ("c",), None, "(c) radical is not solvable")
    return PASS


def radical_submodule(C: ConformalAlgebra, S: SplitStructure) -> Submodule:
    return coordinate_submodule(C.rank, S.radical)
