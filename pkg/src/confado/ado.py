"""Ideals avoiding the center, and the recursive faithful-representation construction."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from .algebra import (
    ConformalAlgebra,
    SplitStructure,
    Summand,
    center,
    coordinate_submodule,
    derived_series,
    ideal_closure,
    is_ideal,
    lower_central_series,
    quotient_algebra,
    radical_submodule,
    restrict,
    saturation_ideal,
    subalgebra,
    verify_split_structure,
)
from .errors import CertificateFailure, HypothesisViolation, UnsupportedCurrentType
from .hmodule import (
    Submodule,
    Vector,
    intersect,
    is_saturated,
    lambda_parts,
    membership,
    span,
    unit_vector,
    zero_vector,
)
from .modules import (
    ConformalModule,
    act_submodule,
    adjoint,
    check_module,
    direct_sum_modules,
    find_irreducible_submodule,
    pullback,
    rep_kernel,
    submodule_module,
)
from .poly import ZERO, vec_str

ADJOINT, SOCLE, DIRECT_SUM, PULLBACK = "adjoint", "socle-trivial", "direct-sum", "quotient-pullback"


@dataclass(frozen=True)
class AdoInput:
    algebra: ConformalAlgebra
    split: SplitStructure

    @classmethod
    def make(cls, algebra: ConformalAlgebra, split: Optional[SplitStructure] = None) -> "AdoInput":
        split = split or algebra.split
        if split is None:
            raise HypothesisViolation("a split structure L = L0 ⋉ R is required")
        res = verify_split_structure(algebra, split)
        if not res:
            raise HypothesisViolation("split structure rejected: " + res.describe())
        return cls(algebra.with_split(split), split)


@dataclass(frozen=True)
class Provenance:
    kind: str
    rank: int
    note: str = ""
    children: Tuple["Provenance", ...] = ()

    def depth(self) -> int:
        return 1 + max((c.depth() for c in self.children), default=0)

    def lines(self, indent: int = 0) -> List[str]:
        head = "  " * indent + f"{self.kind} (module rank {self.rank})"
        if self.note:
            head += f": {self.note}"
        out = [head]
        for c in self.children:
            out.extend(c.lines(indent + 1))
        return out

    def to_dict(self) -> dict:
        return {"kind": self.kind, "rank": self.rank, "note": self.note, "children": [c.to_dict() for c in self.children]}


@dataclass(frozen=True)
class Representation:
    module: ConformalModule
    provenance: Provenance

    @property
    def rank(self) -> int:
        return self.module.rank


# -- ideals with zero intersection with the center --------------------------
def _gens(L: ConformalAlgebra, idx: Sequence[int]) -> Submodule:
    return coordinate_submodule(L.rank, idx)


def _acts_trivially(L: ConformalAlgebra, s: Summand, S: Submodule) -> bool:
    return act_submodule(adjoint(L), _gens(L, s.indices), S).is_zero()


def _closed_under(L: ConformalAlgebra, elements: Sequence[Vector], S: Submodule) -> bool:
    for a in elements:
        for b in S.basis:
            for w in lambda_parts(L.bracket(a, b)).values():
                if not membership(w, S):
                    return False
    return True


def _irreducible_in(L: ConformalAlgebra, s: Summand, S: Submodule, degree_bound: int) -> Submodule:
    """An irreducible L1-submodule of the ideal S, back in L's coordinates."""
    sub = submodule_module(adjoint(L), S, s.indices)
    found = find_irreducible_submodule(sub, s, degree_bound)
    if found is None:
        raise HypothesisViolation("no irreducible submodule: the summand acts trivially")
    gens = []
    for y in found.generators:
        x = zero_vector(L.rank)
        for c, b in zip(y, S.basis):
            if c:
                x = tuple(p + c * q for p, q in zip(x, b))
        gens.append(x)
    return span(gens, L.rank)


def _vir_summand(inp: AdoInput, index: int) -> Summand:
    s = inp.split.summands[index]
    if not s.has_virasoro:
        raise HypothesisViolation("the chosen summand carries no Virasoro element")
    return s


def _semisimple_elements(L: ConformalAlgebra, split: SplitStructure) -> List[Vector]:
    return [L.generator(i) for i in split.semisimple_indices()]


def _center_of(L: ConformalAlgebra, S: Submodule) -> Submodule:
    """Center of the subalgebra S, in L's coordinates."""
    Z = center(subalgebra(L, S))
    rows = []
    for z in Z.basis:
        x = zero_vector(L.rank)
        for c, b in zip(z, S.basis):
            if c:
                x = tuple(p + c * q for p, q in zip(x, b))
        rows.append(x)
    return span(rows, L.rank)


def find_ideal_nilpotent(inp: AdoInput, index: int, R: Optional[Submodule] = None,
                         degree_bound: int = 6) -> Submodule:
    """Ideal M0 of L0 ⋉ R with [R λ M0] = 0 and zero intersection with the center.

    ``R`` defaults to the radical; it must be nilpotent and a nontrivial module
    over the chosen Vir-bearing summand.
    """
    L = inp.algebra
    s = _vir_summand(inp, index)
    R = radical_submodule(L, inp.split) if R is None else R
    series = lower_central_series(L, R)
    if not series[-1].is_zero():
        raise HypothesisViolation("R is not nilpotent")
    if _acts_trivially(L, s, R):
        raise HypothesisViolation("R is a trivial module over the chosen summand")
    m = max(k for k, T in enumerate(series) if not T.is_zero() and not _acts_trivially(L, s, T))
    M0 = _irreducible_in(L, s, series[m], degree_bound)
    whole = span(list(R.basis) + [L.generator(i) for i in inp.split.semisimple_indices()], L.rank)
    if not _closed_under(L, list(_semisimple_elements(L, inp.split)) + list(R.basis), M0):
        raise CertificateFailure("M0 is not an ideal of L0 ⋉ R")
    if not act_submodule(adjoint(L), R, M0).is_zero():
        raise CertificateFailure("[R λ M0] ≠ 0")
    if not intersect(M0, _center_of(L, whole)).is_zero():
        raise CertificateFailure("M0 meets the center")
    return M0


def find_ideal_general(inp: AdoInput, index: int, degree_bound: int = 6) -> Submodule:
    """Nonzero ideal I of L with I ∩ Z(L) = 0, for R a nontrivial module over the summand."""
    L = inp.algebra
    s = _vir_summand(inp, index)
    R = radical_submodule(L, inp.split)
    if _acts_trivially(L, s, R):
        raise HypothesisViolation("R is a trivial module over the chosen summand")
    derived = derived_series(L, R)
    if not derived[-1].is_zero():
        raise HypothesisViolation("declared radical is not solvable")
    R1 = derived[1] if len(derived) > 1 else R
    if not lower_central_series(L, R1)[-1].is_zero():
        raise CertificateFailure("R' = R² is not nilpotent")
    Z = center(L)
    if _acts_trivially(L, s, R1):
        I = _irreducible_in(L, s, R, degree_bound)
        if not act_submodule(adjoint(L), R, I).is_zero():
            raise CertificateFailure("[R λ M0] ≠ 0")
        if not is_ideal(L, I):
            raise CertificateFailure("M0 is not an ideal")
    else:
        M0 = find_ideal_nilpotent(inp, index, R1, degree_bound)
        I = ideal_closure(L, M0)
    if I.is_zero() or not intersect(I, Z).is_zero():
        raise CertificateFailure("ideal meets the center")
    return I


# -- the recursion ---------------------------------------------------------------
def _socle(L: ConformalAlgebra) -> ConformalModule:
    """L ⊕ Hu with a λ b̄ = 0 and a λ u = ā, for a trivial algebra L."""
    n = L.rank
    t = [[[ZERO] * (n + 1) for _ in range(n + 1)] for _ in range(n)]
    for i in range(n):
        t[i][n] = list(unit_vector(n + 1, i))
    names = tuple(nm + "_" for nm in L.names) + ("u",)
    return ConformalModule.from_table(L, t, names, rank=n + 1)


def _block(L: ConformalAlgebra, split: SplitStructure, idx: Sequence[int]):
    """The ideal spanned by a set of generators, with its split structure and the projection rows."""
    idx = sorted(idx)
    pos = {g: k for k, g in enumerate(idx)}
    B = restrict(L, idx)
    summands = tuple(s.shifted(pos) for s in split.summands if all(i in pos for i in s.indices))
    sub_split = SplitStructure(summands, tuple(pos[i] for i in split.radical if i in pos))
    proj = [unit_vector(len(idx), pos[i]) if i in pos else zero_vector(len(idx)) for i in range(L.rank)]
    return B.with_split(sub_split), sub_split, proj


def _quotient(L: ConformalAlgebra, split: SplitStructure, J: Submodule):
    Q = quotient_algebra(L, J)
    kept = {}
    for k, c in enumerate(Q.basis.kept):
        if Q.basis.lifts[k] == L.generator(c):
            kept[c] = k
    for i in split.semisimple_indices():
        if i not in kept:
            raise CertificateFailure("a semisimple generator did not survive the quotient")
    summands = tuple(s.shifted(kept) for s in split.summands)
    ss = set(split.semisimple_indices())
    radical = tuple(k for k in range(Q.algebra.rank) if k not in {kept[i] for i in ss})
    qsplit = SplitStructure(summands, radical)
    res = verify_split_structure(Q.algebra, qsplit)
    if not res:
        raise CertificateFailure("inherited split structure fails: " + res.describe())
    return Q.algebra.with_split(qsplit), qsplit, Q.basis.projection.entries


def _finish(L: ConformalAlgebra, M: ConformalModule, prov: Provenance) -> Representation:
    res = check_module(M)
    if not res:
        raise CertificateFailure("constructed action fails the module identity: " + res.describe())
    if not rep_kernel(M).is_zero():
        raise CertificateFailure("constructed representation is not faithful")
    return Representation(M, prov)


def _combine(L: ConformalAlgebra, parts, note: str) -> Representation:
    mods = [pullback(rep.module, L, proj) for rep, proj in parts]
    M = direct_sum_modules(*mods)
    prov = Provenance(DIRECT_SUM, M.rank, note, tuple(rep.provenance for rep, _ in parts))
    return _finish(L, M, prov)


def _build(L: ConformalAlgebra, split: SplitStructure, degree_bound: int, depth: int) -> Representation:
    if depth > 4 * L.rank + 4:
        raise CertificateFailure("recursion did not terminate")  # pragma: no cover
    n = L.rank
    Z = center(L)
    if Z.is_zero():
        return _finish(L, adjoint(L), Provenance(ADJOINT, n, "center is zero"))
    if L.is_trivial():
        return _finish(L, _socle(L), Provenance(SOCLE, n + 1, "trivial algebra"))
    R = radical_submodule(L, split)
    vb = [k for k, s in enumerate(split.summands) if s.has_virasoro]
    active = [k for k in vb if not _acts_trivially(L, split.summands[k], R)]
    if not active:
        if vb:
            left = [i for k in vb for i in split.summands[k].indices]
        else:
            # only current-type summands: supported when R is an abelian ideal acted on trivially
            ss = list(split.semisimple_indices())
            if not ss or any(any(L.table[i][j]) for i in range(n) for j in split.radical):
                raise UnsupportedCurrentType(
                    "current-type algebra with nonzero center and nontrivial radical action"
                )
            left = ss
        right = [i for i in range(n) if i not in left]
        children = []
        for idx in (left, right):
            B, bsplit, proj = _block(L, split, idx)
            children.append((_build(B, bsplit, degree_bound, depth + 1), proj))
        return _combine(L, children, "L = L' ⊕ L''")
    inp = AdoInput(L, split)
    I = find_ideal_general(inp, active[0], degree_bound)
    I_hat = saturation_ideal(L, I)
    if not intersect(I_hat, Z).is_zero():
        raise CertificateFailure("saturated ideal meets the center")
    if not is_saturated(Z):
        raise CertificateFailure("center is not saturated")
    for J, what in ((Z, "center"), (I_hat, "saturated ideal")):
        if not J <= R:
            raise CertificateFailure(f"{what} is not inside the radical")
    children = []
    for J, what in ((Z, "L/Z"), (I_hat, "L/Î")):
        Q, qsplit, proj = _quotient(L, split, J)
        rep = _build(Q, qsplit, degree_bound, depth + 1)
        child = Provenance(PULLBACK, rep.rank, f"{what}, ideal " + "; ".join(vec_str(b) for b in J.basis), (rep.provenance,))
        children.append((Representation(rep.module, child), proj))
    return _combine(L, children, "pullbacks from L/Z and L/Î")


def build_faithful(inp: AdoInput, degree_bound: int = 6) -> Representation:
    """A finite faithful representation of L, verified before it is returned."""
    return _build(inp.algebra, inp.split, degree_bound, 0)


# -- certificates ---------------------------------------------------------------
def module_residuals(M: ConformalModule) -> List[Tuple[Tuple[int, int, int], str]]:
    """All nonzero module-identity residuals on generator triples."""
    from .algebra import action_residual

    out = []
    L = M.algebra
    for i in range(L.rank):
        for j in range(L.rank):
            for k in range(M.rank):
                res = action_residual(L.table, M.table, i, j, k, L.rank, M.rank)
                if any(res):
                    out.append(((i, j, k), vec_str(res)))
    return out


def input_hash(L: ConformalAlgebra) -> str:
    from .fileio import dump_algebra

    return hashlib.sha256(dump_algebra(L).encode("utf-8")).hexdigest()


@dataclass
class Certificate:
    input_hash: str
    module_rank: int
    residuals: List[Tuple[Tuple[int, int, int], str]]
    kernel_basis: List[str]
    provenance: Optional[Provenance] = None
    notes: List[str] = field(default_factory=list)

    @property
    def module_ok(self) -> bool:
        return not self.residuals

    @property
    def faithful(self) -> bool:
        return not self.kernel_basis

    @property
    def ok(self) -> bool:
        return self.module_ok and self.faithful

    def to_text(self) -> str:
        lines = ["[input hash]", self.input_hash, "", "[provenance]"]
        lines.extend(self.provenance.lines() if self.provenance else ["(none)"])
        lines += ["", "[residuals]"]
        lines.extend([f"{i + 1} {j + 1} {k + 1}: {r}" for (i, j, k), r in self.residuals] or ["none"])
        lines += ["", "[kernel basis]"]
        lines.extend(self.kernel_basis or ["none"])
        lines += ["", "[module rank]", str(self.module_rank), "", "[verdict]", "pass" if self.ok else "fail"]
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {
            "input_hash": self.input_hash,
            "module_rank": self.module_rank,
            "residuals": [{"where": [i + 1, j + 1, k + 1], "residual": r} for (i, j, k), r in self.residuals],
            "kernel_basis": self.kernel_basis,
            "provenance": self.provenance.to_dict() if self.provenance else None,
            "ok": self.ok,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False)


def verify_representation(L: ConformalAlgebra, rep) -> Certificate:
    """Independent check of a representation (a Representation or a bare module)."""
    M = rep.module if isinstance(rep, Representation) else rep
    prov = rep.provenance if isinstance(rep, Representation) else None
    if M.algebra != L:
        raise ValueError("representation is over a different algebra")
    K = rep_kernel(M)
    return Certificate(input_hash(L), M.rank, module_residuals(M), [vec_str(b) for b in K.basis], prov)
