"""Ready-made algebras of the shape L₀ ⋉ R used by the demos, tests and sample files.

Weights are pairs ``(α, Δ)``: the Virasoro generator acts on a radical
generator r by ``(α + ∂ + Δλ) r``.  ``None`` means that generator is acted on
trivially.
"""

from __future__ import annotations

from typing import Dict, Optional, Sequence, Tuple

from .algebra import (
    ConformalAlgebra,
    LieRep,
    SplitStructure,
    make_current,
    make_vir_cur,
    make_virasoro,
    semidirect,
    sl2,
    sl2_standard_rep,
    zero_algebra,
)
from .poly import DP, LAM, LP, ZERO, MPoly, as_rat

Weight = Optional[Tuple[object, object]]


def radical_table(n: int, brackets: Dict[Tuple[int, int], Dict[int, object]]):
    """An n × n × n table from the brackets ``(i, j) -> {k: coefficient}``, completed anti-commutatively."""
    t = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
    flip = {LAM: -DP - LP}
    for (i, j), out in brackets.items():
        for k, p in out.items():
            p = MPoly.coerce(p)
            t[i][j][k] = p
            t[j][i][k] = -p.subs(flip)
    return t


def weight_action(n0: int, vir: int, weights: Sequence[Weight], current: Optional[Dict[int, list]] = None):
    """Action table of L₀ (rank n0) on a radical of rank ``len(weights)``.

    ``current`` maps an L₀ generator to a constant matrix acting on the first
    ``len(M)`` radical generators (column convention: ``x·r_j = Σ_k M[k][j] r_k``).
    """
    m = len(weights)
    act = [[[ZERO] * m for _ in range(m)] for _ in range(n0)]
    for j, w in enumerate(weights):
        if w is not None:
            alpha, delta = w
            act[vir][j][j] = as_rat(alpha) + DP + as_rat(delta) * LP
    for i, M in (current or {}).items():
        for j in range(len(M)):
            for k in range(len(M)):
                if M[k][j]:
                    act[i][j][k] = MPoly.const(M[k][j])
    return act


def vir_semidirect(weights: Sequence[Weight], names: Sequence[str],
                   brackets: Optional[Dict[Tuple[int, int], Dict[int, object]]] = None) -> ConformalAlgebra:
    """Vir ⋉ R with diagonal Virasoro weights on R and the given radical brackets."""
    n = len(weights)
    R = ConformalAlgebra.from_table(radical_table(n, brackets or {}), tuple(names))
    return semidirect(make_virasoro(), R, weight_action(1, 0, weights))


def vir_line_with_center(alpha=0, delta=1, central: int = 1) -> ConformalAlgebra:
    """Vir ⋉ (M_{α,Δ} ⊕ H^central) with an abelian radical; the worked example is (0, 1, 1)."""
    names = ("a",) + (("c",) if central == 1 else tuple(f"c{k + 1}" for k in range(central)))
    return vir_semidirect([(alpha, delta)] + [None] * central, names)


def vircur_sl2_standard(central: int = 1, alpha=0, delta=1) -> ConformalAlgebra:
    """(Vir ⋉ Cur sl2) ⋉ (M_{α,Δ,U} ⊕ H^central) with U the 2-dim standard representation."""
    U = sl2_standard_rep()
    current = {i + 1: U.matrices[i] for i in range(3)}
    weights = [(alpha, delta), (alpha, delta)] + [None] * central
    R = zero_algebra(2 + central, ("p", "q") + tuple(f"c{k + 1}" if central > 1 else "c" for k in range(central)))
    return semidirect(make_vir_cur(sl2()), R, weight_action(4, 0, weights, current))


def cur_sl2_standard(central: int = 1) -> ConformalAlgebra:
    """Cur sl2 ⋉ (Cur U ⊕ H^central): a current-type algebra outside the supported branch."""
    U: LieRep = sl2_standard_rep()
    S = make_current(sl2())
    m = 2 + central
    act = weight_action(3, 0, [None] * m, {i: U.matrices[i] for i in range(3)})
    R = zero_algebra(m, ("p", "q") + tuple(f"c{k + 1}" if central > 1 else "c" for k in range(central)))
    L = semidirect(S, R, act)
    return L.with_split(SplitStructure(S.split.summands, tuple(range(3, 3 + m))))
