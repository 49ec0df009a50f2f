"""Brackets, axioms and small modules, evaluated exactly.

    python3 demos/01_axioms_and_modules.py
"""

from confado import (
    IrreducibleSpec,
    bracket_eval,
    center,
    check_anticommutativity,
    check_jacobi,
    check_module,
    heisenberg,
    make_current,
    make_irreducible,
    make_vir_cur,
    make_virasoro,
    sl2,
    sl2_standard_rep,
)
from confado.algebra import lower_central_series
from confado.modules import triangular_series
from confado.poly import DP, ONE, vec_str

vir = make_virasoro()
print("[v λ v]      =", vec_str(bracket_eval(vir, (ONE,), (ONE,))))
print("[v λ ∂v]     =", vec_str(bracket_eval(vir, (ONE,), (DP,))))
print("[∂v λ v]     =", vec_str(bracket_eval(vir, (DP,), (ONE,))))

for name, C in [("Vir", vir), ("Cur sl2", make_current(sl2())), ("Cur Heisenberg", make_current(heisenberg())),
                ("Vir ⋉ Cur sl2", make_vir_cur(sl2()))]:
    ok = check_anticommutativity(C).ok and check_jacobi(C).ok
    print(f"{name:16s} rank {C.rank}  axioms {'hold' if ok else 'FAIL'}")

heis = make_current(heisenberg())
print("Heisenberg current algebra: lower central ranks",
      [S.rank for S in lower_central_series(heis)], " center", [vec_str(b) for b in center(heis).basis])

for alpha, delta in [(0, 1), (2, -3), (1, 0)]:
    M = make_irreducible(vir, IrreducibleSpec.m(alpha, delta))
    layers = triangular_series(M)
    print(f"M({alpha},{delta}): v λ u = {M.table[0][0][0]},  module ok {check_module(M).ok},",
          "layers", [str(L) for L in layers])

M = make_irreducible(make_vir_cur(sl2()), IrreducibleSpec.mu(0, 1, sl2_standard_rep()))
print("Vir ⋉ Cur sl2 acting on the standard representation: rank", M.rank, " module ok", check_module(M).ok)
