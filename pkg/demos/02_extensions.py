"""Extensions of an irreducible module by a trivial one always split.

Build a random coboundary, recover a splitting map from the cocycle alone, and
check the resulting change of basis is a module isomorphism.

    python3 demos/02_extensions.py [seed]
"""

import random
import sys
from fractions import Fraction

from confado import (
    IrreducibleSpec,
    SplittingMap,
    build_extension,
    check_cocycle,
    differential,
    extension_isomorphism,
    make_irreducible,
    make_vir_cur,
    make_virasoro,
    sl2,
    split_cocycle,
)
from confado.algebra import adjoint_rep
from confado.fileio import dump_cochain
from confado.poly import MPoly, vec_str

seed = int(sys.argv[1]) if len(sys.argv) > 1 else 0
rng = random.Random(seed)


def rand_poly():
    return MPoly({(k, 0, 0): Fraction(rng.randint(-3, 3)) for k in range(rng.randint(0, 2) + 1)})


cases = [
    ("Vir, M(1/2, 3)", make_irreducible(make_virasoro(), IrreducibleSpec.m(Fraction(1, 2), 3))),
    ("Vir ⋉ Cur sl2, weight 2 adjoint", make_irreducible(make_vir_cur(sl2()), IrreducibleSpec.mu(1, 2, adjoint_rep(sl2())))),
    ("Vir ⋉ Cur sl2, weight 0 adjoint", make_irreducible(make_vir_cur(sl2()), IrreducibleSpec.mu(-1, 0, adjoint_rep(sl2())))),
]

for title, M in cases:
    tau = SplittingMap.make([[rand_poly()] for _ in range(M.rank)])
    phi = differential(tau, M)
    print(f"== {title}")
    print("cocycle:", dump_cochain(phi).strip().replace("\n", " | "))
    print("cocycle identity holds:", check_cocycle(phi).ok)
    found = split_cocycle(phi)
    print("recovered tau:", "; ".join(vec_str(r) for r in found.matrix))
    print("differential matches:", differential(found, M) == phi)
    print("u ↦ u − τ(u) is an isomorphism onto the direct sum:",
          extension_isomorphism(build_extension(phi), M, found).ok)
    print()
