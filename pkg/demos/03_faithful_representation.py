"""A finite faithful representation of Vir ⋉ (M(0,1) ⊕ Hc), built and certified.

The algebra has a nonzero center, so the adjoint action is not faithful.  The
pipeline splits off quotients by the center and by a suitable ideal, builds
representations of both, and pulls them back.

    python3 demos/03_faithful_representation.py
"""

from confado import AdoInput, adjoint, build_faithful, center, rep_kernel, verify_representation
from confado.families import vir_line_with_center, vircur_sl2_standard
from confado.fileio import dump_algebra, dump_module
from confado.poly import vec_str

L = vir_line_with_center()
print(dump_algebra(L))
print("center:", [vec_str(b) for b in center(L).basis])
print("kernel of the adjoint action:", [vec_str(b) for b in rep_kernel(adjoint(L)).basis])

rep = build_faithful(AdoInput.make(L))
print("\nrepresentation of rank", rep.rank)
print(dump_module(rep.module))
cert = verify_representation(L, rep)
print(cert.to_text())

L2 = vircur_sl2_standard()
rep2 = build_faithful(AdoInput.make(L2))
cert2 = verify_representation(L2, rep2)
print(f"(Vir ⋉ Cur sl2) ⋉ (standard ⊕ Hc): rank {L2.rank} algebra, module rank {rep2.rank}, "
      f"certificate {'pass' if cert2.ok else 'fail'}")
