"""Exact computations with finite conformal Lie algebras over H = k[∂].

Layers, bottom up: :mod:`poly` (polynomials in ∂, λ, μ), :mod:`hmodule`
(submodules of free k[∂]-modules), :mod:`algebra` (λ-bracket tables),
:mod:`modules`, :mod:`extensions`, :mod:`ado`, plus :mod:`fileio` and :mod:`cli`.
"""

from .errors import *  # noqa: F401,F403
from .poly import DP, LP, MP, ONE, ZERO, MPoly, P, parse_poly, poly_add, poly_divmod_linear, poly_mul, poly_subst
from .hmodule import (
    PolyMatrix,
    Submodule,
    hermite_form,
    intersect,
    kernel,
    membership,
    quotient_presentation,
    saturate,
    smith_form,
    span,
)
from .algebra import (
    ConformalAlgebra,
    LieAlgebraFD,
    LieRep,
    SplitStructure,
    Summand,
    adjoint_rep,
    bracket_eval,
    center,
    check_anticommutativity,
    check_jacobi,
    derived_series,
    direct_sum,
    heisenberg,
    ideal_closure,
    lower_central_series,
    make_current,
    make_vir_cur,
    make_virasoro,
    quotient_algebra,
    saturation_ideal,
    semidirect,
    sl2,
    sl2_standard_rep,
    verify_split_structure,
    zero_algebra,
)
from .modules import (
    ConformalModule,
    IrreducibleSpec,
    act_submodule,
    adjoint,
    check_module,
    find_irreducible_submodule,
    is_trivial,
    make_irreducible,
    rep_kernel,
    triangular_series,
)
from .extensions import (
    Cochain,
    SplittingMap,
    build_extension,
    check_cocycle,
    differential,
    extension_isomorphism,
    split_cocycle,
)
from .ado import AdoInput, Representation, build_faithful, find_ideal_general, find_ideal_nilpotent, verify_representation
from .families import cur_sl2_standard, vir_line_with_center, vir_semidirect, vircur_sl2_standard

__version__ = "0.1.0"
