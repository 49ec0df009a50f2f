import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from confado.algebra import (
    CUR,
    VIR,
    VIRCUR,
    ConformalAlgebra,
    LieAlgebraFD,
    SplitStructure,
    Summand,
    abelian_lie,
    bracket_eval,
    center,
    check_anticommutativity,
    check_jacobi,
    derived_series,
    direct_sum,
    heisenberg,
    ideal_closure,
    is_ideal,
    lower_central_series,
    make_current,
    make_vir_cur,
    make_virasoro,
    quotient_algebra,
    saturation_ideal,
    semidirect,
    sl2,
    solvable2,
    verify_split_structure,
    zero_algebra,
)
from confado.errors import NotDerivation, NotIdeal, NotLie, NotModule, NotSaturated
from confado.families import vir_line_with_center, vir_semidirect, vircur_sl2_standard
from confado.hmodule import coordinate_submodule, full_submodule, intersect, span, zero_submodule
from confado.modules import adjoint, rep_kernel
from confado.poly import DP, LP, ONE, ZERO, MPoly

from oracle import anticomm_holds, dpolys, jacobi_holds, sym_pair, sym_table, to_sympy

VIR_ALG = make_virasoro()
CUR_SL2 = make_current(sl2())
CUR_HEIS = make_current(heisenberg())
VIRCUR_SL2 = make_vir_cur(sl2())


class TestBracketEval:
    def test_vir_sesquilinear_examples(self):
        v = (ONE,)
        dv = (DP,)
        assert bracket_eval(VIR_ALG, dv, v) == (-LP * (DP + 2 * LP),)
        assert bracket_eval(VIR_ALG, v, dv) == ((LP + DP) * (DP + 2 * LP),)

    def test_current_bracket_is_constant(self):
        e, h, f = (CUR_SL2.generator(i) for i in range(3))
        assert bracket_eval(CUR_SL2, e, f) == (ZERO, ONE, ZERO)
        assert bracket_eval(CUR_SL2, h, e) == (2 * ONE, ZERO, ZERO)
        assert bracket_eval(CUR_SL2, h, f) == (ZERO, ZERO, -2 * ONE)

    @settings(max_examples=30, deadline=None)
    @given(dpolys(), dpolys(), st.integers(0, 3), st.integers(0, 3))
    def test_matches_sympy_sesquilinearity(self, f, g, i, j):
        C = VIRCUR_SL2
        a = tuple(f if k == i else ZERO for k in range(4))
        b = tuple(g if k == j else ZERO for k in range(4))
        got = [to_sympy(p) for p in bracket_eval(C, a, b)]
        want = sym_pair(sym_table(C.table), [to_sympy(x) for x in a], [to_sympy(x) for x in b], sympy.Symbol("l"))
        assert [sympy.expand(x) for x in got] == want

    @settings(max_examples=30, deadline=None)
    @given(dpolys(), st.integers(0, 3), st.integers(0, 3))
    def test_sesquilinear_rules(self, f, i, j):
        C = VIRCUR_SL2
        a, b = C.generator(i), C.generator(j)
        base = bracket_eval(C, a, b)
        fa = tuple(f * x for x in a)
        fb = tuple(f * x for x in b)
        assert bracket_eval(C, fa, b) == tuple(f.subs({0: -LP}) * p for p in base)
        assert bracket_eval(C, a, fb) == tuple(f.subs({0: DP + LP}) * p for p in base)


class TestAxioms:
    @pytest.mark.parametrize("C", [VIR_ALG, CUR_SL2, CUR_HEIS, VIRCUR_SL2, make_current(abelian_lie(1))],
                             ids=["vir", "cur-sl2", "cur-heis", "vircur-sl2", "cur-k"])
    def test_constructors_pass_and_agree_with_oracle(self, C):
        assert check_anticommutativity(C).ok
        assert check_jacobi(C).ok
        assert anticomm_holds(C.table) and jacobi_holds(C.table)

    def test_vir_jacobi_by_hand(self):
        d, l, m = sympy.symbols("d l m")
        lhs = (d + l + 2 * m) * (d + 2 * l) - (d + m + 2 * l) * (d + 2 * m)
        rhs = (l - m) * (d + 2 * l + 2 * m)
        assert sympy.expand(lhs - rhs) == 0

    def test_anticommutativity_witness(self):
        C = ConformalAlgebra.from_table([[[ZERO, ONE], [ZERO, ZERO]], [[ZERO, ZERO], [ZERO, ZERO]]])
        res = check_anticommutativity(C)
        assert not res.ok
        assert res.residual == (ZERO, 2 * ONE)
        assert not anticomm_holds(C.table)

    def test_jacobi_failure_on_non_lie_table(self):
        t = [[[ZERO] * 3 for _ in range(3)] for _ in range(3)]
        t[0][1] = [ONE, ZERO, ZERO]
        t[1][0] = [-ONE, ZERO, ZERO]
        t[0][2] = [ZERO, ONE, ZERO]
        t[2][0] = [ZERO, -ONE, ZERO]
        C = ConformalAlgebra.from_table(t)
        assert check_anticommutativity(C).ok
        res = check_jacobi(C)
        assert not res.ok and res.residual is not None and any(res.residual)
        assert not jacobi_holds(C.table)
        with pytest.raises(NotLie):
            ConformalAlgebra.from_table(t, check=True)

    @settings(max_examples=15, deadline=None)
    @given(st.integers(0, 10_000))
    def test_random_tables_agree_with_oracle(self, seed):
        rng = random.Random(seed)
        n = rng.randint(1, 2)
        t = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                for k in range(n):
                    if rng.random() < 0.5:
                        p = MPoly({(rng.randint(0, 1), rng.randint(0, 1), 0): Fraction(rng.randint(-2, 2))})
                        t[i][j][k] = p
                        t[j][i][k] = -p.subs({1: -DP - LP})
        C = ConformalAlgebra.from_table(t)
        assert check_anticommutativity(C).ok == anticomm_holds(t)
        assert check_jacobi(C).ok == jacobi_holds(t)

    def test_lie_algebra_checks(self):
        assert sl2().check().ok and heisenberg().check().ok
        assert sl2().is_semisimple() and not heisenberg().is_semisimple()
        bad = LieAlgebraFD.from_brackets(3, {(0, 1): {0: 1}, (0, 2): {1: 1}})
        assert not bad.check().ok
        with pytest.raises(NotLie):
            make_current(bad)


class TestConstructors:
    def test_current_examples(self):
        assert make_current(abelian_lie(1)).is_trivial()
        x, y, z = (CUR_HEIS.generator(i) for i in range(3))
        assert bracket_eval(CUR_HEIS, x, y) == (ZERO, ZERO, ONE)
        assert bracket_eval(CUR_HEIS, x, z) == (ZERO, ZERO, ZERO)

    def test_vir_cur_mixed_bracket(self):
        C = make_vir_cur(abelian_lie(1))
        v, a = C.generator(0), C.generator(1)
        assert bracket_eval(C, v, a) == (ZERO, DP + LP)
        assert bracket_eval(C, a, v) == (ZERO, LP)
        assert VIRCUR_SL2.rank == 4

    def test_semidirect_examples(self):
        L = vir_semidirect([(0, 1)], ("u",))
        assert L.rank == 2 and check_jacobi(L).ok and anticomm_holds(L.table) and jacobi_holds(L.table)
        assert semidirect(VIR_ALG, zero_algebra(0), []) == VIR_ALG
        act = [[[DP + LP if k == j else ZERO for k in range(3)] for j in range(3)]]
        built = semidirect(VIR_ALG, CUR_SL2, act)
        assert built == make_vir_cur(sl2())

    def test_semidirect_rejects_non_module(self):
        with pytest.raises(NotModule):
            semidirect(VIR_ALG, zero_algebra(1), [[[DP * DP + LP]]])

    def test_semidirect_rejects_non_derivation(self):
        act = [[[DP + LP if k == j else ZERO for k in range(3)] for j in range(3)]]
        act[0][2][2] = DP + 2 * LP
        with pytest.raises(NotDerivation):
            semidirect(VIR_ALG, CUR_HEIS, act)


class TestSeries:
    def test_lower_central(self):
        assert [S.rank for S in lower_central_series(CUR_HEIS)] == [3, 1, 0]
        assert [S.rank for S in lower_central_series(make_current(solvable2()))] == [2, 1, 1]
        assert [S.rank for S in lower_central_series(zero_algebra(2))] == [2, 0]

    def test_derived(self):
        assert [S.rank for S in derived_series(make_current(solvable2()))] == [2, 1, 0]
        assert [S.rank for S in derived_series(VIR_ALG)] == [1, 1]
        assert [S.rank for S in derived_series(zero_algebra(3))] == [3, 0]

    @pytest.mark.parametrize("C", [CUR_HEIS, VIRCUR_SL2, vir_line_with_center(), vircur_sl2_standard()])
    def test_derived_members_are_ideals_of_predecessor(self, C):
        series = derived_series(C)
        for prev, nxt in zip(series, series[1:]):
            assert nxt <= prev

    def test_lower_central_terminates_quickly(self):
        L = vir_semidirect([(1, 2), (-1, 3), (0, 4), None], ("a", "b", "c", "z"), {(0, 1): {2: 1}})
        R = coordinate_submodule(L.rank, range(1, 5))
        series = lower_central_series(L, R)
        assert len(series) <= R.rank + 1
        assert series[-1].is_zero()


class TestCenterAndIdeals:
    def test_center_examples(self):
        assert center(VIR_ALG).is_zero()
        assert center(CUR_HEIS).basis == ((ZERO, ZERO, ONE),)
        assert center(zero_algebra(1)) == full_submodule(1)

    @pytest.mark.parametrize(
        "C",
        [VIR_ALG, CUR_SL2, CUR_HEIS, VIRCUR_SL2, zero_algebra(2), vir_line_with_center(), vircur_sl2_standard(),
         vir_semidirect([(0, 1), (1, 2), None], ("a", "u", "c"), {(0, 1): {1: 1}})],
    )
    def test_center_equals_adjoint_kernel(self, C):
        Z, K = center(C), rep_kernel(adjoint(C))
        assert Z <= K and K <= Z
        for b in Z.basis:
            for j in range(C.rank):
                assert not any(C.bracket(b, C.generator(j)))

    def test_ideal_closure_examples(self):
        assert ideal_closure(CUR_HEIS, full_submodule(3)) == full_submodule(3)
        assert ideal_closure(CUR_HEIS, span([(ONE, ZERO, ZERO)], 3)) == coordinate_submodule(3, [0, 2])
        L = vir_line_with_center()
        A = coordinate_submodule(3, [1])
        assert ideal_closure(L, A) == A

    @settings(max_examples=20, deadline=None)
    @given(st.integers(0, 10_000))
    def test_ideal_closure_is_closure_operator(self, seed):
        rng = random.Random(seed)
        C = rng.choice([CUR_HEIS, vir_line_with_center(), VIRCUR_SL2])
        n = C.rank

        def rnd():
            rows = [[MPoly.const(rng.randint(-1, 1)) * (DP ** rng.randint(0, 1)) for _ in range(n)]
                    for _ in range(rng.randint(1, 2))]
            return span(rows, n)

        S = rnd()
        T = span(list(S.basis) + list(rnd().basis), n)
        cS, cT = ideal_closure(C, S), ideal_closure(C, T)
        assert S <= cS and is_ideal(C, cS)
        assert ideal_closure(C, cS) == cS
        assert cS <= cT

    def test_saturation_ideal(self):
        # H∂u is an ideal only when v acts on u with weight (0, 0)
        L0 = vir_semidirect([(0, 0)], ("u",))
        I = span([(ZERO, DP)], 2)
        assert is_ideal(L0, I)
        assert saturation_ideal(L0, I) == coordinate_submodule(2, [1])
        L = vir_semidirect([(0, 1)], ("u",))
        assert not is_ideal(L, I)
        U = coordinate_submodule(2, [1])
        assert saturation_ideal(L, U) == U
        W = vir_line_with_center(0, 0)
        Ihat = saturation_ideal(W, span([(ZERO, DP, ZERO)], 3))
        assert Ihat == coordinate_submodule(3, [1])
        assert intersect(Ihat, center(W)).is_zero()
        with pytest.raises(NotIdeal):
            saturation_ideal(L, span([(ONE, ZERO)], 2))

    def test_quotients(self):
        L = vir_semidirect([(0, 1)], ("u",))
        assert quotient_algebra(L, zero_submodule(2)).algebra.table == L.table
        Q = quotient_algebra(L, coordinate_submodule(2, [1]))
        assert Q.algebra.table == VIR_ALG.table
        assert quotient_algebra(L, full_submodule(2)).algebra.rank == 0
        with pytest.raises(NotSaturated):
            quotient_algebra(vir_semidirect([(0, 0)], ("u",)), span([(ZERO, DP)], 2))
        with pytest.raises(NotIdeal):
            quotient_algebra(L, coordinate_submodule(2, [0]))

    def test_quotient_projection_is_homomorphism(self):
        L = vircur_sl2_standard()
        I = coordinate_submodule(L.rank, [4, 5])
        Q = quotient_algebra(L, I)
        for i in range(L.rank):
            for j in range(L.rank):
                lhs = Q.project(L.bracket(L.generator(i), L.generator(j)))
                rhs = Q.algebra.bracket(Q.project(L.generator(i)), Q.project(L.generator(j)))
                assert lhs == rhs


class TestSplitStructure:
    def test_examples(self):
        L = vir_semidirect([(0, 1)], ("u",))
        good = SplitStructure((Summand(VIR, (0,)),), (1,))
        assert verify_split_structure(L, good).ok
        bad = SplitStructure((Summand(VIR, (0,)), Summand(VIR, (1,))), ())
        res = verify_split_structure(L, bad)
        assert not res.ok and res.message.startswith("(a)")
        S = direct_sum(CUR_SL2, VIR_ALG)
        assert verify_split_structure(S, S.split).ok
        assert S.split.summands[0].kind == CUR and S.split.summands[1].kind == VIR

    def test_vircur_and_families(self):
        assert VIRCUR_SL2.split.summands[0].kind == VIRCUR
        for C in (VIRCUR_SL2, vircur_sl2_standard(), vir_line_with_center()):
            assert verify_split_structure(C, C.split).ok

    def test_partition_and_commuting_conditions(self):
        L = vir_line_with_center()
        res = verify_split_structure(L, SplitStructure((Summand(VIR, (0,)),), (1,)))
        assert not res.ok
        VV = direct_sum(VIR_ALG, VIR_ALG)
        t = [list(map(list, row)) for row in VV.table]
        t[0][1] = [ZERO, DP + LP]
        t[1][0] = [ZERO, LP]
        fake = ConformalAlgebra.from_table(t)
        res = verify_split_structure(fake, VV.split)
        assert not res.ok
        assert res.message.startswith("(a)") or res.message.startswith("(b)")

    def test_radical_must_be_solvable(self):
        L = direct_sum(VIR_ALG, VIR_ALG.with_split(None))
        res = verify_split_structure(L, SplitStructure((Summand(VIR, (0,)),), (1,)))
        assert not res.ok and res.message.startswith("(c)")
