import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from confado.hmodule import (
    PolyMatrix,
    Submodule,
    add,
    coordinates,
    full_submodule,
    hermite_form,
    intersect,
    is_saturated,
    kernel,
    membership,
    quotient_basis,
    quotient_presentation,
    saturate,
    smith_form,
    span,
    zero_submodule,
)
from confado.poly import DP, ONE, ZERO, MPoly, udivmod

from oracle import determinantal_divisors, dpolys, random_dpoly, random_polymatrix_rows, sympy_rows, to_sympy

e1, e2 = (ONE, ZERO), (ZERO, ONE)


def is_canonical(S: Submodule) -> bool:
    for b, p in zip(S.basis, S.pivots):
        if any(b[j] for j in range(p)):
            return False
        if b[p].leading_coefficient().constant_term() != 1:
            return False
    for i, (b, p) in enumerate(zip(S.basis, S.pivots)):
        for other in S.basis[:i]:
            if other[p] and other[p].degree(0) >= b[p].degree(0):
                return False
    return list(S.pivots) == sorted(set(S.pivots))


class TestHermite:
    def test_examples(self):
        assert hermite_form(PolyMatrix([(DP, ZERO), e1])).basis == (e1,)
        assert hermite_form(PolyMatrix([(MPoly.const(2), ZERO)])).basis == (e1,)
        assert hermite_form(PolyMatrix([(DP, ONE), e2])).basis == ((DP, ZERO), e2)

    def test_zero_rows(self):
        S = hermite_form(PolyMatrix.zeros(2, 3))
        assert S.is_zero() and S.ambient_rank == 3

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 10_000))
    def test_idempotent_and_span_preserving(self, seed):
        rows, c = random_polymatrix_rows(random.Random(seed))
        S = hermite_form(PolyMatrix(rows, c))
        assert is_canonical(S)
        assert hermite_form(S.matrix()) == S
        assert all(membership(r, S) for r in rows)
        assert S.rank == sympy.Matrix(sympy_rows(rows)).rank()
        want = determinantal_divisors(sympy_rows(rows))
        got = determinantal_divisors(sympy_rows(S.basis)) if S.basis else []
        assert [sympy.expand(x) for x in got] == [sympy.expand(x) for x in want]


class TestSmith:
    def test_examples(self):
        sd = smith_form(PolyMatrix([(DP, ZERO), (ZERO, DP**2)]))
        assert sd.diagonal == [DP, DP**2]
        sd = smith_form(PolyMatrix([(DP, DP**2), (ZERO, ZERO)]))
        assert sd.diagonal == [DP, ZERO]
        assert smith_form(PolyMatrix([(ONE,)])).diagonal == [ONE]

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 10_000))
    def test_invariant_factors_match_determinantal_divisors(self, seed):
        rows, c = random_polymatrix_rows(random.Random(seed))
        A = PolyMatrix(rows, c)
        sd = smith_form(A)
        assert sd.U @ A @ sd.V == sd.D and sd.D.is_diagonal()
        diag = [to_sympy(x) for x in sd.diagonal if x]
        dets = determinantal_divisors(sympy_rows(rows))
        assert len(diag) == len(dets)
        prod = sympy.Integer(1)
        for k, x in enumerate(diag):
            prod = sympy.expand(prod * x)
            assert prod == sympy.expand(dets[k])
        for a, b in zip(sd.diagonal, sd.diagonal[1:]):
            if b:
                assert a and not udivmod(b, a)[1]
        for M in (sd.U, sd.V):
            det = sympy.Matrix(sympy_rows(M.entries)).det()
            assert sympy.simplify(det).is_number and det != 0


class TestKernel:
    def test_examples(self):
        assert kernel(PolyMatrix.identity(2)).is_zero()
        assert kernel(PolyMatrix([(DP,), (-ONE,)])).basis == ((ONE, DP),)
        assert kernel(PolyMatrix.zeros(2, 3)) == full_submodule(2)

    @settings(max_examples=30, deadline=None)
    @given(st.integers(0, 10_000))
    def test_kernel_rank_and_exactness(self, seed):
        rows, c = random_polymatrix_rows(random.Random(seed))
        K = kernel(PolyMatrix(rows, c))
        r = sympy.Matrix(sympy_rows(rows)).rank()
        assert K.rank == len(rows) - r
        for b in K.basis:
            prod = PolyMatrix([b], len(rows)) @ PolyMatrix(rows, c)
            assert prod == PolyMatrix.zeros(1, c)
        assert is_saturated(K)


class TestSaturateIntersect:
    def test_saturate_examples(self):
        assert saturate(span([(DP, ZERO)], 2)).basis == (e1,)
        assert saturate(span([e1], 2)).basis == (e1,)
        assert saturate(span([(DP, DP)], 2)).basis == ((ONE, ONE),)

    def test_intersect_examples(self):
        S = span([e1], 2)
        assert intersect(S, S) == S
        assert intersect(S, span([e2], 2)).is_zero()
        got = intersect(span([(ONE, ONE)], 2), span([(DP, ZERO), (ZERO, DP)], 2))
        assert got.basis == ((DP, DP),)

    def test_membership_examples(self):
        assert membership((DP, ZERO), span([e1], 2))
        assert not membership(e1, span([(DP, ZERO)], 2))
        S = span([(DP, ONE), (DP**2, ZERO)], 2)
        assert not membership((DP**2 + 1, ONE), S)
        assert membership((DP**2 + DP, ONE), S)

    def test_quotient_presentation_examples(self):
        assert quotient_presentation(span([(DP, ZERO)], 2)) == (1, [DP])
        assert quotient_presentation(zero_submodule(3)) == (3, [])
        assert quotient_presentation(span([e1, (ZERO, DP**2)], 2)) == (0, [DP**2])

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 10_000))
    def test_saturate_properties(self, seed):
        rows, c = random_polymatrix_rows(random.Random(seed))
        S = hermite_form(PolyMatrix(rows, c))
        T = saturate(S)
        assert S <= T
        assert T.rank == S.rank
        assert saturate(T) == T
        free, torsion = quotient_presentation(T)
        assert free == c - T.rank and torsion == []

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 10_000))
    def test_intersect_properties(self, seed):
        rng = random.Random(seed)
        c = rng.randint(1, 3)
        subs = []
        for _ in range(3):
            rows = [[random_dpoly(rng, 2) for _ in range(c)] for _ in range(rng.randint(1, 3))]
            subs.append(span(rows, c))
        S, T, U = subs
        I = intersect(S, T)
        assert I <= S and I <= T
        assert I == intersect(T, S)
        assert intersect(intersect(S, T), U) == intersect(S, intersect(T, U))
        assert S <= add(S, T) and T <= add(S, T)


def test_quotient_basis_projects_submodule_to_zero():
    S = saturate(span([(ONE, DP, ZERO), (ZERO, ZERO, DP + 1)], 3))
    Q = quotient_basis(S)
    for b in S.basis:
        assert not any(Q.project(b))
    assert len(Q.lifts) == 3 - S.rank
    for k, lift in enumerate(Q.lifts):
        img = Q.project(lift)
        assert img == tuple(ONE if j == k else ZERO for j in range(len(Q.lifts)))


def test_coordinates_reconstruct():
    S = span([(DP, ONE), (DP**2, ZERO)], 2)
    x = (DP**3 + 2 * DP, DP + 2)
    c = coordinates(x, S)
    recon = tuple(sum((ci * b[j] for ci, b in zip(c, S.basis)), ZERO) for j in range(2))
    assert recon == x
    with pytest.raises(ValueError):
        coordinates(e1, S)


@given(dpolys(), dpolys())
def test_span_of_generator_pair(f, g):
    S = span([(f, g)], 2)
    if f or g:
        assert S.rank == 1 and membership((f, g), S)
    else:
        assert S.is_zero()
