"""Independent reference computations in sympy, plus hypothesis strategies.

Nothing here calls the package's arithmetic: conversions go through the raw
term map, and brackets are re-derived from the sesquilinearity rules.
"""

from fractions import Fraction

import sympy
from hypothesis import strategies as st

from confado.poly import MPoly

d, l, m = sympy.symbols("d l m")
SYMS = (d, l, m)


def to_sympy(p: MPoly):
    return sum(
        (sympy.Rational(c.numerator, c.denominator) * d**e[0] * l**e[1] * m**e[2] for e, c in p.terms.items()),
        sympy.Integer(0),
    )


def from_sympy(expr) -> MPoly:
    poly = sympy.Poly(sympy.expand(expr), *SYMS)
    return MPoly({e: Fraction(int(c.p), int(c.q)) for e, c in poly.terms()})


def sym_table(table):
    return [[[to_sympy(p) for p in cell] for cell in row] for row in table]


def sym_pair(table, a, b, x):
    """Σ_ij a_i(−x) b_j(∂+x) T_ij(∂, x), all entries sympy expressions."""
    n_out = len(table[0][0]) if table and table[0] else 0
    out = [sympy.Integer(0)] * n_out
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        left = ai.subs(d, -x, simultaneous=True)
        for j, bj in enumerate(b):
            if bj == 0:
                continue
            right = bj.subs(d, d + x, simultaneous=True)
            for k in range(n_out):
                t = table[i][j][k]
                if t != 0:
                    out[k] += left * right * t.subs(l, x, simultaneous=True)
    return [sympy.expand(o) for o in out]


def unit(n, i):
    return [sympy.Integer(1) if k == i else sympy.Integer(0) for k in range(n)]


def jacobi_residual(table, i, j, k):
    n = len(table)
    a, b, c = unit(n, i), unit(n, j), unit(n, k)
    t1 = sym_pair(table, a, sym_pair(table, b, c, m), l)
    t2 = sym_pair(table, b, sym_pair(table, a, c, l), m)
    t3 = sym_pair(table, sym_pair(table, a, b, l), c, l + m)
    return [sympy.expand(x - y - z) for x, y, z in zip(t1, t2, t3)]


def jacobi_holds(table) -> bool:
    T = sym_table(table)
    n = len(T)
    return all(not any(jacobi_residual(T, i, j, k)) for i in range(n) for j in range(n) for k in range(n))


def anticomm_holds(table) -> bool:
    T = sym_table(table)
    n = len(T)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                lhs = T[i][j][k]
                rhs = -T[j][i][k].subs(l, -d - l, simultaneous=True)
                if sympy.expand(lhs - rhs) != 0:
                    return False
    return True


def module_holds(alg_table, act_table) -> bool:
    """a λ (b μ u) − b μ (a λ u) = [a λ b]_{λ+μ} u on generators."""
    A, M = sym_table(alg_table), sym_table(act_table)
    n, r = len(A), len(M[0]) if M else 0
    for i in range(n):
        for j in range(n):
            for k in range(r):
                a, b, u = unit(n, i), unit(n, j), unit(r, k)
                t1 = sym_pair(M, a, sym_pair(M, b, u, m), l)
                t2 = sym_pair(M, b, sym_pair(M, a, u, l), m)
                t3 = sym_pair(M, sym_pair(A, a, b, l), u, l + m)
                if any(sympy.expand(x - y - z) for x, y, z in zip(t1, t2, t3)):
                    return False
    return True


def determinantal_divisors(rows):
    """Monic gcds of all k×k minors, k = 1..rank, of a matrix over Q[d]."""
    M = sympy.Matrix(rows)
    r, c = M.shape
    from itertools import combinations

    out = []
    for k in range(1, min(r, c) + 1):
        g = sympy.Integer(0)
        for R in combinations(range(r), k):
            for C in combinations(range(c), k):
                g = sympy.gcd(g, M.extract(list(R), list(C)).det())
        if g == 0:
            break
        out.append(sympy.Poly(g, d).monic().as_expr())
    return out


# -- strategies -----------------------------------------------------------------
rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)
small_ints = st.integers(min_value=-3, max_value=3)


@st.composite
def polys(draw, max_deg=(2, 2, 1), max_terms=4):
    n = draw(st.integers(min_value=0, max_value=max_terms))
    terms = {}
    for _ in range(n):
        e = tuple(draw(st.integers(min_value=0, max_value=k)) for k in max_deg)
        terms[e] = draw(rationals)
    return MPoly(terms)


def dpolys(max_deg=3, max_terms=3):
    return polys(max_deg=(max_deg, 0, 0), max_terms=max_terms)


def random_dpoly(rng, max_deg=3, zero_weight=0.3):
    if rng.random() < zero_weight:
        return MPoly()
    deg = rng.randint(0, max_deg)
    return MPoly({(k, 0, 0): Fraction(rng.randint(-3, 3)) for k in range(deg + 1)})


def random_polymatrix_rows(rng, max_size=4, max_deg=3):
    r, c = rng.randint(1, max_size), rng.randint(1, max_size)
    return [[random_dpoly(rng, max_deg) for _ in range(c)] for _ in range(r)], c


def sympy_rows(rows):
    return [[to_sympy(p) for p in row] for row in rows]
