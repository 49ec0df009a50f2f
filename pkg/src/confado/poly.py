"""Exact polynomials in the three formal variables ∂, λ, μ over the rationals.

Everything above this module manipulates λ-bracket coefficients, which are
polynomials in ``d`` (∂), ``l`` (λ) and ``m`` (μ).  Values are immutable and
hashable; the representation is a sparse map from exponent triples to nonzero
:class:`fractions.Fraction` coefficients.

Text form (used by every file format in the package)::

    d + 2*l            (1/2)*d^2 - l*m          -(d + l)^2

Variables may also be written ``∂``, ``λ``, ``μ``.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Dict, Iterable, Mapping, Tuple, Union

from .errors import BadDivisorShape, ParseError

Rat = Fraction
Exps = Tuple[int, int, int]

D, LAM, MU = 0, 1, 2
VAR_NAMES = ("d", "l", "m")
_VAR_ALIASES = {"d": D, "l": LAM, "m": MU, "∂": D, "λ": LAM, "μ": MU}
_UNIT = ((1, 0, 0), (0, 1, 0), (0, 0, 1))


def as_rat(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def _var_index(var) -> int:
    if isinstance(var, int):
        return var
    if isinstance(var, str):
        return _VAR_ALIASES[var]
    if isinstance(var, MPoly):
        for i in range(3):
            if var == MPoly.var(i):
                return i
    raise ValueError(f"not a variable: {var!r}")


class MPoly:
    """Sparse polynomial in ∂, λ, μ with rational coefficients."""

    __slots__ = ("_t", "_h")

    def __init__(self, terms: Mapping[Exps, object] | None = None):
        t = {}
        if terms:
            for e, c in terms.items():
                c = as_rat(c)
                if c:
                    t[tuple(e)] = c
        self._t: Dict[Exps, Fraction] = t
        self._h = None

    @classmethod
    def _raw(cls, t):
        p = cls.__new__(cls)
        p._t = t
        p._h = None
        return p

    @classmethod
    def const(cls, c) -> "MPoly":
        c = as_rat(c)
        return cls._raw({(0, 0, 0): c} if c else {})

    @classmethod
    def var(cls, i) -> "MPoly":
        return cls._raw({_UNIT[_var_index(i)]: Fraction(1)})

    @staticmethod
    def coerce(x) -> "MPoly":
        return x if isinstance(x, MPoly) else MPoly.const(x)

    # -- inspection -------------------------------------------------------
    @property
    def terms(self) -> Dict[Exps, Fraction]:
        return dict(self._t)

    def items(self):
        return self._t.items()

    def __bool__(self):
        return bool(self._t)

    def is_zero(self) -> bool:
        return not self._t

    def is_constant(self) -> bool:
        return all(e == (0, 0, 0) for e in self._t)

    def constant_term(self) -> Fraction:
        return self._t.get((0, 0, 0), Fraction(0))

    def degree(self, var=None) -> int:
        """Total degree, or degree in one variable; the zero polynomial has degree -1."""
        if not self._t:
            return -1
        if var is None:
            return max(sum(e) for e in self._t)
        i = _var_index(var)
        return max(e[i] for e in self._t)

    def variables(self) -> set:
        return {VAR_NAMES[i] for e in self._t for i in range(3) if e[i]}

    def coeffs(self, var) -> Dict[int, "MPoly"]:
        """Split by powers of ``var``; each coefficient no longer involves ``var``."""
        i = _var_index(var)
        out: Dict[int, dict] = {}
        for e, c in self._t.items():
            k = e[i]
            e2 = list(e)
            e2[i] = 0
            out.setdefault(k, {})[tuple(e2)] = c
        return {k: MPoly._raw(v) for k, v in out.items()}

    def coeff(self, var, k: int) -> "MPoly":
        return self.coeffs(var).get(k, ZERO)

    def leading_coefficient(self, var=D) -> "MPoly":
        return self.coeff(var, self.degree(var))

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, MPoly):
            other = MPoly.coerce(other)
        if not other._t:
            return self
        if not self._t:
            return other
        t = dict(self._t)
        for e, c in other._t.items():
            s = t.get(e, 0) + c
            if s:
                t[e] = s
            else:
                t.pop(e, None)
        return MPoly._raw(t)

    __radd__ = __add__

    def __neg__(self):
        return MPoly._raw({e: -c for e, c in self._t.items()})

    def __sub__(self, other):
        return self + (-MPoly.coerce(other))

    def __rsub__(self, other):
        return MPoly.coerce(other) + (-self)

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            c = as_rat(other)
            if not c:
                return ZERO
            return MPoly._raw({e: v * c for e, v in self._t.items()})
        if not self._t or not other._t:
            return ZERO
        t: Dict[Exps, Fraction] = {}
        for (a0, a1, a2), c in self._t.items():
            for (b0, b1, b2), d in other._t.items():
                e = (a0 + b0, a1 + b1, a2 + b2)
                s = t.get(e, 0) + c * d
                if s:
                    t[e] = s
                else:
                    del t[e]
        return MPoly._raw(t)

    __rmul__ = __mul__

    def __truediv__(self, other):
        c = as_rat(other)
        if not c:
            raise ZeroDivisionError("division of a polynomial by zero")
        return self * (1 / c)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not polynomials")
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self._t == other._t
        try:
            return self._t == MPoly.const(other)._t
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self._h is None:
            self._h = hash(frozenset(self._t.items()))
        return self._h

    # -- substitution -----------------------------------------------------
    def subs(self, mapping: Mapping) -> "MPoly":
        """Simultaneous substitution ``{var: expr}``; unmapped variables stay."""
        repl = {_var_index(k): MPoly.coerce(v) for k, v in mapping.items()}
        if not repl or not self._t:
            return self
        powers = {i: [ONE] for i in repl}

        def pw(i, k):
            lst = powers[i]
            while len(lst) <= k:
                lst.append(lst[-1] * repl[i])
            return lst[k]

        out: Dict[Exps, Fraction] = {}
        for e, c in self._t.items():
            keep = [0, 0, 0]
            prod = None
            for i in range(3):
                if i in repl:
                    if e[i]:
                        f = pw(i, e[i])
                        prod = f if prod is None else prod * f
                else:
                    keep[i] = e[i]
            kept = MPoly._raw({tuple(keep): c})
            term = kept if prod is None else kept * prod
            for e2, c2 in term._t.items():
                s = out.get(e2, 0) + c2
                if s:
                    out[e2] = s
                else:
                    del out[e2]
        return MPoly._raw(out)

    def evaluate(self, **values) -> Fraction:
        """Evaluate at rationals, e.g. ``p.evaluate(d=1, l=0, m=0)``; all variables must be given."""
        q = self.subs({k: v for k, v in values.items()})
        if not q.is_constant():
            raise ValueError("evaluation left free variables: " + ", ".join(sorted(q.variables())))
        return q.constant_term()

    # -- printing ---------------------------------------------------------
    def sorted_terms(self):
        return sorted(self._t.items(), key=lambda ec: (-sum(ec[0]), tuple(-x for x in ec[0])))

    def __str__(self):
        if not self._t:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                VAR_NAMES[i] + (f"^{e[i]}" if e[i] > 1 else "") for i in range(3) if e[i]
            )
            a = abs(c)
            if not mono:
                body = _fmt_rat(a)
            elif a == 1:
                body = mono
            else:
                body = _fmt_rat(a) + "*" + mono
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"MPoly({str(self)!r})"


def _fmt_rat(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"({c.numerator}/{c.denominator})"


ZERO = MPoly._raw({})
ONE = MPoly._raw({(0, 0, 0): Fraction(1)})
DP = MPoly.var(D)  # ∂
LP = MPoly.var(LAM)  # λ
MP = MPoly.var(MU)  # μ


# -- spec-level operations -------------------------------------------------
def poly_add(a: MPoly, b: MPoly) -> MPoly:
    return a + b


def poly_mul(a: MPoly, b: MPoly) -> MPoly:
    return a * b


def poly_subst(p: MPoly, var, expr) -> MPoly:
    return p.subs({var: expr})


def poly_divmod_linear(p: MPoly, root_form: MPoly) -> Tuple[MPoly, MPoly]:
    """Divide by ``root_form = ∂ + c(λ, μ)``; the remainder is free of ∂.

    Raises :class:`BadDivisorShape` unless ``root_form`` is monic of degree one in ∂.
    """
    parts = root_form.coeffs(D)
    if root_form.degree(D) != 1 or parts[1] != ONE:
        raise BadDivisorShape(f"expected ∂ + c(λ, μ), got {root_form}")
    r = -parts.get(0, ZERO)  # root: ∂ = r
    cs = p.coeffs(D)
    n = p.degree(D)
    if n <= 0:
        return ZERO, p
    # synthetic division by (∂ - r)
    b = [ZERO] * n
    b[n - 1] = cs.get(n, ZERO)
    for k in range(n - 1, 0, -1):
        b[k - 1] = cs.get(k, ZERO) + r * b[k]
    rem = cs.get(0, ZERO) + r * b[0]
    q = ZERO
    for k in range(n):
        if b[k]:
            q = q + b[k] * DP**k
    return q, rem


# -- univariate helpers in ∂ ----------------------------------------------
def is_univariate(p: MPoly, var=D) -> bool:
    i = _var_index(var)
    return all(e[j] == 0 for e in p._t for j in range(3) if j != i)


def udivmod(a: MPoly, b: MPoly) -> Tuple[MPoly, MPoly]:
    """Euclidean division of univariate polynomials in ∂."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    db = b.degree(D)
    lb = b._t[(db, 0, 0)]
    q: Dict[Exps, Fraction] = {}
    r = dict(a._t)
    while r:
        dr = max(e[0] for e in r)
        if dr < db:
            break
        c = r[(dr, 0, 0)] / lb
        s = dr - db
        q[(s, 0, 0)] = c
        for (e0, _, _), cb in b._t.items():
            e = (e0 + s, 0, 0)
            v = r.get(e, 0) - c * cb
            if v:
                r[e] = v
            else:
                r.pop(e, None)
    return MPoly._raw(q), MPoly._raw(r)


def monic(p: MPoly, var=D) -> MPoly:
    if not p:
        return p
    lc = p.leading_coefficient(var)
    if not lc.is_constant():
        raise ValueError("leading coefficient is not a scalar")
    return p / lc.constant_term()


def ugcd(a: MPoly, b: MPoly) -> MPoly:
    while b:
        a, b = b, udivmod(a, b)[1]
    return monic(a) if a else a


def rename(p: MPoly, src, dst) -> MPoly:
    """Rename variable ``src`` to ``dst`` (``dst`` must not occur in ``p``)."""
    return p.subs({src: MPoly.var(dst)})


# -- rational roots ----------------------------------------------------------
def _to_sympy_univariate(p: MPoly, var):
    import sympy

    i = _var_index(var)
    x = sympy.Symbol("x")
    expr = sum(
        (sympy.Rational(c.numerator, c.denominator) * x ** e[i] for e, c in p._t.items()),
        sympy.Integer(0),
    )
    return sympy.Poly(expr, x, domain="QQ")


def rational_roots(p: MPoly, var=D) -> list:
    """Distinct rational roots of a univariate polynomial, sorted ascending."""
    if not is_univariate(p, var):
        raise ValueError("rational_roots needs a univariate polynomial")
    if p.degree(var) <= 0:
        return []
    sp = _to_sympy_univariate(p, var)
    roots = set()
    for fac, _mult in sp.factor_list()[1]:
        if fac.degree() == 1:
            a, b = fac.all_coeffs()
            r = -b / a
            roots.add(Fraction(int(r.p), int(r.q)))
    return sorted(roots)


def split_over_q(p: MPoly, var=D) -> bool:
    """True if every complex root of ``p`` is rational."""
    if p.degree(var) <= 0:
        return True
    sp = _to_sympy_univariate(p, var)
    return all(fac.degree() == 1 for fac, _ in sp.factor_list()[1])


# -- parsing -----------------------------------------------------------------
_TOKEN_CHARS = set("+-*/^()")


def _tokenize(text: str, line=None):
    toks = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            toks.append(("num", int(text[i:j]), i))
            i = j
        elif ch in _VAR_ALIASES:
            toks.append(("var", _VAR_ALIASES[ch], i))
            i += 1
        elif ch in _TOKEN_CHARS:
            toks.append(("op", ch, i))
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", line, i + 1)
    toks.append(("end", None, len(text)))
    return toks


class _Parser:
    def __init__(self, text, line=None, col0=0):
        self.toks = _tokenize(text, line)
        self.pos = 0
        self.line = line
        self.col0 = col0

    def err(self, msg):
        tok = self.toks[self.pos]
        raise ParseError(msg, self.line, self.col0 + tok[2] + 1)

    def peek(self):
        return self.toks[self.pos]

    def take(self):
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def parse(self):
        if self.peek()[0] == "end":
            self.err("empty polynomial")
        p = self.expr()
        if self.peek()[0] != "end":
            self.err(f"unexpected token {self.peek()[1]!r}")
        return p

    def expr(self):
        p = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self):
        p = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            op = self.take()[1]
            q = self.unary()
            if op == "*":
                p = p * q
            else:
                if not q.is_constant() or not q:
                    self.err("can only divide by a nonzero rational constant")
                p = p / q.constant_term()
        return p

    def unary(self):
        t = self.peek()
        if t[0] == "op" and t[1] in "+-":
            self.take()
            p = self.unary()
            return -p if t[1] == "-" else p
        return self.power()

    def power(self):
        p = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            t = self.take()
            if t[0] != "num":
                self.pos -= 1
                self.err("exponent must be a non-negative integer")
            p = p ** t[1]
        return p

    def atom(self):
        t = self.take()
        if t[0] == "num":
            return MPoly.const(t[1])
        if t[0] == "var":
            return MPoly.var(t[1])
        if t[0] == "op" and t[1] == "(":
            p = self.expr()
            if self.peek()[0] != "op" or self.peek()[1] != ")":
                self.err("missing ')'")
            self.take()
            return p
        self.pos -= 1
        self.err("expected a number, a variable or '('")


def parse_poly(text: str, line: int | None = None, column: int = 0) -> MPoly:
    """Parse the polynomial grammar (``d``, ``l``, ``m``, rationals, ``+ - * / ^``)."""
    return _Parser(text, line, column).parse()


def P(text: str) -> MPoly:
    """Short alias of :func:`parse_poly` for interactive use and tests."""
    return parse_poly(text)


PolyLike = Union[MPoly, int, Fraction, str]


def to_poly(x: PolyLike) -> MPoly:
    if isinstance(x, str):
        return parse_poly(x)
    return MPoly.coerce(x)


def vec(*items: PolyLike) -> Tuple[MPoly, ...]:
    return tuple(to_poly(x) for x in items)


def vec_str(v: Iterable[MPoly]) -> str:
    return "[" + ", ".join(str(p) for p in v) + "]"
