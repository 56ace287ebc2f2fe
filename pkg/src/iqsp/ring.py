"""Exact arithmetic in Z[q,q^-1] and its fraction field, plus q-combinatorics.

Everything downstream (module matrices, Gram forms, bar-invariance tests)
runs over these two types, so no floating point is allowed anywhere here.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache


class NotDivisible(Exception):
    """Raised when an exact division in Z[q,q^-1] fails."""


class NotAntisymmetric(Exception):
    """Raised when a polynomial is not bar-antisymmetric."""


class LaurentPoly:
    """Sparse Laurent polynomial over Z, canonical form: no zero coefficients.

    Immutable; two values are equal iff their coefficient maps are equal.
    """

    __slots__ = ("c", "_hash")

    def __init__(self, coeffs=None):
        c = {}
        if coeffs:
            for e, v in coeffs.items():
                if v:
                    c[int(e)] = int(v)
        self.c = c
        self._hash = None

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero():
        return _ZERO

    @staticmethod
    def one():
        return _ONE

    @staticmethod
    def q_power(e, coeff=1):
        return LaurentPoly({e: coeff})

    @staticmethod
    def const(n):
        return LaurentPoly({0: n})

    # -- ring structure ----------------------------------------------------

    def __bool__(self):
        return bool(self.c)

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.c == other.c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.c.items()))
        return self._hash

    def __add__(self, other):
        c = dict(self.c)
        for e, v in other.c.items():
            w = c.get(e, 0) + v
            if w:
                c[e] = w
            else:
                c.pop(e, None)
        r = LaurentPoly.__new__(LaurentPoly)
        r.c = c
        r._hash = None
        return r

    def __neg__(self):
        r = LaurentPoly.__new__(LaurentPoly)
        r.c = {e: -v for e, v in self.c.items()}
        r._hash = None
        return r

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return _ZERO
            r = LaurentPoly.__new__(LaurentPoly)
            r.c = {e: v * other for e, v in self.c.items()}
            r._hash = None
            return r
        c = {}
        for e1, v1 in self.c.items():
            for e2, v2 in other.c.items():
                e = e1 + e2
                w = c.get(e, 0) + v1 * v2
                if w:
                    c[e] = w
                else:
                    c.pop(e, None)
        r = LaurentPoly.__new__(LaurentPoly)
        r.c = c
        r._hash = None
        return r

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a Laurent polynomial")
        r = _ONE
        b = self
        while n:
            if n & 1:
                r = r * b
            b = b * b
            n >>= 1
        return r

    def shift(self, e):
        """Multiply by q^e."""
        r = LaurentPoly.__new__(LaurentPoly)
        r.c = {k + e: v for k, v in self.c.items()}
        r._hash = None
        return r

    # -- queries -----------------------------------------------------------

    def bar(self):
        """The involution q -> q^-1."""
        r = LaurentPoly.__new__(LaurentPoly)
        r.c = {-e: v for e, v in self.c.items()}
        r._hash = None
        return r

    def is_bar_invariant(self):
        return self.bar() == self

    def min_exp(self):
        return min(self.c) if self.c else 0

    def max_exp(self):
        return max(self.c) if self.c else 0

    def coeff(self, e):
        return self.c.get(e, 0)

    def content(self):
        """gcd of integer coefficients (nonnegative)."""
        from math import gcd

        g = 0
        for v in self.c.values():
            g = gcd(g, v)
        return g

    def is_integer_multiple_of_one(self):
        return not self.c or set(self.c) == {0}

    def in_z_qinv(self, strict=True):
        """True if self lies in q^-1 Z[q^-1] (strict) or Z[q^-1]."""
        top = -1 if strict else 0
        return all(e <= top for e in self.c)

    def eval_fraction(self, x: Fraction) -> Fraction:
        """Evaluate at a nonzero rational point (used only in sanity tests)."""
        return sum((Fraction(v) * x ** e for e, v in self.c.items()), Fraction(0))

    # -- display -----------------------------------------------------------

    def __repr__(self):
        return f"LaurentPoly({self.to_text()!r})"

    def to_text(self):
        """Signed monomial list, exponents explicit: '-q^-3 + 2*q^0 + q^4'."""
        if not self.c:
            return "0"
        parts = []
        for e in sorted(self.c):
            v = self.c[e]
            sign = "-" if v < 0 else "+"
            a = abs(v)
            body = f"q^{e}" if a == 1 else f"{a}*q^{e}"
            parts.append((sign, body))
        s0, b0 = parts[0]
        out = ("-" if s0 == "-" else "") + b0
        for s, b in parts[1:]:
            out += f" {s} {b}"
        return out


_ZERO = LaurentPoly()
_ONE = LaurentPoly({0: 1})
Q = LaurentPoly({1: 1})
QINV = LaurentPoly({-1: 1})


def parse_laurent(text: str) -> LaurentPoly:
    """Parse the signed monomial list format; round-trips to_text().

    Accepts ASCII '-'/'*' as well as unicode minus and middle dot.
    """
    s = text.replace("−", "-").replace("·", "*").replace(" ", "")
    if s in ("", "0"):
        return _ZERO
    # split into signed terms
    terms = []
    cur = ""
    for ch in s:
        if ch in "+-" and cur and cur[-1] not in "^+-*e":
            terms.append(cur)
            cur = ch
        else:
            cur += ch
    terms.append(cur)
    coeffs = {}
    for t in terms:
        sign = 1
        while t and t[0] in "+-":
            if t[0] == "-":
                sign = -sign
            t = t[1:]
        if not t:
            raise ValueError(f"bad Laurent term in {text!r}")
        if "q" not in t:
            c, e = int(t), 0
        else:
            head, _, tail = t.partition("q")
            head = head.rstrip("*")
            c = int(head) if head else 1
            if tail.startswith("^"):
                e = int(tail[1:])
            elif tail == "":
                e = 1
            else:
                raise ValueError(f"bad Laurent term in {text!r}")
        coeffs[e] = coeffs.get(e, 0) + sign * c
    return LaurentPoly(coeffs)


# -- integer polynomial helpers (lists over Z, index = exponent) -----------


def _to_zpoly(p: LaurentPoly):
    """Shift p into Z[q] with nonzero constant term; return (list, shift)."""
    if not p.c:
        return [], 0
    m = p.min_exp()
    deg = p.max_exp() - m
    a = [0] * (deg + 1)
    for e, v in p.c.items():
        a[e - m] = v
    return a, m


def _from_zpoly(a, shift=0):
    return LaurentPoly({i + shift: v for i, v in enumerate(a) if v})


def _zp_degree(a):
    d = len(a) - 1
    while d >= 0 and a[d] == 0:
        d -= 1
    return d


def _zp_content(a):
    from math import gcd

    g = 0
    for v in a:
        g = gcd(g, v)
    return g


def _zp_primitive(a):
    g = _zp_content(a)
    if g in (0, 1):
        return list(a)
    return [v // g for v in a]


def _zp_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _zp_pseudo_rem(a, b):
    """Pseudo remainder of a by b over Z (b nonzero)."""
    a = list(a)
    da, db = _zp_degree(a), _zp_degree(b)
    lb = b[db]
    while da >= db and da >= 0:
        la = a[da]
        # scale a so lb divides its lead, then cancel
        from math import gcd

        g = gcd(la, lb)
        m_a, m_b = lb // g, la // g
        a = [v * m_a for v in a]
        for k in range(db + 1):
            a[da - db + k] -= m_b * b[k]
        da = _zp_degree(a)
    return a[: da + 1] if da >= 0 else []


def poly_gcd(p: LaurentPoly, r: LaurentPoly) -> LaurentPoly:
    """gcd in Z[q,q^-1], normalized primitive with positive leading coefficient
    and lowest exponent 0 (so units are quotiented away)."""
    if not p.c:
        return _normalize_gcd(r)
    if not r.c:
        return _normalize_gcd(p)
    a, _ = _to_zpoly(p)
    b, _ = _to_zpoly(r)
    from math import gcd as igcd

    ca, cb = _zp_content(a), _zp_content(b)
    a, b = _zp_primitive(a), _zp_primitive(b)
    while b:
        a, b = b, _zp_primitive(_zp_pseudo_rem(a, b))
    g = [v * igcd(ca, cb) for v in a]
    return _normalize_gcd(_from_zpoly(g))


def _normalize_gcd(p: LaurentPoly) -> LaurentPoly:
    if not p.c:
        return _ZERO
    p = p.shift(-p.min_exp())
    if p.c[p.max_exp()] < 0:
        p = -p
    return p


def exact_div(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Return c with a = b*c, or raise NotDivisible.

    Divisibility is a query used by integrality tests, so callers that only
    want a yes/no should catch NotDivisible.
    """
    if not b.c:
        raise ZeroDivisionError("division by the zero polynomial")
    if not a.c:
        return _ZERO
    pa, sa = _to_zpoly(a)
    pb, sb = _to_zpoly(b)
    # long division over Q, then check integrality of the quotient
    da, db = _zp_degree(pa), _zp_degree(pb)
    if da < db:
        raise NotDivisible(f"({a.to_text()}) / ({b.to_text()})")
    rem = [Fraction(v) for v in pa]
    quo = [Fraction(0)] * (da - db + 1)
    lb = Fraction(pb[db])
    for k in range(da - db, -1, -1):
        c = rem[db + k] / lb
        quo[k] = c
        if c:
            for j in range(db + 1):
                rem[j + k] -= c * pb[j]
    if any(rem):
        raise NotDivisible(f"({a.to_text()}) / ({b.to_text()})")
    if any(f.denominator != 1 for f in quo):
        raise NotDivisible(f"({a.to_text()}) / ({b.to_text()}) not integral")
    return _from_zpoly([int(f) for f in quo], sa - sb)


def divides(b: LaurentPoly, a: LaurentPoly) -> bool:
    try:
        exact_div(a, b)
        return True
    except NotDivisible:
        return False


def antisymmetrize_div(f: LaurentPoly) -> LaurentPoly:
    """For bar(f) = -f, return f/(q - q^-1) via the decomposition
    f = sum_{n>0} a_n (q^n - q^-n); otherwise raise NotAntisymmetric."""
    if f.bar() != -f:
        raise NotAntisymmetric(f.to_text())
    out = _ZERO
    for e, v in f.c.items():
        if e > 0:
            out = out + v * q_integer_balanced(e)
    return out


@lru_cache(maxsize=None)
def q_integer_balanced(n: int) -> LaurentPoly:
    """[n] at d=1: q^{n-1} + q^{n-3} + ... + q^{1-n}; odd in n."""
    if n == 0:
        return _ZERO
    if n < 0:
        return -q_integer_balanced(-n)
    return LaurentPoly({n - 1 - 2 * k: 1 for k in range(n)})


def q_integer(n: int, d: int = 1) -> LaurentPoly:
    """Balanced q-integer [n]_i with q_i = q^d."""
    if d < 1:
        raise ValueError("d must be >= 1")
    base = q_integer_balanced(n)
    return LaurentPoly({e * d: v for e, v in base.c.items()})


@lru_cache(maxsize=None)
def q_factorial(n: int, d: int = 1) -> LaurentPoly:
    if n < 0:
        raise ValueError("factorial of a negative q-integer")
    out = _ONE
    for k in range(1, n + 1):
        out = out * q_integer(k, d)
    return out


@lru_cache(maxsize=None)
def q_binomial(n: int, s: int, d: int = 1) -> LaurentPoly:
    """Gaussian binomial [n s]_i for n in Z, s >= 0, by the product formula
    [n][n-1]...[n-s+1]/[s]!; the division is exact in Z[q,q^-1]."""
    if s < 0:
        raise ValueError("s must be >= 0")
    if s == 0:
        return _ONE
    if 0 <= n < s:
        return _ZERO
    num = _ONE
    for j in range(s):
        num = num * q_integer(n - j, d)
    try:
        return exact_div(num, q_factorial(s, d))
    except NotDivisible as e:  # pragma: no cover - would indicate a real bug
        raise AssertionError(f"q-binomial({n},{s}) not integral") from e


class RatFunc:
    """Element of Q(q) as a reduced pair of Laurent polynomials.

    Normalization: den lies in Z[q] with nonzero constant term, positive
    leading integer coefficient, gcd(num, den) = 1.  is_integral() is then
    the syntactic check den == 1.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None, _reduced=False):
        if isinstance(num, int):
            num = LaurentPoly.const(num)
        if den is None:
            den = _ONE
        elif isinstance(den, int):
            den = LaurentPoly.const(den)
        if not den.c:
            raise ZeroDivisionError("RatFunc with zero denominator")
        if not _reduced:
            num, den = _reduce_pair(num, den)
        self.num = num
        self.den = den
        self._hash = None

    @staticmethod
    def zero():
        return _RF_ZERO

    @staticmethod
    def one():
        return _RF_ONE

    @staticmethod
    def from_poly(p: LaurentPoly):
        return RatFunc(p, _ONE)

    @staticmethod
    def q_power(e):
        return RatFunc(LaurentPoly.q_power(e), _ONE, _reduced=True)

    def __bool__(self):
        return bool(self.num.c)

    def __eq__(self, other):
        if isinstance(other, int):
            other = RatFunc(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __add__(self, other):
        if isinstance(other, int):
            other = RatFunc(other)
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        r = RatFunc.__new__(RatFunc)
        r.num = -self.num
        r.den = self.den
        r._hash = None
        return r

    def __sub__(self, other):
        if isinstance(other, int):
            other = RatFunc(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            other = RatFunc(other)
        elif isinstance(other, LaurentPoly):
            other = RatFunc(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        if not self.num.c or not other.num.c:
            return _RF_ZERO
        # cross-reduce first to keep intermediates small
        n1, d2 = _reduce_pair(self.num, other.den)
        n2, d1 = _reduce_pair(other.num, self.den)
        return RatFunc(n1 * n2, d1 * d2)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, int):
            other = RatFunc(other)
        elif isinstance(other, LaurentPoly):
            other = RatFunc(other)
        if not other.num.c:
            raise ZeroDivisionError("division by zero rational function")
        return self * RatFunc(other.den, other.num)

    def __pow__(self, n):
        if n < 0:
            return (_RF_ONE / self) ** (-n)
        r = _RF_ONE
        b = self
        while n:
            if n & 1:
                r = r * b
            b = b * b
            n >>= 1
        return r

    def bar(self):
        return RatFunc(self.num.bar(), self.den.bar())

    def is_integral(self):
        return self.den == _ONE

    def as_laurent(self) -> LaurentPoly:
        if not self.is_integral():
            raise NotDivisible(f"{self.to_text()} is not in Z[q,q^-1]")
        return self.num

    def is_q_bounded(self, strict=True):
        """True if self lies in q^-1 Q[[q^-1]] (strict) or Q[[q^-1]] as q -> oo:
        top degree of num (strictly) below top degree of den."""
        if not self.num.c:
            return True
        gap = self.num.max_exp() - self.den.max_exp()
        return gap < 0 if strict else gap <= 0

    def eval_fraction(self, x: Fraction) -> Fraction:
        return self.num.eval_fraction(x) / self.den.eval_fraction(x)

    def to_text(self):
        if self.den == _ONE:
            return self.num.to_text()
        return f"({self.num.to_text()}) / ({self.den.to_text()})"

    def __repr__(self):
        return f"RatFunc({self.to_text()!r})"


def _reduce_pair(num: LaurentPoly, den: LaurentPoly):
    """Reduce (num, den) by gcd and normalize den into Z[q], constant term
    nonzero, positive leading coefficient."""
    if not num.c:
        return _ZERO, _ONE
    g = poly_gcd(num, den)
    if g != _ONE:
        num = exact_div(num, g)
        den = exact_div(den, g)
    # unit part of den (sign and q-shift) moves into num
    sh = den.min_exp()
    if sh:
        den = den.shift(-sh)
        num = num.shift(-sh)
    if den.c[den.max_exp()] < 0:
        den = -den
        num = -num
    return num, den


_RF_ZERO = RatFunc(_ZERO, _ONE, _reduced=True)
_RF_ONE = RatFunc(_ONE, _ONE, _reduced=True)


def parse_ratfunc(text: str) -> RatFunc:
    s = text.strip()
    if ") / (" in s or ")/(" in s:
        s = s.replace(") / (", ")/(")
        left, right = s.split(")/(")
        return RatFunc(parse_laurent(left.lstrip("(")), parse_laurent(right.rstrip(")")))
    return RatFunc(parse_laurent(s))
