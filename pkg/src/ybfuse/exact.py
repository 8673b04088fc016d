"""Exact scalars: rationals, univariate polynomials over Q and reduced rational functions.

Rationals are plain :class:`fractions.Fraction`.  Polynomials store an immutable
tuple of Fraction coefficients in ascending degree.  Rational functions are
kept reduced with a monic denominator, so equality is structural.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence, Union

from .errors import DivisionByZero, PoleAtEvaluationPoint

Rational = Fraction
Scalar = Union[int, Fraction, "Polynomial", "RationalFunction"]


def as_rational(x) -> Fraction:
    """Coerce an int, Fraction or a string like ``"3/2"`` to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, RationalFunction) and x.is_constant():
        return x.constant()
    raise TypeError(f"cannot interpret {x!r} as a rational")


def rational_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _strip(coeffs: Iterable[Fraction]) -> tuple[Fraction, ...]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _int_primitive(coeffs: Sequence[Fraction]) -> list[int]:
    """Scale a nonzero rational coefficient list to a primitive integer list."""
    den = reduce(lcm, (c.denominator for c in coeffs), 1)
    ints = [int(c * den) for c in coeffs]
    g = reduce(gcd, ints, 0)
    if ints[-1] < 0:
        g = -g
    return [i // g for i in ints]


def _int_prem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder of integer polynomials (ascending lists)."""
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(a) - 1 >= db and a:
        la = a[-1]
        shift = len(a) - 1 - db
        a = [lb * c for c in a]
        for i, c in enumerate(b):
            a[i + shift] -= la * c
        while a and a[-1] == 0:
            a.pop()
    return a


def _int_primpart(a: list[int]) -> list[int]:
    g = reduce(gcd, a, 0)
    if a[-1] < 0:
        g = -g
    return [c // g for c in a]


class Polynomial:
    """Univariate polynomial over Q, immutable."""

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable = ()):
        self.coeffs = _strip(as_rational(c) for c in coeffs)
        self._hash = None

    @classmethod
    def _raw(cls, coeffs: tuple[Fraction, ...]) -> "Polynomial":
        p = object.__new__(cls)
        p.coeffs = coeffs
        p._hash = None
        return p

    @classmethod
    def x(cls) -> "Polynomial":
        return cls._raw((Fraction(0), Fraction(1)))

    @classmethod
    def constant(cls, c) -> "Polynomial":
        return cls((c,))

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def monic(self) -> "Polynomial":
        if not self.coeffs:
            return self
        lc = self.coeffs[-1]
        if lc == 1:
            return self
        return Polynomial._raw(tuple(c / lc for c in self.coeffs))

    @staticmethod
    def _coerce(other) -> "Polynomial | None":
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial._raw(_strip((Fraction(other),)))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Polynomial._raw(_strip(out))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if not a or not b:
            return Polynomial._raw(())
        if len(b) == 1:
            s = b[0]
            return Polynomial._raw(tuple(c * s for c in a))
        if len(a) == 1:
            s = a[0]
            return Polynomial._raw(tuple(c * s for c in b))
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return Polynomial._raw(_strip(out))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out = Polynomial._raw((Fraction(1),))
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __divmod__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise DivisionByZero("polynomial division by zero")
        rem = list(self.coeffs)
        db = o.degree
        lb = o.coeffs[-1]
        quot = [Fraction(0)] * max(len(rem) - db, 0)
        while len(rem) - 1 >= db and rem:
            f = rem[-1] / lb
            shift = len(rem) - 1 - db
            quot[shift] = f
            for i, c in enumerate(o.coeffs):
                rem[i + shift] -= f * c
            rem.pop()
            while rem and rem[-1] == 0:
                rem.pop()
        return Polynomial._raw(_strip(quot)), Polynomial._raw(tuple(rem))

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc if self.coeffs else Fraction(0)

    def derivative(self) -> "Polynomial":
        return Polynomial._raw(tuple(i * c for i, c in enumerate(self.coeffs) if i))

    def compose(self, inner: "Polynomial") -> "Polynomial":
        acc = Polynomial._raw(())
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def taylor(self, at, order: int) -> list[Fraction]:
        """Coefficients of (t - at)^j for j = 0..order-1."""
        c = list(self.coeffs)
        out = []
        for _ in range(order):
            if not c:
                out.append(Fraction(0))
                continue
            # synthetic division by (t - at)
            acc = Fraction(0)
            q = [Fraction(0)] * len(c)
            for i in range(len(c) - 1, -1, -1):
                acc = acc * at + c[i]
                q[i] = acc
            out.append(q[0])
            c = q[1:]
        return out

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(("poly", self.coeffs))
        return self._hash

    def format(self, var: str = "t") -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                mono = var if i == 1 else f"{var}^{i}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"Polynomial({self.format()})"


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd via a primitive pseudo-remainder sequence over Z."""
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    if a.degree == 0 or b.degree == 0:
        return Polynomial._raw((Fraction(1),))
    x = _int_primitive(a.coeffs)
    y = _int_primitive(b.coeffs)
    if len(x) < len(y):
        x, y = y, x
    while y:
        if len(y) == 1:
            return Polynomial._raw((Fraction(1),))
        r = _int_prem(x, y)
        x, y = y, (_int_primpart(r) if r else [])
    lc = x[-1]
    return Polynomial._raw(tuple(Fraction(c, lc) for c in x))


class RationalFunction:
    """Reduced quotient of polynomials over Q with monic denominator."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None, *, _reduced: bool = False):
        num = num if isinstance(num, Polynomial) else Polynomial((num,))
        if den is None:
            den = Polynomial._raw((Fraction(1),))
        elif not isinstance(den, Polynomial):
            den = Polynomial((den,))
        if den.is_zero():
            raise DivisionByZero("rational function with zero denominator")
        if not _reduced:
            if num.is_zero():
                den = Polynomial._raw((Fraction(1),))
            else:
                if den.degree > 0:
                    g = poly_gcd(num, den)
                    if g.degree > 0:
                        num = num // g
                        den = den // g
                lc = den.coeffs[-1]
                if lc != 1:
                    num = Polynomial._raw(tuple(c / lc for c in num.coeffs))
                    den = Polynomial._raw(tuple(c / lc for c in den.coeffs))
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def var(cls) -> "RationalFunction":
        return cls(Polynomial.x(), _reduced=True)

    @classmethod
    def const(cls, c) -> "RationalFunction":
        return cls(Polynomial((as_rational(c),)), _reduced=True)

    @staticmethod
    def _coerce(other) -> "RationalFunction | None":
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, (int, Fraction)):
            return RationalFunction(Polynomial._raw(_strip((Fraction(other),))), _reduced=True)
        if isinstance(other, Polynomial):
            return RationalFunction(other, _reduced=True)
        return None

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.den.degree == 0 and self.num.degree <= 0

    def constant(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("rational function is not constant")
        return self.num.coeffs[0] if self.num.coeffs else Fraction(0)

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.num.is_zero():
            return self
        if self.num.is_zero():
            return o
        if self.den == o.den:
            if self.den.degree == 0:
                return RationalFunction(self.num + o.num, self.den, _reduced=True)
            return RationalFunction(self.num + o.num, self.den)
        g = poly_gcd(self.den, o.den)
        if g.degree == 0:
            return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)
        a = o.den // g
        b = self.den // g
        return RationalFunction(self.num * a + o.num * b, self.den * a)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.num.is_zero() or o.num.is_zero():
            return RationalFunction(Polynomial._raw(()), _reduced=True)
        if o.is_constant():
            return RationalFunction(self.num * o.num.coeffs[0], self.den, _reduced=True)
        if self.is_constant():
            return RationalFunction(o.num * self.num.coeffs[0], o.den, _reduced=True)
        # cross-cancel before multiplying keeps the result reduced
        g1 = poly_gcd(self.num, o.den)
        g2 = poly_gcd(o.num, self.den)
        n1, d2 = (self.num // g1, o.den // g1) if g1.degree > 0 else (self.num, o.den)
        n2, d1 = (o.num // g2, self.den // g2) if g2.degree > 0 else (o.num, self.den)
        num = n1 * n2
        den = d1 * d2
        lc = den.coeffs[-1]
        if lc != 1:
            num = num * (1 / lc)
            den = den * (1 / lc)
        return RationalFunction(num, den, _reduced=True)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if self.num.is_zero():
            raise DivisionByZero("inverse of zero rational function")
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return RationalFunction(self.num ** k, self.den ** k, _reduced=True)

    def __call__(self, x) -> Fraction:
        """Evaluate the reduced form; a vanishing denominator is a genuine pole."""
        x = as_rational(x)
        d = self.den(x)
        if d == 0:
            raise PoleAtEvaluationPoint(x)
        return Fraction(self.num(x)) / d

    def compose(self, inner: "RationalFunction") -> "RationalFunction":
        """Substitute ``t -> inner(t)``."""
        inner = self._coerce(inner)
        a, b = inner.num, inner.den
        k = max(self.num.degree, self.den.degree, 0)
        bpows = [Polynomial._raw((Fraction(1),))]
        for _ in range(k):
            bpows.append(bpows[-1] * b)

        def hom(p: Polynomial) -> Polynomial:
            acc = Polynomial._raw(())
            apow = Polynomial._raw((Fraction(1),))
            for i, c in enumerate(p.coeffs):
                if c:
                    acc = acc + apow * bpows[k - i] * c
                apow = apow * a
            return acc

        return RationalFunction(hom(self.num), hom(self.den))

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.constant())
            else:
                self._hash = hash((self.num, self.den))
        return self._hash

    def format(self, var: str = "t") -> str:
        n = self.num.format(var)
        if self.den.degree == 0:
            return n
        if len([c for c in self.num.coeffs if c]) > 1 or "/" in n:
            n = f"({n})"
        d = self.den.format(var)
        if len([c for c in self.den.coeffs if c]) > 1 or (self.den.coeffs[-1] != 1 and self.den.degree > 0):
            d = f"({d})"
        return f"{n}/{d}"

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"RationalFunction({self.format()})"

    def to_json(self) -> dict:
        return {
            "num": [rational_str(c) for c in self.num.coeffs],
            "den": [rational_str(c) for c in self.den.coeffs],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "RationalFunction":
        return cls(Polynomial(obj["num"]), Polynomial(obj["den"]))


def scalar_to_json(x):
    if isinstance(x, RationalFunction):
        return x.to_json()
    return rational_str(as_rational(x))


def scalar_from_json(obj):
    if isinstance(obj, dict):
        return RationalFunction.from_json(obj)
    return as_rational(obj)


def format_scalar(x, var: str = "t") -> str:
    if isinstance(x, RationalFunction):
        return x.format(var)
    return str(x)
