"""Univariate rational functions in omega with exact rational coefficients."""
from __future__ import annotations

from fractions import Fraction
from typing import Tuple

Poly = Tuple[Fraction, ...]  # coefficients, lowest degree first, no trailing zeros


class PoleError(ZeroDivisionError):
    """Evaluation at a root of the denominator."""


def _trim(p) -> Poly:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(Fraction(c) for c in p)


def p_add(a: Poly, b: Poly) -> Poly:
    n = max(len(a), len(b))
    return _trim((a[k] if k < len(a) else 0) + (b[k] if k < len(b) else 0) for k in range(n))


def p_neg(a: Poly) -> Poly:
    return tuple(-c for c in a)


def p_mul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def p_divmod(a: Poly, b: Poly):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        c = a[-1] / lead
        q[shift] = c
        for k, y in enumerate(b):
            a[shift + k] -= c * y
        a = list(_trim(a))
    return _trim(q), _trim(a)


def p_gcd(a: Poly, b: Poly) -> Poly:
    while b:
        a, b = b, p_divmod(a, b)[1]
    if not a:
        return ()
    return tuple(c / a[-1] for c in a)


def p_eval(a: Poly, x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


class RationalFunction:
    """Reduced fraction ``num/den`` with monic denominator."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=(), den=(Fraction(1),), _reduced=False):
        if isinstance(num, (int, Fraction)):
            num = (Fraction(num),)
        num, den = _trim(num), _trim(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not _reduced:
            if not num:
                den = (Fraction(1),)
            else:
                g = p_gcd(num, den)
                if len(g) > 1:
                    num, den = p_divmod(num, g)[0], p_divmod(den, g)[0]
            lead = den[-1]
            if lead != 1:
                num = tuple(c / lead for c in num)
                den = tuple(c / lead for c in den)
        self.num, self.den = num, den
        self._hash = None

    @classmethod
    def omega(cls) -> "RationalFunction":
        return cls((Fraction(0), Fraction(1)), _reduced=True)

    @classmethod
    def const(cls, c) -> "RationalFunction":
        return cls((Fraction(c),) if c else (), _reduced=True)

    @staticmethod
    def _wrap(x) -> "RationalFunction":
        return x if isinstance(x, RationalFunction) else RationalFunction.const(x)

    def __add__(self, other):
        other = self._wrap(other)
        if self.den == other.den:
            return RationalFunction(p_add(self.num, other.num), self.den)
        return RationalFunction(
            p_add(p_mul(self.num, other.den), p_mul(other.num, self.den)),
            p_mul(self.den, other.den),
        )

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(p_neg(self.num), self.den, _reduced=True)

    def __sub__(self, other):
        return self + (-self._wrap(other))

    def __rsub__(self, other):
        return self._wrap(other) - self

    def __mul__(self, other):
        if not isinstance(other, RationalFunction):
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            c = Fraction(other)
            if c == 0:
                return RationalFunction()
            return RationalFunction(tuple(x * c for x in self.num), self.den, _reduced=True)
        return RationalFunction(p_mul(self.num, other.num), p_mul(self.den, other.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._wrap(other)
        if not other.num:
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(p_mul(self.num, other.den), p_mul(self.den, other.num))

    def __rtruediv__(self, other):
        return self._wrap(other) / self

    def __pow__(self, k: int):
        out = RationalFunction.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            try:
                other = RationalFunction.const(Fraction(other))
            except (TypeError, ValueError):
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __bool__(self):
        return bool(self.num)

    def is_constant(self) -> bool:
        return len(self.num) <= 1 and len(self.den) == 1

    def evaluate(self, x) -> Fraction:
        d = p_eval(self.den, x)
        if d == 0:
            raise PoleError(f"pole of {self} at omega = {x}")
        return p_eval(self.num, x) / d

    def __repr__(self):
        def show(p):
            if not p:
                return "0"
            terms = []
            for k, c in enumerate(p):
                if c:
                    if k == 0:
                        terms.append(str(c))
                    else:
                        power = "w" + (f"^{k}" if k > 1 else "")
                        terms.append(power if c == 1 else f"{c}*{power}")
            return " + ".join(terms)

        if self.den == (1,):
            return show(self.num)
        return f"({show(self.num)})/({show(self.den)})"
