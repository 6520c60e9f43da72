"""Exact arithmetic in cyclotomic fields Q(zeta_N).

Elements are coefficient vectors in the power basis 1, z, ..., z^(phi(N)-1),
reduced modulo the N-th cyclotomic polynomial.

>>> i = CyclotomicNumber.root_of_unity(4, 1)
>>> i * i == -1
True
>>> (i + 1).inverse() * (i + 1) == 1
True
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

DEFAULT_MAX_ORDER = 12


def _trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _poly_divmod(a, b):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(_trim(a)) >= len(b):
        k = len(a) - len(b)
        f = Fraction(a[-1]) / lead
        q[k] = f
        for i, y in enumerate(b):
            a[i + k] -= f * y
    return _trim(q), _trim(a)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first."""
    if n < 1:
        raise ValueError("order must be positive")
    p = [Fraction(-1)] + [Fraction(0)] * (n - 1) + [Fraction(1)]
    for d in range(1, n):
        if n % d == 0:
            p, r = _poly_divmod(p, [Fraction(c) for c in cyclotomic_polynomial(d)])
            assert not r
    return tuple(int(c) for c in p)


class CyclotomicNumber:
    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs=()):
        self.order = order
        phi = cyclotomic_polynomial(order)
        c = [Fraction(x) for x in coeffs]
        if len(c) >= len(phi):
            _, c = _poly_divmod(c, [Fraction(x) for x in phi])
        deg = len(phi) - 1
        c = list(c) + [Fraction(0)] * (deg - len(c))
        self.coeffs = tuple(c)

    @classmethod
    def root_of_unity(cls, order: int, k: int = 1) -> "CyclotomicNumber":
        k %= order
        return cls(order, [0] * k + [1])

    @classmethod
    def constant(cls, order: int, v) -> "CyclotomicNumber":
        return cls(order, [v])

    def _coerce(self, other) -> "CyclotomicNumber":
        if isinstance(other, CyclotomicNumber):
            if other.order != self.order:
                raise ValueError(f"cyclotomic orders differ: {self.order} vs {other.order}")
            return other
        if isinstance(other, (int, Fraction)):
            return CyclotomicNumber(self.order, [other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CyclotomicNumber(self.order, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber(self.order, [-a for a in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CyclotomicNumber(self.order, _poly_mul(list(self.coeffs), list(other.coeffs)))

    __rmul__ = __mul__

    def inverse(self) -> "CyclotomicNumber":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        # extended Euclid on (a, Phi): s*a + t*Phi = g, g a nonzero constant
        r0 = [Fraction(x) for x in cyclotomic_polynomial(self.order)]
        r1 = _trim(list(self.coeffs))
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, r = _poly_divmod(r0, r1)
            s = _trim([x - y for x, y in _zip_pad(s0, _poly_mul(q, s1))])
            r0, r1, s0, s1 = r1, r, s1, s
        c = r1[0]
        return CyclotomicNumber(self.order, [x / c for x in s1])

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        base = self if k >= 0 else self.inverse()
        out = CyclotomicNumber(self.order, [1])
        for _ in range(abs(k)):
            out = out * base
        return out

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CyclotomicNumber(self.order, [other])
        if not isinstance(other, CyclotomicNumber):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.order, self.coeffs))

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, order: int, data) -> "CyclotomicNumber":
        return cls(order, [Fraction(x) for x in data])

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if k == 0 else f"{c}*z^{k}")
        return f"Q(z{self.order})[{' + '.join(terms) or '0'}]"


def _zip_pad(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return zip(a, b)
