"""Multivariate Laurent polynomials over Z or a cyclotomic field.

Coefficients are ``int`` for the integer domain (``domain=None``) and
:class:`CyclotomicNumber` of a fixed order otherwise.

>>> f = LaurentPoly.parse("t1*t2 - t2")
>>> g = LaurentPoly.parse("t2^2 - t2")
>>> laurent_gcd(f, g)
LaurentPoly('1')
>>> LaurentPoly.parse("-t1^-1*t2 + t2^2*t1^-1").normalize()
LaurentPoly('t2 - 1')
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Mapping

from .cyclotomic import CyclotomicNumber

Exp = tuple[int, ...]


class DomainMismatch(ValueError):
    pass


# ---------------------------------------------------------------- coefficient rings


class _Integers:
    is_field = False
    order = None

    def zero(self):
        return 0

    def one(self):
        return 1

    def coerce(self, c):
        if isinstance(c, CyclotomicNumber):
            raise DomainMismatch("cyclotomic coefficient in an integer polynomial")
        if isinstance(c, Fraction):
            if c.denominator != 1:
                raise DomainMismatch(f"non-integral coefficient {c}")
            return int(c)
        return int(c)

    def gcd(self, a, b):
        return math.gcd(a, b)

    def div(self, a, b):
        q, r = divmod(a, b)
        if r:
            raise ArithmeticError("inexact integer division")
        return q

    def is_zero(self, a):
        return a == 0


class _Cyclotomic:
    is_field = True

    def __init__(self, order: int):
        self.order = order

    def zero(self):
        return CyclotomicNumber(self.order)

    def one(self):
        return CyclotomicNumber(self.order, [1])

    def coerce(self, c):
        if isinstance(c, CyclotomicNumber):
            if c.order != self.order:
                raise DomainMismatch(f"cyclotomic orders differ: {c.order} vs {self.order}")
            return c
        return CyclotomicNumber(self.order, [c])

    def gcd(self, a, b):
        return self.zero() if (a.is_zero() and b.is_zero()) else self.one()

    def div(self, a, b):
        return a / b

    def is_zero(self, a):
        return a.is_zero()


INTEGERS = _Integers()
_FIELDS: dict[int, _Cyclotomic] = {}


def coefficient_ring(domain: int | None):
    if domain is None:
        return INTEGERS
    if domain not in _FIELDS:
        _FIELDS[domain] = _Cyclotomic(domain)
    return _FIELDS[domain]


# ---------------------------------------------------------------- the polynomial type


def _grlex_key(e: Exp):
    return (sum(e), e)


class LaurentPoly:
    __slots__ = ("nvars", "terms", "domain")

    def __init__(self, nvars: int, terms: Mapping[Exp, object] | None = None, domain: int | None = None):
        self.nvars = nvars
        self.domain = domain
        ring = coefficient_ring(domain)
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != nvars:
                raise ValueError(f"exponent {e} has wrong length for {nvars} variables")
            c = ring.coerce(c)
            if not ring.is_zero(c):
                clean[e] = c
        self.terms = clean

    # constructors
    @classmethod
    def zero(cls, nvars: int, domain=None):
        return cls(nvars, {}, domain)

    @classmethod
    def constant(cls, c, nvars: int, domain=None):
        return cls(nvars, {(0,) * nvars: c}, domain)

    @classmethod
    def monomial(cls, exps: Iterable[int], c=1, domain=None):
        e = tuple(exps)
        return cls(len(e), {e: c}, domain)

    @classmethod
    def variable(cls, i: int, nvars: int, domain=None):
        """The variable t_{i+1} (0-based index)."""
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1}, domain)

    # basic queries
    @property
    def ring(self):
        return coefficient_ring(self.domain)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def support(self) -> list[Exp]:
        return sorted(self.terms)

    def leading(self) -> tuple[Exp, object]:
        e = max(self.terms, key=_grlex_key)
        return e, self.terms[e]

    def _check(self, other: "LaurentPoly"):
        if self.nvars != other.nvars or self.domain != other.domain:
            raise DomainMismatch("operands differ in number of variables or coefficient domain")

    def _lift(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, CyclotomicNumber)):
            return LaurentPoly.constant(other, self.nvars, self.domain)
        return NotImplemented

    # arithmetic
    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out[e] + c if e in out else c
        return LaurentPoly(self.nvars, out, self.domain)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.nvars, {e: -c for e, c in self.terms.items()}, self.domain)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out: dict[Exp, object] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out[e] + c1 * c2 if e in out else c1 * c2
        return LaurentPoly(self.nvars, out, self.domain)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_monomial():
                raise ArithmeticError("only monomials are invertible")
            (e, c), = self.terms.items()
            inv = self.ring.div(self.ring.one(), c)
            return LaurentPoly(self.nvars, {tuple(-x * -k for x in e): inv ** -k}, self.domain)
        out = LaurentPoly.constant(1, self.nvars, self.domain)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, CyclotomicNumber)):
            other = LaurentPoly.constant(other, self.nvars, self.domain)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.domain == other.domain and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, self.domain, frozenset(self.terms.items())))

    def shift(self, exps: Iterable[int]) -> "LaurentPoly":
        """Multiply by the monomial t^exps."""
        s = tuple(exps)
        return LaurentPoly(self.nvars, {tuple(a + b for a, b in zip(e, s)): c for e, c in self.terms.items()}, self.domain)

    def scale(self, c) -> "LaurentPoly":
        return LaurentPoly(self.nvars, {e: v * c for e, v in self.terms.items()}, self.domain)

    def inverted(self) -> "LaurentPoly":
        """The involution t -> t^-1."""
        return LaurentPoly(self.nvars, {tuple(-x for x in e): c for e, c in self.terms.items()}, self.domain)

    def min_exponent(self) -> Exp:
        return tuple(min(e[i] for e in self.terms) for i in range(self.nvars))

    def normalize(self) -> "LaurentPoly":
        """Canonical associate: strip the monomial content, then fix the leading unit."""
        if not self.terms:
            return self
        low = self.min_exponent()
        f = self.shift(tuple(-x for x in low))
        _, lc = f.leading()
        if self.domain is None:
            return -f if lc < 0 else f
        return f.scale(lc.inverse())

    def associate(self, other: "LaurentPoly") -> bool:
        return self.normalize() == other.normalize()

    def to_domain(self, domain: int | None) -> "LaurentPoly":
        """Re-coefficient the polynomial; integer -> cyclotomic is an embedding."""
        if domain == self.domain:
            return self
        if self.domain is None:
            return LaurentPoly(self.nvars, {e: CyclotomicNumber(domain, [c]) for e, c in self.terms.items()}, domain)
        if domain is None:
            out = {}
            for e, c in self.terms.items():
                if not c.is_rational() or c.coeffs[0].denominator != 1:
                    raise DomainMismatch("coefficient is not an integer")
                out[e] = int(c.coeffs[0])
            return LaurentPoly(self.nvars, out, None)
        raise DomainMismatch("cannot move between distinct cyclotomic fields")

    def evaluate(self, point: Iterable) -> object:
        pt = [Fraction(x) if isinstance(x, int) else x for x in point]
        total = self.ring.zero()
        for e, c in self.terms.items():
            v = c
            for x, k in zip(pt, e):
                v = v * x ** k
            total = total + v
        return total

    # text and JSON
    def text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=_grlex_key, reverse=True):
            c = self.terms[e]
            mono = "*".join(f"t{i + 1}" if k == 1 else f"t{i + 1}^{k}" for i, k in enumerate(e) if k)
            if self.domain is None:
                sign = "-" if c < 0 else "+"
                a = abs(c)
                body = mono if (a == 1 and mono) else (f"{a}*{mono}" if mono else str(a))
            else:
                sign = "+"
                body = f"({_cyclo_text(c)})" + (f"*{mono}" if mono else "")
            parts.append((sign, body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def __str__(self):
        return self.text()

    def __repr__(self):
        return f"LaurentPoly({self.text()!r})"

    def to_json(self) -> list[dict]:
        out = []
        for e in sorted(self.terms):
            c = self.terms[e]
            out.append({"exponents": list(e), "coeff": c if self.domain is None else c.to_json()})
        return out

    @classmethod
    def from_json(cls, data, nvars: int | None = None, domain: int | None = None) -> "LaurentPoly":
        if nvars is None:
            if not data:
                raise ValueError("number of variables needed for an empty polynomial")
            nvars = len(data[0]["exponents"])
        terms = {}
        for item in data:
            c = item["coeff"]
            if domain is not None:
                c = CyclotomicNumber.from_json(domain, c)
            terms[tuple(item["exponents"])] = c
        return cls(nvars, terms, domain)

    @classmethod
    def parse(cls, text: str, nvars: int | None = None) -> "LaurentPoly":
        """Parse integer-coefficient text such as ``3*t1^2*t2^-1 + t2 - 4``."""
        src = text.replace(" ", "")
        if not src:
            raise ValueError("empty polynomial text")
        if src[0] not in "+-":
            src = "+" + src
        pieces = re.findall(r"[+-][^+-]*(?:\^-[^+-]*)*", src)
        # the regex above splits at '-' inside '^-k'; rejoin those
        terms_raw: list[str] = []
        for p in pieces:
            if terms_raw and terms_raw[-1].endswith("^"):
                terms_raw[-1] += p
            else:
                terms_raw.append(p)
        parsed = []
        top = 0
        for t in terms_raw:
            sign = -1 if t[0] == "-" else 1
            body = t[1:]
            if not body:
                raise ValueError(f"dangling sign in {text!r}")
            coeff = 1
            exps: dict[int, int] = {}
            for f in body.split("*"):
                m = re.fullmatch(r"t(\d+)(?:\^(-?\d+))?", f)
                if m:
                    i = int(m.group(1))
                    if i < 1:
                        raise ValueError("variables are t1, t2, ...")
                    exps[i] = exps.get(i, 0) + int(m.group(2) or 1)
                    top = max(top, i)
                elif re.fullmatch(r"\d+", f):
                    coeff *= int(f)
                else:
                    raise ValueError(f"cannot parse factor {f!r} in {text!r}")
            parsed.append((sign * coeff, exps))
        n = nvars if nvars is not None else max(top, 1)
        if top > n:
            raise ValueError(f"variable t{top} exceeds {n} variables")
        out = LaurentPoly.zero(n)
        for c, exps in parsed:
            e = tuple(exps.get(i + 1, 0) for i in range(n))
            out = out + LaurentPoly(n, {e: c})
        return out


def _cyclo_text(c: CyclotomicNumber) -> str:
    parts = []
    for k, v in enumerate(c.coeffs):
        if v:
            parts.append(str(v) if k == 0 else f"{v}*z{c.order}^{k}")
    return " + ".join(parts) or "0"


# ---------------------------------------------------------------- recursive gcd
# Polynomials (nonnegative exponents) are nested: level 0 is a coefficient, level
# k is a dict {degree in the k-th variable: level k-1 polynomial}.


def _nest(terms: Mapping[Exp, object], k: int):
    if k == 0:
        (c,) = terms.values()
        return c
    groups: dict[int, dict] = {}
    for e, c in terms.items():
        groups.setdefault(e[-1], {})[e[:-1]] = c
    return {d: _nest(g, k - 1) for d, g in groups.items()}


def _flatten(p, k: int, prefix: Exp = ()) -> dict[Exp, object]:
    if k == 0:
        return {prefix: p}
    out = {}
    for d, sub in p.items():
        for e, c in _flatten(sub, k - 1).items():
            out[e + (d,)] = c
    return out


class _Nested:
    """Arithmetic on nested polynomials over a coefficient ring."""

    def __init__(self, ring):
        self.R = ring

    def zero(self, k):
        return self.R.zero() if k == 0 else {}

    def is_zero(self, a, k):
        return self.R.is_zero(a) if k == 0 else not a

    def const(self, c, k):
        for _ in range(k):
            c = {0: c} if not (self.R.is_zero(c) if not isinstance(c, dict) else not c) else {}
        return c

    def add(self, a, b, k):
        if k == 0:
            return a + b
        out = dict(a)
        for d, c in b.items():
            if d in out:
                s = self.add(out[d], c, k - 1)
                if self.is_zero(s, k - 1):
                    del out[d]
                else:
                    out[d] = s
            else:
                out[d] = c
        return out

    def neg(self, a, k):
        if k == 0:
            return -a
        return {d: self.neg(c, k - 1) for d, c in a.items()}

    def sub(self, a, b, k):
        return self.add(a, self.neg(b, k), k)

    def mul(self, a, b, k):
        if k == 0:
            return a * b
        out: dict = {}
        for d1, c1 in a.items():
            for d2, c2 in b.items():
                p = self.mul(c1, c2, k - 1)
                d = d1 + d2
                if d in out:
                    s = self.add(out[d], p, k - 1)
                    if self.is_zero(s, k - 1):
                        del out[d]
                    else:
                        out[d] = s
                elif not self.is_zero(p, k - 1):
                    out[d] = p
        return out

    def scale_mono(self, a, c, shift, k):
        """a * c * x_k^shift with c a level k-1 polynomial."""
        out = {}
        for d, v in a.items():
            p = self.mul(v, c, k - 1)
            if not self.is_zero(p, k - 1):
                out[d + shift] = p
        return out

    def divexact(self, a, b, k):
        if k == 0:
            return self.R.div(a, b)
        if not b:
            raise ZeroDivisionError("division by the zero polynomial")
        db = max(b)
        lb = b[db]
        q: dict = {}
        r = dict(a)
        while r:
            dr = max(r)
            if dr < db:
                raise ArithmeticError("inexact polynomial division")
            c = self.divexact(r[dr], lb, k - 1)
            q[dr - db] = c
            r = self.sub(r, self.scale_mono(b, c, dr - db, k), k)
        return q

    def content(self, a, k):
        """gcd of the coefficients in the main variable (a level k-1 polynomial)."""
        g = self.zero(k - 1)
        for c in a.values():
            g = self.gcd(g, c, k - 1)
            if self._is_unit(g, k - 1):
                break
        return g

    def _is_unit(self, g, k):
        if k > 0:
            return len(g) == 1 and 0 in g and self._is_unit(g[0], k - 1)
        if self.R.is_field:
            return not self.R.is_zero(g)
        return abs(g) == 1

    def primitive(self, a, k):
        if not a:
            return a
        c = self.content(a, k)
        p = {d: self.divexact(v, c, k - 1) for d, v in a.items()}
        if self.R.is_field and k == 1:
            lc = p[max(p)]
            p = {d: v / lc for d, v in p.items()}
        return p

    def prem(self, a, b, k):
        db = max(b)
        lb = b[db]
        r = dict(a)
        while r and max(r) >= db:
            dr = max(r)
            lr = r[dr]
            r = self.sub(self.scale_mono(r, lb, 0, k), self.scale_mono(b, lr, dr - db, k), k)
        return r

    def gcd(self, a, b, k):
        if k == 0:
            return self.R.gcd(a, b)
        if not a:
            return self._positive(b, k)
        if not b:
            return self._positive(a, k)
        ca, cb = self.content(a, k), self.content(b, k)
        c = self.gcd(ca, cb, k - 1)
        pa = self.primitive(a, k)
        pb = self.primitive(b, k)
        if max(pa) < max(pb):
            pa, pb = pb, pa
        while pb:
            if max(pb) == 0:
                pa = {0: self.const(self.R.one(), k - 1)}
                break
            r = self.prem(pa, pb, k)
            pa, pb = pb, self.primitive(r, k)
        return self.scale_mono(self.primitive(pa, k), c, 0, k)

    def _positive(self, a, k):
        if k == 0:
            return abs(a) if not self.R.is_field else a
        return a


def _as_polynomial(f: LaurentPoly):
    low = f.min_exponent()
    shifted = f.shift(tuple(-x for x in low))
    return _nest(shifted.terms, f.nvars)


def laurent_gcd(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    """Normalized gcd, well defined up to the units +-t^u (or field units times t^u)."""
    f._check(g)
    if f.is_zero():
        return g.normalize()
    if g.is_zero():
        return f.normalize()
    n = f.nvars
    if n == 0:
        c = coefficient_ring(f.domain).gcd(f.terms[()], g.terms[()])
        return LaurentPoly(0, {(): c}, f.domain).normalize()
    N = _Nested(f.ring)
    h = N.gcd(_as_polynomial(f), _as_polynomial(g), n)
    return LaurentPoly(n, _flatten(h, n), f.domain).normalize()


def laurent_gcd_many(polys: Iterable[LaurentPoly], nvars: int, domain=None) -> LaurentPoly:
    g = LaurentPoly.zero(nvars, domain)
    for p in polys:
        g = laurent_gcd(g, p)
        if g.is_monomial():
            break
    return g


def laurent_divexact(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    """Exact quotient f/g in the Laurent ring; raises ArithmeticError if g does not divide f."""
    f._check(g)
    if g.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    if f.is_zero():
        return f
    n = f.nvars
    lf, lg = f.min_exponent(), g.min_exponent()
    if n == 0:
        return LaurentPoly(0, {(): f.ring.div(f.terms[()], g.terms[()])}, f.domain)
    N = _Nested(f.ring)
    q = N.divexact(_as_polynomial(f), _as_polynomial(g), n)
    return LaurentPoly(n, _flatten(q, n), f.domain).shift(tuple(a - b for a, b in zip(lf, lg)))


def divides(g: LaurentPoly, f: LaurentPoly) -> bool:
    try:
        laurent_divexact(f, g)
    except ArithmeticError:
        return False
    return True
