"""Closed-form results for orbifold surface groups, Seifert manifolds and
Brieskorn manifolds.

>>> b = brieskorn((2, 4, 8))
>>> b.lcm, b.genus, b.euler, b.seifert.pairs
(8, 1, Fraction(-1, 1), ((2, 1), (2, 1)))
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Sequence

from .presentation import FreeWord, GroupPresentation, commutator

FULL_GROUP = "FULL_GROUP"
FULL_MINUS_IDENTITY_COMPONENT = "FULL_MINUS_IDENTITY_COMPONENT"
IDENTITY_ONLY = "IDENTITY_ONLY"

EMPTY = "EMPTY"
UNDETERMINED = "UNDETERMINED"


def _lcm(xs: Sequence[int]) -> int:
    return reduce(lambda a, b: a * b // math.gcd(a, b), xs, 1)


def theta(weights: Sequence[int]) -> int:
    """Order of the torsion of the compact orbifold group: prod(m) / lcm(m)."""
    return math.prod(weights) // _lcm(weights) if weights else 1


@dataclass(frozen=True)
class OrbifoldData:
    genus: int
    punctures: int = 0
    weights: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(int(m) for m in self.weights))
        if self.genus < 0 or self.punctures < 0:
            raise ValueError("genus and number of punctures must be nonnegative")
        if any(m < 2 for m in self.weights):
            raise ValueError("orbifold weights must be at least 2")

    @property
    def compact(self) -> bool:
        return self.punctures == 0

    @property
    def free_rank(self) -> int:
        return 2 * self.genus if self.compact else 2 * self.genus + self.punctures - 1

    @property
    def euler_characteristic(self) -> Fraction:
        defect = sum((1 - Fraction(1, m) for m in self.weights), Fraction(0))
        if self.compact:
            return 2 - 2 * self.genus - defect
        return 1 - self.free_rank - defect


@dataclass(frozen=True)
class OrbifoldVerdict:
    classification: str
    theta: int
    sigma1: str
    euler_characteristic: Fraction


def orbifold_cv(o: OrbifoldData) -> OrbifoldVerdict:
    """Shape of the first characteristic variety of the orbifold fundamental group."""
    k = len(o.weights)
    if o.compact:
        if o.genus < 1:
            raise ValueError("compact case needs genus >= 1")
        th = theta(o.weights)
        if o.genus > 1:
            cls = FULL_GROUP
        elif th > 1:
            cls = FULL_MINUS_IDENTITY_COMPONENT
        else:
            cls = IDENTITY_ONLY
    else:
        n = o.free_rank
        if n < 1:
            raise ValueError("punctured case needs 2g + r - 1 >= 1")
        th = math.prod(o.weights) if o.weights else 1
        if n > 1:
            cls = FULL_GROUP
        elif k > 0:
            cls = FULL_MINUS_IDENTITY_COMPONENT
        else:
            cls = IDENTITY_ONLY
    sigma = EMPTY if cls != IDENTITY_ONLY else UNDETERMINED
    return OrbifoldVerdict(cls, th, sigma, o.euler_characteristic)


def orbifold_presentation(o: OrbifoldData) -> GroupPresentation:
    """Compact: surface relator times z1...zk plus zi^mi.  Punctured: F_n * Z_m1 * ... * Z_mk."""
    names: list[str] = []
    rels: list[FreeWord] = []
    if o.compact:
        g, k = o.genus, len(o.weights)
        names = [f"x{i + 1}" for i in range(g)] + [f"y{i + 1}" for i in range(g)] + [f"z{i + 1}" for i in range(k)]
        w = FreeWord()
        for i in range(g):
            w = w * commutator(FreeWord.generator(i + 1), FreeWord.generator(g + i + 1))
        for i in range(k):
            w = w * FreeWord.generator(2 * g + i + 1)
        rels.append(w)
        rels += [FreeWord.generator(2 * g + i + 1, m) for i, m in enumerate(o.weights)]
    else:
        n = o.free_rank
        names = [f"f{i + 1}" for i in range(n)] + [f"z{i + 1}" for i in range(len(o.weights))]
        rels = [FreeWord.generator(n + i + 1, m) for i, m in enumerate(o.weights)]
    return GroupPresentation(len(names), tuple(r for r in rels if r), tuple(names))


@dataclass(frozen=True)
class SeifertData:
    genus: int
    pairs: tuple[tuple[int, int], ...] = ()
    euler: Fraction | None = None

    def __post_init__(self):
        pairs = tuple((int(a), int(b)) for a, b in self.pairs)
        for a, b in pairs:
            if a <= 0 or math.gcd(a, b) != 1:
                raise ValueError(f"exceptional pair ({a}, {b}) must have alpha > 0 and gcd 1")
        object.__setattr__(self, "pairs", pairs)
        if self.euler is None:
            object.__setattr__(self, "euler", -sum((Fraction(b, a) for a, b in pairs), Fraction(0)))
        else:
            object.__setattr__(self, "euler", Fraction(self.euler))

    @property
    def alphas(self) -> tuple[int, ...]:
        return tuple(a for a, _ in self.pairs)

    def normalized_pairs(self) -> tuple[tuple[int, int], ...]:
        """Pairs with an extra (1, b) so that e = -sum(beta/alpha) holds exactly."""
        b = -self.euler - sum((Fraction(q, p) for p, q in self.pairs), Fraction(0))
        if b == 0:
            return self.pairs
        if b.denominator != 1:
            raise ValueError("Euler number is inconsistent with the exceptional pairs")
        return self.pairs + ((1, int(b)),)


def seifert_sigma(s: SeifertData) -> str:
    if s.euler != 0 and (s.genus > 1 or (s.genus == 1 and theta(s.alphas) > 1)):
        return EMPTY
    return UNDETERMINED


def seifert_presentation(s: SeifertData) -> GroupPresentation:
    """Generators x_i, y_i, z_j, h; product of commutators times the z_j, z_j^alpha h^beta, and h central."""
    pairs = s.normalized_pairs()
    g, r = s.genus, len(pairs)
    names = [f"x{i + 1}" for i in range(g)] + [f"y{i + 1}" for i in range(g)] + [f"z{j + 1}" for j in range(r)] + ["h"]
    h = 2 * g + r + 1
    rels = []
    w = FreeWord()
    for i in range(g):
        w = w * commutator(FreeWord.generator(i + 1), FreeWord.generator(g + i + 1))
    for j in range(r):
        w = w * FreeWord.generator(2 * g + j + 1)
    rels.append(w)
    for j, (a, b) in enumerate(pairs):
        rels.append(FreeWord.generator(2 * g + j + 1, a) * FreeWord.generator(h, b))
    for i in range(1, h):
        rels.append(commutator(FreeWord.generator(i), FreeWord.generator(h)))
    return GroupPresentation(len(names), tuple(x for x in rels if x), tuple(names))


@dataclass(frozen=True)
class BrieskornData:
    exponents: tuple[int, ...]
    lcm: int
    partial_lcms: tuple[int, ...]
    product: int
    multiplicities: tuple[int, ...]  # s_i
    alphas: tuple[int, ...]
    betas: tuple[int | None, ...]  # None where alpha_i = 1
    genus: int
    euler: Fraction
    seifert: SeifertData

    @property
    def torsion_order(self) -> int:
        out = Fraction(1)
        for a, s in zip(self.alphas, self.multiplicities):
            out *= a ** s
        return int(out * abs(self.euler))


def brieskorn(a: Sequence[int]) -> BrieskornData:
    a = tuple(int(x) for x in a)
    n = len(a)
    if n < 3 or any(x < 2 for x in a):
        raise ValueError("Brieskorn exponents: at least three integers, each >= 2")
    ell = _lcm(a)
    ells = tuple(_lcm(a[:i] + a[i + 1:]) for i in range(n))
    prod = math.prod(a)
    s = tuple(prod // (a[i] * ells[i]) for i in range(n))
    alphas = tuple(ell // ells[i] for i in range(n))
    betas = []
    for i in range(n):
        if alphas[i] == 1:
            betas.append(None)
        else:
            betas.append(pow(ell // a[i], -1, alphas[i]))
    two_g = 2 + Fraction((n - 2) * prod, ell) - sum(s)
    if two_g.denominator != 1 or two_g % 2:
        raise ArithmeticError("genus formula did not give an integer")
    genus = int(two_g) // 2
    euler = Fraction(-prod, ell * ell)
    pairs = []
    for i in range(n):
        if alphas[i] != 1:
            pairs += [(alphas[i], betas[i])] * s[i]
    return BrieskornData(a, ell, ells, prod, s, alphas, tuple(betas), genus, euler, SeifertData(genus, tuple(pairs), euler))
