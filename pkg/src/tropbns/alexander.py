"""Alexander matrices, Alexander polynomials and per-character analysis of
the first characteristic variety of a finitely presented group.

>>> from tropbns.presentation import parse_presentation
>>> alexander_polynomial(parse_presentation("<x1,x2 | x1*x2^2*x1^-1*x2^-2>"))
LaurentPoly('t2 + 1')
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Sequence

from .cyclotomic import DEFAULT_MAX_ORDER, CyclotomicNumber
from .laurent import LaurentPoly, laurent_gcd
from .presentation import AbelianizationData, GroupPresentation, abelianize


class UnsupportedInput(ValueError):
    """Input falls outside the class of objects the artifact can handle."""


AbelianKey = tuple[tuple[int, ...], tuple[int, ...]]


@dataclass(frozen=True)
class AlexanderMatrix:
    """Fox Jacobian pushed to Z[G_ab].

    ``entries[i][j]`` maps (free exponent, torsion element) to an integer and
    represents the abelianized Fox derivative of relator i by generator j.
    """

    ab: AbelianizationData
    entries: tuple[tuple[dict, ...], ...]

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.entries), self.ab.num_generators

    def free_part(self) -> list[list[LaurentPoly]]:
        """Drop the torsion coordinate (the projection onto the torsion-free quotient)."""
        n = self.ab.rank
        out = []
        for row in self.entries:
            new = []
            for ent in row:
                terms: dict = {}
                for (free, _), c in ent.items():
                    terms[free] = terms.get(free, 0) + c
                new.append(LaurentPoly(n, terms))
            out.append(new)
        return out


def alexander_matrix(p: GroupPresentation, ab: AbelianizationData | None = None) -> AlexanderMatrix:
    ab = ab or abelianize(p)
    m = p.num_generators
    free_img = ab.free_projection
    tors_img = ab.torsion_projection
    rows = []
    for r in p.relators:
        row = [dict() for _ in range(m)]
        free = [0] * ab.rank
        tors = [0] * len(ab.torsion)

        def key():
            return tuple(free), tuple(t % d for t, d in zip(tors, ab.torsion))

        for g, s in r.letters():
            if s > 0:
                k = key()
                row[g - 1][k] = row[g - 1].get(k, 0) + 1
            for i, x in enumerate(free_img[g - 1]):
                free[i] += s * x
            for i, x in enumerate(tors_img[g - 1]):
                tors[i] += s * x
            if s < 0:
                k = key()
                row[g - 1][k] = row[g - 1].get(k, 0) - 1
        rows.append(tuple({k: c for k, c in ent.items() if c} for ent in row))
    return AlexanderMatrix(ab, tuple(rows))


def character_order(character: Sequence[int], torsion: Sequence[int]) -> int:
    """Order of the character sending the j-th torsion generator to exp(2 pi i k_j / d_j)."""
    return reduce(lambda a, b: a * b // math.gcd(a, b), (d // math.gcd(k, d) for k, d in zip(character, torsion)), 1)


def specialize_torsion(M: AlexanderMatrix, character: Sequence[int]) -> list[list[LaurentPoly]]:
    """Substitute a torsion character; free variables are kept.

    Characters of order 1 or 2 take values in Z and give integer polynomials;
    higher orders are realized in the cyclotomic field of that order.
    """
    torsion = M.ab.torsion
    character = tuple(k % d for k, d in zip(character, torsion))
    if len(character) != len(torsion):
        raise ValueError("character length does not match the torsion invariants")
    N = character_order(character, torsion)
    domain = None if N <= 2 else N
    weights = [k * N // d for k, d in zip(character, torsion)]
    zeta = [CyclotomicNumber.root_of_unity(N, e) for e in range(N)] if domain else None
    n = M.ab.rank
    out = []
    for row in M.entries:
        new = []
        for ent in row:
            terms: dict = {}
            for (free, tors), c in ent.items():
                e = sum(w * t for w, t in zip(weights, tors)) % N
                if domain is None:
                    v = c if e == 0 else -c  # e == N/2 when N == 2
                else:
                    v = zeta[e] * c
                terms[free] = terms[free] + v if free in terms else v
            new.append(LaurentPoly(n, terms, domain))
        out.append(new)
    return out


def _minors(matrix: list[list[LaurentPoly]], size: int, nvars: int, domain):
    """All size x size minors, by memoized Laplace expansion along the first row."""
    s = len(matrix)
    m = len(matrix[0]) if s else 0
    memo: dict = {}
    one = LaurentPoly.constant(1, nvars, domain)

    def det(rows: tuple, cols: tuple) -> LaurentPoly:
        if not rows:
            return one
        key = (rows, cols)
        if key in memo:
            return memo[key]
        total = LaurentPoly.zero(nvars, domain)
        r0, rest = rows[0], rows[1:]
        for idx, c in enumerate(cols):
            a = matrix[r0][c]
            if a.is_zero():
                continue
            sub = det(rest, cols[:idx] + cols[idx + 1:])
            term = a * sub
            total = total + term if idx % 2 == 0 else total - term
        memo[key] = total
        return total

    if size > s or size > m:
        return []
    return [det(rows, cols) for rows in itertools.combinations(range(s), size)
            for cols in itertools.combinations(range(m), size)]


def alexander_polynomial(p: GroupPresentation) -> LaurentPoly:
    """gcd of the codimension-one minors of the Fox Jacobian over the torsion-free quotient.

    Returns the zero polynomial when every such minor vanishes.
    """
    ab = abelianize(p)
    if ab.rank == 0:
        raise UnsupportedInput("first Betti number is zero; the Alexander polynomial needs b1 >= 1")
    M = alexander_matrix(p, ab)
    J = M.free_part()
    m = p.num_generators
    minors = _minors(J, m - 1, ab.rank, None) if J else ([LaurentPoly.constant(1, ab.rank)] if m == 1 else [])
    g = LaurentPoly.zero(ab.rank)
    for x in minors:
        g = laurent_gcd(g, x)
    return g.normalize()


def alexander_norm(delta: LaurentPoly, phi: Sequence[int]) -> int:
    if delta.is_zero():
        raise ValueError("Alexander norm of the zero polynomial is undefined")
    vals = [sum(a * b for a, b in zip(phi, e)) for e in delta.terms]
    return max(vals) - min(vals)


def is_symmetric(delta: LaurentPoly) -> bool:
    return delta.inverted().normalize() == delta.normalize()


# ---------------------------------------------------------------- variety descriptions

FULL = "FULL"
HYPERSURFACE = "HYPERSURFACE"
FINITE_OR_EMPTY = "FINITE_OR_EMPTY"


@dataclass(frozen=True)
class ComputedComponent:
    """Outcome of the minor analysis on the character-group component of one torsion character."""

    character: tuple[int, ...]
    outcome: str
    polynomial: LaurentPoly | None = None
    exact: bool = True
    note: str = ""

    @property
    def is_identity(self) -> bool:
        return not any(self.character)


@dataclass(frozen=True)
class DirectComponent:
    """Translated subtorus rho * T_L, with rho given by a rational free part and a torsion part."""

    lattice: tuple[tuple[int, ...], ...]
    translation: tuple[Fraction, ...] = ()
    torsion_translation: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "lattice", tuple(tuple(int(x) for x in v) for v in self.lattice))
        object.__setattr__(self, "translation", tuple(Fraction(x) % 1 for x in self.translation))
        object.__setattr__(self, "torsion_translation", tuple(int(x) for x in self.torsion_translation))


@dataclass(frozen=True)
class CharVarietyDescription:
    rank: int
    torsion: tuple[int, ...] = ()
    components: tuple = ()
    contains_identity: bool = True
    notes: tuple[str, ...] = field(default=())

    def component_at(self, character: Sequence[int]) -> ComputedComponent | None:
        character = tuple(character)
        for c in self.components:
            if isinstance(c, ComputedComponent) and c.character == character:
                return c
        return None


def component_analysis(p: GroupPresentation, max_cyclotomic: int = DEFAULT_MAX_ORDER) -> CharVarietyDescription:
    ab = abelianize(p)
    M = alexander_matrix(p, ab)
    m = p.num_generators
    s = len(p.relators)
    n = ab.rank
    comps = []
    for character in itertools.product(*(range(d) for d in ab.torsion)):
        N = character_order(character, ab.torsion)
        if N > max_cyclotomic:
            raise UnsupportedInput(f"torsion character of order {N} exceeds the cyclotomic limit {max_cyclotomic}")
        J = specialize_torsion(M, character)
        domain = None if N <= 2 else N
        if s == 0:
            minors = [LaurentPoly.constant(1, n, domain)] if m == 1 else []
        else:
            minors = _minors(J, m - 1, n, domain)
        nonzero = [x for x in minors if not x.is_zero()]
        exact = s <= m - 1
        note = "" if exact else "determinantal locus, possibly larger than the variety"
        if not nonzero:
            comps.append(ComputedComponent(tuple(character), FULL, None, True, ""))
            continue
        g = LaurentPoly.zero(n, domain)
        for x in nonzero:
            g = laurent_gcd(g, x)
        g = g.normalize()
        if len(g.terms) >= 2:
            comps.append(ComputedComponent(tuple(character), HYPERSURFACE, g, exact, note))
        else:
            comps.append(ComputedComponent(tuple(character), FINITE_OR_EMPTY, None, exact, note))
    return CharVarietyDescription(n, ab.torsion, tuple(comps), contains_identity=n >= 1)


# ---------------------------------------------------------------- JSON form


def _component_to_json(c) -> dict:
    if isinstance(c, DirectComponent):
        return {
            "kind": "direct",
            "lattice": [list(v) for v in c.lattice],
            "translation": [str(x) for x in c.translation],
            "torsion_translation": list(c.torsion_translation),
        }
    out = {"kind": "computed", "character": list(c.character), "outcome": c.outcome, "exact": c.exact}
    if c.polynomial is not None:
        out["polynomial"] = c.polynomial.to_json()
        out["domain"] = c.polynomial.domain
        out["text"] = c.polynomial.text()
    if c.note:
        out["note"] = c.note
    return out


def _component_from_json(data: dict, rank: int):
    kind = data.get("kind")
    if kind == "direct":
        return DirectComponent(
            tuple(tuple(v) for v in data["lattice"]),
            tuple(Fraction(x) for x in data.get("translation", ())),
            tuple(data.get("torsion_translation", ())),
        )
    if kind == "computed":
        outcome = data["outcome"]
        if outcome not in (FULL, HYPERSURFACE, FINITE_OR_EMPTY):
            raise ValueError(f"unknown component outcome {outcome!r}")
        poly = None
        if outcome == HYPERSURFACE:
            if "polynomial" in data:
                poly = LaurentPoly.from_json(data["polynomial"], rank, data.get("domain"))
            elif "text" in data:
                poly = LaurentPoly.parse(data["text"], rank)
            else:
                raise ValueError("hypersurface component needs a polynomial")
        return ComputedComponent(tuple(data.get("character", ())), outcome, poly,
                                 data.get("exact", True), data.get("note", ""))
    raise ValueError(f"component kind must be 'direct' or 'computed', got {kind!r}")


def description_to_json(d: CharVarietyDescription) -> dict:
    out = {
        "rank": d.rank,
        "torsion": list(d.torsion),
        "contains_identity": d.contains_identity,
        "components": [_component_to_json(c) for c in d.components],
    }
    if d.notes:
        out["notes"] = list(d.notes)
    return out


def description_from_json(data: dict) -> CharVarietyDescription:
    if not isinstance(data, dict) or "rank" not in data:
        raise ValueError("variety description must be an object with a 'rank' field")
    n = int(data["rank"])
    torsion = tuple(int(x) for x in data.get("torsion", ()))
    comps = tuple(_component_from_json(c, n) for c in data.get("components", ()))
    for c in comps:
        if isinstance(c, DirectComponent) and any(len(v) != n for v in c.lattice):
            raise ValueError("lattice vector length does not match the rank")
    return CharVarietyDescription(n, torsion, comps, bool(data.get("contains_identity", True)),
                                  tuple(data.get("notes", ())))
