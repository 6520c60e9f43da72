"""Upper bounds for the first BNS invariant, Brown's algorithm for one-relator
groups, and a checker for the containment of one sphere subset in another.

Directions are primitive integer vectors.  Arcs on the circle are open and
run counterclockwise from ``start`` to ``end``; ``start == end`` means the
whole circle minus that point.

>>> from tropbns.presentation import parse_presentation
>>> b = brown_rank2(parse_presentation("<x1,x2 | x1*x2^2*x1^-1*x2^-2>"))
>>> b.allows((0, 1)), b.allows((1, 0)), b.allows((-1, 0))
(True, False, False)
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .alexander import UnsupportedInput, is_symmetric
from .laurent import LaurentPoly
from .linalg import primitive, rank
from .presentation import FreeWord, GroupPresentation, abelianize, fox_derivative
from .tropical import TropSet, trop_hypersurface

SIGMA1 = "SIGMA1"  # BNS convention
SIGMAQ_Z = "SIGMAQ_Z"  # BNSR convention, antipodal to SIGMA1

EMPTY = "EMPTY"
FULL = "FULL"
COMPLEMENT = "COMPLEMENT"
ARCS = "ARCS"

Direction = tuple[int, ...]


def direction(v: Sequence) -> Direction:
    if not any(v):
        raise ValueError("the zero vector is not a direction")
    return primitive(v)


def angle_key(d: Sequence[int]):
    """Exact, order-preserving key for the counterclockwise angle of a planar direction in [0, 2 pi)."""
    x, y = d
    if y == 0:
        return (0, 0, Fraction(0)) if x > 0 else (1, 0, Fraction(0))
    if y > 0:
        return (0, 1, Fraction(-x, y))
    return (1, 1, Fraction(-x, y))


def in_open_arc(d: Sequence[int], start: Sequence[int], end: Sequence[int]) -> bool:
    kd, ks, ke = angle_key(d), angle_key(start), angle_key(end)
    if ks == ke:
        return kd != ks
    if ks < ke:
        return ks < kd < ke
    return kd > ks or kd < ke


@dataclass(frozen=True)
class SphereBound:
    """A subset of the character sphere S^{n-1}.

    COMPLEMENT: directions whose ray (negated first when ``antipodal``) misses ``trop``.
    ARCS (n = 2): union of open arcs plus isolated ``points``; for n = 1 only ``points``.
    """

    ambient: int
    mode: str
    trop: TropSet | None = None
    antipodal: bool = False
    arcs: tuple[tuple[Direction, Direction], ...] = ()
    points: tuple[Direction, ...] = ()
    convention: str = SIGMA1
    notes: tuple[str, ...] = field(default=())

    def allows(self, d: Sequence[int]) -> bool:
        d = tuple(d)
        if len(d) != self.ambient:
            raise ValueError("direction has the wrong dimension")
        if self.mode == FULL:
            return True
        if self.mode == EMPTY:
            return False
        if self.mode == COMPLEMENT:
            w = tuple(-x for x in d) if self.antipodal else d
            return not self.trop.contains(w)
        p = primitive(d)
        if p in self.points:
            return True
        return any(in_open_arc(p, s, e) for s, e in self.arcs)

    def excluded_directions(self) -> set[Direction] | None:
        """The excluded set when it is finite (rays and lines of a tropical set), else None."""
        if self.mode == FULL:
            return set()
        if self.mode == COMPLEMENT and self.trop.dim() <= 1 and all(
            c.dim <= 1 for c in self.trop.cones
        ):
            dirs = self.trop.ray_directions()
            if self.antipodal:
                dirs = {tuple(-x for x in v) for v in dirs}
            return dirs
        if self.mode == ARCS and self.ambient == 2:
            comp = arc_complement(self.arcs)
            if comp is not None:
                return {p for p in comp if p not in self.points}
        if self.mode == ARCS and self.ambient == 1:
            return {p for p in ((1,), (-1,)) if p not in self.points}
        return None

    def to_json(self) -> dict:
        out = {"ambient": self.ambient, "mode": self.mode, "convention": self.convention}
        if self.mode == COMPLEMENT:
            out["antipodal"] = self.antipodal
            out["tropical_set"] = self.trop.to_json()
            ex = self.excluded_directions()
            if ex is not None:
                out["excluded_directions"] = sorted(list(v) for v in ex)
        if self.mode == ARCS:
            out["arcs"] = [[list(s), list(e)] for s, e in self.arcs]
            out["points"] = [list(p) for p in self.points]
            ex = self.excluded_directions()
            if ex is not None:
                out["excluded_directions"] = sorted(list(v) for v in ex)
        if self.notes:
            out["notes"] = list(self.notes)
        return out

    @classmethod
    def from_json(cls, data: dict) -> "SphereBound":
        mode = data["mode"]
        n = data["ambient"]
        conv = data.get("convention", SIGMA1)
        if mode == COMPLEMENT:
            return cls(n, mode, TropSet.from_json(data["tropical_set"]), data.get("antipodal", False), convention=conv)
        if mode == ARCS:
            arcs = tuple((tuple(s), tuple(e)) for s, e in data.get("arcs", []))
            pts = tuple(tuple(p) for p in data.get("points", []))
            return cls(n, mode, arcs=arcs, points=pts, convention=conv)
        return cls(n, mode, convention=conv)


def arc_complement(arcs: Sequence[tuple[Direction, Direction]]) -> list[Direction] | None:
    """Points of S^1 outside a disjoint union of open arcs, if that complement is finite."""
    if not arcs:
        return None
    arcs = sorted(arcs, key=lambda a: angle_key(a[0]))
    pts = []
    for i, (s, e) in enumerate(arcs):
        nxt = arcs[(i + 1) % len(arcs)][0]
        if e != nxt:
            return None
        pts.append(e)
    return pts


# ---------------------------------------------------------------- Brown's algorithm


def _check_one_relator(p: GroupPresentation):
    if p.num_generators != 2 or len(p.relators) != 1:
        raise UnsupportedInput("Brown's algorithm needs a presentation with 2 generators and 1 relator")


def brown_rank1(p: GroupPresentation, chi: Sequence[int] | None = None) -> tuple[bool, bool]:
    """Whether chi and -chi lie in Sigma^1 for a two-generator one-relator group with b1 = 1.

    ``chi`` is the character on the free abelian quotient Z (default: the
    positive generator).  The leading part of the abelianized Fox derivative
    is the set of terms of maximal chi value.
    """
    _check_one_relator(p)
    ab = abelianize(p)
    if ab.rank != 1:
        raise UnsupportedInput(f"brown_rank1 needs b1 = 1, got b1 = {ab.rank}")
    c = 1 if chi is None else chi[0]
    if c == 0:
        raise ValueError("chi must be nonzero")
    sign = 1 if c > 0 else -1
    r = p.relators[0]
    values = [sign * ab.free_projection[i][0] for i in range(2)]
    j = 2 if values[0] != 0 else 1
    d = fox_derivative(r, j)
    terms: dict = {}
    for w, k in d.terms.items():
        key = ab.image(w)
        terms[key] = terms.get(key, 0) + k
    terms = {key: k for key, k in terms.items() if k}

    def leading_is_unit(s: int) -> bool:
        if not terms:
            return False
        vals = {key: s * key[0][0] for key in terms}
        top = max(vals.values())
        lead = [terms[key] for key, v in vals.items() if v == top]
        return len(lead) == 1 and abs(lead[0]) == 1

    return leading_is_unit(sign), leading_is_unit(-sign)


def brown_rank1_bound(p: GroupPresentation) -> SphereBound:
    plus, minus = brown_rank1(p)
    pts = tuple(d for d, ok in (((1,), plus), ((-1,), minus)) if ok)
    return SphereBound(1, ARCS, points=pts, notes=("Brown, b1 = 1",))


def relator_walk(r: FreeWord) -> list[tuple[int, int]]:
    pts = [(0, 0)]
    x, y = 0, 0
    for g, s in r.letters():
        if g == 1:
            x += s
        else:
            y += s
        pts.append((x, y))
    return pts


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def planar_hull(points: Iterable[tuple[int, int]]) -> list[tuple[int, int]]:
    """Vertices of the convex hull in counterclockwise order (monotone chain)."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower: list = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


@dataclass(frozen=True)
class BrownPolygon:
    walk: tuple[tuple[int, int], ...]
    visits: dict
    vertices: tuple[tuple[int, int], ...]
    normals: tuple[Direction, ...]  # outer normal of edge i = vertices[i] -> vertices[i+1]
    simple: tuple[bool, ...]
    special: tuple[bool, ...]


def brown_polygon(p: GroupPresentation) -> BrownPolygon:
    _check_one_relator(p)
    r = p.relators[0].cyclically_reduced()
    if not r:
        raise UnsupportedInput("relator is trivial")
    if r.exponent_sum(1) or r.exponent_sum(2):
        raise UnsupportedInput("relator is not in the commutator subgroup")
    walk = relator_walk(r)
    visits: dict = {}
    for q in walk[:-1]:  # closed walk: start and end are one visit
        visits[q] = visits.get(q, 0) + 1
    verts = planar_hull(walk)
    k = len(verts)
    normals, simple, special = [], [], []
    for i in range(k):
        a, b = verts[i], verts[(i + 1) % k]
        dx, dy = b[0] - a[0], b[1] - a[1]
        normals.append(primitive((dy, -dx)))
        simple.append(visits[a] == 1)
    for i in range(k):
        a, b = verts[i], verts[(i + 1) % k]
        axis = a[0] == b[0] or a[1] == b[1]
        on_edge = [q for q in visits if _cross(a, b, q) == 0 and min(a[0], b[0]) <= q[0] <= max(a[0], b[0])
                   and min(a[1], b[1]) <= q[1] <= max(a[1], b[1])]
        special.append(axis and len(on_edge) == 2 and visits[a] == 1 and visits[b] == 1)
    return BrownPolygon(tuple(walk), visits, tuple(verts), tuple(normals), tuple(simple), tuple(special))


def brown_rank2(p: GroupPresentation) -> SphereBound:
    """Sigma^1 of <x1, x2 | r> with r in the commutator subgroup, as open arcs of S^1."""
    P = brown_polygon(p)
    k = len(P.vertices)
    # circular sequence: edge normal i, then the open gap at vertex i+1
    seq = []
    for i in range(k):
        seq.append(("edge", i, P.special[i]))
        seq.append(("gap", (i + 1) % k, P.simple[(i + 1) % k]))
    if all(ok for _, _, ok in seq):
        return SphereBound(2, FULL, notes=("Brown",))
    L = len(seq)
    first_bad = next(i for i, (_, _, ok) in enumerate(seq) if not ok)
    rot = seq[first_bad:] + seq[:first_bad]
    arcs = []
    i = 0
    while i < L:
        if not rot[i][2]:
            i += 1
            continue
        j = i
        while j < L and rot[j][2]:
            j += 1
        before, after = rot[i - 1], rot[j % L]
        # a special edge has simple endpoints, so every run is bounded by edge normals
        assert before[0] == "edge" and after[0] == "edge"
        arcs.append((P.normals[before[1]], P.normals[after[1]]))
        i = j
    return SphereBound(2, ARCS, arcs=tuple(arcs), notes=("Brown",))


# ---------------------------------------------------------------- bounds


def sigma_bound_from_trop(T: TropSet, convention: str = SIGMA1) -> SphereBound:
    if convention not in (SIGMA1, SIGMAQ_Z):
        raise ValueError(f"unknown convention {convention!r}")
    if T.full_space:
        return SphereBound(T.ambient, EMPTY, convention=convention, notes=("tropical variety is the whole space",))
    if T.within_origin():
        return SphereBound(T.ambient, FULL, convention=convention)
    return SphereBound(T.ambient, COMPLEMENT, T, antipodal=(convention == SIGMA1), convention=convention)


def facet_bound(delta: LaurentPoly) -> SphereBound:
    """Union of the open facet cones of the Alexander ball, i.e. the complement of Trop V(delta)."""
    n = delta.nvars
    if delta.is_zero():
        return SphereBound(n, EMPTY, notes=("zero Alexander polynomial",))
    if not is_symmetric(delta):
        raise ValueError("facet bound requires a symmetric Alexander polynomial")
    if delta.is_monomial():
        return SphereBound(n, FULL)
    return SphereBound(n, COMPLEMENT, trop_hypersurface(delta), antipodal=False)


def pencil_bound(n: int, pencils: Sequence[Sequence[Sequence[int]]]) -> SphereBound:
    """Complement of the union of the image subspaces f*(H^1(target)) of n x k integer matrices."""
    T = TropSet.empty(n)
    for A in pencils:
        if len(A) != n:
            raise ValueError("pencil matrix must have n rows")
        k = len(A[0]) if A else 0
        cols = [tuple(A[i][j] for i in range(n)) for j in range(k)]
        if k == 0 or rank(cols, n) != k:
            raise ValueError("pencil matrix is not injective")
        T = T.union(TropSet.subspace(cols, n))
    if T.is_empty():
        return SphereBound(n, FULL)
    if T.full_space:
        return SphereBound(n, EMPTY)
    return SphereBound(n, COMPLEMENT, T, antipodal=False)


# ---------------------------------------------------------------- verification


@lru_cache(maxsize=None)
def primitive_directions(n: int, height: int) -> tuple[Direction, ...]:
    """Primitive integer vectors with entries in [-height, height]; planar ones sorted by angle."""
    out = []

    def rec(prefix):
        if len(prefix) == n:
            if any(prefix) and math.gcd(*prefix) == 1:
                out.append(tuple(prefix))
            return
        for x in range(-height, height + 1):
            rec(prefix + [x])

    if n == 1:
        return ((1,), (-1,))
    rec([])
    if n == 2:
        out.sort(key=angle_key)
    return tuple(out)


@lru_cache(maxsize=None)
def _angle_keys(height: int):
    return [angle_key(d) for d in primitive_directions(2, height)]


def _arc_samples(start, end, height):
    dirs = primitive_directions(2, height)
    keys = _angle_keys(height)
    ks, ke = angle_key(start), angle_key(end)
    if ks < ke:
        return dirs[bisect.bisect_right(keys, ks): bisect.bisect_left(keys, ke)]
    lo = dirs[bisect.bisect_right(keys, ks):]
    hi = dirs[: bisect.bisect_left(keys, ke)]
    out = lo + hi
    if ks == ke:
        out = tuple(d for d in out if angle_key(d) != ks)
    return out


@dataclass(frozen=True)
class InclusionReport:
    holds: bool
    witness: Direction | None
    equal: bool | None
    method: str
    samples: int = 0

    @property
    def verdict(self) -> str:
        return "HOLDS" if self.holds else "VIOLATION"

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "witness": list(self.witness) if self.witness else None,
            "equal": self.equal,
            "method": self.method,
            "samples": self.samples,
        }


def _ground_samples(truth: SphereBound, height: int):
    if truth.mode == ARCS and truth.ambient == 2:
        seen = set()
        for s, e in truth.arcs:
            for d in _arc_samples(s, e, height):
                if d not in seen:
                    seen.add(d)
                    yield d
        for d in truth.points:
            if d not in seen:
                yield d
        return
    for d in primitive_directions(truth.ambient, height):
        if truth.allows(d):
            yield d


def verify_inclusion(truth: SphereBound, bound: SphereBound, height: int = 50) -> InclusionReport:
    """Check truth subset of bound on the sphere.

    When the bound excludes only finitely many directions the test is exact;
    otherwise every primitive direction of height <= ``height`` is sampled.
    """
    if truth.ambient != bound.ambient:
        raise ValueError("sphere dimensions differ")
    n = truth.ambient
    if bound.mode == FULL:
        ex = truth.excluded_directions()
        return InclusionReport(True, None, ex == set() or truth.mode == FULL, "trivial")
    if truth.mode == EMPTY or (truth.mode == ARCS and not truth.arcs and not truth.points):
        eq = bound.mode == EMPTY
        return InclusionReport(True, None, eq, "trivial")
    if bound.mode == EMPTY:
        if truth.mode == FULL:
            wit = (1,) + (0,) * (n - 1)
        else:
            wit = next(_ground_samples(truth, height), None)
        return InclusionReport(wit is None, wit, wit is None, "empty-bound")
    excluded = bound.excluded_directions()
    if excluded is not None and n <= 2:
        for d in sorted(excluded):
            if truth.allows(d):
                return InclusionReport(False, d, False, "finite-exclusion")
        truth_ex = truth.excluded_directions()
        eq = truth_ex is not None and set(truth_ex) == set(excluded)
        return InclusionReport(True, None, eq, "finite-exclusion")
    count = 0
    equal = True
    for d in primitive_directions(n, height):
        t = truth.allows(d)
        b = bound.allows(d)
        count += 1
        if t and not b:
            return InclusionReport(False, d, False, "sampled", count)
        if b and not t:
            equal = False
    return InclusionReport(True, None, equal, "sampled", count)
