"""Exact rational polytopes, polyhedral cones and fans.

Inequalities are written ``a . x >= b`` with ``a`` a primitive integer inner
normal.  Everything is brute force over Q and meant for ambient dimension at
most 8.

>>> P = convex_hull([(0, 0), (1, 0), (0, 1)])
>>> len(P.facets)
3
>>> sorted(normal_fan(P).rays)
[(-1, -1), (0, 1), (1, 0)]
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, Sequence

from .linalg import dot, in_span, mat_vec, nullspace, orth_complement, primitive, rank, span_basis

MAX_DIM = 8

Point = tuple  # of Fraction


def _frac_point(p) -> Point:
    return tuple(Fraction(x) for x in p)


def _fmt(x) -> str:
    return str(Fraction(x))


# ---------------------------------------------------------------- polytopes


class Polytope:
    """Convex hull of finitely many rational points, optionally plus a linear space.

    ``lineality`` is empty for honest polytopes; the Alexander ball of a
    polynomial with lower-dimensional Newton polytope carries one.
    """

    def __init__(self, ambient: int, vertices, facets, equations=(), lineality=(), degenerate: bool = False):
        self.ambient = ambient
        self.vertices: tuple[Point, ...] = tuple(sorted(_frac_point(v) for v in vertices))
        self.facets: tuple[tuple[tuple[int, ...], Fraction], ...] = tuple(sorted((tuple(a), Fraction(b)) for a, b in facets))
        self.equations: tuple[tuple[tuple[int, ...], Fraction], ...] = tuple((tuple(a), Fraction(b)) for a, b in equations)
        self.lineality: tuple[tuple[int, ...], ...] = tuple(tuple(v) for v in lineality)
        self.degenerate = degenerate

    @property
    def dim(self) -> int:
        if not self.vertices:
            return -1
        v0 = self.vertices[0]
        diffs = [tuple(a - b for a, b in zip(v, v0)) for v in self.vertices[1:]]
        return rank(diffs + list(self.lineality), self.ambient) if (diffs or self.lineality) else 0

    def is_full_dimensional(self) -> bool:
        return self.dim == self.ambient

    def incidence(self, facet_index: int) -> list[int]:
        a, b = self.facets[facet_index]
        return [i for i, v in enumerate(self.vertices) if dot(a, v) == b]

    def contains(self, x) -> bool:
        x = _frac_point(x)
        return all(dot(a, x) >= b for a, b in self.facets) and all(dot(a, x) == b for a, b in self.equations)

    def interior_contains(self, x) -> bool:
        """Relative interior membership."""
        x = _frac_point(x)
        return all(dot(a, x) > b for a, b in self.facets) and all(dot(a, x) == b for a, b in self.equations)

    def bounding_box_center(self) -> Point:
        return tuple((min(v[i] for v in self.vertices) + max(v[i] for v in self.vertices)) / 2 for i in range(self.ambient))

    def translate(self, shift) -> "Polytope":
        s = _frac_point(shift)
        return Polytope(
            self.ambient,
            [tuple(a + b for a, b in zip(v, s)) for v in self.vertices],
            [(a, b + dot(a, s)) for a, b in self.facets],
            [(a, b + dot(a, s)) for a, b in self.equations],
            self.lineality,
            self.degenerate,
        )

    def scale(self, c) -> "Polytope":
        c = Fraction(c)
        if c <= 0:
            raise ValueError("only positive scalings are supported")
        return Polytope(
            self.ambient,
            [tuple(c * x for x in v) for v in self.vertices],
            [(a, b * c) for a, b in self.facets],
            [(a, b * c) for a, b in self.equations],
            self.lineality,
            self.degenerate,
        )

    def support_min(self, phi) -> Fraction:
        return min(dot(phi, v) for v in self.vertices)

    def __eq__(self, other):
        if not isinstance(other, Polytope):
            return NotImplemented
        return (self.ambient, self.vertices, self.facets) == (other.ambient, other.vertices, other.facets) and (
            span_basis(self.lineality, self.ambient) == span_basis(other.lineality, other.ambient)
        )

    def __hash__(self):
        return hash((self.ambient, self.vertices))

    def __repr__(self):
        return f"Polytope(dim={self.dim}, vertices={[tuple(map(_fmt, v)) for v in self.vertices]})"

    def to_json(self) -> dict:
        return {
            "ambient": self.ambient,
            "vertices": [[_fmt(x) for x in v] for v in self.vertices],
            "facets": [{"normal": list(a), "offset": _fmt(b)} for a, b in self.facets],
            "equations": [{"normal": list(a), "value": _fmt(b)} for a, b in self.equations],
            "lineality": [list(v) for v in self.lineality],
            "degenerate": self.degenerate,
        }


def convex_hull(points: Iterable[Sequence]) -> Polytope:
    pts = sorted(set(_frac_point(p) for p in points))
    if not pts:
        raise ValueError("convex hull of an empty point set")
    n = len(pts[0])
    if n > MAX_DIM:
        raise ValueError(f"ambient dimension {n} exceeds the supported maximum {MAX_DIM}")
    p0 = pts[0]
    diffs = [tuple(a - b for a, b in zip(p, p0)) for p in pts[1:]]
    direction = span_basis(diffs, n) if diffs else []
    d = len(direction)
    perp = orth_complement(direction, n)
    equations = [(c, dot(c, p0)) for c in perp]
    if d == 0:
        return Polytope(n, [p0], [], equations)
    facets: dict[tuple[int, ...], Fraction] = {}
    for combo in itertools.combinations(range(len(pts)), d):
        base = pts[combo[0]]
        rows = [tuple(a - b for a, b in zip(pts[i], base)) for i in combo[1:]] + list(perp)
        ns = nullspace(rows, n) if rows else [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
        if len(ns) != 1:
            continue
        a = ns[0]
        b = dot(a, base)
        vals = [dot(a, p) for p in pts]
        if all(v >= b for v in vals):
            facets[tuple(a)] = b
        elif all(v <= b for v in vals):
            facets[tuple(-x for x in a)] = -b
    facet_list = list(facets.items())
    vertices = []
    for p in pts:
        tight = [a for a, b in facet_list if dot(a, p) == b]
        if tight and rank(tight, n) == d:
            vertices.append(p)
    return Polytope(n, vertices, facet_list, equations)


def newton_polytope(f) -> Polytope:
    """Newton polytope of a nonzero LaurentPoly."""
    if f.is_zero():
        raise ValueError("the zero polynomial has no Newton polytope")
    return convex_hull(f.terms.keys())


def polar_dual(P: Polytope) -> Polytope:
    """``{y : y.x >= -1 for x in P}``, computed inside the direction space of P.

    For a lower-dimensional P (with 0 in its relative interior) the dual is the
    dual within the span plus the orthogonal complement as lineality.
    """
    if P.lineality:
        raise ValueError("polar dual of a polyhedron with lineality is not supported")
    if any(b for _, b in P.equations):
        raise ValueError("0 does not lie in the affine hull")
    if not P.facets:
        raise ValueError("0-dimensional polytope has no bounded dual")
    if any(b >= 0 for _, b in P.facets):
        raise ValueError("0 is not an interior point after centering (degenerate Newton polytope)")
    verts = [tuple(Fraction(x) / -b for x in a) for a, b in P.facets]
    Q = convex_hull(verts)
    lin = [a for a, _ in P.equations]
    if lin:
        return Polytope(P.ambient, Q.vertices, Q.facets, (), lin, degenerate=True)
    return Q


def alexander_ball(delta) -> Polytope:
    """Unit ball of the Alexander norm: half the polar dual of the centered Newton polytope."""
    from .alexander import is_symmetric

    if delta.is_zero():
        raise ValueError("Alexander ball of the zero polynomial is undefined")
    if not is_symmetric(delta):
        raise ValueError("Alexander ball requires a symmetric polynomial")
    N = newton_polytope(delta)
    c = N.bounding_box_center()
    centered = N.translate(tuple(-x for x in c))
    return polar_dual(centered).scale(Fraction(1, 2))


# ---------------------------------------------------------------- cones


class Cone:
    """cone(rays) + span(lineality)."""

    def __init__(self, rays: Iterable[Sequence[int]], lineality: Iterable[Sequence[int]] = (), ambient: int | None = None):
        rays = sorted(set(primitive(r) for r in rays if any(r)))
        lin = [tuple(v) for v in lineality if any(v)]
        if ambient is None:
            ambient = len(rays[0]) if rays else len(lin[0])
        self.ambient = ambient
        self.rays = tuple(rays)
        self.lineality = tuple(span_basis(lin, ambient)) if lin else ()
        self._hrep = None
        # the H-representation does not depend on which generators are called lineality,
        # so compute it once and then split off the true lineality and the extreme rays
        ineqs, _ = self.hrep()
        both = [r for r in rays if all(dot(a, r) == 0 for a in ineqs)]
        if both:
            self.lineality = tuple(span_basis(lin + both, ambient))
        rest = [r for r in rays if not (self.lineality and in_span(r, self.lineality, ambient))]
        ell = len(self.lineality)
        keep = []
        for r in rest:
            tight = [a for a in ineqs if dot(a, r) == 0]
            face = [q for q in rest if all(dot(a, q) == 0 for a in tight)]
            if rank(face + list(self.lineality), ambient) == ell + 1:
                keep.append(r)
        self.rays = tuple(keep)

    @property
    def dim(self) -> int:
        gens = list(self.rays) + list(self.lineality)
        return rank(gens, self.ambient) if gens else 0

    def span(self) -> list[tuple]:
        gens = list(self.rays) + list(self.lineality)
        return span_basis(gens, self.ambient) if gens else []

    def hrep(self):
        """(inequality normals a with a.x >= 0, equation normals c with c.x = 0)."""
        if self._hrep is not None:
            return self._hrep
        n = self.ambient
        S = self.span()
        perp = orth_complement(S, n)
        k = len(S)
        lin = list(self.lineality)
        ineqs: set = set()
        free = k - len(lin)
        if free > 0:
            for combo in itertools.combinations(self.rays, free - 1):
                rows = list(combo) + lin + list(perp)
                ns = nullspace(rows, n) if rows else [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
                if len(ns) != 1:
                    continue
                a = ns[0]
                vals = [dot(a, r) for r in self.rays]
                if all(v >= 0 for v in vals) and any(vals):
                    ineqs.add(tuple(a))
                elif all(v <= 0 for v in vals) and any(vals):
                    ineqs.add(tuple(-x for x in a))
        self._hrep = (tuple(sorted(ineqs)), tuple(perp))
        return self._hrep

    def contains(self, w) -> bool:
        ineqs, eqs = self.hrep()
        return all(dot(c, w) == 0 for c in eqs) and all(dot(a, w) >= 0 for a in ineqs)

    def relint_contains(self, w) -> bool:
        ineqs, eqs = self.hrep()
        return all(dot(c, w) == 0 for c in eqs) and all(dot(a, w) > 0 for a in ineqs)

    def minimal_face(self, w) -> "Cone":
        """The face of this cone whose relative interior contains ``w`` (assumed in the cone)."""
        ineqs, _ = self.hrep()
        tight = [a for a in ineqs if dot(a, w) == 0]
        rays = [r for r in self.rays if all(dot(a, r) == 0 for a in tight)]
        return Cone(rays, self.lineality, self.ambient)

    def facets(self) -> list["Cone"]:
        ineqs, _ = self.hrep()
        out = []
        for a in ineqs:
            rays = [r for r in self.rays if dot(a, r) == 0]
            out.append(Cone(rays, self.lineality, self.ambient))
        return out

    def interior_point(self) -> tuple:
        return tuple(sum(r[i] for r in self.rays) for i in range(self.ambient))

    def key(self):
        return (self.ambient, self.rays, tuple(span_basis(self.lineality, self.ambient)) if self.lineality else ())

    def __eq__(self, other):
        return isinstance(other, Cone) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"Cone(rays={list(self.rays)}, lineality={list(self.lineality)})"


# ---------------------------------------------------------------- fans


class Fan:
    """Fan stored by its maximal cones; all cones share the lineality space."""

    def __init__(self, ambient: int, rays: Iterable[Sequence[int]], cones: Iterable[Iterable[int]], lineality=()):
        self.ambient = ambient
        self.rays: tuple[tuple[int, ...], ...] = tuple(tuple(r) for r in rays)
        self.lineality: tuple[tuple[int, ...], ...] = tuple(span_basis(list(lineality), ambient)) if lineality else ()
        seen = []
        for c in cones:
            c = tuple(sorted(set(c)))
            if c not in seen:
                seen.append(c)
        self.cones: tuple[tuple[int, ...], ...] = tuple(seen)
        self._cone_objs = None

    @classmethod
    def from_cones(cls, cones: Sequence[Cone], ambient: int) -> "Fan":
        if not cones:
            return cls(ambient, [], [])
        lin = cones[0].lineality
        rays: list = []
        idx = []
        for c in cones:
            if span_basis(list(c.lineality), ambient) != span_basis(list(lin), ambient) if (c.lineality or lin) else False:
                raise ValueError("cones in a fan must share the lineality space")
            ids = []
            for r in c.rays:
                if r not in rays:
                    rays.append(r)
                ids.append(rays.index(r))
            idx.append(ids)
        return cls(ambient, rays, idx, lin)

    def cone(self, i: int) -> Cone:
        return self.cone_objects()[i]

    def cone_objects(self) -> list[Cone]:
        if self._cone_objs is None:
            self._cone_objs = [Cone([self.rays[j] for j in c], self.lineality, self.ambient) for c in self.cones]
        return self._cone_objs

    def is_empty(self) -> bool:
        return not self.cones

    def is_full_space(self) -> bool:
        return any(c.dim == self.ambient and not c.hrep()[0] for c in self.cone_objects())

    def dim(self) -> int:
        return max((c.dim for c in self.cone_objects()), default=-1)

    def contains(self, w) -> bool:
        return any(c.contains(w) for c in self.cone_objects())

    def used_rays(self) -> list[tuple[int, ...]]:
        used = sorted({j for c in self.cones for j in c})
        return [self.rays[j] for j in used]

    def maximal_cone_set(self) -> frozenset:
        return frozenset(frozenset(self.rays[j] for j in c) for c in self.cones)

    def same_as(self, other: "Fan") -> bool:
        return (
            self.ambient == other.ambient
            and span_basis(list(self.lineality), self.ambient) == span_basis(list(other.lineality), other.ambient)
            and self.maximal_cone_set() == other.maximal_cone_set()
        )

    def to_json(self) -> dict:
        return {
            "ambient": self.ambient,
            "lineality": [[str(x) for x in v] for v in self.lineality],
            "rays": [[str(x) for x in r] for r in self.rays],
            "maximal_cones": [list(c) for c in self.cones],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Fan":
        return cls(
            data["ambient"],
            [tuple(int(x) for x in r) for r in data["rays"]],
            data["maximal_cones"],
            [tuple(int(x) for x in v) for v in data["lineality"]],
        )

    def __repr__(self):
        return f"Fan(ambient={self.ambient}, rays={list(self.rays)}, cones={list(self.cones)}, lineality={list(self.lineality)})"


def normal_fan(P: Polytope) -> Fan:
    """Inner normal fan: the cone at vertex v collects the w minimized over P at v."""
    n = P.ambient
    lin = [a for a, _ in P.equations]
    rays = [a for a, _ in P.facets]
    cones = []
    for v in P.vertices:
        cones.append([i for i, (a, b) in enumerate(P.facets) if dot(a, v) == b])
    if not P.facets:
        cones = [[]]
    return Fan(n, rays, cones, lin)


def face_fan(Q: Polytope) -> Fan:
    """Cones over the proper faces of a polytope with 0 in its (relative) interior."""
    rays = [primitive(v) for v in Q.vertices]
    lin = [a for a, _ in Q.equations] or list(Q.lineality)
    cones = [[i for i, v in enumerate(Q.vertices) if dot(a, v) == b] for a, b in Q.facets]
    return Fan(Q.ambient, rays, cones, lin)


def skeleton(F: Fan) -> Fan:
    """Cones of positive codimension, stored by the facets of the maximal cones.

    A fan consisting of the whole space has the origin as its skeleton.
    """
    faces: list[Cone] = []
    for c in F.cone_objects():
        for f in c.facets():
            if f not in faces:
                faces.append(f)
    if not faces:
        return Fan(F.ambient, [], [[]], ())
    return Fan.from_cones(faces, F.ambient)


def cone_membership(F: Fan, w) -> Cone | None:
    """The cone of F whose relative interior contains w, or None if w is outside the support."""
    w = _frac_point(w)
    for c in F.cone_objects():
        if c.contains(w):
            return c.minimal_face(w)
    return None


def linear_image(F: Fan, A: Sequence[Sequence[int]]) -> Fan:
    """Image of F under the linear map x -> A x (A has shape n_out x n_in)."""
    n_out = len(A)
    gens = list(F.rays) + list(F.lineality)
    if gens:
        S = span_basis(gens, F.ambient)
        if rank([mat_vec(A, v) for v in S], n_out) != len(S):
            raise ValueError("linear map is not injective on the support of the fan")
    cones = [Cone([mat_vec(A, r) for r in c.rays], [mat_vec(A, v) for v in F.lineality], n_out) for c in F.cone_objects()]
    if not cones:
        return Fan(n_out, [], [])
    if all(not c.rays and not c.lineality for c in cones):
        return Fan(n_out, [], [[]])
    return Fan.from_cones(cones, n_out)


def fans_disjoint_interiors(F: Fan) -> bool:
    """Check pairwise disjointness of maximal-cone interiors at their sample interior points."""
    objs = F.cone_objects()
    for i, c in enumerate(objs):
        p = c.interior_point()
        for j, d in enumerate(objs):
            if i != j and d.dim == c.dim and d.relint_contains(p):
                return False
    return True
