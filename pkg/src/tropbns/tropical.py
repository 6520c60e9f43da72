"""Constant-coefficient tropicalization.

Tropical sets are finite unions of rational polyhedral cones (or the whole
space).  Hypersurfaces are the codimension > 0 skeleta of inner normal fans of
Newton polytopes; translated subtori tropicalize to the span of their lattice.

>>> from tropbns.laurent import LaurentPoly
>>> T = trop_hypersurface(LaurentPoly.parse("t2 + 1", 2))
>>> T.contains((5, 0)), T.contains((0, 1))
(True, False)
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .alexander import FULL, FINITE_OR_EMPTY, HYPERSURFACE, CharVarietyDescription, ComputedComponent, DirectComponent
from .laurent import LaurentPoly
from .linalg import dot, in_span, mat_vec, primitive, rank, span_basis
from .polyhedra import Cone, Fan, newton_polytope, normal_fan, skeleton
from .presentation import smith_normal_form


class TropSet:
    """Either the whole of R^n or a finite union of cones."""

    def __init__(self, ambient: int, cones: Iterable[Cone] = (), full_space: bool = False, notes: Iterable[str] = ()):
        self.ambient = ambient
        self.full_space = full_space
        self.notes = tuple(notes)
        self.cones: tuple[Cone, ...] = () if full_space else _reduce_cones(list(cones))

    @classmethod
    def full(cls, n: int, notes=()) -> "TropSet":
        return cls(n, (), True, notes)

    @classmethod
    def empty(cls, n: int, notes=()) -> "TropSet":
        return cls(n, (), False, notes)

    @classmethod
    def origin(cls, n: int, notes=()) -> "TropSet":
        return cls(n, [Cone([], [], n)], False, notes)

    @classmethod
    def from_fan(cls, F: Fan, notes=()) -> "TropSet":
        return cls(F.ambient, F.cone_objects(), False, notes)

    @classmethod
    def subspace(cls, basis: Sequence[Sequence[int]], n: int, notes=()) -> "TropSet":
        if basis and rank(basis, n) == n:
            return cls.full(n, notes)
        return cls(n, [Cone([], basis, n)], False, notes)

    def is_empty(self) -> bool:
        return not self.full_space and not self.cones

    def is_origin(self) -> bool:
        """True if the set is exactly {0}."""
        return not self.full_space and bool(self.cones) and all(c.dim == 0 for c in self.cones)

    def within_origin(self) -> bool:
        return not self.full_space and all(c.dim == 0 for c in self.cones)

    def dim(self) -> int:
        if self.full_space:
            return self.ambient
        return max((c.dim for c in self.cones), default=-1)

    def contains(self, w) -> bool:
        if self.full_space:
            return True
        w = tuple(Fraction(x) for x in w)
        return any(c.contains(w) for c in self.cones)

    def union(self, other: "TropSet") -> "TropSet":
        if self.ambient != other.ambient:
            raise ValueError("ambient dimensions differ")
        notes = self.notes + other.notes
        if self.full_space or other.full_space:
            return TropSet.full(self.ambient, notes)
        return TropSet(self.ambient, self.cones + other.cones, False, notes)

    def negated(self) -> "TropSet":
        if self.full_space:
            return self
        return TropSet(self.ambient, [Cone([tuple(-x for x in r) for r in c.rays], c.lineality, self.ambient) for c in self.cones], False, self.notes)

    def ray_directions(self) -> set[tuple[int, ...]]:
        """Primitive directions of the one-dimensional pieces (rays, and both ends of lines)."""
        out = set()
        for c in self.cones:
            if c.dim != 1:
                continue
            if c.rays:
                out.update(c.rays)
            else:
                v = primitive(c.lineality[0])
                out.update({v, tuple(-x for x in v)})
        return out

    def key(self):
        if self.full_space:
            return ("full", self.ambient)
        return ("cones", self.ambient, frozenset(c.key() for c in self.cones))

    def __eq__(self, other):
        return isinstance(other, TropSet) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def to_json(self) -> dict:
        if self.full_space:
            return {"full_space": self.ambient}
        lins = {c.lineality for c in self.cones}
        common = next(iter(lins)) if len(lins) == 1 else ()
        rays: list = []
        cones = []
        for c in self.cones:
            gens = list(c.rays)
            if c.lineality != common:
                for v in c.lineality:
                    gens += [tuple(v), tuple(-x for x in v)]
            ids = []
            for r in gens:
                if r not in rays:
                    rays.append(r)
                ids.append(rays.index(r))
            cones.append(sorted(ids))
        return {
            "ambient": self.ambient,
            "lineality": [[str(x) for x in v] for v in common],
            "rays": [[str(x) for x in r] for r in rays],
            "maximal_cones": cones,
        }

    @classmethod
    def from_json(cls, data: dict) -> "TropSet":
        if "full_space" in data:
            return cls.full(int(data["full_space"]))
        n = int(data["ambient"])
        lin = [tuple(int(x) for x in v) for v in data.get("lineality", [])]
        rays = [tuple(int(x) for x in r) for r in data.get("rays", [])]
        return cls(n, [Cone([rays[i] for i in c], lin, n) for c in data.get("maximal_cones", [])])

    def __repr__(self):
        if self.full_space:
            return f"TropSet(full_space={self.ambient})"
        return f"TropSet(ambient={self.ambient}, cones={list(self.cones)})"


def _cone_inside(small: Cone, big: Cone) -> bool:
    return all(big.contains(r) for r in small.rays) and all(
        big.contains(v) and big.contains(tuple(-x for x in v)) for v in small.lineality
    )


def _reduce_cones(cones: list[Cone]) -> tuple[Cone, ...]:
    uniq: list[Cone] = []
    for c in cones:
        if c not in uniq:
            uniq.append(c)
    keep = []
    for i, c in enumerate(uniq):
        if any(j != i and _cone_inside(c, d) and (d.dim > c.dim or j < i) for j, d in enumerate(uniq)):
            continue
        keep.append(c)
    return tuple(sorted(keep, key=lambda c: c.key()))


# ---------------------------------------------------------------- hypersurfaces


def trop_eval(f: LaurentPoly, w) -> tuple[Fraction, int]:
    """Tropical evaluation min_u w.u over the support, and how many terms attain it."""
    if f.is_zero():
        raise ValueError("tropical evaluation of the zero polynomial")
    vals = [dot(w, e) for e in f.terms]
    lo = min(vals)
    return Fraction(lo), vals.count(lo)


def trop_hypersurface(f: LaurentPoly) -> TropSet:
    """Codimension > 0 skeleton of the inner normal fan of Newt(f); coefficients only enter through the support."""
    if f.is_zero():
        raise ValueError("tropical hypersurface of the zero polynomial")
    if f.is_monomial():
        return TropSet.empty(f.nvars, ["monomial: empty hypersurface"])
    return TropSet.from_fan(skeleton(normal_fan(newton_polytope(f))))


# ---------------------------------------------------------------- translated subtori


def _as_direct(c) -> DirectComponent:
    if isinstance(c, DirectComponent):
        return c
    if isinstance(c, ComputedComponent):
        raise ValueError("exponential tangent cones are only supported for translated subtori")
    lattice, *rest = c
    q = rest[0] if rest else ()
    tors = rest[1] if len(rest) > 1 else ()
    return DirectComponent(tuple(lattice), tuple(q), tuple(tors))


def is_primitive_lattice(basis: Sequence[Sequence[int]], n: int) -> bool:
    """Whether the basis spans a saturated sublattice of Z^n."""
    if not basis:
        return True
    if rank(basis, n) != len(basis):
        return False
    _, S, _ = smith_normal_form(basis)
    return all(S[i][i] == 1 for i in range(len(basis)))


def trop_translated_tori(components: Iterable, n: int) -> TropSet:
    """Union of the spans L_i (x) R; translations do not move the tropicalization."""
    out = TropSet.empty(n)
    for c in components:
        c = _as_direct(c)
        if c.lattice and not is_primitive_lattice(c.lattice, n):
            raise ValueError(f"lattice basis {c.lattice} is not primitive")
        out = out.union(TropSet.subspace(list(c.lattice), n))
        if out.full_space:
            return out
    return out


def translation_in_subtorus(c: DirectComponent, n: int) -> bool:
    """Whether the translating character lies in the subtorus T_L itself.

    With L saturated, exp(2 pi i q) is in T_L iff c.q is an integer for every c
    in the lattice L^perp; a basis of L^perp comes from the Smith form of L.
    """
    if any(c.torsion_translation):
        return False
    q = list(c.translation) + [Fraction(0)] * (n - len(c.translation))
    k = len(c.lattice)
    if k == 0:
        return all(x.denominator == 1 for x in q)
    _, _, V = smith_normal_form(c.lattice)
    for j in range(k, n):
        col = [V[i][j] for i in range(n)]
        if dot(col, q).denominator != 1:
            return False
    return True


@dataclass(frozen=True)
class SubspaceUnion:
    ambient: int
    subspaces: tuple[tuple[tuple[int, ...], ...], ...] = field(default=())

    def contains(self, w) -> bool:
        return any((not B and not any(w)) or (B and in_span(w, B, self.ambient)) for B in self.subspaces)

    def as_tropset(self) -> TropSet:
        out = TropSet.empty(self.ambient)
        for B in self.subspaces:
            out = out.union(TropSet.subspace(list(B), self.ambient))
        return out


def _subspace_inside(A, B, n) -> bool:
    if not A:
        return True
    if not B:
        return False
    return all(in_span(v, B, n) for v in A)


def exp_tangent_cone(components: Iterable, n: int) -> SubspaceUnion:
    """Union of L_i (x) R over the components whose translation is trivial on the subtorus."""
    spaces = []
    for c in components:
        c = _as_direct(c)
        if translation_in_subtorus(c, n):
            spaces.append(tuple(span_basis(list(c.lattice), n)) if c.lattice else ())
    uniq = []
    for s in spaces:
        if s not in uniq:
            uniq.append(s)
    keep = [s for i, s in enumerate(uniq) if not any(j != i and _subspace_inside(s, t, n) for j, t in enumerate(uniq))]
    return SubspaceUnion(n, tuple(keep))


def strictness_witness(components: Sequence, n: int):
    """A rational point of Trop minus tau, found inside a translated component, or None.

    Points on a moment curve sum N^j b_j (over a basis b of L_i) avoid any finite
    union of proper subspaces of L_i once N ranges over enough integers.
    """
    comps = [_as_direct(c) for c in components]
    tau = exp_tangent_cone(comps, n)
    for c in comps:
        if translation_in_subtorus(c, n) or not c.lattice:
            continue
        basis = list(c.lattice)
        # a subspace inside a finite union of subspaces lies in one of them
        if any(_subspace_inside(tuple(basis), B, n) for B in tau.subspaces):
            continue
        for N in range(1, len(basis) * (len(tau.subspaces) + 1) + 2):
            w = [0] * n
            for j, b in enumerate(basis):
                for i in range(n):
                    w[i] += N ** j * b[i]
            if not tau.contains(tuple(w)):
                return tuple(w)
    return None


# ---------------------------------------------------------------- characteristic varieties


def trop_char_variety(d: CharVarietyDescription) -> TropSet:
    n = d.rank
    out = TropSet.origin(n) if (d.contains_identity and n >= 1) else TropSet.empty(n)
    for c in d.components:
        if isinstance(c, ComputedComponent):
            if c.outcome == FULL:
                return TropSet.full(n, ["full component at torsion character %s" % (c.character,)])
            if c.outcome == HYPERSURFACE:
                out = out.union(trop_hypersurface(c.polynomial))
            elif c.outcome == FINITE_OR_EMPTY:
                # finitely many constant points tropicalize to the origin at most
                continue
        else:
            t = trop_translated_tori([c], n)
            if t.full_space:
                return TropSet.full(n, ["full-rank translated subtorus"])
            out = out.union(t)
    return out


def trop_pushforward(T: TropSet, A: Sequence[Sequence[int]]) -> TropSet:
    """Image of a tropical set under x -> A x, for A injective (n_out x n_in)."""
    n_in = T.ambient
    n_out = len(A)
    if any(len(row) != n_in for row in A):
        raise ValueError("matrix shape does not match the ambient dimension")
    cols = [tuple(A[i][j] for i in range(n_out)) for j in range(n_in)]
    if n_in and rank(cols, n_out) != n_in:
        raise ValueError("pushforward matrix is not injective")
    if T.full_space:
        return TropSet.subspace(cols, n_out)
    cones = [Cone([mat_vec(A, r) for r in c.rays], [mat_vec(A, v) for v in c.lineality], n_out) for c in T.cones]
    return TropSet(n_out, cones, False, T.notes)
