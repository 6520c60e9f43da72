"""Finite group presentations, free-group words and Fox calculus.

Words are stored run-length compressed as ``(generator, exponent)``
syllables with 1-based generator indices, eagerly reduced.

>>> p = parse_presentation("<x1,x2 | x1*x2*x1^-1*x2^-2>")
>>> p.relators[0].length
5
>>> ab = abelianize(p)
>>> ab.rank, ab.torsion
(1, ())
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .linalg import identity


class PresentationSyntaxError(ValueError):
    """Raised on malformed presentation text; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


def _reduce_syllables(pairs: Iterable[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
    stack: list[list[int]] = []
    for g, e in pairs:
        if e == 0:
            continue
        if stack and stack[-1][0] == g:
            stack[-1][1] += e
            if stack[-1][1] == 0:
                stack.pop()
        else:
            stack.append([g, e])
    return tuple((g, e) for g, e in stack)


@dataclass(frozen=True)
class FreeWord:
    syllables: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "syllables", _reduce_syllables(self.syllables))

    @classmethod
    def from_letters(cls, letters: Iterable[tuple[int, int]]) -> "FreeWord":
        return cls(tuple((g, s) for g, s in letters))

    @classmethod
    def from_ints(cls, ints: Iterable[int]) -> "FreeWord":
        """Signed-integer letter list, e.g. ``[1, 2, -1]`` for x1 x2 x1^-1."""
        return cls(tuple((abs(i), 1 if i > 0 else -1) for i in ints))

    @classmethod
    def generator(cls, i: int, exponent: int = 1) -> "FreeWord":
        return cls(((i, exponent),))

    def letters(self) -> Iterator[tuple[int, int]]:
        for g, e in self.syllables:
            s = 1 if e > 0 else -1
            for _ in range(abs(e)):
                yield g, s

    @property
    def length(self) -> int:
        return sum(abs(e) for _, e in self.syllables)

    def __len__(self) -> int:
        return self.length

    def __bool__(self) -> bool:
        return bool(self.syllables)

    def __mul__(self, other: "FreeWord") -> "FreeWord":
        if isinstance(other, GroupRingElement):
            return GroupRingElement({self: 1}) * other
        return FreeWord(self.syllables + other.syllables)

    def inverse(self) -> "FreeWord":
        return FreeWord(tuple((g, -e) for g, e in reversed(self.syllables)))

    def __pow__(self, k: int) -> "FreeWord":
        base = self if k >= 0 else self.inverse()
        return FreeWord(base.syllables * abs(k))

    def exponent_sum(self, i: int) -> int:
        return sum(e for g, e in self.syllables if g == i)

    def max_generator(self) -> int:
        return max((g for g, _ in self.syllables), default=0)

    def cyclically_reduced(self) -> "FreeWord":
        syl = list(self.syllables)
        while len(syl) >= 2 and syl[0][0] == syl[-1][0]:
            g = syl[0][0]
            merged = syl[0][1] + syl[-1][1]
            syl = syl[1:-1]
            if merged:
                # keep the merged syllable at the front; the word is a rotation
                syl = [(g, merged)] + syl
                break
        return FreeWord(tuple(syl))

    def text(self, names: Sequence[str] | None = None) -> str:
        if not self.syllables:
            return "1"
        out = []
        for g, e in self.syllables:
            name = names[g - 1] if names else f"x{g}"
            out.append(name if e == 1 else f"{name}^{e}")
        return "*".join(out)

    def __repr__(self) -> str:
        return f"FreeWord({self.text()})"


def commutator(u: FreeWord, v: FreeWord) -> FreeWord:
    """[u, v] = u v u^-1 v^-1."""
    return u * v * u.inverse() * v.inverse()


class GroupRingElement:
    """Element of the integral group ring of a free group."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[FreeWord, int] | None = None):
        self.terms = {w: c for w, c in (terms or {}).items() if c}

    @classmethod
    def one(cls) -> "GroupRingElement":
        return cls({FreeWord(): 1})

    def __add__(self, other):
        other = _as_ring(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return GroupRingElement(out)

    __radd__ = __add__

    def __neg__(self):
        return GroupRingElement({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_as_ring(other))

    def __rsub__(self, other):
        return _as_ring(other) - self

    def __mul__(self, other):
        other = _as_ring(other)
        out: dict[FreeWord, int] = {}
        for u, a in self.terms.items():
            for v, b in other.terms.items():
                w = u * v
                out[w] = out.get(w, 0) + a * b
        return GroupRingElement(out)

    def __rmul__(self, other):
        return _as_ring(other) * self

    def __eq__(self, other):
        try:
            other = _as_ring(other)
        except TypeError:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = [f"{c}*{w.text()}" for w, c in sorted(self.terms.items(), key=lambda t: t[0].syllables)]
        return " + ".join(parts)


def _as_ring(x) -> GroupRingElement:
    if isinstance(x, GroupRingElement):
        return x
    if isinstance(x, FreeWord):
        return GroupRingElement({x: 1})
    if isinstance(x, int):
        return GroupRingElement({FreeWord(): x})
    raise TypeError(f"cannot coerce {type(x).__name__} into the group ring")


def fox_derivative(w: FreeWord, j: int) -> GroupRingElement:
    """Fox derivative of ``w`` with respect to generator ``j``.

    Uses d(uv) = d(u) + u d(v), d(x_j) = 1 and d(x_j^-1) = -x_j^-1.
    """
    out: dict[FreeWord, int] = {}
    prefix: list[tuple[int, int]] = []
    for g, s in w.letters():
        if g == j:
            if s > 0:
                key = FreeWord(tuple(prefix))
                out[key] = out.get(key, 0) + 1
            else:
                key = FreeWord(tuple(prefix) + ((g, -1),))
                out[key] = out.get(key, 0) - 1
        prefix.append((g, s))
    return GroupRingElement(out)


@dataclass(frozen=True)
class GroupPresentation:
    num_generators: int
    relators: tuple[FreeWord, ...] = ()
    names: tuple[str, ...] = ()

    def __post_init__(self):
        if self.num_generators < 1:
            raise ValueError("a presentation needs at least one generator")
        object.__setattr__(self, "relators", tuple(self.relators))
        if not self.names:
            object.__setattr__(self, "names", tuple(f"x{i + 1}" for i in range(self.num_generators)))
        if len(self.names) != self.num_generators:
            raise ValueError("number of names does not match num_generators")
        for r in self.relators:
            if r.max_generator() > self.num_generators:
                raise ValueError(f"relator {r.text()} uses an undeclared generator")

    @property
    def deficiency(self) -> int:
        return self.num_generators - len(self.relators)

    def exponent_matrix(self) -> list[list[int]]:
        return [[r.exponent_sum(i + 1) for i in range(self.num_generators)] for r in self.relators]

    def text(self) -> str:
        rels = ", ".join(r.text(self.names) for r in self.relators)
        return f"<{','.join(self.names)} | {rels}>"


_IDENT = re.compile(r"[a-zA-Z][a-zA-Z0-9]*")
_INT = re.compile(r"[+-]?\d+")


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            found = self.peek() or "end of input"
            raise PresentationSyntaxError(f"expected {ch!r}, found {found!r}", self.pos)
        self.pos += 1

    def match(self, regex: re.Pattern, what: str) -> str:
        self.skip()
        m = regex.match(self.text, self.pos)
        if not m:
            raise PresentationSyntaxError(f"expected {what}", self.pos)
        self.pos = m.end()
        return m.group()


def parse_presentation(text: str) -> GroupPresentation:
    """Parse ``<g1,...,gm | w1, w2, ...>`` where each w is a ``*``-product of ``g^k``."""
    sc = _Scanner(text)
    sc.expect("<")
    names: list[str] = []
    while True:
        start = sc.pos
        name = sc.match(_IDENT, "generator name")
        if name in names:
            raise PresentationSyntaxError(f"generator {name!r} declared twice", start)
        names.append(name)
        if sc.peek() == ",":
            sc.pos += 1
            continue
        break
    index = {n: i + 1 for i, n in enumerate(names)}
    sc.expect("|")
    relators: list[FreeWord] = []
    if sc.peek() != ">":
        while True:
            syl = []
            while True:
                start = sc.pos
                sc.skip()
                start = sc.pos
                name = sc.match(_IDENT, "generator in relator")
                if name not in index:
                    raise PresentationSyntaxError(f"generator {name!r} used but not declared", start)
                k = 1
                if sc.peek() == "^":
                    sc.pos += 1
                    kpos = sc.pos
                    k = int(sc.match(_INT, "integer exponent"))
                    if k == 0:
                        raise PresentationSyntaxError("exponent must be nonzero", kpos)
                syl.append((index[name], k))
                if sc.peek() == "*":
                    sc.pos += 1
                    continue
                break
            relators.append(FreeWord(tuple(syl)))
            if sc.peek() == ",":
                sc.pos += 1
                continue
            break
    sc.expect(">")
    sc.skip()
    if sc.pos != len(text):
        raise PresentationSyntaxError("trailing characters", sc.pos)
    return GroupPresentation(len(names), tuple(relators), tuple(names))


def smith_normal_form(A: Sequence[Sequence[int]]):
    """Smith normal form ``U A V = S`` with unimodular U, V.

    Pivot on the entry of least absolute value; ``S`` has nonnegative diagonal
    entries d1 | d2 | ... .
    """
    m = len(A)
    n = len(A[0]) if m else 0
    S = [list(map(int, r)) for r in A]
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (S, V):
            for r in M:
                r[i], r[j] = r[j], r[i]

    def add_row(dst, src, f):  # row_dst += f * row_src
        S[dst] = [a + f * b for a, b in zip(S[dst], S[src])]
        U[dst] = [a + f * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, f):
        for M in (S, V):
            for r in M:
                r[dst] += f * r[src]

    for t in range(min(m, n)):
        while True:
            entries = [(abs(S[i][j]), i, j) for i in range(t, m) for j in range(t, n) if S[i][j]]
            if not entries:
                break
            _, i, j = min(entries)
            swap_rows(t, i)
            swap_cols(t, j)
            p = S[t][t]
            dirty = False
            for i in range(t + 1, m):
                q = S[i][t] // p
                if q:
                    add_row(i, t, -q)
                if S[i][t]:
                    dirty = True
            for j in range(t + 1, n):
                q = S[t][j] // p
                if q:
                    add_col(j, t, -q)
                if S[t][j]:
                    dirty = True
            if dirty:
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if S[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if t < m and t < n and S[t][t] < 0:
            S[t] = [-x for x in S[t]]
            U[t] = [-x for x in U[t]]
    return U, S, V


@dataclass(frozen=True)
class AbelianizationData:
    """G_ab = Z^rank + sum Z/d_j, with generator images in normal-form coordinates."""

    rank: int
    torsion: tuple[int, ...]
    free_projection: tuple[tuple[int, ...], ...]  # row i = image of generator i in Z^rank
    torsion_projection: tuple[tuple[int, ...], ...]  # row i = image in sum Z/d_j, entries in [0, d_j)
    num_generators: int = field(default=0)

    def image(self, w: FreeWord) -> tuple[tuple[int, ...], tuple[int, ...]]:
        free = [0] * self.rank
        tors = [0] * len(self.torsion)
        for g, e in w.syllables:
            for k, x in enumerate(self.free_projection[g - 1]):
                free[k] += e * x
            for k, x in enumerate(self.torsion_projection[g - 1]):
                tors[k] += e * x
        return tuple(free), tuple(t % d for t, d in zip(tors, self.torsion))

    @property
    def torsion_order(self) -> int:
        out = 1
        for d in self.torsion:
            out *= d
        return out


def _column_echelon(M: list[list[int]], ncols: int) -> list[list[int]]:
    """Column-style Hermite reduction of an integer matrix by unimodular column ops."""
    M = [list(r) for r in M]
    col = 0
    for row in range(len(M)):
        if col == ncols:
            break
        while True:
            nz = [(abs(M[row][j]), j) for j in range(col, ncols) if M[row][j]]
            if not nz:
                break
            _, j = min(nz)
            for r in M:
                r[col], r[j] = r[j], r[col]
            if M[row][col] < 0:
                for r in M:
                    r[col] = -r[col]
            p = M[row][col]
            done = True
            for j in range(col + 1, ncols):
                q = M[row][j] // p
                if q:
                    for r in M:
                        r[j] -= q * r[col]
                if M[row][j]:
                    done = False
            if done:
                break
        if any(M[row][j] for j in range(col, ncols)):
            p = M[row][col]
            for j in range(col):
                q = M[row][j] // p
                if q:
                    for r in M:
                        r[j] -= q * r[col]
            col += 1
    return M


def abelianize(p: GroupPresentation) -> AbelianizationData:
    m = p.num_generators
    R = p.exponent_matrix()
    if not R:
        R = [[0] * m]
    U, S, V = smith_normal_form(R)
    diag = [S[i][i] for i in range(min(len(S), m)) if S[i][i]]
    r = len(diag)
    torsion_idx = [k for k in range(r) if diag[k] > 1]
    torsion = tuple(diag[k] for k in torsion_idx)
    free = [[V[i][k] for k in range(r, m)] for i in range(m)]
    free = _column_echelon(free, m - r) if m - r else free
    tors = [[V[i][k] % diag[k] for k in torsion_idx] for i in range(m)]
    return AbelianizationData(
        rank=m - r,
        torsion=torsion,
        free_projection=tuple(tuple(row) for row in free),
        torsion_projection=tuple(tuple(row) for row in tors),
        num_generators=m,
    )


def random_commutator_relator(rng, max_length: int = 24, num_generators: int = 2) -> FreeWord:
    """A nontrivial cyclically reduced word with zero exponent sums.

    Draws a balanced multiset of letters, shuffles it and rejects words that
    are not reduced as written, so the length is always <= max_length.
    """
    if max_length < 4:
        raise ValueError("max_length must be at least 4")
    per = max_length // (2 * num_generators)
    while True:
        letters = []
        for g in range(1, num_generators + 1):
            k = rng.randint(1, max(1, per))
            letters += [(g, 1)] * k + [(g, -1)] * k
        rng.shuffle(letters)
        w = FreeWord.from_letters(letters)
        if w.length == len(letters) and w.cyclically_reduced() == w:
            return w
