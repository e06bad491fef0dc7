"""Exact integer arithmetic in affine root lattices.

Vectors are integer coordinate tuples against the simple roots of a stated
vertex set; Weyl group elements are integer matrices acting on the full
lattice of the ambient diagram.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .dynkin import DiagramError, DynkinData, DynkinDiagram

# entries stay tiny in practice; anything near this is treated as overflow
_LIMIT = 1 << 40


class LatticeError(ValueError):
    """Index-set mismatch, overflow or an invalid lattice request."""


def _checked(m: np.ndarray) -> np.ndarray:
    if m.size and int(np.abs(m).max()) >= _LIMIT:
        raise OverflowError("root lattice coordinates exceeded the safe range")
    return m


@dataclass(frozen=True)
class RootVector:
    lattice: tuple[int, ...]
    coords: tuple[int, ...]

    def __post_init__(self):
        if len(self.lattice) != len(self.coords):
            raise LatticeError("coordinate count does not match lattice")

    def _same(self, other: "RootVector") -> None:
        if self.lattice != other.lattice:
            raise LatticeError(f"lattices differ: {self.lattice} vs {other.lattice}")

    def __add__(self, other: "RootVector") -> "RootVector":
        self._same(other)
        return RootVector(self.lattice, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "RootVector") -> "RootVector":
        self._same(other)
        return RootVector(self.lattice, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "RootVector":
        return RootVector(self.lattice, tuple(-a for a in self.coords))

    def __rmul__(self, k: int) -> "RootVector":
        return RootVector(self.lattice, tuple(k * a for a in self.coords))

    def __getitem__(self, vertex: int) -> int:
        return self.coords[self.lattice.index(vertex)]

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_positive(self) -> bool:
        return not self.is_zero() and all(a >= 0 for a in self.coords)

    def is_negative(self) -> bool:
        return not self.is_zero() and all(a <= 0 for a in self.coords)

    def is_primitive(self) -> bool:
        from math import gcd
        g = 0
        for a in self.coords:
            g = gcd(g, a)
        return g == 1

    def to_json(self) -> dict:
        return {"lattice": list(self.lattice), "coords": list(self.coords)}

    def __str__(self) -> str:
        terms = []
        for v, a in zip(self.lattice, self.coords):
            if a:
                terms.append(("" if a == 1 else "-" if a == -1 else str(a)) + f"a{v}")
        return " + ".join(terms).replace("+ -", "- ") or "0"


def simple_root(lattice: Sequence[int], i: int) -> RootVector:
    lattice = tuple(lattice)
    if i not in lattice:
        raise LatticeError(f"vertex {i} not in lattice {lattice}")
    return RootVector(lattice, tuple(int(v == i) for v in lattice))


def delta(ctx: DynkinData) -> RootVector:
    D = ctx.ambient
    return RootVector(D.vertices, tuple(D.labels[v] for v in D.vertices))


def delta_restricted(ctx: DynkinData, marked: Iterable[int] | None = None) -> RootVector:
    """delta_J: the Kac labels on the unmarked vertices."""
    J = ctx.marked if marked is None else frozenset(marked)
    lat = tuple(v for v in ctx.ambient.vertices if v not in J)
    return RootVector(lat, tuple(ctx.labels[v] for v in lat))


# ---------------------------------------------------------------- Weyl group

@dataclass(frozen=True, eq=False)
class WeylElement:
    matrix: np.ndarray
    word: tuple[int, ...] | None = None

    def __post_init__(self):
        self.matrix.setflags(write=False)

    def __eq__(self, other) -> bool:
        return isinstance(other, WeylElement) and np.array_equal(self.matrix, other.matrix)

    def __hash__(self) -> int:
        return hash(self.matrix.tobytes())

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        word = None
        if self.word is not None and other.word is not None:
            word = self.word + other.word
        return WeylElement(_checked(self.matrix @ other.matrix), word)

    def apply(self, v: RootVector) -> RootVector:
        return RootVector(v.lattice, tuple(int(x) for x in self.matrix @ np.array(v.coords, dtype=np.int64)))

    def column(self, j: int) -> np.ndarray:
        """Image of the j-th simple root (by position)."""
        return self.matrix[:, j]


def identity(D: DynkinDiagram) -> WeylElement:
    return WeylElement(np.eye(len(D.vertices), dtype=np.int64), ())


@lru_cache(maxsize=None)
def _reflection(D: DynkinDiagram, i: int) -> np.ndarray:
    n = len(D.vertices)
    k = D.index[i]
    m = np.eye(n, dtype=np.int64)
    C = np.array(D.cartan_matrix, dtype=np.int64)
    # s_i(v) = v - (alpha_i, v) alpha_i
    m[k, :] -= C[k, :]
    m.setflags(write=False)
    return m


def reflection(D: DynkinDiagram, i: int) -> WeylElement:
    D._check(i)
    return WeylElement(_reflection(D, i).copy(), (i,))


def simple_reflection(ctx: DynkinData | DynkinDiagram, i: int, v: RootVector) -> RootVector:
    D = ctx.ambient if isinstance(ctx, DynkinData) else ctx
    if v.lattice != D.vertices:
        raise LatticeError("simple reflections act on the full root lattice")
    D._check(i)
    return RootVector(v.lattice, tuple(int(x) for x in _reflection(D, i) @ np.array(v.coords, dtype=np.int64)))


def word_matrix(D: DynkinDiagram, word: Iterable[int]) -> WeylElement:
    m = np.eye(len(D.vertices), dtype=np.int64)
    word = tuple(word)
    for i in word:
        m = _checked(m @ _reflection(D, i))
    return WeylElement(m, word)


def _is_pos(col: np.ndarray) -> bool:
    return bool((col >= 0).all())


@lru_cache(maxsize=None)
def _longest(D: DynkinDiagram, J: tuple[int, ...]) -> WeylElement:
    if D.affine and set(J) == set(D.vertices):
        raise LatticeError("the whole affine diagram has an infinite Weyl group")
    m = np.eye(len(D.vertices), dtype=np.int64)
    word: list[int] = []
    while True:
        # greedy ascent: right-multiply by the first s_j with w(alpha_j) > 0
        for j in J:
            if _is_pos(m[:, D.index[j]]):
                m = _checked(m @ _reflection(D, j))
                word.append(j)
                break
        else:
            return WeylElement(m, tuple(word))


def longest_element_word(ctx: DynkinData | DynkinDiagram, J: Iterable[int]) -> WeylElement:
    D = ctx.ambient if isinstance(ctx, DynkinData) else ctx
    J = tuple(sorted(set(J)))
    for j in J:
        D._check(j)
    return _longest(D, J)


@lru_cache(maxsize=None)
def subgraph_involution(D: DynkinDiagram, G: tuple[int, ...]) -> tuple[tuple[int, int], ...]:
    """Pairs (i, inv_G(i)) for i in G."""
    if D.affine and set(G) == set(D.vertices):
        return tuple((i, i) for i in G)
    w = _longest(D, tuple(sorted(G)))
    out = []
    for i in G:
        col = w.matrix[:, D.index[i]]
        hits = [j for j in G if col[D.index[j]] == -1 and np.count_nonzero(col) == 1]
        if len(hits) != 1:
            raise LatticeError("longest element did not send a simple root to a negative simple root")
        out.append((i, hits[0]))
    return tuple(out)


def positive_root_count(D: DynkinDiagram, J: Iterable[int]) -> int:
    """Number of positive roots of the finite subgraph on J, by orbit closure."""
    J = tuple(sorted(set(J)))
    roots = set()
    frontier = [tuple(int(v == j) for v in D.vertices) for j in J]
    roots.update(frontier)
    while frontier:
        nxt = []
        for r in frontier:
            for j in J:
                img = tuple(int(x) for x in _reflection(D, j) @ np.array(r, dtype=np.int64))
                if all(x >= 0 for x in img) and img not in roots:
                    roots.add(img)
                    nxt.append(img)
        frontier = nxt
    return len(roots)


# ---------------------------------------------------------------- real roots

def pairing(D: DynkinDiagram, u: Sequence[int], v: Sequence[int]) -> int:
    C = D.cartan_matrix
    return sum(u[a] * C[a][b] * v[b] for a in range(len(u)) for b in range(len(v)))


def root_level(ctx: DynkinData, coords: Sequence[int]) -> int:
    """Largest k with |alpha| - k*delta still a non-negative combination."""
    labels = [ctx.labels[v] for v in ctx.ambient.vertices]
    if all(a <= 0 for a in coords):
        coords = [-a for a in coords]
    return min(a // d for a, d in zip(coords, labels))


def enumerate_real_roots(ctx: DynkinData, level_bound: int) -> list[RootVector]:
    """All real roots of level at most ``level_bound``, by closure of the simple
    roots under simple reflections inside the level bound.  Sorted, positives first."""
    if level_bound < 0:
        raise LatticeError("level bound must be non-negative")
    D = ctx.ambient
    n = len(D.vertices)
    refl = [_reflection(D, v) for v in D.vertices]
    start = [tuple(int(k == j) for k in range(n)) for j in range(n)]
    found = set(start)
    frontier = list(start)
    while frontier:
        nxt = []
        for r in frontier:
            arr = np.array(r, dtype=np.int64)
            for s in refl:
                img = tuple(int(x) for x in s @ arr)
                if img in found or not all(x >= 0 for x in img):
                    continue
                if root_level(ctx, img) <= level_bound:
                    found.add(img)
                    nxt.append(img)
        frontier = nxt
    pos = sorted(found, key=lambda c: (sum(c), c))
    out = [RootVector(D.vertices, c) for c in pos]
    out += [RootVector(D.vertices, tuple(-x for x in c)) for c in pos]
    return out


def finite_roots(ctx: DynkinData) -> list[tuple[int, ...]]:
    """Positive roots of the finite diagram Delta, as full-lattice coordinates."""
    D = ctx.ambient
    fin = tuple(v for v in D.vertices if v != 0)
    roots = set()
    frontier = [tuple(int(v == j) for v in D.vertices) for j in fin]
    roots.update(frontier)
    while frontier:
        nxt = []
        for r in frontier:
            for j in fin:
                img = tuple(int(x) for x in _reflection(D, j) @ np.array(r, dtype=np.int64))
                if all(x >= 0 for x in img) and img not in roots:
                    roots.add(img)
                    nxt.append(img)
        frontier = nxt
    return sorted(roots, key=lambda c: (sum(c), c))


# ---------------------------------------------------------------- restriction

def restrict(v: RootVector, I: Iterable[int]) -> RootVector:
    I = frozenset(I)
    keep = [k for k, x in enumerate(v.lattice) if x not in I]
    if len(keep) < 2:
        raise LatticeError("restricted lattice needs at least two vertices")
    return RootVector(tuple(v.lattice[k] for k in keep), tuple(v.coords[k] for k in keep))


@dataclass(frozen=True)
class LinearMap:
    source: tuple[int, ...]
    target: tuple[int, ...]
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.entries) != len(self.target) or any(len(r) != len(self.source) for r in self.entries):
            raise LatticeError("matrix shape does not match index sets")

    @property
    def array(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.int64).reshape(len(self.target), len(self.source))

    def __call__(self, v: RootVector) -> RootVector:
        if v.lattice != self.source:
            raise LatticeError(f"map expects lattice {self.source}, got {v.lattice}")
        out = _checked(self.array @ np.array(v.coords, dtype=np.int64))
        return RootVector(self.target, tuple(int(x) for x in out))

    def __matmul__(self, other: "LinearMap") -> "LinearMap":
        if other.target != self.source:
            raise LatticeError("cannot compose maps over different lattices")
        m = _checked(self.array @ other.array)
        return LinearMap(other.source, self.target, tuple(tuple(int(x) for x in r) for r in m))

    def inverse(self) -> "LinearMap":
        inv = integer_inverse(self.array)
        return LinearMap(self.target, self.source, tuple(tuple(r) for r in inv))

    def is_identity(self) -> bool:
        return self.source == self.target and np.array_equal(self.array, np.eye(len(self.source), dtype=np.int64))

    def to_json(self) -> dict:
        return {"rows": list(self.target), "cols": list(self.source),
                "entries": [list(r) for r in self.entries]}


def rational_inverse(m) -> list[list[Fraction]]:
    from sympy import Matrix
    inv = Matrix(np.asarray(m).tolist()).inv()
    return [[Fraction(int(x.p), int(x.q)) for x in inv.row(r)] for r in range(inv.rows)]


def integer_inverse(m) -> list[list[int]]:
    inv = rational_inverse(m)
    if any(x.denominator != 1 for row in inv for x in row):
        raise LatticeError("matrix is not invertible over the integers")
    return [[int(x) for x in row] for row in inv]


def weyl_restricted_map(ctx: DynkinData, w: WeylElement, source_marked: Iterable[int]) -> LinearMap:
    """Matrix of w from h(ambient minus source_marked) to h(ambient minus J),
    valid when w maps the span of the source marked roots onto the span of J."""
    D = ctx.ambient
    src = tuple(v for v in D.vertices if v not in frozenset(source_marked))
    tgt = ctx.unmarked
    rows = [D.index[t] for t in tgt]
    m = w.matrix[np.ix_(rows, [D.index[s] for s in src])]
    return LinearMap(src, tgt, tuple(tuple(int(x) for x in r) for r in m))


def phi_map(ctx: DynkinData, i: int) -> LinearMap:
    """The wall-crossing isomorphism h(ambient - nu_i J) -> h(ambient - J),
    induced by w_J w_{J+i}."""
    from .mutation import mutate

    J = ctx.marked
    if i in J:
        raise LatticeError(f"vertex {i} is marked")
    D = ctx.ambient
    D._check(i)
    new = mutate(D, J, i)
    w = longest_element_word(D, J) * longest_element_word(D, J | {i})
    return weyl_restricted_map(ctx, w, new)


def delta_star(ctx: DynkinData, model_basis: Sequence[RootVector]) -> tuple[Fraction, ...]:
    """Dual vector with value 1 on delta_J and 0 on each element of the basis.

    Returned as the values on the simple roots of the restricted lattice."""
    lat = ctx.unmarked
    dJ = delta_restricted(ctx)
    rows = [dJ.coords] + [b.coords for b in model_basis]
    for b in model_basis:
        if b.lattice != lat:
            raise LatticeError("basis vectors must live in the restricted lattice")
    if len(rows) != len(lat):
        raise LatticeError("delta_J and the model basis must form a basis")
    from sympy import Matrix
    M = Matrix(rows)
    if M.det() == 0:
        raise LatticeError("degenerate basis")
    rhs = Matrix([1] + [0] * len(model_basis))
    sol = M.LUsolve(rhs)
    return tuple(Fraction(int(x.p), int(x.q)) for x in sol)


def evaluate(theta: Sequence[Fraction | int], v: RootVector) -> Fraction:
    return sum((Fraction(t) * c for t, c in zip(theta, v.coords)), Fraction(0))
