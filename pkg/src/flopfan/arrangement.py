"""Chambers and cones of the arrangement cut out by restricted root
hyperplanes in the dual of a restricted root lattice.

A functional theta is stored by its values on the simple roots of the
restricted lattice (ordered as ``ctx.unmarked``).  There are three sectors:
``+`` and ``-`` (theta(delta_J) positive or negative) and ``0`` (the finite
arrangement inside theta(delta_J) = 0).
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .dynkin import DynkinData, DynkinDiagram
from .errors import ResourceCapExceeded, default_cap
from .exactlp import feasible_point
from .mutation import canonical, mutate
from .rootlat import (LatticeError, RootVector, WeylElement, _checked, finite_roots,
                      identity, integer_inverse, longest_element_word)

SECTORS = ("+", "0", "-")


class ArrangementError(ValueError):
    pass


# ------------------------------------------------------------ context data

@lru_cache(maxsize=None)
def delta_vector(ctx: DynkinData) -> tuple[int, ...]:
    return tuple(ctx.labels[v] for v in ctx.unmarked)


@lru_cache(maxsize=None)
def finite_restricted_roots(ctx: DynkinData) -> tuple[tuple[int, ...], ...]:
    """Positive restricted roots coming from the finite root system; all of
    them have zero coefficient at the extended vertex."""
    D = ctx.ambient
    keep = [D.index[v] for v in ctx.unmarked]
    out = set()
    for r in finite_roots(ctx):
        img = tuple(r[k] for k in keep)
        if any(img):
            out.add(img)
    return tuple(sorted(out, key=lambda c: (sum(c), c)))


@lru_cache(maxsize=None)
def _crossing(D: DynkinDiagram, K: tuple[int, ...], i: int) -> tuple[np.ndarray, tuple[int, ...]]:
    w = longest_element_word(D, K) * longest_element_word(D, K + (i,))
    m = w.matrix.copy()
    m.setflags(write=False)
    return m, canonical(mutate(D, K, i))


def _dot(a: Sequence, b: Sequence):
    return sum(x * y for x, y in zip(a, b))


# ------------------------------------------------------------ chambers

@dataclass(frozen=True, eq=False)
class Chamber:
    """The chamber w C^sector_K restricted to the marked subspace of ctx.

    ``face_set`` is K; ``path`` records the wall crossings used to reach it
    from the principal chamber of its sector."""

    ctx: DynkinData
    sector: str
    weyl: WeylElement
    face_set: frozenset[int]
    path: tuple[int, ...] = ()

    @cached_property
    def mutable(self) -> tuple[int, ...]:
        verts = self.ctx.delta_part if self.sector == "0" else self.ctx.ambient.vertices
        return tuple(v for v in verts if v not in self.face_set)

    @cached_property
    def _roots(self) -> np.ndarray:
        D = self.ctx.ambient
        rows = [D.index[v] for v in self.ctx.unmarked]
        cols = [D.index[j] for j in self.mutable]
        return np.ascontiguousarray(self.weyl.matrix[np.ix_(rows, cols)].T)

    def root(self, i: int) -> RootVector:
        """The restricted root w(alpha_i) for a mutable index i."""
        k = self.mutable.index(i)
        return RootVector(self.ctx.unmarked, tuple(int(x) for x in self._roots[k]))

    @property
    def defining_roots(self) -> tuple[RootVector, ...]:
        return tuple(self.root(i) for i in self.mutable)

    @cached_property
    def normals(self) -> np.ndarray:
        """Inward normals, one row per mutable index."""
        return -self._roots if self.sector == "-" else self._roots

    def normal(self, i: int) -> tuple[int, ...]:
        return tuple(int(x) for x in self.normals[self.mutable.index(i)])

    @cached_property
    def key(self) -> tuple:
        return (self.sector, tuple(sorted(tuple(int(x) for x in r) for r in self.normals)))

    def __eq__(self, other) -> bool:
        return isinstance(other, Chamber) and self.ctx == other.ctx and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    @cached_property
    def rays(self) -> np.ndarray:
        """Ray generators; ray k pairs to 1 with normal k and to 0 with the rest."""
        M = self.normals
        if self.sector == "0":
            M = np.vstack([M, np.array(delta_vector(self.ctx), dtype=np.int64)])
        inv = _unimodular_inverse(M)
        R = inv.T
        if self.sector == "0":
            R = R[:-1]
        R = np.ascontiguousarray(R)
        R.setflags(write=False)
        return R

    @cached_property
    def interior_point(self) -> tuple[int, ...]:
        return tuple(int(x) for x in self.rays.sum(axis=0))

    @property
    def dim(self) -> int:
        return len(self.mutable)

    def contains(self, theta: Sequence) -> bool:
        if self.sector == "0" and _dot(delta_vector(self.ctx), theta) != 0:
            return False
        return all(_dot(n, theta) >= 0 for n in self.normals.tolist())

    @cached_property
    def separating(self) -> frozenset[tuple[int, ...]]:
        return _separating(self)

    def __repr__(self) -> str:
        return f"Chamber({self.sector}, path={self.path}, K={sorted(self.face_set)})"

    def to_json(self) -> dict:
        return {"sector": self.sector, "faceSet": sorted(self.face_set),
                "path": list(self.path),
                "definingRoots": [[int(x) for x in r] for r in self._roots]}


def _unimodular_inverse(M: np.ndarray) -> np.ndarray:
    guess = np.rint(np.linalg.inv(M.astype(float))).astype(np.int64)
    if np.array_equal(M @ guess, np.eye(len(M), dtype=np.int64)):
        return guess
    return np.array(integer_inverse(M), dtype=np.int64)


def principal_chamber(ctx: DynkinData, sector: str = "+") -> Chamber:
    if sector not in SECTORS:
        raise ArrangementError(f"unknown sector {sector!r}")
    return Chamber(ctx, sector, identity(ctx.ambient), ctx.marked, ())


def wall_cross(sigma: Chamber, i: int) -> Chamber:
    if i not in sigma.mutable:
        raise ArrangementError(f"index {i} is not mutable at {sigma!r}")
    D = sigma.ctx.ambient
    m, new = _crossing(D, tuple(sorted(sigma.face_set)), i)
    w = WeylElement(_checked(sigma.weyl.matrix @ m), None)
    return Chamber(sigma.ctx, sigma.sector, w, frozenset(new), sigma.path + (i,))


def chamber_along(ctx: DynkinData, sector: str, steps: Iterable[int],
                  start: Chamber | None = None) -> Chamber:
    sigma = principal_chamber(ctx, sector) if start is None else start
    for i in steps:
        sigma = wall_cross(sigma, i)
    return sigma


# ------------------------------------------------------------ order

def _separating(sigma: Chamber) -> frozenset[tuple[int, ...]]:
    ctx = sigma.ctx
    dv = delta_vector(ctx)
    p = sigma.interior_point
    out = set()
    if sigma.sector == "0":
        for g in finite_restricted_roots(ctx):
            if _dot(g, p) < 0:
                out.add(g)
        return frozenset(out)
    s = _dot(dv, p)
    if sigma.sector == "-":
        p = tuple(-x for x in p)
        s = -s
    assert s > 0
    for g in finite_restricted_roots(ctx):
        gp = _dot(g, p)
        # gamma + m delta_J (m >= 0) and -gamma + m delta_J (m >= 1)
        for m in range(0, (-gp - 1) // s + 1):
            out.add(tuple(a + m * d for a, d in zip(g, dv)))
        for m in range(1, (gp - 1) // s + 1):
            out.add(tuple(m * d - a for a, d in zip(g, dv)))
    return frozenset(out)


def separating_roots(sigma: Chamber) -> frozenset[RootVector]:
    """Positive restricted real roots whose hyperplane separates sigma from
    the principal chamber of its sector."""
    lat = sigma.ctx.unmarked
    return frozenset(RootVector(lat, r) for r in sigma.separating)


def compare(a: Chamber, b: Chamber) -> str:
    if a.ctx != b.ctx or a.sector != b.sector:
        raise ArrangementError("chambers live in different arrangements")
    sa, sb = a.separating, b.separating
    if sa == sb:
        return "="
    if sa < sb:
        return "<"
    if sb < sa:
        return ">"
    return "incomparable"


def leq(a: Chamber, b: Chamber) -> bool:
    return compare(a, b) in ("<", "=")


def crossed_root(sigma: Chamber, i: int) -> tuple[int, ...]:
    """Positive root of the hyperplane crossed by the wall i of sigma."""
    n = sigma.normal(i)
    return n if any(x > 0 for x in n) else tuple(-x for x in n)


@dataclass
class AtomicReport:
    atomic: bool
    reduced: bool
    minimal: bool
    length_matches: bool
    monotone: bool
    comparable: bool
    crossed: list[tuple[int, ...]] = field(default_factory=list)

    def agree(self) -> bool:
        vals = {self.reduced, self.minimal, self.length_matches}
        if self.comparable:
            vals.add(self.monotone)
        return len(vals) == 1


def _gallery_distance(a: Chamber, b: Chamber, limit: int) -> int | None:
    """Breadth-first gallery distance, or None if larger than limit."""
    if a == b:
        return 0
    seen = {a}
    frontier = [a]
    for depth in range(1, limit + 1):
        nxt = []
        for c in frontier:
            for i in c.mutable:
                d = wall_cross(c, i)
                if d == b:
                    return depth
                if d not in seen:
                    seen.add(d)
                    nxt.append(d)
        frontier = nxt
    return None


def is_atomic(sigma: Chamber, steps: Sequence[int]) -> tuple[bool, AtomicReport]:
    """Whether the wall-crossing path from sigma crosses every hyperplane at
    most once, with the equivalent characterisations computed independently."""
    chain = [sigma]
    crossed = []
    for i in steps:
        crossed.append(crossed_root(chain[-1], i))
        chain.append(wall_cross(chain[-1], i))
    end = chain[-1]
    reduced = len(set(crossed)) == len(crossed)
    n_sep = len(sigma.separating ^ end.separating)
    length_matches = len(steps) == n_sep
    dist = _gallery_distance(sigma, end, len(steps))
    minimal = dist == len(steps)
    rel = compare(sigma, end)
    comparable = rel != "incomparable"
    up = all(compare(chain[k], chain[k + 1]) == "<" for k in range(len(steps)))
    down = all(compare(chain[k], chain[k + 1]) == ">" for k in range(len(steps)))
    monotone = up or down
    report = AtomicReport(reduced, reduced, minimal, length_matches, monotone, comparable, crossed)
    return reduced, report


def interval(lo: Chamber, hi: Chamber, cap: int | None = None) -> list[Chamber]:
    """All chambers tau with lo <= tau <= hi."""
    if not leq(lo, hi):
        return []
    cap = default_cap() if cap is None else cap
    out = [lo]
    seen = {lo}
    queue = deque([lo])
    while queue:
        c = queue.popleft()
        for i in c.mutable:
            d = wall_cross(c, i)
            if d in seen:
                continue
            if lo.separating <= d.separating <= hi.separating:
                seen.add(d)
                out.append(d)
                queue.append(d)
                if len(out) > cap:
                    raise ResourceCapExceeded(f"interval exceeds {cap} chambers")
    return out


def lower_polytope(sigma: Chamber) -> tuple[RootVector, ...]:
    """Irredundant half-spaces {alpha >= 0} cutting out the union of all
    chambers below sigma."""
    if sigma.sector != "+":
        raise ArrangementError("lower polytopes are defined in the + sector")
    below = interval(principal_chamber(sigma.ctx, "+"), sigma)
    inside = set(below)
    walls = set()
    for c in below:
        for i in c.mutable:
            if wall_cross(c, i) not in inside:
                walls.add(c.normal(i))
    lat = sigma.ctx.unmarked
    return tuple(RootVector(lat, w) for w in sorted(walls))


def hasse_edges(chambers: Sequence[Chamber]) -> list[tuple[int, int, int]]:
    """Covering relations among the given chambers realised by a single wall
    crossing that adds one separating root: (lower index, label, upper index)."""
    pos = {c: k for k, c in enumerate(chambers)}
    out = []
    for k, c in enumerate(chambers):
        for i in c.mutable:
            d = wall_cross(c, i)
            j = pos.get(d)
            if j is not None and len(d.separating) == len(c.separating) + 1:
                out.append((k, i, j))
    return out


# ------------------------------------------------------------ boxes

def in_box(sigma: Chamber, N: int) -> bool:
    """Whether sigma lies in {-N delta_J <= alpha_i <= N delta_J : i in Delta - J}."""
    if sigma.sector == "0":
        return True
    ctx = sigma.ctx
    dv = delta_vector(ctx)
    idx = [k for k, v in enumerate(ctx.unmarked) if v != 0]
    for r in sigma.rays.tolist():
        s = abs(_dot(dv, r))
        if any(abs(r[k]) > N * s for k in idx):
            return False
    return True


def enumerate_box(ctx: DynkinData, sector: str, N: int | None = None,
                  cap: int | None = None) -> list[Chamber]:
    """Chambers of a sector inside box N (every chamber for sector 0), in
    breadth-first order from the principal chamber, labels ascending."""
    if sector not in SECTORS:
        raise ArrangementError(f"unknown sector {sector!r}")
    if sector != "0" and (N is None or N < 1):
        raise ArrangementError("box level must be at least 1")
    cap = default_cap() if cap is None else cap
    start = principal_chamber(ctx, sector)
    out = [start]
    seen = {start}
    queue = deque([start])
    while queue:
        c = queue.popleft()
        for i in c.mutable:
            d = wall_cross(c, i)
            if d in seen or not in_box(d, N):
                continue
            seen.add(d)
            out.append(d)
            queue.append(d)
            if len(out) > cap:
                raise ResourceCapExceeded(f"more than {cap} chambers")
    return out


# ------------------------------------------------------------ cones

@dataclass(frozen=True)
class Cone:
    """A simplicial cone given by primitive integer ray generators."""

    sector: str
    rays: tuple[tuple[int, ...], ...]
    walls: tuple[tuple[int, ...], ...] = ()
    # a functional strictly positive on the sector minus the origin, if any
    scale: tuple[int, ...] = ()

    @property
    def key(self) -> tuple:
        return (self.sector, frozenset(self.rays))


@dataclass(frozen=True, eq=False)
class ConeRef:
    chamber: Chamber
    extra_zeros: frozenset[int] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "extra_zeros", frozenset(self.extra_zeros))
        bad = self.extra_zeros - set(self.chamber.mutable)
        if bad:
            raise ArrangementError(f"indices {sorted(bad)} are not walls of the chamber")

    @property
    def ctx(self) -> DynkinData:
        return self.chamber.ctx

    @cached_property
    def rays(self) -> tuple[tuple[int, ...], ...]:
        R = self.chamber.rays.tolist()
        return tuple(tuple(R[k]) for k, i in enumerate(self.chamber.mutable)
                     if i not in self.extra_zeros)

    @property
    def dim(self) -> int:
        return len(self.rays)

    @property
    def is_zero(self) -> bool:
        return self.dim == 0

    @property
    def is_maximal(self) -> bool:
        return not self.extra_zeros

    @property
    def sector(self) -> str:
        return "0" if self.is_zero else self.chamber.sector

    @cached_property
    def key(self) -> tuple:
        return (self.sector, frozenset(self.rays))

    def __eq__(self, other) -> bool:
        return isinstance(other, ConeRef) and self.ctx == other.ctx and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    @property
    def zero_normals(self) -> list[tuple[int, ...]]:
        return [self.chamber.normal(i) for i in sorted(self.extra_zeros)]

    def contains(self, theta: Sequence) -> bool:
        return self.chamber.contains(theta) and all(_dot(n, theta) == 0 for n in self.zero_normals)

    @cached_property
    def relative_interior_point(self) -> tuple[int, ...]:
        d = len(self.ctx.unmarked)
        return tuple(sum(r[k] for r in self.rays) for k in range(d))

    def faces(self) -> list["ConeRef"]:
        free = [i for i in self.chamber.mutable if i not in self.extra_zeros]
        out = []
        for k in range(len(free) + 1):
            for extra in combinations(free, k):
                out.append(ConeRef(self.chamber, self.extra_zeros | set(extra)))
        return out

    def as_cone(self) -> Cone:
        walls = tuple(tuple(int(x) for x in n) for n in self.chamber.normals)
        dv = delta_vector(self.ctx)
        scale = {"+": dv, "-": tuple(-x for x in dv)}.get(self.sector, ())
        return Cone(self.sector, tuple(sorted(self.rays)), walls, scale)

    def __repr__(self) -> str:
        return f"ConeRef({self.chamber!r}, zeros={sorted(self.extra_zeros)})"

    def to_json(self) -> dict:
        out = self.chamber.to_json()
        out["extraZeros"] = sorted(self.extra_zeros)
        out["rays"] = [list(r) for r in sorted(self.rays)]
        return out


def zero_cone(ctx: DynkinData) -> ConeRef:
    c = principal_chamber(ctx, "0")
    return ConeRef(c, frozenset(c.mutable))


def _as_fractions(ctx: DynkinData, theta: Sequence) -> tuple[Fraction, ...]:
    theta = tuple(Fraction(x) for x in theta)
    if len(theta) != len(ctx.unmarked):
        raise ArrangementError(f"functional needs {len(ctx.unmarked)} coordinates")
    return theta


def locate(ctx: DynkinData, theta: Sequence, max_steps: int | None = None) -> ConeRef:
    """The cone of the arrangement containing theta in its relative interior."""
    theta = _as_fractions(ctx, theta)
    if not any(theta):
        return zero_cone(ctx)
    s = _dot(delta_vector(ctx), theta)
    sector = "+" if s > 0 else "-" if s < 0 else "0"
    sigma = principal_chamber(ctx, sector)
    limit = default_cap() if max_steps is None else max_steps
    for _ in range(limit):
        vals = [(_dot(n, theta), i) for n, i in zip(sigma.normals.tolist(), sigma.mutable)]
        neg = [i for v, i in vals if v < 0]
        if not neg:
            return ConeRef(sigma, frozenset(i for v, i in vals if v == 0))
        sigma = wall_cross(sigma, neg[0])
    raise ResourceCapExceeded("point location did not terminate within the step limit")


def chambers_containing(cone: ConeRef, cap: int = 10000) -> list[Chamber]:
    """Every chamber having the cone as a face, by crossing walls through it."""
    p = cone.relative_interior_point
    start = cone.chamber
    out = [start]
    seen = {start}
    queue = deque([start])
    while queue:
        c = queue.popleft()
        for i, n in zip(c.mutable, c.normals.tolist()):
            if _dot(n, p) != 0:
                continue
            d = wall_cross(c, i)
            if d not in seen:
                seen.add(d)
                out.append(d)
                queue.append(d)
                if len(out) > cap:
                    raise ResourceCapExceeded("too many chambers around a cone")
    return out


# ------------------------------------------------------------ fan check

@dataclass
class FanCheck:
    ok: bool
    witness: str | None = None
    cones: int = 0
    pairs_checked: int = 0
    lp_calls: int = 0

    def __bool__(self) -> bool:
        return self.ok


def _to_cone(c) -> Cone:
    return c.as_cone() if isinstance(c, ConeRef) else c


def _lp_violation(P: Cone, Q: Cone, only_p: list[tuple[int, ...]]):
    """A point of P meet Q outside the cone on their common rays, or None."""
    nP, nQ = len(P.rays), len(Q.rays)
    d = len(P.rays[0])
    A_eq = []
    for k in range(d):
        A_eq.append([r[k] for r in P.rays] + [-r[k] for r in Q.rays])
    only = set(only_p)
    A_eq.append([1 if r in only else 0 for r in P.rays] + [0] * nQ)
    b_eq = [0] * d + [1]
    sol = feasible_point(A_eq, b_eq)
    if sol is None:
        return None
    lam = sol[:nP]
    return tuple(sum(l * r[k] for l, r in zip(lam, P.rays)) for k in range(d))


def verify_fan(cones: Iterable) -> FanCheck:
    """Exact check that a collection of simplicial cones is a fan: closed under
    faces, and any two meet in a common face.

    For a face-closed collection of simplicial cones it is enough to test pairs
    of maximal cones.  A pair is certified by a functional h (a sum of wall
    normals from the collection) with h >= 0 on one cone, h <= 0 on the other,
    and h vanishing exactly on their common rays; pairs that are not certified
    go to an exact rational LP that either finds a bad point or clears them."""
    uniq: dict[tuple, Cone] = {}
    for c in cones:
        c = _to_cone(c)
        uniq.setdefault(c.key, c)
    cl = list(uniq.values())
    result = FanCheck(True, cones=len(cl))
    if not cl:
        return result
    dims = {len(r) for c in cl for r in c.rays}
    if len(dims) > 1:
        return FanCheck(False, "cones live in different spaces", len(cl))

    not_maximal = set()
    for c in cl:
        if c.rays and np.linalg.matrix_rank(np.array(c.rays, dtype=float)) != len(c.rays):
            return FanCheck(False, f"cone {c.rays} is not simplicial", len(cl))
        if c.scale and any(_dot(c.scale, r) <= 0 for r in c.rays):
            return FanCheck(False, f"cone {sorted(c.rays)} leaves the {c.sector} sector", len(cl))
        for k in range(len(c.rays)):
            for sub in combinations(c.rays, k):
                fkey = ("0" if not sub else c.sector, frozenset(sub))
                if fkey not in uniq:
                    return FanCheck(False, f"face {sorted(sub)} of {sorted(c.rays)} is missing", len(cl))
                not_maximal.add(fkey)

    groups: dict[str, list[Cone]] = {}
    for c in cl:
        if c.key not in not_maximal and c.rays:
            # cones with a positive scale functional in different sectors
            # meet only at the origin
            groups.setdefault(c.sector if c.scale else "", []).append(c)
    for _, group in sorted(groups.items()):
        bad = _check_group(group, result)
        if bad is not None:
            result.ok = False
            result.witness = bad
            return result
    return result


def _check_group(group: list[Cone], result: FanCheck) -> str | None:
    ray_list = sorted({r for c in group for r in c.rays})
    ray_ix = {r: k for k, r in enumerate(ray_list)}
    pool = sorted({w for c in group for w in c.walls})
    n = len(group)
    if pool:
        S = np.sign(np.array(pool, dtype=np.int64) @ np.array(ray_list, dtype=np.int64).T)
    else:
        S = np.zeros((0, len(ray_list)), dtype=np.int64)
    spos = (S > 0).astype(np.float32)
    sneg = (S < 0).astype(np.float32)
    member = np.zeros((n, len(ray_list)), dtype=bool)
    for a, c in enumerate(group):
        member[a, [ray_ix[r] for r in c.rays]] = True
    # pos_ok[a, k]: wall k is >= 0 on every ray of cone a
    pos_ok = np.ones((n, len(pool)), dtype=bool)
    neg_ok = np.ones((n, len(pool)), dtype=bool)
    for a, c in enumerate(group):
        sub = S[:, [ray_ix[r] for r in c.rays]]
        pos_ok[a] = (sub >= 0).all(axis=1)
        neg_ok[a] = (sub <= 0).all(axis=1)
    pos_f = pos_ok.astype(np.float32)
    neg_f = neg_ok.astype(np.float32)

    # certified[a, b]: every ray of a outside b is strictly on a's side of
    # some wall that weakly separates a from b
    certified = np.ones((n, n), dtype=bool)
    for a, c in enumerate(group):
        ix = [ray_ix[r] for r in c.rays]
        cand = neg_f * pos_f[a]          # walls >= 0 on a and <= 0 on b
        cand2 = pos_f * neg_f[a]         # walls <= 0 on a and >= 0 on b
        cover = (cand @ spos[:, ix] + cand2 @ sneg[:, ix]) > 0
        certified[a] = (cover | member[:, ix]).all(axis=1)
    ok = certified & certified.T
    np.fill_diagonal(ok, True)
    result.pairs_checked += n * (n - 1) // 2
    for a, b in zip(*np.nonzero(~ok)):
        if a >= b:
            continue
        P, Q = group[a], group[b]
        common = set(P.rays) & set(Q.rays)
        result.lp_calls += 1
        x = _lp_violation(P, Q, [r for r in P.rays if r not in common])
        if x is None:
            x = _lp_violation(Q, P, [r for r in Q.rays if r not in common])
        if x is not None:
            return (f"cones {sorted(P.rays)} and {sorted(Q.rays)} meet at "
                    f"{tuple(str(v) for v in x)} outside a common face")
    return None


