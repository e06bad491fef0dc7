"""Symbolic descriptors of the hearts attached to cones of the arrangement,
brick-label classes, and the action of line bundles on chambers."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Sequence

import numpy as np

from .arrangement import (ArrangementError, Chamber, ConeRef, _dot, chamber_along,
                          chambers_containing, compare, delta_vector, enumerate_box,
                          locate, principal_chamber, verify_fan, FanCheck)
from .dynkin import DynkinData
from .errors import NotAHeartCone
from .mutation import canonical, mutation_class
from .rootlat import (LatticeError, LinearMap, RootVector, delta_restricted, delta_star,
                      weyl_restricted_map)

_SUB = str.maketrans("0123456789-", "₀₁₂₃₄₅₆₇₈₉₋")

ALGEBRAIC = "Algebraic"
GEOMETRIC = "GeometricInterval"
SEMIGEOMETRIC = "SemiGeometric"


def _functors(symbol: str, path: Sequence[int]) -> str:
    return "".join(symbol + str(i).translate(_SUB) for i in path)


def model_name(path: Sequence[int]) -> str:
    """Birational model reached by a spherical path, e.g. (1, 2) -> "ν₂ν₁X"."""
    return _functors("ν", reversed(tuple(path))) + "X"


@dataclass(frozen=True)
class HeartDescriptor:
    variant: str
    path: tuple[int, ...]
    cone: ConeRef
    shift: int | None = None
    contracted: frozenset[int] | None = None
    components: tuple[tuple[int, ...], ...] = ()
    # which end of a numerical interval this describes, if any
    endpoint: str | None = None

    def at(self, endpoint: str) -> "HeartDescriptor":
        return HeartDescriptor(self.variant, self.path, self.cone, self.shift,
                               self.contracted, self.components, endpoint)

    def label(self) -> str:
        if self.variant == ALGEBRAIC:
            if self.shift == 0:
                return _functors("Ψ", self.path) + "H"
            return _functors("Φ", self.path) + "H[-1]"
        psi = _functors("Ψ", self.path)
        W = model_name(self.path)
        if self.variant == GEOMETRIC:
            ends = {"lower": f"{psi}anticoh({W})", "upper": f"{psi}coh({W})"}
            return ends.get(self.endpoint, f"[{ends['lower']}, {ends['upper']}]")
        I = "".join(str(i) for i in sorted(self.contracted))
        Y = f"{W}/{I}"
        ends = {"lower": f"{psi}antizeroper({Y})", "upper": f"{psi}zeroper({Y})"}
        return ends.get(self.endpoint, f"[{ends['lower']}, {ends['upper']}]")

    def key(self) -> tuple:
        return (self.variant, self.path, self.shift,
                None if self.contracted is None else tuple(sorted(self.contracted)))

    def to_json(self) -> dict:
        out = {"variant": self.variant, "path": list(self.path)}
        if self.shift is not None:
            out["shift"] = self.shift
        if self.contracted is not None:
            out["contracted"] = sorted(self.contracted)
            out["components"] = [list(c) for c in self.components]
        if self.endpoint is not None:
            out["endpoint"] = self.endpoint
        out["label"] = self.label()
        out["cone"] = self.cone.to_json()
        return out


def reduced_path(start: Chamber, target: Chamber) -> tuple[int, ...]:
    """Lexicographically smallest shortest wall-crossing path from start to
    target: always cross the smallest wall that separates from the target."""
    if start.ctx != target.ctx or start.sector != target.sector:
        raise ArrangementError("chambers live in different arrangements")
    p = target.interior_point
    cur = start
    steps: list[int] = []
    while cur != target:
        i = next(i for i, n in zip(cur.mutable, cur.normals.tolist()) if _dot(n, p) < 0)
        steps.append(i)
        cur = _cross(cur, i)
    return tuple(steps)


def _cross(c: Chamber, i: int) -> Chamber:
    from .arrangement import wall_cross
    return wall_cross(c, i)


def heart_of_chamber(sigma: Chamber) -> HeartDescriptor:
    if sigma.sector not in "+-":
        raise NotAHeartCone("algebraic hearts live in the + and - sectors")
    start = principal_chamber(sigma.ctx, sigma.sector)
    shift = 0 if sigma.sector == "+" else -1
    return HeartDescriptor(ALGEBRAIC, reduced_path(start, sigma), ConeRef(sigma), shift=shift)


def geometric_interval(sigma: Chamber) -> HeartDescriptor:
    if sigma.sector != "0":
        raise NotAHeartCone("geometric hearts live in the 0 sector")
    start = principal_chamber(sigma.ctx, "0")
    return HeartDescriptor(GEOMETRIC, reduced_path(start, sigma), ConeRef(sigma))


def same_side_chamber(cone: ConeRef) -> Chamber:
    """The unique chamber containing the cone that lies on the side of the
    principal sector-0 chamber for every hyperplane through the cone."""
    p = cone.relative_interior_point
    found = [c for c in chambers_containing(cone)
             if not any(_dot(r, p) == 0 for r in c.separating)]
    if len(found) != 1:
        raise ArrangementError(f"expected one same-side chamber, found {len(found)}")
    return found[0]


def semigeometric_of_cone(cone: ConeRef) -> HeartDescriptor:
    if cone.sector != "0" or cone.is_zero:
        raise NotAHeartCone("semi-geometric hearts need a non-zero cone in the 0 sector")
    if cone.dim == cone.chamber.dim:
        raise ArrangementError("the cone is maximal; use geometric_interval")
    tau = same_side_chamber(cone)
    p = cone.relative_interior_point
    I = frozenset(i for i, n in zip(tau.mutable, tau.normals.tolist()) if _dot(n, p) == 0)
    mu = reduced_path(principal_chamber(cone.ctx, "0"), tau)
    comps = tuple(cone.ctx.ambient.components(I))
    return HeartDescriptor(SEMIGEOMETRIC, mu, ConeRef(tau, I), contracted=I, components=comps)


def classify_cone(cone: ConeRef) -> HeartDescriptor:
    if cone.is_zero:
        raise NotAHeartCone("the zero cone is not the heart cone of any heart")
    full = cone.dim == cone.chamber.dim
    if cone.sector in "+-":
        if not full:
            raise NotAHeartCone("only full-dimensional cones off delta_J = 0 are heart cones")
        return heart_of_chamber(cone.chamber)
    if full:
        return geometric_interval(cone.chamber)
    return semigeometric_of_cone(cone)


def numerical_interval(ctx: DynkinData, theta: Sequence) -> tuple[HeartDescriptor, HeartDescriptor]:
    """Descriptors of the smallest and largest hearts whose cone contains theta."""
    cone = locate(ctx, theta)
    if cone.is_zero:
        raise NotAHeartCone("the zero functional does not determine an interval")
    if cone.sector in "+-":
        around = [c for c in chambers_containing(cone)]
        lo = min(around, key=lambda c: len(c.separating))
        hi = max(around, key=lambda c: len(c.separating))
        for c in around:
            assert compare(lo, c) in "<=" and compare(c, hi) in "<="
        # chamber order is reversed on the + side and preserved on the - side
        if cone.sector == "+":
            lo, hi = hi, lo
        return heart_of_chamber(lo), heart_of_chamber(hi)
    d = classify_cone(cone)
    return d.at("lower"), d.at("upper")


# ------------------------------------------------------------ brick labels

@dataclass(frozen=True)
class BrickClass:
    vector: RootVector
    kind: str  # "real" or "imaginary"


def _primitive(v: tuple[int, ...]) -> tuple[int, ...]:
    g = 0
    for x in v:
        g = gcd(g, x)
    return tuple(x // g for x in v)


def brick_label(lower: Chamber, upper: Chamber) -> BrickClass:
    """Class of the brick labelling a covering relation.

    Passing the same maximal sector-0 chamber twice asks for the label of a
    cover inside its geometric interval, which is delta_J."""
    ctx = lower.ctx
    if lower.sector == "0":
        if lower == upper:
            return BrickClass(delta_restricted(ctx), "imaginary")
        raise ArrangementError("sector-0 chambers are not linked by algebraic covers")
    if compare(lower, upper) != "<":
        raise ArrangementError("not a covering pair")
    diff = upper.separating - lower.separating
    if len(diff) != 1:
        raise ArrangementError("not a covering pair")
    (root,) = diff
    return BrickClass(RootVector(ctx.unmarked, _primitive(root)), "real")


# ------------------------------------------------------------ line bundles

@dataclass(frozen=True)
class DegreeTuple:
    model: tuple[int, ...]
    degrees: tuple[tuple[int, int], ...]

    @classmethod
    def of(cls, model: Iterable[int], degrees: Mapping[int, int]) -> "DegreeTuple":
        return cls(tuple(model), tuple(sorted(degrees.items())))

    def as_dict(self) -> dict[int, int]:
        return dict(self.degrees)

    def is_nef(self) -> bool:
        return all(d >= 0 for _, d in self.degrees)

    def __add__(self, other: "DegreeTuple") -> "DegreeTuple":
        if self.model != other.model:
            raise ValueError("degree tuples over different models")
        a, b = self.as_dict(), other.as_dict()
        return DegreeTuple.of(self.model, {k: a[k] + b[k] for k in a})

    def __neg__(self) -> "DegreeTuple":
        return DegreeTuple.of(self.model, {k: -v for k, v in self.degrees})

    def scaled(self, n: int) -> "DegreeTuple":
        return DegreeTuple.of(self.model, {k: n * v for k, v in self.degrees})


def model_map(ctx: DynkinData, model: Sequence[int]) -> tuple[frozenset[int], LinearMap]:
    """End set nu J of a spherical path and the isomorphism phi_nu from
    h(ambient - nu J) to h(ambient - J)."""
    if 0 in model:
        raise ArrangementError("model paths must avoid the extended vertex")
    end = chamber_along(ctx, "0", model)
    return end.face_set, weyl_restricted_map(ctx, end.weyl, end.face_set)


def model_basis(ctx: DynkinData, model: Sequence[int]) -> dict[int, RootVector]:
    """The classes beta_i = phi_nu(alpha_i) for i in Delta - nu J."""
    end, phi = model_map(ctx, model)
    out = {}
    for i in ctx.delta_part:
        if i not in end:
            e = RootVector(phi.source, tuple(int(v == i) for v in phi.source))
            out[i] = phi(e)
    return out


def _check_degrees(ctx: DynkinData, d: DegreeTuple) -> frozenset[int]:
    end, _ = model_map(ctx, d.model)
    want = [i for i in ctx.delta_part if i not in end]
    if [k for k, _ in d.degrees] != want:
        raise ValueError(f"degrees must be indexed by {want}")
    return end


def pic_matrix(ctx: DynkinData, d: DegreeTuple) -> LinearMap:
    """Matrix of the line bundle with degrees d acting on h(ambient - J)."""
    _check_degrees(ctx, d)
    _, phi = model_map(ctx, d.model)
    inv = phi.inverse()
    lat = ctx.unmarked
    dJ = delta_vector(ctx)
    labels = ctx.labels
    deg = d.as_dict()
    cols = []
    for v in lat:
        e = RootVector(lat, tuple(int(x == v) for x in lat))
        u = inv(e)
        c0 = u[0]
        shift = sum(deg[i] * (u[i] - c0 * labels[i]) for i in deg)
        cols.append(tuple(a + shift * b for a, b in zip(e.coords, dJ)))
    rows = tuple(tuple(cols[c][r] for c in range(len(lat))) for r in range(len(lat)))
    return LinearMap(lat, lat, rows)


def pic_action_on_class(ctx: DynkinData, d: DegreeTuple, v: RootVector) -> RootVector:
    return pic_matrix(ctx, d)(v)


def pic_translate_chamber(d: DegreeTuple, sigma: Chamber) -> Chamber:
    """Image of sigma under theta -> theta o L, located in the arrangement."""
    ctx = sigma.ctx
    L = pic_matrix(ctx, d).array
    Linv = pic_matrix(ctx, -d).array
    p = tuple(int(x) for x in L.T @ np.array(sigma.interior_point, dtype=np.int64))
    cone = locate(ctx, p)
    if not cone.is_maximal or cone.sector != sigma.sector:
        raise ArrangementError("translated chamber did not land on a chamber")
    found = cone.chamber
    # compare walls on the rays: in sector 0 normals only matter modulo delta
    R = found.rays
    moved = sorted(tuple(int(x) for x in R @ (Linv @ n)) for n in sigma.normals)
    if moved != sorted(tuple(int(x) for x in R @ n) for n in found.normals):
        raise ArrangementError("translated walls do not match the located chamber")
    start = principal_chamber(ctx, sigma.sector)
    return chamber_along(ctx, sigma.sector, reduced_path(start, found))


def translate_functional(ctx: DynkinData, d: DegreeTuple, theta: Sequence) -> tuple[Fraction, ...]:
    L = pic_matrix(ctx, d).array
    return tuple(sum(int(L[r][c]) * Fraction(theta[r]) for r in range(len(theta)))
                 for c in range(len(theta)))


def model_delta_star(ctx: DynkinData, model: Sequence[int]) -> tuple[Fraction, ...]:
    return delta_star(ctx, list(model_basis(ctx, model).values()))


# ------------------------------------------------------------ movable fan

@dataclass
class MovableFan:
    chambers: list[Chamber]
    models: list[tuple[int, ...]]
    end_sets: list[tuple[int, ...]]
    fan: FanCheck
    disjoint: bool


def movable_fan(ctx: DynkinData, cap: int | None = None) -> MovableFan:
    chambers = enumerate_box(ctx, "0", cap=cap)
    start = principal_chamber(ctx, "0")
    models = [reduced_path(start, c) for c in chambers]
    ends = [canonical(c.face_set) for c in chambers]
    spherical = set(mutation_class(ctx.ambient, ctx.marked, allowed=ctx.delta_part).vertices)
    if set(ends) != spherical:
        raise ArrangementError("chambers do not match the spherical mutation class")
    cones = {f for c in chambers for f in ConeRef(c).faces()}
    fan = verify_fan(cones)
    disjoint = True
    for c in chambers:
        p = c.interior_point
        if sum(1 for other in chambers if other.contains(p)) != 1:
            disjoint = False
    return MovableFan(chambers, models, ends, fan, disjoint)
