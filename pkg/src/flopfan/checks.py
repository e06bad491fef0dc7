"""Invariant suites run by ``flopfan check``."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from math import gcd

import numpy as np

from . import arrangement as arr
from .dynkin import DynkinData
from .errors import NotAHeartCone
from .hearts import DegreeTuple, brick_label, classify_cone, pic_matrix, pic_translate_chamber
from .mutation import iota, mutate, mutation_class
from .rootlat import delta_restricted, enumerate_real_roots, phi_map


def _direction(root: tuple[int, ...]) -> tuple[int, ...]:
    g = gcd(*root)
    return tuple(x // g for x in root)


@dataclass
class Report:
    results: dict[str, dict] = field(default_factory=dict)

    def record(self, name: str, ok: bool, count: int = 0, detail: str | None = None):
        entry = self.results.setdefault(name, {"ok": True, "count": 0})
        entry["ok"] = entry["ok"] and bool(ok)
        entry["count"] += count
        if detail and not ok:
            entry.setdefault("detail", detail)

    @property
    def ok(self) -> bool:
        return all(r["ok"] for r in self.results.values())

    def failed(self) -> list[str]:
        return [k for k, r in self.results.items() if not r["ok"]]


def run_checks(ctx: DynkinData, box: int = 2, fault: bool = False) -> Report:
    rep = Report()
    D = ctx.ambient
    C = np.array(D.cartan_matrix, dtype=np.int64)
    if fault:
        C = C.copy()
        C[0, 1] = -C[0, 1]
    delta = np.array([D.labels[v] for v in D.vertices], dtype=np.int64)
    rep.record("cartan_symmetric", np.array_equal(C, C.T), 1)
    rep.record("cartan_kills_delta", not np.any(C @ delta), 1)

    n = len(D.vertices)
    for i in D.vertices:
        s = np.eye(n, dtype=np.int64)
        s[D.index[i], :] -= C[D.index[i], :]
        rep.record("reflection_involutive", np.array_equal(s @ s, np.eye(n, dtype=np.int64)), 1)

    roots = enumerate_real_roots(ctx, 1)
    for r in roots:
        v = np.array(r.coords)
        rep.record("real_roots_norm_two", int(v @ C @ v) == 2, 1)

    Q = mutation_class(D, ctx.marked)
    for J in Q.vertices:
        for i in D.vertices:
            if i in J:
                continue
            new = mutate(D, J, i)
            rep.record("mutation_involutive", mutate(D, new, iota(D, J, i)) == frozenset(J), 1)
            rep.record("mutation_keeps_size", len(new) == len(J), 1)

    lat = ctx.unmarked
    dJ = delta_restricted(ctx)
    for i in lat:
        phi = phi_map(ctx, i)
        back = phi_map(ctx.with_marked(mutate(D, ctx.marked, i)), iota(D, ctx.marked, i))
        rep.record("phi_inverse_pair", (phi @ back).is_identity(), 1)
        src = delta_restricted(ctx, mutate(D, ctx.marked, i))
        rep.record("phi_fixes_delta", phi(src) == dJ, 1)

    for sector in "+-":
        chambers = arr.enumerate_box(ctx, sector, box)
        seen = set(chambers)
        for c in chambers:
            for i in c.mutable:
                d = arr.wall_cross(c, i)
                flipped = {_direction(r) for r in c.separating ^ d.separating}
                rep.record("one_separator_per_wall", len(flipped) == 1, 1)
                back = arr.wall_cross(d, iota(D, c.face_set, i))
                rep.record("wall_cross_returns", back == c, 1)
        cones = {f for c in chambers for f in arr.ConeRef(c).faces()}
        fan = arr.verify_fan(cones)
        rep.record("fan_axioms", fan.ok, len(cones), fan.witness)
        for k, i, j in arr.hasse_edges(chambers):
            b = brick_label(chambers[k], chambers[j])
            rep.record("brick_labels_primitive", b.vector.is_primitive() and b.vector.is_positive(), 1)
        for cone in cones:
            if cone.is_zero:
                continue
            try:
                classify_cone(cone)
                rep.record("classification_total", cone.is_maximal, 1)
            except NotAHeartCone:
                rep.record("classification_total", not cone.is_maximal, 1)

    zero = arr.enumerate_box(ctx, "0")
    cones = {f for c in zero for f in arr.ConeRef(c).faces()}
    fan = arr.verify_fan(cones)
    rep.record("fan_axioms", fan.ok, len(cones), fan.witness)
    for cone in cones:
        if not cone.is_zero:
            rep.record("classification_total", classify_cone(cone) is not None, 1)

    plus = arr.principal_chamber(ctx, "+")
    free = [i for i in ctx.delta_part if i not in ctx.marked]
    for degs in product(range(2), repeat=len(free)):
        d = DegreeTuple.of((), dict(zip(free, degs)))
        L = pic_matrix(ctx, d)
        rep.record("pic_fixes_delta", L(dJ) == dJ, 1)
        t = pic_translate_chamber(d, plus)
        rep.record("pic_maps_chambers", t.sector == "+", 1)
    return rep
