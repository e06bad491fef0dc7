from fractions import Fraction
from itertools import product
from math import gcd

import pytest
from hypothesis import given, strategies as st

from flopfan import arrangement as arr
from flopfan.arrangement import ConeRef, chamber_along, enumerate_box, principal_chamber, wall_cross
from flopfan.dynkin import make_context
from flopfan.errors import NotAHeartCone
from flopfan.hearts import (ALGEBRAIC, GEOMETRIC, SEMIGEOMETRIC, DegreeTuple, brick_label,
                            classify_cone, heart_of_chamber, model_basis, model_delta_star,
                            model_name, movable_fan, numerical_interval, pic_matrix,
                            pic_translate_chamber, reduced_path, translate_functional)
from flopfan.mutation import mutation_class
from flopfan.rootlat import RootVector, delta_restricted

from oracles import finite_roots_by_orbit, restricted_roots_member

A1 = make_context("A1~")
A2 = make_context("A2~")


# ---------------------------------------------------------------- algebraic labels

def test_a1_ladder_labels():
    labels = [heart_of_chamber(chamber_along(A1, "+", (0, 1, 0)[:k])).label() for k in range(4)]
    assert labels == ["H", "Ψ₀H", "Ψ₀Ψ₁H", "Ψ₀Ψ₁Ψ₀H"]
    labels = [heart_of_chamber(chamber_along(A1, "+", (1, 0, 1)[:k])).label() for k in range(4)]
    assert labels == ["H", "Ψ₁H", "Ψ₁Ψ₀H", "Ψ₁Ψ₀Ψ₁H"]


def test_a1_figure_label_sets():
    plus = {heart_of_chamber(c).label() for c in enumerate_box(A1, "+", 2)}
    assert plus >= {"H", "Ψ₀H", "Ψ₁H", "Ψ₁Ψ₀H"}
    minus = {heart_of_chamber(c).label() for c in enumerate_box(A1, "-", 4)}
    assert minus >= {"H[-1]", "Φ₀H[-1]", "Φ₁H[-1]", "Φ₁Φ₀H[-1]", "Φ₀Φ₁H[-1]",
                     "Φ₁Φ₀Φ₁H[-1]", "Φ₀Φ₁Φ₀H[-1]"}


@pytest.mark.parametrize("name,marked", [("A2~", ()), ("D4~", (1,)), ("E7~", (2, 3, 5, 6, 7))])
def test_algebraic_descriptors_are_distinct(name, marked):
    ctx = make_context(name, marked)
    for sector in "+-":
        chambers = enumerate_box(ctx, sector, 1)
        keys = {heart_of_chamber(c).key() for c in chambers}
        assert len(keys) == len(chambers)


def test_reduced_path_is_shortlex_minimal():
    """Brute force: the stored path is the lexicographically least among all
    shortest wall-crossing words reaching the chamber."""
    plus = principal_chamber(A2, "+")
    best = {}
    for n in range(5):
        for word in product((0, 1, 2), repeat=n):
            c = chamber_along(A2, "+", word)
            best.setdefault(c, word)
    for c, word in best.items():
        assert reduced_path(plus, c) == word


# ---------------------------------------------------------------- classification

def test_classification_is_total_on_a2_box():
    cones = {f for s in "+-" for c in enumerate_box(A2, s, 2) for f in ConeRef(c).faces()}
    cones |= {f for c in enumerate_box(A2, "0") for f in ConeRef(c).faces()}
    variants = {}
    for cone in cones:
        if cone.is_zero:
            with pytest.raises(NotAHeartCone):
                classify_cone(cone)
            continue
        if cone.sector in "+-" and not cone.is_maximal:
            with pytest.raises(NotAHeartCone):
                classify_cone(cone)
            continue
        d = classify_cone(cone)
        variants.setdefault(d.variant, 0)
        variants[d.variant] += 1
        expect = ALGEBRAIC if cone.sector in "+-" else GEOMETRIC if cone.is_maximal else SEMIGEOMETRIC
        assert d.variant == expect
    assert set(variants) == {ALGEBRAIC, GEOMETRIC, SEMIGEOMETRIC}


def test_a2_semigeometric_ray():
    c0 = principal_chamber(A2, "0")
    d = classify_cone(ConeRef(c0, {1}))
    assert d.variant == SEMIGEOMETRIC
    assert d.path == () and d.contracted == {1}
    assert d.label() == "[antizeroper(X/1), zeroper(X/1)]"


def test_zero_cone_rejected():
    with pytest.raises(NotAHeartCone):
        classify_cone(arr.zero_cone(A2))
    with pytest.raises(NotAHeartCone):
        numerical_interval(A2, (0, 0, 0))


def test_geometric_labels():
    c = chamber_along(A2, "0", (1, 2))
    d = classify_cone(ConeRef(c))
    assert d.label() == "[Ψ₁Ψ₂anticoh(ν₂ν₁X), Ψ₁Ψ₂coh(ν₂ν₁X)]"
    assert model_name((1, 2)) == "ν₂ν₁X"


def test_numerical_interval_on_a_wall():
    # the wall between C+ and nu_0 C+ in A1~
    lo, hi = numerical_interval(A1, (0, 1))
    assert {lo.label(), hi.label()} == {"H", "Ψ₀H"}
    # the upper end of the interval is the larger heart, i.e. the smaller chamber
    assert hi.label() == "H"
    lo, hi = numerical_interval(A1, (-1, 1))
    assert lo.label() == "anticoh(X)" and hi.label() == "coh(X)"


def test_same_side_chamber_is_unique_on_d4():
    ctx = make_context("D4~", (1,))
    for c in enumerate_box(ctx, "0"):
        for f in ConeRef(c).faces():
            if not f.is_zero and not f.is_maximal:
                d = classify_cone(f)
                assert d.variant == SEMIGEOMETRIC
                assert d.contracted and d.cone.contains(f.relative_interior_point)


# ---------------------------------------------------------------- brick labels

def test_a1_brick_labels_of_the_covers_of_c_plus():
    plus = principal_chamber(A1, "+")
    got = {brick_label(plus, wall_cross(plus, i)).vector.coords for i in (0, 1)}
    assert got == {(1, 0), (0, 1)}


@pytest.mark.parametrize("name,marked,N", [("A2~", (), 3), ("D4~", (1,), 1), ("E7~", (2, 3, 5, 6, 7), 2)])
def test_brick_labels_are_primitive_positive_roots(name, marked, N):
    ctx = make_context(name, marked)
    fin = finite_roots_by_orbit(ctx.ambient)
    for sector in "+-":
        chambers = enumerate_box(ctx, sector, N)
        for k, _, j in arr.hasse_edges(chambers):
            b = brick_label(chambers[k], chambers[j])
            v = b.vector.coords
            assert b.kind == "real"
            assert all(x >= 0 for x in v) and gcd(*v) == 1
            assert restricted_roots_member(ctx.ambient, ctx.marked, v, fin)


def test_geometric_cover_label_is_delta():
    c = principal_chamber(A2, "0")
    b = brick_label(c, c)
    assert b.kind == "imaginary" and b.vector == delta_restricted(A2)


# ---------------------------------------------------------------- line bundles

def degree_tuples(ctx, model, top):
    keys = sorted(model_basis(ctx, model))
    for degs in product(range(top + 1), repeat=len(keys)):
        yield degs, DegreeTuple.of(model, dict(zip(keys, degs)))


MODELS = {"A1~": [(), (1,)], "A2~": [(), (1,), (2,), (1, 2), (2, 1), (1, 2, 1)]}


@pytest.mark.parametrize("name", ["A1~", "A2~"])
def test_movable_fan(name):
    ctx = make_context(name)
    mf = movable_fan(ctx)
    assert sorted(mf.models, key=lambda m: (len(m), m)) == MODELS[name]
    assert mf.fan.ok and mf.disjoint
    assert all(len(c.mutable) == len(ctx.delta_part) - len(ctx.marked) for c in mf.chambers)


@pytest.mark.parametrize("name", ["A1~", "A2~"])
def test_pic_group_law_and_delta(name):
    ctx = make_context(name)
    dJ = delta_restricted(ctx)
    for model in MODELS[name]:
        tuples = list(degree_tuples(ctx, model, 2))
        for _, d in tuples:
            L = pic_matrix(ctx, d)
            assert L(dJ) == dJ
            for _, e in tuples:
                assert (L @ pic_matrix(ctx, e)).entries == pic_matrix(ctx, d + e).entries
            assert (L @ pic_matrix(ctx, -d)).is_identity()


def test_pic_on_a1_example():
    d = DegreeTuple.of((), {1: 1})
    t = pic_translate_chamber(d, principal_chamber(A1, "+"))
    assert t == wall_cross(principal_chamber(A1, "+"), 0)
    assert pic_translate_chamber(DegreeTuple.of((), {1: 0}), t) == t


def _positive_mod_delta(v, dv):
    return v if all(x >= 0 for x in v) else tuple(a + b for a, b in zip(v, dv))


def _direction(v):
    g = gcd(*v)
    v = tuple(x // g for x in v)
    return v if next(x for x in v if x) > 0 else tuple(-x for x in v)


@pytest.mark.parametrize("name,marked", [("A1~", ()), ("A2~", ()), ("A3~", (1,))])
def test_translate_crosses_the_expected_twisted_hyperplanes(name, marked):
    """C+ and L.C+ are separated by {beta - n delta = 0}, beta the positive
    representative of beta_i modulo delta_J, exactly when 0 < n <= d_i."""
    ctx = make_context(name, marked)
    dv = arr.delta_vector(ctx)
    plus = principal_chamber(ctx, "+")
    for model in movable_fan(ctx).models:
        basis = model_basis(ctx, model)
        for degs, d in degree_tuples(ctx, model, 2):
            got = {_direction(r) for r in pic_translate_chamber(d, plus).separating}
            for i, di in zip(sorted(basis), degs):
                beta = _positive_mod_delta(basis[i].coords, dv)
                for n in range(-3, 6):
                    h = _direction(tuple(b - n * x for b, x in zip(beta, dv)))
                    assert (h in got) == (0 < n <= di), (model, degs, i, n)


@pytest.mark.parametrize("name", ["A1~", "A2~"])
def test_antinef_order(name):
    ctx = make_context(name)
    plus = principal_chamber(ctx, "+")
    for model in MODELS[name]:
        tr = {degs: pic_translate_chamber(d, plus) for degs, d in degree_tuples(ctx, model, 3)}
        for a, ta in tr.items():
            for b, tb in tr.items():
                le = all(x <= y for x, y in zip(a, b))
                assert le == (arr.compare(ta, tb) in "<="), (model, a, b)


@pytest.mark.parametrize("name", ["A1~", "A2~", "A3~"])
def test_delta_star_direction(name):
    """theta_d + delta*/n lies in the translate of C+ by n*d."""
    import sympy
    ctx = make_context(name)
    plus = principal_chamber(ctx, "+")
    for model in movable_fan(ctx).models:
        basis = model_basis(ctx, model)
        keys = sorted(basis)
        star = model_delta_star(ctx, model)
        M = sympy.Matrix([arr.delta_vector(ctx)] + [basis[i].coords for i in keys])
        for degs in product((1, 2), repeat=len(keys)) if len(keys) < 3 else [(1,) * len(keys), (2, 1, 1)]:
            sol = M.LUsolve(sympy.Matrix([0, *degs]))
            theta = [Fraction(int(x.p), int(x.q)) for x in sol]
            for n in (1, 3, 7):
                d = DegreeTuple.of(model, {k: n * v for k, v in zip(keys, degs)})
                t = pic_translate_chamber(d, plus)
                assert t.contains([a + b / n for a, b in zip(theta, star)])


def test_delta_star_pairs_to_one_with_delta():
    ctx = make_context("D4~", (1,))
    for model in movable_fan(ctx).models[:6]:
        star = model_delta_star(ctx, model)
        assert sum(a * b for a, b in zip(star, arr.delta_vector(ctx))) == 1
        for b in model_basis(ctx, model).values():
            assert sum(a * c for a, c in zip(star, b.coords)) == 0


@given(st.tuples(st.integers(-3, 3), st.integers(-3, 3)),
       st.tuples(st.fractions(-4, 4), st.fractions(-4, 4), st.fractions(-4, 4)))
def test_translate_functional_is_the_dual_action(degs, theta):
    d = DegreeTuple.of((), {1: degs[0], 2: degs[1]})
    L = pic_matrix(A2, d)
    moved = translate_functional(A2, d, theta)
    for k in range(3):
        e = RootVector(A2.unmarked, tuple(int(j == k) for j in range(3)))
        img = L(e).coords
        assert moved[k] == sum(Fraction(t) * c for t, c in zip(theta, img))


def test_degree_tuple_validation():
    with pytest.raises(ValueError):
        pic_matrix(A2, DegreeTuple.of((), {1: 1}))


@pytest.mark.parametrize("name", ["A1~", "A2~"])
def test_line_bundles_fix_sector_zero_chambers(name):
    # on delta = 0 the action is trivial
    ctx = make_context(name)
    keys = sorted(model_basis(ctx, ()))
    for degs in product(range(-2, 3), repeat=len(keys)):
        d = DegreeTuple.of((), dict(zip(keys, degs)))
        for c in enumerate_box(ctx, "0"):
            assert pic_translate_chamber(d, c) == c
