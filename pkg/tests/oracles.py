"""Independent brute-force references used by the tests."""
from __future__ import annotations

from functools import cache
from itertools import product

import numpy as np


def cartan(D):
    return np.array(D.cartan_matrix, dtype=np.int64)


def reflection_matrices(D, vertices=None):
    """s_i(v) = v - (alpha_i, v) alpha_i, written out from the Cartan matrix."""
    C = cartan(D)
    out = {}
    for i in (D.vertices if vertices is None else vertices):
        k = D.index[i]
        m = np.eye(len(D.vertices), dtype=np.int64)
        for c in range(len(D.vertices)):
            m[k, c] -= C[k, c]
        out[i] = m
    return out


def weyl_group(D, vertices=None, limit=100000):
    """All elements of the group generated by the given reflections, as matrices."""
    gens = list(reflection_matrices(D, vertices).values())
    e = np.eye(len(D.vertices), dtype=np.int64)
    seen = {e.tobytes(): e}
    frontier = [e]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = g @ s
                key = h.tobytes()
                if key not in seen:
                    seen[key] = h
                    nxt.append(h)
                    if len(seen) > limit:
                        raise RuntimeError("group too large")
        frontier = nxt
    return list(seen.values())


@cache
def finite_roots_by_orbit(D):
    """Roots of the finite part: the orbit of the simple roots under the
    finite reflections, closed over signed vectors."""
    fin = [v for v in D.vertices if v != 0] if D.affine else list(D.vertices)
    refl = list(reflection_matrices(D, fin).values())
    start = [tuple(int(v == j) for v in D.vertices) for j in fin]
    seen = set(start)
    frontier = list(start)
    while frontier:
        nxt = []
        for r in frontier:
            for s in refl:
                img = tuple(int(x) for x in s @ np.array(r))
                if img not in seen:
                    seen.add(img)
                    nxt.append(img)
        frontier = nxt
    return sorted(seen)


@cache
def labels_of(D):
    """Kac labels found by searching small positive integer vectors in the
    kernel of the Cartan matrix."""
    C = cartan(D)
    n = len(D.vertices)
    for top in range(1, 7):
        for v in product(range(1, top + 1), repeat=n):
            if v[0] == 1 and not (C @ np.array(v)).any():
                return dict(zip(D.vertices, v))
    raise RuntimeError("no kernel vector found")


def affine_real_roots(D, level):
    """gamma + n*delta with gamma a finite root, sorted by the largest k with
    alpha - k delta >= 0 (for positive alpha)."""
    lab = labels_of(D)
    dv = np.array([lab[v] for v in D.vertices])
    fin = [np.array(r) for r in finite_roots_by_orbit(D)]
    out = set()
    for g in fin + [-r for r in fin]:
        for n in range(-level - 2, level + 3):
            a = g + n * dv
            pos = (a >= 0).all()
            if not pos and not (a <= 0).all():
                continue
            b = a if pos else -a
            k = min(int(x) // int(d) for x, d in zip(b, dv))
            if k <= level:
                out.add(tuple(int(x) for x in a))
    return out


def restricted_roots_member(D, marked, v, fin_roots=None):
    """Is v (coordinates on the unmarked vertices) the image of a real root?"""
    lab = labels_of(D)
    keep = [D.index[x] for x in D.vertices if x not in marked]
    dJ = np.array([lab[D.vertices[k]] for k in keep])
    v = np.array(v)
    if not v.any():
        return False
    fin = fin_roots if fin_roots is not None else finite_roots_by_orbit(D)
    for g in fin:
        for s in (1, -1):
            diff = v - s * np.array(g)[keep]
            # diff must be an integer multiple of dJ
            ratios = {_exact_ratio(a, b) for a, b in zip(diff, dJ)}
            if len(ratios) == 1 and None not in ratios:
                return True
    return False


def _exact_ratio(a, b):
    if a % b:
        return None
    return a // b


def sign_vector(normals, point):
    return tuple(int(np.sign(np.dot(n, point))) for n in normals)


def iota_by_shape(D, J, i):
    """The -w0 involution of the component of i in J + i, from the shape of the
    component: chains reverse, D_n swaps its two short legs when n is odd, E_6
    flips, everything else is fixed."""
    G = set(J) | {i}
    comp, stack = {i}, [i]
    while stack:
        v = stack.pop()
        for u in D.neighbours(v):
            if u in G and u not in comp:
                comp.add(u)
                stack.append(u)
    deg = {v: len(D.neighbours(v) & comp) for v in comp}
    n = len(comp)
    if D.affine and n == len(D.vertices):
        return i
    if max(deg.values()) <= 2:
        # a chain: walk from one end
        end = min(v for v in comp if deg[v] <= 1)
        chain, prev = [end], None
        while len(chain) < n:
            nxt = [u for u in D.neighbours(chain[-1]) & comp if u != prev]
            prev = chain[-1]
            chain.append(nxt[0])
        return chain[n - 1 - chain.index(i)]
    (branch,) = [v for v in comp if deg[v] == 3]
    legs = []
    for start in D.neighbours(branch) & comp:
        leg, prev = [start], branch
        while True:
            nxt = [u for u in D.neighbours(leg[-1]) & comp if u != prev]
            if not nxt:
                break
            prev = leg[-1]
            leg.append(nxt[0])
        legs.append(leg)
    lengths = sorted(len(l) for l in legs)
    if lengths[:2] == [1, 1]:
        # D_n
        if n % 2 == 0:
            return i
        a, b = [l[0] for l in legs if len(l) == 1][:2]
        return {a: b, b: a}.get(i, i)
    if lengths == [1, 2, 2]:
        # E_6: swap the two long legs
        l1, l2 = [l for l in legs if len(l) == 2]
        swap = {l1[k]: l2[k] for k in range(2)}
        swap.update({v: k for k, v in swap.items()})
        return swap.get(i, i)
    return i
