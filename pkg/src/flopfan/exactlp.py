"""Exact feasibility of {x >= 0, A x = b} over the rationals.

A floating-point simplex (HiGHS via scipy) proposes a basic solution or a
Farkas vector; the answer is then recomputed from the active set in exact
arithmetic and verified.  Nothing is returned without an exact certificate."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import numpy as np
import sympy
from scipy.optimize import linprog

_TOLERANCES = (1e-9, 1e-7, 1e-5)
_DENOMINATORS = (1, 2, 12, 1000, 10**6)


class UncertifiedLP(RuntimeError):
    """The float solver's answer could not be confirmed exactly."""


def _solve(rows: list[list[int]], rhs: list[int]) -> list[Fraction] | None:
    if not rows:
        return None
    M = sympy.Matrix(rows)
    try:
        sol, params = M.gauss_jordan_solve(sympy.Matrix(rhs))
    except ValueError:
        return None
    sol = sol.subs({p: 0 for p in params})
    return [Fraction(int(v.p), int(v.q)) for v in sol]


def _dot(a, b) -> Fraction:
    return sum((int(x) * Fraction(y) for x, y in zip(a, b)), Fraction(0))


def _rounded(vec: np.ndarray):
    for bound in _DENOMINATORS:
        yield [Fraction(float(v)).limit_denominator(bound) for v in vec]


def _certify_point(A: np.ndarray, b: list[int], x: np.ndarray) -> list[Fraction] | None:
    m, n = A.shape

    def ok(full):
        return all(v >= 0 for v in full) and all(_dot(A[i], full) == b[i] for i in range(m))

    for tol in _TOLERANCES:
        support = [j for j in range(n) if x[j] > tol]
        sub = _solve([[int(A[i, j]) for j in support] for i in range(m)], b)
        if sub is None:
            continue
        full = [Fraction(0)] * n
        for j, v in zip(support, sub):
            full[j] = v
        if ok(full):
            return full
    return next((c for c in _rounded(x) if ok(c)), None)


def _certify_farkas(A: np.ndarray, b: list[int], y: np.ndarray) -> list[Fraction] | None:
    m, n = A.shape
    AT = A.T
    vals = AT @ y

    def ok(cand):
        return all(_dot(AT[j], cand) >= 0 for j in range(n)) and _dot(b, cand) < 0

    for tol in _TOLERANCES:
        active = [j for j in range(n) if abs(vals[j]) <= tol]
        rows = [[int(v) for v in AT[j]] for j in active] + [list(b)]
        cand = _solve(rows, [0] * len(active) + [-1])
        if cand is None:
            continue
        if ok(cand):
            return cand
    # the optimum may be a face whose partial active set is not enough
    return next((c for c in _rounded(y) if ok(c)), None)


def feasible_point(A_eq: Sequence[Sequence[int]], b_eq: Sequence[int]) -> tuple[Fraction, ...] | None:
    """An exact non-negative solution of A x = b, or None when a Farkas
    certificate proves there is none."""
    A = np.array(A_eq, dtype=np.int64)
    b = [int(v) for v in b_eq]
    m, n = A.shape
    res = linprog(np.zeros(n), A_eq=A, b_eq=b, bounds=(0, None), method="highs-ds")
    if res.status == 0:
        x = _certify_point(A, b, res.x)
        if x is not None:
            return tuple(x)
    dual = linprog(np.array(b, dtype=float), A_ub=np.vstack([-A.T, -np.array([b])]),
                   b_ub=np.array([0] * n + [1], dtype=float), bounds=(None, None),
                   method="highs-ds")
    if dual.status == 0 and _certify_farkas(A, b, dual.x) is not None:
        return None
    raise UncertifiedLP("neither a feasible point nor an infeasibility certificate was confirmed")
