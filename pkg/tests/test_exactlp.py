from fractions import Fraction
from itertools import combinations

import sympy
from hypothesis import given, strategies as st

from flopfan.exactlp import feasible_point


def brute_feasible(A, b):
    """Feasible iff some basic solution (columns independent) is non-negative."""
    m, n = len(A), len(A[0])
    if not any(b):
        return True
    for k in range(1, min(m, n) + 1):
        for cols in combinations(range(n), k):
            M = sympy.Matrix([[A[i][j] for j in cols] for i in range(m)])
            if M.rank() < k:
                continue
            try:
                sol, params = M.gauss_jordan_solve(sympy.Matrix(b))
            except ValueError:
                continue
            if not params and all(v >= 0 for v in sol):
                return True
    return False


def test_known_cases():
    x = feasible_point([[1, 0, -1, -1], [0, 1, 0, -1], [1, 1, 0, 0]], [0, 0, 1])
    assert x is not None and all(v >= 0 for v in x)
    assert feasible_point([[1, 1], [1, -1]], [-1, 0]) is None
    # the dual optimum is a face, not a vertex
    assert feasible_point([[0, 1], [1, -1], [1, 0]], [1, 0, -1]) is None


small = st.integers(-3, 3)


@given(st.integers(1, 3).flatmap(lambda m: st.integers(1, 4).flatmap(lambda n: st.tuples(
    st.lists(st.lists(small, min_size=n, max_size=n), min_size=m, max_size=m),
    st.lists(small, min_size=m, max_size=m)))))
def test_matches_basic_solution_oracle(case):
    A, b = case
    x = feasible_point(A, b)
    assert (x is not None) == brute_feasible(A, b)
    if x is not None:
        assert all(v >= 0 for v in x)
        assert all(sum(Fraction(a) * v for a, v in zip(row, x)) == bb for row, bb in zip(A, b))
