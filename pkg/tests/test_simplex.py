import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.optimize import linprog

from interpbound.simplex import SimplexStallError, find_feasible_point


def highs_feasible(A, b):
    res = linprog(np.zeros(A.shape[1]), A_ub=A, b_ub=b, bounds=[(None, None)] * A.shape[1], method="highs")
    assert res.status in (0, 2)
    return res.status == 0


def test_empty_system():
    res = find_feasible_point(np.zeros((0, 3)), np.zeros(0))
    assert res.feasible and res.x.shape == (3,)


def test_contradictory_rows():
    # x >= 3/4 and x <= 1/4
    A = np.array([[-1.0], [1.0]])
    b = np.array([-0.75, 0.25])
    res = find_feasible_point(A, b)
    assert not res.feasible
    assert res.infeasibility == pytest.approx(0.5)


def test_free_variables_negative_solution():
    A = np.array([[1.0, 0.0], [0.0, 1.0], [-1.0, -1.0]])
    b = np.array([-2.0, -3.0, 10.0])
    res = find_feasible_point(A, b)
    assert res.feasible
    assert np.all(A @ res.x <= b + 1e-9)


def test_iteration_cap_raises():
    rng = np.random.default_rng(0)
    A = rng.normal(size=(30, 10))
    b = rng.normal(size=30) - 5
    with pytest.raises(SimplexStallError):
        find_feasible_point(A, b, max_iter=0)


def test_deterministic():
    rng = np.random.default_rng(3)
    A = rng.integers(-3, 4, size=(40, 8)).astype(float)
    b = rng.integers(0, 5, size=40).astype(float)
    first = find_feasible_point(A, b)
    second = find_feasible_point(A, b)
    assert first.iterations == second.iterations
    assert np.array_equal(first.x, second.x)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 6), st.integers(1, 25), st.integers(0, 2**31 - 1))
def test_agrees_with_highs(n, m, seed):
    rng = np.random.default_rng(seed)
    A = rng.integers(-3, 4, size=(m, n)).astype(float)
    b = rng.integers(-4, 5, size=m).astype(float)
    res = find_feasible_point(A, b)
    assert res.feasible == highs_feasible(A, b)
    if res.feasible:
        assert np.all(A @ res.x - b <= 1e-7)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 8), st.integers(1, 40), st.integers(0, 2**31 - 1))
def test_planted_point_is_found(n, m, seed):
    rng = np.random.default_rng(seed)
    x0 = rng.normal(size=n)
    A = rng.normal(size=(m, n))
    b = A @ x0 + rng.uniform(0, 1, size=m)
    res = find_feasible_point(A, b)
    assert res.feasible
    assert np.all(A @ res.x - b <= 1e-7)


def test_degenerate_box_system():
    # many tight rows at the origin; exercises the Bland fallback
    k = 12
    A = np.vstack([np.eye(k), -np.eye(k), np.ones((1, k)), -np.ones((1, k))])
    b = np.concatenate([np.zeros(k), np.zeros(k), [0.0], [-1.0]])
    assert not find_feasible_point(A, b).feasible
    b[-1] = 0.0
    assert find_feasible_point(A, b).feasible
