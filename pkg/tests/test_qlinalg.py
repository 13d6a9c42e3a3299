import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from singular_traces.errors import Inconsistent
from singular_traces.qlinalg import RationalMatrix, solve_affine


def mat_vec(A, x):
    return [sum(Fraction(a) * v for a, v in zip(row, x)) for row in A]


def test_identity():
    assert solve_affine(RationalMatrix.identity(2), [1, -2]) == ([1, -2], [])


def test_kernel_dimension():
    x, kernel = solve_affine([[1, 1]], [0])
    assert len(kernel) == 1
    assert mat_vec([[1, 1]], kernel[0]) == [0]


def test_inconsistent():
    with pytest.raises(Inconsistent):
        solve_affine([[1, 1], [2, 2]], [1, 3])


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_random_20x20(seed):
    rng = random.Random(seed)
    n = 20
    A = [[Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(n)] for _ in range(n)]
    rank_drop = rng.random() < 0.3
    if rank_drop:
        A[-1] = [x + y for x, y in zip(A[0], A[1])]
    x0 = [Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(n)]
    b = mat_vec(A, x0)
    x, kernel = solve_affine(A, b)
    assert mat_vec(A, x) == b
    for k in kernel:
        assert mat_vec(A, k) == [0] * n
    if rank_drop:
        assert len(kernel) == 1


@pytest.mark.parametrize("seed", range(3))
def test_modular_path_matches_elimination(seed):
    # wide enough to take the p-adic route
    rng = random.Random(seed)
    n = 45
    A = [[rng.randint(-10 ** 6, 10 ** 6) for _ in range(n)] for _ in range(n + 5)]
    x0 = [Fraction(rng.randint(-99, 99), rng.randint(1, 50)) for _ in range(n)]
    b = mat_vec(A, x0)
    x, kernel = solve_affine(A, b)
    assert kernel == [] and x == x0
    b[-1] += 1
    with pytest.raises(Inconsistent):
        solve_affine(A, b)
