import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from contextua.errors import ContextuaError
from contextua.fermat import fermat_torricelli, total_distance, vertex_certificate
from contextua.triplewise import LambdaSystem, orthogonal_case_ft

from oracles import grid_median, random_ball


def test_quadrilateral_diagonals():
    pts = np.array([[0, 0, 0], [3, 0, 0], [4, 2, 0], [0, 1, 0]], dtype=float)
    ft = fermat_torricelli(pts)
    # intersection of the diagonals 0-2 and 1-3
    a, b = np.linalg.solve(np.array([[4, 3], [2, -1]]), np.array([3, 0]))
    assert ft.at_vertex is None
    assert np.allclose(ft.point, [4 * a, 2 * a, 0], atol=1e-9)


def test_interior_point_is_median():
    pts = np.array([[0, 0, 0], [4, 0, 0], [0, 4, 0], [1, 1, 0]], dtype=float)
    ft = fermat_torricelli(pts)
    assert ft.at_vertex == 3
    assert np.array_equal(ft.point, pts[3])
    assert vertex_certificate(pts, 3) <= 0


@pytest.mark.parametrize("seed", range(5))
def test_orthogonal_closed_form(seed):
    rng = np.random.default_rng(seed)
    l1, l2 = rng.uniform(-0.5, 0.5, size=(2, 2))
    l1, l2 = np.append(l1, 0), np.append(l2, 0)
    l3 = np.array([0, 0, rng.uniform(-0.8, 0.8)])
    ft = fermat_torricelli(LambdaSystem(l1, l2, l3).big_lambdas)
    assert np.allclose(ft.point, orthogonal_case_ft(l1, l2, l3), atol=1e-9)


def test_degenerate_and_invalid():
    ft = fermat_torricelli(np.ones((4, 3)))
    assert ft.degenerate and ft.total_distance == 0
    with pytest.raises(ContextuaError):
        fermat_torricelli(np.zeros((2, 3)))
    with pytest.raises(ContextuaError):
        fermat_torricelli(np.zeros((4, 2)))
    with pytest.raises(ContextuaError):
        fermat_torricelli([[0, 0, 0], [1, 0, 0], [np.inf, 0, 0]])


def test_duplicates_count_as_weight():
    pts = np.array([[0, 0, 0], [0, 0, 0], [1, 0, 0], [0, 1, 0]], dtype=float)
    ft = fermat_torricelli(pts)
    assert ft.at_vertex == 0
    assert ft.total_distance == pytest.approx(2.0)


def test_collinear_points():
    pts = np.array([[0, 0, 0], [1, 0, 0], [3, 0, 0], [7, 0, 0]], dtype=float)
    ft = fermat_torricelli(pts)
    # any point of [1, 3] is a median
    assert ft.total_distance == pytest.approx(9.0, abs=1e-9)


def test_monotone_objective(rng):
    for _ in range(50):
        pts = rng.normal(size=(int(rng.integers(3, 8)), 3))
        ft = fermat_torricelli(pts, track=True)
        hist = np.array(ft.history)
        assert np.all(np.diff(hist) <= 1e-12)
        assert hist[-1] == pytest.approx(ft.total_distance)


def test_certificate_at_result(rng):
    for _ in range(100):
        pts = random_ball(rng, 4)
        ft = fermat_torricelli(pts)
        if ft.at_vertex is not None:
            assert vertex_certificate(pts, ft.at_vertex) <= 1e-12
        else:
            assert ft.stationarity <= 1e-10 or ft.iterations > 0


def test_deterministic():
    pts = np.random.default_rng(3).normal(size=(5, 3))
    a, b = fermat_torricelli(pts), fermat_torricelli(pts.copy())
    assert np.array_equal(a.point, b.point) and a.iterations == b.iterations


def test_agrees_with_grid_oracle():
    rng = np.random.default_rng(11)
    for _ in range(25):
        pts = rng.normal(size=(4, 3))
        _, best = grid_median(pts)
        assert abs(fermat_torricelli(pts).total_distance - best) <= 1e-6


@settings(max_examples=60, deadline=None)
@given(arrays(float, (4, 3), elements=st.floats(-2, 2)))
def test_no_better_perturbation(pts):
    ft = fermat_torricelli(pts)
    rng = np.random.default_rng(0)
    for step in (1e-3, 1e-5):
        for d in rng.normal(size=(20, 3)):
            assert total_distance(pts, ft.point + step * d) >= ft.total_distance - 1e-9
