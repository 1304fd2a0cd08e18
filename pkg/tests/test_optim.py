"""Simplex projections and one-dimensional maximization."""

from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from alphainfo.optim import (
    golden_max_on_grid,
    grid_golden_max,
    project_simplex,
    project_simplex_floor,
)


@pytest.mark.parametrize(
    "test_input, expected",
    [
        ([0.5, 0.5], [0.5, 0.5]),
        ([2.0, 0.0], [1.0, 0.0]),
        ([3.0, 1.0, 0.0], [1.0, 0.0, 0.0]),
        ([0.0, 0.0, 0.0, 0.0], [0.25, 0.25, 0.25, 0.25]),
    ],
)
def test_project_simplex(test_input: list[float], expected: list[float]) -> None:
    assert project_simplex(test_input).tolist() == pytest.approx(expected)


@settings(deadline=None)
@given(
    st.lists(
        st.floats(min_value=-10, max_value=10, allow_nan=False), min_size=1, max_size=8
    )
)
def test_project_simplex_lands_on_simplex(values: list[float]) -> None:
    projected = project_simplex(values)

    assert np.all(projected >= 0)
    assert projected.sum() == pytest.approx(1.0)


def test_project_simplex_is_identity_on_simplex() -> None:
    point = np.array([0.2, 0.3, 0.5])
    assert project_simplex(point).tolist() == pytest.approx(point.tolist())


def test_project_simplex_floor() -> None:
    v = np.array([0.3, 0.3, 0.4])
    free = np.array([True, True, False])

    result = project_simplex_floor(v, free, 0.1)
    assert result.tolist() == pytest.approx([0.5, 0.5, 0.0])

    skewed = project_simplex_floor(np.array([5.0, 0.0, 0.0]), np.ones(3, bool), 0.01)
    assert skewed.min() == pytest.approx(0.01)
    assert skewed.sum() == pytest.approx(1.0)


@pytest.mark.parametrize("log_scale", [True, False])
def test_golden_max_refines_interior_peak(log_scale: bool) -> None:
    grid = np.geomspace(0.1, 10.0, 20) if log_scale else np.linspace(0.1, 10.0, 20)

    x, value = golden_max_on_grid(lambda t: -((t - 2.0) ** 2), grid, log_scale)
    assert x == pytest.approx(2.0, abs=1e-5)
    assert value == pytest.approx(0.0, abs=1e-9)


def test_golden_max_keeps_endpoint() -> None:
    grid = [1.0, 2.0, 3.0]
    assert golden_max_on_grid(math.log, grid) == (3.0, math.log(3.0))
    assert golden_max_on_grid(lambda t: -t, grid) == (1.0, -1.0)


def test_golden_max_ignores_nan() -> None:
    grid = [1.0, 2.0, 3.0]
    x, _ = golden_max_on_grid(lambda t: math.nan if t > 2 else t, grid)
    assert x == 2.0


@pytest.mark.parametrize(
    "test_args, expected",
    [
        ([[]], "empty grid"),
        ([[0.0, 1.0]], "positive grid"),
    ],
)
def test_golden_max_rejects(test_args: list[list[float]], expected: str) -> None:
    with pytest.raises(ValueError, match=expected):
        golden_max_on_grid(math.sin, *test_args)


def test_grid_golden_max() -> None:
    x, value = grid_golden_max(lambda t: math.log(t) - t, 0.01, 100.0)
    assert x == pytest.approx(1.0, abs=1e-5)
    assert value == pytest.approx(-1.0)

    x, _ = grid_golden_max(lambda t: -abs(t - 0.3), 0.0, 1.0, log_scale=False)
    assert x == pytest.approx(0.3, abs=1e-5)


@pytest.mark.parametrize(
    "test_args, expected",
    [
        ([1.0, 1.0], "lo < hi"),
        ([2.0, 1.0], "lo < hi"),
        ([0.0, 1.0], "lo > 0"),
    ],
)
def test_grid_golden_max_rejects(test_args: list[float], expected: str) -> None:
    with pytest.raises(ValueError, match=expected):
        grid_golden_max(math.exp, *test_args)


def test_grid_golden_max_needs_three_points() -> None:
    with pytest.raises(ValueError, match="3 grid points"):
        grid_golden_max(math.exp, 1.0, 2.0, points=2)
