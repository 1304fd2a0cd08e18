"""Small optimization kernels shared by the solvers."""

from __future__ import annotations

import math

import numpy as np
from scipy.optimize import minimize_scalar

TYPE_CHECKING = False
if TYPE_CHECKING:
    from collections.abc import Callable

    from numpy.typing import ArrayLike, NDArray

__all__ = [
    "golden_max_on_grid",
    "grid_golden_max",
    "project_simplex",
    "project_simplex_floor",
]


def project_simplex(v: ArrayLike, z: float = 1.0) -> NDArray[np.float64]:
    """Euclidean projection onto ``{y >= 0, sum(y) = z}`` by the sorted-threshold rule.

    Examples:
        ```pycon
        >>> project_simplex([0.5, 0.5]).tolist()
        [0.5, 0.5]
        >>> project_simplex([2.0, 0.0]).tolist()
        [1.0, 0.0]

        ```
    """
    x = np.asarray(v, dtype=np.float64).ravel()
    u = np.sort(x)[::-1]
    cssv = np.cumsum(u) - z
    ind = np.arange(1, x.size + 1)
    rho = int(np.count_nonzero(u - cssv / ind > 0))
    theta = cssv[rho - 1] / rho
    return np.maximum(x - theta, 0.0)


def project_simplex_floor(
    v: NDArray[np.float64], free: NDArray[np.bool_], floor: float
) -> NDArray[np.float64]:
    """Project onto the face spanned by `free`, each free entry at least `floor`.

    Entries outside `free` are set to zero.
    """
    out = np.zeros_like(v)
    k = int(free.sum())
    out[free] = project_simplex(v[free] - floor, 1.0 - k * floor) + floor
    return out


def golden_max_on_grid(
    fn: Callable[[float], float],
    grid: ArrayLike,
    log_scale: bool = True,
    xtol: float = 1e-10,
) -> tuple[float, float]:
    """Maximize `fn` over an increasing grid, refining an interior peak.

    When the best grid point has strictly worse neighbours, a golden-section
    search (in ``log x`` when `log_scale`) refines it inside that bracket. A
    best point at either end of the grid is returned as is.

    Returns:
        tuple[float, float]: Maximizer and maximum.
    """
    xs = np.asarray(grid, dtype=np.float64).ravel()
    if xs.size == 0:
        msg = "Cannot maximize over an empty grid"
        raise ValueError(msg)
    if log_scale and np.any(xs <= 0):
        msg = "A log-scale search needs a positive grid"
        raise ValueError(msg)
    values = np.array([fn(float(x)) for x in xs])
    values = np.where(np.isnan(values), -np.inf, values)
    i = int(np.argmax(values))
    best_x, best_value = float(xs[i]), float(values[i])
    if i == 0 or i == xs.size - 1:
        return best_x, best_value
    if not (values[i] > values[i - 1] and values[i] > values[i + 1]):
        return best_x, best_value

    def to_x(t: float) -> float:
        return math.exp(t) if log_scale else t

    def negated(t: float) -> float:
        value = fn(to_x(t))
        return math.inf if math.isnan(value) else -value

    bracket = xs[i - 1 : i + 2]
    if log_scale:
        bracket = np.log(bracket)
    res = minimize_scalar(
        negated,
        bracket=tuple(float(b) for b in bracket),
        method="golden",
        options={"xtol": xtol},
    )
    if -float(res.fun) > best_value:
        return to_x(float(res.x)), -float(res.fun)
    return best_x, best_value


def grid_golden_max(
    fn: Callable[[float], float],
    lo: float,
    hi: float,
    points: int = 64,
    log_scale: bool = True,
    xtol: float = 1e-10,
) -> tuple[float, float]:
    """Maximize a one-dimensional function on ``[lo, hi]``.

    Builds a `points`-point grid, log-spaced when `log_scale`, and hands it to
    :func:`golden_max_on_grid`.

    Args:
        fn (Callable[[float], float]): Objective.
        lo (float): Left end, positive when `log_scale`.
        hi (float): Right end.
        points (int): Grid size, at least 3.
        log_scale (bool): Search in ``log x``.
        xtol (float): Golden-section tolerance in the search variable.

    Returns:
        tuple[float, float]: Maximizer and maximum.
    """
    if points < 3 or not lo < hi:
        msg = f"Need lo < hi and at least 3 grid points, got [{lo}, {hi}], {points}"
        raise ValueError(msg)
    if log_scale:
        if lo <= 0:
            msg = f"A log-scale search needs lo > 0, got {lo}"
            raise ValueError(msg)
        grid = np.geomspace(lo, hi, points)
    else:
        grid = np.linspace(lo, hi, points)
    return golden_max_on_grid(fn, grid, log_scale, xtol)
