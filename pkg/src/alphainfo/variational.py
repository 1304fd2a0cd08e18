"""Variational representations of Sibson's α-mutual information.

Each representation is exposed three ways: as a functional of an arbitrary test
function, through the constructor of the function that attains it, and (for the
max-over-y form) through a tabular ascent that recovers ``I_α`` by optimization
alone.
"""

from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass

import numpy as np

from .errors import NoConvergence, NonpositiveFunction
from .prob_core import (
    AlphaKind,
    AlphaOrder,
    JointPMF,
    as_joint,
    log_sum_exp,
    nonnegative,
    safe_log,
)
from .renyi import kl_divergence
from .sibson import sibson_mi

TYPE_CHECKING = False
if TYPE_CHECKING:
    from numpy.typing import ArrayLike, NDArray

    FloatArray = NDArray[np.float64]

__all__ = [
    "Reference",
    "TestFunction",
    "dv_mi_limit_check",
    "estimate_sibson_by_ascent",
    "f_star",
    "g_star",
    "kl_representation_minimizer",
    "kl_representation_objective",
    "leakage_witness",
    "var_rep_one",
    "var_rep_ratio",
]

logger = logging.getLogger(__name__)

DEFAULT_STEPS = 100_000
DEFAULT_RATE = 0.1
#: Ascent stops once every preconditioned gradient entry is below this.
ASCENT_TOL = 1e-9
_MAX_RATE = 1e3
_CHECKPOINT = 1000


@dataclass(frozen=True, eq=False)
class TestFunction:
    """A test function tabulated over ``(x, y)``.

    ``kind="f"`` tables hold real values; ``-inf`` is allowed and stands for a
    zero of ``e^f``. ``kind="g"`` tables hold nonnegative values that are not
    all zero.
    """

    __test__ = False

    table: FloatArray
    kind: str = "f"

    def __post_init__(self) -> None:
        """Validate the table against its kind."""
        table = np.array(self.table, dtype=np.float64)
        if table.ndim != 2:
            msg = f"A test function is a 2-d table, got shape {table.shape}"
            raise ValueError(msg)
        if self.kind not in {"f", "g"}:
            msg = f"Unknown test-function kind {self.kind!r}"
            raise ValueError(msg)
        if np.any(np.isnan(table)) or np.any(table == np.inf):
            msg = "Test-function entries must be finite"
            raise ValueError(msg)
        if self.kind == "g" and (np.any(table < 0) or not np.any(table > 0)):
            msg = "A g-type test function must be nonnegative and not identically zero"
            raise NonpositiveFunction(msg)
        table.setflags(write=False)
        object.__setattr__(self, "table", table)

    def rows(self) -> list[tuple[int, int, float]]:
        """``(x, y, value)`` triples in row-major order, for table export."""
        return [
            (x, y, float(self.table[x, y]))
            for x in range(self.table.shape[0])
            for y in range(self.table.shape[1])
        ]


class Reference(enum.Enum):
    """Output measure weighting the log-moment term of :func:`var_rep_one`."""

    R_STAR = "RStar"
    Q_STAR = "QStar"
    PRODUCT_R_STAR = "ProductRStar"
    PRODUCT_Q_STAR = "ProductQStar"


def _table(f: TestFunction | ArrayLike, kind: str = "f") -> FloatArray:
    if isinstance(f, TestFunction):
        return f.table
    return TestFunction(np.asarray(f, dtype=np.float64), kind).table


def _cells_for(joint: JointPMF | ArrayLike, table: FloatArray) -> FloatArray:
    cells = as_joint(joint).cells
    if cells.ndim != 2 or cells.shape != table.shape:
        msg = f"Test function shape {table.shape} does not match the joint"
        raise ValueError(msg)
    return cells


def _finite_order(alpha: float | AlphaOrder) -> float:
    a = AlphaOrder.of(alpha)
    if a.kind is not AlphaKind.FINITE:
        msg = f"The representation needs alpha in (0, 1) or (1, inf), got {a}"
        raise ValueError(msg)
    return a.value


def _log_expect(
    log_values: FloatArray, weights: FloatArray, axis: int | None = None
) -> FloatArray:
    """``log E_w[e^v]`` with zero weights dropped."""
    with np.errstate(invalid="ignore"):
        terms = np.where(weights > 0, log_values + safe_log(weights), -np.inf)
    return log_sum_exp(terms, axis=axis)


def kl_representation_objective(
    r_joint: JointPMF | ArrayLike, base: JointPMF | ArrayLike, alpha: float
) -> float:
    """``α·D(R_XY‖P_XY) + (1-α)·D(R_XY‖P_X R_Y)``.

    Its minimum over ``R_XY`` is ``(1-α)·I_α(X,Y)``, reached at
    :func:`kl_representation_minimizer`.
    """
    r = as_joint(r_joint).cells
    p = as_joint(base).cells
    if r.shape != p.shape or r.ndim != 2:
        msg = "Both joints must be 2-d over the same alphabets"
        raise ValueError(msg)
    product = np.outer(p.sum(axis=1), r.sum(axis=0))
    total = alpha * kl_divergence(r.ravel(), p.ravel())
    if alpha != 1.0:
        total += (1.0 - alpha) * kl_divergence(r.ravel(), product.ravel())
    return total


def kl_representation_minimizer(joint: JointPMF | ArrayLike, alpha: float) -> JointPMF:
    """``R* ∝ P_XY^α (P_X Q*_Y)^(1-α)``, whose Y-marginal is ``Q*_Y``."""
    a = _finite_order(alpha)
    cells = as_joint(joint).cells
    q = sibson_mi(cells, a).q_star.probs
    ref = np.outer(cells.sum(axis=1), q)
    both = (cells > 0) & (ref > 0)
    log_r = np.full(cells.shape, -np.inf)
    log_r[both] = a * np.log(cells[both]) + (1.0 - a) * np.log(ref[both])
    r = np.exp(log_r - log_sum_exp(log_r))
    return JointPMF(r / r.sum())


def var_rep_one(
    f: TestFunction | ArrayLike,
    joint: JointPMF | ArrayLike,
    alpha: float,
    reference: Reference | str = Reference.R_STAR,
) -> float:
    """Functional whose supremum over f is ``I_α(X,Y)``.

    ``(α/(α-1)) log E_{P_XY}[e^{(α-1)f}]`` minus the log-moment
    ``log E_{P_X}[e^{αf(X,y)}]`` averaged over the reference measure on y
    (``R_STAR``/``Q_STAR``) or taken under ``P_X`` times that measure
    (``PRODUCT_R_STAR``/``PRODUCT_Q_STAR``, never larger for α > 1). The R*
    references hold for α > 1 and the Q* ones for α < 1, with
    ``R*_Y(y) ∝ Σ_x P_XY(x,y) e^{(α-1)f(x,y)}``.

    Examples:
        ```pycon
        >>> bsc = [[0.375, 0.125], [0.125, 0.375]]
        >>> abs(var_rep_one([[1.5, 1.5], [1.5, 1.5]], bsc, 2.0)) < 1e-12
        True

        ```

    Raises:
        ValueError: If the reference does not match the regime of α.
    """
    a = _finite_order(alpha)
    ref = Reference(reference)
    table = _table(f)
    cells = _cells_for(joint, table)
    if (ref in {Reference.R_STAR, Reference.PRODUCT_R_STAR}) != (a > 1):
        regime = "alpha > 1" if a <= 1 else "alpha < 1"
        msg = f"{ref.value} is the reference for {regime}"
        raise ValueError(msg)
    px = cells.sum(axis=1)
    with np.errstate(invalid="ignore"):
        tilted = np.where(cells > 0, (a - 1.0) * table + safe_log(cells), -np.inf)
    first = a / (a - 1.0) * float(log_sum_exp(tilted))
    log_moment = _log_expect(a * table, px[:, None], axis=0)
    if ref in {Reference.R_STAR, Reference.PRODUCT_R_STAR}:
        log_w = log_sum_exp(tilted, axis=0)
        weights = np.exp(log_w - log_sum_exp(log_w))
    else:
        weights = sibson_mi(cells, a).q_star.probs
    on = weights > 0
    if ref in {Reference.R_STAR, Reference.Q_STAR}:
        second = float(np.dot(weights[on], log_moment[on]))
    else:
        second = float(log_sum_exp(log_moment[on] + np.log(weights[on])))
    return first - second


def _log_ratio(cells: FloatArray) -> FloatArray:
    """``log dP_XY/dP_X P_Y`` with ``-inf`` off the support."""
    px, py = cells.sum(axis=1), cells.sum(axis=0)
    with np.errstate(invalid="ignore"):
        ratio = safe_log(cells) - safe_log(px)[:, None] - safe_log(py)[None, :]
        return np.where(cells > 0, ratio, -np.inf)


def f_star(joint: JointPMF | ArrayLike, alpha: float) -> TestFunction:
    """``f* = log r - (1/α) log E_{P_X}[r^α]`` with ``r = dP_XY/dP_X P_Y``.

    Attains :func:`var_rep_one` for every reference. Columns with
    ``P_Y(y) = 0`` are set to zero.
    """
    a = _finite_order(alpha)
    cells = as_joint(joint).cells
    log_r = _log_ratio(cells)
    log_norm = _log_expect(a * log_r, cells.sum(axis=1)[:, None], axis=0) / a
    py = cells.sum(axis=0)
    with np.errstate(invalid="ignore"):
        table = np.where(py[None, :] > 0, log_r - log_norm[None, :], 0.0)
    return TestFunction(table)


def g_star(joint: JointPMF | ArrayLike, alpha: float) -> TestFunction:
    """``g*`` with ``g*^β = r^α / E_{P_X}[r^α]``, ``β = α/(α-1)``.

    Order infinity gives :func:`leakage_witness`.
    """
    a = AlphaOrder.of(alpha)
    if a.kind is AlphaKind.INFINITY:
        return leakage_witness(joint)
    f = f_star(joint, a.value).table
    with np.errstate(over="ignore"):
        return TestFunction(np.exp((a.value - 1.0) * f), "g")


def leakage_witness(joint: JointPMF | ArrayLike) -> TestFunction:
    """Normalized indicator of the likeliest input for every output.

    ``g(x, y) = 1{x = x_y} / P_X(x_y)`` where ``x_y`` is the lowest-index
    maximizer of ``P_{Y|X}(y|x)`` over inputs with ``P_X(x) > 0``.
    """
    cells = as_joint(joint).cells
    px = cells.sum(axis=1)
    on = px > 0
    w = np.full(cells.shape, -1.0)
    w[on] = cells[on] / px[on, None]
    best = w.argmax(axis=0)
    table = np.zeros(cells.shape)
    table[best, np.arange(cells.shape[1])] = 1.0 / px[best]
    return TestFunction(table, "g")


def var_rep_ratio(
    g: TestFunction | ArrayLike, joint: JointPMF | ArrayLike, alpha: float
) -> float:
    """``E_{P_XY}[g] / max_y (E_{P_X}[g(X,y)^β])^{1/β}`` with ``β = α/(α-1)``.

    For α > 1 (and α = ∞, where β = 1) the supremum over g is
    ``exp((α-1)/α·I_α)``. For α < 1 the maximum becomes a minimum and the
    infimum over strictly positive g gives the same quantity.

    Examples:
        ```pycon
        >>> bsc = [[0.375, 0.125], [0.125, 0.375]]
        >>> round(var_rep_ratio([[1.0, 1.0], [1.0, 1.0]], bsc, 2.0), 12)
        1.0

        ```

    Raises:
        NonpositiveFunction: If α < 1 and g has a zero entry.
    """
    a = AlphaOrder.of(alpha)
    table = _table(g, "g")
    cells = _cells_for(joint, table)
    px = cells.sum(axis=1)
    numerator = float(np.sum(cells * table))
    if a.kind is AlphaKind.INFINITY:
        return numerator / float((px[:, None] * table).sum(axis=0).max())
    beta_order = _finite_order(a)
    beta = beta_order / (beta_order - 1.0)
    if beta_order < 1 and np.any(table <= 0):
        msg = "The alpha < 1 ratio needs a strictly positive g"
        raise NonpositiveFunction(msg)
    log_norms = _log_expect(beta * safe_log(table), px[:, None], axis=0) / beta
    denominator = log_norms.max() if beta_order > 1 else log_norms.min()
    return numerator / math.exp(float(denominator))


def _ascent_state(
    h: FloatArray, log_cells: FloatArray, log_px: FloatArray, alpha: float
) -> tuple[float, FloatArray, FloatArray]:
    """Objective, gradient in h and the column-normalized f."""
    log_z = log_sum_exp(alpha * h + log_px[:, None], axis=0)
    f = h - log_z[None, :] / alpha
    terms = log_cells + (alpha - 1.0) * f
    log_s = float(log_sum_exp(terms))
    w = np.exp(terms - log_s)
    pi = np.exp(alpha * h + log_px[:, None] - log_z[None, :])
    grad = w - pi * w.sum(axis=0, keepdims=True)
    return log_s / (alpha - 1.0), grad, f


def estimate_sibson_by_ascent(
    joint: JointPMF | ArrayLike,
    alpha: float,
    steps: int = DEFAULT_STEPS,
    rate: float = DEFAULT_RATE,
    seed: int = 0,
    tol: float = ASCENT_TOL,
) -> tuple[float, TestFunction]:
    """Recover ``I_α`` by gradient ascent on the max-over-y representation.

    The test function is parametrized as
    ``f(x,y) = h(x,y) - (1/α) log E_{P_X}[e^{αh(X,y)}]`` so every column has
    unit α-moment and the max over y is exactly zero; the ascent then works
    on the smooth first term. Steps are preconditioned by ``P_X ⊗ P_Y``; a
    step that lowers the objective is rejected and halves the rate, an
    accepted one grows it by 10%. The returned estimate is the best value
    seen, so it is a lower bound on ``I_α``.

    Args:
        joint (JointPMF | ArrayLike): Full-support 2-d joint.
        alpha (float): Order in (1, inf).
        steps (int): Iteration cap.
        rate (float): Initial step size.
        seed (int): Seed of the small random initialization of h.
        tol (float): Stop when the preconditioned gradient is below this.

    Returns:
        tuple[float, TestFunction]: Estimate in nats and the maximizing f.

    Raises:
        NoConvergence: If the cap is reached first; ``best`` is the estimate.
    """
    if not 1.0 < alpha < math.inf:
        msg = f"Ascent needs alpha in (1, inf), got {alpha}"
        raise ValueError(msg)
    cells = as_joint(joint).cells
    if cells.ndim != 2 or np.any(cells <= 0):
        msg = "Ascent needs a full-support 2-d joint"
        raise ValueError(msg)
    log_cells = np.log(cells)
    px, py = cells.sum(axis=1), cells.sum(axis=0)
    log_px = np.log(px)
    precondition = np.outer(px, py)
    rng = np.random.default_rng(seed)
    h = 0.01 * rng.standard_normal(cells.shape)
    value, grad, f = _ascent_state(h, log_cells, log_px, alpha)
    for step in range(1, steps + 1):
        direction = grad / precondition
        if float(np.abs(direction).max()) < tol:
            logger.debug("ascent converged after %d steps: %.17g", step, alpha * value)
            return nonnegative(alpha * value), TestFunction(f)
        cand = h + rate * direction
        cand_value, cand_grad, cand_f = _ascent_state(cand, log_cells, log_px, alpha)
        if cand_value >= value:
            h, value, grad, f = cand, cand_value, cand_grad, cand_f
            rate = min(rate * 1.1, _MAX_RATE)
        else:
            rate *= 0.5
        if step % _CHECKPOINT == 0:
            logger.debug(
                "ascent step %d: estimate %.17g, rate %.3g", step, alpha * value, rate
            )
    estimate = nonnegative(alpha * value)
    msg = f"Ascent did not converge in {steps} steps"
    raise NoConvergence(msg, best=estimate, iterations=steps)


def dv_mi_limit_check(
    f: TestFunction | ArrayLike, joint: JointPMF | ArrayLike
) -> tuple[float, float]:
    """Donsker-Varadhan value and its max-over-y weakening.

    ``strong = E_P[f] - log E_{P_X P_Y}[e^f]`` and
    ``weak = E_P[f] - log max_y E_{P_X}[e^{f(X,y)}]``; both are at most
    ``I(X;Y)`` and ``weak <= strong``, with equality at ``f = log dP/dP_X P_Y``.
    """
    table = _table(f)
    cells = _cells_for(joint, table)
    px, py = cells.sum(axis=1), cells.sum(axis=0)
    on = cells > 0
    mean = float(np.dot(cells[on], table[on]))
    strong_log = float(_log_expect(table, np.outer(px, py)))
    weak_log = float(_log_expect(table, px[:, None], axis=0).max())
    return mean - strong_log, mean - weak_log
