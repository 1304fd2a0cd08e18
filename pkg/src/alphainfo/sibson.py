"""Sibson α-mutual information and its relatives.

The discrete closed form is evaluated as

    I_α(X,Y) = α/(α-1) · log Σ_y (Σ_x P_X(x) P_{Y|X}(y|x)^α)^{1/α}

with the inner sums taken in the log domain, so orders up to a few thousand
neither overflow nor underflow.
"""

from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import rel_entr
from scipy.stats import norm

from .errors import BadWeights, NoConvergence
from .optim import project_simplex_floor
from .prob_core import (
    AlphaKind,
    AlphaOrder,
    Channel,
    JointPMF,
    ProbVector,
    as_channel,
    as_joint,
    as_prob_vector,
    log_sum_exp,
    nonnegative,
    safe_log,
)
from .renyi import cond_renyi_entropy, renyi_divergence, renyi_entropy

TYPE_CHECKING = False
if TYPE_CHECKING:
    from collections.abc import Iterator, Sequence

    from numpy.typing import ArrayLike, NDArray

    FloatArray = NDArray[np.float64]

__all__ = [
    "ConditionalResult",
    "ConditionalVariant",
    "SibsonResult",
    "arimoto_mi",
    "conditional_maximal_leakage",
    "conditional_sibson_mi",
    "csiszar_mi",
    "csiszar_minimize",
    "independence_dpi_check",
    "lapidoth_pfister_mi",
    "markov_product",
    "maximal_leakage",
    "product_channel",
    "row_divergence_gradient",
    "row_divergences",
    "shannon_mi",
    "sibson_mi",
    "sibson_mi_gaussian",
    "sibson_mi_gaussian_quadrature",
    "tensorization_check",
    "tilted_input",
]

logger = logging.getLogger(__name__)

#: Objective decrease below which the iterative minimizers stop.
DEFAULT_TOL = 1e-12
MAX_ITER = 100_000
#: Restarts of the Lapidoth-Pfister alternating minimization.
LP_RESTARTS = 8
_FLOOR = 1e-12


@dataclass(frozen=True, eq=False)
class SibsonResult:
    """Value of ``I_α(X,Y)`` in nats and its optimizing output marginal."""

    value: float
    q_star: ProbVector
    alpha: AlphaOrder

    def __float__(self) -> float:
        """Return the information value."""
        return self.value


class ConditionalVariant(enum.Enum):
    """Which factor of the Markov product is optimized."""

    MIN_OVER_Q_Y_GIVEN_Z = "y|z"
    MIN_OVER_Q_Z = "z"


@dataclass(frozen=True, eq=False)
class ConditionalResult:
    """Conditional value and tilting.

    `q_star` is a ``(ny, nz)`` array whose column ``z`` is ``Q*_{Y|Z=z}`` for
    :attr:`ConditionalVariant.MIN_OVER_Q_Y_GIVEN_Z` (zero columns where
    ``P_Z(z) = 0``), and the vector ``Q*_Z`` for the other variant.
    """

    value: float
    q_star: FloatArray
    variant: ConditionalVariant
    alpha: AlphaOrder

    def __iter__(self) -> Iterator[float | FloatArray]:
        """Unpack as ``(value, q_star)``."""
        return iter((self.value, self.q_star))


def _two_d(joint: JointPMF | ArrayLike) -> FloatArray:
    cells = as_joint(joint).cells
    if cells.ndim != 2:
        msg = "Expected a 2-d joint indexed (x, y)"
        raise ValueError(msg)
    return cells


def _normalized(log_w: FloatArray) -> FloatArray:
    w = np.exp(log_w - log_sum_exp(log_w))
    return np.asarray(w / w.sum())


def _log_sibson_inner(cells: FloatArray, alpha: float) -> FloatArray:
    """``log Σ_x P_X(x) P_{Y|X}(y|x)^α`` for every y."""
    log_px = safe_log(cells.sum(axis=1))
    with np.errstate(invalid="ignore"):
        tilted = alpha * safe_log(cells) + (1.0 - alpha) * log_px[:, None]
        terms = np.where(cells > 0, tilted, -np.inf)
    return log_sum_exp(terms, axis=0)


def shannon_mi(joint: JointPMF | ArrayLike) -> float:
    """``I(X;Y)`` in nats."""
    cells = _two_d(joint)
    product = np.outer(cells.sum(axis=1), cells.sum(axis=0))
    with np.errstate(divide="ignore"):
        return nonnegative(float(rel_entr(cells, product).sum()))


def _max_rows(cells: FloatArray) -> FloatArray:
    """``max_{x: P_X(x) > 0} P_{Y|X}(y|x)`` for every y."""
    px = cells.sum(axis=1)
    on = px > 0
    return np.asarray((cells[on] / px[on, None]).max(axis=0))


def sibson_mi(joint: JointPMF | ArrayLike, alpha: float | AlphaOrder) -> SibsonResult:
    """Sibson's α-mutual information of a 2-d joint.

    Examples:
        ```pycon
        >>> bsc = [[0.375, 0.125], [0.125, 0.375]]
        >>> round(sibson_mi(bsc, 2).value, 12) == round(math.log(5 / 4), 12)
        True
        >>> sibson_mi(bsc, 2).q_star.probs.round(12).tolist()
        [0.5, 0.5]
        >>> leak = sibson_mi([[0.5, 0.0], [0.0, 0.5]], math.inf).value
        >>> abs(leak - math.log(2)) < 1e-12
        True

        ```

    Args:
        joint (JointPMF | ArrayLike): Joint indexed ``(x, y)``.
        alpha (float | AlphaOrder): Order; 0, 1 and ``inf`` are the limits.

    Returns:
        SibsonResult: Value in nats and ``Q*_Y``.
    """
    a = AlphaOrder.of(alpha)
    cells = _two_d(joint)
    if a.kind is AlphaKind.ONE:
        value = shannon_mi(cells)
        py = cells.sum(axis=0)
        q = py / py.sum()
    elif a.kind is AlphaKind.INFINITY:
        peaks = _max_rows(cells)
        value = math.log(peaks.sum())
        q = peaks / peaks.sum()
    elif a.kind is AlphaKind.ZERO:
        px = cells.sum(axis=1)
        mass = np.where(cells > 0, px[:, None], 0.0).sum(axis=0)
        y = int(np.argmax(mass))
        value = -math.log(mass[y])
        q = np.zeros(cells.shape[1])
        q[y] = 1.0
    else:
        log_q = _log_sibson_inner(cells, a.value) / a.value
        value = a.value / (a.value - 1.0) * float(log_sum_exp(log_q))
        q = _normalized(log_q)
    return SibsonResult(nonnegative(value), ProbVector(q), a)


def maximal_leakage(joint: JointPMF | ArrayLike) -> float:
    """``log Σ_y max_x P_{Y|X}(y|x)``, the order-infinity value."""
    return sibson_mi(joint, math.inf).value


def tilted_input(px: ProbVector | ArrayLike, alpha: float | AlphaOrder) -> ProbVector:
    """``P_X^α`` renormalized; order 0 gives the uniform law on the support."""
    a = AlphaOrder.of(alpha)
    probs = as_prob_vector(px).probs
    if a.kind is AlphaKind.ONE:
        return ProbVector(probs)
    if a.kind is AlphaKind.INFINITY:
        peak = probs == probs.max()
        return ProbVector(peak / peak.sum())
    log_w = np.where(probs > 0, a.value * safe_log(probs), -np.inf)
    return ProbVector(_normalized(log_w))


def arimoto_mi(joint: JointPMF | ArrayLike, alpha: float | AlphaOrder) -> float:
    """Arimoto's α-mutual information ``H_α(X) - H_α(X|Y)``.

    Evaluated as Sibson's value at the tilted input ``P_X^α / Σ P_X^α`` with the
    channel kept; order infinity uses the entropy difference directly.
    """
    a = AlphaOrder.of(alpha)
    cells = _two_d(joint)
    px = cells.sum(axis=1)
    if a.kind is AlphaKind.INFINITY:
        return nonnegative(renyi_entropy(px, a) - cond_renyi_entropy(cells, a))
    if a.kind is AlphaKind.ONE:
        return shannon_mi(cells)
    on = px > 0
    tilted = tilted_input(px, a).probs
    cells_tilted = np.zeros_like(cells)
    cells_tilted[on] = tilted[on, None] * cells[on] / px[on, None]
    value = sibson_mi(cells_tilted / cells_tilted.sum(), a).value
    identity = renyi_entropy(px, a) - cond_renyi_entropy(cells, a)
    if abs(value - identity) > 1e-8 * max(1.0, abs(value)):
        logger.warning(
            "Arimoto value %.17g disagrees with H(X) - H(X|Y) = %.17g", value, identity
        )
    return value


def row_divergences(rows: FloatArray, q: FloatArray, alpha: float) -> FloatArray:
    """``D_α(W_x‖Q)`` for every row of `rows`, possibly ``inf``."""
    with np.errstate(invalid="ignore", divide="ignore"):
        tilted = alpha * safe_log(rows) + (1.0 - alpha) * safe_log(q)[None, :]
        terms = np.where(rows > 0, tilted, -np.inf)
        return np.asarray(log_sum_exp(terms, axis=1) / (alpha - 1.0))


def row_divergence_gradient(
    rows: FloatArray, weights: FloatArray, q: FloatArray, alpha: float
) -> FloatArray:
    """Gradient of ``Σ_x w_x D_α(W_x‖Q)`` in Q."""
    with np.errstate(invalid="ignore", divide="ignore", over="ignore"):
        tilted = alpha * safe_log(rows) + (1.0 - alpha) * safe_log(q)[None, :]
        log_terms = np.where(rows > 0, tilted, -np.inf)
        log_s = log_sum_exp(log_terms, axis=1)
        ratio = np.exp(log_terms - safe_log(q)[None, :] - log_s[:, None])
        grad = -(weights[:, None] * np.where(rows > 0, ratio, 0.0)).sum(axis=0)
    return np.nan_to_num(grad, nan=0.0, posinf=1e300, neginf=-1e300)


def csiszar_minimize(
    rows: FloatArray,
    weights: FloatArray,
    alpha: float,
    q0: FloatArray,
    tol: float = DEFAULT_TOL,
    max_iter: int = MAX_ITER,
) -> tuple[float, FloatArray, int, bool]:
    """Projected-gradient minimization of ``Σ_x w_x D_α(W_x‖Q)`` over Q.

    Iterates stay on the face spanned by the union of the row supports, with a
    tiny floor that keeps every divergence finite.

    Returns:
        tuple: Objective, minimizer, iterations, converged flag.
    """
    free = (rows > 0).any(axis=0)
    q = project_simplex_floor(np.where(free, q0, 0.0), free, _FLOOR)

    def objective(qq: FloatArray) -> float:
        return float(np.dot(weights, row_divergences(rows, qq, alpha)))

    value = objective(q)
    step = 1.0
    for it in range(1, max_iter + 1):
        grad = row_divergence_gradient(rows, weights, q, alpha)
        while True:
            cand = project_simplex_floor(q - step * grad, free, _FLOOR)
            cand_value = objective(cand)
            if cand_value <= value + 1e-4 * float(np.dot(grad, cand - q)):
                break
            step *= 0.5
            if step < 1e-30:
                return value, q, it, True
        decrease = value - cand_value
        q, value = cand, cand_value
        step = min(step * 2.0, 1e6)
        if decrease < tol:
            return value, q, it, True
    return value, q, max_iter, False


def csiszar_mi(
    joint: JointPMF | ArrayLike,
    alpha: float | AlphaOrder,
    tol: float = DEFAULT_TOL,
    max_iter: int = MAX_ITER,
) -> float:
    """Csiszár's α-mutual information ``min_Q E_{P_X}[D_α(P_{Y|X}‖Q)]``.

    Raises:
        NoConvergence: If the iteration cap is hit; ``best`` holds the smallest
            objective found.
    """
    a = AlphaOrder.of(alpha)
    cells = _two_d(joint)
    if a.kind is AlphaKind.ONE:
        return shannon_mi(cells)
    if not a.is_finite:
        msg = f"Csiszar's measure takes a finite positive order, got {a}"
        raise ValueError(msg)
    px = cells.sum(axis=1)
    on = px > 0
    rows = cells[on] / px[on, None]
    q0 = sibson_mi(cells, a).q_star.probs
    value, _, iterations, converged = csiszar_minimize(
        rows, px[on], a.value, q0, tol, max_iter
    )
    logger.debug("csiszar_mi: %d iterations, value %.17g", iterations, value)
    if not converged:
        msg = f"Csiszar minimization did not converge in {max_iter} iterations"
        raise NoConvergence(msg, best=value, iterations=iterations)
    return nonnegative(value)


def _lp_tilt(
    log_cells: FloatArray, log_q_other: FloatArray, alpha: float, axis: int
) -> tuple[FloatArray, float]:
    """One exact block update; returns the new log marginal and the objective."""
    other = log_q_other[None, :] if axis == 1 else log_q_other[:, None]
    with np.errstate(invalid="ignore"):
        terms = np.where(
            np.isfinite(log_cells), alpha * log_cells + (1.0 - alpha) * other, -np.inf
        )
    log_a = log_sum_exp(terms, axis=axis) / alpha
    total = float(log_sum_exp(log_a))
    return log_a - total, alpha / (alpha - 1.0) * total


def lapidoth_pfister_mi(
    joint: JointPMF | ArrayLike,
    alpha: float | AlphaOrder,
    restarts: int = LP_RESTARTS,
    tol: float = DEFAULT_TOL,
    max_iter: int = MAX_ITER,
    seed: int = 0,
) -> float:
    """Lapidoth-Pfister α-mutual information ``min D_α(P_{XY}‖Q_X Q_Y)``.

    Alternates the two closed-form block minimizations. The first start is
    ``Q_Y = P_Y``; the remaining ``restarts - 1`` draw ``Q_Y`` from a flat
    Dirichlet. The smallest value found is returned.
    """
    a = AlphaOrder.of(alpha)
    cells = _two_d(joint)
    if a.kind is AlphaKind.ONE:
        return shannon_mi(cells)
    if not a.is_finite:
        msg = f"The Lapidoth-Pfister measure takes a finite positive order, got {a}"
        raise ValueError(msg)
    if restarts < 1:
        msg = f"Need at least one restart, got {restarts}"
        raise ValueError(msg)
    log_cells = safe_log(cells)
    py = cells.sum(axis=0)
    rng = np.random.default_rng(seed)
    best = math.inf
    converged_any = False
    for k in range(restarts):
        q_y = py if k == 0 else rng.dirichlet(np.ones(py.size))
        log_qy = safe_log(np.where(py > 0, q_y, 0.0))
        log_qy -= log_sum_exp(log_qy)
        previous = math.inf
        for _ in range(max_iter):
            log_qx, _ = _lp_tilt(log_cells, log_qy, a.value, axis=1)
            log_qy, value = _lp_tilt(log_cells, log_qx, a.value, axis=0)
            if previous - value < tol:
                converged_any = True
                break
            previous = value
        best = min(best, value)
    logger.debug("lapidoth_pfister_mi: best of %d restarts %.17g", restarts, best)
    if not converged_any:
        msg = f"Alternating minimization did not converge in {max_iter} iterations"
        raise NoConvergence(msg, best=best, iterations=max_iter)
    return nonnegative(best)


def _three_d(triple: JointPMF | ArrayLike) -> FloatArray:
    cells = as_joint(triple).cells
    if cells.ndim != 3:
        msg = "Expected a rank-3 joint indexed (x, y, z)"
        raise ValueError(msg)
    return cells


def _markov_reference(cells: FloatArray) -> FloatArray:
    """``P_{X|Z} P_{Y|Z} P_Z`` indexed ``(x, y, z)``."""
    pxz = cells.sum(axis=1)
    pyz = cells.sum(axis=0)
    pz = cells.sum(axis=(0, 1))
    ref = np.zeros_like(cells)
    on = pz > 0
    ref[:, :, on] = pxz[:, None, on] * pyz[None, :, on] / pz[on]
    return ref


def _conditional_y_given_z(
    cells: FloatArray, a: AlphaOrder
) -> tuple[float, FloatArray]:
    pxz = cells.sum(axis=1)
    pz = cells.sum(axis=(0, 1))
    on = pz > 0
    ny, nz = cells.shape[1], cells.shape[2]
    q = np.zeros((ny, nz))
    if a.kind is AlphaKind.ONE:
        value = _conditional_shannon(cells)
        pyz = cells.sum(axis=0)
        q[:, on] = pyz[:, on] / pz[on]
        return value, q
    if a.kind is AlphaKind.INFINITY:
        with np.errstate(invalid="ignore", divide="ignore"):
            w = np.where(pxz[:, None, :] > 0, cells / pxz[:, None, :], 0.0)
        peaks = w.max(axis=0)
        totals = peaks.sum(axis=0)
        q[:, on] = peaks[:, on] / totals[on]
        return math.log(totals[on].max()), q
    if a.kind is AlphaKind.ZERO:
        mass = np.where(cells > 0, pxz[:, None, :], 0.0).sum(axis=0)
        best = mass.argmax(axis=0)
        for z in np.flatnonzero(on):
            q[best[z], z] = 1.0
        return -math.log(mass.max(axis=0)[on].sum()), q
    alpha = a.value
    with np.errstate(invalid="ignore"):
        terms = np.where(
            cells > 0,
            alpha * safe_log(cells) + (1.0 - alpha) * safe_log(pxz)[:, None, :],
            -np.inf,
        )
    log_a = log_sum_exp(terms, axis=0) / alpha
    log_inner = log_sum_exp(log_a, axis=0)
    value = float(log_sum_exp(alpha * log_inner[on])) / (alpha - 1.0)
    q[:, on] = np.exp(log_a[:, on] - log_inner[None, on])
    q[:, on] /= q[:, on].sum(axis=0, keepdims=True)
    return value, q


def _conditional_z(cells: FloatArray, a: AlphaOrder) -> tuple[float, FloatArray]:
    pz = cells.sum(axis=(0, 1))
    on = pz > 0
    # P_{X|Z} P_{Y|Z}, zero where P_Z(z) = 0
    ref = np.zeros_like(cells)
    ref[:, :, on] = _markov_reference(cells)[:, :, on] / pz[on]
    if a.kind is AlphaKind.ONE:
        return _conditional_shannon(cells), pz / pz.sum()
    if a.kind is AlphaKind.INFINITY:
        with np.errstate(invalid="ignore", divide="ignore"):
            ratio = np.where(cells > 0, cells / np.where(ref > 0, ref, 1.0), 0.0)
        peaks = ratio.max(axis=(0, 1))
        return math.log(peaks.sum()), peaks / peaks.sum()
    if a.kind is AlphaKind.ZERO:
        mass = np.where(cells > 0, ref, 0.0).sum(axis=(0, 1))
        z = int(np.argmax(mass))
        q = np.zeros(cells.shape[2])
        q[z] = 1.0
        return -math.log(mass[z]), q
    alpha = a.value
    with np.errstate(invalid="ignore", divide="ignore"):
        terms = np.where(
            cells > 0, alpha * safe_log(cells) + (1.0 - alpha) * safe_log(ref), -np.inf
        )
    log_c = log_sum_exp(terms, axis=(0, 1)) / alpha
    value = alpha / (alpha - 1.0) * float(log_sum_exp(log_c))
    return value, _normalized(log_c)


def _conditional_shannon(cells: FloatArray) -> float:
    ref = _markov_reference(cells)
    with np.errstate(divide="ignore"):
        return nonnegative(float(rel_entr(cells, ref).sum()))


def markov_product(
    triple: JointPMF | ArrayLike, q_star: ArrayLike, variant: ConditionalVariant
) -> JointPMF:
    """The Markov-chain reference measure built from a tilting.

    ``P_{X|Z} Q_{Y|Z} P_Z`` for the ``Y|Z`` variant, ``P_{X|Z} P_{Y|Z} Q_Z``
    for the ``Z`` variant.
    """
    cells = _three_d(triple)
    q = np.asarray(q_star, dtype=np.float64)
    pz = cells.sum(axis=(0, 1))
    if variant is ConditionalVariant.MIN_OVER_Q_Y_GIVEN_Z:
        product = cells.sum(axis=1)[:, None, :] * q[None, :, :]
    else:
        product = np.zeros_like(cells)
        on = pz > 0
        product[:, :, on] = _markov_reference(cells)[:, :, on] / pz[on] * q[on]
    return JointPMF(product / product.sum())


def conditional_sibson_mi(
    triple: JointPMF | ArrayLike,
    alpha: float | AlphaOrder,
    variant: ConditionalVariant = ConditionalVariant.MIN_OVER_Q_Y_GIVEN_Z,
) -> ConditionalResult:
    """Conditional Sibson α-mutual information of a joint indexed ``(x, y, z)``.

    ``MIN_OVER_Q_Y_GIVEN_Z`` minimizes ``D_α(P_{XYZ}‖P_{X|Z} Q_{Y|Z} P_Z)``,
    whose order-infinity limit is the conditional maximal leakage;
    ``MIN_OVER_Q_Z`` minimizes ``D_α(P_{XYZ}‖P_{X|Z} P_{Y|Z} Q_Z)``. Values of z
    with ``P_Z(z) = 0`` are skipped.

    Args:
        triple (JointPMF | ArrayLike): Rank-3 joint.
        alpha (float | AlphaOrder): Order.
        variant (ConditionalVariant): Which factor to optimize.

    Returns:
        ConditionalResult: Value in nats and the optimal tilting.
    """
    a = AlphaOrder.of(alpha)
    cells = _three_d(triple)
    if variant is ConditionalVariant.MIN_OVER_Q_Y_GIVEN_Z:
        value, q = _conditional_y_given_z(cells, a)
    else:
        value, q = _conditional_z(cells, a)
    value = nonnegative(value)
    check = renyi_divergence(
        cells.ravel(), markov_product(cells, q, variant).cells.ravel(), a
    )
    if abs(check - value) > 1e-9 * max(1.0, value):
        logger.warning(
            "Conditional value %.17g differs from its tilting divergence %.17g",
            value,
            check,
        )
    return ConditionalResult(value, q, variant, a)


def conditional_maximal_leakage(triple: JointPMF | ArrayLike) -> float:
    """``log max_z Σ_y max_x P_{Y|XZ}(y|x,z)``."""
    return conditional_sibson_mi(triple, math.inf).value


def product_channel(channels: Sequence[Channel | ArrayLike]) -> Channel:
    """Channel from X to ``(Y_1, ..., Y_n)`` with outputs independent given X."""
    if not channels:
        msg = "Need at least one channel"
        raise ValueError(msg)
    mats = [as_channel(c).rows for c in channels]
    rows = mats[0]
    for m in mats[1:]:
        if m.shape[0] != rows.shape[0]:
            msg = "All channels must share the input alphabet"
            raise ValueError(msg)
        rows = (rows[:, :, None] * m[:, None, :]).reshape(rows.shape[0], -1)
    return Channel(rows / rows.sum(axis=1, keepdims=True))


def tensorization_check(
    channel_list: Sequence[Channel | ArrayLike],
    prior: ProbVector | ArrayLike,
    alpha: float,
    betas: Sequence[float],
) -> tuple[float, float]:
    """Both sides of the Hölder tensorization inequality.

    ``lhs = (α-1)·I_α(X, Y^n)`` on the product channel and
    ``rhs = Σ_i (α - 1/β_i)·I_{αβ_i}(X, Y_i)``; the inequality is ``lhs <= rhs``.

    Raises:
        BadWeights: If the ``1/β_i`` do not sum to one.
    """
    if len(betas) != len(channel_list) or any(b <= 0 for b in betas):
        msg = "Need one positive beta per channel"
        raise BadWeights(msg)
    if abs(sum(1.0 / b for b in betas) - 1.0) > 1e-9:
        msg = f"Reciprocal weights must sum to 1, got {sum(1.0 / b for b in betas)}"
        raise BadWeights(msg)
    px = as_prob_vector(prior).probs
    joint_all = px[:, None] * product_channel(channel_list).rows
    lhs = (alpha - 1.0) * sibson_mi(joint_all / joint_all.sum(), alpha).value
    rhs = 0.0
    for channel, beta in zip(channel_list, betas):
        joint_i = px[:, None] * as_channel(channel).rows
        info = sibson_mi(joint_i / joint_i.sum(), alpha * beta).value
        rhs += (alpha - 1.0 / beta) * info
    return lhs, rhs


def independence_dpi_check(
    px: ProbVector | ArrayLike,
    pz: ProbVector | ArrayLike,
    coupling: Channel | ArrayLike,
    alpha: float | AlphaOrder,
) -> tuple[float, float]:
    """``(I_α(X,(Y,Z)), I_α((X,Z),Y))`` for independent X and Z.

    `coupling` has one row per pair ``(x, z)`` in row-major order
    (``x * |Z| + z``).
    """
    p_x = as_prob_vector(px).probs
    p_z = as_prob_vector(pz).probs
    w = as_channel(coupling).rows
    if w.shape[0] != p_x.size * p_z.size:
        msg = f"Coupling needs {p_x.size * p_z.size} rows, got {w.shape[0]}"
        raise ValueError(msg)
    cells = (np.outer(p_x, p_z).ravel()[:, None] * w).reshape(p_x.size, p_z.size, -1)
    x_vs_yz = np.transpose(cells, (0, 2, 1)).reshape(p_x.size, -1)
    xz_vs_y = cells.reshape(p_x.size * p_z.size, -1)
    lhs = sibson_mi(x_vs_yz / x_vs_yz.sum(), alpha).value
    rhs = sibson_mi(xz_vs_y / xz_vs_y.sum(), alpha).value
    return lhs, rhs


def sibson_mi_gaussian(sigma2_x: float, sigma2_y: float, alpha: float) -> float:
    """``I_α(X, X+N) = ½ log(1 + α σ²_X/σ²_N)`` for Gaussian X and noise N.

    Examples:
        ```pycon
        >>> round(sibson_mi_gaussian(1.0, 1.0, 2.0), 4)
        0.5493

        ```

    Args:
        sigma2_x (float): Input variance.
        sigma2_y (float): Noise variance.
        alpha (float): Positive order.

    Returns:
        float: The value in nats.
    """
    if sigma2_x <= 0 or sigma2_y <= 0:
        msg = "Variances must be positive"
        raise ValueError(msg)
    if alpha < 0:
        msg = f"Order must be nonnegative, got {alpha}"
        raise ValueError(msg)
    if math.isinf(alpha):
        return math.inf
    return 0.5 * math.log1p(alpha * sigma2_x / sigma2_y)


def sibson_mi_gaussian_quadrature(
    sigma2_x: float,
    sigma2_y: float,
    alpha: float | AlphaOrder,
    points: int = 2001,
    span: float = 8.0,
) -> float:
    """Discretized oracle for :func:`sibson_mi_gaussian`.

    X and Y = X + N are put on `points`-point grids over ``±span`` standard
    deviations and the discrete closed form is applied to the gridded joint.
    """
    if sigma2_x <= 0 or sigma2_y <= 0:
        msg = "Variances must be positive"
        raise ValueError(msg)
    sx = math.sqrt(sigma2_x)
    sy = math.sqrt(sigma2_x + sigma2_y)
    x = np.linspace(-span * sx, span * sx, points)
    y = np.linspace(-span * sy, span * sy, points)
    log_p = norm.logpdf(x, scale=sx)[:, None] + norm.logpdf(
        y[None, :] - x[:, None], scale=math.sqrt(sigma2_y)
    )
    cells = np.exp(log_p - log_sum_exp(log_p))
    return sibson_mi(cells / cells.sum(), alpha).value
