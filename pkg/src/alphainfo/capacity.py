"""Channel capacities of every order, error exponents and α-NML prediction.

Capacities are returned as a :class:`CapacityResult` that carries both a
capacity-achieving input and the minimax center Q. `gap` is the certified
distance between the two sides of

    sup_P I_α(P) = inf_Q max_x D_α(P_{Y|X=x}‖Q)

so ``value - gap <= I_α(optimal_input)`` and
``max_x D_α(P_{Y|X=x}‖optimal_output) <= value``.
"""

from __future__ import annotations

import enum
import functools
import logging
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.optimize import linprog

from .errors import NoConvergence, NotSymmetric
from .optim import grid_golden_max, project_simplex_floor
from .prob_core import (
    AlphaKind,
    AlphaOrder,
    Channel,
    ProbVector,
    as_channel,
    as_joint,
    as_prob_vector,
    log_sum_exp,
    nonnegative,
    safe_log,
)
from .renyi import renyi_divergence
from .sibson import (
    arimoto_mi,
    csiszar_minimize,
    lapidoth_pfister_mi,
    row_divergence_gradient,
    row_divergences,
    shannon_mi,
    sibson_mi,
)

TYPE_CHECKING = False
if TYPE_CHECKING:
    from collections.abc import Callable

    from numpy.typing import ArrayLike, NDArray

    from .prob_core import JointPMF

    FloatArray = NDArray[np.float64]

__all__ = [
    "CapacityResult",
    "ExponentCurve",
    "ExponentKind",
    "alpha_nml",
    "arimoto_capacity",
    "csiszar_capacity",
    "error_exponents",
    "gallager_e0",
    "is_alpha_weakly_symmetric",
    "lapidoth_pfister_capacity",
    "maximal_alpha_leakage",
    "shannon_capacity",
    "sibson_capacity",
    "symmetric_capacity",
    "zero_error_feedback_capacity",
]

logger = logging.getLogger(__name__)

DEFAULT_TOL = 1e-8
MAX_ITER = 100_000
#: Projected-subgradient steps spent shrinking the minimax side after the ascent.
POLISH_STEPS = 200
SPHERE_PACKING_RHO = (1e-6, 1e3)
RANDOM_CODING_RHO = (1e-6, 1.0)
RHO_GRID_POINTS = 64


@dataclass(frozen=True, eq=False)
class CapacityResult:
    """Capacity in nats with its two optimizers."""

    value: float
    optimal_input: ProbVector
    optimal_output: ProbVector
    iterations: int = 0
    gap: float = 0.0

    def __float__(self) -> float:
        """Return the capacity value."""
        return self.value


class ExponentKind(enum.Enum):
    """Which error exponent to evaluate."""

    SPHERE_PACKING = "sphere-packing"
    RANDOM_CODING = "random-coding"


@dataclass(frozen=True, eq=False)
class ExponentCurve:
    """Error exponent evaluated at a vector of rates (nats per use)."""

    rates: FloatArray
    exponents: FloatArray
    kind: ExponentKind

    def rows(self) -> list[tuple[float, float]]:
        """Return ``(rate, exponent)`` pairs."""
        return [(float(r), float(e)) for r, e in zip(self.rates, self.exponents)]


class _Ascent(NamedTuple):
    lower: float
    upper: float
    input: FloatArray
    output: FloatArray
    iterations: int


def _defined_rows(channel: Channel | ArrayLike) -> FloatArray:
    ch = as_channel(channel)
    return np.asarray(ch.rows[ch.defined])


def _normalized(log_w: FloatArray) -> FloatArray:
    w = np.exp(log_w - log_sum_exp(log_w))
    return np.asarray(w / w.sum())


def _exponentiated_ascent(
    evaluate: Callable[[FloatArray], tuple[float, FloatArray, FloatArray]],
    p0: FloatArray,
    tol: float,
    max_iter: int,
    label: str,
) -> _Ascent:
    """Mirror ascent ``P ∝ P·exp(η·D)`` on a lower value with certified gap.

    `evaluate` maps an input law to ``(lower, scores, center)`` where `scores`
    holds ``D_α(W_x‖center)`` for every x, so ``max(scores)`` is an upper value.
    A step that lowers the lower value is rejected and halves η.
    """
    p = p0
    lower, scores, center = evaluate(p)
    upper, best_center = float(scores.max()), center
    step = 1.0
    for it in range(1, max_iter + 1):
        if upper - lower <= tol:
            logger.debug("%s: gap %.3g after %d iterations", label, upper - lower, it)
            return _Ascent(lower, upper, p, best_center, it)
        cand = _normalized(safe_log(p) + step * (scores - scores.max()))
        c_lower, c_scores, c_center = evaluate(cand)
        if float(c_scores.max()) < upper:
            upper, best_center = float(c_scores.max()), c_center
        if c_lower >= lower:
            p, lower, scores = cand, c_lower, c_scores
            step = min(step * 2.0, 1e4)
        else:
            step *= 0.5
            if step < 1e-12:
                break
    logger.warning("%s: stopped with gap %.3g", label, upper - lower)
    return _Ascent(lower, upper, p, best_center, max_iter)


def _sibson_scores(
    rows: FloatArray, alpha: float
) -> Callable[[FloatArray], tuple[float, FloatArray, FloatArray]]:
    log_w = safe_log(rows)

    def evaluate(p: FloatArray) -> tuple[float, FloatArray, FloatArray]:
        with np.errstate(invalid="ignore"):
            terms = np.where(rows > 0, safe_log(p)[:, None] + alpha * log_w, -np.inf)
        log_q = log_sum_exp(terms, axis=0) / alpha
        log_total = float(log_sum_exp(log_q))
        q = np.exp(log_q - log_total)
        q /= q.sum()
        lower = alpha / (alpha - 1.0) * log_total
        return lower, row_divergences(rows, q, alpha), q

    return evaluate


def _polish_center(
    rows: FloatArray, q: FloatArray, alpha: float, upper: float
) -> tuple[float, FloatArray]:
    """Projected subgradient on ``max_x D_α(W_x‖Q)`` with step ``c/√t``."""
    free = (rows > 0).any(axis=0)
    best, best_q = upper, q
    current = q
    for t in range(1, POLISH_STEPS + 1):
        scores = row_divergences(rows, current, alpha)
        worst = int(np.argmax(scores))
        weights = np.zeros(rows.shape[0])
        weights[worst] = 1.0
        grad = row_divergence_gradient(rows, weights, current, alpha)
        scale = float(np.abs(grad).max())
        if scale == 0:
            break
        current = project_simplex_floor(
            current - 0.1 / math.sqrt(t) * grad / scale * current.max(), free, 1e-15
        )
        value = float(row_divergences(rows, current, alpha).max())
        if value < best:
            best, best_q = value, current
    return best, best_q


def sibson_capacity(
    channel: Channel | ArrayLike,
    alpha: float | AlphaOrder,
    tol: float = DEFAULT_TOL,
    max_iter: int = MAX_ITER,
) -> CapacityResult:
    """``sup_P I_α(P, channel)``, equal to the minimax Rényi radius.

    Finite orders run exponentiated-gradient ascent on the input law, whose
    stationary points are certified by the duality gap
    ``max_x D_α(W_x‖Q*(P)) - I_α(P)``, and then a projected-subgradient pass on
    the center Q. Order 1 is Blahut-Arimoto, order infinity the closed form
    ``log Σ_y max_x W(y|x)``, order 0 the zero-error feedback program.

    Examples:
        ```pycon
        >>> result = sibson_capacity([[1.0, 0.0], [0.0, 1.0]], 2.0)
        >>> round(result.value, 9) == round(math.log(2), 9)
        True

        ```

    Raises:
        NoConvergence: If the gap is still above `tol` at the iteration cap.
    """
    a = AlphaOrder.of(alpha)
    if a.kind is AlphaKind.ONE:
        return shannon_capacity(channel, tol, max_iter)
    if a.kind is AlphaKind.ZERO:
        return zero_error_feedback_capacity(channel, tol)
    rows = _defined_rows(channel)
    n = rows.shape[0]
    if a.kind is AlphaKind.INFINITY:
        peaks = rows.max(axis=0)
        return CapacityResult(
            math.log(peaks.sum()),
            ProbVector(np.full(n, 1.0 / n)),
            ProbVector(peaks / peaks.sum()),
        )
    uniform = np.full(n, 1.0 / n)
    run = _exponentiated_ascent(
        _sibson_scores(rows, a.value), uniform, tol, max_iter, "sibson_capacity"
    )
    upper, center = run.upper, run.output
    if upper - run.lower > tol:
        upper, center = _polish_center(rows, center, a.value, upper)
    gap = nonnegative(upper - run.lower)
    if gap > tol:
        msg = f"Capacity of order {a} did not converge, gap {gap:.3g}"
        raise NoConvergence(msg, best=upper, iterations=run.iterations, gap=gap)
    return CapacityResult(
        upper, ProbVector(run.input), ProbVector(center), run.iterations, gap
    )


def shannon_capacity(
    channel: Channel | ArrayLike, tol: float = DEFAULT_TOL, max_iter: int = MAX_ITER
) -> CapacityResult:
    """Blahut-Arimoto iteration for the order-1 capacity."""
    rows = _defined_rows(channel)
    n = rows.shape[0]
    p = np.full(n, 1.0 / n)
    for it in range(1, max_iter + 1):
        q = p @ rows
        scores = _row_divergences_kl(rows, q)
        lower = float(np.dot(p, scores))
        upper = float(scores.max())
        if upper - lower <= tol:
            gap = nonnegative(upper - lower)
            logger.debug("shannon_capacity: gap %.3g after %d iterations", gap, it)
            return CapacityResult(
                upper, ProbVector(p), ProbVector(q / q.sum()), it, gap
            )
        p = _normalized(safe_log(p) + scores)
    msg = f"Blahut-Arimoto did not converge in {max_iter} iterations"
    raise NoConvergence(msg, best=upper, iterations=max_iter, gap=upper - lower)


def _row_divergences_kl(rows: FloatArray, q: FloatArray) -> FloatArray:
    """``D(W_x‖q)`` for every row."""
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(rows > 0, rows * (safe_log(rows) - safe_log(q)[None, :]), 0.0)
    return np.asarray(terms.sum(axis=1))


def is_alpha_weakly_symmetric(
    channel: Channel | ArrayLike, alpha: float | AlphaOrder, tol: float = 1e-9
) -> bool:
    """Rows are permutations of one another and column α-power sums agree.

    Examples:
        ```pycon
        >>> is_alpha_weakly_symmetric([[0.75, 0.25], [0.25, 0.75]], 2.0)
        True
        >>> is_alpha_weakly_symmetric([[0.75, 0.25, 0.0], [0.0, 0.25, 0.75]], 2.0)
        False

        ```
    """
    a = AlphaOrder.of(alpha)
    rows = _defined_rows(channel)
    ordered = np.sort(rows, axis=1)
    if np.any(np.abs(ordered - ordered[0]) > tol):
        return False
    if a.kind is AlphaKind.INFINITY:
        sums = rows.max(axis=0)
    elif a.kind is AlphaKind.ZERO:
        sums = (rows > 0).sum(axis=0).astype(np.float64)
    else:
        sums = (rows**a.value).sum(axis=0)
    return bool(np.ptp(sums) <= tol)


def symmetric_capacity(
    channel: Channel | ArrayLike, alpha: float | AlphaOrder
) -> float:
    """Capacity of an α-weakly symmetric channel: I_α at the uniform input.

    Raises:
        NotSymmetric: If the channel fails :func:`is_alpha_weakly_symmetric`.
    """
    if not is_alpha_weakly_symmetric(channel, alpha):
        msg = f"Channel is not weakly symmetric at order {alpha}"
        raise NotSymmetric(msg)
    rows = _defined_rows(channel)
    return sibson_mi(rows / rows.shape[0], alpha).value


def zero_error_feedback_capacity(
    channel: Channel | ArrayLike, tol: float = DEFAULT_TOL
) -> CapacityResult:
    """``max_P min_y -log P({x: W(y|x) > 0})`` as a linear program.

    Minimizes t subject to ``P(S_y) <= t`` for every reachable y; the dual
    multipliers of those constraints form the minimax center Q.

    Raises:
        NoConvergence: If the solver reports anything but an optimum.
    """
    rows = _defined_rows(channel)
    n = rows.shape[0]
    reach = (rows > 0).T
    reach = reach[reach.any(axis=1)].astype(np.float64)
    m = reach.shape[0]
    res = linprog(
        c=np.r_[np.zeros(n), 1.0],
        A_ub=np.c_[reach, -np.ones(m)],
        b_ub=np.zeros(m),
        A_eq=np.r_[np.ones(n), 0.0][None, :],
        b_eq=[1.0],
        bounds=[(0.0, None)] * n + [(None, None)],
        method="highs",
        options={"primal_feasibility_tolerance": min(tol, 1e-7)},
    )
    if res.status != 0:
        msg = f"Zero-error program failed: {res.message}"
        raise NoConvergence(msg, iterations=int(res.nit))
    p = np.clip(res.x[:n], 0.0, None)
    duals = np.clip(-np.asarray(res.ineqlin.marginals), 0.0, None)
    q = np.zeros(rows.shape[1])
    q[(rows > 0).any(axis=0)] = duals
    return CapacityResult(
        nonnegative(-math.log(float(res.x[n]))),
        ProbVector(p / p.sum()),
        ProbVector(q / q.sum()),
        int(res.nit),
        0.0,
    )


def gallager_e0(
    channel: Channel | ArrayLike, input: ProbVector | ArrayLike, rho: float
) -> float:
    """Gallager's function ``-log Σ_y (Σ_x P(x) W(y|x)^{1/(1+ρ)})^{1+ρ}``.

    Equals ``ρ·I_{1/(1+ρ)}(P, W)``.

    Examples:
        ```pycon
        >>> round(gallager_e0([[0.75, 0.25], [0.25, 0.75]], [0.5, 0.5], 1.0), 4)
        0.0693

        ```
    """
    if not 0.0 <= rho < math.inf:
        msg = f"rho must be finite and nonnegative, got {rho}"
        raise ValueError(msg)
    rows = as_channel(channel).rows
    p = as_prob_vector(input).probs
    inner = p @ rows ** (1.0 / (1.0 + rho))
    return nonnegative(-math.log(float(np.sum(inner ** (1.0 + rho)))))


def error_exponents(
    channel: Channel | ArrayLike,
    rates: ArrayLike,
    kind: ExponentKind | str = ExponentKind.SPHERE_PACKING,
    tol: float = DEFAULT_TOL,
) -> ExponentCurve:
    """``sup_ρ ρ·C_{1/(1+ρ)} - ρR`` at every rate R.

    ρ ranges over ``[1e-6, 1e3]`` for sphere packing and ``[1e-6, 1]`` for
    random coding; a 64-point log grid brackets the maximum and a golden
    section refines it. The ``ρ = 0`` end contributes the value 0. Capacities
    are cached per ρ across rates.
    """
    kind = ExponentKind(kind)
    r = np.asarray(rates, dtype=np.float64).ravel()
    if np.any(r < 0) or np.any(~np.isfinite(r)):
        msg = "Rates must be finite and nonnegative"
        raise ValueError(msg)
    sphere = kind is ExponentKind.SPHERE_PACKING
    lo, hi = SPHERE_PACKING_RHO if sphere else RANDOM_CODING_RHO

    @functools.cache
    def capacity(rho: float) -> float:
        return sibson_capacity(channel, 1.0 / (1.0 + rho), tol).value

    exponents = np.empty_like(r)
    for i, rate in enumerate(r):
        _, best = grid_golden_max(
            lambda rho, rate=rate: rho * (capacity(rho) - rate), lo, hi, RHO_GRID_POINTS
        )
        exponents[i] = nonnegative(best)
    return ExponentCurve(r, exponents, kind)


def alpha_nml(
    models: Channel | ArrayLike,
    prior: ProbVector | ArrayLike,
    alpha: float | AlphaOrder,
) -> tuple[ProbVector, float]:
    """The α-NML predictor and its α-regret.

    The predictor is ``p̂ ∝ (Σ_θ prior(θ) p_θ^α)^{1/α}``.

    The regret is ``max_θ D_α(p_θ‖p̂)``. Order infinity gives the Shtarkov
    normalized maximum likelihood, whose regret is the log Shtarkov sum.

    Examples:
        ```pycon
        >>> predictor, regret = alpha_nml([[0.2, 0.8]], [1.0], 2.0)
        >>> predictor.probs.round(12).tolist(), regret
        ([0.2, 0.8], 0.0)

        ```
    """
    a = AlphaOrder.of(alpha)
    if a.kind is not AlphaKind.INFINITY and a.value < 1:
        msg = f"alpha-NML needs alpha >= 1, got {a}"
        raise ValueError(msg)
    rows = as_channel(models).rows
    w = as_prob_vector(prior).probs
    if w.size != rows.shape[0]:
        msg = "The prior must weight every model"
        raise ValueError(msg)
    predictor = sibson_mi(w[:, None] * rows, a).q_star
    regret = max(renyi_divergence(row, predictor, a) for row in rows)
    return predictor, regret


def _finite_or_limit(a: AlphaOrder, name: str) -> None:
    if a.kind is AlphaKind.ZERO:
        msg = f"{name} is not defined at order 0"
        raise ValueError(msg)


def arimoto_capacity(
    channel: Channel | ArrayLike, alpha: float | AlphaOrder, tol: float = DEFAULT_TOL
) -> CapacityResult:
    """``sup_P`` of Arimoto's measure, reached at ``P ∝ P*^{1/α}``.

    `P*` is the Sibson-optimal input; its inverse tilt makes the Arimoto value
    coincide with the Sibson capacity.
    """
    a = AlphaOrder.of(alpha)
    _finite_or_limit(a, "Arimoto capacity")
    sibson = sibson_capacity(channel, a, tol)
    rows = _defined_rows(channel)
    p_star = sibson.optimal_input.probs
    if a.is_finite:
        p = _normalized(np.where(p_star > 0, safe_log(p_star) / a.value, -np.inf))
    else:
        p = p_star
    value = arimoto_mi(p[:, None] * rows, a)
    return CapacityResult(
        value, ProbVector(p), sibson.optimal_output, sibson.iterations, sibson.gap
    )


def csiszar_capacity(
    channel: Channel | ArrayLike,
    alpha: float | AlphaOrder,
    tol: float = DEFAULT_TOL,
    max_iter: int = 10_000,
) -> CapacityResult:
    """``sup_P min_Q Σ_x P(x) D_α(W_x‖Q)`` by exponentiated ascent.

    The ascent direction is the Danskin gradient ``D_α(W_x‖Q_P)`` at the inner
    minimizer ``Q_P``, warm-started from the previous one.

    Raises:
        NoConvergence: If the gap is still above `tol` at the cap.
    """
    a = AlphaOrder.of(alpha)
    if a.kind is AlphaKind.ONE:
        return shannon_capacity(channel, tol)
    if not a.is_finite:
        msg = f"Csiszar capacity takes a finite positive order, got {a}"
        raise ValueError(msg)
    rows = _defined_rows(channel)
    n = rows.shape[0]
    warm = [np.asarray(rows.mean(axis=0))]

    def evaluate(p: FloatArray) -> tuple[float, FloatArray, FloatArray]:
        value, q, _, _ = csiszar_minimize(rows, p, a.value, warm[0], tol * 1e-3)
        warm[0] = q
        return value, row_divergences(rows, q, a.value), q

    uniform = np.full(n, 1.0 / n)
    run = _exponentiated_ascent(evaluate, uniform, tol, max_iter, "csiszar_capacity")
    gap = nonnegative(run.upper - run.lower)
    if gap > tol:
        msg = f"Csiszar capacity did not converge, gap {gap:.3g}"
        raise NoConvergence(msg, best=run.upper, iterations=run.iterations, gap=gap)
    return CapacityResult(
        run.upper, ProbVector(run.input), ProbVector(run.output), run.iterations, gap
    )


def lapidoth_pfister_capacity(
    channel: Channel | ArrayLike, alpha: float, tol: float = DEFAULT_TOL
) -> CapacityResult:
    """``sup_P`` of the Lapidoth-Pfister measure for α > 1.

    For α > 1 the Sibson-optimal input also maximizes the Lapidoth-Pfister
    measure, so the value is the alternating minimization at that input.
    """
    if not 1.0 < alpha < math.inf:
        msg = f"Lapidoth-Pfister capacity needs alpha in (1, inf), got {alpha}"
        raise ValueError(msg)
    sibson = sibson_capacity(channel, alpha, tol)
    rows = _defined_rows(channel)
    p = sibson.optimal_input.probs
    value = lapidoth_pfister_mi(p[:, None] * rows, alpha, tol=tol * 1e-3)
    return CapacityResult(
        value,
        sibson.optimal_input,
        sibson.optimal_output,
        sibson.iterations,
        sibson.gap,
    )


def maximal_alpha_leakage(
    joint: JointPMF | ArrayLike, alpha: float | AlphaOrder, tol: float = DEFAULT_TOL
) -> float:
    """Maximal α-leakage of a joint, for α >= 1.

    ``I(X;Y)`` at order 1, the Sibson capacity of ``P_{Y|X}`` over inputs
    supported on ``supp(P_X)`` for α in (1, inf), maximal leakage at infinity.
    """
    a = AlphaOrder.of(alpha)
    cells = as_joint(joint).cells
    if a.kind is AlphaKind.ONE:
        return shannon_mi(cells)
    if a.kind is not AlphaKind.INFINITY and a.value < 1:
        msg = f"Maximal alpha-leakage needs alpha >= 1, got {a}"
        raise ValueError(msg)
    if cells.ndim != 2:
        msg = "Expected a 2-d joint indexed (x, y)"
        raise ValueError(msg)
    px = cells.sum(axis=1)
    on = px > 0
    rows = cells[on] / px[on, None]
    if a.kind is AlphaKind.INFINITY:
        return sibson_mi(cells, a).value
    return sibson_capacity(rows, a, tol).value
