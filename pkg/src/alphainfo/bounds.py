"""Probability and risk bounds driven by α-mutual information.

Upper bounds on probabilities come back as :class:`~alphainfo.formatting.Clamped`
pairs so callers see both the clamped value and the raw formula.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import simpson
from scipy.special import gammaln, xlogy

from .errors import CenterViolation, NonpositiveFunction
from .formatting import Clamped, clamp_probability
from .optim import golden_max_on_grid, grid_golden_max
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
from .renyi import (
    binary_d_alpha_inverse,
    log_phi_entropy,
    renyi_divergence,
    renyi_entropy,
)
from .sibson import arimoto_mi, conditional_sibson_mi, sibson_mi

TYPE_CHECKING = False
if TYPE_CHECKING:
    from collections.abc import Callable, Sequence

    from numpy.typing import ArrayLike, NDArray

    from .prob_core import JointPMF

    FloatArray = NDArray[np.float64]

__all__ = [
    "BayesRiskProblem",
    "EventMask",
    "FanoLikeResult",
    "bayes_risk_lower_bound",
    "bernoulli_bias_bayes_bound",
    "bernoulli_bias_info",
    "bernoulli_bias_leakage",
    "bernoulli_bias_problem",
    "bernoulli_bias_quadrature",
    "bernoulli_bias_risk_bounds",
    "bernoulli_bias_sibson",
    "conditional_dependence_bound",
    "dependence_bound",
    "dependence_bound_function",
    "dependence_lower_bound",
    "exact_map_error",
    "fano_arimoto_bound",
    "fano_dalpha_bound",
    "fano_like_bound",
    "gen_error_bound",
    "generalized_fano",
    "hypothesis_testing_bound",
    "shattering_witness",
    "tpc_bounded_constant",
    "tpc_check",
]

logger = logging.getLogger(__name__)

#: Range of ``log γ`` searched by :func:`fano_like_bound`.
LOG_GAMMA_RANGE = (-20.0, 20.0)
KAPPA_GRID = np.linspace(-10.0, 10.0, 101)
CENTER_TOL = 1e-12
_CONDITION_TOL = 1e-12
DEFAULT_ALPHA_GRID = (1.25, 1.5, 2.0, 3.0, 5.0, 10.0, 20.0, 50.0, 100.0, math.inf)
DEFAULT_RHO_GRID = tuple(np.geomspace(1e-5, 0.5, 64))


@dataclass(frozen=True, eq=False)
class EventMask:
    """Indicator of an event E over ``(x, y)`` or ``(x, y, z)``."""

    mask: NDArray[np.bool_]

    def __post_init__(self) -> None:
        """Validate and freeze the mask."""
        mask = np.array(self.mask, dtype=bool)
        if mask.ndim not in {2, 3}:
            msg = f"An event mask is 2-d or 3-d, got shape {mask.shape}"
            raise ValueError(msg)
        mask.setflags(write=False)
        object.__setattr__(self, "mask", mask)

    def probability(self, cells: FloatArray) -> float:
        """``P(E)`` under a joint of matching shape."""
        if cells.shape != self.mask.shape:
            msg = f"Event shape {self.mask.shape} does not match joint {cells.shape}"
            raise ValueError(msg)
        return float(cells[self.mask].sum())


def _as_event(event: EventMask | ArrayLike) -> EventMask:
    return event if isinstance(event, EventMask) else EventMask(np.asarray(event))


def _beta_factor(a: AlphaOrder) -> float:
    """``(α-1)/α``, which is ``1/β`` and equals 1 at infinity."""
    return 1.0 if a.kind is AlphaKind.INFINITY else (a.value - 1.0) / a.value


def _above_one(alpha: float | AlphaOrder) -> AlphaOrder:
    a = AlphaOrder.of(alpha)
    if a.kind is not AlphaKind.INFINITY and not (a.is_finite and a.value > 1):
        msg = f"This bound needs alpha > 1, got {a}"
        raise ValueError(msg)
    return a


def _two_d(joint: JointPMF | ArrayLike) -> FloatArray:
    cells = as_joint(joint).cells
    if cells.ndim != 2:
        msg = "Expected a 2-d joint indexed (x, y)"
        raise ValueError(msg)
    return cells


def dependence_bound(
    joint: JointPMF | ArrayLike, event: EventMask | ArrayLike, alpha: float | AlphaOrder
) -> tuple[float, float]:
    """``P_XY(E) <= max_y P_X(E_y)^{1/β} · exp((α-1)/α · I_α(X,Y))``.

    The max runs over outputs with ``P_Y(y) > 0``; at order infinity the
    factor is ``max_y P_X(E_y) · exp(ML)``.

    Examples:
        ```pycon
        >>> identity = [[0.5, 0.0], [0.0, 0.5]]
        >>> event = [[True, False], [False, True]]
        >>> lhs, rhs = dependence_bound(identity, event, math.inf)
        >>> lhs, round(rhs, 12)
        (1.0, 1.0)

        ```

    Returns:
        tuple[float, float]: The event probability and the bound.
    """
    a = _above_one(alpha)
    cells = _two_d(joint)
    e = _as_event(event)
    lhs = e.probability(cells)
    px, py = cells.sum(axis=1), cells.sum(axis=0)
    sections = (px[:, None] * e.mask).sum(axis=0)[py > 0]
    inv_beta = _beta_factor(a)
    info = sibson_mi(cells, a).value
    rhs = float(sections.max()) ** inv_beta * math.exp(inv_beta * info)
    return lhs, rhs


def dependence_bound_function(
    joint: JointPMF | ArrayLike, f: ArrayLike, alpha: float | AlphaOrder
) -> tuple[float, float]:
    """Function form of :func:`dependence_bound` for a nonnegative f.

    ``E_P[f] <= max_y E_{P_X}[f(X,y)^β]^{1/β} · exp((α-1)/α · I_α)``.
    """
    a = _above_one(alpha)
    cells = _two_d(joint)
    table = np.asarray(f, dtype=np.float64)
    if table.shape != cells.shape:
        msg = "f does not match the joint"
        raise ValueError(msg)
    if np.any(table < 0) or np.any(~np.isfinite(table)):
        msg = "The dependence bound takes a finite nonnegative f"
        raise NonpositiveFunction(msg)
    px, py = cells.sum(axis=1), cells.sum(axis=0)
    inv_beta = _beta_factor(a)
    with np.errstate(divide="ignore"):
        moments = (px[:, None] * table ** (1.0 / inv_beta)).sum(axis=0)[py > 0]
    rhs = float(moments.max()) ** inv_beta * math.exp(
        inv_beta * sibson_mi(cells, a).value
    )
    return float(np.sum(cells * table)), rhs


def dependence_lower_bound(
    joint: JointPMF | ArrayLike, f: ArrayLike, alpha: float
) -> tuple[float, float]:
    """Reverse dependence bound for α in (0, 1).

    ``E_P[f] >= min_y ‖f(·,y)‖_β · exp((α-1)/α · I_α)`` with norms under ``P_X``.

    Here ``β = α/(α-1) < 0``, so f must be strictly positive.

    Raises:
        NonpositiveFunction: If f has a nonpositive entry.
    """
    if not 0.0 < alpha < 1.0:
        msg = f"The reverse bound needs alpha in (0, 1), got {alpha}"
        raise ValueError(msg)
    cells = _two_d(joint)
    table = np.asarray(f, dtype=np.float64)
    if table.shape != cells.shape:
        msg = "f does not match the joint"
        raise ValueError(msg)
    if np.any(table <= 0) or np.any(~np.isfinite(table)):
        msg = "The reverse bound needs a strictly positive f; indicators are excluded"
        raise NonpositiveFunction(msg)
    px, py = cells.sum(axis=1), cells.sum(axis=0)
    beta = alpha / (alpha - 1.0)
    norms = (px[:, None] * table**beta).sum(axis=0)[py > 0] ** (1.0 / beta)
    rhs = float(norms.min()) * math.exp(sibson_mi(cells, alpha).value / beta)
    return float(np.sum(cells * table)), rhs


def shattering_witness(channel: Channel | ArrayLike) -> tuple[ProbVector, EventMask]:
    """Input law and event that make the maximal-leakage bound an equality.

    ``g(y)`` is the lowest-index maximizer of ``W(y|x)``; the input is uniform
    on the image of g and ``E = {(x, y): x = g(y)}``.
    """
    ch = as_channel(channel)
    rows = np.where(ch.defined[:, None], ch.rows, -1.0)
    g = rows.argmax(axis=0)
    image = np.unique(g)
    px = np.zeros(ch.input_size)
    px[image] = 1.0 / image.size
    mask = np.zeros(ch.rows.shape, dtype=bool)
    mask[g, np.arange(ch.output_size)] = True
    return ProbVector(px), EventMask(mask)


def gen_error_bound(
    n: int, eta: float, info: float, alpha: float | AlphaOrder
) -> Clamped:
    """Tail bound on the generalization error of a learner with leakage `info`.

    ``2^{1/β} exp(-n(α-1)/α · (2η² - info/n))``, which at order infinity is
    ``2 exp(-n(2η² - info/n))`` (McDiarmid when ``info = 0``).

    Examples:
        ```pycon
        >>> bound = gen_error_bound(100, 0.1, 1.0, 2.0)
        >>> round(bound.value, 12) == round(math.sqrt(2) * math.exp(-0.5), 12)
        True

        ```
    """
    a = _above_one(alpha)
    if n < 1 or eta <= 0 or info < 0:
        msg = "Need n >= 1, eta > 0 and info >= 0"
        raise ValueError(msg)
    inv_beta = _beta_factor(a)
    raw = 2.0**inv_beta * math.exp(-n * inv_beta * (2.0 * eta**2 - info / n))
    return clamp_probability(raw)


def hypothesis_testing_bound(
    n: int, rate: float, info: float, alpha: float | AlphaOrder
) -> Clamped:
    """``exp(-(α-1)/α · n · (R - I_α))``, vacuous at order 1."""
    a = AlphaOrder.of(alpha)
    if a.is_finite and a.value < 1:
        msg = f"The testing bound needs alpha >= 1, got {a}"
        raise ValueError(msg)
    if rate <= 0 or n < 1:
        msg = "Need n >= 1 and a positive rate"
        raise ValueError(msg)
    inv_beta = 0.0 if a.kind is AlphaKind.ONE else _beta_factor(a)
    return clamp_probability(math.exp(-inv_beta * n * (rate - info)))


def tpc_bounded_constant(bound: float, alpha: float) -> float:
    """``M²(2 - α)``, enough for :func:`tpc_check` whenever ``|f| <= M``."""
    if not 0.0 < alpha < 1.0 or bound < 0:
        msg = "Need alpha in (0, 1) and a nonnegative bound"
        raise ValueError(msg)
    return bound**2 * (2.0 - alpha)


def tpc_check(
    joint: JointPMF | ArrayLike,
    f: ArrayLike,
    alpha: float,
    c: float,
    kappa_grid: ArrayLike = KAPPA_GRID,
) -> tuple[bool, float]:
    """Transportation-cost inequality for α in (0, 1).

    f is first centered under ``P_X`` for every y, which leaves
    ``E_P[f] - E_{P_X P_Y}[f]`` unchanged. The condition

        log E_{P_X}[e^{κ f(X,y)}] <= κ²c/2 - Ent_φ(e^{(α-1)κf})

    with ``φ = log/(α-1)`` under ``P_XY`` is checked for every y with
    ``P_Y(y) > 0`` and every κ on the grid, which is necessary but not
    sufficient for the all-κ statement.

    Returns:
        tuple[bool, float]: Whether the condition held on the grid, and the
            slack ``sqrt(2c·I_α/α) - (E_P[f] - E_{P_X P_Y}[f])``.
    """
    if not 0.0 < alpha < 1.0:
        msg = f"The transportation-cost check needs alpha in (0, 1), got {alpha}"
        raise ValueError(msg)
    if c <= 0:
        msg = f"c must be positive, got {c}"
        raise ValueError(msg)
    cells = _two_d(joint)
    table = np.asarray(f, dtype=np.float64)
    if table.shape != cells.shape or np.any(~np.isfinite(table)):
        msg = "f must be a finite table matching the joint"
        raise ValueError(msg)
    kappas = np.asarray(kappa_grid, dtype=np.float64).ravel()
    if kappas.size == 0:
        msg = "The kappa grid is empty"
        raise ValueError(msg)
    px, py = cells.sum(axis=1), cells.sum(axis=0)
    centered = table - (px @ table)[None, :]
    log_px = safe_log(px)
    on_y = py > 0
    ok = True
    for kappa in kappas:
        cgf = log_sum_exp(kappa * centered + log_px[:, None], axis=0)[on_y]
        entropy = log_phi_entropy(
            (alpha - 1.0) * kappa * centered.ravel(), cells.ravel(), alpha
        )
        if np.any(cgf > kappa**2 * c / 2.0 - entropy + _CONDITION_TOL):
            logger.debug("tpc condition fails at kappa=%g", kappa)
            ok = False
            break
    shift = float(np.sum(cells * table)) - float(px @ table @ py)
    slack = math.sqrt(2.0 * c * sibson_mi(cells, alpha).value / alpha) - shift
    return ok, slack


def exact_map_error(joint: JointPMF | ArrayLike) -> tuple[float, NDArray[np.intp]]:
    """``1 - Σ_y max_x P_XY(x,y)`` and the MAP rule, ties to the lowest x.

    Examples:
        ```pycon
        >>> error, rule = exact_map_error([[0.375, 0.125], [0.125, 0.375]])
        >>> error, rule.tolist()
        (0.25, [0, 1])

        ```
    """
    cells = _two_d(joint)
    rule = cells.argmax(axis=0)
    return max(1.0 - float(cells.max(axis=0).sum()), 0.0), rule


def fano_dalpha_bound(joint: JointPMF | ArrayLike, alpha: float | AlphaOrder) -> float:
    """``d_α^{-1}(I_α(X,Y) ‖ 1 - p*)``, a lower bound on the MAP error.

    ``p* = max_x P_X(x)``. Zero in the vacuous regime.
    """
    cells = _two_d(joint)
    p_star = float(cells.sum(axis=1).max())
    info = sibson_mi(cells, alpha).value
    return binary_d_alpha_inverse(info, max(1.0 - p_star, 0.0), alpha)


@dataclass(frozen=True)
class FanoLikeResult:
    """Upper bound on the MAP success probability and the γ that gave it."""

    bound: Clamped
    gamma: float
    corollary: Clamped


def _fano_like_value(
    p_star: float, info: float, inv_beta: float, gamma: float
) -> float:
    rest = math.log1p(-p_star) if p_star < 1 else -math.inf
    head = math.log(p_star) + math.log1p(gamma) / inv_beta
    log_mix = float(np.logaddexp(head, rest))
    return math.expm1(inv_beta * (log_mix + info)) / gamma


def fano_like_bound(
    joint: JointPMF | ArrayLike, alpha: float, gamma: float | None = None
) -> FanoLikeResult:
    """Upper bound on ``P(X = X̂_MAP)`` for α > 1.

    ``[(p*(γ+1)^β + 1 - p*)^{1/β} e^{I_α/β} - 1] / γ`` with ``β = α/(α-1)``.
    With ``gamma=None`` the bound is minimized over ``log γ`` in
    ``[-20, 20]``; the ``γ → ∞`` limit ``(p* e^{I_α})^{(α-1)/α}`` is always
    reported as `corollary` and also caps the optimized bound.
    """
    if not 1.0 < alpha < math.inf:
        msg = f"The Fano-like bound needs alpha in (1, inf), got {alpha}"
        raise ValueError(msg)
    cells = _two_d(joint)
    p_star = float(cells.sum(axis=1).max())
    info = sibson_mi(cells, alpha).value
    inv_beta = (alpha - 1.0) / alpha
    limit = (p_star * math.exp(info)) ** inv_beta
    corollary = clamp_probability(limit)
    if gamma is not None:
        if gamma <= 0:
            msg = f"gamma must be positive, got {gamma}"
            raise ValueError(msg)
        return FanoLikeResult(
            clamp_probability(_fano_like_value(p_star, info, inv_beta, gamma)),
            gamma,
            corollary,
        )
    lo, hi = LOG_GAMMA_RANGE
    log_gamma, best = grid_golden_max(
        lambda t: -_fano_like_value(p_star, info, inv_beta, math.exp(t)),
        lo,
        hi,
        log_scale=False,
    )
    if -best >= limit:
        return FanoLikeResult(corollary, math.inf, corollary)
    return FanoLikeResult(clamp_probability(-best), math.exp(log_gamma), corollary)


def fano_arimoto_bound(
    joint: JointPMF | ArrayLike, alpha: float | AlphaOrder
) -> Clamped:
    """Lower bound on the MAP error from Arimoto's α-mutual information.

    ``1 - exp(-(α-1)/α · (H_α(X) - I^A_α(X,Y)))``, equal to the MAP error at
    order infinity.
    """
    a = AlphaOrder.of(alpha)
    if a.kind in {AlphaKind.ZERO, AlphaKind.ONE}:
        msg = f"The Arimoto-Fano bound needs alpha in (0, 1) or (1, inf], got {a}"
        raise ValueError(msg)
    cells = _two_d(joint)
    residual = renyi_entropy(cells.sum(axis=1), a) - arimoto_mi(cells, a)
    return clamp_probability(-math.expm1(-_beta_factor(a) * residual))


def generalized_fano(
    models: Sequence[ProbVector | ArrayLike],
    center: ProbVector | ArrayLike,
    beta_bound: float,
    gamma: float,
    prior: ProbVector | ArrayLike,
    alpha: float,
) -> float:
    """Risk lower bound from a γ-separated packing of hypotheses.

    The center certifies ``I_α(J, Y) <= beta_bound``; the exact value of the
    induced joint is used when smaller. For α > 1 the bound is
    ``(γ/2)(1 - (max_j prior(j) · e^{I})^{(α-1)/α})``; for α <= 1 it is
    ``(γ/2) · d_α^{-1}(I ‖ 1 - max_j prior(j))``.

    Raises:
        CenterViolation: If some ``D_α(P_j‖center)`` exceeds `beta_bound`.
    """
    if gamma <= 0 or alpha <= 0:
        msg = "gamma and alpha must be positive"
        raise ValueError(msg)
    rows = np.vstack([as_prob_vector(m).probs for m in models])
    q = as_prob_vector(center).probs
    weights = as_prob_vector(prior).probs
    if weights.size != rows.shape[0]:
        msg = "The prior must weight every model"
        raise ValueError(msg)
    for j, row in enumerate(rows):
        d = renyi_divergence(row, q, alpha)
        if d > beta_bound + CENTER_TOL:
            msg = f"D_alpha(P_{j}||center) = {d:.6g} exceeds {beta_bound:.6g}"
            raise CenterViolation(msg)
    info = min(sibson_mi(weights[:, None] * rows, alpha).value, beta_bound)
    top = float(weights.max())
    a = AlphaOrder.of(alpha)
    if a.kind is AlphaKind.FINITE and a.value > 1:
        raw = 1.0 - (top * math.exp(info)) ** _beta_factor(a)
        return nonnegative(gamma / 2.0 * raw)
    return gamma / 2.0 * binary_d_alpha_inverse(info, max(1.0 - top, 0.0), a)


@dataclass(frozen=True, eq=False)
class BayesRiskProblem:
    """Inputs of :func:`bayes_risk_lower_bound`.

    `small_ball` is ``ρ ↦ L_W(ρ)``, `info` is ``α ↦ I_α(W, X)`` and accepts
    ``math.inf``.
    """

    small_ball: Callable[[float], float]
    info: Callable[[float], float]
    rho_grid: FloatArray
    alpha_grid: FloatArray

    def __post_init__(self) -> None:
        """Sort the radius grid and validate both grids."""
        rho = np.sort(np.asarray(self.rho_grid, dtype=np.float64).ravel())
        alphas = np.asarray(self.alpha_grid, dtype=np.float64).ravel()
        if rho.size == 0 or alphas.size == 0:
            msg = "Both grids must be nonempty"
            raise ValueError(msg)
        if np.any(rho <= 0) or np.any(alphas <= 1):
            msg = "Need positive radii and orders above 1"
            raise ValueError(msg)
        object.__setattr__(self, "rho_grid", rho)
        object.__setattr__(self, "alpha_grid", alphas)


def bayes_risk_lower_bound(problem: BayesRiskProblem) -> tuple[float, float, float]:
    """``max_{ρ, α} ρ(1 - exp((α-1)/α · (I_α + log L_W(ρ))))``, at least 0.

    Every α on the grid gets a golden-section refinement around its best ρ.

    Returns:
        tuple[float, float, float]: Bound, maximizing ρ and maximizing α.
    """
    best = (0.0, float(problem.rho_grid[0]), float(problem.alpha_grid[0]))
    for alpha in problem.alpha_grid:
        a = AlphaOrder.of(float(alpha))
        inv_beta = _beta_factor(a)
        info = problem.info(float(alpha))

        def risk(rho: float, info: float = info, inv_beta: float = inv_beta) -> float:
            ball = problem.small_ball(rho)
            if ball <= 0:
                return rho
            return rho * -math.expm1(inv_beta * (info + math.log(ball)))

        rho, value = golden_max_on_grid(risk, problem.rho_grid)
        if value > best[0]:
            best = (value, rho, float(alpha))
    return best


def _log_binomials(n: int) -> FloatArray:
    k = np.arange(n + 1)
    return np.asarray(gammaln(n + 1) - gammaln(k + 1) - gammaln(n - k + 1))


def bernoulli_bias_info(n: int, alpha: float) -> float:
    """``exp((α-1)/α · I_α(W, X^n))`` for a uniform bias W and n coin flips.

    ``Σ_k C(n,k) (Γ(kα+1) Γ((n-k)α+1) / Γ(nα+2))^{1/α}``, summed in the log
    domain.

    Examples:
        ```pycon
        >>> abs(bernoulli_bias_info(1, 2.0) - 2 / math.sqrt(3)) < 1e-12
        True

        ```
    """
    if n < 1:
        msg = f"Need at least one observation, got {n}"
        raise ValueError(msg)
    if not 1.0 < alpha < math.inf:
        msg = f"Need alpha in (1, inf), got {alpha}"
        raise ValueError(msg)
    k = np.arange(n + 1)
    log_beta = (
        gammaln(k * alpha + 1)
        + gammaln((n - k) * alpha + 1)
        - gammaln(n * alpha + 2)
    )
    return math.exp(float(log_sum_exp(_log_binomials(n) + log_beta / alpha)))


def bernoulli_bias_leakage(n: int) -> float:
    """Maximal leakage ``log Σ_k C(n,k) (k/n)^k (1-k/n)^{n-k}``."""
    if n < 1:
        msg = f"Need at least one observation, got {n}"
        raise ValueError(msg)
    k = np.arange(n + 1)
    log_ml = xlogy(k, k / n) + xlogy(n - k, 1.0 - k / n)
    return float(log_sum_exp(_log_binomials(n) + log_ml))


def bernoulli_bias_sibson(n: int, alpha: float) -> float:
    """``I_α(W, X^n)`` for α in (1, inf]; infinity is the maximal leakage."""
    if math.isinf(alpha):
        return bernoulli_bias_leakage(n)
    return alpha / (alpha - 1.0) * math.log(bernoulli_bias_info(n, alpha))


def bernoulli_bias_quadrature(n: int, alpha: float, panels: int = 10_000) -> float:
    """Simpson-rule value of :func:`bernoulli_bias_info`.

    Integrates ``∫₀¹ (w^k (1-w)^{n-k})^α dw`` on `panels` panels for every k.
    """
    if n < 1 or alpha <= 0:
        msg = "Need n >= 1 and alpha > 0"
        raise ValueError(msg)
    w = np.linspace(0.0, 1.0, panels + 1)
    total = 0.0
    for k in range(n + 1):
        integrand = np.exp(alpha * (xlogy(k, w) + xlogy(n - k, 1.0 - w)))
        total += math.comb(n, k) * float(simpson(integrand, x=w)) ** (1.0 / alpha)
    return total


def bernoulli_bias_problem(
    n: int,
    alpha_grid: Sequence[float] = DEFAULT_ALPHA_GRID,
    rho_grid: Sequence[float] = DEFAULT_RHO_GRID,
) -> BayesRiskProblem:
    """Bias estimation under absolute loss: ``L_W(ρ) = min(2ρ, 1)``."""
    return BayesRiskProblem(
        small_ball=lambda rho: min(2.0 * rho, 1.0),
        info=lambda alpha: bernoulli_bias_sibson(n, alpha),
        rho_grid=np.asarray(rho_grid, dtype=np.float64),
        alpha_grid=np.asarray(alpha_grid, dtype=np.float64),
    )


def bernoulli_bias_bayes_bound(
    n: int,
    alpha_grid: Sequence[float] = DEFAULT_ALPHA_GRID,
    rho_grid: Sequence[float] = DEFAULT_RHO_GRID,
) -> tuple[float, float, float]:
    """Optimized Sibson lower bound on the Bayes risk of bias estimation."""
    return bayes_risk_lower_bound(bernoulli_bias_problem(n, alpha_grid, rho_grid))


def bernoulli_bias_risk_bounds(n: int) -> tuple[float, float]:
    """Leakage lower bound and sample-mean risk for bias estimation.

    ``1/(8(2 + √(πn/2)))`` and ``1/√(6n)`` respectively.
    """
    if n < 1:
        msg = f"Need at least one observation, got {n}"
        raise ValueError(msg)
    ml_lower = 1.0 / (8.0 * (2.0 + math.sqrt(math.pi * n / 2.0)))
    return ml_lower, 1.0 / math.sqrt(6.0 * n)


def conditional_dependence_bound(
    triple: JointPMF | ArrayLike,
    event: EventMask | ArrayLike,
    alpha: float | AlphaOrder,
) -> tuple[float, float]:
    """Dependence bound through the conditional Sibson information.

    ``P(E) <= E_{P_Z}[max_y P_{X|Z}(E_{y,Z})]^{1/β} · exp((α-1)/α · I^{Y|Z}_α)``.

    The max runs over y with ``P_{Y|Z}(y|z) > 0``; order infinity uses the
    conditional maximal leakage.
    """
    a = _above_one(alpha)
    cells = as_joint(triple).cells
    if cells.ndim != 3:
        msg = "Expected a rank-3 joint indexed (x, y, z)"
        raise ValueError(msg)
    e = _as_event(event)
    lhs = e.probability(cells)
    pxz = cells.sum(axis=1)
    pyz = cells.sum(axis=0)
    pz = cells.sum(axis=(0, 1))
    expected = 0.0
    for z in np.flatnonzero(pz > 0):
        sections = (pxz[:, z, None] * e.mask[:, :, z]).sum(axis=0) / pz[z]
        expected += pz[z] * float(sections[pyz[:, z] > 0].max())
    inv_beta = _beta_factor(a)
    info = conditional_sibson_mi(cells, a).value
    return lhs, expected**inv_beta * math.exp(inv_beta * info)
