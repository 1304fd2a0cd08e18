"""Rényi entropies and divergences with all limiting orders.

Every function works in nats and follows the zero conventions of
:mod:`alphainfo.prob_core`. Infinite divergences are returned as ``inf``,
never raised.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import bisect
from scipy.special import entr, rel_entr

from .errors import InvalidTarget
from .prob_core import (
    AlphaKind,
    AlphaOrder,
    ProbVector,
    as_joint,
    as_prob_vector,
    log_sum_exp,
    nonnegative,
    safe_log,
)

TYPE_CHECKING = False
if TYPE_CHECKING:
    from numpy.typing import ArrayLike, NDArray

    from .prob_core import JointPMF

__all__ = [
    "BinaryDivergenceProblem",
    "binary_d_alpha",
    "binary_d_alpha_inverse",
    "cond_renyi_entropy",
    "dv_renyi_functional",
    "dv_witness",
    "kl_divergence",
    "kl_variational_objective",
    "log_phi_entropy",
    "optimal_kl_tilting",
    "phi_entropy",
    "renyi_divergence",
    "renyi_entropy",
]

#: Absolute accuracy of the bisection in :func:`binary_d_alpha_inverse`.
INVERSE_XTOL = 1e-12


def _pair(
    p: ProbVector | ArrayLike, q: ProbVector | ArrayLike
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    pp = as_prob_vector(p).probs
    qq = as_prob_vector(q).probs
    if pp.shape != qq.shape:
        msg = f"Distributions live on different alphabets: {pp.size} and {qq.size}"
        raise ValueError(msg)
    return pp, qq


def renyi_entropy(p: ProbVector | ArrayLike, alpha: float | AlphaOrder) -> float:
    """Rényi entropy ``H_α(p)`` in nats.

    Examples:
        ```pycon
        >>> round(renyi_entropy([0.25, 0.75], 2), 4)
        0.47
        >>> round(renyi_entropy([0.5, 0.5], math.inf), 12) == round(math.log(2), 12)
        True

        ```

    Args:
        p (ProbVector | ArrayLike): Distribution.
        alpha (float | AlphaOrder): Order; 0, 1 and ``inf`` are the limits.

    Returns:
        float: The entropy.
    """
    a = AlphaOrder.of(alpha)
    probs = as_prob_vector(p).probs
    if a.kind is AlphaKind.ZERO:
        value = math.log(np.count_nonzero(probs))
    elif a.kind is AlphaKind.ONE:
        value = float(entr(probs).sum())
    elif a.kind is AlphaKind.INFINITY:
        value = -math.log(probs.max())
    else:
        log_mass = float(log_sum_exp(a.value * safe_log(probs[probs > 0])))
        value = log_mass / (1.0 - a.value)
    return nonnegative(value)


def cond_renyi_entropy(joint: JointPMF | ArrayLike, alpha: float | AlphaOrder) -> float:
    """Arimoto's conditional Rényi entropy ``H_α(X|Y)``.

    Args:
        joint (JointPMF | ArrayLike): 2-d joint indexed ``(x, y)``.
        alpha (float | AlphaOrder): Order.

    Returns:
        float: The conditional entropy in nats.
    """
    a = AlphaOrder.of(alpha)
    cells = as_joint(joint).cells
    if a.kind is AlphaKind.ZERO:
        support = cells > 0
        value = math.log(support.sum(axis=0).max())
    elif a.kind is AlphaKind.ONE:
        value = float(entr(cells).sum() - entr(cells.sum(axis=0)).sum())
    elif a.kind is AlphaKind.INFINITY:
        value = -math.log(cells.max(axis=0).sum())
    else:
        inner = log_sum_exp(a.value * safe_log(cells), axis=0) / a.value
        value = a.value / (1.0 - a.value) * float(log_sum_exp(inner))
    return nonnegative(value)


def kl_divergence(p: ProbVector | ArrayLike, q: ProbVector | ArrayLike) -> float:
    """``D(p‖q)`` in nats, possibly ``inf``."""
    pp, qq = _pair(p, q)
    with np.errstate(divide="ignore"):
        return nonnegative(float(rel_entr(pp, qq).sum()))


def renyi_divergence(
    p: ProbVector | ArrayLike, q: ProbVector | ArrayLike, alpha: float | AlphaOrder
) -> float:
    """Rényi divergence ``D_α(p‖q)`` in nats, possibly ``inf``.

    Examples:
        ```pycon
        >>> d = renyi_divergence([1, 0], [0.5, 0.5], math.inf)
        >>> abs(d - math.log(2)) < 1e-12
        True
        >>> renyi_divergence([0.5, 0.5], [1, 0], 2)
        inf

        ```

    Args:
        p (ProbVector | ArrayLike): First distribution.
        q (ProbVector | ArrayLike): Second distribution, same alphabet.
        alpha (float | AlphaOrder): Order.

    Returns:
        float: The divergence.
    """
    a = AlphaOrder.of(alpha)
    pp, qq = _pair(p, q)
    on_p = pp > 0
    escapes = bool(np.any(on_p & (qq == 0)))
    if a.kind is AlphaKind.ZERO:
        mass = float(qq[on_p].sum())
        return nonnegative(-math.log(mass)) if mass > 0 else math.inf
    if a.kind is AlphaKind.ONE:
        return math.inf if escapes else kl_divergence(pp, qq)
    if a.kind is AlphaKind.INFINITY:
        if escapes:
            return math.inf
        return nonnegative(float(np.max(safe_log(pp[on_p]) - safe_log(qq[on_p]))))
    if a.value > 1 and escapes:
        return math.inf
    both = on_p & (qq > 0)
    if not np.any(both):
        return math.inf
    terms = a.value * safe_log(pp[both]) + (1.0 - a.value) * safe_log(qq[both])
    return nonnegative(float(log_sum_exp(terms)) / (a.value - 1.0))


@dataclass(frozen=True)
class BinaryDivergenceProblem:
    """Arguments of the binary divergence ``d_α(p‖q)``."""

    p: float
    q: float
    alpha: AlphaOrder

    def __post_init__(self) -> None:
        """Validate the binary arguments."""
        for name in ("p", "q"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                msg = f"{name} must lie in [0, 1], got {value}"
                raise ValueError(msg)
        object.__setattr__(self, "alpha", AlphaOrder.of(self.alpha))


def _binary(p: float, q: float, alpha: AlphaOrder) -> float:
    return renyi_divergence(np.array([p, 1.0 - p]), np.array([q, 1.0 - q]), alpha)


def binary_d_alpha(prob: BinaryDivergenceProblem) -> float:
    """Binary Rényi divergence between Bernoulli(p) and Bernoulli(q).

    Examples:
        ```pycon
        >>> problem = BinaryDivergenceProblem(0.1, 0.3, AlphaOrder.of(2))
        >>> round(binary_d_alpha(problem), 4)
        0.1744

        ```
    """
    return _binary(prob.p, prob.q, prob.alpha)


def binary_d_alpha_inverse(
    target: float, delta: float, alpha: float | AlphaOrder
) -> float:
    """Invert ``ε ↦ d_α(ε‖δ)`` on ``[0, δ]``.

    The map is nonincreasing on ``[0, δ]``, from ``-log(1-δ)`` down to 0, so the
    inverse is found by bisection. Targets at or above ``-log(1-δ)`` are in the
    vacuous regime and map to 0.

    Args:
        target (float): Divergence level, nonnegative.
        delta (float): The fixed second argument, in ``[0, 1)``.
        alpha (float | AlphaOrder): Order.

    Returns:
        float: The ``ε`` in ``[0, δ]`` with ``d_α(ε‖δ) = target``.

    Raises:
        InvalidTarget: If `target` is negative.
    """
    a = AlphaOrder.of(alpha)
    if math.isnan(target) or target < 0:
        msg = f"Target divergence must be nonnegative, got {target}"
        raise InvalidTarget(msg)
    if not 0.0 <= delta < 1.0:
        msg = f"delta must lie in [0, 1), got {delta}"
        raise ValueError(msg)
    if target == 0:
        return delta
    if target >= -math.log1p(-delta):
        return 0.0

    def excess(eps: float) -> float:
        return _binary(eps, delta, a) - target

    return float(bisect(excess, 0.0, delta, xtol=INVERSE_XTOL, maxiter=500))


def log_phi_entropy(
    log_values: NDArray[np.float64], weights: NDArray[np.float64], alpha: float
) -> float:
    """:func:`phi_entropy` of ``exp(log_values)`` under normalized `weights`."""
    on = weights > 0
    mean_log = float(np.dot(weights[on], log_values[on]))
    log_mean = float(log_sum_exp(log_values[on] + safe_log(weights[on])))
    return nonnegative((mean_log - log_mean) / (alpha - 1.0))


def phi_entropy(
    values: ArrayLike, weights: ProbVector | ArrayLike, alpha: float
) -> float:
    """φ-entropy ``E[φ(V)] - φ(E[V])`` for ``φ(x) = log(x) / (α - 1)``.

    Examples:
        ```pycon
        >>> round(phi_entropy([1.0, 3.0], [0.5, 0.5], 0.5), 4)
        0.2877

        ```

    Args:
        values (ArrayLike): Strictly positive values of V.
        weights (ProbVector | ArrayLike): Law of V.
        alpha (float): Order in (0, 1), where φ is convex.

    Returns:
        float: The nonnegative φ-entropy.
    """
    if not 0.0 < alpha < 1.0:
        msg = f"phi_entropy needs alpha in (0, 1), got {alpha}"
        raise ValueError(msg)
    vals = np.asarray(values, dtype=np.float64).ravel()
    w = as_prob_vector(np.asarray(weights, dtype=np.float64).ravel()).probs
    if vals.shape != w.shape:
        msg = "values and weights differ in size"
        raise ValueError(msg)
    if np.any(vals <= 0):
        msg = "phi_entropy takes strictly positive values"
        raise ValueError(msg)
    return log_phi_entropy(np.log(vals), w, alpha)


def kl_variational_objective(
    r: ProbVector | ArrayLike,
    p: ProbVector | ArrayLike,
    q: ProbVector | ArrayLike,
    alpha: float,
) -> float:
    """``α·D(r‖p) + (1-α)·D(r‖q)``, minimized at :func:`optimal_kl_tilting`.

    Returns ``nan`` when the two terms are infinite with opposite signs.
    """
    rp = kl_divergence(r, p)
    total = alpha * rp
    if alpha != 1.0:
        total += (1.0 - alpha) * kl_divergence(r, q)
    return total


def optimal_kl_tilting(
    p: ProbVector | ArrayLike, q: ProbVector | ArrayLike, alpha: float
) -> ProbVector:
    """The minimizer ``r* ∝ p^α q^(1-α)`` of :func:`kl_variational_objective`."""
    if alpha <= 0 or alpha == 1.0:
        msg = f"Tilting needs alpha in (0, 1) or (1, inf), got {alpha}"
        raise ValueError(msg)
    pp, qq = _pair(p, q)
    if alpha > 1 and np.any((pp > 0) & (qq == 0)):
        msg = "Tilting is undefined when D_alpha(p||q) is infinite"
        raise ValueError(msg)
    both = (pp > 0) & (qq > 0)
    if not np.any(both):
        msg = "p and q have disjoint supports"
        raise ValueError(msg)
    log_r = np.full(pp.shape, -np.inf)
    log_r[both] = alpha * np.log(pp[both]) + (1.0 - alpha) * np.log(qq[both])
    log_r -= log_sum_exp(log_r)
    r = np.exp(log_r)
    return ProbVector(r / r.sum())


def dv_renyi_functional(
    f: ArrayLike, p: ProbVector | ArrayLike, q: ProbVector | ArrayLike, alpha: float
) -> float:
    """Rényi analogue of the Donsker-Varadhan functional.

    ``(1/(α-1)) log E_p[e^{(α-1)f}] - (1/α) log E_q[e^{αf}]``, bounded above by
    ``D_α(p‖q)/α`` with equality at ``f = log(p/q)``.
    """
    if alpha <= 0 or alpha == 1.0:
        msg = f"The functional needs alpha in (0, 1) or (1, inf), got {alpha}"
        raise ValueError(msg)
    pp, qq = _pair(p, q)
    ff = np.asarray(f, dtype=np.float64)
    if ff.shape != pp.shape:
        msg = "f does not match the alphabet"
        raise ValueError(msg)
    on_p, on_q = pp > 0, qq > 0
    with np.errstate(invalid="ignore"):
        first = log_sum_exp((alpha - 1.0) * ff[on_p] + np.log(pp[on_p])) / (alpha - 1.0)
        second = log_sum_exp(alpha * ff[on_q] + np.log(qq[on_q])) / alpha
    return float(first - second)


def dv_witness(
    p: ProbVector | ArrayLike, q: ProbVector | ArrayLike
) -> NDArray[np.float64]:
    """``log(p/q)``, the maximizer of :func:`dv_renyi_functional`."""
    pp, qq = _pair(p, q)
    with np.errstate(invalid="ignore"):
        return safe_log(pp) - safe_log(qq)
