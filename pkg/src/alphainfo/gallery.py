"""Worked examples with closed forms next to the generic pipeline.

Every table keeps information columns in the active base (see
:mod:`alphainfo.units`); probabilities and risks are unitless.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import units
from .bounds import (
    bernoulli_bias_bayes_bound,
    bernoulli_bias_leakage,
    bernoulli_bias_risk_bounds,
    dependence_bound,
    exact_map_error,
    fano_arimoto_bound,
    fano_dalpha_bound,
    fano_like_bound,
)
from .errors import UnknownExample
from .prob_core import (
    AlphaKind,
    AlphaOrder,
    Channel,
    JointPMF,
    iid_extension,
    joint_from_channel,
    log_sum_exp,
    safe_log,
)
from .sibson import sibson_mi, sibson_mi_gaussian, sibson_mi_gaussian_quadrature

TYPE_CHECKING = False
if TYPE_CHECKING:
    from collections.abc import Callable, Iterable
    from typing import Any

__all__ = [
    "EXAMPLES",
    "EXAMPLE_PARAMETERS",
    "ExampleTable",
    "bec_channel",
    "bec_sibson_mi",
    "bsc_channel",
    "bsc_sibson_mi",
    "dsbs_joint",
    "emit_example",
    "fano_joint",
    "fano_table",
]

DEFAULT_ALPHAS = (0.0, *np.geomspace(0.1, 10.0, 100).tolist(), 1.0, math.inf)
FANO_ALPHAS = tuple(np.linspace(1.0, 10.0, 51)[1:].tolist())
GAUSSIAN_RATIOS = (0.5, 1.0, 4.0)
GAUSSIAN_ALPHAS = (0.5, 1.0, 2.0, 5.0)
BERNOULLI_N_GRID = (10, 100, 1000)


@dataclass(frozen=True)
class ExampleTable:
    """Header and rows of one example, ready for CSV."""

    header: tuple[str, ...]
    rows: list[tuple[float, ...]]


def _unit_interval(name: str, value: float) -> float:
    if not 0.0 <= value <= 1.0:
        msg = f"{name} must lie in [0, 1], got {value}"
        raise ValueError(msg)
    return float(value)


def bsc_channel(epsilon: float) -> Channel:
    """Binary symmetric channel with crossover probability `epsilon`."""
    e = _unit_interval("epsilon", epsilon)
    return Channel(np.array([[1.0 - e, e], [e, 1.0 - e]]))


def bec_channel(delta: float) -> Channel:
    """Binary erasure channel, outputs ordered ``(0, erasure, 1)``."""
    d = _unit_interval("delta", delta)
    return Channel(np.array([[1.0 - d, d, 0.0], [0.0, d, 1.0 - d]]))


def bsc_sibson_mi(epsilon: float, alpha: float | AlphaOrder) -> float:
    """``I_α`` of the BSC under a uniform input.

    ``log 2 + log(ε^α + (1-ε)^α) / (α-1)``, with ``log 2 - h(ε)`` at order
    one, ``log(2 max(ε, 1-ε))`` at infinity and 0 at order zero.

    Examples:
        ```pycon
        >>> abs(bsc_sibson_mi(0.25, 2) - math.log(1.25)) < 1e-12
        True

        ```
    """
    e = _unit_interval("epsilon", epsilon)
    a = AlphaOrder.of(alpha)
    if a.kind is AlphaKind.ZERO:
        return 0.0
    if a.kind is AlphaKind.INFINITY:
        return math.log(2.0 * max(e, 1.0 - e))
    pair = np.array([e, 1.0 - e])
    if a.kind is AlphaKind.ONE:
        return math.log(2.0) + float(np.dot(pair, safe_log(pair)))
    log_mass = float(log_sum_exp(a.value * safe_log(pair)))
    return math.log(2.0) + log_mass / (a.value - 1.0)


def bec_sibson_mi(
    delta: float, alpha: float | AlphaOrder, reverse: bool = False
) -> float:
    """``I_α(X, Y)`` of the BEC under a uniform input, or ``I_α(Y, X)``.

    Forward: ``α/(α-1) · log(δ + (1-δ) 2^{(α-1)/α})``, running from 0 to
    ``log(2 - δ)``. Reverse: ``log(δ + (1-δ) 2^{α-1}) / (α-1)``, running from
    ``log(2/(1+δ))`` to ``log 2``. Both pass through ``(1-δ) log 2`` at order one.
    """
    d = _unit_interval("delta", delta)
    a = AlphaOrder.of(alpha)
    log2 = math.log(2.0)
    if a.kind is AlphaKind.ONE:
        return (1.0 - d) * log2
    log_d, log_rest = safe_log([d, 1.0 - d])
    if reverse:
        if a.kind is AlphaKind.ZERO:
            return math.log(2.0 / (1.0 + d))
        if a.kind is AlphaKind.INFINITY:
            return log2
        mix = np.logaddexp(log_d, log_rest + (a.value - 1.0) * log2)
        return float(mix) / (a.value - 1.0)
    if a.kind is AlphaKind.ZERO:
        return 0.0
    if a.kind is AlphaKind.INFINITY:
        return math.log(2.0 - d)
    inv_beta = (a.value - 1.0) / a.value
    return float(np.logaddexp(log_d, log_rest + inv_beta * log2)) / inv_beta


def dsbs_joint(p: float) -> JointPMF:
    """Doubly symmetric binary source: uniform bits that differ with probability p."""
    q = _unit_interval("p", p)
    return JointPMF(np.array([[1.0 - q, q], [q, 1.0 - q]]) / 2.0)


def fano_joint(n: int = 3, epsilon: float = 0.3) -> JointPMF:
    """``n`` uniform bits sent through independent uses of BSC(epsilon)."""
    single = joint_from_channel(np.full(2, 0.5), bsc_channel(epsilon))
    return iid_extension(single, n)


def _alphas(params: dict[str, Any], default: Iterable[float]) -> list[float]:
    return [float(a) for a in params.pop("alphas", default)]


def _bsc(params: dict[str, Any]) -> ExampleTable:
    epsilon = float(params.pop("epsilon", 0.25))
    alphas = _alphas(params, DEFAULT_ALPHAS)
    joint = joint_from_channel(np.full(2, 0.5), bsc_channel(epsilon))
    rows = []
    for alpha in sorted(alphas):
        closed = bsc_sibson_mi(epsilon, alpha)
        generic = sibson_mi(joint, alpha).value
        error = abs(closed - generic)
        rows.append((alpha, units.to_base(closed), units.to_base(generic), error))
    return ExampleTable(("alpha", "closed_form", "sibson_mi", "abs_error"), rows)


def _bec(params: dict[str, Any]) -> ExampleTable:
    delta = float(params.pop("delta", 0.25))
    alphas = _alphas(params, DEFAULT_ALPHAS)
    joint = joint_from_channel(np.full(2, 0.5), bec_channel(delta))
    reverse = joint.transpose()
    rows = []
    for alpha in sorted(alphas):
        values = (
            bec_sibson_mi(delta, alpha),
            sibson_mi(joint, alpha).value,
            bec_sibson_mi(delta, alpha, reverse=True),
            sibson_mi(reverse, alpha).value,
        )
        rows.append((alpha, *(units.to_base(v) for v in values)))
    header = ("alpha", "forward_closed", "forward", "reverse_closed", "reverse")
    return ExampleTable(header, rows)


def _gaussian(params: dict[str, Any]) -> ExampleTable:
    ratios = [float(r) for r in params.pop("ratios", GAUSSIAN_RATIOS)]
    alphas = _alphas(params, GAUSSIAN_ALPHAS)
    points = int(params.pop("points", 2001))
    rows = []
    for ratio in ratios:
        for alpha in sorted(alphas):
            closed = sibson_mi_gaussian(ratio, 1.0, alpha)
            quadrature = sibson_mi_gaussian_quadrature(ratio, 1.0, alpha, points)
            rows.append(
                (ratio, alpha, units.to_base(closed), units.to_base(quadrature))
            )
    return ExampleTable(("ratio", "alpha", "closed_form", "quadrature"), rows)


def _bernoulli_bias(params: dict[str, Any]) -> ExampleTable:
    n_grid = [int(n) for n in params.pop("n_grid", BERNOULLI_N_GRID)]
    rows = []
    for n in n_grid:
        ml_lower, mi_upper = bernoulli_bias_risk_bounds(n)
        bound, rho, alpha = bernoulli_bias_bayes_bound(n)
        leakage = units.to_base(bernoulli_bias_leakage(n))
        rows.append((n, ml_lower, bound, mi_upper, alpha, rho, leakage))
    header = (
        "n",
        "ml_lower",
        "sibson_lower",
        "mi_upper",
        "best_alpha",
        "best_rho",
        "leakage",
    )
    return ExampleTable(header, rows)


def fano_table(joint: JointPMF, alphas: Iterable[float]) -> ExampleTable:
    """Exact MAP success next to every Fano-type success bound, for α > 1.

    Columns: the γ-optimized bound, its γ → ∞ corollary, the Arimoto bound
    and the d_α-inverse bound, each turned into a bound on success.
    """
    success = 1.0 - exact_map_error(joint)[0]
    rows = []
    for alpha in sorted(alphas):
        like = fano_like_bound(joint, alpha)
        rows.append(
            (
                alpha,
                success,
                like.bound.value,
                like.corollary.value,
                1.0 - fano_arimoto_bound(joint, alpha).value,
                1.0 - fano_dalpha_bound(joint, alpha),
            )
        )
    header = ("alpha", "map_success", "fano_like", "corollary", "arimoto", "dalpha")
    return ExampleTable(header, rows)


def _fano_bsc3(params: dict[str, Any]) -> ExampleTable:
    epsilon = float(params.pop("epsilon", 0.3))
    n = int(params.pop("n", 3))
    return fano_table(fano_joint(n, epsilon), _alphas(params, FANO_ALPHAS))


def _dsbs(params: dict[str, Any]) -> ExampleTable:
    p = float(params.pop("p", 0.25))
    alphas = _alphas(params, (math.inf,))
    joint = dsbs_joint(p)
    agree = np.eye(2, dtype=bool)
    rows = []
    for alpha in sorted(alphas):
        lhs, rhs = dependence_bound(joint, agree, alpha)
        rows.append((p, alpha, lhs, rhs))
    return ExampleTable(("p", "alpha", "probability", "bound"), rows)


EXAMPLES: dict[str, Callable[[dict[str, Any]], ExampleTable]] = {
    "bec": _bec,
    "bernoulli_bias": _bernoulli_bias,
    "bsc": _bsc,
    "dsbs": _dsbs,
    "fano_bsc3": _fano_bsc3,
    "gaussian": _gaussian,
}

EXAMPLE_PARAMETERS = {
    "bec": {"delta", "alphas"},
    "bernoulli_bias": {"n_grid"},
    "bsc": {"epsilon", "alphas"},
    "dsbs": {"p", "alphas"},
    "fano_bsc3": {"epsilon", "n", "alphas"},
    "gaussian": {"ratios", "alphas", "points"},
}


def emit_example(name: str, **params: object) -> ExampleTable:
    """Build the table of a named example.

    Examples:
        ```pycon
        >>> table = emit_example("dsbs", p=0.25)
        >>> table.header
        ('p', 'alpha', 'probability', 'bound')
        >>> [round(v, 12) for v in table.rows[0][2:]]
        [0.75, 0.75]

        ```

    Args:
        name (str): One of :data:`EXAMPLES`.
        **params: Example parameters such as ``epsilon``, ``delta``, ``p``,
            ``n_grid``, ``ratios`` and ``alphas``.

    Returns:
        ExampleTable: Header and rows, sorted by α within each group.

    Raises:
        UnknownExample: If `name` is not a known example.
        TypeError: If a parameter does not apply to the example.
    """
    try:
        build = EXAMPLES[name]
    except KeyError:
        msg = f"Unknown example {name!r}; choose from {', '.join(sorted(EXAMPLES))}"
        raise UnknownExample(msg) from None
    given = {k: v for k, v in params.items() if v is not None}
    unknown = sorted(set(given) - EXAMPLE_PARAMETERS[name])
    if unknown:
        msg = f"Example {name!r} takes no parameter {unknown[0]!r}"
        raise TypeError(msg)
    return build(given)
