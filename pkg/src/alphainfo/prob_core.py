"""Finite-alphabet probability types, log-domain kernels and file I/O.

All values are natural-log quantities. The zero conventions are the usual ones
for Rényi quantities: ``log 0 = -inf`` and ``0 * (-inf) = 0`` inside weighted
sums, so cells with zero weight never contribute.
"""

from __future__ import annotations

import csv
import enum
import io
import json
import math
import sys
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
from scipy.special import logsumexp

from .errors import NotADistribution, ParseError
from .formatting import format_row

TYPE_CHECKING = False
if TYPE_CHECKING:
    import os
    from collections.abc import Iterable, Sequence

    from numpy.typing import ArrayLike, NDArray

    FloatArray = NDArray[np.float64]

__all__ = [
    "ALPHA_ONE_TOL",
    "AlphaKind",
    "AlphaOrder",
    "Channel",
    "JointPMF",
    "LogValue",
    "Marginals",
    "ProbVector",
    "as_alpha",
    "as_channel",
    "as_joint",
    "as_prob_vector",
    "iid_extension",
    "joint_from_channel",
    "load_joint",
    "log_sum_exp",
    "marginals",
    "nested_norm",
    "nonnegative",
    "parse_distribution",
    "product_joint",
    "random_channel",
    "random_instance",
    "read_distribution",
    "safe_log",
    "validate_and_normalize",
    "write_distribution",
    "write_table",
]

#: Orders closer than this to one are treated as the Shannon limit.
ALPHA_ONE_TOL = 1e-6
#: Default tolerance of :func:`validate_and_normalize`.
VALIDATION_TOL = 1e-9
_SUM_TOL = 1e-12


def safe_log(a: ArrayLike) -> FloatArray:
    """Elementwise natural log with ``log 0 = -inf`` and no warnings."""
    with np.errstate(divide="ignore"):
        return np.log(np.asarray(a, dtype=np.float64))


def nonnegative(x: float) -> float:
    """Clamp round-off below zero to ``0.0``; ``-0.0`` also becomes ``0.0``."""
    return max(x, 0.0) + 0.0


def log_sum_exp(a: ArrayLike, axis: int | tuple[int, ...] | None = None) -> FloatArray:
    """Log-sum-exp that returns ``-inf`` for all ``-inf`` input without warnings."""
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        return np.asarray(logsumexp(np.asarray(a, dtype=np.float64), axis=axis))


def _readonly(a: ArrayLike) -> FloatArray:
    arr = np.array(a, dtype=np.float64)
    arr.setflags(write=False)
    return arr


class AlphaKind(enum.Enum):
    """Regime of an order parameter."""

    ZERO = "zero"
    FINITE = "finite"
    ONE = "one"
    INFINITY = "infinity"


@dataclass(frozen=True)
class AlphaOrder:
    """Extended order parameter of Rényi quantities.

    Use :meth:`of` to build one from a number; it routes orders within
    `ALPHA_ONE_TOL` of one to the Shannon limit.

    Examples:
        ```pycon
        >>> AlphaOrder.of(2).kind
        <AlphaKind.FINITE: 'finite'>
        >>> AlphaOrder.of(1 + 1e-8).kind
        <AlphaKind.ONE: 'one'>
        >>> float(AlphaOrder.of(math.inf))
        inf

        ```
    """

    kind: AlphaKind
    value: float

    def __post_init__(self) -> None:
        """Reject finite orders outside ``(0, 1) ∪ (1, ∞)``."""
        if self.kind is AlphaKind.FINITE and (
            not math.isfinite(self.value)
            or self.value <= 0
            or abs(self.value - 1.0) < ALPHA_ONE_TOL
        ):
            msg = f"Finite order must be positive and away from 1, got {self.value}"
            raise ValueError(msg)

    @classmethod
    def of(cls, alpha: float | AlphaOrder) -> AlphaOrder:
        """Classify a number, passing an existing order through."""
        if isinstance(alpha, AlphaOrder):
            return alpha
        alpha = float(alpha)
        if math.isnan(alpha) or alpha < 0:
            msg = f"Order must be a nonnegative number, got {alpha}"
            raise ValueError(msg)
        if alpha == 0:
            return cls(AlphaKind.ZERO, 0.0)
        if math.isinf(alpha):
            return cls(AlphaKind.INFINITY, math.inf)
        if abs(alpha - 1.0) < ALPHA_ONE_TOL:
            return cls(AlphaKind.ONE, 1.0)
        return cls(AlphaKind.FINITE, alpha)

    @property
    def is_finite(self) -> bool:
        """Whether the order is a finite value away from 0 and 1."""
        return self.kind is AlphaKind.FINITE

    def __float__(self) -> float:
        """Return the order as a float."""
        return self.value

    def __str__(self) -> str:
        """Render the order, ``inf`` for infinity."""
        if self.kind is AlphaKind.INFINITY:
            return "inf"
        return format(self.value, "g")


def as_alpha(alpha: float | AlphaOrder) -> AlphaOrder:
    """Shorthand for :meth:`AlphaOrder.of`."""
    return AlphaOrder.of(alpha)


@dataclass(frozen=True)
class LogValue:
    """A nonnegative real stored as its logarithm (``-inf`` for zero).

    Examples:
        ```pycon
        >>> a = LogValue.of(2.0) * LogValue.of(3.0)
        >>> round(a.value, 12)
        6.0
        >>> round(LogValue.sum([LogValue.of(1.0), LogValue.of(3.0)]).value, 12)
        4.0
        >>> LogValue.of(0.0).log_val
        -inf

        ```
    """

    log_val: float

    def __post_init__(self) -> None:
        """Reject nan and ``+inf`` logarithms."""
        if math.isnan(self.log_val) or self.log_val == math.inf:
            msg = f"LogValue needs a log in [-inf, inf), got {self.log_val}"
            raise ValueError(msg)

    @classmethod
    def of(cls, value: float) -> LogValue:
        """Wrap a nonnegative real."""
        if value < 0:
            msg = f"LogValue holds nonnegative reals, got {value}"
            raise ValueError(msg)
        return cls(math.log(value) if value > 0 else -math.inf)

    @classmethod
    def sum(cls, values: Iterable[LogValue]) -> LogValue:
        """Sum values in the log domain."""
        logs = [v.log_val for v in values]
        if not logs:
            return cls(-math.inf)
        return cls(float(log_sum_exp(logs)))

    @property
    def value(self) -> float:
        """Return the real value."""
        return math.exp(self.log_val)

    def __mul__(self, other: LogValue) -> LogValue:
        """Multiply by adding logs."""
        return LogValue(self.log_val + other.log_val)

    def __truediv__(self, other: LogValue) -> LogValue:
        """Divide by subtracting logs."""
        if other.log_val == -math.inf:
            msg = "Division of a LogValue by zero"
            raise ZeroDivisionError(msg)
        return LogValue(self.log_val - other.log_val)

    def __add__(self, other: LogValue) -> LogValue:
        """Add with a log-sum-exp."""
        return LogValue.sum((self, other))

    def __pow__(self, exponent: float) -> LogValue:
        """Raise to a real power."""
        if self.log_val == -math.inf:
            if exponent < 0:
                msg = "Negative power of a zero LogValue"
                raise ZeroDivisionError(msg)
            return LogValue(-math.inf if exponent > 0 else 0.0)
        return LogValue(self.log_val * exponent)


def _check_simplex(probs: FloatArray, axis: int | None = None) -> None:
    if not np.all(np.isfinite(probs)) or np.any(probs < 0):
        msg = "Probabilities must be finite and nonnegative"
        raise NotADistribution(msg)
    total = probs.sum(axis=axis)
    if np.any(np.abs(total - 1.0) > _SUM_TOL * max(1.0, math.log2(probs.size + 1))):
        msg = f"Probabilities must sum to 1, got {total}"
        raise NotADistribution(msg)


@dataclass(frozen=True, eq=False)
class ProbVector:
    """A point on the probability simplex."""

    probs: FloatArray

    def __post_init__(self) -> None:
        """Validate and freeze the probabilities."""
        probs = _readonly(self.probs)
        if probs.ndim != 1 or probs.size == 0:
            msg = f"ProbVector needs a nonempty 1-d array, got shape {probs.shape}"
            raise NotADistribution(msg)
        _check_simplex(probs)
        object.__setattr__(self, "probs", probs)

    @property
    def alphabet_size(self) -> int:
        """Number of symbols."""
        return int(self.probs.size)

    @property
    def support(self) -> NDArray[np.bool_]:
        """Mask of symbols with positive probability."""
        return self.probs > 0

    def __len__(self) -> int:
        """Return the alphabet size."""
        return self.alphabet_size

    def __array__(self, dtype: object = None, copy: object = None) -> FloatArray:
        """Expose the probabilities to numpy."""
        out = np.asarray(self.probs, dtype=dtype)  # type: ignore[call-overload]
        return out  # type: ignore[no-any-return]


@dataclass(frozen=True, eq=False)
class Channel:
    """Row-stochastic matrix ``P_{Y|X}`` indexed ``(x, y)``.

    Rows whose conditioning point has zero probability are flagged in
    `defined`; they hold zeros and are skipped by every downstream sum.
    """

    rows: FloatArray
    defined: NDArray[np.bool_] = field(default=None)  # type: ignore[assignment]

    def __post_init__(self) -> None:
        """Validate defined rows and freeze the matrix."""
        rows = _readonly(self.rows)
        if rows.ndim != 2 or rows.size == 0:
            msg = f"Channel needs a nonempty 2-d array, got shape {rows.shape}"
            raise NotADistribution(msg)
        defined = (
            np.ones(rows.shape[0], dtype=bool)
            if self.defined is None
            else np.array(self.defined, dtype=bool)
        )
        defined.setflags(write=False)
        if defined.shape != (rows.shape[0],):
            msg = "Channel row mask does not match the number of rows"
            raise ValueError(msg)
        _check_simplex(rows[defined], axis=1)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "defined", defined)

    @property
    def input_size(self) -> int:
        """Number of inputs."""
        return int(self.rows.shape[0])

    @property
    def output_size(self) -> int:
        """Number of outputs."""
        return int(self.rows.shape[1])

    def row(self, x: int) -> ProbVector:
        """Row ``P_{Y|X}(·|x)`` as a distribution."""
        if not self.defined[x]:
            msg = f"Row {x} is undefined (zero-probability conditioning point)"
            raise ValueError(msg)
        return ProbVector(self.rows[x])


@dataclass(frozen=True, eq=False)
class JointPMF:
    """Joint pmf ``P_{XY}`` indexed ``(x, y)``, or ``P_{XYZ}`` indexed ``(x, y, z)``."""

    cells: FloatArray

    def __post_init__(self) -> None:
        """Validate and freeze the cells."""
        cells = _readonly(self.cells)
        if cells.ndim not in (2, 3) or cells.size == 0:
            msg = f"JointPMF needs a nonempty 2-d or 3-d array, got shape {cells.shape}"
            raise NotADistribution(msg)
        _check_simplex(cells)
        object.__setattr__(self, "cells", cells)

    @property
    def shape(self) -> tuple[int, ...]:
        """Shape of the cell array."""
        return tuple(int(n) for n in self.cells.shape)

    @property
    def is_triple(self) -> bool:
        """Whether the joint is indexed ``(x, y, z)``."""
        return self.cells.ndim == 3

    @property
    def px(self) -> FloatArray:
        """Marginal of X."""
        axes = (1, 2) if self.is_triple else 1
        return np.asarray(self.cells.sum(axis=axes))

    @property
    def py(self) -> FloatArray:
        """Marginal of Y."""
        axes = (0, 2) if self.is_triple else 0
        return np.asarray(self.cells.sum(axis=axes))

    @property
    def pz(self) -> FloatArray:
        """Marginal of Z, only for triples."""
        if not self.is_triple:
            msg = "pz needs a rank-3 joint"
            raise ValueError(msg)
        return np.asarray(self.cells.sum(axis=(0, 1)))

    def transpose(self) -> JointPMF:
        """Swap the roles of X and Y."""
        axes = (1, 0, 2) if self.is_triple else (1, 0)
        return JointPMF(np.transpose(self.cells, axes))

    def channel(self) -> Channel:
        """``P_{Y|X}`` with rows at ``P_X(x) = 0`` flagged undefined."""
        if self.is_triple:
            msg = "channel() takes a 2-d joint"
            raise ValueError(msg)
        return _conditional(self.cells, self.px)

    def __array__(self, dtype: object = None, copy: object = None) -> FloatArray:
        """Expose the cells to numpy."""
        out = np.asarray(self.cells, dtype=dtype)  # type: ignore[call-overload]
        return out  # type: ignore[no-any-return]


def _conditional(cells: FloatArray, marginal: FloatArray) -> Channel:
    defined = marginal > 0
    rows = np.zeros_like(cells)
    rows[defined] = cells[defined] / marginal[defined, None]
    rows[defined] /= rows[defined].sum(axis=1, keepdims=True)
    return Channel(rows, defined)


def validate_and_normalize(
    raw: ArrayLike, tol: float = VALIDATION_TOL, kind: str | None = None
) -> ProbVector | Channel | JointPMF:
    """Validate raw numbers and return the matching probability type.

    Entries in ``[-tol, 0)`` are clipped to zero and the result is renormalized
    exactly; anything farther from the simplex is rejected.

    Examples:
        ```pycon
        >>> validate_and_normalize([0.5, 0.5]).probs.tolist()
        [0.5, 0.5]
        >>> rows = [[0.75, 0.25], [0.5, 0.5]]
        >>> validate_and_normalize(rows, kind="channel").input_size
        2

        ```

    Args:
        raw (ArrayLike): Vector, matrix or rank-3 tensor.
        tol (float): Accepted deviation, per entry and for each sum.
        kind (str | None): ``"channel"`` to read a matrix as row-stochastic;
            otherwise matrices and tensors are joints.

    Returns:
        ProbVector | Channel | JointPMF: The validated value.

    Raises:
        NotADistribution: If an entry is below ``-tol`` or a sum is off by more
            than ``tol``.
    """
    arr = np.array(raw, dtype=np.float64)
    if arr.size == 0 or not np.all(np.isfinite(arr)):
        msg = "Distribution entries must be finite and nonempty"
        raise NotADistribution(msg)
    if np.any(arr < -tol):
        msg = f"Entry {arr.min()} is below the tolerance -{tol}"
        raise NotADistribution(msg)
    arr = np.clip(arr, 0.0, None)
    if kind == "channel":
        if arr.ndim != 2:
            msg = f"A channel is a matrix, got shape {arr.shape}"
            raise NotADistribution(msg)
        sums = arr.sum(axis=1, keepdims=True)
        if np.any(np.abs(sums - 1.0) > tol):
            msg = f"Channel rows must sum to 1 within {tol}, got {sums.ravel()}"
            raise NotADistribution(msg)
        return Channel(arr / sums)
    total = arr.sum()
    if abs(total - 1.0) > tol:
        msg = f"Probabilities must sum to 1 within {tol}, got {total}"
        raise NotADistribution(msg)
    arr = arr / total
    if arr.ndim == 1:
        return ProbVector(arr)
    return JointPMF(arr)


def as_joint(obj: JointPMF | ArrayLike, tol: float = VALIDATION_TOL) -> JointPMF:
    """Coerce to a validated :class:`JointPMF`."""
    if isinstance(obj, JointPMF):
        return obj
    result = validate_and_normalize(obj, tol)
    if not isinstance(result, JointPMF):
        msg = "Expected a 2-d or 3-d joint pmf"
        raise NotADistribution(msg)
    return result


def as_prob_vector(
    obj: ProbVector | ArrayLike, tol: float = VALIDATION_TOL
) -> ProbVector:
    """Coerce to a validated :class:`ProbVector`."""
    if isinstance(obj, ProbVector):
        return obj
    result = validate_and_normalize(obj, tol)
    if not isinstance(result, ProbVector):
        msg = "Expected a probability vector"
        raise NotADistribution(msg)
    return result


def as_channel(obj: Channel | ArrayLike, tol: float = VALIDATION_TOL) -> Channel:
    """Coerce to a validated :class:`Channel`."""
    if isinstance(obj, Channel):
        return obj
    result = validate_and_normalize(obj, tol, kind="channel")
    assert isinstance(result, Channel)
    return result


class Marginals(NamedTuple):
    """Both marginals and both conditionals of a 2-d joint."""

    px: ProbVector
    py: ProbVector
    y_given_x: Channel
    x_given_y: Channel


def marginals(joint: JointPMF | ArrayLike) -> Marginals:
    """Marginals and both conditionals of a 2-d joint.

    Examples:
        ```pycon
        >>> m = marginals([[0.375, 0.125], [0.125, 0.375]])
        >>> m.py.probs.tolist()
        [0.5, 0.5]
        >>> marginals([[1.0, 0.0], [0.0, 0.0]]).x_given_y.defined.tolist()
        [True, False]

        ```
    """
    joint = as_joint(joint)
    if joint.is_triple:
        msg = "marginals() takes a 2-d joint"
        raise ValueError(msg)
    px, py = joint.px, joint.py
    return Marginals(
        ProbVector(px / px.sum()),
        ProbVector(py / py.sum()),
        _conditional(joint.cells, px),
        _conditional(joint.cells.T, py),
    )


def joint_from_channel(
    prior: ProbVector | ArrayLike, channel: Channel | ArrayLike
) -> JointPMF:
    """``P_X(x) P_{Y|X}(y|x)`` as a joint."""
    prior = as_prob_vector(prior)
    channel = as_channel(channel)
    if prior.alphabet_size != channel.input_size:
        msg = (
            f"Prior has {prior.alphabet_size} symbols but the channel has "
            f"{channel.input_size} inputs"
        )
        raise ValueError(msg)
    cells = prior.probs[:, None] * channel.rows
    return JointPMF(cells / cells.sum())


def product_joint(a: JointPMF | ArrayLike, b: JointPMF | ArrayLike) -> JointPMF:
    """Joint of two independent pairs.

    Cells are indexed ``(x_a * n_b + x_b, y_a * m_b + y_b)``.
    """
    a, b = as_joint(a), as_joint(b)
    cells = np.kron(a.cells, b.cells)
    return JointPMF(cells / cells.sum())


def iid_extension(joint: JointPMF | ArrayLike, n: int) -> JointPMF:
    """The n-fold product ``P_{X^n Y^n}`` of a 2-d joint."""
    if n < 1:
        msg = f"n must be at least 1, got {n}"
        raise ValueError(msg)
    base = as_joint(joint)
    result = base
    for _ in range(n - 1):
        result = product_joint(result, base)
    return result


def _log_power_mean(
    log_f: FloatArray, weights: FloatArray, order: float, axis: int
) -> FloatArray:
    positive = np.broadcast_to(weights > 0, log_f.shape)
    if order == 0:
        with np.errstate(invalid="ignore"):
            terms = np.where(positive, weights * log_f, 0.0)
        return np.asarray(terms.sum(axis=axis))
    if math.isinf(order):
        masked = np.where(positive, log_f, -np.inf if order > 0 else np.inf)
        return np.asarray(masked.max(axis=axis) if order > 0 else masked.min(axis=axis))
    with np.errstate(invalid="ignore", over="ignore"):
        terms = np.where(positive, order * log_f + safe_log(weights), -np.inf)
    return log_sum_exp(terms, axis=axis) / order


def nested_norm(
    f: ArrayLike,
    inner_order: float,
    outer_order: float,
    inner_weights: ProbVector | ArrayLike,
    outer_weights: ProbVector | ArrayLike,
) -> float:
    """Nested weighted norm ``‖ ‖f‖_{L^p(inner)} ‖_{L^q(outer)}``.

    The inner norm runs over axis 0 of `f` and the outer over axis 1. An order
    of ``0`` is the limit of the quasi-norms, ``exp E[log f]``; ``inf`` is the
    essential supremum over positive weights. Negative orders are accepted for
    strictly positive `f`.

    Examples:
        ```pycon
        >>> round(nested_norm([[1.0], [2.0]], 2, 1, [0.5, 0.5], [1.0]), 4)
        1.5811
        >>> flat = [[3.0, 3.0], [3.0, 3.0]]
        >>> round(nested_norm(flat, 0.5, 7, [0.5, 0.5], [0.2, 0.8]), 12)
        3.0

        ```

    Args:
        f (ArrayLike): Nonnegative matrix.
        inner_order (float): Order p of the inner norm.
        outer_order (float): Order q of the outer norm.
        inner_weights (ProbVector | ArrayLike): Measure on axis 0.
        outer_weights (ProbVector | ArrayLike): Measure on axis 1.

    Returns:
        float: The nested norm.
    """
    arr = np.asarray(f, dtype=np.float64)
    if arr.ndim != 2 or np.any(arr < 0):
        msg = "nested_norm takes a nonnegative matrix"
        raise ValueError(msg)
    inner = np.asarray(as_prob_vector(inner_weights).probs)
    outer = np.asarray(as_prob_vector(outer_weights).probs)
    if arr.shape != (inner.size, outer.size):
        sizes = (inner.size, outer.size)
        msg = f"Weights of sizes {sizes} do not fit shape {arr.shape}"
        raise ValueError(msg)
    log_inner = _log_power_mean(safe_log(arr), inner[:, None], inner_order, axis=0)
    return float(np.exp(_log_power_mean(log_inner, outer, outer_order, axis=0)))


def random_instance(
    seed: int, nx: int, ny: int, kind: str = "joint", nz: int | None = None
) -> JointPMF:
    """Seeded full-support random joint.

    ``kind="joint"`` draws all cells from a flat Dirichlet; ``kind="channel+prior"``
    draws the prior and every channel row independently. With `nz` the result is
    a rank-3 joint indexed ``(x, y, z)``.

    Args:
        seed (int): Seed of the generator.
        nx (int): Size of X.
        ny (int): Size of Y.
        kind (str): ``"joint"`` or ``"channel+prior"``.
        nz (int | None): Size of Z for a triple.

    Returns:
        JointPMF: The sampled joint.
    """
    if min(nx, ny, nz or 1) < 1:
        msg = "Alphabet sizes must be positive"
        raise ValueError(msg)
    rng = np.random.default_rng(seed)
    shape = (nx, ny) if nz is None else (nx, ny, nz)
    if kind == "joint":
        cells = rng.dirichlet(np.ones(math.prod(shape))).reshape(shape)
    elif kind == "channel+prior":
        prior = rng.dirichlet(np.ones(nx))
        rest = math.prod(shape[1:])
        rows = rng.dirichlet(np.ones(rest), size=nx).reshape(shape)
        cells = prior.reshape((nx,) + (1,) * (len(shape) - 1)) * rows
    else:
        msg = f"Unknown instance kind {kind!r}; expected 'joint' or 'channel+prior'"
        raise ValueError(msg)
    return JointPMF(cells / cells.sum())


def random_channel(seed: int, nx: int, ny: int) -> Channel:
    """Seeded random channel with full support."""
    rng = np.random.default_rng(seed)
    return Channel(rng.dirichlet(np.ones(ny), size=nx))


_SCHEMA = (
    'expected {"pxy": [[...]]}, {"pxyz": [[[...]]]} or {"px": [...], "pygx": [[...]]}'
)


def _field(
    document: dict[str, object], name: str, ndim: int, source: str | None
) -> FloatArray:
    try:
        arr = np.array(document[name], dtype=np.float64)
    except (TypeError, ValueError) as exc:
        msg = f"not a numeric array ({exc})"
        raise ParseError(msg, source=source, field=name) from exc
    if arr.ndim != ndim:
        msg = f"expected a {ndim}-d array, got shape {arr.shape}"
        raise ParseError(msg, source=source, field=name)
    return arr


def read_distribution(
    path: str | os.PathLike[str], tol: float = VALIDATION_TOL
) -> JointPMF | tuple[ProbVector, Channel]:
    """Read a distribution file.

    Args:
        path (str | os.PathLike): JSON file in one of the three schemas.
        tol (float): Validation tolerance.

    Returns:
        JointPMF | tuple[ProbVector, Channel]: The joint, or the prior and channel.

    Raises:
        ParseError: On malformed JSON or schema violations.
    """
    source = str(path)
    try:
        with open(path, encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise ParseError(str(exc), source=source) from exc
    return parse_distribution(text, source=source, tol=tol)


def parse_distribution(
    text: str, source: str | None = None, tol: float = VALIDATION_TOL
) -> JointPMF | tuple[ProbVector, Channel]:
    """Parse distribution JSON text."""
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(
            exc.msg, source=source, line=exc.lineno, column=exc.colno
        ) from exc
    if not isinstance(document, dict):
        msg = f"top level must be an object; {_SCHEMA}"
        raise ParseError(msg, source=source)
    keys = set(document)
    if keys == {"pxy"}:
        return as_joint(_field(document, "pxy", 2, source), tol)
    if keys == {"pxyz"}:
        return as_joint(_field(document, "pxyz", 3, source), tol)
    if keys == {"px", "pygx"}:
        prior = as_prob_vector(_field(document, "px", 1, source), tol)
        channel = as_channel(_field(document, "pygx", 2, source), tol)
        if prior.alphabet_size != channel.input_size:
            msg = f"{channel.input_size} channel rows for {prior.alphabet_size} inputs"
            raise ParseError(msg, source=source, field="pygx")
        return prior, channel
    unexpected = sorted(keys - {"pxy", "pxyz", "px", "pygx"})
    name = unexpected[0] if unexpected else None
    msg = f"unrecognised fields {sorted(keys)}; {_SCHEMA}"
    raise ParseError(msg, source=source, field=name)


def load_joint(path: str | os.PathLike[str], tol: float = VALIDATION_TOL) -> JointPMF:
    """Read any schema and return the joint it describes."""
    result = read_distribution(path, tol)
    if isinstance(result, JointPMF):
        return result
    return joint_from_channel(*result)


def write_distribution(
    obj: JointPMF | tuple[ProbVector, Channel], path: str | os.PathLike[str]
) -> None:
    """Write a distribution in the JSON schema that :func:`read_distribution` reads."""
    if isinstance(obj, JointPMF):
        key = "pxyz" if obj.is_triple else "pxy"
        document: dict[str, object] = {key: obj.cells.tolist()}
    else:
        prior, channel = obj
        document = {"px": prior.probs.tolist(), "pygx": channel.rows.tolist()}
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(document, handle)
        handle.write("\n")


def write_table(
    header: Sequence[str],
    rows: Iterable[Sequence[float | int | str | bool]],
    path: str | os.PathLike[str] | None = None,
    digits: int = 17,
) -> str:
    """Render rows as CSV with a header row.

    The text is written to `path` when given, otherwise to standard output,
    and returned in both cases.
    """
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        if len(row) != len(header):
            msg = f"Row has {len(row)} cells for {len(header)} columns"
            raise ValueError(msg)
        writer.writerow(format_row(row, digits))
    text = buffer.getvalue()
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
    return text
