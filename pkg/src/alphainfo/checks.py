"""Property suites run on seeded random instances.

Each suite counts, per property, how many instances satisfied it. A solver
that fails to converge counts as a violation of the property it was
computing.
"""

from __future__ import annotations

import logging
import math
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .errors import NoConvergence
from .prob_core import product_joint, random_channel, random_instance
from .renyi import renyi_entropy
from .sibson import (
    csiszar_mi,
    independence_dpi_check,
    lapidoth_pfister_mi,
    maximal_leakage,
    sibson_mi,
    tensorization_check,
)

TYPE_CHECKING = False
if TYPE_CHECKING:
    from collections.abc import Callable, Iterator

    from numpy.typing import NDArray

__all__ = [
    "SUITES",
    "CheckReport",
    "ordering_suite",
    "property_suite",
    "run_suite",
    "tensorization_suite",
]

logger = logging.getLogger(__name__)

DEFAULT_INSTANCES = 500
CHECK_TOL = 1e-9
#: Solver-backed comparisons carry the solver tolerance instead.
ORDERING_TOL = 1e-6
ALPHAS = (0.5, 1.0, 2.0, 5.0, math.inf)
CONCAVITY_GRID = np.linspace(0.25, 8.0, 32)
INDEPENDENCE_THRESHOLD = 1e-9


@dataclass
class CheckReport:
    """Pass and fail counts per property of one suite."""

    suite: str
    passed: Counter[str] = field(default_factory=Counter)
    failed: Counter[str] = field(default_factory=Counter)

    def record(self, name: str, ok: bool) -> None:
        """Count one instance of a property."""
        (self.passed if ok else self.failed)[name] += 1
        if not ok:
            logger.info("%s: violation of %s", self.suite, name)

    @property
    def violations(self) -> int:
        """Total failed instances over every property."""
        return sum(self.failed.values())

    @property
    def ok(self) -> bool:
        """Whether no property was violated."""
        return self.violations == 0

    def rows(self) -> list[tuple[str, str, int, int]]:
        """Return ``(suite, property, passed, failed)`` rows sorted by property."""
        names = sorted(set(self.passed) | set(self.failed))
        return [(self.suite, n, self.passed[n], self.failed[n]) for n in names]


def _instances(count: int, seed: int) -> Iterator[tuple[int, int, int]]:
    rng = np.random.default_rng(seed)
    for _ in range(count):
        nx, ny = rng.integers(2, 5, size=2)
        yield int(rng.integers(2**31)), int(nx), int(ny)


def _nondecreasing(values: NDArray[np.float64], tol: float) -> bool:
    return bool(np.all(np.diff(values) >= -tol))


def property_suite(
    instances: int = DEFAULT_INSTANCES, seed: int = 0, tol: float = CHECK_TOL
) -> CheckReport:
    """Axiomatic properties of Sibson's measure.

    Non-negativity, zero exactly at independence, monotonicity in α up to the
    maximal leakage, additivity over independent pairs, data processing
    along ``X - Y - Z``, invariance under relabeling, the ``H_{1/α}`` bound and
    concavity of ``(1-α)·I_α`` in α.
    """
    report = CheckReport("properties")
    for s, nx, ny in _instances(instances, seed):
        cells = random_instance(s, nx, ny).cells
        px, py = cells.sum(axis=1), cells.sum(axis=0)
        values = np.array([sibson_mi(cells, a).value for a in ALPHAS])

        report.record("nonnegative", bool(np.all(values >= -tol)))
        independent = sibson_mi(np.outer(px, py), 2.0).value
        report.record(
            "zero_iff_independent",
            independent < INDEPENDENCE_THRESHOLD
            and values[2] > INDEPENDENCE_THRESHOLD,
        )
        leakage = maximal_leakage(cells)
        report.record(
            "monotone_in_alpha",
            _nondecreasing(values, tol) and bool(np.all(values <= leakage + tol)),
        )

        other = random_instance(s + 1, ny, nx).cells
        pair = product_joint(cells, other)
        report.record(
            "additive",
            all(
                abs(
                    sibson_mi(pair, a).value
                    - sibson_mi(cells, a).value
                    - sibson_mi(other, a).value
                )
                <= tol
                for a in ALPHAS
            ),
        )

        post = random_channel(s + 2, ny, 3).rows
        pxz = cells @ post
        pyz = py[:, None] * post
        report.record(
            "data_processing",
            all(
                sibson_mi(pxz, a).value
                <= min(sibson_mi(cells, a).value, sibson_mi(pyz, a).value) + tol
                for a in ALPHAS
            ),
        )

        rng = np.random.default_rng(s)
        shuffled = cells[rng.permutation(nx)][:, rng.permutation(ny)]
        report.record(
            "relabeling_invariant",
            all(
                abs(sibson_mi(shuffled, a).value - v) <= tol
                for a, v in zip(ALPHAS, values)
            ),
        )

        bounded = True
        for a, v in zip(ALPHAS, values):
            order = 0.0 if math.isinf(a) else 1.0 / a
            cap = min(renyi_entropy(px, order), renyi_entropy(py, order))
            bounded = bounded and v <= cap + tol
        report.record("bounded_by_entropy", bounded)

        scaled = np.array(
            [(1.0 - a) * sibson_mi(cells, a).value for a in CONCAVITY_GRID]
        )
        report.record("concave_in_alpha", bool(np.all(np.diff(scaled, 2) <= 1e-8)))
    return report


def tensorization_suite(
    instances: int = DEFAULT_INSTANCES, seed: int = 0, tol: float = CHECK_TOL
) -> CheckReport:
    """Hölder tensorization over two branches and the independence DPI."""
    report = CheckReport("tensorization")
    for s, nx, ny in _instances(instances, seed):
        rng = np.random.default_rng(s)
        prior = rng.dirichlet(np.ones(nx))
        branches = [random_channel(s, nx, ny), random_channel(s + 1, nx, 2)]
        beta = 1.0 + float(rng.uniform(0.1, 4.0))
        betas = [beta, beta / (beta - 1.0)]
        ok = True
        for a in (0.5, 2.0, 5.0):
            lhs, rhs = tensorization_check(branches, prior, a, betas)
            ok = ok and lhs <= rhs + tol
        report.record("holder_tensorization", ok)

        pz = rng.dirichlet(np.ones(2))
        coupling = random_channel(s + 2, nx * 2, ny)
        report.record(
            "independence_dpi",
            all(
                lhs <= rhs + tol
                for lhs, rhs in (
                    independence_dpi_check(prior, pz, coupling, a) for a in ALPHAS
                )
            ),
        )
    return report


def _guarded(fn: Callable[[], bool]) -> bool:
    try:
        return fn()
    except NoConvergence as exc:
        logger.warning("Solver did not converge: %s", exc)
        return False


def ordering_suite(
    instances: int = DEFAULT_INSTANCES, seed: int = 0, tol: float = ORDERING_TOL
) -> CheckReport:
    """Csiszár and Lapidoth-Pfister measures against Sibson's.

    Csiszár's value lies below Sibson's for α > 1 and above it for α < 1;
    the Lapidoth-Pfister value never exceeds Sibson's.
    """
    report = CheckReport("ordering")
    for s, nx, ny in _instances(instances, seed):
        cells = random_instance(s, nx, ny).cells
        above = sibson_mi(cells, 2.0).value
        below = sibson_mi(cells, 0.5).value
        report.record(
            "csiszar_below_sibson",
            _guarded(lambda: csiszar_mi(cells, 2.0) <= above + tol),
        )
        report.record(
            "csiszar_above_sibson",
            _guarded(lambda: csiszar_mi(cells, 0.5) >= below - tol),
        )
        report.record(
            "lapidoth_pfister_below_sibson",
            _guarded(lambda: lapidoth_pfister_mi(cells, 2.0, seed=s) <= above + tol),
        )
    return report


SUITES: dict[str, Callable[[int, int, float], CheckReport]] = {
    "ordering": ordering_suite,
    "properties": property_suite,
    "tensorization": tensorization_suite,
}


def run_suite(
    name: str,
    instances: int = DEFAULT_INSTANCES,
    seed: int = 0,
    tol: float | None = None,
) -> CheckReport:
    """Run a suite by name with its own default tolerance unless `tol` is given.

    Examples:
        ```pycon
        >>> run_suite("properties", instances=3).ok
        True

        ```
    """
    try:
        suite = SUITES[name]
    except KeyError:
        msg = f"Unknown suite {name!r}; choose from {', '.join(sorted(SUITES))}"
        raise ValueError(msg) from None
    if instances < 1:
        msg = f"Need at least one instance, got {instances}"
        raise ValueError(msg)
    if tol is None:
        tol = ORDERING_TOL if name == "ordering" else CHECK_TOL
    return suite(instances, seed, tol)
