"""Exceptions raised by alphainfo."""

from __future__ import annotations

__all__ = [
    "AlphaInfoError",
    "BadWeights",
    "CenterViolation",
    "InvalidTarget",
    "NoConvergence",
    "NonpositiveFunction",
    "NotADistribution",
    "NotSymmetric",
    "ParseError",
    "UnknownExample",
]


class AlphaInfoError(Exception):
    """Base class for every error raised on purpose by alphainfo."""


class NotADistribution(AlphaInfoError, ValueError):
    """An array has negative entries or does not sum to one."""


class ParseError(AlphaInfoError, ValueError):
    """A distribution file could not be read.

    Args:
        message (str): What went wrong.
        source (str | None): File name, when known.
        line (int | None): 1-based line of a JSON syntax error.
        column (int | None): 1-based column of a JSON syntax error.
        field (str | None): Offending schema field.
    """

    def __init__(
        self,
        message: str,
        *,
        source: str | None = None,
        line: int | None = None,
        column: int | None = None,
        field: str | None = None,
    ) -> None:
        self.source = source
        self.line = line
        self.column = column
        self.field = field
        where = []
        if source is not None:
            where.append(source)
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"column {column}")
        if field is not None:
            where.append(f"field {field!r}")
        super().__init__(f"{', '.join(where)}: {message}" if where else message)


class InvalidTarget(AlphaInfoError, ValueError):
    """Negative target passed to the binary divergence inverse."""


class BadWeights(AlphaInfoError, ValueError):
    """Hölder weights whose reciprocals do not sum to one."""


class NotSymmetric(AlphaInfoError, ValueError):
    """Channel is not α-weakly symmetric."""


class CenterViolation(AlphaInfoError, ValueError):
    """A model lies farther than the declared radius from the center."""


class NonpositiveFunction(AlphaInfoError, ValueError):
    """A function that must be strictly positive has a nonpositive entry."""


class UnknownExample(AlphaInfoError, ValueError):
    """No worked example with the requested name."""


class NoConvergence(AlphaInfoError, RuntimeError):
    """An iterative solver hit its iteration cap.

    The best value found so far stays available on the exception; for the
    estimators that only ever report lower bounds it is still a valid bound.
    """

    def __init__(
        self,
        message: str,
        *,
        best: object = None,
        iterations: int = 0,
        gap: float = float("nan"),
    ) -> None:
        self.best = best
        self.iterations = iterations
        self.gap = gap
        super().__init__(message)
