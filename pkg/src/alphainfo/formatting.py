"""Rendering of numbers for tables, and clamping of probability bounds."""

from __future__ import annotations

import math
from dataclasses import dataclass

TYPE_CHECKING = False
if TYPE_CHECKING:
    from collections.abc import Iterable

__all__ = ["Clamped", "clamp_probability", "format_row", "format_value"]


def _format_not_finite(value: float) -> str:
    """Spell a non-finite table cell the way ``float()`` reads it back."""
    if math.isnan(value):
        return "nan"
    return "inf" if value > 0 else "-inf"


def format_value(value: float | int | str | bool, digits: int = 17) -> str:
    """Render a table cell.

    Floats use `digits` significant digits so that ``float()`` reads back the
    exact value; non-finite values are written the way ``float()`` parses them.

    Examples:
        ```pycon
        >>> format_value(0.1)
        '0.10000000000000001'
        >>> format_value(float("inf"))
        'inf'
        >>> format_value(3)
        '3'
        >>> format_value(0.25, digits=3)
        '0.25'

        ```

    Args:
        value (float, int, str, bool): Cell content.
        digits (int): Significant digits for floats.

    Returns:
        str: Formatted cell.
    """
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, int):
        return str(value)
    if isinstance(value, str):
        return value
    value = float(value)
    if not math.isfinite(value):
        return _format_not_finite(value)
    return format(value, f".{digits}g")


def format_row(
    values: Iterable[float | int | str | bool], digits: int = 17
) -> list[str]:
    """Format every value of a result row with :func:`format_value`."""
    return [format_value(v, digits) for v in values]


@dataclass(frozen=True)
class Clamped:
    """A probability bound clamped to [0, 1], keeping the raw formula value."""

    value: float
    raw: float

    @property
    def vacuous(self) -> bool:
        """Whether clamping changed the raw value."""
        return self.value != self.raw

    def __float__(self) -> float:
        """Return the clamped value."""
        return self.value


def clamp_probability(raw: float, floor: float = 0.0, ceil: float = 1.0) -> Clamped:
    """Clamp a formula value into [floor, ceil].

    Examples:
        ```pycon
        >>> clamp_probability(1.7)
        Clamped(value=1.0, raw=1.7)
        >>> clamp_probability(0.25).vacuous
        False

        ```

    Args:
        raw (float): Formula value.
        floor (float): Lower end.
        ceil (float): Upper end.

    Returns:
        Clamped: Clamped value plus the raw input.
    """
    if math.isnan(raw):
        return Clamped(raw, raw)
    return Clamped(min(max(raw, floor), ceil), raw)
