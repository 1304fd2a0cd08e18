"""Activate, get and deactivate the logarithm base used for presentation.

Every computation in alphainfo is carried out in nats. The active base only
changes how values are reported by the command line and the example tables.
"""

from __future__ import annotations

import math
from threading import local

__all__ = ["activate", "deactivate", "from_base", "get_base", "to_base", "unit_label"]

_BASES: dict[str, tuple[float, str]] = {
    "e": (1.0, "nats"),
    "2": (math.log(2.0), "bits"),
    "10": (math.log(10.0), "hartleys"),
}
_ALIASES = {"nats": "e", "bits": "2", "hartleys": "10"}
_CURRENT = local()


def activate(base: str | None) -> str:
    """Activate a presentation base.

    Examples:
        ```pycon
        >>> activate("bits")
        '2'
        >>> round(to_base(math.log(8)), 12)
        3.0
        >>> deactivate()

        ```

    Args:
        base (str | None): One of `e`, `2`, `10` or the unit names `nats`, `bits`,
            `hartleys`. `None` is the same as calling ``deactivate()``.

    Returns:
        str: The canonical base that is now active.

    Raises:
        ValueError: If the base is unknown.
    """
    if base is None:
        _CURRENT.base = "e"
        return "e"
    key = _ALIASES.get(base, base)
    if key not in _BASES:
        msg = f"Unknown logarithm base {base!r}; expected one of {sorted(_BASES)}"
        raise ValueError(msg)
    _CURRENT.base = key
    return key


def deactivate() -> None:
    """Go back to natural logarithms."""
    _CURRENT.base = "e"


def get_base() -> str:
    """Return the active logarithm base."""
    try:
        return str(_CURRENT.base)
    except AttributeError:
        return "e"


def to_base(nats: float) -> float:
    """Convert a value in nats to the active base.

    Args:
        nats (float): Information value in nats.

    Returns:
        float: The same value in the active unit.
    """
    scale = _BASES[get_base()][0]
    if scale == 1.0:
        return nats
    return nats / scale


def from_base(value: float) -> float:
    """Convert a value given in the active base back to nats."""
    return value * _BASES[get_base()][0]


def unit_label() -> str:
    """Return the unit name of the active base."""
    return _BASES[get_base()][1]
