"""Run the alphainfo command line with ``python -m alphainfo``."""

from __future__ import annotations

from alphainfo.cli import main

if __name__ == "__main__":
    raise SystemExit(main())
