"""Fractional two-step Adams-Bashforth schemes."""

from ._core import *  # noqa: F401,F403

__version__ = "0.1.0"
