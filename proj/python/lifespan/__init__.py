"""Lifetime law of wireless sensor networks: analytic formulas plus a Monte
Carlo oracle, backed by the C++ core."""

from ._core import *  # noqa: F401,F403
from ._core import __doc__  # noqa: F401
