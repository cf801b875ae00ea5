"""Volatility estimation toolkit: historical, GARCH, and implied estimators."""

from volest._volest import *  # noqa: F401,F403
from volest._volest import __version__  # noqa: F401
