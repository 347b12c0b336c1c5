"""Finitary sets: hereditarily finite and rational sets, their ultrametric,
closed modal K over the set universe, and the Egli-Milner partial-set domain."""

from .errors import FinitaryError, ParseError
from .hfcore import HfSet
from .rational import RationalSet

__all__ = ["FinitaryError", "HfSet", "ParseError", "RationalSet"]
__version__ = "0.1.0"
