"""Exact Orlik-Terao and Stanley-Reisner computations for linear codes."""

from .codes import LinearCode, code_params, parity_check
from .errors import OTCodesError
from .harness import load, random_code, verify

__all__ = ["LinearCode", "OTCodesError", "code_params", "load", "parity_check", "random_code", "verify"]
__version__ = "0.1.0"
