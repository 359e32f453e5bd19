"""
Error types for the cutoff laboratory.

Every error raised on purpose by the package derives from CutoffLabError so
callers (the CLI in particular) can tell expected failures from bugs.
"""

from typing import Any, Dict, Optional


class CutoffLabError(Exception):
    """Base class for all cutoff-lab errors."""


class ConfigurationError(CutoffLabError, ValueError):
    """Invalid grid parameters, specs or configuration values."""


class GridMismatchError(CutoffLabError, ValueError):
    """Operands live on different grids."""


class ShiftError(CutoffLabError, ValueError):
    """Translation moves a function entirely out of the domain."""


class DegenerateRatioError(CutoffLabError, ValueError):
    """A difference quotient was requested for identical arguments."""


class CertificationError(CutoffLabError):
    """A partition-of-unity pair violates one of its certified bounds."""

    def __init__(self, message: str, record: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.record = record or {}
