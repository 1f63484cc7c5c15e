"""Exception types raised by spinboost.

Everything derives from SpinboostError so callers can catch the whole
package with one clause.  The mixin bases (ValueError / RuntimeError)
keep behaviour sane for code that only knows the stdlib hierarchy.
"""

from __future__ import annotations

__all__ = [
    "SpinboostError",
    "BadDimensionError",
    "NonFiniteError",
    "NotHermitianError",
    "NoConvergenceError",
    "OutOfRangeError",
    "InvalidSpecError",
    "UnknownPresetError",
]


class SpinboostError(Exception):
    """Base class for all errors raised by this package."""


class BadDimensionError(SpinboostError, ValueError):
    """An array argument has the wrong shape for the operation."""


class NonFiniteError(SpinboostError, ValueError):
    """An input contains NaN or infinite entries."""


class NotHermitianError(SpinboostError, ValueError):
    """A matrix that must be Hermitian is not, beyond tolerance."""


class NoConvergenceError(SpinboostError, RuntimeError):
    """The iterative eigensolver failed to reach its tolerance."""


class OutOfRangeError(SpinboostError, ValueError):
    """A scalar parameter lies outside its documented domain."""


class InvalidSpecError(SpinboostError, ValueError):
    """A sweep specification is inconsistent or exceeds resource caps."""


class UnknownPresetError(SpinboostError, ValueError):
    """Requested preset name is not one of the bundled presets."""
