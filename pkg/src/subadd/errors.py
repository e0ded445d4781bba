"""Exception taxonomy for the toolkit.

Every error raised deliberately by this package derives from
:class:`ToolkitError`, so callers can catch one type at the boundary.  The
subclasses separate *caller* mistakes (bad argument values, malformed
configuration) from *mathematical* failure modes (leaving a function's
domain, numeric overflow, division by an interval straddling zero) and from
*internal* defects detected by self-checks.
"""

from __future__ import annotations

__all__ = [
    "ToolkitError",
    "InputError",
    "DomainError",
    "RangeError",
    "SingularityError",
    "PreconditionError",
    "ConstructionBugError",
]


class ToolkitError(Exception):
    """Base class for all errors raised by this package."""


class InputError(ToolkitError):
    """A caller-supplied argument or configuration value is invalid."""


class DomainError(ToolkitError):
    """An argument lies outside the mathematical domain of a function."""


class RangeError(ToolkitError):
    """A computation left the representable floating-point range."""


class SingularityError(ToolkitError):
    """An operation hit a singular configuration (e.g. dividing by an
    interval that contains zero)."""


class PreconditionError(ToolkitError):
    """A documented precondition of a higher-level check does not hold, so
    the check's answer would be meaningless rather than false."""


class ConstructionBugError(ToolkitError):
    """An internal self-check failed; indicates a defect in this package,
    not in the caller's input."""
