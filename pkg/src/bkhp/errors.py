"""Exception hierarchy shared by the whole package.

The CLI maps these onto exit codes: input problems exit 3, precision
exhaustion exits 2.  Negative verdicts are ordinary return values, not
exceptions.
"""


class BkhpError(Exception):
    """Base class for all package errors."""

    exit_code = 2


class InputError(BkhpError):
    """Malformed input: bad context data, mismatched objects, parse errors."""

    exit_code = 3


class PrecisionError(BkhpError):
    """A result could not be certified at the tracked precision."""

    exit_code = 2
