"""Exception types shared across the package.

Two failure families matter operationally: bad input (the caller can fix the
data or the flags) and numerical breakdown (the data defeated the estimator).
The CLI maps them to distinct exit codes, so keep the split honest.
"""


class InputError(ValueError):
    """Invalid input data or configuration (CLI exit code 2)."""


class NumericalError(RuntimeError):
    """Estimation failed on valid-looking input, e.g. degenerate series or
    too few usable scales for the scaling regression (CLI exit code 3)."""
