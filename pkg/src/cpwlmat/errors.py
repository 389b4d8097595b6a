"""Exception types shared across the package."""

import os

DEFAULT_MAX_N = 20


class SchemaError(ValueError):
    """Malformed JSON input. ``field`` names the offending key."""

    def __init__(self, field, message):
        self.field = field
        super().__init__(f"{field}: {message}")


class SizeCapError(ValueError):
    """Ground-set size exceeds the configured cap."""


def max_n():
    """Hard cap on the ground-set size (``CPWLMAT_MAX_N`` overrides it)."""
    raw = os.environ.get("CPWLMAT_MAX_N")
    if raw is None:
        return DEFAULT_MAX_N
    try:
        return int(raw)
    except ValueError:
        raise SchemaError("CPWLMAT_MAX_N", f"not an integer: {raw!r}") from None


def check_n(n, cap=None):
    if not isinstance(n, int) or isinstance(n, bool):
        raise TypeError(f"n must be an int, got {type(n).__name__}")
    limit = max_n() if cap is None else cap
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if n > limit:
        raise SizeCapError(f"n={n} exceeds the size cap of {limit}")
    return n
