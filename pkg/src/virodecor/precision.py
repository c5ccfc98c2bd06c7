"""Working-precision policy for the floating-point side of the toolkit.

All log-space numerics run under mpmath at an extended precision (default
256-bit significand).  The default can be overridden through the
``VIRODECOR_PRECISION_BITS`` environment variable or per call via the
``prec`` keyword arguments.
"""

from __future__ import annotations

import os

_DEFAULT_BITS = 256


def default_precision() -> int:
    raw = os.environ.get("VIRODECOR_PRECISION_BITS")
    if raw is None:
        return _DEFAULT_BITS
    bits = int(raw)
    if bits < 53:
        raise ValueError("precision must be at least 53 bits")
    return bits
