"""Precision modes for polynomial coefficients and root iteration.

Two representations are used throughout the package:

* ``standard``: numpy float64 / complex128 arrays.
* ``extended``: numpy object arrays of :class:`gmpy2.mpfr` / :class:`gmpy2.mpc`
  carrying a fixed number of mantissa bits (never fewer than 128, i.e. about
  38 significant decimal digits).

Internally a precision is a single ``bits`` value where ``None`` means
standard.  Public functions accept ``precision`` as ``"standard"``,
``"extended"``, ``"auto"``, an explicit bit count, or ``None`` (use the
process default, overridable through the ``XPOLY_PRECISION`` environment
variable).
"""

import contextlib
import math
import os

import gmpy2
import numpy as np

STANDARD = "standard"
EXTENDED = "extended"
AUTO = "auto"
MODES = (STANDARD, EXTENDED, AUTO)

ENV_VAR = "XPOLY_PRECISION"

MIN_EXTENDED_BITS = 128
# Above this degree float64 monomial coefficients no longer separate the
# real zeros of Laguerre-type polynomials.
AUTO_MAX_STANDARD_DEGREE = 20


def default_mode():
    mode = os.environ.get(ENV_VAR, AUTO).strip().lower()
    if mode not in MODES:
        raise ValueError(f"{ENV_VAR} must be one of {MODES}, got {mode!r}")
    return mode


def extended_bits(degree):
    """Working precision for a polynomial of the given degree.

    Monomial-basis zeros of the classical families lose roughly half a
    decimal digit per degree; two bits per degree plus a fixed reserve keeps
    about 16 good digits in the worst computed case.
    """
    return max(MIN_EXTENDED_BITS, 96 + 2 * int(degree))


def resolve(precision, degree):
    """Map a user-facing precision argument to ``bits`` (``None`` = float64)."""
    if precision is None:
        precision = default_mode()
    if isinstance(precision, (int, np.integer)) and not isinstance(precision, bool):
        if precision < MIN_EXTENDED_BITS:
            raise ValueError(f"extended precision needs >= {MIN_EXTENDED_BITS} bits")
        return int(precision)
    if precision == STANDARD:
        return None
    if precision == EXTENDED:
        return extended_bits(degree)
    if precision == AUTO:
        if degree <= AUTO_MAX_STANDARD_DEGREE:
            return None
        return extended_bits(degree)
    raise ValueError(f"unknown precision {precision!r}")


def mode_name(bits):
    return STANDARD if bits is None else EXTENDED


@contextlib.contextmanager
def working_precision(bits):
    """Thread-local gmpy2 context with ``bits`` of mantissa; no-op for float64."""
    if bits is None:
        yield
        return
    with gmpy2.context(gmpy2.get_context(), precision=bits):
        yield


def real(x, bits):
    """Convert ``x`` to a scalar of the requested precision."""
    if bits is None:
        return float(x)
    return gmpy2.mpfr(x, bits)


def real_array(values, bits):
    if bits is None:
        return np.asarray([float(v) for v in values], dtype=np.float64)
    out = np.empty(len(values), dtype=object)
    for i, v in enumerate(values):
        out[i] = gmpy2.mpfr(v, bits)
    return out


def complex_array(values, bits):
    if bits is None:
        return np.asarray([complex(v) for v in values], dtype=np.complex128)
    out = np.empty(len(values), dtype=object)
    for i, v in enumerate(values):
        if not isinstance(v, (gmpy2.mpc, gmpy2.mpfr)):
            v = complex(v)
        out[i] = gmpy2.mpc(v, precision=(bits, bits))
    return out


def zeros(n, bits):
    if bits is None:
        return np.zeros(n, dtype=np.float64)
    out = np.empty(n, dtype=object)
    zero = gmpy2.mpfr(0, bits)
    for i in range(n):
        out[i] = zero
    return out


def to_complex128(values):
    return np.asarray([complex(v) for v in values], dtype=np.complex128)


def to_float64(values):
    return np.asarray([float(v) for v in values], dtype=np.float64)


def log_abs(x):
    """``log|x|`` for floats or mpfr values far outside the float64 range."""
    if isinstance(x, (gmpy2.mpfr, gmpy2.mpc)):
        a = abs(x)
        if a == 0:
            return -math.inf
        return float(gmpy2.log(a))
    a = abs(x)
    return math.log(a) if a > 0 else -math.inf
