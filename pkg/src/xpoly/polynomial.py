"""Dense real-coefficient polynomials and the classical Laguerre/Jacobi families.

Coefficients are stored constant term first.  The zero polynomial has no
coefficients and degree ``-1``.  Every function accepts and returns immutable
:class:`DensePoly` values, so the module is safe to use from several threads.
"""

import gmpy2
import numpy as np
from scipy.special import logsumexp

from . import precision as prec
from .errors import DegenerateDegree

__all__ = [
    "DensePoly",
    "add",
    "derivative",
    "evaluate",
    "evaluate_many",
    "jacobi",
    "laguerre",
    "mul",
    "pochhammer",
    "reflect",
    "scale",
    "sub",
]


def _merge_bits(*bits):
    known = [b for b in bits if b is not None]
    return max(known) if known else None


class DensePoly:
    """Polynomial in one variable with real coefficients.

    Parameters
    ----------
    coeffs : sequence
        Coefficient of ``eta**k`` at index ``k``.  Trailing exact zeros are
        dropped so the last stored coefficient is nonzero.
    bits : int, optional
        Mantissa bits for extended precision; ``None`` stores float64.
    """

    __slots__ = ("_c", "bits")

    def __init__(self, coeffs=(), bits=None):
        if isinstance(coeffs, DensePoly):
            coeffs = coeffs._c
        if bits is None:
            c = np.array([float(x) for x in coeffs], dtype=np.float64)
        else:
            c = prec.real_array(list(coeffs), bits)
        last = len(c)
        while last > 0 and c[last - 1] == 0:
            last -= 1
        c = c[:last]
        c.flags.writeable = False
        self._c = c
        self.bits = bits

    @classmethod
    def _wrap(cls, arr, bits):
        # arr already has the right dtype/precision
        obj = cls.__new__(cls)
        last = len(arr)
        while last > 0 and arr[last - 1] == 0:
            last -= 1
        arr = arr[:last].copy()
        arr.flags.writeable = False
        obj._c = arr
        obj.bits = bits
        return obj

    @classmethod
    def zero(cls, bits=None):
        return cls((), bits)

    @classmethod
    def constant(cls, value, bits=None):
        return cls([value], bits)

    @classmethod
    def from_roots(cls, roots, bits=None):
        """Monic polynomial with the given (conjugate-closed) roots."""
        out = cls([1.0], bits)
        roots = list(roots)
        used = [False] * len(roots)
        for i, r in enumerate(roots):
            if used[i]:
                continue
            used[i] = True
            r = complex(r)
            if abs(r.imag) > 0:
                j = next(
                    (j for j in range(len(roots))
                     if not used[j] and complex(roots[j]) == r.conjugate()),
                    None,
                )
                if j is None:
                    raise ValueError("roots must be closed under conjugation")
                used[j] = True
                out = out * cls([abs(r) ** 2, -2 * r.real, 1.0], bits)
            else:
                out = out * cls([-r.real, 1.0], bits)
        return out

    @property
    def coeffs(self):
        return self._c

    @property
    def degree(self):
        return len(self._c) - 1

    @property
    def precision(self):
        return prec.mode_name(self.bits)

    @property
    def leading(self):
        if len(self._c) == 0:
            return 0.0
        return self._c[-1]

    def is_zero(self):
        return len(self._c) == 0

    def max_abs_coeff(self):
        if self.is_zero():
            return 0.0
        return max(abs(x) for x in self._c)

    def astype(self, bits):
        """Same polynomial at another precision (``None`` = float64)."""
        if bits == self.bits:
            return self
        return DensePoly(self._c, bits)

    def to_float64(self):
        return prec.to_float64(self._c)

    def __len__(self):
        return len(self._c)

    def __call__(self, z):
        return evaluate(self, z)

    def __add__(self, other):
        return add(self, _as_poly(other, self.bits))

    __radd__ = __add__

    def __sub__(self, other):
        return sub(self, _as_poly(other, self.bits))

    def __rsub__(self, other):
        return sub(_as_poly(other, self.bits), self)

    def __neg__(self):
        return scale(self, -1)

    def __mul__(self, other):
        if isinstance(other, DensePoly):
            return mul(self, other)
        return scale(self, other)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, DensePoly):
            return NotImplemented
        return len(self._c) == len(other._c) and all(
            a == b for a, b in zip(self._c, other._c)
        )

    def __hash__(self):
        return hash(tuple(float(x) for x in self._c))

    def __repr__(self):
        head = ", ".join(f"{float(x):.6g}" for x in self._c[:6])
        more = ", ..." if len(self._c) > 6 else ""
        return f"DensePoly(degree={self.degree}, {self.precision}, [{head}{more}])"


def _as_poly(x, bits):
    if isinstance(x, DensePoly):
        return x
    return DensePoly([x], bits)


def _aligned(p, q):
    bits = _merge_bits(p.bits, q.bits)
    return p.astype(bits), q.astype(bits), bits


def add(p, q):
    p, q, bits = _aligned(p, q)
    n = max(len(p), len(q))
    with prec.working_precision(bits):
        out = prec.zeros(n, bits)
        out[: len(p)] = out[: len(p)] + p.coeffs
        out[: len(q)] = out[: len(q)] + q.coeffs
    return DensePoly._wrap(out, bits)


def sub(p, q):
    return add(p, scale(q, -1))


def scale(p, c):
    bits = p.bits
    if p.is_zero():
        return p
    with prec.working_precision(bits):
        factor = prec.real(c, bits) if bits is not None else float(c)
        out = p.coeffs * factor
        if bits is not None:
            out = np.asarray(out, dtype=object)
    return DensePoly._wrap(out, bits)


def mul(p, q):
    p, q, bits = _aligned(p, q)
    if p.is_zero() or q.is_zero():
        return DensePoly.zero(bits)
    if bits is None:
        return DensePoly._wrap(np.convolve(p.coeffs, q.coeffs), None)
    if len(p) < len(q):
        p, q = q, p
    with prec.working_precision(bits):
        out = prec.zeros(len(p) + len(q) - 1, bits)
        for i, a in enumerate(q.coeffs):
            out[i : i + len(p)] = out[i : i + len(p)] + a * p.coeffs
    return DensePoly._wrap(out, bits)


def derivative(p):
    """Formal derivative, coefficient-wise."""
    if p.degree < 1:
        return DensePoly.zero(p.bits)
    with prec.working_precision(p.bits):
        k = np.arange(1, len(p))
        if p.bits is None:
            out = p.coeffs[1:] * k
        else:
            out = np.array([c * int(j) for c, j in zip(p.coeffs[1:], k)], dtype=object)
    return DensePoly._wrap(out, p.bits)


def reflect(p):
    """The polynomial ``eta -> p(-eta)``."""
    if p.is_zero():
        return p
    with prec.working_precision(p.bits):
        out = p.coeffs.copy()
        out[1::2] = -out[1::2]
    return DensePoly._wrap(out, p.bits)


def evaluate(p, z):
    """Horner evaluation at a single complex point.

    Returns a Python ``complex`` in standard precision and a
    :class:`gmpy2.mpc` in extended precision.
    """
    if p.bits is None:
        acc = 0j
        z = complex(z)
        for c in p.coeffs[::-1]:
            acc = acc * z + c
        return acc
    with prec.working_precision(p.bits):
        z = gmpy2.mpc(z) if not isinstance(z, gmpy2.mpc) else z
        acc = gmpy2.mpc(0)
        for c in p.coeffs[::-1]:
            acc = acc * z + c
        return acc


def _magnitude(coeffs, zs, bits):
    """``sum |c_k| |z|^k`` accumulated in log space.

    Only used as a noise scale, so float64 logs suffice; the sum is returned
    as mpfr in extended precision and never overflows or underflows.
    """
    logc = np.array([prec.log_abs(c) for c in coeffs])
    keep = np.isfinite(logc)
    k = np.arange(len(coeffs))[keep]
    logz = np.array([prec.log_abs(z) for z in zs])
    with np.errstate(invalid="ignore"):
        powers = np.where(k[None, :] == 0, 0.0, k[None, :] * logz[:, None])
    terms = logc[keep][None, :] + powers
    logmag = logsumexp(terms, axis=1)
    if bits is None:
        return np.exp(logmag)
    return np.array([gmpy2.exp(gmpy2.mpfr(x)) for x in logmag], dtype=object)


def evaluate_many(p, zs, derivative=True):
    """Vectorised Horner evaluation returning ``(p(z), p'(z), sum |c_k||z|^k)``.

    ``zs`` must already be an array of the polynomial's working type
    (complex128 for standard, mpc objects for extended).  The magnitude sum
    only serves as a noise scale and carries about 15 significant digits.
    ``p'(z)`` is None when ``derivative`` is false.
    """
    bits = p.bits
    with prec.working_precision(bits):
        if bits is None:
            val = np.zeros(len(zs), dtype=np.complex128)
            der = np.zeros(len(zs), dtype=np.complex128)
        else:
            zero = gmpy2.mpc(0)
            val = np.array([zero] * len(zs), dtype=object)
            der = np.array([zero] * len(zs), dtype=object)
        mag = _magnitude(p.coeffs, zs, bits)
        for c in p.coeffs[::-1]:
            if derivative:
                der = der * zs + val
            val = val * zs + c
    return val, (der if derivative else None), mag


def pochhammer(a, k, bits=None):
    """Rising factorial ``a (a+1) ... (a+k-1)`` by iterated product."""
    with prec.working_precision(bits):
        a = prec.real(a, bits)
        out = prec.real(1, bits)
        for j in range(k):
            out = out * (a + j)
    return out


def laguerre(n, alpha, precision=None):
    """Generalised Laguerre polynomial ``L_n^(alpha)`` for any real ``alpha``.

    Built from the three-term recurrence
    ``(k+1) L_{k+1} = (2k+1+alpha-eta) L_k - (k+alpha) L_{k-1}``, whose only
    divisor ``k+1`` never vanishes, so negative ``alpha`` is fine.
    """
    if n < 0:
        raise ValueError("degree must be non-negative")
    bits = prec.resolve(precision, n)
    with prec.working_precision(bits):
        a = prec.real(alpha, bits)
        one = prec.real(1, bits)
        prev = prec.zeros(1, bits)
        prev[0] = one
        if n == 0:
            return DensePoly._wrap(prev, bits)
        cur = prec.zeros(2, bits)
        cur[0] = one + a
        cur[1] = -one
        for k in range(1, n):
            nxt = prec.zeros(k + 2, bits)
            nxt[: k + 1] = nxt[: k + 1] + cur * (2 * k + 1 + a)
            nxt[1:] = nxt[1:] - cur
            nxt[:k] = nxt[:k] - prev * (k + a)
            if bits is None:
                nxt /= k + 1
            else:
                nxt = np.array([c / (k + 1) for c in nxt], dtype=object)
            prev, cur = cur, nxt
    return DensePoly._wrap(cur, bits)


def _jacobi_series(n, alpha, beta, bits):
    """Monomial coefficients of the Jacobi series and the undegenerate leading size."""
    with prec.working_precision(bits):
        a = prec.real(alpha, bits)
        b = prec.real(beta, bits)
        # A_k = (alpha+k+1)_{n-k}, filled from k = n downwards
        upper = [None] * (n + 1)
        upper[n] = prec.real(1, bits)
        for k in range(n - 1, -1, -1):
            upper[k] = upper[k + 1] * (a + k + 1)
        lower = gmpy2.mpfr(1) / gmpy2.fac(n)
        series = []
        for k in range(n + 1):
            series.append(upper[k] * lower)
            lower = lower * (k - n) * (n + a + b + 1 + k) / (k + 1)
        # Horner in u = 1/2 - eta/2, carried out on coefficient arrays
        acc = prec.zeros(1, bits)
        acc[0] = series[n]
        for k in range(n - 1, -1, -1):
            nxt = prec.zeros(len(acc) + 1, bits)
            half = acc * prec.real(0.5, bits)
            nxt[:-1] = nxt[:-1] + half
            nxt[1:] = nxt[1:] - half
            nxt[0] = nxt[0] + series[k]
            acc = nxt
        # size of the leading coefficient if no factor of (n+a+b+1)_n cancelled
        lead_scale = prec.real(1, bits)
        for j in range(n):
            lead_scale = lead_scale * (abs(n + a + b + 1) + j) / (2 * (j + 1))
    return acc, lead_scale


def jacobi(n, alpha, beta, precision=None, *, degenerate_rtol=None):
    """Jacobi polynomial ``P_n^(alpha, beta)`` for arbitrary real parameters.

    Uses the hypergeometric series in ``u = (1 - eta)/2``::

        P_n = sum_k (alpha+k+1)_{n-k} (-n)_k (n+alpha+beta+1)_k / (n! k!) u^k

    with every Pochhammer symbol formed as a plain product, so no step
    divides by a parameter-dependent quantity.  Standard precision runs the
    series with extended precision and rounds the result to float64.

    Raises
    ------
    DegenerateDegree
        If the leading coefficient is zero or negligible next to the largest
        coefficient.  The reduced polynomial is attached as ``exc.poly``.
    """
    if n < 0:
        raise ValueError("degree must be non-negative")
    bits = prec.resolve(precision, n)
    if bits is None:
        # expanding powers of u into monomials cancels heavily; run the
        # series with extra bits and round the finished coefficients
        acc, lead_scale = _jacobi_series(n, alpha, beta, prec.extended_bits(n))
        acc = prec.to_float64(acc)
        lead_scale = float(lead_scale)
    else:
        acc, lead_scale = _jacobi_series(n, alpha, beta, bits)
    poly = DensePoly._wrap(acc, bits)
    rtol = degenerate_rtol
    if rtol is None:
        rtol = 2.0 ** (-(53 if bits is None else bits) + 10)
    if poly.degree < n or (n > 0 and abs(poly.leading) <= rtol * lead_scale):
        raise DegenerateDegree(
            f"P_{n}^({float(alpha):g},{float(beta):g}) has degenerate leading coefficient",
            poly=poly,
            expected_degree=n,
        )
    return poly
