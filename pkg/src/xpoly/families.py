"""Exceptional X_l Laguerre (L1, L2) and Jacobi (J1, J2) polynomials.

Each family is a bilinear combination of a degree-``ell`` deforming
polynomial, evaluated at the parameters and at the shifted parameters, with a
classical polynomial of degree ``n`` and its derivative.  Overall scalar
prefactors are irrelevant for zeros and are not tracked.
"""

import dataclasses
import enum

import numpy as np

from . import precision as prec
from .errors import DegenerateDegree, ParameterViolation
from .polynomial import DensePoly, derivative, jacobi, laguerre, reflect

__all__ = [
    "Family",
    "FamilySpec",
    "classical_part",
    "deforming_poly",
    "exceptional_poly",
    "mirror_map",
    "StableEvaluator",
]


class Family(str, enum.Enum):
    L1 = "L1"
    L2 = "L2"
    J1 = "J1"
    J2 = "J2"

    @property
    def is_laguerre(self):
        return self in (Family.L1, Family.L2)

    @property
    def is_jacobi(self):
        return not self.is_laguerre

    @property
    def domain(self):
        """Open interval carrying the weight function (ordinary zeros)."""
        return (0.0, float("inf")) if self.is_laguerre else (-1.0, 1.0)

    def __str__(self):
        return self.value


@dataclasses.dataclass(frozen=True)
class FamilySpec:
    """Family and parameters ``(g, h, ell, n)`` of one exceptional polynomial.

    ``h`` is used by the Jacobi families only.  J1 requires ``g > h > 0`` and
    J2 requires ``h > g > 0``.  Set ``check=False`` to build a polynomial
    outside these ranges (the formulas stay well defined).
    """

    family: Family
    g: float
    h: float = None
    ell: int = 0
    n: int = 0
    check: bool = dataclasses.field(default=True, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        object.__setattr__(self, "g", float(self.g))
        if self.h is not None:
            object.__setattr__(self, "h", float(self.h))
        if int(self.ell) != self.ell or self.ell < 0:
            raise ParameterViolation(f"ell must be a non-negative integer, got {self.ell}")
        if int(self.n) != self.n or self.n < 0:
            raise ParameterViolation(f"n must be a non-negative integer, got {self.n}")
        object.__setattr__(self, "ell", int(self.ell))
        object.__setattr__(self, "n", int(self.n))
        if self.family.is_jacobi and self.h is None:
            raise ParameterViolation(f"{self.family} needs the parameter h")
        if self.check:
            self.validate()

    def validate(self):
        g, h = self.g, self.h
        if not g > 0:
            raise ParameterViolation(f"g must be positive, got {g}")
        if self.family is Family.J1 and not g > h > 0:
            raise ParameterViolation(f"J1 requires g > h > 0, got g={g}, h={h}")
        if self.family is Family.J2 and not h > g > 0:
            raise ParameterViolation(f"J2 requires h > g > 0, got g={g}, h={h}")

    @property
    def degree(self):
        return self.ell + self.n

    @property
    def domain(self):
        return self.family.domain

    def replace(self, **changes):
        return dataclasses.replace(self, **changes)

    def shifted(self):
        """Parameters moved by the shift (g, h) -> (g+1, h+1)."""
        h = None if self.h is None else self.h + 1
        return self.replace(g=self.g + 1, h=h)

    def mirrored(self):
        """The Jacobi spec of the other type with ``g`` and ``h`` swapped."""
        if self.family is Family.J1:
            return self.replace(family=Family.J2, g=self.h, h=self.g)
        if self.family is Family.J2:
            return self.replace(family=Family.J1, g=self.h, h=self.g)
        raise ParameterViolation("mirror relation only links J1 and J2")

    def as_dict(self):
        return {
            "family": self.family.value,
            "g": self.g,
            "h": self.h,
            "ell": self.ell,
            "n": self.n,
        }

    def label(self):
        parts = [self.family.value, f"g={self.g:g}"]
        if self.h is not None:
            parts.append(f"h={self.h:g}")
        parts += [f"ell={self.ell}", f"n={self.n}"]
        return " ".join(parts)


def _xi(family, g, h, ell, bits):
    if family is Family.L1:
        return reflect(laguerre(ell, g + ell - 1.5, bits))
    if family is Family.L2:
        return laguerre(ell, -g - ell - 0.5, bits)
    if family is Family.J1:
        return jacobi(ell, g + ell - 1.5, -h - ell - 0.5, bits)
    return jacobi(ell, -g - ell - 0.5, h + ell - 1.5, bits)


def _bits_for(precision, degree):
    if isinstance(precision, DensePoly):
        return precision.bits
    return prec.resolve(precision, degree)


def deforming_poly(spec, shifted=False, precision=None):
    """Deforming polynomial ``xi_ell`` at the spec's parameters (or shifted ones).

    ======  =======================================
    L1      ``L_l^(g+l-3/2)(-eta)``
    L2      ``L_l^(-g-l-1/2)(eta)``
    J1      ``P_l^(g+l-3/2, -h-l-1/2)(eta)``
    J2      ``P_l^(-g-l-1/2, h+l-3/2)(eta)``
    ======  =======================================
    """
    s = spec.shifted() if shifted else spec
    bits = _bits_for(precision, spec.ell)
    return _xi(s.family, s.g, s.h, s.ell, bits)


def classical_part(spec, precision=None):
    """Classical degree-``n`` polynomial entering the bilinear form."""
    bits = _bits_for(precision, spec.n)
    g, h, ell, n = spec.g, spec.h, spec.ell, spec.n
    if spec.family is Family.L1:
        return laguerre(n, g + ell - 1.5, bits)
    if spec.family is Family.L2:
        return laguerre(n, g + ell + 0.5, bits)
    if spec.family is Family.J1:
        return jacobi(n, g + ell - 1.5, h + ell + 0.5, bits)
    return jacobi(n, g + ell + 0.5, h + ell - 1.5, bits)


def exceptional_poly(spec, precision=None):
    """The exceptional polynomial ``P_{ell,n}(eta)`` of degree ``ell + n``.

    ``ell = 0`` is accepted and yields a classical polynomial.

    Raises
    ------
    DegenerateDegree
        If the leading terms cancel so that the degree drops below ``ell + n``.
    """
    bits = _bits_for(precision, spec.degree)
    xi_shift = deforming_poly(spec, shifted=True, precision=bits)
    xi = deforming_poly(spec, shifted=False, precision=bits)
    base = classical_part(spec, precision=bits)
    dbase = derivative(base)
    fam = spec.family
    eta = DensePoly([0.0, 1.0], bits)
    if fam is Family.L1:
        first, second = xi_shift * base, -(xi * dbase)
    elif fam is Family.L2:
        first, second = (spec.g + 0.5) * (xi_shift * base), eta * (xi * dbase)
    elif fam is Family.J1:
        first, second = (spec.h + 0.5) * (xi_shift * base), (1.0 + eta) * (xi * dbase)
    else:
        first, second = (spec.g + 0.5) * (xi_shift * base), -((1.0 - eta) * (xi * dbase))
    out = first + second
    expected = spec.degree
    # cancellation of the two leading terms, measured against their size
    reference = sum(abs(t.coeffs[expected]) for t in (first, second) if t.degree >= expected)
    rtol = 2.0 ** (-(53 if bits is None else bits) + 10)
    if out.degree != expected or abs(out.leading) <= rtol * reference:
        raise DegenerateDegree(
            f"{spec.label()}: degree {out.degree} instead of {expected}",
            poly=out,
            expected_degree=expected,
        )
    return out


def mirror_map(p, ell):
    """``(-1)**ell * p(-eta)``; maps J1 deforming polynomials onto J2 ones."""
    out = reflect(p)
    return -out if ell % 2 else out


def _classical_params(spec):
    g, h, ell = spec.g, spec.h, spec.ell
    if spec.family is Family.L1:
        return g + ell - 1.5, None
    if spec.family is Family.L2:
        return g + ell + 0.5, None
    if spec.family is Family.J1:
        return g + ell - 1.5, h + ell + 0.5
    return g + ell + 0.5, h + ell - 1.5


def _classical_values(family, n, a, b, z):
    """``(P, P', P'')`` of the classical part at ``z`` by three-term recurrence.

    Each point carries its own scale factor once the values grow past 1e100;
    callers only use ratios that are invariant under that common factor.
    """
    one = np.ones_like(z)
    zero = np.zeros_like(z)
    if n == 0:
        return one, zero, zero
    if family.is_laguerre:
        p0, p1 = one, (1 + a) - z
        d0, d1 = zero, -one
    else:
        p0, p1 = one, (a + 1) + (a + b + 2) * (z - 1) / 2
        d0, d1 = zero, one * (a + b + 2) / 2
    s0, s1 = zero, zero
    for k in range(1, n):
        if family.is_laguerre:
            lin = ((2 * k + 1 + a) - z) / (k + 1)
            c = (k + a) / (k + 1)
            p2 = lin * p1 - c * p0
            d2 = lin * d1 - p1 / (k + 1) - c * d0
            s2 = lin * s1 - 2 * d1 / (k + 1) - c * s0
        else:
            t = 2 * k + a + b
            slope = (t + 1) * (t + 2) / (2 * (k + 1) * (k + a + b + 1))
            shift = (t + 1) * (a * a - b * b) / (2 * (k + 1) * (k + a + b + 1) * t)
            c = (k + a) * (k + b) * (t + 2) / ((k + 1) * (k + a + b + 1) * t)
            lin = slope * z + shift
            p2 = lin * p1 - c * p0
            d2 = lin * d1 + slope * p1 - c * d0
            s2 = lin * s1 + 2 * slope * d1 - c * s0
        p0, p1, d0, d1, s0, s1 = p1, p2, d1, d2, s1, s2
        big = np.maximum(np.maximum(np.abs(p1), np.abs(d1)), np.abs(s1))
        over = big > 1e100
        if over.any():
            f = np.where(over, 1.0 / np.where(over, big, 1.0), 1.0)
            p0, p1, d0, d1, s0, s1 = (v * f for v in (p0, p1, d0, d1, s0, s1))
    return p1, d1, s1


def _horner2(c, z):
    val = np.zeros_like(z)
    der = np.zeros_like(z)
    for a in c[::-1]:
        der = der * z + val
        val = val * z + a
    return val, der


class StableEvaluator:
    """Float64 values of ``P_{ell,n}`` and its derivative at many points.

    The classical factor is evaluated by its three-term recurrence rather
    than from monomial coefficients, so the relative accuracy does not decay
    with the degree.  Values may carry a per-point positive scale factor;
    the Newton quotient ``P / P'`` and the ratio to ``mag`` are unaffected.
    """

    def __init__(self, spec):
        self.spec = spec
        self.a, self.b = _classical_params(spec)
        self.xi_s = np.asarray(deforming_poly(spec, True, "standard").coeffs)
        self.xi = np.asarray(deforming_poly(spec, False, "standard").coeffs)
        fam = spec.family
        if fam is Family.L1:
            self.c1, self.w = 1.0, (-1.0, 0.0)
        elif fam is Family.L2:
            self.c1, self.w = spec.g + 0.5, (0.0, 1.0)
        elif fam is Family.J1:
            self.c1, self.w = spec.h + 0.5, (1.0, 1.0)
        else:
            self.c1, self.w = spec.g + 0.5, (-1.0, 1.0)

    @property
    def degree(self):
        return self.spec.degree

    def __call__(self, z):
        z = np.asarray(z, dtype=np.complex128)
        p, dp, ddp = _classical_values(self.spec.family, self.spec.n, self.a, self.b, z)
        xs, dxs = _horner2(self.xi_s, z)
        x, dx = _horner2(self.xi, z)
        w0, w1 = self.w
        w = w0 + w1 * z
        first = self.c1 * xs * p
        second = w * x * dp
        val = first + second
        der = self.c1 * (dxs * p + xs * dp) + (w1 * x + w * dx) * dp + w * x * ddp
        mag = np.abs(first) + np.abs(second)
        return val, der, mag
