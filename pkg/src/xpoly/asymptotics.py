"""Large-degree and large-parameter approximations.

The large-``n`` forms of the classical Laguerre and Jacobi polynomials give
independent predictions of how ``P_n`` compares with its derivative off the
orthogonality interval.  For large ``g`` (and ``h``) the exceptional
polynomial approaches a product of a deforming and a classical polynomial,
see :func:`factorized_limit`.
"""

import cmath
import dataclasses
import enum
import math

import numpy as np

from .errors import BranchCut, ParameterViolation
from .families import Family, _classical_params, _classical_values, mirror_map
from .polynomial import jacobi, laguerre, reflect
from . import precision as prec

__all__ = [
    "AsymptoticEstimate",
    "Regime",
    "classical_ratio",
    "extra_factor",
    "factorized_limit",
    "family_ratio",
    "jacobi_asymptotic",
    "jacobi_ratio_prediction",
    "laguerre_perron",
    "laguerre_ratio_prediction",
]


class Regime(str, enum.Enum):
    LARGE_N_LAGUERRE = "large_n_laguerre"
    LARGE_N_JACOBI = "large_n_jacobi"
    LARGE_G = "large_g"
    LARGE_H = "large_h"


@dataclasses.dataclass(frozen=True)
class AsymptoticEstimate:
    value: complex
    regime: Regime


def _check_laguerre_point(eta, n):
    if n < 1:
        raise ValueError("n must be >= 1")
    eta = complex(eta)
    if eta.imag == 0 and eta.real >= 0:
        raise BranchCut(f"eta={eta.real!r} lies on the cut [0, inf)")
    return eta


def _check_jacobi_point(eta, n):
    if n < 1:
        raise ValueError("n must be >= 1")
    eta = complex(eta)
    if eta.imag == 0 and -1 <= eta.real <= 1:
        raise BranchCut(f"eta={eta.real!r} lies on the cut [-1, 1]")
    return eta


def laguerre_perron(n, alpha, eta):
    """Leading large-``n`` form of ``L_n^(alpha)(eta)`` off ``[0, inf)``.

    ``exp(eta/2) / (2 sqrt(pi)) (-eta)^(-alpha/2-1/4) n^(alpha/2-1/4)
    exp(2 sqrt(-n eta))`` with principal branches.  The point ``eta = 0`` is
    rejected as well, since the power factor is singular there.
    """
    eta = _check_laguerre_point(eta, n)
    log_m = cmath.log(-eta)
    logv = (
        eta / 2
        - math.log(2 * math.sqrt(math.pi))
        + (-alpha / 2 - 0.25) * log_m
        + (alpha / 2 - 0.25) * math.log(n)
        + 2 * math.sqrt(n) * cmath.sqrt(-eta)
    )
    return AsymptoticEstimate(cmath.exp(logv), Regime.LARGE_N_LAGUERRE)


def _phi(eta):
    # eta + sqrt(eta^2-1) on the branch analytic off [-1, 1] with |phi| > 1
    return eta + cmath.sqrt(eta - 1) * cmath.sqrt(eta + 1)


def jacobi_asymptotic(n, alpha, beta, eta):
    """Leading large-``n`` form of ``P_n^(alpha,beta)(eta)`` off ``[-1, 1]``.

    Evaluated through ``phi = eta + sqrt(eta^2 - 1)`` (``|phi| > 1``) as

    ``(2/(1-1/phi))^alpha (2/(1+1/phi))^beta (2/(1-phi^-2))^(1/2)
    phi^n / sqrt(2 pi n)``,

    which equals the classical product form but is single valued on the
    whole cut plane, so no sign calibration is needed.
    """
    eta = _check_jacobi_point(eta, n)
    phi = _phi(eta)
    inv = 1 / phi
    logv = (
        alpha * cmath.log(2 / (1 - inv))
        + beta * cmath.log(2 / (1 + inv))
        + 0.5 * cmath.log(2 / (1 - inv * inv))
        + n * cmath.log(phi)
        - 0.5 * math.log(2 * math.pi * n)
    )
    return AsymptoticEstimate(cmath.exp(logv), Regime.LARGE_N_JACOBI)


def laguerre_ratio_prediction(n, eta):
    """Predicted ``L_n / dL_n`` for large ``n``: ``-(-eta)^(1/2) / sqrt(n)``."""
    eta = _check_laguerre_point(eta, n)
    return -cmath.sqrt(-eta) / math.sqrt(n)


def jacobi_ratio_prediction(n, alpha, beta, eta):
    """Predicted ``P_n / dP_n`` for large ``n``.

    ``2/(n+alpha+beta+1) sqrt((n-1)/n) (eta^2-1)^(1/2)
    (eta + sqrt(eta^2-1)) / (sqrt(eta+1) + sqrt(eta-1))^2``.
    """
    eta = _check_jacobi_point(eta, n)
    root = cmath.sqrt(eta - 1) * cmath.sqrt(eta + 1)
    bracket = (cmath.sqrt(eta + 1) + cmath.sqrt(eta - 1)) ** 2
    return 2 / (n + alpha + beta + 1) * math.sqrt((n - 1) / n) * root * (eta + root) / bracket


def classical_ratio(family, n, alpha, beta, eta):
    """``P_n / dP_n`` of the classical polynomial, by stable recurrence.

    ``family`` selects Laguerre (``beta`` ignored) or Jacobi.
    """
    family = Family(family)
    z = np.array([complex(eta)])
    p, dp, _ = _classical_values(family, n, alpha, beta, z)
    return complex(p[0] / dp[0])


def family_ratio(spec, n, eta):
    """``P_n / dP_n`` for the classical part of ``spec`` at degree ``n``."""
    a, b = _classical_params(spec)
    return classical_ratio(spec.family, n, a, b, eta)


def _bits(precision, degree):
    return precision.bits if hasattr(precision, "bits") else prec.resolve(precision, degree)


def _limit_factors(spec, bits):
    g, h, ell, n = spec.g, spec.h, spec.ell, spec.n
    fam = spec.family
    if fam is Family.L1:
        return reflect(laguerre(ell, g + ell, bits)), laguerre(n, g + ell, bits)
    if fam is Family.L2:
        return laguerre(ell, -g - ell, bits), laguerre(n, g + ell, bits)
    if fam is Family.J2:
        return jacobi(ell, -g - ell, h + ell, bits), jacobi(n, g + ell, h + ell, bits)
    if fam is Family.J1:
        extra, base = _limit_factors(spec.mirrored(), bits)
        return mirror_map(extra, ell), mirror_map(base, n)
    raise ParameterViolation(f"no factorized limit for {fam}")


def factorized_limit(spec, precision=None):
    """Product polynomial approached by ``P_{ell,n}`` for large ``g`` (and ``h``).

    ======  =============================================================
    L1      ``L_l^(g+l)(-eta) L_n^(g+l)(eta)``
    L2      ``L_l^(-g-l)(eta) L_n^(g+l)(eta)``
    J2      ``P_l^(-g-l, h+l)(eta) P_n^(g+l, h+l)(eta)``
    J1      the J2 limit at the mirrored parameters, reflected
    ======  =============================================================
    """
    extra, base = _limit_factors(spec, _bits(precision, spec.degree))
    return extra * base


def extra_factor(spec, precision=None):
    """Degree-``ell`` factor of :func:`factorized_limit` carrying the extra zeros."""
    return _limit_factors(spec, _bits(precision, spec.degree))[0]
