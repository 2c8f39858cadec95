"""All complex zeros of a real polynomial, and their ordinary/extra split.

The zeros come from the Aberth-Ehrlich simultaneous iteration, followed by a
guarded Newton polish and an explicit conjugate-pairing step.  Exceptional
polynomials are first located in float64 through a recurrence evaluator
started from Gauss nodes, then certified on the monomial coefficients; other
polynomials start on the Newton-polygon circles of their coefficients.  The heavy part (``p/p'``) is done at
the polynomial's own precision; the pairwise repulsion sum is carried in
float64 because it only steers the iteration and does not move its fixed
points.
"""

import dataclasses
import functools
import math

import gmpy2
import numpy as np
from scipy.linalg import eigvalsh_tridiagonal
from scipy.optimize import linear_sum_assignment

from . import precision as prec
from .errors import CountMismatch, DegreeZero, NonConvergence
from .families import StableEvaluator, _classical_params, deforming_poly, exceptional_poly
from .polynomial import DensePoly, evaluate_many

__all__ = [
    "ClassifiedZeros",
    "RootConfig",
    "RootSet",
    "StructureSignature",
    "cauchy_radius",
    "approximate_zeros",
    "classify_zeros",
    "exceptional_zeros",
    "find_roots",
    "representatives",
    "structure_signature",
]

DEFAULT_TOLERANCE = 1e-13
DEFAULT_MAX_ITER = 500
DEFAULT_IMAG_EPS = 1e-8
DEFAULT_DOMAIN_EPS = 1e-10
POLISH_BITS = 128
# fixed angular offset keeps the start set free of conjugate symmetry
_START_ANGLE = 0.4


@dataclasses.dataclass(frozen=True)
class RootConfig:
    tolerance: float = DEFAULT_TOLERANCE
    max_iter: int = DEFAULT_MAX_ITER
    imag_eps: float = DEFAULT_IMAG_EPS
    domain_eps: float = DEFAULT_DOMAIN_EPS
    precision: object = None

    def __post_init__(self):
        for name in ("tolerance", "imag_eps", "domain_eps"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be >= 1")

    def as_dict(self):
        return {
            "tolerance": self.tolerance,
            "max_iter": self.max_iter,
            "imag_eps": self.imag_eps,
            "domain_eps": self.domain_eps,
            "precision": self.precision if self.precision is not None else prec.default_mode(),
        }


@dataclasses.dataclass(frozen=True, eq=False)
class RootSet:
    """Zeros of one polynomial with convergence metadata.

    ``residuals[i]`` is the backward error ``|p(z_i)| / sum_k |c_k| |z_i|^k``.
    """

    roots: np.ndarray
    residuals: np.ndarray
    iterations: int
    converged: bool
    bits: int = None

    def __post_init__(self):
        # instances are memoized and shared, so freeze the arrays
        for name in ("roots", "residuals"):
            arr = np.array(getattr(self, name))
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def degree(self):
        return len(self.roots)

    @property
    def precision(self):
        return prec.mode_name(self.bits)


def cauchy_radius(coeffs):
    """Unique positive root of ``|c_d| x^d - sum_{k<d} |c_k| x^k``.

    Worked in log space so coefficients beyond the float64 range are fine.
    """
    d = len(coeffs) - 1
    logs = np.array([prec.log_abs(c) for c in coeffs])
    lead = logs[d]
    lower = logs[:d] - lead
    k = np.arange(d)
    finite = np.isfinite(lower)
    if not finite.any():
        return 0.0
    lower, k = lower[finite], k[finite]
    span = d - k

    def excess(t):
        terms = lower + (k - d) * t
        m = terms.max()
        return m + math.log(np.exp(terms - m).sum())

    lo = float((lower / span).max())
    hi = float(((lower + math.log(d)) / span).max())
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if excess(mid) > 0:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-12:
            break
    return math.exp(hi)


def _circle_start(d, radius):
    k = np.arange(d)
    angles = 2 * np.pi * k / d + _START_ANGLE / d + np.pi / (2 * d)
    return radius * np.exp(1j * angles)


def _polygon_start(coeffs):
    """Start points on the circles given by the Newton polygon of ``log|c_k|``.

    Each edge of the upper convex hull from ``k_i`` to ``k_j`` contributes
    ``k_j - k_i`` points on the circle of radius
    ``(|c_{k_i}| / |c_{k_j}|) ** (1 / (k_j - k_i))``.
    """
    d = len(coeffs) - 1
    logs = [prec.log_abs(c) for c in coeffs]
    pts = [(k, v) for k, v in enumerate(logs) if math.isfinite(v)]
    hull = []
    for k, v in pts:
        while len(hull) >= 2:
            (k1, v1), (k2, v2) = hull[-2], hull[-1]
            # drop the middle point unless it lies strictly above the chord
            if (v2 - v1) * (k - k1) <= (v - v1) * (k2 - k1):
                hull.pop()
            else:
                break
        hull.append((k, v))
    out = np.empty(d, dtype=np.complex128)
    pos = 0
    lowest = hull[0][0]
    if lowest > 0:
        # eta^lowest divides p: those zeros are exactly 0
        out[:lowest] = 0.0
        pos = lowest
    for (k1, v1), (k2, v2) in zip(hull[:-1], hull[1:]):
        m = k2 - k1
        radius = math.exp((v1 - v2) / m)
        j = np.arange(m)
        angles = 2 * np.pi * j / m + 2 * np.pi * pos / d + _START_ANGLE
        out[pos:pos + m] = radius * np.exp(1j * angles)
        pos += m
    return out


def _repulsion(zc, idx):
    """sum_{j != i} 1/(z_i - z_j) for the rows in ``idx`` (float64)."""
    diff = zc[idx, None] - zc[None, :]
    diff[np.arange(len(idx)), idx] = 1.0
    tiny = np.abs(diff) == 0
    if tiny.any():
        diff[tiny] = 1e-300
    inv = 1.0 / diff
    inv[np.arange(len(idx)), idx] = 0.0
    return inv.sum(axis=1)


def _scaled_monic(p, radius):
    """Coefficients of ``p(radius*y) / (lead * radius**d)`` at p's precision."""
    bits = p.bits
    d = p.degree
    with prec.working_precision(bits):
        lead = p.coeffs[-1]
        r = prec.real(radius, bits)
        out = prec.zeros(d + 1, bits)
        power = prec.real(1, bits)
        scale = [None] * (d + 1)
        for k in range(d + 1):
            scale[k] = power
            power = power * r
        rd = scale[d]
        for k in range(d + 1):
            out[k] = p.coeffs[k] / lead * (scale[k] / rd)
    return DensePoly._wrap(out, bits)


def _as_working(values, bits):
    return prec.complex_array(values, bits)


def _aberth(evaluate, y, max_iter, bits):
    """Aberth-Ehrlich iteration; ``evaluate(points)`` returns ``(p, p', mag)``.

    A root is frozen once its step drops below ``sqrt(eps)`` relative to its
    size or its residual reaches the rounding-noise level ``~ d * eps * mag``.
    """
    d = len(y)
    eps = 2.0 ** -(53 if bits is None else bits)
    stop = math.sqrt(eps)
    noise = 8 * d * eps
    active = np.ones(d, dtype=bool)
    yc = prec.to_complex128(y) if bits is not None else y.copy()
    it = 0
    for it in range(1, max_iter + 1):
        idx = np.nonzero(active)[0]
        with prec.working_precision(bits):
            val, der, mag = evaluate(y[idx])
            if bits is None:
                at_noise = np.abs(val) <= noise * mag
                newton = val / np.where(der == 0, 1e-300, der)
                newton_c = newton
            else:
                at_noise = np.array([abs(v) <= noise * m for v, m in zip(val, mag)], dtype=bool)
                newton = np.array(
                    [v / (dv if dv != 0 else gmpy2.mpc(1e-300)) for v, dv in zip(val, der)],
                    dtype=object,
                )
                newton_c = prec.to_complex128(newton)
            denom = 1.0 - newton_c * _repulsion(yc, idx)
            factor = 1.0 / np.where(denom == 0, 1e-300, denom)
            if bits is None:
                step = newton * factor
                y[idx] = y[idx] - step
                yc[idx] = y[idx]
                step_c = step
            else:
                step = np.array([s * complex(f) for s, f in zip(newton, factor)], dtype=object)
                y[idx] = y[idx] - step
                yc[idx] = prec.to_complex128(y[idx])
                step_c = prec.to_complex128(step)
        finished = np.abs(step_c) <= stop * np.maximum(np.abs(yc[idx]), 1e-3)
        finished |= at_noise
        active[idx[finished]] = False
        if not active.any():
            break
    return y, it, not active.any()


def _polish(p, z, sweeps=1):
    """Guarded Newton polish on the original polynomial at its precision.

    A step is taken only if it is shorter than a third of the distance to the
    nearest other root and does not increase ``|p|``.
    """
    bits = p.bits
    d = len(z)
    if d < 2:
        return z
    for _ in range(sweeps):
        zc = prec.to_complex128(z) if bits is not None else z
        gaps = np.abs(zc[:, None] - zc[None, :])
        np.fill_diagonal(gaps, np.inf)
        gap = gaps.min(axis=1)
        with prec.working_precision(bits):
            val, der, _ = evaluate_many(p, z)
            nonzero = np.array([dv != 0 for dv in der], dtype=bool)
            safe = np.where(nonzero, der, 1)
            step = val / safe
            small = np.abs(prec.to_complex128(step)) < gap / 3
            ok = nonzero & small
            if not ok.any():
                break
            cand = z[ok] - step[ok]
            cval, _, _ = evaluate_many(p, cand, derivative=False)
            better = np.array([abs(a) <= abs(b) for a, b in zip(cval, val[ok])], dtype=bool)
            z = z.copy()
            z[np.nonzero(ok)[0][better]] = cand[better]
    return z


def _pair_conjugates(z, bits):
    """Enforce conjugate symmetry by optimal pairing and averaging."""
    zc = prec.to_complex128(z) if bits is not None else z
    cost = np.abs(zc[:, None] - np.conj(zc)[None, :])
    rows, cols = linear_sum_assignment(cost)
    partner = np.empty(len(z), dtype=int)
    partner[rows] = cols
    out = z.copy()
    with prec.working_precision(bits):
        for i in range(len(z)):
            j = partner[i]
            if partner[j] != i:
                continue
            if j == i:
                out[i] = z[i].real if bits is None else gmpy2.mpc(z[i].real, 0)
            else:
                conj_j = np.conj(z[j]) if bits is None else z[j].conjugate()
                out[i] = (z[i] + conj_j) / 2
    if bits is None:
        out = out.astype(np.complex128)
    return out


def _residuals(p, z):
    with prec.working_precision(p.bits):
        val, _, mag = evaluate_many(p, z, derivative=False)
        res = []
        for v, m in zip(val, mag):
            res.append(float(abs(v) / m) if m != 0 else float(abs(v)))
    return np.array(res)


def _finish(p, z, iterations, tolerance):
    bits = p.bits
    z = _polish(p, z)
    z = _pair_conjugates(z, bits)
    res = _residuals(p, z)
    roots = prec.to_complex128(z)
    order = np.lexsort((roots.imag, roots.real))
    rs = RootSet(
        roots=roots[order],
        residuals=res[order],
        iterations=iterations,
        converged=bool(np.all(res <= tolerance)),
        bits=bits,
    )
    return rs, z[order]


def find_roots(
    p, tolerance=DEFAULT_TOLERANCE, max_iter=DEFAULT_MAX_ITER, start="polygon", initial=None
):
    """All ``p.degree`` complex zeros of ``p``.

    Parameters
    ----------
    p : DensePoly
        Real-coefficient polynomial of degree >= 1, standard or extended.
    tolerance : float
        Largest accepted backward error ``|p(z)| / sum |c_k||z|^k``.
    max_iter : int
        Aberth sweeps before giving up.
    start : {"polygon", "circle"}
        ``"circle"`` puts every start point on the Cauchy-bound circle;
        ``"polygon"`` (default) spreads them over the Newton-polygon circles,
        which needs far fewer sweeps when the zeros span several orders of
        magnitude.
    initial : array_like of complex, optional
        Explicit start points (``p.degree`` of them); overrides ``start``.

    Returns
    -------
    RootSet
        Roots sorted by real then imaginary part.

    Raises
    ------
    DegreeZero
        For constant (or zero) polynomials.
    NonConvergence
        If some residual stays above ``tolerance``; ``exc.partial`` holds the
        final RootSet.
    """
    d = p.degree
    if d < 1:
        raise DegreeZero("constant polynomial has no roots")
    bits = p.bits
    if d == 1:
        with prec.working_precision(bits):
            root = -p.coeffs[0] / p.coeffs[1]
        z = _as_working([root], bits)
        res = _residuals(p, z)
        return RootSet(prec.to_complex128(z), res, 0, bool(res[0] <= tolerance), bits)

    radius = cauchy_radius(p.coeffs)
    if radius == 0.0:
        # p = c * eta^d
        z = _as_working([0.0] * d, bits)
        return RootSet(prec.to_complex128(z), np.zeros(d), 0, True, bits)

    q = _scaled_monic(p, radius)
    if initial is not None:
        y0 = np.asarray(initial, dtype=np.complex128) / radius
        if y0.shape != (d,):
            raise ValueError(f"need {d} start points, got {y0.shape}")
    elif start == "circle":
        y0 = _circle_start(d, 1.0)
    elif start == "polygon":
        y0 = _polygon_start(p.coeffs) / radius
    else:
        raise ValueError(f"unknown start {start!r}")
    y = _as_working(y0, bits)
    y, iterations, _ = _aberth(lambda pts: evaluate_many(q, pts), y, max_iter, bits)
    with prec.working_precision(bits):
        r = prec.real(radius, bits)
        z = y * r
        if bits is not None:
            z = np.asarray(z, dtype=object)
    rs, z_work = _finish(p, z, iterations, tolerance)

    if not rs.converged and bits is None:
        # residual stagnated in float64: polish once more in extended arithmetic
        hp = p.astype(POLISH_BITS)
        zw = _as_working(rs.roots, POLISH_BITS)
        rs, _ = _finish(hp, zw, iterations, tolerance)
        rs = dataclasses.replace(rs, bits=None)
    if not rs.converged:
        raise NonConvergence(
            f"degree {d}: max residual {rs.residuals.max():.3e} > {tolerance:.1e}"
            f" after {iterations} iterations",
            partial=rs,
        )
    return rs


@dataclasses.dataclass(frozen=True, eq=False)
class ClassifiedZeros:
    """Zeros split into ordinary ones (inside the domain) and extra ones.

    ``extra`` is ordered by real part, then ``|imag|``, then imag, so the
    members of a conjugate pair are adjacent with the lower one first.
    """

    ordinary: np.ndarray
    extra: np.ndarray
    extra_real: np.ndarray
    domain: tuple
    spec: object = None
    rootset: RootSet = None
    ordinary_residuals: np.ndarray = None
    extra_residuals: np.ndarray = None

    @property
    def degree(self):
        return len(self.ordinary) + len(self.extra)

    @property
    def all_zeros(self):
        return np.concatenate([self.ordinary.astype(np.complex128), self.extra])

    @property
    def extra_pairs(self):
        """Upper-half-plane member of each extra conjugate pair."""
        return self.extra[self.extra.imag > 0]

    def extra_representatives(self):
        """Real extra zeros and one member per pair, sorted by real part."""
        return representatives(self.extra)


def _is_real(z, imag_eps):
    return abs(z.imag) <= imag_eps * (1.0 + abs(z))


def representatives(zeros, imag_eps=DEFAULT_IMAG_EPS):
    """Real zeros and the upper member of each conjugate pair, by real part."""
    reps = []
    for z in np.asarray(zeros, dtype=np.complex128):
        if _is_real(z, imag_eps):
            reps.append(complex(z.real, 0.0))
        elif z.imag > 0:
            reps.append(complex(z))
    return np.array(sorted(reps, key=lambda z: (z.real, z.imag)), dtype=np.complex128)


def classify_zeros(rs, spec, imag_eps=DEFAULT_IMAG_EPS, domain_eps=DEFAULT_DOMAIN_EPS):
    """Split a RootSet of ``P_{ell,n}`` into n ordinary and ell extra zeros.

    Raises
    ------
    CountMismatch
        If a zero sits within ``domain_eps`` of a domain endpoint, or if the
        counts differ from ``(spec.n, spec.ell)``.
    """
    lo, hi = spec.domain
    ordinary, extra = [], []
    for z, res in zip(rs.roots, rs.residuals):
        z = complex(z)
        if _is_real(z, imag_eps):
            x = z.real
            for end in (lo, hi):
                if math.isfinite(end) and abs(x - end) <= domain_eps * (1.0 + abs(end)):
                    raise CountMismatch(
                        f"{spec.label()}: zero {x!r} on the domain boundary {end}"
                    )
            if lo < x < hi:
                ordinary.append((x, res))
            else:
                extra.append((complex(x, 0.0), res))
        else:
            extra.append((z, res))
    ordinary.sort(key=lambda t: t[0])
    extra.sort(key=lambda t: (t[0].real, abs(t[0].imag), t[0].imag))
    ord_z = np.array([t[0] for t in ordinary], dtype=np.float64)
    ext_z = np.array([t[0] for t in extra], dtype=np.complex128)
    extra_real = np.array([z.real for z in ext_z if z.imag == 0.0], dtype=np.float64)
    if len(ord_z) != spec.n or len(ext_z) != spec.ell:
        raise CountMismatch(
            f"{spec.label()}: {len(ord_z)} ordinary / {len(ext_z)} extra zeros,"
            f" expected {spec.n} / {spec.ell}",
            ordinary=ord_z,
            extra=ext_z,
        )
    return ClassifiedZeros(
        ord_z, ext_z, extra_real, (lo, hi), spec, rs,
        np.array([t[1] for t in ordinary], dtype=np.float64),
        np.array([t[1] for t in extra], dtype=np.float64),
    )


@dataclasses.dataclass(frozen=True)
class StructureSignature:
    """Shape of the extra-zero set.

    ``sides`` is ``"negative"``/``"positive"`` when every extra zero has a
    real part of that sign, ``"mixed"`` otherwise and ``"none"`` with no
    extra zeros.  ``real_position`` tells whether the real extra zeros lie
    ``"left"`` or ``"right"`` of every pair, ``"between"`` otherwise, and is
    ``None`` unless both real zeros and pairs exist.
    """

    real_extra_count: int
    pair_count: int
    sides: str
    real_position: str = None


def structure_signature(cz):
    extra = cz.extra
    reals = cz.extra_real
    pairs = cz.extra_pairs
    if len(extra) == 0:
        sides = "none"
    elif np.all(extra.real < 0):
        sides = "negative"
    elif np.all(extra.real > 0):
        sides = "positive"
    else:
        sides = "mixed"
    position = None
    if len(reals) and len(pairs):
        if reals.max() < pairs.real.min():
            position = "left"
        elif reals.min() > pairs.real.max():
            position = "right"
        else:
            position = "between"
    return StructureSignature(len(reals), len(pairs), sides, position)


def _gauss_nodes(family, n, a, b):
    """Zeros of the classical part from its symmetric Jacobi matrix, or None."""
    if n == 0:
        return np.empty(0)
    k = np.arange(n, dtype=float)
    if family.is_laguerre:
        diag = 2 * k + a + 1
        off2 = k[1:] * (k[1:] + a)
    else:
        s = 2 * k + a + b
        with np.errstate(divide="ignore", invalid="ignore"):
            diag = (b * b - a * a) / (s * (s + 2))
            if abs(a + b) < 1e-14:
                diag[0] = (b - a) / (a + b + 2)
            kk, ss = k[1:], s[1:]
            off2 = 4 * kk * (kk + a) * (kk + b) * (kk + a + b) / (ss**2 * (ss + 1) * (ss - 1))
    if not (np.all(np.isfinite(diag)) and np.all(np.isfinite(off2)) and np.all(off2 > 0)):
        return None
    return eigvalsh_tridiagonal(diag, np.sqrt(off2))


def _informed_start(spec):
    """Classical zeros plus zeros of the shifted deforming polynomial.

    These are the ``n = 0`` and ``n -> infinity`` anchors of the zero set, so
    the iteration starts close to every zero.  A small rotation breaks the
    conjugate symmetry of the start set.
    """
    a, b = _classical_params(spec)
    nodes = _gauss_nodes(spec.family, spec.n, a, b)
    if nodes is None:
        return None
    if spec.ell:
        xi = deforming_poly(spec, True, "standard").coeffs
        extra = np.roots(np.asarray(xi)[::-1]).astype(np.complex128)
        if extra.shape != (spec.ell,):
            return None
    else:
        extra = np.empty(0, dtype=np.complex128)
    start = np.concatenate([nodes.astype(np.complex128), extra])
    d = len(start)
    tilt = np.exp(1j * 1e-3 * (1 + np.arange(d)) / d)
    return start * tilt


def approximate_zeros(spec, max_iter=DEFAULT_MAX_ITER, start_coeffs=None):
    """Float64 approximations of all zeros of ``P_{ell,n}``.

    Runs the Aberth iteration on the recurrence-based evaluator, which keeps
    full double accuracy at any degree.  The iteration starts from the
    classical zeros and the shifted deforming zeros; if that does not settle
    it restarts on the Newton-polygon circles of ``start_coeffs`` (monomial
    coefficients of any precision).

    Returns
    -------
    ndarray of complex128
    """
    d = spec.degree
    if d < 1:
        raise DegreeZero("constant polynomial has no roots")
    evaluate = StableEvaluator(spec)
    y = _informed_start(spec)
    if y is not None and np.all(np.isfinite(y)):
        y, _, settled = _aberth(evaluate, y, max_iter, None)
        if settled and np.all(np.isfinite(y)):
            return y
    if start_coeffs is None:
        start_coeffs = exceptional_poly(spec, "standard").coeffs
    y, _, _ = _aberth(evaluate, _polygon_start(start_coeffs), max_iter, None)
    return y


@functools.lru_cache(maxsize=512)
def _exceptional_rootset(spec, tolerance, max_iter, bits):
    precision = "standard" if bits is None else bits
    p = exceptional_poly(spec, precision)
    if p.degree < 2:
        return find_roots(p, tolerance, max_iter)
    start = approximate_zeros(spec, max_iter, p.coeffs)
    if not np.all(np.isfinite(start)):
        return find_roots(p, tolerance, max_iter)
    try:
        return find_roots(p, tolerance, max_iter, initial=start)
    except NonConvergence:
        # fall back to a cold start from the Newton polygon
        return find_roots(p, tolerance, max_iter)


def exceptional_zeros(spec, config=None):
    """Classified zeros of the exceptional polynomial described by ``spec``.

    The zeros are located with the stable float64 evaluator and then
    certified by Aberth sweeps on the monomial coefficients at the working
    precision chosen by ``config.precision``.  Results are memoized per
    ``(spec, config)``.

    Raises
    ------
    NonConvergence, CountMismatch, DegenerateDegree
    """
    config = config or RootConfig()
    if spec.degree == 0:
        empty = np.empty(0)
        rs = RootSet(empty.astype(np.complex128), empty, 0, True, None)
        return ClassifiedZeros(
            empty, empty.astype(np.complex128), empty, spec.domain, spec, rs, empty, empty
        )
    bits = prec.resolve(config.precision, spec.degree)
    rs = _exceptional_rootset(spec, config.tolerance, config.max_iter, bits)
    return classify_zeros(rs, spec, config.imag_eps, config.domain_eps)
