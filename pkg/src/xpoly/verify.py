"""Executable checks of the zero-behavior claims, returning structured reports.

Every ``verify_*`` function is pure given its inputs and never raises for a
failed property: root-finder or classification errors are turned into a
failed report carrying the error message.
"""

import dataclasses
import json
import math

import numpy as np
from scipy.optimize import linear_sum_assignment

from .asymptotics import factorized_limit
from .errors import XPolyError
from .families import Family, FamilySpec, deforming_poly, exceptional_poly
from .roots import (
    RootConfig,
    exceptional_zeros,
    find_roots,
    structure_signature,
)

__all__ = [
    "Evidence",
    "VerificationReport",
    "deforming_zeros",
    "extrapolate_limit",
    "match_zeros",
    "verify_counts",
    "verify_ell_flow",
    "verify_extra_flow",
    "verify_h_clustering",
    "verify_interlacing",
    "verify_large_param",
    "verify_structure_rules",
]

TREND_SLACK = 1e-9
N0_RTOL = 1e-8
EXTRAPOLATION_RTOL = 1e-2
FACTORIZATION_RTOL = 1e-2
LARGE_PARAM_MIN = 1e3
DEFAULT_FLOW_N = tuple(range(0, 201, 10))


@dataclasses.dataclass(frozen=True)
class Evidence:
    """One measured quantity; ``ok`` records whether it met ``bound``."""

    description: str
    value: float
    bound: float = None
    ok: bool = True

    def as_dict(self):
        return {
            "description": self.description,
            "value": _jsonable(self.value),
            "bound": _jsonable(self.bound),
            "ok": self.ok,
        }


def _jsonable(x):
    if x is None:
        return None
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    x = float(x)
    return x if math.isfinite(x) else repr(x)


@dataclasses.dataclass(frozen=True)
class VerificationReport:
    """Outcome of one check.

    ``passed`` is true only if every evidence entry is ``ok`` and no error
    interrupted the check.
    """

    check_name: str
    params: dict
    passed: bool
    evidence: tuple
    tolerance_used: float
    message: str = ""

    def failures(self):
        return [e for e in self.evidence if not e.ok]

    def as_dict(self):
        return {
            "check_name": self.check_name,
            "params": self.params,
            "passed": self.passed,
            "tolerance_used": self.tolerance_used,
            "message": self.message,
            "evidence": [e.as_dict() for e in self.evidence],
        }

    def to_json(self):
        return json.dumps(self.as_dict(), sort_keys=True, indent=2)

    def to_text(self):
        status = "PASS" if self.passed else "FAIL"
        head = f"[{status}] {self.check_name} {json.dumps(self.params, sort_keys=True)}"
        lines = [head]
        if self.message:
            lines.append(f"    note: {self.message}")
        for e in self.evidence:
            mark = "ok " if e.ok else "BAD"
            bound = "" if e.bound is None else f" (bound {e.bound:.6g})"
            lines.append(f"    {mark} {e.description}: {e.value:.10g}{bound}")
        return "\n".join(lines)


class _Collector:
    def __init__(self, name, params, tolerance):
        self.name = name
        self.params = params
        self.tolerance = tolerance
        self.items = []
        self.message = ""
        self.error = False

    def add(self, description, value, bound=None, ok=True):
        self.items.append(Evidence(description, float(value), bound, bool(ok)))

    def fail(self, message):
        self.error = True
        self.message = message

    def report(self):
        passed = not self.error and all(e.ok for e in self.items)
        return VerificationReport(
            self.name, self.params, passed, tuple(self.items), self.tolerance, self.message
        )


def _params(spec, **extra):
    out = spec.as_dict() if spec is not None else {}
    for k, v in extra.items():
        out[k] = list(v) if isinstance(v, (list, tuple, range, np.ndarray)) else v
    return out


def match_zeros(reference, candidates):
    """Permutation aligning ``candidates`` to ``reference`` at minimal total distance.

    Returns ``candidates`` reordered so that entry ``i`` is matched to
    ``reference[i]``.
    """
    reference = np.asarray(reference, dtype=np.complex128)
    candidates = np.asarray(candidates, dtype=np.complex128)
    if reference.shape != candidates.shape:
        raise ValueError("zero sets differ in size")
    cost = np.abs(reference[:, None] - candidates[None, :])
    rows, cols = linear_sum_assignment(cost)
    out = np.empty_like(candidates)
    out[rows] = candidates[cols]
    return out


def deforming_zeros(spec, shifted, config=None):
    """Zeros of the (shifted) deforming polynomial, sorted by real then imag."""
    config = config or RootConfig()
    p = deforming_poly(spec, shifted=shifted, precision="extended")
    if p.degree < 1:
        return np.empty(0, dtype=np.complex128)
    return find_roots(p, config.tolerance, config.max_iter).roots


def _scale(*arrays):
    vals = np.concatenate([np.abs(np.asarray(a)).ravel() for a in arrays])
    return float(vals.max()) if vals.size else 1.0


def verify_counts(spec, config=None):
    """Exactly ``n`` ordinary and ``ell`` extra zeros."""
    col = _Collector("counts", _params(spec), 0.0)
    try:
        cz = exceptional_zeros(spec, config)
    except XPolyError as exc:
        col.fail(f"{type(exc).__name__}: {exc}")
        return col.report()
    col.add("ordinary zeros", len(cz.ordinary), spec.n, len(cz.ordinary) == spec.n)
    col.add("extra zeros", len(cz.extra), spec.ell, len(cz.extra) == spec.ell)
    return col.report()


def verify_interlacing(spec, n_max, config=None):
    """Ordinary zeros of consecutive degrees strictly interlace for ``n < n_max``.

    The check ``y_1 < x_1 < y_2 < ... < x_n < y_{n+1}`` (``x`` at ``n``,
    ``y`` at ``n+1``) also means every old zero moved left and the new one
    appeared on the right.  The smallest relative gap is recorded.
    """
    col = _Collector("interlacing", _params(spec, n_max=n_max), TREND_SLACK)
    try:
        prev = exceptional_zeros(spec.replace(n=0), config).ordinary
        for n in range(n_max):
            cur = exceptional_zeros(spec.replace(n=n + 1), config).ordinary
            merged = np.empty(2 * n + 1)
            merged[0::2] = cur
            merged[1::2] = prev
            scale = max(_scale(cur), 1.0)
            gaps = np.diff(merged) / scale
            worst = float(gaps.min()) if gaps.size else math.inf
            ok = worst > TREND_SLACK
            if gaps.size:
                col.add(f"n={n}->{n + 1} smallest relative gap", worst, TREND_SLACK, ok)
            if not ok:
                k = int(np.argmin(gaps))
                col.message = f"order broken between positions {k} and {k + 1} at n={n}"
            prev = cur
    except XPolyError as exc:
        col.fail(f"{type(exc).__name__}: {exc}")
    return col.report()


def extrapolate_limit(ns, values, points=4, degree=2):
    """Richardson-style limit of ``values(n)`` as ``n -> infinity``.

    Fits a polynomial of ``degree`` in ``n**-1/2`` through the last ``points``
    samples and evaluates it at zero.  Works on complex arrays of shape
    ``(len(ns), k)``.
    """
    ns = np.asarray(ns, dtype=float)
    values = np.asarray(values, dtype=np.complex128)
    x = ns[-points:] ** -0.5
    tail = values[-points:]
    re = np.polyfit(x, tail.real, degree)
    im = np.polyfit(x, tail.imag, degree)
    return re[-1] + 1j * im[-1]


def verify_extra_flow(spec, n_list=DEFAULT_FLOW_N, config=None, extrapolate=True):
    """Extra zeros flow from the shifted to the unshifted deforming zeros.

    Checks that at ``n = 0`` the extra zeros equal the shifted deforming
    zeros, that their distance to the unshifted zeros decreases strictly
    along ``n_list``, that they stay between the two endpoints, and that the
    extrapolated ``n -> infinity`` limit is within 1% of the unshifted zeros.
    """
    n_list = list(n_list)
    col = _Collector("flow", _params(spec, n_list=n_list), TREND_SLACK)
    if not n_list or n_list[0] != 0 or any(b <= a for a, b in zip(n_list, n_list[1:])):
        col.fail("n_list must be ascending and start at 0")
        return col.report()
    if spec.ell == 0:
        col.message = "no extra zeros"
        return col.report()
    try:
        big_xi = deforming_zeros(spec, True, config)
        small_xi = match_zeros(big_xi, deforming_zeros(spec, False, config))
        track = []
        prev = big_xi
        for n in n_list:
            beta = match_zeros(prev, exceptional_zeros(spec.replace(n=n), config).extra)
            track.append(beta)
            prev = beta
    except XPolyError as exc:
        col.fail(f"{type(exc).__name__}: {exc}")
        return col.report()
    track = np.array(track)
    scale = _scale(big_xi, small_xi)
    tol = TREND_SLACK * scale

    start = np.abs(track[0] - big_xi) / np.maximum(np.abs(big_xi), 1e-300)
    col.add("n=0 max relative distance to shifted zeros", start.max(), N0_RTOL,
            start.max() <= N0_RTOL)

    dist = np.abs(track - small_xi)
    steps = np.diff(dist, axis=0)
    worst = float(steps.max()) / scale if steps.size else -math.inf
    ok = bool(np.all(steps < 0))
    col.add("largest change of distance to limit (relative)", worst, 0.0, ok)
    if not ok:
        i, k = np.unravel_index(np.argmax(steps), steps.shape)
        col.message = f"distance of zero {k} grows from n={n_list[i]} to n={n_list[i + 1]}"

    span = np.abs(big_xi - small_xi)
    excess = max(
        float((np.abs(track - small_xi) - span).max()),
        float((np.abs(track - big_xi) - span).max()),
    )
    col.add("sandwich excess", excess, tol, excess <= tol)

    positive = [n for n in n_list if n > 0]
    if extrapolate and len(positive) >= 4:
        limit = extrapolate_limit(positive, track[-len(positive):])
        rel = float((np.abs(limit - small_xi) / np.abs(small_xi)).max())
        col.add("extrapolated limit relative error", rel, EXTRAPOLATION_RTOL,
                rel <= EXTRAPOLATION_RTOL)
    return col.report()


def _expected_signature(family, ell):
    """(real count, pair count, side rule, real position) for the family rules."""
    odd = ell % 2 == 1
    pairs = (ell - 1) // 2 if odd else ell // 2
    if family is Family.L1:
        return ell, 0, "negative", None
    if family is Family.L2:
        return (1 if odd else 0), pairs, None, ("left" if odd and pairs else None)
    if family is Family.J2:
        return (1 if odd else 0), pairs, "positive", ("right" if odd and pairs else None)
    return (1 if odd else 0), pairs, "negative", ("left" if odd and pairs else None)


def verify_structure_rules(family, ell_max, spec, config=None):
    """Shape of the extra-zero set for ``ell = 1 .. ell_max``.

    ======  ==============================================================
    L1      ``ell`` negative real zeros
    L2      odd: one negative real zero left of the pairs; even: pairs only
    J2      odd: one real zero ``> 1`` right of pairs with positive real
            parts; even: pairs with positive real parts
    J1      mirror image of J2
    ======  ==============================================================

    ``spec`` supplies ``g``, ``h`` and ``n``; its ``ell`` is ignored.
    """
    family = Family(family)
    spec = spec.replace(family=family)
    col = _Collector("structure", _params(spec, ell_max=ell_max), 0.0)
    for ell in range(1, ell_max + 1):
        s = spec.replace(ell=ell)
        try:
            cz = exceptional_zeros(s, config)
        except XPolyError as exc:
            col.fail(f"ell={ell}: {type(exc).__name__}: {exc}")
            return col.report()
        sig = structure_signature(cz)
        reals, pairs, side, position = _expected_signature(family, ell)
        col.add(f"ell={ell} real extra zeros", sig.real_extra_count, reals,
                sig.real_extra_count == reals)
        col.add(f"ell={ell} conjugate pairs", sig.pair_count, pairs, sig.pair_count == pairs)
        if side is not None:
            col.add(f"ell={ell} all extra zeros on the {side} side",
                    sig.sides == side, 1.0, sig.sides == side)
        elif family is Family.L2 and cz.extra_real.size:
            col.add(f"ell={ell} real extra zero is negative", cz.extra_real.max(), 0.0,
                    cz.extra_real.max() < 0)
        if position is not None:
            col.add(f"ell={ell} real zero {position} of the pairs",
                    sig.real_position == position, 1.0, sig.real_position == position)
        if family in (Family.J1, Family.J2) and cz.extra_real.size:
            outside = np.abs(cz.extra_real).min()
            col.add(f"ell={ell} real extra zero beyond |eta|=1", outside, 1.0, outside > 1)
    return col.report()


def _increasing(col, label, old, new, scale):
    diff = np.asarray(new) - np.asarray(old)
    worst = float(diff.min()) / scale if diff.size else math.inf
    col.add(label, worst, -TREND_SLACK, worst > -TREND_SLACK)


def verify_ell_flow(spec, ell_max, config=None, decay_window=(10, 20)):
    """How the zeros move as ``ell`` grows at fixed ``n``.

    * L1 and L2: every ordinary zero moves right.
    * J1 and J2: every ordinary zero moves toward the origin.
    * L1: the deforming zeros obey ``Xi_k < xi_k < Xi_{k+1}`` and both sets
      move left, ``Xi^(l+1)_k < Xi^(l)_k`` and ``xi^(l+1)_k < xi^(l)_k``.
    * J1 and J2, when ``ell_max`` reaches the end of ``decay_window``: the
      largest ``|Im|`` among the extra zeros decreases over that window.

    ``spec`` supplies the family and ``g``, ``h``, ``n``.
    """
    col = _Collector("ell-flow", _params(spec, ell_max=ell_max), TREND_SLACK)
    fam = spec.family
    try:
        zs = {ell: exceptional_zeros(spec.replace(ell=ell), config)
              for ell in range(1, ell_max + 1)}
        for ell in range(1, ell_max):
            old, new = zs[ell].ordinary, zs[ell + 1].ordinary
            if old.size == 0:
                continue
            scale = max(_scale(old, new), 1.0)
            if fam.is_laguerre:
                _increasing(col, f"ell={ell}->{ell + 1} ordinary zeros move right", old, new, scale)
            else:
                _increasing(col, f"ell={ell}->{ell + 1} ordinary |zeros| shrink",
                            np.abs(new), np.abs(old), scale)
        if fam is Family.L1:
            roots = {ell: (np.sort(deforming_zeros(spec.replace(ell=ell), True, config).real),
                           np.sort(deforming_zeros(spec.replace(ell=ell), False, config).real))
                     for ell in range(1, ell_max + 1)}
            for ell in range(1, ell_max + 1):
                big, small = roots[ell]
                chain = np.empty(2 * ell)
                chain[0::2], chain[1::2] = big, small
                scale = max(_scale(chain), 1.0)
                _increasing(col, f"ell={ell} Xi_k < xi_k < Xi_k+1 chain",
                            chain[:-1], chain[1:], scale)
                if ell < ell_max:
                    nb, ns_ = roots[ell + 1]
                    _increasing(col, f"ell={ell}->{ell + 1} shifted zeros move left",
                                nb[:ell], big, scale)
                    _increasing(col, f"ell={ell}->{ell + 1} unshifted zeros move left",
                                ns_[:ell], small, scale)
        lo, hi = decay_window
        if fam.is_jacobi and ell_max >= hi:
            peaks = np.array([np.abs(zs[ell].extra.imag).max() for ell in range(lo, hi + 1)])
            worst = float(np.diff(peaks).max()) / float(peaks.max())
            col.add(f"max |Im| of extra zeros decreases over ell in [{lo}, {hi}]",
                    worst, TREND_SLACK, worst < TREND_SLACK)
    except XPolyError as exc:
        col.fail(f"{type(exc).__name__}: {exc}")
    return col.report()


def _relative_match(a, b):
    """Largest relative distance after optimal matching of two zero sets."""
    b = match_zeros(a, b)
    floor = 1e-12 * max(_scale(a, b), 1e-300)
    return float((np.abs(a - b) / np.maximum(np.maximum(np.abs(a), np.abs(b)), floor)).max())


def factorization_error(spec, config=None):
    """Largest relative distance between the zeros of ``P_{ell,n}`` and its limit."""
    config = config or RootConfig()
    exact = find_roots(exceptional_poly(spec, "extended"), config.tolerance, config.max_iter)
    limit = find_roots(factorized_limit(spec, "extended"), config.tolerance, config.max_iter)
    return _relative_match(exact.roots, limit.roots)


def verify_large_param(spec, g_list, config=None, h_list=None, factorization=None):
    """Zero trends along ascending ``g`` and the large-parameter factorization.

    For the Jacobi families ``h`` keeps its offset from ``g``
    (``h = g + spec.h - spec.g``) unless ``h_list`` is given.  The product
    limit of J1/J2 needs ``|h - g|`` large as well, so pass ``h_list`` when
    checking the factorization.

    * L1: all zeros (extra, ordinary and both deforming sets) grow in modulus.
    * L2: extra and deforming zeros move left and away from the real axis;
      ordinary zeros move right.
    * J2: extra and deforming zeros move right and away from the real axis;
      ordinary zeros shrink in modulus.  J1 is the mirror image.

    The factorization is compared at the largest ``g`` when
    ``factorization`` is true, which by default means ``max(g_list) >= 1e3``.
    """
    g_list = list(g_list)
    if h_list is None and spec.family.is_jacobi:
        h_list = [g + (spec.h - spec.g) for g in g_list]
    extra = {"g_list": g_list}
    if h_list is not None:
        extra["h_list"] = list(h_list)
    col = _Collector("large-param", _params(spec, **extra), TREND_SLACK)
    if any(b <= a for a, b in zip(g_list, g_list[1:])):
        col.fail("g_list must be ascending")
        return col.report()
    specs = [spec.replace(g=g, h=(None if h_list is None else h_list[i]))
             for i, g in enumerate(g_list)]
    fam = spec.family
    try:
        data = []
        for s in specs:
            cz = exceptional_zeros(s, config)
            deform = np.concatenate([deforming_zeros(s, True, config),
                                     deforming_zeros(s, False, config)])
            data.append((cz, deform))
        for i in range(len(specs) - 1):
            (cz0, d0), (cz1, d1) = data[i], data[i + 1]
            tag = f"g={g_list[i]:g}->{g_list[i + 1]:g}"
            ex0 = cz0.extra
            ex1 = match_zeros(ex0, cz1.extra)
            d1 = match_zeros(d0, d1)
            both0 = np.concatenate([ex0, d0])
            both1 = np.concatenate([ex1, d1])
            scale = max(_scale(both0, both1, cz0.ordinary, cz1.ordinary), 1.0)
            if fam is Family.L1:
                _increasing(col, f"{tag} |extra and deforming zeros| grow",
                            np.abs(both0), np.abs(both1), scale)
                _increasing(col, f"{tag} ordinary zeros grow", cz0.ordinary, cz1.ordinary, scale)
            elif fam is Family.L2 or fam is Family.J1:
                _increasing(col, f"{tag} extra and deforming zeros move left",
                            both1.real, both0.real, scale)
                _increasing(col, f"{tag} |Im| of extra and deforming zeros grows",
                            np.abs(both0.imag), np.abs(both1.imag), scale)
            else:
                _increasing(col, f"{tag} extra and deforming zeros move right",
                            both0.real, both1.real, scale)
                _increasing(col, f"{tag} |Im| of extra and deforming zeros grows",
                            np.abs(both0.imag), np.abs(both1.imag), scale)
            if fam is Family.L2:
                _increasing(col, f"{tag} ordinary zeros move right",
                            cz0.ordinary, cz1.ordinary, scale)
            elif fam.is_jacobi:
                _increasing(col, f"{tag} ordinary |zeros| shrink",
                            np.abs(cz1.ordinary), np.abs(cz0.ordinary), scale)
        if factorization is None:
            factorization = max(g_list) >= LARGE_PARAM_MIN
        if factorization:
            err = factorization_error(specs[-1], config)
            col.add(f"g={g_list[-1]:g} zeros vs factorized limit (relative)", err,
                    FACTORIZATION_RTOL, err <= FACTORIZATION_RTOL)
    except XPolyError as exc:
        col.fail(f"{type(exc).__name__}: {exc}")
    return col.report()


def spread_about_one(spec, config=None):
    """``max |z - 1|`` over all zeros of ``P_{ell,n}``."""
    cz = exceptional_zeros(spec, config)
    return float(np.abs(cz.all_zeros - 1).max())


def verify_h_clustering(g, h_list, ell, n, config=None):
    """All zeros of J2 gather around ``eta = 1`` as ``h`` grows."""
    h_list = list(h_list)
    params = {"family": "J2", "g": float(g), "h_list": [float(h) for h in h_list],
              "ell": ell, "n": n}
    col = _Collector("clustering", params, TREND_SLACK)
    if any(b <= a for a, b in zip(h_list, h_list[1:])):
        col.fail("h_list must be ascending")
        return col.report()
    try:
        spreads = [spread_about_one(FamilySpec("J2", g, h, ell, n), config) for h in h_list]
    except XPolyError as exc:
        col.fail(f"{type(exc).__name__}: {exc}")
        return col.report()
    for h, s in zip(h_list, spreads):
        col.add(f"h={h:g} max |z - 1|", s)
    for i in range(len(h_list) - 1):
        change = (spreads[i + 1] - spreads[i]) / spreads[i]
        col.add(f"h={h_list[i]:g}->{h_list[i + 1]:g} relative change of spread",
                change, -TREND_SLACK, change < -TREND_SLACK)
    return col.report()
