"""Verification suites over the published parameter sets.

The golden grid collects the parameters of the tables and figures.  A suite
runs one family of checks over it; reports come back sorted by check name
and parameters so the output never depends on evaluation order.
"""

import json

from .families import FamilySpec
from .tables import TABLES
from . import verify as v

__all__ = ["SUITES", "run_suite"]

# (family, g, h, ell, n values) shown in the figures
FIGURE_SETS = (
    ("L1", 0.5, None, 2, (1, 2, 3)),
    ("L2", 0.5, None, 3, (1, 2, 5)),
    ("J2", 3.0, 4.0, 3, (1, 2, 5)),
    ("L1", 0.5, None, (1, 2, 3), 2),
    ("L1", 1.5, None, (1, 2, 3), 2),
    ("L2", 2.0, None, (1, 2, 3, 20), 2),
    ("L2", 5.0, None, (1, 2, 3, 20), 2),
    ("J2", 3.0, 4.0, (1, 2, 3, 20), 4),
    ("J2", 7.0, 8.0, (1, 2, 3, 20), 4),
    ("J2", 2.0, 50.0, 10, 4),
    ("J2", 2.0, 100.0, 10, 4),
)


def _as_tuple(x):
    return x if isinstance(x, tuple) else (x,)


def golden_specs():
    """Every single parameter point of the tables and figures."""
    out = []
    for t in TABLES.values():
        out += [t.spec(n) for n in range(0, 61, 10)]
    for fam, g, h, ells, ns in FIGURE_SETS:
        out += [FamilySpec(fam, g, h, ell, n) for ell in _as_tuple(ells) for n in _as_tuple(ns)]
    return sorted(set(out), key=lambda s: json.dumps(s.as_dict(), sort_keys=True))


def _counts(config):
    return [v.verify_counts(s, config) for s in golden_specs()]


def _interlacing(config):
    return [
        v.verify_interlacing(FamilySpec("L1", 0.5, ell=2), 15, config),
        v.verify_interlacing(FamilySpec("L2", 0.5, ell=3), 15, config),
        v.verify_interlacing(FamilySpec("J2", 3.0, 4.0, ell=3), 15, config),
    ]


def _flow(config):
    return [v.verify_extra_flow(t.spec(), v.DEFAULT_FLOW_N, config) for t in TABLES.values()]


def _structure(config):
    bases = [
        ("L1", FamilySpec("L1", 2.0)),
        ("L1", FamilySpec("L1", 0.5)),
        ("L2", FamilySpec("L2", 3.0)),
        ("L2", FamilySpec("L2", 10.0)),
        ("J2", FamilySpec("J2", 3.0, 4.0)),
        ("J2", FamilySpec("J2", 8.0, 9.0)),
        ("J1", FamilySpec("J1", 4.0, 3.0)),
    ]
    out = []
    for fam, base in bases:
        for n in (0, 2, 10):
            out.append(v.verify_structure_rules(fam, 6, base.replace(n=n), config))
    return out


def _ell_flow(config):
    return [
        v.verify_ell_flow(FamilySpec("L1", 0.5, n=2), 3, config),
        v.verify_ell_flow(FamilySpec("L1", 1.5, n=2), 3, config),
        v.verify_ell_flow(FamilySpec("L1", 2.0, n=2), 5, config),
        v.verify_ell_flow(FamilySpec("L2", 2.0, n=2), 20, config),
        v.verify_ell_flow(FamilySpec("L2", 5.0, n=2), 20, config),
        v.verify_ell_flow(FamilySpec("J2", 3.0, 4.0, n=4), 20, config),
        v.verify_ell_flow(FamilySpec("J2", 7.0, 8.0, n=4), 20, config),
    ]


def _large_param(config):
    out = []
    for ell in (1, 2, 3):
        out.append(v.verify_large_param(FamilySpec("L1", 0.5, ell=ell, n=2), [0.5, 1.5], config))
        out.append(v.verify_large_param(FamilySpec("L2", 2.0, ell=ell, n=2), [2.0, 5.0], config))
        out.append(v.verify_large_param(FamilySpec("J2", 3.0, 4.0, ell=ell, n=4), [3.0, 7.0],
                                        config))
    for ell, n in ((1, 1), (2, 2), (3, 3)):
        grid = [10.0, 100.0, 1000.0]
        out.append(v.verify_large_param(FamilySpec("L1", 10.0, ell=ell, n=n), grid, config))
        out.append(v.verify_large_param(FamilySpec("L2", 10.0, ell=ell, n=n), grid, config))
        # the product limit of J2 needs h - g large too
        out.append(v.verify_large_param(FamilySpec("J2", 1000.0, 2000.0, ell=ell, n=n),
                                        [1000.0], config, h_list=[2000.0]))
    return out


def _clustering(config):
    return [
        v.verify_h_clustering(2.0, [50.0, 100.0], 10, 4, config),
        v.verify_h_clustering(2.0, [50.0, 100.0, 400.0], 10, 4, config),
    ]


SUITES = {
    "counts": _counts,
    "interlacing": _interlacing,
    "flow": _flow,
    "structure": _structure,
    "ell-flow": _ell_flow,
    "large-param": _large_param,
    "clustering": _clustering,
}


def _key(report):
    return (report.check_name, json.dumps(report.params, sort_keys=True))


def run_suite(name, config=None):
    """Reports of one suite (or ``"all"``), sorted by check name and parameters."""
    if name == "all":
        names = list(SUITES)
    elif name in SUITES:
        names = [name]
    else:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES) + ['all']}")
    reports = []
    for n in names:
        reports += SUITES[n](config)
    return sorted(reports, key=_key)
