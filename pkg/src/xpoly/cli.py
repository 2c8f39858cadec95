"""Command-line front end: ``xpoly {zeros,table,sweep,verify}``.

Exit status is 0 on success, 1 when a verification fails or the root finder
gives up, and 2 for usage or parameter errors.
"""

import argparse
import json
import math
import sys

from . import __version__
from . import precision as prec
from .errors import CountMismatch, NonConvergence, ParameterViolation
from .families import Family, FamilySpec, deforming_poly
from .records import (
    atomic_write,
    complex_to_json,
    records_to_csv,
    zero_records,
    zeros_to_dict,
)
from .roots import RootConfig, exceptional_zeros, find_roots
from .suites import SUITES, run_suite
from .tables import TABLES, render_table, table_rows
from . import verify as v

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

SWEEPABLE = ("g", "h", "ell", "n")


class UsageError(Exception):
    """Bad flag combination or value; reported with exit status 2."""


def parse_range(text, integer=False):
    """Values of ``"x"``, ``"a:b:step"`` (inclusive) or ``"x,y,z"``.

    >>> parse_range("1:5:2", integer=True)
    [1, 3, 5]
    """
    text = text.strip()
    kind = int if integer else float
    try:
        if ":" in text:
            parts = text.split(":")
            if len(parts) not in (2, 3):
                raise UsageError(f"range {text!r} must be a:b or a:b:step")
            a, b = kind(parts[0]), kind(parts[1])
            step = kind(parts[2]) if len(parts) == 3 else kind(1)
            if step == 0:
                raise UsageError(f"range {text!r} has a zero step")
            count = math.floor((b - a) / step + 1e-9) + 1
            return [a + i * step for i in range(max(count, 0))]
        return [kind(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise UsageError(f"cannot parse {text!r} as {'integer' if integer else 'number'}s") from None


def _precision_default():
    try:
        return prec.default_mode()
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _root_config(args):
    mode = args.precision or _precision_default()
    try:
        return RootConfig(tolerance=args.tol, precision=mode)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _provenance(args, config, command):
    return {
        "command": command,
        "version": __version__,
        "config": config.as_dict(),
        "precision_env": prec.ENV_VAR,
    }


def _param_lists(args):
    lists = {
        "g": parse_range(args.g) if args.g is not None else [None],
        "h": parse_range(args.h) if args.h is not None else [None],
        "ell": parse_range(args.ell, integer=True),
        "n": parse_range(args.n, integer=True),
    }
    for name, values in lists.items():
        if not values:
            raise UsageError(f"--{name} gives an empty range")
    if lists["g"] == [None]:
        raise UsageError("--g is required")
    return lists


def _single_spec(args):
    lists = _param_lists(args)
    multi = [k for k, vals in lists.items() if len(vals) > 1]
    if multi:
        raise UsageError(f"expected single values, got ranges for {', '.join(multi)}")
    return FamilySpec(args.family, lists["g"][0], lists["h"][0], lists["ell"][0], lists["n"][0])


def _deforming_records(spec, config):
    """Rows for the zeros of the shifted and unshifted deforming polynomials."""
    out = []
    for shifted, cls in ((True, "deforming_shifted"), (False, "deforming")):
        p = deforming_poly(spec, shifted=shifted, precision="extended")
        rs = find_roots(p, config.tolerance, config.max_iter)
        order = sorted(range(rs.degree), key=lambda i: (rs.roots[i].real, rs.roots[i].imag))
        for j, i in enumerate(order):
            z = complex(rs.roots[i])
            rec = spec.as_dict()
            rec.update({"zero_index": j, "re": z.real, "im": z.imag, "class": cls,
                        "residual": float(rs.residuals[i])})
            out.append(rec)
    return out


def _emit(text, out):
    if out:
        atomic_write(out, text)
    else:
        sys.stdout.write(text)


def _zeros_text(cz):
    lines = [f"# {cz.spec.label()}"]
    for x, r in zip(cz.ordinary, cz.ordinary_residuals):
        lines.append(f"ordinary  {x: .16g}  residual {r:.2e}")
    for z, r in zip(cz.extra, cz.extra_residuals):
        lines.append(f"extra     {z.real: .16g} {z.imag:+.16g}i  residual {r:.2e}")
    return "\n".join(lines) + "\n"


def cmd_zeros(args):
    config = _root_config(args)
    spec = _single_spec(args)
    cz = exceptional_zeros(spec, config)
    prov = _provenance(args, config, "zeros")
    if args.format == "json":
        doc = {"provenance": prov, "zeros": zeros_to_dict(cz)}
        if args.deforming:
            doc["deforming"] = _deforming_records(spec, config)
        text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    elif args.format == "csv":
        recs = zero_records(cz)
        if args.deforming:
            recs += _deforming_records(spec, config)
        text = records_to_csv(recs, prov)
    else:
        text = "".join(f"# {k}: {json.dumps(prov[k], sort_keys=True)}\n" for k in sorted(prov))
        text += _zeros_text(cz)
    _emit(text, args.out)
    return EXIT_OK


def cmd_table(args):
    config = _root_config(args)
    if args.table not in TABLES:
        raise UsageError(f"table id must be one of {sorted(TABLES)}")
    prov = _provenance(args, config, "table")
    t = TABLES[args.table]
    if args.format == "text":
        head = "".join(f"# {k}: {json.dumps(prov[k], sort_keys=True)}\n" for k in sorted(prov))
        text = head + render_table(args.table, config)
    elif args.format == "json":
        rows = [{"row": label, "values": [complex_to_json(z) for z in reps]}
                for label, reps in table_rows(args.table, config)]
        doc = {"provenance": prov, "table": args.table, "spec": t.spec().as_dict(),
               "decimals": t.decimals, "rows": rows}
        text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    else:
        recs = _deforming_records(t.spec(), config)
        for row_n in range(0, 61, 10):
            recs += zero_records(exceptional_zeros(t.spec(row_n), config))
        text = records_to_csv(recs, prov)
    _emit(text, args.out)
    return EXIT_OK


_CLASS_RANK = {"ordinary": 0, "extra": 0, "deforming_shifted": 1, "deforming": 2}


def _record_key(rec):
    return (rec["g"], -1 if rec["h"] is None else rec["h"], rec["ell"], rec["n"],
            _CLASS_RANK[rec["class"]], rec["zero_index"])


def cmd_sweep(args):
    config = _root_config(args)
    lists = _param_lists(args)
    varying = [k for k in SWEEPABLE if len(lists[k]) > 1]
    if len(varying) > 1:
        raise UsageError(f"sweep varies exactly one parameter, got {', '.join(varying)}")
    name = varying[0] if varying else None
    specs = []
    for value in lists[name] if name else [None]:
        params = {k: vals[0] for k, vals in lists.items()}
        if name:
            params[name] = value
        specs.append(FamilySpec(args.family, params["g"], params["h"], params["ell"],
                                params["n"]))
    # everything is computed before anything is written
    records = []
    for spec in specs:
        records += zero_records(exceptional_zeros(spec, config))
        if args.deforming:
            records += _deforming_records(spec, config)
    records.sort(key=_record_key)
    prov = _provenance(args, config, "sweep")
    prov["varying"] = name
    if args.format == "json":
        doc = {"provenance": prov, "records": records}
        text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    elif args.format == "csv":
        text = records_to_csv(records, prov)
    else:
        text = records_to_csv(records, prov).replace(",", "\t")
    _emit(text, args.out)
    return EXIT_OK


def _explicit_reports(args, config):
    """Run one suite's check on the parameters given on the command line."""
    lists = _param_lists(args)
    suite = args.suite
    fam = Family(args.family)
    g, h, ell, n = (lists[k][0] for k in SWEEPABLE)
    spec = FamilySpec(fam, g, h, ell, n)
    if suite == "counts":
        return [v.verify_counts(FamilySpec(fam, gg, hh, ll, nn), config)
                for gg in lists["g"] for hh in lists["h"]
                for ll in lists["ell"] for nn in lists["n"]]
    if suite == "interlacing":
        return [v.verify_interlacing(spec, max(n, 1), config)]
    if suite == "flow":
        return [v.verify_extra_flow(spec.replace(n=0), v.DEFAULT_FLOW_N, config)]
    if suite == "structure":
        return [v.verify_structure_rules(fam, max(ell, 1), spec, config)]
    if suite == "ell-flow":
        return [v.verify_ell_flow(spec, max(ell, 1), config)]
    if suite == "large-param":
        h_list = lists["h"] if len(lists["h"]) > 1 else None
        return [v.verify_large_param(spec, lists["g"], config, h_list=h_list)]
    if suite == "clustering":
        if fam is not Family.J2:
            raise UsageError("the clustering check is defined for J2 only")
        return [v.verify_h_clustering(g, lists["h"], ell, n, config)]
    raise UsageError(f"suite {suite!r} has no explicit-parameter form")


def cmd_verify(args):
    config = _root_config(args)
    if args.family is not None:
        reports = _explicit_reports(args, config)
    else:
        reports = run_suite(args.suite, config)
    failed = [r for r in reports if not r.passed]
    prov = _provenance(args, config, "verify")
    prov["suite"] = args.suite
    if args.format == "json":
        doc = {"provenance": prov, "passed": not failed,
               "reports": [r.as_dict() for r in reports]}
        text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    else:
        head = "".join(f"# {k}: {json.dumps(prov[k], sort_keys=True)}\n" for k in sorted(prov))
        body = "\n".join(r.to_text() for r in reports)
        tail = f"\n{len(reports) - len(failed)}/{len(reports)} checks passed\n"
        text = head + body + tail
    _emit(text, args.out)
    for r in failed[:5]:
        print(f"FAILED {r.check_name} {json.dumps(r.params, sort_keys=True)}"
              + (f": {r.message}" if r.message else ""), file=sys.stderr)
    return EXIT_FAILURE if failed else EXIT_OK


def _add_common(p, params=True, formats=("json", "csv", "text"), default_format="json"):
    p.add_argument("--precision", choices=prec.MODES, default=None,
                   help=f"working precision (default from ${prec.ENV_VAR}, else auto)")
    p.add_argument("--format", choices=formats, default=default_format)
    p.add_argument("--out", metavar="PATH", help="write to PATH instead of stdout")
    p.add_argument("--tol", type=float, default=RootConfig().tolerance,
                   help="root-finder backward-error tolerance")
    if params:
        p.add_argument("--family", choices=[f.value for f in Family])
        p.add_argument("--g", help="value, a:b:step or comma list")
        p.add_argument("--h", help="value, a:b:step or comma list (Jacobi only)")
        p.add_argument("--ell", default="0", help="value, a:b:step or comma list")
        p.add_argument("--n", default="0", help="value, a:b:step or comma list")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="xpoly", description="Zeros of exceptional Laguerre and Jacobi polynomials.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("zeros", help="zeros of one polynomial")
    _add_common(p)
    p.add_argument("--deforming", action="store_true",
                   help="also list the deforming-polynomial zeros")
    p.set_defaults(func=cmd_zeros, needs_family=True)

    p = sub.add_parser("table", help="regenerate one of the zero tables")
    p.add_argument("table", type=int, help=f"table id {min(TABLES)}..{max(TABLES)}")
    _add_common(p, params=False, default_format="text")
    p.set_defaults(func=cmd_table, needs_family=False)

    p = sub.add_parser("sweep", help="zeros along one varying parameter")
    _add_common(p, default_format="csv")
    p.add_argument("--deforming", action="store_true",
                   help="also list the deforming-polynomial zeros")
    p.set_defaults(func=cmd_sweep, needs_family=True)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("--suite", choices=sorted(SUITES) + ["all"], default="all")
    _add_common(p, formats=("json", "text"), default_format="text")
    p.set_defaults(func=cmd_verify, needs_family=False)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "needs_family", False) and args.family is None:
        parser.error("--family is required")
    try:
        return args.func(args)
    except (UsageError, ParameterViolation) as exc:
        print(f"xpoly: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NonConvergence, CountMismatch) as exc:
        print(f"xpoly: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
