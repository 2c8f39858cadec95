"""Serialization of zeros and reports to JSON, CSV and plain text.

JSON stores complex numbers as ``{"re": x, "im": y}``.  Floats are written
with ``repr`` precision, so a JSON round trip reproduces every value exactly.
"""

import csv
import io
import json
import os
import tempfile

import numpy as np

from .families import FamilySpec
from .roots import ClassifiedZeros, RootSet

__all__ = [
    "CSV_COLUMNS",
    "atomic_write",
    "complex_to_json",
    "zero_records",
    "records_to_csv",
    "zeros_from_dict",
    "zeros_to_dict",
]

CSV_COLUMNS = ("family", "g", "h", "ell", "n", "zero_index", "re", "im", "class", "residual")


def complex_to_json(z):
    z = complex(z)
    return {"re": z.real, "im": z.imag}


def _complex_from_json(d):
    return complex(d["re"], d["im"])


def zeros_to_dict(cz):
    """Plain-data view of a ClassifiedZeros that :func:`zeros_from_dict` inverts."""
    rs = cz.rootset
    return {
        "spec": cz.spec.as_dict(),
        "domain": [cz.domain[0], cz.domain[1] if np.isfinite(cz.domain[1]) else "inf"],
        "ordinary": [float(x) for x in cz.ordinary],
        "ordinary_residuals": [float(r) for r in cz.ordinary_residuals],
        "extra": [complex_to_json(z) for z in cz.extra],
        "extra_residuals": [float(r) for r in cz.extra_residuals],
        "extra_real": [float(x) for x in cz.extra_real],
        "rootset": {
            "roots": [complex_to_json(z) for z in rs.roots],
            "residuals": [float(r) for r in rs.residuals],
            "iterations": rs.iterations,
            "converged": rs.converged,
            "bits": rs.bits,
        },
    }


def zeros_from_dict(d):
    s = d["spec"]
    spec = FamilySpec(s["family"], s["g"], s["h"], s["ell"], s["n"], check=False)
    r = d["rootset"]
    rs = RootSet(
        np.array([_complex_from_json(z) for z in r["roots"]], dtype=np.complex128),
        np.array(r["residuals"], dtype=np.float64),
        r["iterations"],
        r["converged"],
        r["bits"],
    )
    lo, hi = d["domain"]
    return ClassifiedZeros(
        np.array(d["ordinary"], dtype=np.float64),
        np.array([_complex_from_json(z) for z in d["extra"]], dtype=np.complex128),
        np.array(d["extra_real"], dtype=np.float64),
        (float(lo), float(hi)),
        spec,
        rs,
        np.array(d["ordinary_residuals"], dtype=np.float64),
        np.array(d["extra_residuals"], dtype=np.float64),
    )


def zero_records(cz, extra_columns=None):
    """One CSV-shaped record per zero: ordinary ascending, then extra."""
    s = cz.spec
    base = {"family": s.family.value, "g": s.g, "h": s.h, "ell": s.ell, "n": s.n}
    if extra_columns:
        base.update(extra_columns)
    out = []
    rows = [(complex(x), "ordinary", r) for x, r in zip(cz.ordinary, cz.ordinary_residuals)]
    rows += [(complex(z), "extra", r) for z, r in zip(cz.extra, cz.extra_residuals)]
    for i, (z, cls, res) in enumerate(rows):
        rec = dict(base)
        rec.update({"zero_index": i, "re": z.real, "im": z.imag, "class": cls,
                    "residual": float(res)})
        out.append(rec)
    return out


def _cell(v):
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(float(v))
    return str(v)


def records_to_csv(records, provenance, columns=CSV_COLUMNS):
    """CSV text: ``#`` provenance lines, a header row, then the records."""
    buf = io.StringIO()
    for key in sorted(provenance):
        buf.write(f"# {key}: {json.dumps(provenance[key], sort_keys=True)}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for rec in records:
        writer.writerow([_cell(rec.get(c)) for c in columns])
    return buf.getvalue()


def atomic_write(path, text):
    """Write ``text`` to ``path`` through a temporary file and a rename."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".xpoly-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
