"""Regeneration of the published zero tables.

Each table lists, for one parameter set, the zeros of the shifted deforming
polynomial, the extra zeros of ``P_{ell,n}`` for ``n = 0, 10, ..., 60`` and
the zeros of the unshifted deforming polynomial.  Conjugate pairs appear once
as ``a ± b i``; columns are ordered by real part.
"""

import dataclasses

from .families import FamilySpec, deforming_poly
from .roots import RootConfig, exceptional_zeros, find_roots, representatives

__all__ = ["TABLES", "ROW_NS", "TableSpec", "format_value", "render_table", "table_rows"]

ROW_NS = tuple(range(0, 61, 10))


@dataclasses.dataclass(frozen=True)
class TableSpec:
    number: int
    family: str
    g: float
    h: float
    ell: int
    decimals: int

    def spec(self, n=0):
        return FamilySpec(self.family, self.g, self.h, self.ell, n)


TABLES = {
    1: TableSpec(1, "L1", 2.0, None, 5, 4),
    2: TableSpec(2, "L1", 8.0, None, 5, 4),
    3: TableSpec(3, "L2", 3.0, None, 4, 5),
    4: TableSpec(4, "L2", 10.0, None, 5, 4),
    5: TableSpec(5, "J2", 3.0, 4.0, 4, 5),
    6: TableSpec(6, "J2", 3.0, 4.0, 5, 5),
    7: TableSpec(7, "J2", 8.0, 9.0, 3, 5),
}


def _table(number):
    try:
        return TABLES[int(number)]
    except (KeyError, ValueError):
        raise ValueError(f"unknown table {number!r}; choose from {sorted(TABLES)}") from None


def table_rows(number, config=None):
    """``[(label, representatives), ...]`` for the rows Xi, n=0..60, xi."""
    config = config or RootConfig()
    t = _table(number)
    rows = []
    for shifted, label in ((True, "Xi"), (False, "xi")):
        p = deforming_poly(t.spec(), shifted=shifted, precision="extended")
        reps = representatives(find_roots(p, config.tolerance, config.max_iter).roots,
                               config.imag_eps)
        rows.append((label, reps))
    body = [(f"n={n}", exceptional_zeros(t.spec(n), config).extra_representatives())
            for n in ROW_NS]
    return [rows[0]] + body + [rows[1]]


def format_value(z, decimals):
    """Fixed-point text, ``"a ± b i"`` for complex values (locale independent)."""
    z = complex(z)
    re = f"{z.real:.{decimals}f}"
    if z.imag == 0:
        return re
    return f"{re} ± {abs(z.imag):.{decimals}f} i"


def render_table(number, config=None):
    t = _table(number)
    rows = table_rows(number, config)
    cells = [[format_value(z, t.decimals) for z in reps] for _, reps in rows]
    width = max(len(c) for row in cells for c in row)
    h = "" if t.h is None else f" h={t.h:g}"
    lines = [f"Table {t.number}: {t.family} g={t.g:g}{h} ell={t.ell}"]
    for (label, _), row in zip(rows, cells):
        lines.append(f"{label:>6}  " + "  ".join(c.rjust(width) for c in row))
    return "\n".join(lines) + "\n"
