"""Atlas: sweep the classification table rows and report computed counts.

Each row of the published tables is evaluated with a representative set of
hyperbolic singular values at an admissible signature:  the class is
enumerated through the ordinary pipeline and the solutions belonging to the
row are counted and summarized. The rendered document is deterministic and
meant to be diffed against a committed golden file.
"""

from __future__ import annotations

from dataclasses import dataclass

from .classify import ROWS, ClassKey, Row, _subcase, enumerate_canonical
from .linalg import Signature

__all__ = ["AtlasEntry", "atlas_entries", "render_atlas"]


@dataclass(frozen=True)
class AtlasEntry:
    row: Row
    p: int
    q: int
    count_label: str  # computed: "0".."6" or "inf"
    f2_values: tuple[float, ...]  # distinct F^2 values among the row's solutions
    subcase: str


def _evaluate_row(row: Row, p: int, q: int) -> AtlasEntry:
    sig = Signature(p, q)
    d, x, y = row.cls
    warnings: list[str] = []
    subcase = _subcase(row.cls, row.jsample, warnings)
    if row.cond and subcase != row.cond:
        raise ValueError(
            f"sample {row.jsample} for row {row.row_id} lands in sub-case "
            f"{subcase!r}, expected {row.cond!r}"
        )
    key = ClassKey(dJ=d, xJ=x, yJ=y, subcase=subcase, jvals=row.jsample)
    report = enumerate_canonical(key, sig)
    pots = [e for e in report.exact if e.potential.row == row.row_id]
    fams = [f for f in report.families if f.row == row.row_id]
    if fams:
        label = "inf"
        f2s: tuple[float, ...] = (0.0,)
    else:
        label = str(len(pots))
        vals = sorted({round(e.strength.f2_scalar, 9) for e in pots})
        f2s = tuple(float(v) for v in vals)
    return AtlasEntry(row=row, p=p, q=q, count_label=label, f2_values=f2s, subcase=subcase)


def atlas_entries(pq_list=None) -> list[AtlasEntry]:
    """Evaluate table rows.

    With ``pq_list`` None, every row runs once at its minimal admissible
    signature. Otherwise each row is evaluated at each listed (p, q) where it
    is reachable (so an empty list yields an empty document); Table 1 is the
    (1, 1) sweep.
    """
    out = []
    if pq_list is None:
        for row in ROWS:
            out.append(_evaluate_row(row, *row.pq_min))
        return out
    for (p, q) in pq_list:
        for row in ROWS:
            if row.pq_ok(p, q):
                out.append(_evaluate_row(row, p, q))
    return out


def _fmt(v: float) -> str:
    s = f"{v:.12g}"
    return "0" if s == "-0" else s


def render_atlas(entries) -> str:
    lines = [
        "# solution-count atlas; columns: table | p q | dJ xJ yJ | condition | "
        "j sample | count | distinct F^2 values"
    ]
    for e in entries:
        d, x, y = e.row.cls
        cond = e.row.cond if e.row.cond else "-"
        js = ",".join(_fmt(j) for j in e.row.jsample) if e.row.jsample else "-"
        count = {"0": "empty"}.get(e.count_label, e.count_label)
        f2 = ""
        if e.count_label not in ("0",):
            f2 = " ".join(_fmt(v) for v in e.f2_values)
        lines.append(
            f"T{e.row.table} | {e.p} {e.q} | {d} {x} {y} | {cond} | {js} | "
            f"{count} | {f2}".rstrip()
        )
    return "\n".join(lines) + "\n"
