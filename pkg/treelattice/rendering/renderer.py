import csv
import io
import json
from typing import Sequence

from treelattice.core.base import CheckReport
from treelattice.core.linalg import IntMatrix
from treelattice.core.poset import TamariPoset
from treelattice.core.tree import Tree, format_tree

MATRIX_FORMATS = ("json", "csv", "text")
TREE_FORMATS = ("text", "json")
POSET_FORMATS = ("dot", "json", "text")


def _dumps(payload) -> str:
    return json.dumps(payload, separators=(",", ":"))


def _literals(trees: Sequence[Tree]) -> list[str]:
    return [format_tree(t) for t in trees]


# ═══════════════════════════════════════════════════════════
#  MATRICES
# ═══════════════════════════════════════════════════════════


def render_matrix(m: IntMatrix, degree: int, trees: Sequence[Tree], fmt: str) -> str:
    """
    Column j is the image of basis tree j; rows are listed top to bottom.
    """
    if fmt == "json":
        return _dumps(
            {"degree": degree, "size": m.rows, "basis": _literals(trees), "rows": m.tolist()}
        )
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerows(m.tolist())
        return buf.getvalue().rstrip("\n")
    if fmt == "text":
        rows = m.tolist()
        width = max(len(str(x)) for row in rows for x in row)
        return "\n".join(" ".join(str(x).rjust(width) for x in row) for row in rows)
    raise ValueError(f"unknown matrix format {fmt!r}")


# ═══════════════════════════════════════════════════════════
#  TREES & POSETS
# ═══════════════════════════════════════════════════════════


def render_trees(degree: int, trees: Sequence[Tree], fmt: str) -> str:
    if fmt == "json":
        return _dumps({"degree": degree, "size": len(trees), "trees": _literals(trees)})
    if fmt == "text":
        return "\n".join(_literals(trees))
    raise ValueError(f"unknown tree format {fmt!r}")


def render_poset(p: TamariPoset, fmt: str) -> str:
    labels = _literals(p.basis)
    if fmt == "dot":
        # edges point upward, so the minimum sits on the bottom rank
        lines = [f"digraph T{p.degree} {{", "  rankdir=BT;"]
        lines += [f'  {r} [label="{label}"];' for r, label in enumerate(labels)]
        lines += [f"  {lo} -> {hi};" for lo, hi in p.edges]
        lines.append("}")
        return "\n".join(lines)
    if fmt == "json":
        return _dumps(
            {
                "degree": p.degree,
                "size": len(labels),
                "basis": labels,
                "covers": [list(e) for e in p.edges],
                "linear_extension": list(p.linear_extension),
            }
        )
    if fmt == "text":
        return "\n".join(f"{labels[lo]} < {labels[hi]}" for lo, hi in p.edges)
    raise ValueError(f"unknown poset format {fmt!r}")


# ═══════════════════════════════════════════════════════════
#  REPORTS
# ═══════════════════════════════════════════════════════════


def render_reports(reports: Sequence[CheckReport]) -> str:
    lines = [r.summary() for r in reports]
    failed = sum(1 for r in reports if not r.passed)
    lines.append(f"{len(reports) - failed} passed, {failed} failed")
    return "\n".join(lines)
