"""Byte-stable CSV and LaTeX renderings of a summary table.

CSV follows RFC 4180 (CRLF line endings, minimal quoting); cells read
"mean±std" at 4 significant digits unless full precision is requested.
LaTeX emits a complete booktabs-style tabular with best cells in bold and
NaN rendered as --.
"""

from __future__ import annotations

import csv
import io
import math

from .summary import SummaryCell, SummaryTable

_LATEX_SPECIALS = {
    "&": r"\&",
    "%": r"\%",
    "$": r"\$",
    "#": r"\#",
    "_": r"\_",
    "{": r"\{",
    "}": r"\}",
    "~": r"\textasciitilde{}",
    "^": r"\textasciicircum{}",
    "\\": r"\textbackslash{}",
}


def _sig(value: float, full_precision: bool) -> str:
    if full_precision:
        return repr(value)
    return f"{value:.4g}"


def _csv_cell(cell: SummaryCell | None, full_precision: bool) -> str:
    if cell is None or cell.n == 0 or math.isnan(cell.mean):
        return "NaN"
    return f"{_sig(cell.mean, full_precision)}±{_sig(cell.std, full_precision)}"


def export_csv(table: SummaryTable, full_precision: bool = False) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\r\n", quoting=csv.QUOTE_MINIMAL)
    writer.writerow(["problem", "M", "D"] + list(table.algorithms))
    for row in table.rows:
        writer.writerow(
            [row.problem_id, row.n_obj, row.n_var]
            + [_csv_cell(row.cells.get(alg), full_precision) for alg in table.algorithms]
        )
    return buffer.getvalue()


def latex_escape(text: str) -> str:
    return "".join(_LATEX_SPECIALS.get(ch, ch) for ch in str(text))


def _latex_cell(cell: SummaryCell | None) -> str:
    if cell is None or cell.n == 0 or math.isnan(cell.mean):
        return "--"
    body = f"{cell.mean:.4g} $\\pm$ {cell.std:.4g}"
    return f"\\textbf{{{body}}}" if cell.best else body


def export_latex(table: SummaryTable) -> str:
    columns = "lrr" + "r" * len(table.algorithms)
    header = ["Problem", "$M$", "$D$"] + [latex_escape(a) for a in table.algorithms]
    lines = [
        f"\\begin{{tabular}}{{{columns}}}",
        "\\toprule",
        " & ".join(header) + " \\\\",
        "\\midrule",
    ]
    for row in table.rows:
        cells = [latex_escape(row.problem_id), str(row.n_obj), str(row.n_var)]
        cells += [_latex_cell(row.cells.get(alg)) for alg in table.algorithms]
        lines.append(" & ".join(cells) + " \\\\")
    lines += ["\\bottomrule", "\\end{tabular}"]
    return "\n".join(lines) + "\n"
