from .export import export_csv, export_latex, latex_escape
from .nonparametric import (
    EXACT_WILCOXON_MAX_N,
    TestResult,
    average_ranks,
    chi_square_sf,
    friedman,
    normal_cdf,
    wilcoxon_signed_rank,
)
from .summary import (
    SummaryCell,
    SummaryRow,
    SummaryTable,
    groups_from_records,
    summarize,
)

__all__ = [
    "EXACT_WILCOXON_MAX_N",
    "SummaryCell",
    "SummaryRow",
    "SummaryTable",
    "TestResult",
    "average_ranks",
    "chi_square_sf",
    "export_csv",
    "export_latex",
    "friedman",
    "groups_from_records",
    "latex_escape",
    "normal_cdf",
    "summarize",
    "wilcoxon_signed_rank",
]
