"""Evolutionary multi-objective optimization workbench.

Subpackages:
    core         problem model, dominance relations, benchmark catalog
    algorithms   NSGA-II and MOEA/D engines with a stepwise interface
    indicators   quality-indicator kernels (IGD family, hypervolume)
    orchestrator seed plans, run/campaign execution, payload persistence
    mcdm         a-posteriori compromise selection (TOPSIS, weighted sum)
    stats        summary tables, nonparametric tests, CSV/LaTeX export
    formulation  expression DSL, verification chain, problem registry
    service      HTTP API + SSE event streams; `lab` CLI in emolab.cli
"""

__version__ = "0.1.0"
