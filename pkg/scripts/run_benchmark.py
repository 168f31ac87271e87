#!/usr/bin/env python3
"""Small reproducible benchmark campaign with statistical synthesis.

Runs NSGA-II and MOEA/D over three ZDT problems, prints the IGD summary
table, pairwise Wilcoxon tests and the Friedman test, and writes CSV/LaTeX
exports next to the payload store.

Usage:
    python3 scripts/run_benchmark.py [--runs 5] [--budget 10000] [--store ./bench]
"""

import argparse
import sys
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from emolab.algorithms import AlgorithmConfig
from emolab.indicators import MetricSpec
from emolab.orchestrator import (
    ExperimentPlan,
    ProblemVariant,
    plan_seeds,
    recompute_metrics,
    run_experiment,
)
from emolab.stats import (
    export_csv,
    export_latex,
    friedman,
    groups_from_records,
    summarize,
    wilcoxon_signed_rank,
)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--runs", type=int, default=5)
    parser.add_argument("--budget", type=int, default=10_000)
    parser.add_argument("--seed", type=int, default=1000)
    parser.add_argument("--workers", type=int, default=4)
    parser.add_argument("--store", default="./bench")
    args = parser.parse_args()

    plan = ExperimentPlan(
        experiment_id="bench-zdt",
        algorithms=(
            AlgorithmConfig("nsga2", pop_size=100),
            AlgorithmConfig("moead", pop_size=100),
        ),
        variants=(
            ProblemVariant("zdt1"),
            ProblemVariant("zdt2"),
            ProblemVariant("zdt3"),
        ),
        n_runs=args.runs,
        fe_budget=args.budget,
        seed_plan=plan_seeds("sequence", args.seed, args.runs),
        max_workers=args.workers,
        metrics=(MetricSpec("igd"),),
    )
    store = Path(args.store)
    print(f"running {plan.total_runs} runs at {args.budget} FE each ...")
    result = run_experiment(plan, store_dir=store)
    print(f"completed {len(result.payloads)}, failed {len(result.failures)}")

    records = recompute_metrics(result.payloads, plan.metrics)
    groups = groups_from_records(records, "igd")
    table = summarize(groups, "igd", "minimize", algorithms=["nsga2", "moead"])

    csv_text = export_csv(table)
    (store / "summary.csv").write_text(csv_text, encoding="utf-8")
    (store / "summary.tex").write_text(export_latex(table), encoding="utf-8")
    print(f"\nIGD summary (mean±std over {args.runs} runs):\n")
    print(csv_text.replace("\r\n", "\n"))

    # paired per-seed comparison on each problem, then over problem means
    per_cell: dict[tuple, dict[str, dict[int, float]]] = {}
    for record, payload in zip(records, result.payloads):
        cell = (record["problem_id"], record["n_obj"], record["n_var"])
        per_cell.setdefault(cell, {}).setdefault(record["algorithm_id"], {})[
            payload.seed
        ] = record["values"]["igd"]
    xs, ys = [], []
    for cell, algs in sorted(per_cell.items()):
        for seed in sorted(algs["nsga2"]):
            xs.append(algs["nsga2"][seed])
            ys.append(algs["moead"][seed])
    w = wilcoxon_signed_rank(xs, ys)
    print(f"wilcoxon nsga2 vs moead: W={w.statistic:.1f} p={w.p_value:.4g} [{w.method_note}]")

    matrix = table.values_matrix()
    if matrix.shape[0] >= 2 and not np.isnan(matrix).any():
        f = friedman(matrix, "minimize")
        print(f"friedman over problems: chi2={f.statistic:.3f} p={f.p_value:.4g}")
    print(f"\nexports written to {store}/summary.csv and {store}/summary.tex")
    print(f"manifest: {result.manifest_path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
