"""`lab` command line: headless access to every workbench workflow.

Each subcommand is a thin client of the module operations; nothing here
computes domain results itself. Exit code 0 means full success.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .algorithms import AlgorithmConfig
from .errors import RunFailedError
from .formulation import ProblemSource, verify
from .indicators import METRIC_IDS, MetricSpec
from .mcdm import MCDM_METHODS, decide_and_snapshot, sidecar_path
from .orchestrator import (
    PAYLOAD_SUFFIX,
    ExperimentPlan,
    load,
    load_manifest,
    persist,
    read_canonical,
    recompute_metrics,
    run_experiment,
    run_single,
)
from .stats import export_csv, export_latex, groups_from_records, summarize


def _parse_floats(text: str) -> tuple[float, ...]:
    return tuple(float(v) for v in text.split(",") if v.strip())


def _metric_specs(args) -> tuple[MetricSpec, ...]:
    specs = []
    for metric_id in args.metric or []:
        ref_point = _parse_floats(args.ref_point) if args.ref_point else None
        specs.append(
            MetricSpec(metric_id, p=args.p, ref_point=ref_point if metric_id == "hv" else None)
        )
    return tuple(specs)


def _resolver():
    from .orchestrator import default_problem_resolver

    return default_problem_resolver


def cmd_test(args) -> int:
    resolver = _resolver()
    problem = resolver(args.problem, args.n_obj, args.n_var)
    config = AlgorithmConfig.from_dict(
        {"algorithm_id": args.algorithm, **({"pop_size": args.pop_size} if args.pop_size else {})}
    )
    specs = _metric_specs(args)
    try:
        payload = run_single(problem, config, args.seed, args.budget, metrics=specs)
    except RunFailedError as exc:
        print(f"run failed: {exc}", file=sys.stderr)
        for line in (exc.payload.log if exc.payload else [])[-10:]:
            print(f"  {line}", file=sys.stderr)
        return 1
    store = Path(args.store)
    path = store / f"{payload.run_id}{PAYLOAD_SUFFIX}"
    persist(payload, path)
    print(f"run_id: {payload.run_id}")
    print(f"payload: {path}")
    print(f"fe_used: {payload.meta['fe_used']}  wall_time_ms: {payload.wall_time_ms}")
    for history in payload.metric_histories:
        print(f"{history.metric_id}: {history.final_value}")
    return 0


def cmd_experiment(args) -> int:
    plan = ExperimentPlan.from_dict(read_canonical(args.plan))
    if args.workers:
        import dataclasses

        plan = dataclasses.replace(plan, max_workers=args.workers)
    result = run_experiment(plan, store_dir=args.store)
    print(f"experiment: {plan.experiment_id}")
    print(f"runs completed: {len(result.payloads)}  failed: {len(result.failures)}")
    if result.manifest_path:
        print(f"manifest: {result.manifest_path}")
    for failure in result.failures:
        print(f"  failed: {failure['problem_id']} x {failure['algorithm_id']} "
              f"run {failure['run_index']}: {failure['error']}", file=sys.stderr)
    return 0 if not result.failures else 1


def _load_payloads(paths: list[str]):
    expanded = []
    for raw in paths:
        path = Path(raw)
        if path.is_dir():
            expanded.extend(sorted(path.glob(f"*{PAYLOAD_SUFFIX}")))
        else:
            expanded.append(path)
    return [load(p) for p in expanded]


def cmd_recompute(args) -> int:
    payloads = _load_payloads(args.payloads)
    if not payloads:
        print("no payloads found", file=sys.stderr)
        return 1
    specs = _metric_specs(args)
    records = recompute_metrics(payloads, specs)
    header = ["run_id", "problem", "algorithm", "seed"] + [s.metric_id for s in specs]
    print(",".join(header))
    for record in records:
        cells = [
            record["run_id"], record["problem_id"], record["algorithm_id"],
            str(record["seed"]),
        ] + [str(record["values"][s.metric_id]) for s in specs]
        print(",".join(cells))
    flagged = [r for r in records if r["flags"]]
    if flagged:
        for record in flagged:
            print(f"# flags {record['run_id']}: {record['flags']}", file=sys.stderr)
    return 0


def cmd_decide(args) -> int:
    payload = load(args.payload)
    weights = _parse_floats(args.weights) if args.weights else None
    snapshot = decide_and_snapshot(
        payload, args.method, weights=weights, payload_path=args.payload
    )
    print(f"selected_index: {snapshot.selected_index}")
    print(f"score: {snapshot.score}")
    print(f"selected_values: {list(snapshot.selected_values)}")
    print(f"sidecar: {sidecar_path(args.payload)}")
    return 0


def cmd_export(args) -> int:
    manifest = load_manifest(args.manifest)
    store = Path(args.manifest).parent
    payloads = []
    for entry in manifest["runs"]:
        if entry.get("status") == "ok" and entry.get("path"):
            payloads.append(load(store / entry["path"]))
    spec = MetricSpec(args.metric_id, ref_point=_parse_floats(args.ref_point) if args.ref_point else None)
    records = recompute_metrics(payloads, [spec])
    groups = groups_from_records(records, spec.metric_id)
    algorithms = [a["algorithm_id"] for a in manifest["plan"]["algorithms"]]
    table = summarize(groups, spec.metric_id, spec.direction, algorithms=algorithms)
    text = export_csv(table, full_precision=args.full_precision) \
        if args.format == "csv" else export_latex(table)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        print(f"wrote {args.out}")
    else:
        sys.stdout.write(text)
    return 0


def cmd_validate(args) -> int:
    source = ProblemSource.from_dict(read_canonical(args.source))
    report = verify(source)
    for stage in report.stages:
        mark = "pass" if stage.passed else "FAIL"
        print(f"{stage.stage}: {mark}")
        for diag in stage.diagnostics:
            print(f"  - {diag}")
    print(f"accepted: {report.accepted}")
    return 0 if report.accepted else 1


def cmd_serve(args) -> int:
    import uvicorn

    from .service import ServiceSettings, create_app

    settings = ServiceSettings(
        store_dir=Path(args.store),
        max_workers=args.workers or 4,
        llm_mode="fixture" if args.llm_fixtures else "http",
        llm_endpoint=args.llm_endpoint or "",
        llm_model=args.llm_model or "",
    )
    app = create_app(settings, ui_dir=args.ui_dir)
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lab",
        description="multi-objective optimization workbench",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    test = sub.add_parser("test", help="run one algorithm on one problem once")
    test.add_argument("--problem", required=True)
    test.add_argument("--n-obj", type=int, dest="n_obj")
    test.add_argument("--n-var", type=int, dest="n_var")
    test.add_argument("--algorithm", default="nsga2", choices=["nsga2", "moead"])
    test.add_argument("--pop-size", type=int, dest="pop_size")
    test.add_argument("--seed", type=int, default=0)
    test.add_argument("--budget", type=int, required=True)
    test.add_argument("--metric", action="append", choices=list(METRIC_IDS))
    test.add_argument("--p", type=float, default=2.0)
    test.add_argument("--ref-point", dest="ref_point")
    test.add_argument("--store", default="./payloads")
    test.set_defaults(func=cmd_test)

    experiment = sub.add_parser("experiment", help="run a campaign from a plan file")
    experiment.add_argument("--plan", required=True)
    experiment.add_argument("--store", default="./payloads")
    experiment.add_argument("--workers", type=int)
    experiment.set_defaults(func=cmd_experiment)

    recompute = sub.add_parser("recompute", help="re-evaluate metrics on stored payloads")
    recompute.add_argument("payloads", nargs="+", help="payload files or directories")
    recompute.add_argument("--metric", action="append", choices=list(METRIC_IDS), required=True)
    recompute.add_argument("--p", type=float, default=2.0)
    recompute.add_argument("--ref-point", dest="ref_point")
    recompute.set_defaults(func=cmd_recompute)

    decide = sub.add_parser("decide", help="apply an MCDM rule to a stored payload")
    decide.add_argument("--payload", required=True)
    decide.add_argument("--method", required=True, choices=list(MCDM_METHODS))
    decide.add_argument("--weights")
    decide.set_defaults(func=cmd_decide)

    export = sub.add_parser("export", help="export a campaign summary table")
    export.add_argument("--manifest", required=True)
    export.add_argument("--metric", dest="metric_id", default="igd", choices=list(METRIC_IDS))
    export.add_argument("--ref-point", dest="ref_point")
    export.add_argument("--format", default="csv", choices=["csv", "latex"])
    export.add_argument("--full-precision", action="store_true")
    export.add_argument("--out")
    export.set_defaults(func=cmd_export)

    validate = sub.add_parser("validate", help="run the verification chain on a source file")
    validate.add_argument("--source", required=True)
    validate.set_defaults(func=cmd_validate)

    serve = sub.add_parser("serve", help="start the HTTP API")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8400)
    serve.add_argument("--store", default="./payloads")
    serve.add_argument("--workers", type=int)
    serve.add_argument("--llm-fixtures", action="store_true",
                       help="serve canned LLM responses (offline mode)")
    serve.add_argument("--llm-endpoint")
    serve.add_argument("--llm-model")
    serve.add_argument("--ui-dir", help="serve a built frontend from this directory")
    serve.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except Exception as exc:  # uniform nonzero exit with a message
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
