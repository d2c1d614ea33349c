"""
Actions for Monte-Carlo evaluation.

simulate: one policy, one trade-off point (optionally traced and plotted).
sweep: every requested policy over its grid, one CSV of trade-off points.
"""

from cli.core import ActionResult, Views
from services.chart_generator import ChartGenerator
from services.experiment_service import ExperimentService
from services.metrics_service import MetricsService
from services.simulation_service import SimulationService

from .helpers import build_policy, parse_policies, print_points, provenance, run_summary, save_points


def action_simulate(context: dict) -> ActionResult:
    handler = context['handler']
    args = context['args']
    cfg = handler.cfg

    name = args.policy
    if args.policy_file and name != 'perseus':
        return ActionResult.error(f"--policy-file holds a PERSEUS policy, got --policy {name}")
    policy, grid_value, power_dbm, extra = build_policy(handler, name, args.policy_file, args.power)
    weight = grid_value * cfg.lambda_scale if name == 'perseus' else cfg.lagrange_weight

    Views.print_info(f"{cfg.episodes} episodes of '{name}' on {args.threads} thread(s)")
    records = SimulationService.run_episodes(
        policy, handler.environment, cfg.episodes, cfg.seed,
        threads=args.threads, trace=bool(args.trace), progress=handler.progress
    )
    point = MetricsService.aggregate(
        records, weight, cfg.bandwidth, cfg.slot_duration, name, grid_value, power_dbm, cfg.seed
    )
    print_points([point])

    artifacts = save_points(handler, args.out, [point], policy=name)
    if args.trace:
        stamp = provenance(handler)
        artifacts.append(handler.client.save_jsonl(
            args.trace, ({**stamp, **record.to_dict()} for record in records)
        ))
    if args.plot:
        if args.trace and records:
            artifacts.append(ChartGenerator.episode_trace(records[0], handler.client.path(args.plot), table=handler.table))
        else:
            artifacts.append(ChartGenerator.tradeoff_curves([point], handler.client.path(args.plot)))

    aborted = [r for r in records if r.aborted]
    truncated = sum(r.truncated for r in records)
    summary = run_summary(
        handler,
        policy=name,
        episodes=len(records),
        truncated=truncated,
        aborted=len(aborted),
        **{'spectral efficiency [bps/Hz]': point.spectral_eff_bps_hz,
           'average power [W]': point.avg_power_w},
        **extra
    )
    if aborted:
        return ActionResult.runtime_error(
            f"{len(aborted)} episode(s) aborted, first: episode {aborted[0].episode}, {aborted[0].diagnostic}",
            artifacts=artifacts, data={'summary': summary}
        )
    return ActionResult.success("Simulation finished", artifacts=artifacts, data={'summary': summary})


def action_sweep(context: dict) -> ActionResult:
    handler = context['handler']
    args = context['args']
    cfg = handler.cfg

    policies = parse_policies(args.policy)
    Views.print_info(f"Sweeping {', '.join(policies)} ({args.mode})")
    report = ExperimentService.sweep(handler, policies, mode=args.mode, threads=args.threads)
    print_points(report.points)

    artifacts = save_points(
        handler, args.out, report.points,
        policies=policies, mode=args.mode,
        power_levels=list(cfg.power_levels), lambda_grid=list(cfg.lambda_grid),
    )
    if args.plot:
        artifacts.append(ChartGenerator.tradeoff_curves(report.points, handler.client.path(args.plot)))

    summary = run_summary(
        handler,
        points=len(report.points),
        aborted=report.aborted,
        **{'unconverged lambdas': ','.join(f"{lam:g}" for lam in report.unconverged) or 'none'}
    )
    if report.unconverged or report.aborted:
        return ActionResult.runtime_error(
            "Sweep finished with flagged runs (see summary)",
            artifacts=artifacts, data={'summary': summary}
        )
    return ActionResult.success("Sweep finished", artifacts=artifacts, data={'summary': summary})
