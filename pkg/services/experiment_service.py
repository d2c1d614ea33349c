"""
Experiment Service Module

Trade-off sweeps: spectral efficiency versus average power for every
requested policy.

    fsm-heu / baseline : one point per power level at the FSM DT duration,
                         simulated or from the linear-system evaluation
    perseus            : one point per lambda, solved then simulated
    genie              : closed-form bound per power level
"""

from dataclasses import dataclass, field
from typing import List, Sequence

from models.core.units import dbm_to_watt
from models.entities.records import TradeoffPoint
from services.blockage_service import BlockageService
from services.metrics_service import MetricsService
from services.policy_service import FsmVariant, PolicyService
from services.simulation_service import SimulationService

POLICIES = ('perseus', FsmVariant.HEURISTIC.value, FsmVariant.BASELINE.value, 'genie')
MODES = ('simulate', 'analytic')


@dataclass
class SweepReport:
    """
    Attributes:
        points: one TradeoffPoint per (policy, grid value), in sweep order
        unconverged: lambda values whose solve hit max_iters
        aborted: episodes stopped by an impossible observation
    """

    points: List[TradeoffPoint] = field(default_factory=list)
    unconverged: List[float] = field(default_factory=list)
    aborted: int = 0


class ExperimentService:
    """Sweep orchestration over a ModelHandler."""

    @staticmethod
    def genie_points(handler) -> List[TradeoffPoint]:
        cfg = handler.cfg
        pi_b1, pi_b2 = (BlockageService.steady_state(chain) for chain in handler.blockage)
        points = []
        for power in cfg.power_levels:
            snr = handler.budget.gain * float(dbm_to_watt(power))
            se, avg_power = PolicyService.genie_bound(
                snr, pi_b1, pi_b2, cfg.pilot_fraction, cfg.bandwidth, handler.budget.gain
            )
            points.append(TradeoffPoint(
                policy='genie',
                grid_value=float(power),
                power_dbm=float(power),
                avg_power_w=avg_power,
                spectral_eff_bps_hz=se,
                objective=se - cfg.lagrange_weight * avg_power / cfg.bandwidth,
                ci_se=0.0,
                ci_power=0.0,
                episodes=0,
                seed=cfg.seed,
            ))
        return points

    @staticmethod
    def fsm_points(handler, variant: str, mode: str, threads: int, report: SweepReport) -> List[TradeoffPoint]:
        cfg = handler.cfg
        points = []
        for power in cfg.power_levels:
            policy = handler.fsm_policy(variant, power)
            if mode == 'analytic':
                bits, energy, duration = PolicyService.evaluate_fsm_metrics(policy, handler.chain)
                points.append(MetricsService.analytic_point(
                    bits, energy, duration, cfg.lagrange_weight, cfg.bandwidth, cfg.slot_duration,
                    policy.name, power, power, cfg.seed
                ))
                continue

            records = SimulationService.run_episodes(
                policy, handler.environment, cfg.episodes, cfg.seed,
                threads=threads, progress=handler.progress
            )
            report.aborted += sum(r.aborted for r in records)
            points.append(MetricsService.aggregate(
                records, cfg.lagrange_weight, cfg.bandwidth, cfg.slot_duration,
                policy.name, power, power, cfg.seed
            ))
        return points

    @staticmethod
    def perseus_points(handler, threads: int, report: SweepReport) -> List[TradeoffPoint]:
        cfg = handler.cfg
        beliefs = handler.belief_set()
        points = []
        for index, lam in enumerate(cfg.lambda_grid):
            result = handler.solve(lam, beliefs, index=index)
            if not result.converged:
                report.unconverged.append(lam)

            policy = handler.perseus_policy(result.alpha_set)
            records = SimulationService.run_episodes(
                policy, handler.environment, cfg.episodes, cfg.seed,
                threads=threads, progress=handler.progress
            )
            report.aborted += sum(r.aborted for r in records)
            points.append(MetricsService.aggregate(
                records, lam * cfg.lambda_scale, cfg.bandwidth, cfg.slot_duration,
                'perseus', lam, None, cfg.seed
            ))
        return points

    @staticmethod
    def sweep(handler, policies: Sequence[str], mode: str = 'simulate', threads: int = 1) -> SweepReport:
        """
        Runs every requested policy over its grid.

        Raises:
            ValueError: unknown policy or mode
        """
        if mode not in MODES:
            raise ValueError(f"Unknown sweep mode '{mode}' (expected one of {', '.join(MODES)})")

        report = SweepReport()
        for name in policies:
            if name == 'genie':
                report.points.extend(ExperimentService.genie_points(handler))
            elif name == 'perseus':
                report.points.extend(ExperimentService.perseus_points(handler, threads, report))
            elif name in (FsmVariant.HEURISTIC.value, FsmVariant.BASELINE.value):
                report.points.extend(ExperimentService.fsm_points(handler, name, mode, threads, report))
            else:
                raise ValueError(f"Unknown policy '{name}' (expected one of {', '.join(POLICIES)})")
        return report
