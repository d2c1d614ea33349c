"""
Actions for the mobility model.

estimate-mobility: Gauss-Markov trajectories -> sector chain CSV.
"""

from cli.core import ActionResult, Views
from clients.id_processors import config_hash
from services.mobility_service import MobilityService

from .helpers import run_summary, save_csv_with_meta


def action_estimate_mobility(context: dict) -> ActionResult:
    """
    Estimate the (S+1)x(S+1) sector transition matrix and write it as CSV.

    The chain is always re-estimated here; --mobility-file only matters
    for the commands that consume a chain.
    """
    handler = context['handler']
    args = context['args']
    cfg = handler.cfg

    Views.print_info(
        f"Simulating {cfg.mobility_trajectories} trajectories "
        f"(mobility seed {cfg.mobility_seed}, {cfg.num_sectors} sectors)"
    )
    chain = handler.estimate_chain()
    exit_slots = MobilityService.expected_exit_time(chain)
    chain_hash = config_hash(cfg, chain.matrix)

    header, rows = MobilityService.chain_to_rows(chain)
    Views.print_table(['from'] + header, [[label] + row for label, row in zip(header, rows)], precision=3)

    artifacts = save_csv_with_meta(
        handler, args.out, header, rows,
        config_hash=chain_hash,
        mobility_seed=cfg.mobility_seed,
        trajectories=cfg.mobility_trajectories,
        expected_exit_slots=exit_slots,
    )
    return ActionResult.success(
        "Sector chain estimated",
        artifacts=artifacts,
        data={'summary': run_summary(
            handler,
            config_hash=chain_hash,
            **{'mobility seed': cfg.mobility_seed,
               'expected exit time [slots]': exit_slots,
               'expected exit time [s]': exit_slots * cfg.slot_duration}
        )}
    )
