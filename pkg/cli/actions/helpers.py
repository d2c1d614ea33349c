"""
Helper functions for CLI actions.

Provenance blocks, metadata sidecars for CSV artifacts, trade-off tables
and policy selection shared by several commands.
"""

import os
from typing import Any, Dict, List, Optional, Sequence, Tuple

from cli.core import Views
from models.core.errors import ValidationError
from models.core.scenario_config import serialize_config
from models.entities.records import TradeoffPoint
from services.experiment_service import POLICIES
from services.policy_service import Policy

DEFAULT_POWER_DBM = 30.0


# ──────────────────────────────────────────────────────
# PROVENANCE
# ──────────────────────────────────────────────────────

def provenance(handler, config_hash: Optional[str] = None, **extra) -> Dict[str, Any]:
    """
    config_hash and seed, plus any extra fields, for every artifact.

    config_hash defaults to the handler's (scenario plus sector chain in use).
    """
    return {'config_hash': config_hash or handler.config_hash, 'seed': handler.cfg.seed, **extra}


def run_summary(handler, config_hash: Optional[str] = None, **extra) -> Dict[str, Any]:
    """Summary fields printed by the router after the command finishes."""
    summary = {'config hash': config_hash or handler.config_hash, 'seed': handler.cfg.seed}
    summary.update(extra)
    return summary


def meta_name(name: str) -> str:
    """Sidecar JSON next to a CSV artifact: sweep.csv -> sweep.meta.json."""
    root, _ = os.path.splitext(name)
    return f"{root}.meta.json"


def save_csv_with_meta(
    handler,
    name: str,
    header: Sequence[str],
    rows: Sequence[Sequence[Any]],
    **extra
) -> List[str]:
    """
    Writes a CSV artifact plus its provenance sidecar.

    Returns:
        Both written paths
    """
    client = handler.client
    csv_path = client.save_csv(name, header, rows)
    meta_path = client.save_json(meta_name(name), {
        **provenance(handler, **extra),
        'config': serialize_config(handler.cfg),
    })
    return [csv_path, meta_path]


# ──────────────────────────────────────────────────────
# TRADE-OFF TABLES
# ──────────────────────────────────────────────────────

def print_points(points: Sequence[TradeoffPoint]):
    Views.print_table(
        ['policy', 'grid', 'P [W]', 'SE [bps/Hz]', 'objective', '± SE', 'episodes'],
        [
            [p.policy, p.grid_value, p.avg_power_w, p.spectral_eff_bps_hz,
             p.objective, p.ci_se, p.episodes]
            for p in points
        ]
    )


def save_points(handler, name: str, points: Sequence[TradeoffPoint], **extra) -> List[str]:
    return save_csv_with_meta(
        handler, name, TradeoffPoint.CSV_HEADER, [p.to_row() for p in points], **extra
    )


# ──────────────────────────────────────────────────────
# POLICY SELECTION
# ──────────────────────────────────────────────────────

def parse_policies(text: str) -> List[str]:
    """
    'perseus,genie' -> ['perseus', 'genie'].

    Raises:
        ValidationError: empty list or unknown name
    """
    names = [part.strip().lower() for part in text.split(',') if part.strip()]
    if not names:
        raise ValidationError("No policy given")
    unknown = [name for name in names if name not in POLICIES]
    if unknown:
        raise ValidationError(f"Unknown policy {', '.join(unknown)} (expected one of {', '.join(POLICIES)})")
    return names


def build_policy(
    handler,
    name: str,
    policy_file: str = '',
    power_dbm: Optional[float] = None
) -> Tuple[Policy, float, Optional[float], Dict[str, Any]]:
    """
    Instantiates one policy for simulation.

    PERSEUS policies come from policy_file when given (config-hash checked),
    otherwise they are solved on the spot for cfg.lambda.

    Returns:
        (policy, grid value, power in dBm or None, extra summary fields)
    """
    cfg = handler.cfg
    if name == 'perseus':
        if policy_file:
            policy = handler.load_perseus_policy(policy_file)
            lam = policy.alpha_set.metadata.get('lambda', cfg.lambda_)
            return policy, float(lam), None, {'policy file': policy_file}

        result = handler.solve()
        if not result.converged:
            Views.print_warning(f"Solver stopped after {result.iterations} iterations without converging")
        return handler.perseus_policy(result.alpha_set), cfg.lambda_, None, {
            'solver iterations': result.iterations,
            'converged': result.converged,
        }

    power = DEFAULT_POWER_DBM if power_dbm is None else float(power_dbm)
    if name == 'genie':
        return handler.genie_policy(power), power, power, {}
    return handler.fsm_policy(name, power), power, power, {}
