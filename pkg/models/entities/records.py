"""
Simulation records: per-epoch steps, whole episodes and trade-off points.
"""

from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional


@dataclass
class EpisodeStep:
    """One decision epoch of an episode."""

    slot: int
    state: str
    belief: Optional[Dict[str, Any]]
    action: str
    observation: str
    bits: float
    energy: float
    # Per-slot ground truth over the action, kept for episode plots
    sectors: List[int] = field(default_factory=list)
    serving: int = 1
    serving_los: List[int] = field(default_factory=list)


@dataclass
class EpisodeRecord:
    """
    One episode from entry to exit.

    Attributes:
        total_bits: R_tot
        total_energy: E_tot (J)
        duration: first exit slot K
        aborted: set when the belief filter met an impossible observation
    """

    policy: str
    episode: int
    steps: List[EpisodeStep] = field(default_factory=list)
    total_bits: float = 0.0
    total_energy: float = 0.0
    duration: int = 0
    truncated: bool = False
    aborted: bool = False
    diagnostic: str = ''

    def add(self, step: EpisodeStep) -> None:
        self.steps.append(step)
        self.total_bits += step.bits
        self.total_energy += step.energy

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass
class TradeoffPoint:
    """One point of a spectral-efficiency versus power curve."""

    policy: str
    grid_value: float
    power_dbm: Optional[float]
    avg_power_w: float
    spectral_eff_bps_hz: float
    objective: float
    ci_se: float
    ci_power: float
    episodes: int
    seed: int

    CSV_HEADER = [
        'policy', 'grid_value', 'power_dbm', 'avg_power_w', 'spectral_eff_bps_hz',
        'objective', 'ci_se', 'ci_power', 'episodes', 'seed',
    ]

    def to_row(self) -> List[Any]:
        return [getattr(self, name) for name in self.CSV_HEADER]
