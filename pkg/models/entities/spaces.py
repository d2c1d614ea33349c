"""
State and observation spaces.

A state is u = (Z, I, b1, b2): the MU sector Z in 1..S, the serving BS
I in {1, 2} and the LOS flags of both BSs (1 = LOS, 0 = blocked), plus one
absorbing exit state. States are indexed as

    index(Z, I, b1, b2) = ((Z - 1) * 2 + (I - 1)) * 4 + b1 * 2 + b2

so the 8 S non-absorbing states come first and the exit state is last.
Observations are indexed 0..S-1 for sector reports 1..S, then S for the
empty report and S + 1 for the exit notification.
"""

from dataclasses import dataclass
from typing import List, Optional

import numpy as np


@dataclass(frozen=True)
class SystemState:
    """One POMDP state; sector None marks the exit state."""

    sector: Optional[int]
    serving: int = 1
    b1: int = 1
    b2: int = 1

    @property
    def is_exit(self) -> bool:
        return self.sector is None

    @property
    def serving_los(self) -> int:
        """LOS flag of the serving BS."""
        return self.b1 if self.serving == 1 else self.b2

    @property
    def label(self) -> str:
        if self.is_exit:
            return 'exit'
        return f"Z{self.sector}/I{self.serving}/b{self.b1}{self.b2}"


class StateSpace:
    """
    Enumerates the 8 S + 1 states and exposes per-index component arrays.

    Attributes:
        num_sectors: S
        size: 8 S + 1
        exit_index: index of the absorbing exit state (size - 1)
        sector: (size - 1,) 0-based sector of each non-exit state
        serving: (size - 1,) 0-based serving BS
        b1, b2: (size - 1,) LOS flags
        serving_los: (size - 1,) LOS flag of the serving BS
    """

    def __init__(self, num_sectors: int):
        self.num_sectors = num_sectors
        self.size = 8 * num_sectors + 1
        self.exit_index = self.size - 1

        idx = np.arange(self.size - 1)
        self.sector = idx // 8
        self.serving = (idx // 4) % 2
        self.b1 = (idx // 2) % 2
        self.b2 = idx % 2
        self.serving_los = np.where(self.serving == 0, self.b1, self.b2)

    def index(self, state: SystemState) -> int:
        if state.is_exit:
            return self.exit_index
        if not 1 <= state.sector <= self.num_sectors:
            raise ValueError(f"Sector {state.sector} outside 1..{self.num_sectors}")
        return ((state.sector - 1) * 2 + (state.serving - 1)) * 4 + state.b1 * 2 + state.b2

    def index_of(self, sector_index: int, serving_index: int, b1: int, b2: int) -> int:
        """Index from 0-based components; sector_index == S means exit."""
        if sector_index >= self.num_sectors:
            return self.exit_index
        return (sector_index * 2 + serving_index) * 4 + b1 * 2 + b2

    def state(self, index: int) -> SystemState:
        if index == self.exit_index:
            return SystemState(sector=None)
        if not 0 <= index < self.exit_index:
            raise IndexError(f"State index {index} outside 0..{self.exit_index}")
        return SystemState(
            sector=int(self.sector[index]) + 1,
            serving=int(self.serving[index]) + 1,
            b1=int(self.b1[index]),
            b2=int(self.b2[index])
        )

    def labels(self) -> List[str]:
        return [self.state(i).label for i in range(self.size)]

    def __len__(self) -> int:
        return self.size


class ObservationSpace:
    """Sector reports 1..S, the empty report and the exit notification."""

    def __init__(self, num_sectors: int):
        self.num_sectors = num_sectors
        self.size = num_sectors + 2
        self.none_index = num_sectors
        self.exit_index = num_sectors + 1

    def sector_index(self, sector: int) -> int:
        """Observation index reporting sector (1-based)."""
        return sector - 1

    def sector_of(self, y: int) -> Optional[int]:
        """Reported sector (1-based) or None for the empty/exit observations."""
        return y + 1 if 0 <= y < self.num_sectors else None

    def label(self, y: int) -> str:
        if y == self.none_index:
            return 'y=∅'
        if y == self.exit_index:
            return 'y=exit'
        return f"y={y + 1}"

    def labels(self) -> List[str]:
        return [self.label(y) for y in range(self.size)]

    def __len__(self) -> int:
        return self.size
