"""
Mobility value types: Gauss-Markov trajectories and the sector-level chain.
"""

from dataclasses import dataclass, field
from typing import Tuple

import numpy as np

from models.core.errors import ValidationError


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Per-slot positions (m) and speeds (m/s); the last slot is the first one off the road."""

    positions: np.ndarray
    speeds: np.ndarray

    def __len__(self) -> int:
        return len(self.positions)


@dataclass(frozen=True, eq=False)
class MobilityChain:
    """
    Sector transition matrix over S sectors plus the absorbing exit state.

    Attributes:
        matrix: (S + 1, S + 1), row s - 1 holds P(Z' | Z = s); the last row/column is exit
        slot_duration: Delta_t (s)
        unvisited: sectors (1-based) whose row had no data and defaults to a self-loop
    """

    matrix: np.ndarray
    slot_duration: float
    unvisited: Tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self):
        P = np.asarray(self.matrix, dtype=float)
        if P.ndim != 2 or P.shape[0] != P.shape[1] or P.shape[0] < 2:
            raise ValidationError(f"Mobility matrix must be square (S+1)x(S+1), got {P.shape}")
        if np.any(P < 0) or not np.allclose(P.sum(axis=1), 1.0, atol=1e-12, rtol=0):
            raise ValidationError("Mobility matrix rows must be non-negative and sum to 1")
        exit_row = np.zeros(P.shape[0])
        exit_row[-1] = 1.0
        if not np.array_equal(P[-1], exit_row):
            raise ValidationError("Exit state must be absorbing")
        object.__setattr__(self, 'matrix', P)

    @property
    def num_sectors(self) -> int:
        return self.matrix.shape[0] - 1

    @property
    def exit_index(self) -> int:
        return self.matrix.shape[0] - 1
