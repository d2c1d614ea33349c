"""
Road geometry and link budget value types.
"""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True, eq=False)
class SectorTable:
    """
    Partition of the road into S sectors of equal length.

    Attributes:
        num_sectors: S
        road_distance: D, distance from the BS to the road (m)
        road_length: L = 2 D tan(Theta / 2) (m)
        sector_length: Delta_s = L / S (m)
        coverage: Theta (rad)
        intervals: (S, 2) angular interval [lo, hi] of every sector (rad)
    """

    num_sectors: int
    road_distance: float
    road_length: float
    sector_length: float
    coverage: float
    intervals: np.ndarray

    def interval(self, sector: int) -> np.ndarray:
        """Angular interval of sector (1-based)."""
        return self.intervals[sector - 1]


@dataclass(frozen=True)
class LinkBudget:
    """
    Sectored-antenna link budget.

    Attributes:
        gain: Gamma, aligned LOS SNR per transmitted watt (1/W)
        noise_power: sigma_w^2 = N0 W (W)
        wavelength: lambda_c = c / f_c (m)
    """

    gain: float
    noise_power: float
    wavelength: float
