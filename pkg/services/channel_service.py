"""
Channel Service Module

Sector geometry, link budget, the sectored-antenna SNR model, and the
outage / epsilon-outage capacity / throughput formulas.

Under the sectored-antenna model the SNR is Gamma * P inside the main lobe
with LOS and rho * Gamma * P otherwise, with

    Gamma = lambda_c^2 / (8 pi sigma_w^2 Delta_s D),   sigma_w^2 = N0 W.
"""

import math
from typing import Optional, Tuple

import numpy as np
from scipy.optimize import minimize_scalar

from models.core.scenario_config import ScenarioConfig
from models.core.units import SPEED_OF_LIGHT, dbm_to_watt
from models.entities.geometry import LinkBudget, SectorTable

LN2 = math.log(2.0)

# Golden-section search interval for the outage target
EPS_LOW = 1e-6
EPS_HIGH = 1.0 - 1e-6


class ChannelService:
    """
    Geometry and link-level formulas.

    All methods are static and pure.
    """

    # ──────────────────────────────────────────────────────
    # Geometry
    # ──────────────────────────────────────────────────────

    @staticmethod
    def build_sector_table(cfg: ScenarioConfig) -> SectorTable:
        """
        Splits the road of length L = 2 D tan(Theta / 2) into S equal sectors.

        Sector s covers the angles [atan(((s-1) Delta_s - L/2) / D), atan((s Delta_s - L/2) / D)].
        """
        S = cfg.num_sectors
        D = cfg.road_distance
        theta = math.radians(cfg.coverage_angle)
        L = 2.0 * D * math.tan(theta / 2.0)
        delta = L / S

        edges = np.arctan((np.arange(S + 1) * delta - L / 2.0) / D)
        # Exact outer edges so the union is [-Theta/2, Theta/2]
        edges[0] = -theta / 2.0
        edges[-1] = theta / 2.0
        intervals = np.column_stack([edges[:-1], edges[1:]])

        return SectorTable(
            num_sectors=S,
            road_distance=D,
            road_length=L,
            sector_length=delta,
            coverage=theta,
            intervals=intervals
        )

    @staticmethod
    def sector_of_position(x: float, table: SectorTable) -> Optional[int]:
        """
        Sector (1-based) containing road position x, or None once off the road.
        """
        if x < 0 or x >= table.road_length:
            return None
        return min(int(math.floor(x / table.sector_length)) + 1, table.num_sectors)

    @staticmethod
    def sector_indices(positions: np.ndarray, table: SectorTable) -> np.ndarray:
        """Vectorized 0-based sector index per position; S marks exit."""
        positions = np.asarray(positions, dtype=float)
        idx = np.floor(positions / table.sector_length).astype(np.int64)
        idx = np.minimum(idx, table.num_sectors - 1)
        off_road = (positions < 0) | (positions >= table.road_length)
        return np.where(off_road, table.num_sectors, idx)

    @staticmethod
    def sector_center_angle(sector: int, table: SectorTable) -> float:
        """Angle (rad) of the centre of sector s as seen from the BS."""
        center = (sector - 0.5) * table.sector_length - table.road_length / 2.0
        return math.atan(center / table.road_distance)

    # ──────────────────────────────────────────────────────
    # Link budget and SNR
    # ──────────────────────────────────────────────────────

    @staticmethod
    def build_link_budget(cfg: ScenarioConfig, table: SectorTable) -> LinkBudget:
        wavelength = SPEED_OF_LIGHT / cfg.carrier_freq
        noise_power = float(dbm_to_watt(cfg.noise_psd)) * cfg.bandwidth
        gain = wavelength ** 2 / (8.0 * math.pi * noise_power * table.sector_length * table.road_distance)
        return LinkBudget(gain=gain, noise_power=noise_power, wavelength=wavelength)

    @staticmethod
    def snr(power_w: float, aligned: bool, los: bool, budget: LinkBudget, sidelobe_ratio: float) -> float:
        """Gamma P when aligned with LOS, rho Gamma P otherwise."""
        base = budget.gain * power_w
        return base if (aligned and los) else sidelobe_ratio * base

    # ──────────────────────────────────────────────────────
    # Outage and throughput
    # ──────────────────────────────────────────────────────

    @staticmethod
    def outage_prob(rate: float, snr: float, bandwidth: float) -> float:
        """
        P_out = 1 - exp(-(2^(rate/W) - 1) / snr) under Rayleigh fading.

        A zero SNR is a sure outage for any positive rate.
        """
        if rate <= 0:
            return 0.0
        if snr <= 0:
            return 1.0
        return float(-np.expm1(-np.expm1(rate / bandwidth * LN2) / snr))

    @staticmethod
    def epsilon_outage_capacity(snr, eps, bandwidth: float):
        """C_eps = W log2(1 - snr ln(1 - eps)); vectorized over snr and eps."""
        snr = np.asarray(snr, dtype=float)
        eps = np.asarray(eps, dtype=float)
        return (bandwidth * np.log1p(-snr * np.log1p(-eps)) / LN2)[()]

    @staticmethod
    def throughput_at(eps, snr: float, pilot_fraction: float, bandwidth: float):
        """T(eps) = (1 - kappa)(1 - eps) C_eps(snr)."""
        capacity = ChannelService.epsilon_outage_capacity(snr, eps, bandwidth)
        return ((1.0 - pilot_fraction) * (1.0 - np.asarray(eps, dtype=float)) * capacity)[()]

    @staticmethod
    def optimal_throughput(snr: float, pilot_fraction: float, bandwidth: float) -> Tuple[float, float]:
        """
        Maximizes T(eps) over (0, 1) by golden-section search.

        The search is bracketed around the best point of a coarse log-spaced
        grid, then refined to ~1e-12 in eps.

        Returns:
            (T* in bits/s, eps*); (0.0, 0.0) for a zero SNR
        """
        if snr <= 0:
            return 0.0, 0.0

        def objective(eps):
            if not EPS_LOW / 2 < eps < 1.0:
                return np.inf
            return -ChannelService.throughput_at(eps, snr, pilot_fraction, bandwidth)

        grid = np.concatenate([
            np.geomspace(EPS_LOW, 0.5, 60),
            1.0 - np.geomspace(0.5, 1.0 - EPS_HIGH, 60)[1:],
        ])
        values = ChannelService.throughput_at(grid, snr, pilot_fraction, bandwidth)
        i = int(np.argmax(values))
        if i == 0 or i == len(grid) - 1:
            return float(values[i]), float(grid[i])

        result = minimize_scalar(
            objective,
            bracket=(grid[i - 1], grid[i], grid[i + 1]),
            method='golden',
            options={'xtol': 1e-12}
        )
        eps_star = float(result.x)
        t_star = float(-result.fun)
        if t_star < values[i]:
            return float(values[i]), float(grid[i])
        return t_star, eps_star
