"""
Metrics Service Module

Little's-theorem aggregation of episode totals into trade-off points:

    T = sum R / sum D,   P = sum E / sum D,   V = T - lambda P

with D in seconds, spectral efficiency T / W and the objective reported in
bps/Hz. Confidence half-widths use the normal approximation over the
per-episode ratios.
"""

from typing import Optional, Sequence

import numpy as np

from models.core.errors import ValidationError
from models.entities.records import EpisodeRecord, TradeoffPoint

Z_95 = 1.96


class MetricsService:
    """Static aggregation helpers."""

    @staticmethod
    def aggregate(
        records: Sequence[EpisodeRecord],
        weight: float,
        bandwidth: float,
        slot_duration: float,
        policy: str,
        grid_value: float,
        power_dbm: Optional[float],
        seed: int
    ) -> TradeoffPoint:
        """
        Args:
            weight: lambda in bits/J

        Raises:
            ValidationError: fewer than 2 records
        """
        if len(records) < 2:
            raise ValidationError(f"Aggregation needs at least 2 episodes, got {len(records)}")

        bits = np.array([r.total_bits for r in records], dtype=float)
        energy = np.array([r.total_energy for r in records], dtype=float)
        seconds = np.array([r.duration for r in records], dtype=float) * slot_duration

        total_time = seconds.sum()
        if total_time > 0:
            throughput = bits.sum() / total_time
            power = energy.sum() / total_time
        else:
            throughput = power = 0.0

        with np.errstate(divide='ignore', invalid='ignore'):
            se_each = np.where(seconds > 0, bits / seconds, 0.0) / bandwidth
            power_each = np.where(seconds > 0, energy / seconds, 0.0)
        n = len(records)

        spectral_eff = throughput / bandwidth
        return TradeoffPoint(
            policy=policy,
            grid_value=float(grid_value),
            power_dbm=power_dbm,
            avg_power_w=float(power),
            spectral_eff_bps_hz=float(spectral_eff),
            objective=float(spectral_eff - weight * power / bandwidth),
            ci_se=float(Z_95 * np.std(se_each, ddof=1) / np.sqrt(n)),
            ci_power=float(Z_95 * np.std(power_each, ddof=1) / np.sqrt(n)),
            episodes=n,
            seed=seed,
        )

    @staticmethod
    def analytic_point(
        bits: float,
        energy: float,
        duration_slots: float,
        weight: float,
        bandwidth: float,
        slot_duration: float,
        policy: str,
        grid_value: float,
        power_dbm: Optional[float],
        seed: int
    ) -> TradeoffPoint:
        """Point from expected totals (no sampling, zero-width CIs)."""
        seconds = duration_slots * slot_duration
        throughput = bits / seconds if seconds > 0 else 0.0
        power = energy / seconds if seconds > 0 else 0.0
        spectral_eff = throughput / bandwidth
        return TradeoffPoint(
            policy=policy,
            grid_value=float(grid_value),
            power_dbm=power_dbm,
            avg_power_w=float(power),
            spectral_eff_bps_hz=float(spectral_eff),
            objective=float(spectral_eff - weight * power / bandwidth),
            ci_se=0.0,
            ci_power=0.0,
            episodes=0,
            seed=seed,
        )
