"""
Mobility Service Module

Gauss-Markov trajectories and the sector-level Markov chain estimated from them.

Speed and position evolve per slot as

    v_k = gamma v_{k-1} + (1 - gamma) mu_v + sigma_v sqrt(1 - gamma^2) n_k,  n_k ~ N(0, 1)
    x_k = x_{k-1} + Delta_t v_{k-1}

starting from x_0 = 0, v_0 = mu_v, until the first slot off the road.
"""

from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.signal import lfilter
from tqdm import tqdm

from models.core.errors import SingularSystemError, ValidationError
from models.core.random_streams import STREAM_MOBILITY, rng_for
from models.core.scenario_config import ScenarioConfig
from models.entities.geometry import SectorTable
from models.entities.mobility import MobilityChain, Trajectory
from services.channel_service import ChannelService


class MobilityService:
    """
    Trajectory generation, chain estimation and chain sampling.

    All methods are static.
    """

    # ──────────────────────────────────────────────────────
    # Gauss-Markov trajectories
    # ──────────────────────────────────────────────────────

    @staticmethod
    def simulate_trajectory(
        cfg: ScenarioConfig,
        rng: np.random.Generator,
        road_length: Optional[float] = None
    ) -> Trajectory:
        """
        One trajectory from entry until the first slot with x outside [0, L).

        Speeds are generated in chunks with an IIR filter; the run is capped
        at cfg.max_episode_slots slots.
        """
        if road_length is None:
            road_length = ChannelService.build_sector_table(cfg).road_length

        gamma = cfg.memory
        drift = (1.0 - gamma) * cfg.speed_mean
        spread = cfg.speed_std * np.sqrt(max(0.0, 1.0 - gamma ** 2))
        dt = cfg.slot_duration

        expected = road_length / (abs(cfg.speed_mean) * dt) if cfg.speed_mean != 0 else 1 << 15
        chunk = int(min(max(2 * expected, 1024), cfg.max_episode_slots))

        speeds = [np.array([cfg.speed_mean])]
        positions = [np.array([0.0])]
        v_last, x_last, total = cfg.speed_mean, 0.0, 1

        while True:
            noise = rng.standard_normal(chunk)
            v, _ = lfilter([1.0], [1.0, -gamma], drift + spread * noise, zi=[gamma * v_last])
            # x_k uses v_{k-1}
            x = x_last + dt * np.cumsum(np.concatenate([[v_last], v[:-1]]))

            off = np.flatnonzero((x < 0) | (x >= road_length))
            if off.size:
                stop = off[0] + 1
                speeds.append(v[:stop])
                positions.append(x[:stop])
                break

            speeds.append(v)
            positions.append(x)
            total += chunk
            if total >= cfg.max_episode_slots:
                break
            v_last, x_last = v[-1], x[-1]

        return Trajectory(positions=np.concatenate(positions), speeds=np.concatenate(speeds))

    @staticmethod
    def simulate_trajectories(
        cfg: ScenarioConfig,
        n: int,
        seed: int,
        progress: bool = False
    ) -> List[Trajectory]:
        """n independent trajectories; trajectory i uses stream (seed, mobility, i)."""
        road_length = ChannelService.build_sector_table(cfg).road_length
        return [
            MobilityService.simulate_trajectory(cfg, rng_for(seed, STREAM_MOBILITY, i), road_length)
            for i in tqdm(range(n), desc="Trajectories", unit="traj", disable=not progress)
        ]

    # ──────────────────────────────────────────────────────
    # Chain estimation
    # ──────────────────────────────────────────────────────

    @staticmethod
    def estimate_chain(
        trajectories: Iterable[Trajectory],
        table: SectorTable,
        slot_duration: float
    ) -> MobilityChain:
        """
        Maximum-likelihood sector chain from slot-to-slot transition counts.

        Off-road positions map to exit. Sectors never visited get a self-loop
        and are listed in MobilityChain.unvisited.

        Raises:
            ValidationError: no trajectories
        """
        S = table.num_sectors
        counts = np.zeros((S + 1, S + 1))
        seen = 0

        for trajectory in trajectories:
            z = ChannelService.sector_indices(trajectory.positions, table)
            if len(z) >= 2:
                np.add.at(counts, (z[:-1], z[1:]), 1.0)
            seen += 1

        if seen == 0:
            raise ValidationError("Cannot estimate a mobility chain from zero trajectories")

        counts[S] = 0.0
        counts[S, S] = 1.0

        totals = counts.sum(axis=1)
        unvisited = tuple(int(s) + 1 for s in np.flatnonzero(totals[:S] == 0))
        for s in unvisited:
            counts[s - 1, s - 1] = 1.0
            totals[s - 1] = 1.0

        return MobilityChain(
            matrix=counts / totals[:, None],
            slot_duration=slot_duration,
            unvisited=unvisited
        )

    @staticmethod
    def chain_power(chain: MobilityChain, t: int) -> np.ndarray:
        """P^t by repeated squaring."""
        if t < 0:
            raise ValidationError(f"Chain power needs t >= 0, got {t}")
        return np.linalg.matrix_power(chain.matrix, int(t))

    @staticmethod
    def expected_exit_time(chain: MobilityChain, start_sector: int = 1) -> float:
        """
        Expected first exit slot from a sector (1-based) via the fundamental matrix.

        Raises:
            SingularSystemError: exit unreachable from some sector
        """
        S = chain.num_sectors
        Q = chain.matrix[:S, :S]
        try:
            times = np.linalg.solve(np.eye(S) - Q, np.ones(S))
        except np.linalg.LinAlgError as e:
            raise SingularSystemError(f"Exit is not reachable from every sector: {e}")
        if not np.all(np.isfinite(times)) or np.any(times < 0):
            raise SingularSystemError("Exit is not reachable from every sector")
        return float(times[start_sector - 1])

    # ──────────────────────────────────────────────────────
    # Sector paths for episodes
    # ──────────────────────────────────────────────────────

    @staticmethod
    def sample_sector_path(
        chain: MobilityChain,
        start_sector: int,
        rng: np.random.Generator,
        max_slots: int
    ) -> np.ndarray:
        """
        Per-slot 0-based sector index from slot 0 until the first exit slot
        (inclusive, value S), sampled by geometric sojourns on the jump chain.

        A path that has not exited after max_slots slots is returned without
        the exit entry.
        """
        P = chain.matrix
        S = chain.num_sectors
        segments: List[Tuple[int, int]] = []
        state, length = start_sector - 1, 0

        while state != S and length < max_slots:
            stay = P[state, state]
            if stay >= 1.0:
                sojourn = max_slots - length
            else:
                sojourn = int(rng.geometric(1.0 - stay))
            sojourn = min(sojourn, max_slots - length)
            segments.append((state, sojourn))
            length += sojourn
            if length >= max_slots:
                break

            jump = P[state].copy()
            jump[state] = 0.0
            state = int(rng.choice(S + 1, p=jump / jump.sum()))

        if state == S and length < max_slots:
            segments.append((S, 1))

        return np.repeat(
            np.array([s for s, _ in segments], dtype=np.int64),
            np.array([n for _, n in segments], dtype=np.int64)
        )

    @staticmethod
    def trajectory_sector_path(cfg: ScenarioConfig, table: SectorTable, rng: np.random.Generator) -> np.ndarray:
        """Per-slot 0-based sector index of one raw Gauss-Markov trajectory (same format)."""
        trajectory = MobilityService.simulate_trajectory(cfg, rng, table.road_length)
        return ChannelService.sector_indices(trajectory.positions, table)

    # ──────────────────────────────────────────────────────
    # CSV round trip
    # ──────────────────────────────────────────────────────

    @staticmethod
    def chain_header(num_sectors: int) -> List[str]:
        return [f"Z{s}" for s in range(1, num_sectors + 1)] + ['exit']

    @staticmethod
    def chain_to_rows(chain: MobilityChain) -> Tuple[List[str], List[List[float]]]:
        return MobilityService.chain_header(chain.num_sectors), chain.matrix.tolist()

    @staticmethod
    def chain_from_rows(header: Sequence[str], rows: Sequence[Sequence[str]], slot_duration: float) -> MobilityChain:
        """
        Raises:
            ValidationError: header/row shape mismatch or invalid probabilities
        """
        S = len(header) - 1
        if S < 2 or list(header) != MobilityService.chain_header(S):
            raise ValidationError(f"Unexpected mobility chain header: {list(header)}")
        if len(rows) != S + 1 or any(len(row) != S + 1 for row in rows):
            raise ValidationError("Mobility chain CSV must hold an (S+1)x(S+1) matrix")
        try:
            matrix = np.array([[float(v) for v in row] for row in rows])
        except ValueError as e:
            raise ValidationError(f"Mobility chain CSV holds a non-numeric entry ({e})")
        unvisited = tuple(s + 1 for s in range(S) if matrix[s, s] == 1.0)
        return MobilityChain(matrix=matrix, slot_duration=slot_duration, unvisited=unvisited)
