"""
Simulation Service Module

Slot-level Monte-Carlo episodes on the true generative model.

Each episode draws its ground truth first (sector path until the first exit
slot K, both blockage paths), so that episode i sees the same truth under
every policy. An action started at slot k occupies slots k..k+T-1: DT data
slots succeed with probability 1 - eps* when the beam is aligned and the
serving BS has LOS, BT beacons and the closing DT pilot go through the
exponential matched-filter model slot by slot, HO flips the serving BS. An
MU that is gone by slot k+T reports the exit.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np
from tqdm import tqdm

from models.core.errors import ImpossibleObservationError
from models.core.random_streams import STREAM_EPISODES, rng_for
from models.core.scenario_config import ScenarioConfig
from models.core.units import dbm_to_watt
from models.entities.actions import ActionClass
from models.entities.blockage import LOS, BlockageChain
from models.entities.geometry import LinkBudget, SectorTable
from models.entities.mobility import MobilityChain
from models.entities.records import EpisodeRecord, EpisodeStep
from models.entities.spaces import ObservationSpace, StateSpace
from services.belief_service import BeliefService
from services.blockage_service import BlockageService
from services.channel_service import ChannelService
from services.kernel_service import KernelService
from services.mobility_service import MobilityService
from services.policy_service import GeniePolicy, Policy


@dataclass(frozen=True, eq=False)
class EpisodeEnvironment:
    """The ground-truth generative model episodes are drawn from."""

    cfg: ScenarioConfig
    table: SectorTable
    budget: LinkBudget
    chain: MobilityChain
    blockage: Tuple[BlockageChain, BlockageChain]


@dataclass(frozen=True, eq=False)
class GroundTruth:
    """
    Attributes:
        sectors: per-slot 0-based sector, slots 0..K-1
        los: (2, K) LOS flags of BS 1 and BS 2
        duration: K, the first exit slot (or the slot cap)
        exited: False when the slot cap was hit first
    """

    sectors: np.ndarray
    los: np.ndarray
    duration: int
    exited: bool


class SimulationService:
    """Episode simulation; all methods are static."""

    @staticmethod
    def draw_ground_truth(env: EpisodeEnvironment, rng: np.random.Generator) -> GroundTruth:
        cfg = env.cfg
        S = cfg.num_sectors
        if cfg.mobility_source == 'trajectory':
            path = MobilityService.trajectory_sector_path(cfg, env.table, rng)
        else:
            path = MobilityService.sample_sector_path(env.chain, 1, rng, cfg.max_episode_slots)

        exited = len(path) > 0 and path[-1] == S
        sectors = path[:-1] if exited else path
        K = len(sectors)
        los = np.vstack([
            BlockageService.sample_path(env.blockage[0], LOS, K, rng),
            BlockageService.sample_path(env.blockage[1], LOS, K, rng),
        ])
        return GroundTruth(sectors=sectors, los=los, duration=K, exited=exited)

    @staticmethod
    def _beacon_energy(snr_rx: np.ndarray, length: float, rng: np.random.Generator) -> np.ndarray:
        """Matched-filter output energies, exponential with mean 1 + L snr_rx."""
        return rng.exponential(1.0 + length * np.asarray(snr_rx, dtype=float))

    # ──────────────────────────────────────────────────────
    # Episodes
    # ──────────────────────────────────────────────────────

    @staticmethod
    def run_episode(
        policy: Policy,
        env: EpisodeEnvironment,
        rng: np.random.Generator,
        episode: int = 0,
        trace: bool = False,
        throughput: Optional[Dict[float, Tuple[float, float]]] = None
    ) -> EpisodeRecord:
        """
        One episode of a POMDP policy; the belief follows the policy's own model.

        An impossible observation aborts the episode with a diagnostic.
        """
        if isinstance(policy, GeniePolicy):
            return SimulationService.run_genie_episode(policy.power_dbm, env, rng, episode)

        cfg = env.cfg
        S = cfg.num_sectors
        dt = cfg.slot_duration
        states = StateSpace(S)
        observations = ObservationSpace(S)
        model = policy.model
        throughput = {} if throughput is None else throughput

        truth = SimulationService.draw_ground_truth(env, rng)
        K = truth.duration
        record = EpisodeRecord(policy=policy.name, episode=episode, duration=K)

        belief = BeliefService.initial_belief(model)
        a = policy.start(belief)
        k, serving = 0, 0

        while a is not None:
            action = model.actions[a]
            end = k + action.duration
            if not truth.exited and end >= K:
                record.truncated = True
                break

            energy = KernelService.action_energy(action, dt)
            bits = 0.0
            los = truth.los[serving]

            if action.kind == ActionClass.DT:
                if action.snr not in throughput:
                    throughput[action.snr] = ChannelService.optimal_throughput(
                        action.snr, cfg.pilot_fraction, cfg.bandwidth
                    )
                t_star, eps_star = throughput[action.snr]
                slots = np.arange(k, min(end - 1, K))
                usable = (truth.sectors[slots] == action.target - 1) & (los[slots] == LOS)
                delivered = rng.random(len(slots)) < 1.0 - eps_star
                if eps_star > 0:
                    per_slot = dt * (1.0 - cfg.pilot_fraction) * float(
                        ChannelService.epsilon_outage_capacity(action.snr, eps_star, cfg.bandwidth)
                    )
                else:
                    per_slot = 0.0
                bits = per_slot * int(np.count_nonzero(usable & delivered))

            if K <= end:
                y = observations.exit_index
            elif action.kind == ActionClass.HO:
                y = observations.none_index
            elif action.kind == ActionClass.BT:
                slots = k + np.arange(len(action.sectors))
                scanned = np.asarray(action.sectors) - 1
                aligned = (truth.sectors[slots] == scanned) & (los[slots] == LOS)
                snr_rx = np.where(aligned, action.snr, cfg.sidelobe_ratio * action.snr)
                energies = SimulationService._beacon_energy(snr_rx, cfg.symbols_per_slot, rng)
                best = int(np.argmax(energies))
                if energies[best] > cfg.bt_threshold:
                    y = observations.sector_index(action.sectors[best])
                else:
                    y = observations.none_index
            else:
                probe = end - 1
                aligned = truth.sectors[probe] == action.target - 1 and los[probe] == LOS
                snr_rx = action.snr if aligned else cfg.sidelobe_ratio * action.snr
                pilot = SimulationService._beacon_energy(snr_rx, cfg.pilot_fraction * cfg.symbols_per_slot, rng)
                ack = float(pilot) > cfg.dt_threshold
                y = observations.sector_index(action.target) if ack else observations.none_index

            if trace:
                u = states.index_of(int(truth.sectors[k]), serving, int(truth.los[0, k]), int(truth.los[1, k]))
                covered = slice(k, min(end, K))
                record.add(EpisodeStep(
                    slot=k,
                    state=states.state(u).label,
                    belief=BeliefService.summary(belief, model),
                    action=action.label,
                    observation=observations.label(y),
                    bits=bits,
                    energy=energy,
                    sectors=(truth.sectors[covered] + 1).tolist(),
                    serving=serving + 1,
                    serving_los=los[covered].astype(int).tolist(),
                ))
            else:
                record.total_bits += bits
                record.total_energy += energy

            if action.kind == ActionClass.HO:
                serving = 1 - serving

            try:
                belief = BeliefService.update(belief, model, a, y)
            except ImpossibleObservationError as e:
                record.aborted = True
                record.diagnostic = f"slot {k}: {e}"
                break

            if y == observations.exit_index:
                break
            k = end
            a = policy.next(a, y, belief)

        return record

    @staticmethod
    def run_genie_episode(
        power_dbm: float,
        env: EpisodeEnvironment,
        rng: np.random.Generator,
        episode: int = 0
    ) -> EpisodeRecord:
        """Delta_t T* bits and Delta_t P Joules in every slot where some BS has LOS."""
        cfg = env.cfg
        truth = SimulationService.draw_ground_truth(env, rng)
        power_w = float(dbm_to_watt(power_dbm))
        snr = ChannelService.snr(power_w, True, True, env.budget, cfg.sidelobe_ratio)
        t_star, _ = ChannelService.optimal_throughput(snr, cfg.pilot_fraction, cfg.bandwidth)

        available = int(np.count_nonzero(truth.los.max(axis=0))) if truth.duration else 0
        return EpisodeRecord(
            policy=GeniePolicy.name,
            episode=episode,
            total_bits=cfg.slot_duration * t_star * available,
            total_energy=cfg.slot_duration * power_w * available,
            duration=truth.duration,
            truncated=not truth.exited,
        )

    @staticmethod
    def run_episodes(
        policy: Policy,
        env: EpisodeEnvironment,
        episodes: int,
        seed: int,
        threads: int = 1,
        trace: bool = False,
        progress: bool = False
    ) -> List[EpisodeRecord]:
        """
        Episodes 0..episodes-1, episode i on stream (seed, episodes, i).

        Results are returned in episode order whatever the thread count.
        """
        throughput: Dict[float, Tuple[float, float]] = {}

        def run(i: int) -> EpisodeRecord:
            return SimulationService.run_episode(
                policy, env, rng_for(seed, STREAM_EPISODES, i), i, trace, throughput
            )

        desc = f"Episodes [{policy.name}]"
        if threads <= 1:
            return [run(i) for i in tqdm(range(episodes), desc=desc, unit="ep", disable=not progress)]

        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(tqdm(pool.map(run, range(episodes)), total=episodes, desc=desc,
                             unit="ep", disable=not progress))
