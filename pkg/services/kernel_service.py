"""
Kernel Service Module

Assembles the vehicular POMDP for a list of actions: the joint
transition-observation kernel P(u', y | u, a), the expected rewards r(u, a)
and the energy costs e(u, a).

Transitions use T-step powers of the sector chain and of both blockage
chains, with the serving BS flipped by HO. Feedback is evaluated at the
state the action starts from; an MU that leaves during the action always
reports the exit observation.
"""

from typing import Dict, List, Sequence, Tuple

import numpy as np

from models.core.scenario_config import ScenarioConfig
from models.entities.actions import ActionClass, ActionSpec
from models.entities.blockage import LOS, BlockageChain
from models.entities.mobility import MobilityChain
from models.entities.pomdp import KernelTensor, PomdpModel
from models.entities.spaces import ObservationSpace, StateSpace
from services.blockage_service import BlockageService
from services.channel_service import ChannelService
from services.feedback_service import FeedbackService
from services.mobility_service import MobilityService

SWAP = np.array([[0.0, 1.0], [1.0, 0.0]])


class KernelService:
    """
    Kernel, reward and energy construction.

    All methods are static.
    """

    # ──────────────────────────────────────────────────────
    # Transitions
    # ──────────────────────────────────────────────────────

    @staticmethod
    def transition_matrix(
        chain: MobilityChain,
        blockage: Tuple[BlockageChain, BlockageChain],
        duration: int,
        handover: bool
    ) -> np.ndarray:
        """(N, N) P(U_{k+T} = u' | U_k = u) for one action duration."""
        S = chain.num_sectors
        N = 8 * S + 1

        mobility = MobilityService.chain_power(chain, duration)
        blk1 = BlockageService.two_state_power(blockage[0], duration)
        blk2 = BlockageService.two_state_power(blockage[1], duration)
        serving = SWAP if handover else np.eye(2)

        T = np.zeros((N, N))
        T[:-1, :-1] = np.kron(mobility[:S, :S], np.kron(serving, np.kron(blk1, blk2)))
        T[:-1, -1] = np.repeat(mobility[:S, S], 8)
        T[-1, -1] = 1.0
        return T

    # ──────────────────────────────────────────────────────
    # Observations
    # ──────────────────────────────────────────────────────

    @staticmethod
    def observation_matrix(action: ActionSpec, cfg: ScenarioConfig) -> np.ndarray:
        """
        (N, Y) P(y | u, a) for a non-exiting MU, from the epoch-start state.

        The exit row is left empty; the joint kernel routes exit separately.
        """
        states = StateSpace(cfg.num_sectors)
        observations = ObservationSpace(cfg.num_sectors)
        O = np.zeros((states.size, observations.size))
        non_exit = np.arange(states.exit_index)

        if action.kind == ActionClass.HO:
            O[non_exit, observations.none_index] = 1.0
            return O

        if action.kind == ActionClass.BT:
            columns = [observations.sector_index(s) for s in action.sectors] + [observations.none_index]
            # The report only depends on (sector, serving LOS)
            table: Dict[Tuple[int, int], np.ndarray] = {}
            for u in non_exit:
                key = (int(states.sector[u]) + 1, int(states.serving_los[u]))
                if key not in table:
                    table[key] = FeedbackService.bt_observation(
                        action, key[0], key[1], cfg.sidelobe_ratio,
                        cfg.symbols_per_slot, cfg.bt_threshold
                    )
                O[u, columns] = table[key]
            return O

        target = observations.sector_index(action.target)
        for u in non_exit:
            ack = FeedbackService.dt_ack_prob(
                action,
                aligned=int(states.sector[u]) + 1 == action.target,
                los=bool(states.serving_los[u]),
                sidelobe_ratio=cfg.sidelobe_ratio,
                symbols_per_slot=cfg.symbols_per_slot,
                pilot_fraction=cfg.pilot_fraction,
                threshold=cfg.dt_threshold
            )
            O[u, target] = ack
            O[u, observations.none_index] = 1.0 - ack
        return O

    @staticmethod
    def joint(transition: np.ndarray, observation: np.ndarray, exit_observation: int) -> np.ndarray:
        """(N, Y, N) joint kernel of one action; leaving always reports exit."""
        N, Y = observation.shape
        J = np.zeros((N, Y, N))
        J[:-1, :, :-1] = observation[:-1, :, None] * transition[:-1, None, :-1]
        J[:-1, exit_observation, -1] = transition[:-1, -1]
        J[-1, exit_observation, -1] = 1.0
        return J

    # ──────────────────────────────────────────────────────
    # Rewards and energy
    # ──────────────────────────────────────────────────────

    @staticmethod
    def dt_reward(
        action: ActionSpec,
        chain: MobilityChain,
        blockage: Tuple[BlockageChain, BlockageChain],
        throughput: float,
        slot_duration: float
    ) -> np.ndarray:
        """
        (N,) expected bits of a DT action:

            Delta_t T* sum_{t=0}^{T-2} P(Z_{k+t} = s_hat | z) P(b_I,{k+t} = 1 | b_I)
        """
        S = chain.num_sectors
        states = StateSpace(S)
        horizon = action.duration - 1
        target = action.target - 1

        sector_hits = np.empty((horizon, S))
        los_hits = np.empty((2, horizon, 2))
        power = np.eye(S + 1)
        for t in range(horizon):
            sector_hits[t] = power[:S, target]
            for bs in (0, 1):
                los_hits[bs, t] = BlockageService.two_state_power(blockage[bs], t)[:, LOS]
            power = power @ chain.matrix

        # (serving, S, 2) summed over the data slots
        per_serving = np.einsum('ts,itb->isb', sector_hits, los_hits)

        rewards = np.zeros(states.size)
        rewards[:-1] = per_serving[states.serving, states.sector, states.serving_los]
        return slot_duration * throughput * rewards

    @staticmethod
    def action_energy(action: ActionSpec, slot_duration: float) -> float:
        """Delta_t P (T - 1); the feedback slot and HO are free."""
        if action.kind == ActionClass.HO:
            return 0.0
        return slot_duration * action.power_w * (action.duration - 1)

    # ──────────────────────────────────────────────────────
    # Full model
    # ──────────────────────────────────────────────────────

    @staticmethod
    def build_model(
        cfg: ScenarioConfig,
        actions: Sequence[ActionSpec],
        chain: MobilityChain,
        blockage: Tuple[BlockageChain, BlockageChain],
        config_hash: str = ''
    ) -> PomdpModel:
        """
        PomdpModel over the given actions, indices following their order.

        Transition matrices are shared between actions of equal duration.
        """
        S = cfg.num_sectors
        states = StateSpace(S)
        observations = ObservationSpace(S)
        N, Y, A = states.size, observations.size, len(actions)

        joint = np.zeros((A, N, Y, N))
        rewards = np.zeros((A, N))
        energy = np.zeros((A, N))
        transitions: Dict[Tuple[bool, int], np.ndarray] = {}
        throughput: Dict[float, float] = {}

        for a, action in enumerate(actions):
            key = (action.kind == ActionClass.HO, action.duration)
            if key not in transitions:
                transitions[key] = KernelService.transition_matrix(chain, blockage, action.duration, key[0])

            O = KernelService.observation_matrix(action, cfg)
            joint[a] = KernelService.joint(transitions[key], O, observations.exit_index)

            energy[a, :-1] = KernelService.action_energy(action, cfg.slot_duration)
            if action.kind == ActionClass.DT:
                if action.snr not in throughput:
                    throughput[action.snr] = ChannelService.optimal_throughput(
                        action.snr, cfg.pilot_fraction, cfg.bandwidth
                    )[0]
                rewards[a] = KernelService.dt_reward(
                    action, chain, blockage, throughput[action.snr], cfg.slot_duration
                )

        initial = np.zeros(N)
        initial[states.index_of(0, 0, LOS, LOS)] = 1.0

        return PomdpModel(
            kernel=KernelTensor(joint),
            rewards=rewards,
            energy=energy,
            actions=list(actions),
            state_labels=states.labels(),
            observation_labels=observations.labels(),
            initial_belief=initial,
            exit_state=states.exit_index,
            exit_observation=observations.exit_index,
            config_hash=config_hash,
            metadata={'num_sectors': S, 'slot_duration': cfg.slot_duration},
        )

    @staticmethod
    def kernel_rows(model: PomdpModel, a: int) -> Tuple[List[str], List[List]]:
        """Non-zero entries of one action's kernel in row-major (u, y, u') order."""
        header = ['state', 'observation', 'next_state', 'probability']
        u, y, v = np.nonzero(model.kernel.joint[a])
        rows = [
            [model.state_labels[i], model.observation_labels[j], model.state_labels[k],
             float(model.kernel.joint[a, i, j, k])]
            for i, j, k in zip(u, y, v)
        ]
        return header, rows
