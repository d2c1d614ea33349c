"""
Policy Service Module

Decision policies run by the simulator and the exact evaluation of the
finite-state-machine policies.

FSM-HEU: exhaustive BT; a reported sector starts DT towards it, an empty
report triggers HO; DT repeats on ACK and falls back to exhaustive BT on
NACK; HO is always followed by exhaustive BT. The baseline differs only in
retraining after every DT block.

Policies select actions by index into their own PomdpModel.
"""

from abc import ABC, abstractmethod
from enum import Enum
from typing import Dict, Optional, Sequence, Tuple
import warnings

import numpy as np
from scipy import sparse
from scipy.sparse.linalg import spsolve

from models.collections.alpha_vector_set import AlphaVectorSet
from models.core.errors import SingularSystemError, ValidationError
from models.entities.actions import ActionClass, ActionSpec
from models.entities.mobility import MobilityChain
from models.entities.pomdp import PomdpModel
from services.channel_service import ChannelService
from services.mobility_service import MobilityService
from services.perseus_service import PerseusService

RESIDUAL_TOL = 1e-8


class FsmVariant(str, Enum):
    HEURISTIC = 'fsm-heu'
    BASELINE = 'baseline'


# ──────────────────────────────────────────────────────
# Policy objects
# ──────────────────────────────────────────────────────

class Policy(ABC):
    """
    Shared protocol: start() picks the first action, next() the following
    ones from the last action, its observation and the updated belief.
    next() returns None once the episode is over.
    """

    name: str = 'policy'
    model: Optional[PomdpModel] = None

    @abstractmethod
    def start(self, belief: np.ndarray) -> Optional[int]:
        pass

    @abstractmethod
    def next(self, action: int, observation: int, belief: np.ndarray) -> Optional[int]:
        pass

    def _exited(self, observation: int) -> bool:
        return self.model.exit_observation is not None and observation == self.model.exit_observation


class PerseusPolicy(Policy):
    """Greedy in the solved value function."""

    name = 'perseus'

    def __init__(self, model: PomdpModel, alpha_set: AlphaVectorSet):
        self.model = model
        self.alpha_set = alpha_set

    def start(self, belief: np.ndarray) -> int:
        return PerseusService.extract_action_index(belief, self.alpha_set)

    def next(self, action: int, observation: int, belief: np.ndarray) -> Optional[int]:
        if self._exited(observation):
            return None
        return PerseusService.extract_action_index(belief, self.alpha_set)


class FsmPolicy(Policy):
    """
    FSM-HEU or baseline over a model whose actions are
    [HO, exhaustive BT, DT(1), ..., DT(S)] at one power and DT duration.
    """

    def __init__(self, model: PomdpModel, variant: FsmVariant):
        self.model = model
        self.variant = FsmVariant(variant)
        self.name = self.variant.value
        self._index: Dict[ActionSpec, int] = {action: i for i, action in enumerate(model.actions)}
        self.start_action = PolicyService.fsm_start(model.actions)

    @property
    def power_dbm(self) -> Optional[float]:
        return self.start_action.power_dbm

    def start(self, belief: np.ndarray) -> int:
        return self._index[self.start_action]

    def next(self, action: int, observation: int, belief: np.ndarray) -> Optional[int]:
        successor = PolicyService.fsm_next(self.model.actions[action], observation, self.variant, self.model.actions)
        return None if successor is None else self._index[successor]

    def successor_index(self, action: int, observation: int) -> Optional[int]:
        return self.next(action, observation, None)


class GeniePolicy(Policy):
    """
    Perfect state knowledge, no training or handover overhead: DT at a
    fixed power through whichever BS has LOS. Simulated outside the POMDP.
    """

    name = 'genie'

    def __init__(self, power_dbm: float):
        self.power_dbm = power_dbm

    def start(self, belief: np.ndarray) -> None:
        return None

    def next(self, action: int, observation: int, belief: np.ndarray) -> None:
        return None


# ──────────────────────────────────────────────────────
# Transition rule and evaluation
# ──────────────────────────────────────────────────────

class PolicyService:
    """FSM transition rule, linear-system evaluation and the genie bound."""

    @staticmethod
    def fsm_actions(num_sectors: int, power_dbm: float, dt_duration: int, gain: float, handover_slots: int = 1):
        """[HO, exhaustive BT, DT(1..S)] at one power."""
        return (
            [ActionSpec.handover(handover_slots),
             ActionSpec.beam_training(range(1, num_sectors + 1), power_dbm, gain)]
            + [ActionSpec.data_transmission(s, dt_duration, power_dbm, gain) for s in range(1, num_sectors + 1)]
        )

    @staticmethod
    def fsm_start(actions: Sequence[ActionSpec]) -> ActionSpec:
        """The exhaustive scan: the BT action with the most sectors."""
        scans = [a for a in actions if a.kind == ActionClass.BT]
        if not scans:
            raise ValidationError("FSM policies need a BT action")
        return max(scans, key=lambda a: len(a.sectors))

    @staticmethod
    def fsm_next(
        action: ActionSpec,
        observation: int,
        variant: FsmVariant,
        actions: Sequence[ActionSpec]
    ) -> Optional[ActionSpec]:
        """
        Successor of (action, observation); None when the observation is exit.

        Observation indices follow ObservationSpace: sectors 0..S-1, empty S, exit S + 1.
        """
        exhaustive = PolicyService.fsm_start(actions)
        num_sectors = len(exhaustive.sectors)
        if observation == num_sectors + 1:
            return None

        if action.kind == ActionClass.HO:
            return exhaustive

        if action.kind == ActionClass.BT:
            if observation == num_sectors:
                return next(a for a in actions if a.kind == ActionClass.HO)
            sector = observation + 1
            return next(
                a for a in actions
                if a.kind == ActionClass.DT and a.target == sector and a.power_dbm == action.power_dbm
            )

        ack = observation == action.target - 1
        if ack and FsmVariant(variant) == FsmVariant.HEURISTIC:
            return action
        return exhaustive

    @staticmethod
    def _solve_fsm(policy: FsmPolicy, per_action: np.ndarray) -> np.ndarray:
        """
        Solves V(u, a) = c(u, a) + sum_{u', y} P(u', y | u, a) V(u', next(a, y))
        with V(exit, .) = 0.

        Returns:
            (N, A) values, exit row zero

        Raises:
            SingularSystemError: singular or ill-conditioned system
        """
        model = policy.model
        joint = model.kernel.joint
        A, N, Y, _ = joint.shape
        n = N - 1

        rows, cols, data = [], [], []
        for a in range(A):
            for y in range(Y):
                successor = policy.successor_index(a, y)
                if successor is None:
                    continue
                block = joint[a, :n, y, :n]
                i, j = np.nonzero(block)
                rows.append(a * n + i)
                cols.append(successor * n + j)
                data.append(block[i, j])

        if data:
            transition = sparse.csr_matrix(
                (np.concatenate(data), (np.concatenate(rows), np.concatenate(cols))),
                shape=(A * n, A * n)
            )
        else:
            transition = sparse.csr_matrix((A * n, A * n))
        system = (sparse.identity(A * n, format='csr') - transition).tocsc()
        rhs = per_action[:, :n].reshape(A * n)

        with warnings.catch_warnings():
            warnings.simplefilter('error')
            try:
                solution = spsolve(system, rhs)
            except Exception as e:
                raise SingularSystemError(f"FSM evaluation system is singular: {e}")

        residual = np.linalg.norm(system @ solution - rhs)
        scale = max(np.linalg.norm(rhs), 1.0)
        if not np.all(np.isfinite(solution)) or residual / scale >= RESIDUAL_TOL:
            raise SingularSystemError(f"FSM evaluation residual {residual / scale:.3g} exceeds {RESIDUAL_TOL}")

        values = np.zeros((N, A))
        values[:n] = solution.reshape(A, n).T
        return values

    @staticmethod
    def evaluate_fsm(policy: FsmPolicy, weight: float) -> np.ndarray:
        """(N, A) value table V(u, a) of the Lagrangian with weight in bits/J."""
        return PolicyService._solve_fsm(policy, policy.model.lagrangian(weight))

    @staticmethod
    def evaluate_fsm_metrics(policy: FsmPolicy, chain: MobilityChain) -> Tuple[float, float, float]:
        """
        Expected episode totals from the initial belief and start action.

        Returns:
            (R_tot bits, E_tot Joules, D_tot slots)
        """
        start = policy.start(policy.model.initial_belief)
        belief = policy.model.initial_belief
        bits = float(belief @ PolicyService._solve_fsm(policy, policy.model.rewards)[:, start])
        energy = float(belief @ PolicyService._solve_fsm(policy, policy.model.energy)[:, start])
        duration = MobilityService.expected_exit_time(chain, 1)
        return bits, energy, duration

    @staticmethod
    def genie_bound(
        snr: float,
        pi_b1: float,
        pi_b2: float,
        pilot_fraction: float,
        bandwidth: float,
        gain: float
    ) -> Tuple[float, float]:
        """
        ((1 - pi1 pi2) T*(snr) / W, (1 - pi1 pi2) snr / Gamma).

        Returns:
            (spectral efficiency in bps/Hz, average power in W)
        """
        available = 1.0 - pi_b1 * pi_b2
        throughput, _ = ChannelService.optimal_throughput(snr, pilot_fraction, bandwidth)
        return available * throughput / bandwidth, available * snr / gain
