"""
Assembled POMDP: joint transition-observation kernel, rewards and energy.

The kernel is stored densely as P[a, u, y, u'] = P(U_{k+T} = u', Y = y | U_k = u, a).
Toy models used in tests are built from the same two classes.
"""

from dataclasses import dataclass, field
from typing import Any, List, Optional, Sequence

import numpy as np

from models.core.errors import ValidationError


class KernelTensor:
    """
    Joint transition-observation probabilities for every action.

    Attributes:
        joint: (A, N, Y, N) array
    """

    def __init__(self, joint: np.ndarray):
        joint = np.asarray(joint, dtype=float)
        if joint.ndim != 4 or joint.shape[1] != joint.shape[3]:
            raise ValidationError(f"Kernel must have shape (A, N, Y, N), got {joint.shape}")
        if np.any(joint < 0):
            raise ValidationError("Kernel has negative entries")
        self.joint = joint

    @property
    def num_actions(self) -> int:
        return self.joint.shape[0]

    @property
    def num_states(self) -> int:
        return self.joint.shape[1]

    @property
    def num_observations(self) -> int:
        return self.joint.shape[2]

    def transition_marginal(self, a: int) -> np.ndarray:
        """(N, N) P(u' | u, a)."""
        return self.joint[a].sum(axis=1)

    def observation_marginal(self, a: int) -> np.ndarray:
        """(N, Y) P(y | u, a)."""
        return self.joint[a].sum(axis=2)

    def check(self) -> float:
        """Worst |sum_{u', y} P(u', y | u, a) - 1| over all (u, a)."""
        return float(np.max(np.abs(self.joint.sum(axis=(2, 3)) - 1.0)))


@dataclass
class PomdpModel:
    """
    Everything the solver, the belief filter and the policies need.

    Attributes:
        kernel: KernelTensor (A, N, Y, N)
        rewards: (A, N) expected bits r(u, a)
        energy: (A, N) Joules e(u, a)
        actions: action list in index order (ActionSpec for the vehicular model)
        state_labels / observation_labels: human-readable names
        initial_belief: (N,) starting belief
        exit_state / exit_observation: indices, None for models without an exit
        config_hash: fingerprint of the configuration the model was built from
    """

    kernel: KernelTensor
    rewards: np.ndarray
    energy: np.ndarray
    actions: Sequence[Any]
    state_labels: List[str]
    observation_labels: List[str]
    initial_belief: np.ndarray
    exit_state: Optional[int] = None
    exit_observation: Optional[int] = None
    config_hash: str = ''
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        A, N, Y, _ = self.kernel.joint.shape
        if self.rewards.shape != (A, N) or self.energy.shape != (A, N):
            raise ValidationError("Rewards and energy must have shape (A, N)")
        if len(self.actions) != A or len(self.state_labels) != N or len(self.observation_labels) != Y:
            raise ValidationError("Labels do not match the kernel shape")

    @property
    def num_actions(self) -> int:
        return self.kernel.num_actions

    @property
    def num_states(self) -> int:
        return self.kernel.num_states

    @property
    def num_observations(self) -> int:
        return self.kernel.num_observations

    def action_label(self, a: int) -> str:
        action = self.actions[a]
        return getattr(action, 'label', str(action))

    def lagrangian(self, weight: float) -> np.ndarray:
        """(A, N) L(u, a) = r(u, a) - weight * e(u, a), weight in bits/Joule."""
        return self.rewards - weight * self.energy
