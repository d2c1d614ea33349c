"""
Blockage Service Module

Closed forms and samplers for the two-state LOS/blockage chain
(state 0 = blocked, state 1 = LOS).
"""

import numpy as np

from models.core.errors import ValidationError
from models.entities.blockage import BLOCKED, LOS, BlockageChain


class BlockageService:
    """Static helpers over BlockageChain."""

    @staticmethod
    def steady_state(chain: BlockageChain) -> float:
        """
        Stationary blockage probability pi_B = p10 / (p10 + p01).

        Raises:
            ValidationError: p10 = p01 = 0 (no unique stationary distribution)
        """
        total = chain.p10 + chain.p01
        if total <= 0:
            raise ValidationError("Blockage chain with p10 = p01 = 0 has no unique steady state")
        return chain.p10 / total

    @staticmethod
    def two_state_power(chain: BlockageChain, t: int) -> np.ndarray:
        """
        P^t = Pi + (1 - p10 - p01)^t (I - Pi), Pi holding the stationary row.

        A chain with p10 + p01 = 0 never moves, so P^t = I.
        """
        if t < 0:
            raise ValidationError(f"Blockage power needs t >= 0, got {t}")
        total = chain.p10 + chain.p01
        if total <= 0 or t == 0:
            return np.eye(2)
        pi_b = chain.p10 / total
        stationary = np.array([[pi_b, 1.0 - pi_b], [pi_b, 1.0 - pi_b]])
        return stationary + (1.0 - total) ** t * (np.eye(2) - stationary)

    @staticmethod
    def sample_step(chain: BlockageChain, b: int, rng: np.random.Generator) -> int:
        if b not in (BLOCKED, LOS):
            raise ValidationError(f"Blockage state must be 0 or 1, got {b}")
        flip = chain.p10 if b == LOS else chain.p01
        return 1 - b if rng.random() < flip else b

    @staticmethod
    def sample_path(chain: BlockageChain, b0: int, n: int, rng: np.random.Generator) -> np.ndarray:
        """
        n per-slot states starting with b0, drawn by geometric sojourns.

        Equal in law to n - 1 sample_step calls.
        """
        path = np.empty(n, dtype=np.int8)
        pos, state = 0, b0
        while pos < n:
            flip = chain.p10 if state == LOS else chain.p01
            sojourn = n - pos if flip <= 0 else int(rng.geometric(flip))
            path[pos:pos + sojourn] = state
            pos += sojourn
            state = 1 - state
        return path

    @staticmethod
    def mean_sojourn(chain: BlockageChain, state: int) -> float:
        """Expected slots spent in a state per visit; inf for an absorbing state."""
        flip = chain.p10 if state == LOS else chain.p01
        return np.inf if flip <= 0 else 1.0 / flip
