"""
Belief Service Module

Exact Bayesian filtering over a PomdpModel. A belief is a plain (N,)
probability vector whose last entry, for the vehicular model, is the
exit mass.
"""

from typing import Any, Dict

import numpy as np

from models.core.errors import ImpossibleObservationError, ValidationError
from models.entities.pomdp import PomdpModel


class BeliefService:
    """Static belief operations."""

    @staticmethod
    def initial_belief(model: PomdpModel) -> np.ndarray:
        """Point mass on (Z = 1, I = 1, LOS, LOS) for the vehicular model."""
        return model.initial_belief.copy()

    @staticmethod
    def observation_probs(belief: np.ndarray, model: PomdpModel, a: int) -> np.ndarray:
        """(Y,) P(y | belief, a)."""
        return belief @ model.kernel.joint[a].sum(axis=2)

    @staticmethod
    def predict(belief: np.ndarray, model: PomdpModel, a: int) -> np.ndarray:
        """(N,) state marginal after action a, before observing."""
        return belief @ model.kernel.joint[a].sum(axis=1)

    @staticmethod
    def update(belief: np.ndarray, model: PomdpModel, a: int, y: int) -> np.ndarray:
        """
        beta'(u') = sum_u P(u', y | u, a) beta(u) / P(y | beta, a), renormalized.

        Raises:
            ImpossibleObservationError: P(y | beta, a) = 0
        """
        if model.exit_observation is not None and y == model.exit_observation:
            exited = np.zeros(model.num_states)
            exited[model.exit_state] = 1.0
            return exited

        unnormalized = belief @ model.kernel.joint[a, :, y, :]
        total = unnormalized.sum()
        if not total > 0:
            raise ImpossibleObservationError(
                f"Observation {model.observation_labels[y]} has zero probability "
                f"under {model.action_label(a)}"
            )
        return unnormalized / total

    @staticmethod
    def validate(belief: np.ndarray, num_states: int) -> np.ndarray:
        belief = np.asarray(belief, dtype=float)
        if belief.shape != (num_states,):
            raise ValidationError(f"Belief must have {num_states} entries, got shape {belief.shape}")
        if np.any(belief < 0) or abs(belief.sum() - 1.0) > 1e-9:
            raise ValidationError("Belief must be non-negative and sum to 1")
        return belief

    @staticmethod
    def summary(belief: np.ndarray, model: PomdpModel) -> Dict[str, Any]:
        """Most likely state, its probability and the exit mass."""
        u = int(np.argmax(belief))
        exit_mass = 0.0 if model.exit_state is None else float(belief[model.exit_state])
        return {'map': model.state_labels[u], 'p_map': float(belief[u]), 'p_exit': exit_mass}
