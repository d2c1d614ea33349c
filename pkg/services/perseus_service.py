"""
PERSEUS Service Module

Randomized point-based value iteration over a PomdpModel.

The value function is V_n(b) = max over alpha in Q_n of b . alpha, each
alpha tied to an action. One backup at a belief b computes, for every
action a and observation y, the hyperplane of Q_n that is best for the
(unnormalized) successor of b, and combines them into

    alpha_a(u) = L(u, a) + sum_{u', y} P(u', y | u, a) alpha*_{a, y}(u').

A sweep backs up randomly sampled points of the belief set until every
point is improved or kept at its previous value, so V never decreases on
the set. Belief sets are grown by stochastic simulation with exploratory
actions: each point is pushed one step under every action with a sampled
observation, and the candidate farthest (L1) from the set is added.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
from tqdm import tqdm

from models.collections.alpha_vector_set import AlphaVectorSet
from models.collections.belief_set import BeliefSet
from models.core.errors import PolicyMismatchError, ValidationError
from models.entities.alpha_vectors import AlphaVector
from models.entities.pomdp import PomdpModel
from services.belief_service import BeliefService


@dataclass
class SolveResult:
    """
    Outcome of a solve.

    Attributes:
        alpha_set: final Q_n
        converged: max change on the belief set dropped below tol
        iterations: sweeps performed
        value_trace: (iterations + 1, |B|) V_n at every belief point, row 0 is V_0
    """

    alpha_set: AlphaVectorSet
    converged: bool
    iterations: int
    value_trace: np.ndarray = field(repr=False)

    @property
    def final_delta(self) -> float:
        if len(self.value_trace) < 2:
            return float('inf')
        return float(np.max(np.abs(self.value_trace[-1] - self.value_trace[-2])))


class BackupOperator:
    """
    Point-based Bellman backup with the kernel laid out for fast products.

    Attributes:
        lagrangian: (A, N) L(u, a)
        discount: 1.0 for the episodic vehicular model
    """

    def __init__(self, model: PomdpModel, weight: float, discount: float = 1.0):
        joint = model.kernel.joint
        A, N, Y, _ = joint.shape
        self.shape = (A, N, Y)
        self.lagrangian = model.lagrangian(weight)
        self.discount = discount
        # (N, A * Y * N) for b-weighted successors, (A, N, Y * N) for the backup sum
        self._by_state = np.ascontiguousarray(joint.transpose(1, 0, 2, 3)).reshape(N, A * Y * N)
        self._by_action = joint.reshape(A, N, Y * N)

    def candidates(self, belief: np.ndarray, alpha_set: AlphaVectorSet) -> np.ndarray:
        """(A, N) alpha_a for every action at one belief."""
        A, N, Y = self.shape
        Q = alpha_set.matrix
        successors = (belief @ self._by_state).reshape(A, Y, N)
        # First maximizer wins ties
        best = np.argmax(successors @ Q.T, axis=2)
        chosen = Q[best].reshape(A, Y * N, 1)
        future = np.matmul(self._by_action, chosen)[..., 0]
        return self.lagrangian + self.discount * future

    def __call__(self, belief: np.ndarray, alpha_set: AlphaVectorSet) -> Tuple[AlphaVector, float]:
        alphas = self.candidates(belief, alpha_set)
        values = alphas @ belief
        a = int(np.argmax(values))
        return AlphaVector(alphas[a], a), float(values[a])


class PerseusService:
    """
    Solver entry points.

    All methods are static; randomness comes from the caller's Generator.
    """

    # ──────────────────────────────────────────────────────
    # Backup and sweep
    # ──────────────────────────────────────────────────────

    @staticmethod
    def backup(
        belief: np.ndarray,
        alpha_set: AlphaVectorSet,
        model: PomdpModel,
        weight: float,
        discount: float = 1.0
    ) -> Tuple[AlphaVector, float]:
        """
        Best backed-up hyperplane at one belief and V_{n+1}(belief).

        Ties between actions go to the lowest catalog index.
        """
        return BackupOperator(model, weight, discount)(belief, alpha_set)

    @staticmethod
    def perseus_sweep(
        beliefs: np.ndarray,
        alpha_set: AlphaVectorSet,
        operator: BackupOperator,
        rng: np.random.Generator
    ) -> Tuple[AlphaVectorSet, np.ndarray]:
        """
        One randomized sweep over the (M, N) belief points.

        Returns:
            (Q_{n+1}, V_{n+1} at every belief point)
        """
        old_scores = beliefs @ alpha_set.matrix.T
        old_values = old_scores.max(axis=1)
        old_best = old_scores.argmax(axis=1)

        improved = AlphaVectorSet(iteration=alpha_set.iteration + 1)
        values = np.full(len(beliefs), -np.inf)
        pending = np.ones(len(beliefs), dtype=bool)

        while pending.any():
            i = int(rng.choice(np.flatnonzero(pending)))
            alpha, value = operator(beliefs[i], alpha_set)

            if value > old_values[i]:
                kept = alpha
                kept_values = beliefs @ alpha.values
            else:
                k = int(old_best[i])
                kept = alpha_set.vector(k)
                kept_values = old_scores[:, k]

            improved.add_unique(kept)
            np.maximum(values, kept_values, out=values)
            pending[i] = False
            pending &= values < old_values

        return improved, values

    @staticmethod
    def solve(
        model: PomdpModel,
        beliefs: BeliefSet,
        weight: float,
        tol: float,
        max_iters: int,
        rng: np.random.Generator,
        initial: Optional[AlphaVectorSet] = None,
        discount: float = 1.0,
        progress: bool = False
    ) -> SolveResult:
        """
        Sweeps until max_b |V_{n+1}(b) - V_n(b)| < tol or max_iters sweeps.

        Starts from the zero hyperplane tied to action 0 unless an initial
        set is given.

        Raises:
            ValidationError: tol <= 0 or an empty belief set
        """
        if not tol > 0:
            raise ValidationError(f"Solver tolerance must be positive, got {tol}")
        if len(beliefs) == 0:
            raise ValidationError("Cannot solve over an empty belief set")

        operator = BackupOperator(model, weight, discount)
        alpha_set = initial if initial is not None else AlphaVectorSet.zero(model.num_states, action=0)
        B = beliefs.matrix
        trace = [alpha_set.value_at(B)]
        converged = False

        bar = tqdm(range(max_iters), desc="PERSEUS", unit="sweep", disable=not progress)
        for _ in bar:
            alpha_set, values = PerseusService.perseus_sweep(B, alpha_set, operator, rng)
            delta = float(np.max(np.abs(values - trace[-1])))
            trace.append(values)
            bar.set_postfix(vectors=len(alpha_set), delta=f"{delta:.3g}")
            if delta < tol:
                converged = True
                break
        bar.close()

        return SolveResult(
            alpha_set=alpha_set,
            converged=converged,
            iterations=len(trace) - 1,
            value_trace=np.vstack(trace)
        )

    # ──────────────────────────────────────────────────────
    # Belief-set expansion
    # ──────────────────────────────────────────────────────

    @staticmethod
    def expand_beliefs(
        beliefs: BeliefSet,
        model: PomdpModel,
        target_size: int,
        rng: np.random.Generator,
        progress: bool = False
    ) -> BeliefSet:
        """
        Grows a copy of the set to target_size points (or until a round adds nothing).

        Candidates that report the exit are skipped; a candidate already in
        the set (L1 distance 0) is never added.
        """
        if len(beliefs) == 0:
            raise ValidationError("Belief expansion needs a non-empty starting set")

        expanded = BeliefSet(beliefs.get_all())
        expanded.metadata = dict(beliefs.metadata)
        observation_marginals = model.kernel.joint.sum(axis=3)
        exit_y = model.exit_observation

        bar = tqdm(total=target_size, initial=len(expanded), desc="Beliefs", unit="pt", disable=not progress)
        while len(expanded) < target_size:
            added = 0
            for belief in expanded.get_all():
                if len(expanded) >= target_size:
                    break

                candidates: List[np.ndarray] = []
                for a in range(model.num_actions):
                    probs = belief @ observation_marginals[a]
                    y = int(rng.choice(len(probs), p=probs / probs.sum()))
                    if y == exit_y:
                        continue
                    candidates.append(BeliefService.update(belief, model, a, y))
                if not candidates:
                    continue

                distances = expanded.nearest_distance(np.vstack(candidates))
                j = int(np.argmax(distances))
                if distances[j] > 0 and expanded.add_unique(candidates[j]):
                    added += 1
                    bar.update(1)

            if added == 0:
                break
        bar.close()

        return expanded

    # ──────────────────────────────────────────────────────
    # Policy extraction
    # ──────────────────────────────────────────────────────

    @staticmethod
    def extract_action_index(belief: np.ndarray, alpha_set: AlphaVectorSet) -> int:
        """Action of argmax_alpha b . alpha, ties to the lowest hyperplane index."""
        return int(alpha_set.actions[alpha_set.best_index(belief)])

    @staticmethod
    def extract_action(belief: np.ndarray, alpha_set: AlphaVectorSet, model: PomdpModel):
        return model.actions[PerseusService.extract_action_index(belief, alpha_set)]

    @staticmethod
    def value_at(belief: np.ndarray, alpha_set: AlphaVectorSet) -> float:
        return float(alpha_set.value_at(belief))

    # ──────────────────────────────────────────────────────
    # Policy files
    # ──────────────────────────────────────────────────────

    @staticmethod
    def save_policy(
        alpha_set: AlphaVectorSet,
        model: PomdpModel,
        client,
        name: str,
        provenance: Optional[Dict[str, Any]] = None
    ) -> str:
        """
        Writes {states, vectors, actions, action_indices, iteration, config_hash, ...}.

        Returns:
            The written path
        """
        document = AlphaVectorSet(alpha_set.get_all(), iteration=alpha_set.iteration, client=client)
        document.metadata = {
            **(provenance or {}),
            'config_hash': model.config_hash,
            'states': list(model.state_labels),
            'actions': [_describe(model.actions[int(a)]) for a in alpha_set.actions],
        }
        return document.flush(name)

    @staticmethod
    def load_policy(client, name: str, model: PomdpModel) -> AlphaVectorSet:
        """
        Raises:
            FileNotFoundError: no such policy file
            PolicyMismatchError: built for another configuration or catalog
        """
        if not client.exists(name):
            raise FileNotFoundError(f"Policy file not found: {client.path(name)}")

        alpha_set = AlphaVectorSet(client=client, source_name=name)
        stored_hash = alpha_set.metadata.get('config_hash')
        if stored_hash != model.config_hash:
            raise PolicyMismatchError(
                f"Policy was solved for config {stored_hash}, current config is {model.config_hash}"
            )
        if alpha_set.metadata.get('states') != list(model.state_labels):
            raise PolicyMismatchError("Policy state labels do not match the model")
        if len(alpha_set) == 0:
            raise PolicyMismatchError("Policy file holds no alpha vectors")

        for descriptor, a in zip(alpha_set.metadata.get('actions', []), alpha_set.actions):
            label = descriptor.get('label') if isinstance(descriptor, dict) else descriptor
            if not 0 <= a < model.num_actions or label != model.action_label(int(a)):
                raise PolicyMismatchError(f"Policy action {label} does not match catalog index {a}")
        return alpha_set


def _describe(action) -> Any:
    return action.to_dict() if hasattr(action, 'to_dict') else str(action)
