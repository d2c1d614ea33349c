"""
Alpha vector set: a piecewise-linear value function V(b) = max_alpha b . alpha.
"""

from typing import Any, Dict, Iterable, Optional

import numpy as np

from clients.id_processors import vector_id
from models.collections.base_collection import BaseCollection
from models.entities.alpha_vectors import AlphaVector


class AlphaVectorSet(BaseCollection):
    """
    Hyperplanes with their actions, plus the value-iteration index n.

    Ties between hyperplanes resolve to the lowest insertion index.

    Persisted as {'vectors': [[...]], 'action_indices': [...], 'iteration': n, **metadata}.
    """

    def __init__(
        self,
        vectors: Optional[Iterable[AlphaVector]] = None,
        iteration: int = 0,
        client=None,
        source_name: Optional[str] = None
    ):
        self._matrix: Optional[np.ndarray] = None
        self._actions: Optional[np.ndarray] = None
        self.iteration = iteration
        self.metadata: Dict[str, Any] = {}
        super().__init__(client, source_name)

        for vector in vectors or []:
            self.add_unique(vector)

    @classmethod
    def zero(cls, num_states: int, action: int = 0) -> 'AlphaVectorSet':
        """The all-zero value function tied to one action."""
        return cls([AlphaVector(np.zeros(num_states), action)])

    def _identify(self, item: AlphaVector) -> str:
        return vector_id(item.values, 'alpha', tag=str(item.action))

    def _changed(self) -> None:
        super()._changed()
        self._matrix = None
        self._actions = None

    # ────────────────────────────────────────────────────────────
    # Value function
    # ────────────────────────────────────────────────────────────

    @property
    def matrix(self) -> np.ndarray:
        """(K, N) hyperplanes in insertion order."""
        if self._matrix is None:
            self._matrix = np.vstack([v.values for v in self.get_all()])
        return self._matrix

    @property
    def actions(self) -> np.ndarray:
        """(K,) action index per hyperplane."""
        if self._actions is None:
            self._actions = np.array([v.action for v in self.get_all()], dtype=int)
        return self._actions

    def vector(self, k: int) -> AlphaVector:
        return AlphaVector(self.matrix[k], int(self.actions[k]))

    def best_index(self, belief: np.ndarray) -> int:
        return int(np.argmax(self.matrix @ belief))

    def value_at(self, beliefs: np.ndarray) -> np.ndarray:
        """V(b) for one belief (N,) or a stack (M, N)."""
        return (np.asarray(beliefs) @ self.matrix.T).max(axis=-1)

    # ────────────────────────────────────────────────────────────
    # Persistence
    # ────────────────────────────────────────────────────────────

    def _load(self) -> None:
        document = self._client.load_json(self._source_name)
        self.iteration = int(document.get('iteration', 0))
        self.metadata = {
            k: v for k, v in document.items()
            if k not in ('vectors', 'action_indices', 'iteration')
        }
        for values, action in zip(document['vectors'], document['action_indices']):
            super().add_unique(AlphaVector(np.asarray(values, dtype=float), int(action)))
        self._dirty = False

    def _prepare_for_save(self) -> Dict[str, Any]:
        return {
            **self.metadata,
            'iteration': self.iteration,
            'vectors': [v.values.tolist() for v in self.get_all()],
            'action_indices': [int(v.action) for v in self.get_all()],
        }
