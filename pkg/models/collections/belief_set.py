"""
Belief set: the finite belief points the point-based solver backs up.
"""

from typing import Any, Dict, Iterable, Optional

import numpy as np
from scipy.spatial.distance import cdist

from clients.id_processors import vector_id
from models.collections.base_collection import BaseCollection


class BeliefSet(BaseCollection):
    """
    Ordered set of belief vectors without exact duplicates.

    Persisted as {'beliefs': [[...], ...], **metadata}.

    Usage:
        beliefs = BeliefSet([initial_belief])
        beliefs.add_unique(candidate)
        distances = beliefs.nearest_distance(candidates)
    """

    def __init__(
        self,
        beliefs: Optional[Iterable[np.ndarray]] = None,
        client=None,
        source_name: Optional[str] = None
    ):
        self._matrix: Optional[np.ndarray] = None
        self.metadata: Dict[str, Any] = {}
        super().__init__(client, source_name)

        for belief in beliefs or []:
            self.add_unique(belief)

    def _identify(self, item: np.ndarray) -> str:
        return vector_id(item, 'belief')

    def _changed(self) -> None:
        super()._changed()
        self._matrix = None

    def add_unique(self, item: np.ndarray) -> bool:
        return super().add_unique(np.asarray(item, dtype=float))

    @property
    def matrix(self) -> np.ndarray:
        """(M, N) beliefs stacked in insertion order."""
        if self._matrix is None:
            self._matrix = np.vstack(self.get_all()) if self._items else np.empty((0, 0))
        return self._matrix

    def nearest_distance(self, candidates: np.ndarray) -> np.ndarray:
        """L1 distance from each candidate row to its nearest stored belief."""
        candidates = np.atleast_2d(candidates)
        if not self._items:
            return np.full(len(candidates), np.inf)
        return cdist(candidates, self.matrix, metric='cityblock').min(axis=1)

    # ────────────────────────────────────────────────────────────
    # Persistence
    # ────────────────────────────────────────────────────────────

    def _load(self) -> None:
        document = self._client.load_json(self._source_name)
        self.metadata = {k: v for k, v in document.items() if k != 'beliefs'}
        for belief in document.get('beliefs', []):
            super().add_unique(np.asarray(belief, dtype=float))
        self._dirty = False

    def _prepare_for_save(self) -> Dict[str, Any]:
        return {**self.metadata, 'beliefs': [b.tolist() for b in self.get_all()]}
