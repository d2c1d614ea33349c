"""
Base Collection Module

Abstract base class for the in-memory collections of the solver (belief
points, alpha vectors). A collection keeps items keyed by a stable ID in
insertion order, skips exact duplicates, and persists through an
ArtifactClient only when flush() is called.

Classes:
    BaseCollection: Abstract base class for keyed collections
"""

from abc import ABC, abstractmethod
from typing import Any, Dict, Iterator, List, Optional


class BaseCollection(ABC):
    """
    Abstract base class for keyed collections with deferred persistence.

    Attributes:
        _client: ArtifactClient used by flush() and loading, may be None
        _source_name: artifact name (e.g., 'beliefs.json')
        _items: Internal storage as {id: item}, insertion ordered
        _dirty: Flag indicating if there are unsaved changes
    """

    def __init__(self, client=None, source_name: Optional[str] = None):
        """
        Initialize the collection, loading the artifact when it exists.

        Args:
            client: ArtifactClient instance for persistence (optional)
            source_name: Name of the artifact backing the collection
        """
        self._client = client
        self._source_name = source_name
        self._items: Dict[str, Any] = {}
        self._dirty = False

        if client is not None and source_name and client.exists(source_name):
            self._load()

    # ────────────────────────────────────────────────────────────
    # Abstract Methods (Must be implemented by subclasses)
    # ────────────────────────────────────────────────────────────

    @abstractmethod
    def _identify(self, item: Any) -> str:
        """Stable ID of an item; equal items must share it."""
        pass

    @abstractmethod
    def _load(self) -> None:
        """Populate self._items from the backing artifact."""
        pass

    @abstractmethod
    def _prepare_for_save(self) -> Any:
        """Convert the items to a JSON-serializable document."""
        pass

    def _changed(self) -> None:
        """Hook for subclasses holding derived caches."""
        self._dirty = True

    # ────────────────────────────────────────────────────────────
    # Items
    # ────────────────────────────────────────────────────────────

    def get_all(self) -> List[Any]:
        return list(self._items.values())

    def add_unique(self, item: Any) -> bool:
        """Add item unless an equal one is stored. Returns True when added."""
        id = self._identify(item)
        if id in self._items:
            return False
        self._items[id] = item
        self._changed()
        return True

    # ────────────────────────────────────────────────────────────
    # Persistence
    # ────────────────────────────────────────────────────────────

    @property
    def is_dirty(self) -> bool:
        return self._dirty

    def flush(self, source_name: Optional[str] = None) -> Optional[str]:
        """
        Persist the collection through the client.

        Args:
            source_name: overrides the artifact name given at construction

        Returns:
            The written path, or None when nothing was written
        """
        name = source_name or self._source_name
        if self._client is None or not name:
            raise ValueError(f"{self.__class__.__name__} has no artifact to flush to")

        if not self._dirty and name == self._source_name:
            return None

        path = self._client.save_json(name, self._prepare_for_save())
        self._source_name = name
        self._dirty = False
        return path

    # ────────────────────────────────────────────────────────────
    # Utility Methods
    # ────────────────────────────────────────────────────────────

    def __len__(self) -> int:
        return len(self._items)

    def __iter__(self) -> Iterator[Any]:
        return iter(self._items.values())

    def __repr__(self) -> str:
        dirty_marker = " (*)" if self._dirty else ""
        return f"{self.__class__.__name__}(count={len(self._items)}, source='{self._source_name}'{dirty_marker})"
