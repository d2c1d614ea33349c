"""
Clients module - artifact persistence and stable identifiers.
"""

from .artifact_client import ArtifactClient
from .id_processors import generate_stable_id, config_hash, vector_id

__all__ = [
    'ArtifactClient',
    'generate_stable_id',
    'config_hash',
    'vector_id',
]
