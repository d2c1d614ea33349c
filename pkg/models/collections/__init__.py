"""
Collections Module

Repository-style collections for the solver: belief points and alpha
vectors, keyed by stable IDs, persisted on flush().

Classes:
    BaseCollection: Abstract base class for all collections
    BeliefSet: Belief points without exact duplicates
    AlphaVectorSet: Piecewise-linear value function with one action per hyperplane
"""

from models.collections.base_collection import BaseCollection
from models.collections.belief_set import BeliefSet
from models.collections.alpha_vector_set import AlphaVectorSet

__all__ = [
    'BaseCollection',
    'BeliefSet',
    'AlphaVectorSet',
]
