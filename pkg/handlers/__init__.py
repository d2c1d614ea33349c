"""
Handlers module - model orchestration layer.
"""

from .model_handler import ModelHandler

__all__ = [
    'ModelHandler',
]
