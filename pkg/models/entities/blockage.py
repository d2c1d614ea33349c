"""
Two-state blockage chain. State 0 is blocked, state 1 is LOS.
"""

from dataclasses import dataclass

import numpy as np

from models.core.errors import ValidationError

BLOCKED = 0
LOS = 1


@dataclass(frozen=True)
class BlockageChain:
    """
    Per-slot LOS/blockage Markov chain of one BS.

    Attributes:
        p10: P(LOS -> blocked)
        p01: P(blocked -> LOS)
    """

    p10: float
    p01: float

    def __post_init__(self):
        for name in ('p10', 'p01'):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValidationError(f"{name} must lie in [0, 1], got {value}")

    @property
    def matrix(self) -> np.ndarray:
        return np.array([
            [1.0 - self.p01, self.p01],
            [self.p10, 1.0 - self.p10],
        ])
