"""
Alpha vector: one hyperplane of a piecewise-linear value function.
"""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True, eq=False)
class AlphaVector:
    """
    Attributes:
        values: (N,) value per state; the exit entry stays 0
        action: catalog index of the action the hyperplane commits to
    """

    values: np.ndarray
    action: int

    def value(self, belief: np.ndarray) -> float:
        return float(belief @ self.values)
