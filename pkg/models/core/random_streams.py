"""
Deterministic random streams.

Every random consumer draws from its own numpy Generator seeded with
``[seed, stream, index...]``. Episode i of a run therefore sees the same
numbers whatever the worker count or the order episodes finish in.
"""

import numpy as np

# Stream identifiers
STREAM_MOBILITY = 1
STREAM_SOLVER = 2
STREAM_BELIEFS = 3
STREAM_EPISODES = 4


def rng_for(seed: int, *stream: int) -> np.random.Generator:
    """
    Returns the Generator for (seed, *stream).

    Example:
        rng = rng_for(7, STREAM_EPISODES, 12)   # episode 12 of seed 7
    """
    return np.random.default_rng([int(seed), *(int(part) for part in stream)])
