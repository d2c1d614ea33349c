"""
Stable identifiers for configurations, beliefs and alpha vectors.

IDs are generated deterministically from a natural key so the same
configuration, belief or hyperplane always maps to the same identifier
across runs and machines.
"""

import hashlib
from typing import Optional

import numpy as np

from models.core.scenario_config import RUN_CONTROL_KEYS, ScenarioConfig, serialize_config


def generate_stable_id(natural_key: str, category: str = "") -> str:
    """
    Generate a stable UUID based on natural key and optional category.

    Same inputs always produce the same ID.

    Args:
        natural_key: The natural identifier (canonical text, hex dump, ...)
        category: Optional category for namespacing (e.g., 'belief', 'alpha')

    Returns:
        A UUID-format string that is deterministic

    Examples:
        >>> generate_stable_id('num_sectors=8', 'scenario') == generate_stable_id('num_sectors=8', 'scenario')
        True
    """
    seed = f"{category}:{natural_key}" if category else natural_key

    hash_digest = hashlib.md5(seed.encode('utf-8')).hexdigest()

    # Format as UUID (8-4-4-4-12)
    return (
        f"{hash_digest[:8]}-"
        f"{hash_digest[8:12]}-"
        f"{hash_digest[12:16]}-"
        f"{hash_digest[16:20]}-"
        f"{hash_digest[20:]}"
    )


def config_hash(cfg: ScenarioConfig, chain_matrix: Optional[np.ndarray] = None) -> str:
    """
    16-hex fingerprint of the model-defining part of a configuration.

    Run-control keys (seed, episode count, solver effort, lambda) are left
    out, so a policy solved once can be simulated under any seed. When the
    sector chain is given, its exact entries are part of the fingerprint,
    so a policy solved on one chain is refused against another.
    """
    canonical = '\n'.join(
        f"{key}={value}"
        for key, value in sorted(serialize_config(cfg).items())
        if key not in RUN_CONTROL_KEYS
    )
    if chain_matrix is not None:
        canonical += f"\nchain={vector_id(np.ravel(chain_matrix), 'chain')}"
    return generate_stable_id(canonical, 'scenario').replace('-', '')[:16]


def vector_id(values: np.ndarray, category: str, tag: str = "") -> str:
    """
    Stable ID of a float vector (exact bit pattern, -0.0 folded into 0.0).

    Args:
        values: 1-D array
        category: namespace, e.g. 'belief' or 'alpha'
        tag: extra discriminator, e.g. the action of an alpha vector
    """
    data = np.ascontiguousarray(np.asarray(values, dtype=float) + 0.0)
    return generate_stable_id(f"{tag}|{data.tobytes().hex()}", category)
