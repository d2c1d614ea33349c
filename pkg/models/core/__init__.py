"""
Core building blocks: scenario configuration, units, RNG streams and errors.
"""

from .errors import (
    ConfigurationError,
    ValidationError,
    PolicyMismatchError,
    ImpossibleObservationError,
    SingularSystemError,
)
from .scenario_config import (
    ScenarioConfig,
    load_config,
    dump_config,
    apply_overrides,
    serialize_config,
    RUN_CONTROL_KEYS,
)
from .units import dbm_to_watt, watt_to_dbm, SPEED_OF_LIGHT
from .random_streams import rng_for, STREAM_MOBILITY, STREAM_SOLVER, STREAM_BELIEFS, STREAM_EPISODES

__all__ = [
    'ConfigurationError',
    'ValidationError',
    'PolicyMismatchError',
    'ImpossibleObservationError',
    'SingularSystemError',
    'ScenarioConfig',
    'load_config',
    'dump_config',
    'apply_overrides',
    'serialize_config',
    'RUN_CONTROL_KEYS',
    'dbm_to_watt',
    'watt_to_dbm',
    'SPEED_OF_LIGHT',
    'rng_for',
    'STREAM_MOBILITY',
    'STREAM_SOLVER',
    'STREAM_BELIEFS',
    'STREAM_EPISODES',
]
