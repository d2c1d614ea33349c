"""
Scenario configuration: built-in defaults, validation and flat key-value I/O.

A scenario file is a plain ``key=value`` text file (``#`` comments allowed),
parsed with python-dotenv. Every omitted key keeps its default. Lists are
comma separated, e.g. ``power_levels=0,10,20,30,40``.
"""

import math
import os
from dataclasses import dataclass, fields, replace
from typing import Any, Dict, Mapping, Optional, Tuple

from dotenv import dotenv_values

from models.core.errors import ConfigurationError, ValidationError


# ──────────────────────────────────────────────────────
# Defaults
# ──────────────────────────────────────────────────────

# 1% noise-only false-alarm probability: exp(-eta) = 0.01
DEFAULT_THRESHOLD = math.log(100.0)

# Python attribute names that differ from the documented file keys
KEY_ALIASES = {'lambda': 'lambda_'}
ATTRIBUTE_KEYS = {value: key for key, value in KEY_ALIASES.items()}

# Keys that steer a run (seeding, episode counts, solver effort, trade-off
# weight) but leave the POMDP itself unchanged; config_hash skips them
RUN_CONTROL_KEYS = frozenset({
    'seed', 'episodes', 'max_episode_slots', 'mobility_source',
    'lambda', 'lambda_grid', 'lambda_scale', 'belief_set_size',
    'solver_tol_scale', 'max_iters', 'fsm_dt_duration',
})


@dataclass(frozen=True)
class ScenarioConfig:
    """
    Immutable scenario parameters.

    Physical defaults describe the reference highway scenario (128 antennas,
    90 degree coverage, 100 us slots, 20 m road distance, 100 MHz at 30 GHz,
    -163 dBm/Hz noise, kappa = 0.01, one-slot handover, blockage
    1.25e-4 / 5e-4, speed 30 +- 10 m/s, memory 0.2). The modelling choices
    (sector count, side-lobe ratio, symbols per slot, detection
    thresholds, solver sizes) each have a documented default.
    """

    # Physical layer
    num_antennas: int = 128
    coverage_angle: float = 90.0          # degrees
    slot_duration: float = 1e-4           # seconds
    road_distance: float = 20.0           # meters
    bandwidth: float = 1e8                # Hz
    carrier_freq: float = 30e9            # Hz
    noise_psd: float = -163.0             # dBm/Hz
    pilot_fraction: float = 0.01
    handover_slots: int = 1

    # Blockage (BS 1; BS 2 copies these unless overridden)
    blockage_p10: float = 1.25e-4
    blockage_p01: float = 5e-4
    blockage_p10_bs2: Optional[float] = None
    blockage_p01_bs2: Optional[float] = None

    # Gauss-Markov mobility
    speed_mean: float = 30.0
    speed_std: float = 10.0
    memory: float = 0.2
    mobility_trajectories: int = 500
    mobility_seed: int = 0                # trajectories behind the sector chain
    mobility_source: str = 'chain'

    # Sectored antenna and feedback
    num_sectors: int = 8
    sidelobe_ratio: float = 0.01
    symbols_per_slot: int = 1000
    bt_threshold: float = DEFAULT_THRESHOLD
    dt_threshold: float = DEFAULT_THRESHOLD
    bt_window: int = 3

    # Action sets
    dt_durations: Tuple[int, ...] = (10, 20, 40)
    power_levels: Tuple[float, ...] = (0.0, 10.0, 20.0, 30.0, 40.0)
    fsm_dt_duration: int = 10

    # Trade-off and solver
    lambda_: float = 0.0
    lambda_grid: Tuple[float, ...] = (0.0, 1.0, 10.0, 100.0, 1000.0)
    lambda_scale: float = 1e6             # bits/Joule per lambda unit
    belief_set_size: int = 300
    solver_tol_scale: float = 1e-4
    max_iters: int = 500

    # Simulation
    episodes: int = 1000
    max_episode_slots: int = 1_000_000
    seed: int = 1

    # ──────────────────────────────────────────────────────
    # Derived views
    # ──────────────────────────────────────────────────────

    @property
    def blockage_bs1(self) -> Tuple[float, float]:
        return (self.blockage_p10, self.blockage_p01)

    @property
    def blockage_bs2(self) -> Tuple[float, float]:
        p10 = self.blockage_p10 if self.blockage_p10_bs2 is None else self.blockage_p10_bs2
        p01 = self.blockage_p01 if self.blockage_p01_bs2 is None else self.blockage_p01_bs2
        return (p10, p01)

    @property
    def lagrange_weight(self) -> float:
        """lambda in bits per Joule."""
        return self.lambda_ * self.lambda_scale

    def validate(self) -> 'ScenarioConfig':
        """
        Checks every invariant.

        Returns:
            self, so that ``cfg = ScenarioConfig(...).validate()`` reads well

        Raises:
            ValidationError: naming the first offending key
        """
        positive = ['slot_duration', 'road_distance', 'bandwidth', 'carrier_freq',
                    'coverage_angle', 'symbols_per_slot', 'num_antennas', 'lambda_scale',
                    'bt_threshold', 'dt_threshold', 'solver_tol_scale']
        for name in positive:
            value = getattr(self, name)
            if not (value > 0 and math.isfinite(value)):
                raise ValidationError(f"must be positive and finite, got {value}", key=_file_key(name))

        if self.coverage_angle >= 180.0:
            raise ValidationError("must be below 180 degrees", key='coverage_angle')

        probabilities = ['blockage_p10', 'blockage_p01', 'blockage_p10_bs2', 'blockage_p01_bs2']
        for name in probabilities:
            value = getattr(self, name)
            if value is not None and not 0.0 <= value <= 1.0:
                raise ValidationError(f"probability must lie in [0, 1], got {value}", key=name)

        if not 0.0 < self.pilot_fraction < 1.0:
            raise ValidationError(f"must lie in (0, 1), got {self.pilot_fraction}", key='pilot_fraction')
        if not 0.0 < self.sidelobe_ratio < 1.0:
            raise ValidationError(f"must lie in (0, 1), got {self.sidelobe_ratio}", key='sidelobe_ratio')
        # gamma = 1 is accepted as the constant-speed limit
        if not 0.0 <= self.memory <= 1.0:
            raise ValidationError(f"must lie in [0, 1], got {self.memory}", key='memory')
        if self.num_sectors < 2:
            raise ValidationError(f"need at least 2 sectors, got {self.num_sectors}", key='num_sectors')
        if self.speed_std < 0:
            raise ValidationError("must be non-negative", key='speed_std')
        if self.handover_slots < 1:
            raise ValidationError("must be at least 1 slot", key='handover_slots')
        if not self.dt_durations or any(t < 2 for t in self.dt_durations):
            raise ValidationError("every DT duration needs >= 2 slots (data + feedback)", key='dt_durations')
        if self.fsm_dt_duration < 2:
            raise ValidationError("needs >= 2 slots", key='fsm_dt_duration')
        if not self.power_levels or any(not math.isfinite(p) for p in self.power_levels):
            raise ValidationError("needs at least one finite dBm value", key='power_levels')
        if self.lambda_ < 0 or any(v < 0 for v in self.lambda_grid):
            raise ValidationError("lambda must be >= 0", key='lambda')
        if self.bt_window < 1:
            raise ValidationError("must be >= 1", key='bt_window')
        for name in ('belief_set_size', 'max_iters', 'episodes', 'mobility_trajectories', 'max_episode_slots'):
            if getattr(self, name) < 1:
                raise ValidationError("must be >= 1", key=name)
        if self.mobility_source not in ('chain', 'trajectory'):
            raise ValidationError("must be 'chain' or 'trajectory'", key='mobility_source')
        for name in ('seed', 'mobility_seed'):
            if getattr(self, name) < 0:
                raise ValidationError("must be a non-negative integer", key=name)
        return self


# ──────────────────────────────────────────────────────
# Parsing helpers
# ──────────────────────────────────────────────────────

def _file_key(attribute: str) -> str:
    return ATTRIBUTE_KEYS.get(attribute, attribute)


def _attribute(key: str) -> str:
    normalized = key.strip().lower().replace('-', '_')
    return KEY_ALIASES.get(normalized, normalized)


_FIELD_TYPES: Dict[str, Any] = {f.name: f.type for f in fields(ScenarioConfig)}


def _parse_int(text: str) -> int:
    """Integer, also spelled as a float ('1e6', '3.0') when the value is whole."""
    try:
        return int(text)
    except ValueError:
        value = float(text)
        if not value.is_integer():
            raise ValueError("expected an integer")
        return int(value)


def _parse_value(attribute: str, raw: Optional[str]) -> Any:
    """Parses one raw string according to the field's declared type."""
    kind = _FIELD_TYPES[attribute]
    text = '' if raw is None else str(raw).strip()
    key = _file_key(attribute)

    try:
        if kind in (int, 'int'):
            return _parse_int(text)
        if kind in (float, 'float'):
            return float(text)
        if kind in (str, 'str'):
            if not text:
                raise ValueError("empty value")
            return text
        if kind in (Optional[float], 'Optional[float]'):
            return None if text.lower() in ('', 'none', 'null') else float(text)
        if kind in (Tuple[int, ...], 'Tuple[int, ...]'):
            return tuple(_parse_int(part) for part in _split_list(text))
        if kind in (Tuple[float, ...], 'Tuple[float, ...]'):
            return tuple(float(part) for part in _split_list(text))
    except ValueError as e:
        raise ConfigurationError(key, f"cannot parse '{text}' ({e})")

    raise ConfigurationError(key, f"unsupported field type {kind}")


def _split_list(text: str):
    parts = [part.strip() for part in text.strip('[]()').split(',')]
    return [part for part in parts if part]


def _format_value(value: Any) -> str:
    if value is None:
        return ''
    if isinstance(value, tuple):
        return ','.join(_format_value(v) for v in value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


# ──────────────────────────────────────────────────────
# Public API
# ──────────────────────────────────────────────────────

def apply_overrides(cfg: ScenarioConfig, overrides: Mapping[str, Any]) -> ScenarioConfig:
    """
    Returns a validated copy of cfg with string (or typed) overrides applied.

    Args:
        cfg: base configuration
        overrides: {key: value}; keys accept dashes or underscores

    Raises:
        ConfigurationError: unknown key or unparseable value
        ValidationError: the resulting configuration violates an invariant
    """
    changes = {}
    for key, value in overrides.items():
        attribute = _attribute(key)
        if attribute not in _FIELD_TYPES:
            raise ConfigurationError(key, "unknown configuration key")
        if isinstance(value, str) or value is None:
            changes[attribute] = _parse_value(attribute, value)
        elif isinstance(value, (list, tuple)):
            changes[attribute] = _parse_value(attribute, ','.join(str(v) for v in value))
        else:
            changes[attribute] = _parse_value(attribute, repr(value) if isinstance(value, float) else str(value))
    return replace(cfg, **changes).validate()


def load_config(
    path: str = '',
    overrides: Optional[Mapping[str, Any]] = None,
    echo: bool = False
) -> ScenarioConfig:
    """
    Loads a scenario file on top of the built-in defaults.

    Args:
        path: key=value file; empty string means "defaults only"
        overrides: extra key/value pairs applied after the file (CLI flags)
        echo: print the full effective configuration

    Returns:
        Validated ScenarioConfig

    Raises:
        ConfigurationError: unknown key or unparseable value (names the key)
        ValidationError: invariant violation
    """
    values: Dict[str, Any] = {}

    if path:
        if not os.path.exists(path):
            raise ValidationError(f"Config file not found: {path}")
        raw = dotenv_values(path, interpolate=False)
        values.update(raw)

    if overrides:
        values.update(overrides)

    cfg = apply_overrides(ScenarioConfig(), values)

    if echo:
        print("⚙️  Effective configuration:")
        for key, value in serialize_config(cfg).items():
            print(f"   {key} = {value}")

    return cfg


def serialize_config(cfg: ScenarioConfig) -> Dict[str, str]:
    """Canonical {file key: text} view of every field, in declaration order."""
    return {_file_key(f.name): _format_value(getattr(cfg, f.name)) for f in fields(cfg)}


def dump_config(cfg: ScenarioConfig, path: str) -> str:
    """
    Writes cfg as a reloadable key=value file.

    Returns:
        The written path
    """
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)

    with open(path, 'w', encoding='utf-8') as f:
        f.write("# Scenario configuration (key=value)\n")
        for key, value in serialize_config(cfg).items():
            f.write(f"{key}={value}\n")
    return path
