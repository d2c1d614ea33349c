"""
Test suite for the scenario configuration, units, stable hashes and RNG streams.

Covers default values, key=value file round trips, override parsing,
validation errors naming the offending key, and the config fingerprint.
"""

import sys
import os
import math
import shutil
import tempfile

# Add project root to path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

import numpy as np

from clients.id_processors import config_hash, generate_stable_id
from models.core.errors import ConfigurationError, ValidationError
from models.core.random_streams import STREAM_EPISODES, rng_for
from models.core.scenario_config import (
    ScenarioConfig,
    apply_overrides,
    dump_config,
    load_config,
    serialize_config,
)
from models.core.units import dbm_to_watt, watt_to_dbm


# ────────────────────────────────────────────────────────────
# TESTS - DEFAULTS AND FILES
# ────────────────────────────────────────────────────────────

def test_1_defaults():
    """Test 1: Defaults describe the reference highway scenario."""
    print("\n" + "="*70)
    print("🧪 Test 1: Default scenario")
    print("="*70)

    cfg = load_config()

    assert cfg.num_antennas == 128
    assert cfg.coverage_angle == 90.0
    assert cfg.slot_duration == 1e-4
    assert cfg.road_distance == 20.0
    assert cfg.bandwidth == 1e8
    assert cfg.carrier_freq == 30e9
    assert cfg.noise_psd == -163.0
    assert cfg.pilot_fraction == 0.01
    assert cfg.handover_slots == 1
    assert cfg.blockage_bs1 == (1.25e-4, 5e-4)
    assert cfg.blockage_bs2 == cfg.blockage_bs1, "BS 2 copies BS 1 unless overridden"
    assert (cfg.speed_mean, cfg.speed_std, cfg.memory) == (30.0, 10.0, 0.2)
    assert math.isclose(math.exp(-cfg.bt_threshold), 0.01), "1% noise-only false alarm"

    print(f"\n✅ {len(serialize_config(cfg))} keys with defaults")
    print("\n✅ Test 1 PASSED\n")


def test_2_file_round_trip():
    """Test 2: dump_config writes a file load_config reads back identically."""
    print("\n" + "="*70)
    print("🧪 Test 2: key=value round trip")
    print("="*70)

    temp_dir = tempfile.mkdtemp(prefix='scenario_test_')
    try:
        cfg = apply_overrides(ScenarioConfig(), {
            'num_sectors': '5',
            'power_levels': '10,20',
            'lambda': '2.5',
            'blockage_p10_bs2': '0.001',
        })
        path = dump_config(cfg, os.path.join(temp_dir, 'scenario.env'))
        loaded = load_config(path)

        assert loaded == cfg, "Reloaded config should equal the dumped one"
        assert loaded.power_levels == (10.0, 20.0)
        assert loaded.lambda_ == 2.5
        assert loaded.blockage_bs2 == (0.001, cfg.blockage_p01)
        print(f"\n✅ Round trip through {path}")
    finally:
        shutil.rmtree(temp_dir)

    print("\n✅ Test 2 PASSED\n")


def test_3_comments_and_overrides():
    """Test 3: Comments are skipped and overrides win over the file."""
    print("\n" + "="*70)
    print("🧪 Test 3: Comments and CLI overrides")
    print("="*70)

    temp_dir = tempfile.mkdtemp(prefix='scenario_test_')
    try:
        path = os.path.join(temp_dir, 'scenario.env')
        with open(path, 'w', encoding='utf-8') as f:
            f.write("# smaller scenario\n\nnum_sectors=4\nepisodes=20\n")

        cfg = load_config(path, overrides={'episodes': '50', 'num-sectors': '6'})
        assert cfg.num_sectors == 6, "Dashes are accepted in override keys"
        assert cfg.episodes == 50
        print("\n✅ Overrides applied on top of the file")
    finally:
        shutil.rmtree(temp_dir)

    print("\n✅ Test 3 PASSED\n")


def test_4_errors_name_the_key():
    """Test 4: Unknown keys, bad values and invariant violations name the key."""
    print("\n" + "="*70)
    print("🧪 Test 4: Configuration errors")
    print("="*70)

    try:
        apply_overrides(ScenarioConfig(), {'num_sectorz': '4'})
        assert False, "Unknown key should raise"
    except ConfigurationError as e:
        assert e.key == 'num_sectorz'
        print(f"   ✅ {e}")

    try:
        apply_overrides(ScenarioConfig(), {'bandwidth': 'wide'})
        assert False, "Unparseable value should raise"
    except ConfigurationError as e:
        assert e.key == 'bandwidth'
        print(f"   ✅ {e}")

    for key, value in [('num_sectors', '2.7'), ('handover_slots', '1.9'),
                       ('dt_durations', '10,20.5'), ('episodes', '1e-1')]:
        try:
            apply_overrides(ScenarioConfig(), {key: value})
            assert False, f"{key}={value} is not an integer"
        except ConfigurationError as e:
            assert e.key == key
            print(f"   ✅ {e}")

    whole = apply_overrides(ScenarioConfig(), {'episodes': '1e3', 'num_sectors': '4.0', 'dt_durations': '10,20.0'})
    assert whole.episodes == 1000 and whole.num_sectors == 4 and whole.dt_durations == (10, 20)

    for key, value in [('blockage_p10', '1.5'), ('num_sectors', '1'),
                       ('pilot_fraction', '0'), ('dt_durations', '1,10'),
                       ('mobility_source', 'teleport')]:
        try:
            apply_overrides(ScenarioConfig(), {key: value})
            assert False, f"{key}={value} should be rejected"
        except ValidationError as e:
            assert e.key == key, f"Expected key {key}, got {e.key}"
            print(f"   ✅ {e}")

    try:
        load_config('/definitely/missing/scenario.env')
        assert False, "Missing file should raise"
    except ValueError as e:
        print(f"   ✅ {e}")

    print("\n✅ Test 4 PASSED\n")


# ────────────────────────────────────────────────────────────
# TESTS - HASHES, STREAMS, UNITS
# ────────────────────────────────────────────────────────────

def test_5_config_hash():
    """Test 5: The fingerprint ignores run-control keys only and follows the sector chain."""
    print("\n" + "="*70)
    print("🧪 Test 5: Config hash")
    print("="*70)

    base = ScenarioConfig()
    h = config_hash(base)
    assert len(h) == 16 and int(h, 16) >= 0, "16 hex digits"
    assert h == config_hash(ScenarioConfig()), "Stable across instances"

    same = apply_overrides(base, {'seed': '9', 'episodes': '3', 'lambda': '100', 'max_iters': '2'})
    assert config_hash(same) == h, "Run-control keys must not change the hash"

    for key, value in [('num_sectors', '4'), ('sidelobe_ratio', '0.05'), ('mobility_seed', '3')]:
        assert config_hash(apply_overrides(base, {key: value})) != h, f"{key} must change the hash"

    slow = np.array([[0.9, 0.1], [0.0, 1.0]])
    assert config_hash(base, slow) != h, "A sector chain joins the fingerprint"
    assert config_hash(base, slow) == config_hash(base, slow.copy())
    assert config_hash(base, slow) != config_hash(base, np.array([[0.5, 0.5], [0.0, 1.0]]))

    assert generate_stable_id('x', 'a') != generate_stable_id('x', 'b')
    print(f"\n✅ hash = {h}")
    print("\n✅ Test 5 PASSED\n")


def test_6_random_streams():
    """Test 6: Streams are reproducible and independent of each other."""
    print("\n" + "="*70)
    print("🧪 Test 6: Random streams")
    print("="*70)

    a = rng_for(7, STREAM_EPISODES, 3).random(5)
    b = rng_for(7, STREAM_EPISODES, 3).random(5)
    c = rng_for(7, STREAM_EPISODES, 4).random(5)
    d = rng_for(8, STREAM_EPISODES, 3).random(5)

    assert np.array_equal(a, b), "Same stream, same numbers"
    assert not np.array_equal(a, c), "Different episode, different numbers"
    assert not np.array_equal(a, d), "Different seed, different numbers"

    print("\n✅ Test 6 PASSED\n")


def test_7_units():
    """Test 7: dBm/W conversions."""
    print("\n" + "="*70)
    print("🧪 Test 7: Unit conversions")
    print("="*70)

    assert math.isclose(dbm_to_watt(30.0), 1.0)
    assert math.isclose(dbm_to_watt(0.0), 1e-3)
    assert math.isclose(watt_to_dbm(1.0), 30.0)
    assert watt_to_dbm(0.0) == -math.inf, "0 W maps to -inf dBm"
    assert np.allclose(watt_to_dbm(dbm_to_watt(np.array([-10.0, 0.0, 40.0]))), [-10.0, 0.0, 40.0])

    print("\n✅ Test 7 PASSED\n")
