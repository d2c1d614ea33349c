"""
Test suite for SimulationService.

Common random numbers across policies, thread-count independence,
episode traces and the genie episodes against the closed-form bound.
"""

import sys
import os
import math
import shutil
import tempfile

# Add project root to path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

import numpy as np

from models.core.random_streams import STREAM_EPISODES, rng_for
from services import BlockageService, MetricsService, PolicyService, SimulationService
from toy_models import build_small_handler


def test_1_common_ground_truth():
    """Test 1: Episode i sees the same sector and blockage paths under every policy."""
    print("\n" + "="*70)
    print("🧪 Test 1: Common random numbers")
    print("="*70)

    temp_dir = tempfile.mkdtemp(prefix='simulation_test_')
    try:
        handler = build_small_handler(temp_dir)
        env = handler.environment

        first = SimulationService.draw_ground_truth(env, rng_for(4, STREAM_EPISODES, 7))
        second = SimulationService.draw_ground_truth(env, rng_for(4, STREAM_EPISODES, 7))
        assert np.array_equal(first.sectors, second.sectors)
        assert np.array_equal(first.los, second.los)
        assert first.exited and first.los.shape == (2, first.duration)
        assert np.all(np.diff(first.sectors) >= 0), "Forward chain"

        heu = SimulationService.run_episodes(handler.fsm_policy('fsm-heu', 30.0), env, 20, seed=4)
        base = SimulationService.run_episodes(handler.fsm_policy('baseline', 30.0), env, 20, seed=4)
        genie = SimulationService.run_episodes(handler.genie_policy(30.0), env, 20, seed=4)
        assert [r.duration for r in heu] == [r.duration for r in base] == [r.duration for r in genie]
        assert [r.episode for r in heu] == list(range(20))
    finally:
        shutil.rmtree(temp_dir)

    print("\n✅ Test 1 PASSED\n")


def test_2_thread_count_does_not_matter():
    """Test 2: Results are identical and in episode order for any thread count."""
    print("\n" + "="*70)
    print("🧪 Test 2: Threads")
    print("="*70)

    temp_dir = tempfile.mkdtemp(prefix='simulation_test_')
    try:
        handler = build_small_handler(temp_dir)
        policy = handler.fsm_policy('fsm-heu', 30.0)

        serial = SimulationService.run_episodes(policy, handler.environment, 24, seed=9, threads=1)
        pooled = SimulationService.run_episodes(policy, handler.environment, 24, seed=9, threads=4)
        assert [r.to_dict() for r in serial] == [r.to_dict() for r in pooled]
    finally:
        shutil.rmtree(temp_dir)

    print("\n✅ Test 2 PASSED\n")


def test_3_episode_trace():
    """Test 3: Traced steps add up to the episode totals and end on the exit report."""
    print("\n" + "="*70)
    print("🧪 Test 3: Episode trace")
    print("="*70)

    temp_dir = tempfile.mkdtemp(prefix='simulation_test_')
    try:
        handler = build_small_handler(temp_dir)
        policy = handler.fsm_policy('fsm-heu', 30.0)
        record = SimulationService.run_episode(policy, handler.environment, rng_for(4, STREAM_EPISODES, 0), trace=True)
        plain = SimulationService.run_episode(policy, handler.environment, rng_for(4, STREAM_EPISODES, 0))

        assert record.steps, "Trace holds the decision epochs"
        assert record.steps[0].slot == 0 and record.steps[0].state == 'Z1/I1/b11'
        assert record.steps[0].action.startswith('BT')
        assert all(a.slot < b.slot for a, b in zip(record.steps, record.steps[1:]))
        assert record.steps[-1].observation == 'y=exit'
        assert math.isclose(sum(s.bits for s in record.steps), record.total_bits)
        assert math.isclose(record.total_bits, plain.total_bits), "Tracing does not change the episode"
        assert record.steps[0].belief['p_map'] == 1.0

        print(f"\n✅ {len(record.steps)} epochs over {record.duration} slots")
    finally:
        shutil.rmtree(temp_dir)

    print("\n✅ Test 3 PASSED\n")


def test_4_truncation():
    """Test 4: A slot cap below the episode length marks episodes as truncated."""
    print("\n" + "="*70)
    print("🧪 Test 4: Slot cap")
    print("="*70)

    temp_dir = tempfile.mkdtemp(prefix='simulation_test_')
    try:
        handler = build_small_handler(temp_dir, max_episode_slots='50')
        records = SimulationService.run_episodes(handler.fsm_policy('fsm-heu', 30.0), handler.environment, 5, seed=1)
        assert all(r.truncated and r.duration == 50 for r in records)
    finally:
        shutil.rmtree(temp_dir)

    print("\n✅ Test 4 PASSED\n")


def test_5_genie_episodes_meet_bound():
    """Test 5: Simulated genie spectral efficiency sits at the stationary bound."""
    print("\n" + "="*70)
    print("🧪 Test 5: Genie episodes")
    print("="*70)

    temp_dir = tempfile.mkdtemp(prefix='simulation_test_')
    try:
        handler = build_small_handler(temp_dir)
        cfg = handler.cfg
        records = SimulationService.run_episodes(handler.genie_policy(30.0), handler.environment, 300, seed=2)
        point = MetricsService.aggregate(records, 0.0, cfg.bandwidth, cfg.slot_duration, 'genie', 30.0, 30.0, 2)

        pi_b = [BlockageService.steady_state(chain) for chain in handler.blockage]
        snr = handler.budget.gain * 1.0
        bound_se, bound_power = PolicyService.genie_bound(snr, pi_b[0], pi_b[1], cfg.pilot_fraction, cfg.bandwidth, handler.budget.gain)

        # Episodes start with both links in LOS, so blockage is slightly rarer than stationary
        assert abs(point.spectral_eff_bps_hz / bound_se - 1.0) < 0.03
        assert abs(point.avg_power_w / bound_power - 1.0) < 0.03
        print(f"\n✅ SE {point.spectral_eff_bps_hz:.4g} vs bound {bound_se:.4g} bps/Hz")
    finally:
        shutil.rmtree(temp_dir)

    print("\n✅ Test 5 PASSED\n")
