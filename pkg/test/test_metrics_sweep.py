"""
Test suite for MetricsService and ExperimentService.

Ends with the policy ordering on a reduced three-sector scenario: every
policy runs the same episodes at one transmit power.
"""

import sys
import os
import math
import shutil
import tempfile

# Add project root to path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from models.core.errors import ValidationError
from models.entities.records import EpisodeRecord, TradeoffPoint
from services import ExperimentService, MetricsService, SimulationService
from toy_models import build_small_handler


def make_records():
    return [
        EpisodeRecord(policy='p', episode=0, total_bits=2e6, total_energy=0.2, duration=1000),
        EpisodeRecord(policy='p', episode=1, total_bits=6e6, total_energy=0.2, duration=3000),
    ]


# ────────────────────────────────────────────────────────────
# TESTS - METRICS
# ────────────────────────────────────────────────────────────

def test_1_littles_theorem_aggregation():
    """Test 1: Ratios of sums, not means of ratios."""
    print("\n" + "="*70)
    print("🧪 Test 1: Aggregation")
    print("="*70)

    point = MetricsService.aggregate(make_records(), 1e6, 1e8, 1e-4, 'p', 3.0, 20.0, 5)

    # 8e6 bits and 0.4 J over 0.4 s
    assert math.isclose(point.spectral_eff_bps_hz, 2e7 / 1e8)
    assert math.isclose(point.avg_power_w, 1.0)
    assert math.isclose(point.objective, 0.2 - 1e6 * 1.0 / 1e8)
    assert point.episodes == 2 and point.seed == 5 and point.grid_value == 3.0
    assert math.isclose(point.ci_se, 0.0, abs_tol=1e-9), "Both episodes run at 2e7 bit/s"
    assert point.ci_power > 0.0
    assert point.to_row()[0] == 'p' and len(point.to_row()) == len(TradeoffPoint.CSV_HEADER)

    try:
        MetricsService.aggregate(make_records()[:1], 0.0, 1e8, 1e-4, 'p', 0.0, None, 0)
        assert False, "One episode is not enough"
    except ValidationError as e:
        print(f"   ✅ {e}")

    print("\n✅ Test 1 PASSED\n")


def test_2_analytic_point():
    """Test 2: Expected totals map to the same per-second quantities."""
    print("\n" + "="*70)
    print("🧪 Test 2: Analytic point")
    print("="*70)

    point = MetricsService.analytic_point(4e6, 0.2, 2000, 0.0, 1e8, 1e-4, 'fsm-heu', 30.0, 30.0, 1)
    assert math.isclose(point.spectral_eff_bps_hz, 0.2)
    assert math.isclose(point.avg_power_w, 1.0)
    assert point.ci_se == point.ci_power == 0.0 and point.episodes == 0

    empty = MetricsService.analytic_point(0.0, 0.0, 0.0, 0.0, 1e8, 1e-4, 'x', 0.0, None, 1)
    assert empty.spectral_eff_bps_hz == 0.0

    print("\n✅ Test 2 PASSED\n")


# ────────────────────────────────────────────────────────────
# TESTS - SWEEPS
# ────────────────────────────────────────────────────────────

def test_3_analytic_sweep():
    """Test 3: One point per power level for FSM policies and the genie."""
    print("\n" + "="*70)
    print("🧪 Test 3: Analytic sweep")
    print("="*70)

    temp_dir = tempfile.mkdtemp(prefix='sweep_test_')
    try:
        handler = build_small_handler(temp_dir, power_levels='20,30')
        report = ExperimentService.sweep(handler, ['fsm-heu', 'baseline', 'genie'], mode='analytic')

        assert [p.policy for p in report.points] == ['fsm-heu'] * 2 + ['baseline'] * 2 + ['genie'] * 2
        assert [p.grid_value for p in report.points] == [20.0, 30.0] * 3
        assert report.unconverged == [] and report.aborted == 0

        by_key = {(p.policy, p.grid_value): p for p in report.points}
        for power in (20.0, 30.0):
            genie = by_key[('genie', power)].spectral_eff_bps_hz
            for name in ('fsm-heu', 'baseline'):
                assert by_key[(name, power)].spectral_eff_bps_hz < genie, "Genie is an upper bound"
            assert by_key[('fsm-heu', power)].spectral_eff_bps_hz > by_key[('baseline', power)].spectral_eff_bps_hz
        assert by_key[('genie', 30.0)].avg_power_w > by_key[('genie', 20.0)].avg_power_w
    finally:
        shutil.rmtree(temp_dir)

    print("\n✅ Test 3 PASSED\n")


def test_4_simulated_sweep_is_reproducible():
    """Test 4: PERSEUS and FSM sweeps give identical points on a rerun."""
    print("\n" + "="*70)
    print("🧪 Test 4: Simulated sweep")
    print("="*70)

    temp_dir = tempfile.mkdtemp(prefix='sweep_test_')
    try:
        runs = []
        for _ in range(2):
            handler = build_small_handler(temp_dir, episodes='20')
            report = ExperimentService.sweep(handler, ['perseus', 'fsm-heu'])
            runs.append([p.to_row() for p in report.points])

        assert runs[0] == runs[1]
        policies = [row[0] for row in runs[0]]
        assert policies == ['perseus', 'perseus', 'fsm-heu']
        assert [row[1] for row in runs[0][:2]] == [0.0, 10.0], "One point per lambda"
        assert runs[0][0][2] is None, "PERSEUS mixes powers"
        assert runs[0][0][4] > 0.0
    finally:
        shutil.rmtree(temp_dir)

    print("\n✅ Test 4 PASSED\n")


def test_5_unknown_names():
    """Test 5: Unknown policies and modes are input errors."""
    print("\n" + "="*70)
    print("🧪 Test 5: Sweep validation")
    print("="*70)

    temp_dir = tempfile.mkdtemp(prefix='sweep_test_')
    try:
        handler = build_small_handler(temp_dir)
        for policies, mode in [(['random'], 'simulate'), (['genie'], 'exact')]:
            try:
                ExperimentService.sweep(handler, policies, mode=mode)
                assert False, "Should raise"
            except ValueError as e:
                print(f"   ✅ {e}")
    finally:
        shutil.rmtree(temp_dir)

    print("\n✅ Test 5 PASSED\n")


# ────────────────────────────────────────────────────────────
# TESTS - POLICY ORDERING
# ────────────────────────────────────────────────────────────

def test_6_policy_ordering_at_one_power():
    """Test 6: Genie >= PERSEUS >= FSM-HEU >= baseline at 30 dBm, with the expected gaps."""
    print("\n" + "="*70)
    print("🧪 Test 6: Policy ordering")
    print("="*70)

    temp_dir = tempfile.mkdtemp(prefix='sweep_test_')
    try:
        handler = build_small_handler(
            temp_dir, stay=0.999, dt_durations='5,40', fsm_dt_duration='10',
            blockage_p10='0.0005', blockage_p01='0.002', belief_set_size='60', max_iters='300'
        )
        cfg = handler.cfg
        solved = handler.solve(0.0)

        policies = {
            'genie': handler.genie_policy(30.0),
            'perseus': handler.perseus_policy(solved.alpha_set),
            'fsm-heu': handler.fsm_policy('fsm-heu', 30.0),
            'baseline': handler.fsm_policy('baseline', 30.0),
        }
        points = {}
        for name, policy in policies.items():
            records = SimulationService.run_episodes(policy, handler.environment, 200, seed=cfg.seed)
            assert not any(r.aborted or r.truncated for r in records), f"{name} lost episodes"
            points[name] = MetricsService.aggregate(
                records, 0.0, cfg.bandwidth, cfg.slot_duration, name, 0.0, 30.0, cfg.seed
            )
            print(f"   {name:>9}: SE {points[name].spectral_eff_bps_hz:.4f} ± {points[name].ci_se:.4f} bps/Hz")

        se = {name: p.spectral_eff_bps_hz for name, p in points.items()}
        ci = {name: p.ci_se for name, p in points.items()}
        order = ['genie', 'perseus', 'fsm-heu', 'baseline']
        for upper, lower in zip(order, order[1:]):
            assert se[upper] + ci[upper] + ci[lower] >= se[lower], f"{lower} beats {upper} beyond the 95% intervals"

        assert se['fsm-heu'] >= 1.15 * se['baseline'], "Repeating DT on ACK saves the retraining"
        assert se['perseus'] >= 1.20 * se['baseline']
        assert se['perseus'] >= 0.85 * se['genie'], "PERSEUS stays close to the genie"
    finally:
        shutil.rmtree(temp_dir)

    print("\n✅ Test 6 PASSED\n")
