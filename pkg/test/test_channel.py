"""
Test suite for ChannelService.

Sector geometry, link budget, SNR model, outage formulas and the
golden-section throughput optimizer.
"""

import sys
import os
import math

# Add project root to path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

import numpy as np

from models.core.scenario_config import ScenarioConfig, apply_overrides
from services import ChannelService, ChartGenerator


def setup_geometry(num_sectors: int = 8):
    cfg = apply_overrides(ScenarioConfig(), {'num_sectors': str(num_sectors)})
    table = ChannelService.build_sector_table(cfg)
    budget = ChannelService.build_link_budget(cfg, table)
    return cfg, table, budget


# ────────────────────────────────────────────────────────────
# TESTS - GEOMETRY
# ────────────────────────────────────────────────────────────

def test_1_sector_table_partitions_coverage():
    """Test 1: Sectors are contiguous and cover [-Theta/2, Theta/2]."""
    print("\n" + "="*70)
    print("🧪 Test 1: Sector table")
    print("="*70)

    cfg, table, _ = setup_geometry(8)
    half = math.radians(cfg.coverage_angle) / 2

    assert table.intervals.shape == (8, 2)
    assert math.isclose(table.intervals[0, 0], -half)
    assert math.isclose(table.intervals[-1, 1], half)
    assert np.allclose(table.intervals[1:, 0], table.intervals[:-1, 1]), "No gaps or overlaps"
    assert np.all(table.intervals[:, 1] > table.intervals[:, 0])
    assert math.isclose(table.road_length, 40.0), "L = 2 D tan(45 deg) = 2 D"
    assert math.isclose(table.sector_length, 5.0)

    # Equal road lengths, so the outer sectors span smaller angles
    widths = table.intervals[:, 1] - table.intervals[:, 0]
    assert widths[0] < widths[3], "Central sectors are angularly wider"
    assert np.allclose(widths, widths[::-1]), "Symmetric around the BS"

    print(f"\n✅ Widths (deg): {np.degrees(widths).round(2)}")
    print("\n✅ Test 1 PASSED\n")


def test_2_sector_lookup():
    """Test 2: Position to sector, including the exit."""
    print("\n" + "="*70)
    print("🧪 Test 2: Position to sector")
    print("="*70)

    _, table, _ = setup_geometry(8)

    assert ChannelService.sector_of_position(0.0, table) == 1
    assert ChannelService.sector_of_position(4.999, table) == 1
    assert ChannelService.sector_of_position(5.0, table) == 2
    assert ChannelService.sector_of_position(39.99, table) == 8
    assert ChannelService.sector_of_position(40.0, table) is None, "Off the road"
    assert ChannelService.sector_of_position(-0.1, table) is None

    positions = np.array([0.0, 7.5, 39.9, 40.0, 55.0])
    assert ChannelService.sector_indices(positions, table).tolist() == [0, 1, 7, 8, 8], "S marks exit"

    center = ChannelService.sector_center_angle(4, table)
    lo, hi = table.interval(4)
    assert lo < center < hi

    labels = ChartGenerator.sector_angle_labels(table)
    assert len(labels) == 8
    assert labels[0] == '-41°' and labels[-1] == '41°', "atan(17.5 / 20) at both road ends"

    print("\n✅ Test 2 PASSED\n")


# ────────────────────────────────────────────────────────────
# TESTS - LINK BUDGET AND SNR
# ────────────────────────────────────────────────────────────

def test_3_link_budget_and_snr():
    """Test 3: Gamma from its closed form and the sectored SNR model."""
    print("\n" + "="*70)
    print("🧪 Test 3: Link budget and SNR")
    print("="*70)

    cfg, table, budget = setup_geometry(8)
    wavelength = 299_792_458.0 / cfg.carrier_freq
    noise = 10 ** ((cfg.noise_psd - 30) / 10) * cfg.bandwidth
    gain = wavelength ** 2 / (8 * math.pi * noise * table.sector_length * cfg.road_distance)

    assert math.isclose(budget.gain, gain, rel_tol=1e-12)
    assert math.isclose(budget.noise_power, noise, rel_tol=1e-12)

    rho = cfg.sidelobe_ratio
    assert ChannelService.snr(1.0, True, True, budget, rho) == budget.gain
    assert math.isclose(ChannelService.snr(1.0, False, True, budget, rho), rho * budget.gain)
    assert math.isclose(ChannelService.snr(1.0, True, False, budget, rho), rho * budget.gain)
    for aligned in (True, False):
        for los in (True, False):
            assert ChannelService.snr(0.0, aligned, los, budget, rho) == 0.0, "Zero power, zero SNR"

    print(f"\n✅ Gamma = {budget.gain:.4g} 1/W")
    print("\n✅ Test 3 PASSED\n")


# ────────────────────────────────────────────────────────────
# TESTS - OUTAGE AND THROUGHPUT
# ────────────────────────────────────────────────────────────

def test_4_outage_and_capacity_are_inverse():
    """Test 4: The eps-outage capacity has outage probability exactly eps."""
    print("\n" + "="*70)
    print("🧪 Test 4: Outage vs eps-outage capacity")
    print("="*70)

    W = 1e8
    for snr in (0.1, 1.0, 100.0):
        for eps in (1e-3, 0.1, 0.5):
            rate = ChannelService.epsilon_outage_capacity(snr, eps, W)
            assert math.isclose(ChannelService.outage_prob(rate, snr, W), eps, rel_tol=1e-9)

    assert ChannelService.outage_prob(0.0, 1.0, W) == 0.0
    assert ChannelService.outage_prob(1e6, 0.0, W) == 1.0, "No SNR, sure outage"

    print("\n✅ Test 4 PASSED\n")


def test_5_optimal_throughput():
    """Test 5: Golden-section optimum dominates a dense grid and grows with SNR."""
    print("\n" + "="*70)
    print("🧪 Test 5: Optimal throughput")
    print("="*70)

    W, kappa = 1e8, 0.01
    previous = 0.0
    for snr in (0.01, 1.0, 10.0, 1e3, 1e5):
        t_star, eps_star = ChannelService.optimal_throughput(snr, kappa, W)
        grid = np.linspace(1e-4, 0.999, 5000)
        best_grid = float(np.max(ChannelService.throughput_at(grid, snr, kappa, W)))

        assert 0.0 < eps_star < 1.0
        assert t_star >= best_grid * (1 - 1e-9), f"snr={snr}: {t_star} < {best_grid}"
        assert math.isclose(t_star, ChannelService.throughput_at(eps_star, snr, kappa, W), rel_tol=1e-9)
        assert t_star > previous, "T* increases with SNR"
        previous = t_star
        print(f"   ✅ snr={snr:g}: T*={t_star:.4g} bit/s at eps*={eps_star:.3g}")

    assert ChannelService.optimal_throughput(0.0, kappa, W) == (0.0, 0.0)

    print("\n✅ Test 5 PASSED\n")
