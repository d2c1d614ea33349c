"""
Test suite for PerseusService.

The fully observed toy model has a closed-form optimal value, so the
point-based solver can be checked against it exactly at the vertex beliefs.
Short horizons are also checked against exhaustive value iteration.
"""

import sys
import os
import math
import shutil
import tempfile
from itertools import product

# Add project root to path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

import numpy as np

from clients.artifact_client import ArtifactClient
from models.collections.alpha_vector_set import AlphaVectorSet
from models.collections.belief_set import BeliefSet
from models.core.errors import PolicyMismatchError, ValidationError
from models.core.random_streams import STREAM_BELIEFS, STREAM_SOLVER, rng_for
from models.entities.alpha_vectors import AlphaVector
from services import PerseusService
from toy_models import EXACT_BAD, EXACT_GOOD, build_noisy_model, build_small_handler, build_toy_model

GOOD = np.array([1.0, 0.0, 0.0])
BAD = np.array([0.0, 1.0, 0.0])


def vertex_beliefs() -> BeliefSet:
    return BeliefSet([GOOD, BAD])


# ────────────────────────────────────────────────────────────
# TESTS - BACKUP
# ────────────────────────────────────────────────────────────

def test_1_single_backup():
    """Test 1: One backup from V = 0 is the best immediate Lagrangian; ties go to action 0."""
    print("\n" + "="*70)
    print("🧪 Test 1: Point backup")
    print("="*70)

    model = build_toy_model()
    zero = AlphaVectorSet.zero(3)

    alpha, value = PerseusService.backup(GOOD, zero, model, weight=0.0)
    assert alpha.action == 0 and value == 1.0
    assert np.array_equal(alpha.values, [1.0, 0.0, 0.0])

    alpha, value = PerseusService.backup(BAD, zero, model, weight=0.0)
    assert alpha.action == 0 and value == 0.0, "Serve and switch tie at 0"

    print("\n✅ Test 1 PASSED\n")


# ────────────────────────────────────────────────────────────
# TESTS - SOLVE
# ────────────────────────────────────────────────────────────

def test_2_matches_exact_values():
    """Test 2: On the vertex beliefs the solver reaches the exact optimal values."""
    print("\n" + "="*70)
    print("🧪 Test 2: Exact value oracle")
    print("="*70)

    model = build_toy_model()
    result = PerseusService.solve(model, vertex_beliefs(), 0.0, 1e-10, 2000, rng_for(1, STREAM_SOLVER))

    assert result.converged
    assert result.final_delta < 1e-10
    assert math.isclose(PerseusService.value_at(GOOD, result.alpha_set), EXACT_GOOD, abs_tol=1e-7)
    assert math.isclose(PerseusService.value_at(BAD, result.alpha_set), EXACT_BAD, abs_tol=1e-7)
    assert PerseusService.extract_action(GOOD, result.alpha_set, model) == 'serve'
    assert PerseusService.extract_action(BAD, result.alpha_set, model) == 'switch'

    print(f"\n✅ {result.iterations} sweeps, V(good) = {EXACT_GOOD:.6f}")
    print("\n✅ Test 2 PASSED\n")


def test_3_monotone_and_bounded():
    """Test 3: V_n never decreases on the set and stays below the fully observed value."""
    print("\n" + "="*70)
    print("🧪 Test 3: Monotone value trace")
    print("="*70)

    model = build_noisy_model()
    beliefs = PerseusService.expand_beliefs(BeliefSet([GOOD]), model, 25, rng_for(1, STREAM_BELIEFS))
    result = PerseusService.solve(model, beliefs, 0.0, 1e-8, 2000, rng_for(1, STREAM_SOLVER))

    trace = result.value_trace
    assert trace.shape == (result.iterations + 1, len(beliefs))
    assert np.all(np.diff(trace, axis=0) >= -1e-12), "Values never decrease"

    upper = beliefs.matrix @ np.array([EXACT_GOOD, EXACT_BAD, 0.0])
    assert np.all(trace[-1] <= upper + 1e-9), "Noisy reports cannot beat full observation"
    assert result.converged

    print(f"\n✅ {len(beliefs)} beliefs, {len(result.alpha_set)} vectors")
    print("\n✅ Test 3 PASSED\n")


def test_4_energy_price():
    """Test 4: A prohibitive energy price leaves the zero value function."""
    print("\n" + "="*70)
    print("🧪 Test 4: Lagrangian weight")
    print("="*70)

    model = build_toy_model(serve_energy=1.0)
    result = PerseusService.solve(model, vertex_beliefs(), 3.0, 1e-9, 50, rng_for(0))
    assert result.converged and result.iterations == 1
    assert np.all(result.alpha_set.value_at(vertex_beliefs().matrix) == 0.0)

    print("\n✅ Test 4 PASSED\n")


def test_5_invalid_inputs():
    """Test 5: Non-positive tolerance and empty belief sets are rejected."""
    print("\n" + "="*70)
    print("🧪 Test 5: Solver input validation")
    print("="*70)

    model = build_toy_model()
    for beliefs, tol in [(vertex_beliefs(), 0.0), (BeliefSet(), 1e-6)]:
        try:
            PerseusService.solve(model, beliefs, 0.0, tol, 10, rng_for(0))
            assert False, "Should raise"
        except ValidationError as e:
            print(f"   ✅ {e}")

    print("\n✅ Test 5 PASSED\n")


# ────────────────────────────────────────────────────────────
# TESTS - BELIEF EXPANSION
# ────────────────────────────────────────────────────────────

def test_6_expansion():
    """Test 6: Expansion stops when no new point exists and never stores exit beliefs."""
    print("\n" + "="*70)
    print("🧪 Test 6: Belief expansion")
    print("="*70)

    start = BeliefSet([GOOD])
    revealing = PerseusService.expand_beliefs(start, build_toy_model(), 10, rng_for(2))
    assert 1 <= len(revealing) <= 2, "Fully observed model only reaches the two vertices"
    assert np.all(np.isin(revealing.matrix, (0.0, 1.0)))
    assert len(start) == 1, "Input set is not modified"

    noisy = PerseusService.expand_beliefs(start, build_noisy_model(), 15, rng_for(2))
    assert len(noisy) == 15
    B = noisy.matrix
    assert np.allclose(B.sum(axis=1), 1.0)
    assert np.all(B[:, 2] == 0.0), "Exit beliefs are never added"

    again = PerseusService.expand_beliefs(start, build_noisy_model(), 15, rng_for(2))
    assert np.array_equal(again.matrix, B), "Same stream, same set"

    print("\n✅ Test 6 PASSED\n")


# ────────────────────────────────────────────────────────────
# TESTS - POLICY FILES
# ────────────────────────────────────────────────────────────

def test_7_policy_files():
    """Test 7: Saved policies reload for the same model and are refused otherwise."""
    print("\n" + "="*70)
    print("🧪 Test 7: Policy files")
    print("="*70)

    temp_dir = tempfile.mkdtemp(prefix='perseus_test_')
    try:
        client = ArtifactClient(temp_dir)
        model = build_toy_model()
        result = PerseusService.solve(model, vertex_beliefs(), 0.0, 1e-9, 2000, rng_for(0))
        PerseusService.save_policy(result.alpha_set, model, client, 'policy.json', {'lambda': 0.0})

        loaded = PerseusService.load_policy(ArtifactClient(temp_dir), 'policy.json', model)
        assert np.array_equal(loaded.matrix, result.alpha_set.matrix)
        assert np.array_equal(loaded.actions, result.alpha_set.actions)
        assert loaded.metadata['lambda'] == 0.0

        try:
            PerseusService.load_policy(client, 'policy.json', build_toy_model(config_hash='other'))
            assert False, "Hash mismatch should raise"
        except PolicyMismatchError as e:
            print(f"   ✅ {e}")

        try:
            PerseusService.load_policy(client, 'missing.json', model)
            assert False, "Missing file should raise"
        except FileNotFoundError as e:
            print(f"   ✅ {e}")
    finally:
        shutil.rmtree(temp_dir)

    print("\n✅ Test 7 PASSED\n")


def test_8_policy_tied_to_sector_chain():
    """Test 8: A policy or belief set made on one sector chain is refused on another."""
    print("\n" + "="*70)
    print("🧪 Test 8: Chain-bound policies")
    print("="*70)

    solved_dir = tempfile.mkdtemp(prefix='perseus_chain_a_')
    other_dir = tempfile.mkdtemp(prefix='perseus_chain_b_')
    try:
        solved = build_small_handler(solved_dir, stay=0.995)
        zero = AlphaVectorSet.zero(solved.model.num_states)
        PerseusService.save_policy(zero, solved.model, solved.client, 'policy.json', {'lambda': 0.0})
        initial = solved.initial_beliefs()
        beliefs = BeliefSet(initial.get_all(), client=solved.client)
        beliefs.metadata = initial.metadata
        beliefs.flush('beliefs.json')

        same = build_small_handler(other_dir, stay=0.995)
        assert same.config_hash == solved.config_hash, "Same scenario, same chain"

        other = build_small_handler(other_dir, stay=0.5)
        assert other.cfg == solved.cfg
        assert other.config_hash != solved.config_hash, "The chain is part of the fingerprint"
        for name in ('policy.json', 'beliefs.json'):
            shutil.copy(os.path.join(solved_dir, name), os.path.join(other_dir, name))

        try:
            other.load_perseus_policy('policy.json')
            assert False, "Policy from another chain should be refused"
        except PolicyMismatchError as e:
            print(f"   ✅ {e}")

        try:
            other.belief_set('beliefs.json')
            assert False, "Beliefs from another chain should be refused"
        except PolicyMismatchError as e:
            print(f"   ✅ {e}")

        reloaded = build_small_handler(other_dir, stay=0.995)
        assert len(reloaded.load_perseus_policy('policy.json').alpha_set) == 1
    finally:
        shutil.rmtree(solved_dir)
        shutil.rmtree(other_dir)

    print("\n✅ Test 8 PASSED\n")


def exhaustive_value_iteration(model, weight, horizon):
    """
    Exact finite-horizon value functions by enumeration: every action paired
    with every assignment of a previous-step vector to each observation.
    """
    joint = model.kernel.joint
    A, N, Y, _ = joint.shape
    lagrangian = model.lagrangian(weight)
    layers = [np.zeros((1, N))]
    for _ in range(horizon):
        Q = layers[-1]
        future = np.einsum('auyv,kv->ayuk', joint, Q)
        candidates = [
            lagrangian[a] + sum(future[a, y, :, k] for y, k in enumerate(choice))
            for a in range(A)
            for choice in product(range(len(Q)), repeat=Y)
        ]
        layers.append(np.unique(np.array(candidates), axis=0))
    return layers


def test_9_backup_matches_exhaustive_iteration():
    """Test 9: Point backups reproduce exhaustive value iteration up to horizon 3."""
    print("\n" + "="*70)
    print("🧪 Test 9: Exhaustive value iteration oracle")
    print("="*70)

    rng = rng_for(3, STREAM_BELIEFS)
    points = np.vstack([
        GOOD, BAD, [0.5, 0.5, 0.0], [0.3, 0.3, 0.4],
        rng.dirichlet(np.ones(3), size=30),
    ])

    for model, weight in [(build_noisy_model(), 0.0), (build_toy_model(serve_energy=0.4), 1.5)]:
        layers = exhaustive_value_iteration(model, weight, 3)
        for n in range(3):
            previous = AlphaVectorSet([AlphaVector(q, 0) for q in layers[n]])
            for belief in points:
                alpha, value = PerseusService.backup(belief, previous, model, weight)
                exact = float(np.max(layers[n + 1] @ belief))
                assert abs(value - exact) < 1e-9, f"horizon {n + 1}: {value} vs {exact}"
                assert abs(alpha.value(belief) - value) < 1e-12
        print(f"   ✅ weight={weight}: {[len(q) for q in layers]} exact vectors per horizon")

    model = build_noisy_model()
    layers = exhaustive_value_iteration(model, 0.0, 3)
    beliefs = BeliefSet(list(points))
    result = PerseusService.solve(model, beliefs, 0.0, 1e-12, 3, rng_for(3, STREAM_SOLVER))
    for n, values in enumerate(result.value_trace):
        exact = np.max(beliefs.matrix @ layers[n].T, axis=1)
        assert np.all(values <= exact + 1e-9), f"Sweep {n} beats the exact horizon-{n} value"
    first = np.max(beliefs.matrix @ layers[1].T, axis=1)
    assert np.any(np.isclose(result.value_trace[1], first, atol=1e-12)), "The first backed-up point is exact"

    print("\n✅ Test 9 PASSED\n")
