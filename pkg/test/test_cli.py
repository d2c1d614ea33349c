"""
End-to-end tests of the command line: every subcommand, exit codes and
byte-identical reruns.

Each test runs the router in-process against a temporary output directory.
"""

import sys
import os
import json
import shutil
import tempfile

# Add project root to path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from app import run_cli
from cli.core import EXIT_INVALID, EXIT_OK, EXIT_RUNTIME
from clients.artifact_client import ArtifactClient
from models.entities.mobility import MobilityChain
from services import MobilityService
from toy_models import slow_chain

SMALL = [
    '--num-sectors', '3',
    '--power-levels', '30',
    '--dt-durations', '5',
    '--fsm-dt-duration', '5',
    '--belief-set-size', '10',
    '--max-iters', '500',
    '--episodes', '4',
    '--lambda-grid', '0',
]


def setup_workspace():
    """Temp output dir holding a fast three-sector chain as chain.csv."""
    temp_dir = tempfile.mkdtemp(prefix='cli_test_')
    chain = MobilityChain(matrix=slow_chain(3, 0.9), slot_duration=1e-4)
    header, rows = MobilityService.chain_to_rows(chain)
    ArtifactClient(temp_dir).save_csv('chain.csv', header, rows)
    return temp_dir


def run(temp_dir, command, *extra, chain=True):
    argv = [command, '--output-dir', temp_dir, '--quiet', *SMALL, *extra]
    if chain:
        argv += ['--mobility-file', 'chain.csv']
    return run_cli(argv)


def read_bytes(temp_dir, name):
    with open(os.path.join(temp_dir, name), 'rb') as f:
        return f.read()


def read_json(temp_dir, name):
    with open(os.path.join(temp_dir, name), encoding='utf-8') as f:
        return json.load(f)


# ────────────────────────────────────────────────────────────
# TESTS - PARSING AND EXIT CODES
# ────────────────────────────────────────────────────────────

def test_1_command_line_errors():
    """Test 1: Malformed command lines and invalid values exit with 1; --help with 0."""
    print("\n" + "="*70)
    print("🧪 Test 1: Command-line errors")
    print("="*70)

    temp_dir = setup_workspace()
    try:
        assert run_cli([]) == EXIT_INVALID, "Missing subcommand"
        assert run_cli(['teleport']) == EXIT_INVALID, "Unknown subcommand"
        assert run_cli(['--help']) == EXIT_OK
        assert run_cli(['solve', '--help']) == EXIT_OK
        assert run(temp_dir, 'build-model', '--no-such-flag') == EXIT_INVALID
        assert run(temp_dir, 'build-model', '--num-sectors', '1') == EXIT_INVALID, "Invalid config value"
        assert run(temp_dir, 'build-model', '--config', '/missing/scenario.env') == EXIT_INVALID
        assert run(temp_dir, 'simulate', '--policy', 'perseus', '--policy-file', 'missing.json') == EXIT_INVALID
        assert run(temp_dir, 'simulate', '--policy', 'genie', '--policy-file', 'x.json') == EXIT_INVALID
        assert run(temp_dir, 'sweep', '--policy', 'genie,random') == EXIT_INVALID
    finally:
        shutil.rmtree(temp_dir)

    print("\n✅ Test 1 PASSED\n")


def test_2_snake_case_flags():
    """Test 2: Scenario fields are accepted with dashes or underscores."""
    print("\n" + "="*70)
    print("🧪 Test 2: Flag spellings")
    print("="*70)

    temp_dir = setup_workspace()
    try:
        assert run(temp_dir, 'build-model', '--sidelobe_ratio', '0.05', '--out', 'a.json') == EXIT_OK
        assert run(temp_dir, 'build-model', '--sidelobe-ratio', '0.05', '--out', 'b.json') == EXIT_OK
        assert read_bytes(temp_dir, 'a.json') == read_bytes(temp_dir, 'b.json')
    finally:
        shutil.rmtree(temp_dir)

    print("\n✅ Test 2 PASSED\n")


# ────────────────────────────────────────────────────────────
# TESTS - COMMANDS
# ────────────────────────────────────────────────────────────

def test_3_estimate_mobility():
    """Test 3: estimate-mobility writes a stochastic chain plus its sidecar."""
    print("\n" + "="*70)
    print("🧪 Test 3: estimate-mobility")
    print("="*70)

    temp_dir = setup_workspace()
    try:
        code = run(temp_dir, 'estimate-mobility', '--mobility-trajectories', '3',
                   '--out', 'estimated.csv', chain=False)
        assert code == EXIT_OK

        header, rows = ArtifactClient(temp_dir).load_csv('estimated.csv')
        chain = MobilityService.chain_from_rows(header, rows, 1e-4)
        assert chain.num_sectors == 3
        meta = read_json(temp_dir, 'estimated.meta.json')
        assert meta['mobility_seed'] == 0 and meta['trajectories'] == 3
        assert len(meta['config_hash']) == 16

        # The estimated chain feeds later commands
        assert run(temp_dir, 'build-model', '--mobility-file', 'estimated.csv', chain=False) == EXIT_OK
    finally:
        shutil.rmtree(temp_dir)

    print("\n✅ Test 3 PASSED\n")


def test_4_build_model_and_dump_kernel():
    """Test 4: Model summary and per-action kernel CSVs."""
    print("\n" + "="*70)
    print("🧪 Test 4: build-model and dump-kernel")
    print("="*70)

    temp_dir = setup_workspace()
    try:
        assert run(temp_dir, 'build-model') == EXIT_OK
        document = read_json(temp_dir, 'model.json')
        assert document['num_states'] == 25 and document['num_observations'] == 5
        assert document['num_actions'] == len(document['actions']) == 5, "HO, one BT, three DT"
        assert document['kernel_error'] < 1e-9
        assert document['states'][-1] == 'exit'

        assert run(temp_dir, 'dump-kernel', '--actions', '0,4') == EXIT_OK
        index = read_json(temp_dir, os.path.join('kernel', 'index.json'))
        assert [entry['action'] for entry in index['files']] == [0, 4]
        assert index['files'][0]['label'] == 'HO'
        header, rows = ArtifactClient(temp_dir).load_csv(os.path.join(temp_dir, 'kernel', 'kernel_000.csv'))
        assert header == ['state', 'observation', 'next_state', 'probability']
        assert rows

        assert run(temp_dir, 'dump-kernel', '--actions', '9') == EXIT_INVALID, "Out of range"
    finally:
        shutil.rmtree(temp_dir)

    print("\n✅ Test 4 PASSED\n")


def test_5_solve_and_simulate():
    """Test 5: expand-beliefs, solve, then simulate the stored policy; other configs are refused."""
    print("\n" + "="*70)
    print("🧪 Test 5: solve and simulate")
    print("="*70)

    temp_dir = setup_workspace()
    try:
        assert run(temp_dir, 'expand-beliefs') == EXIT_OK
        beliefs = read_json(temp_dir, 'beliefs.json')
        assert 1 <= len(beliefs['beliefs']) <= 10

        code = run(temp_dir, 'solve', '--beliefs', 'beliefs.json', '--lambda', '0')
        assert code in (EXIT_OK, EXIT_RUNTIME), "Non-convergence still writes the policy"
        policy = read_json(temp_dir, 'policy.json')
        assert policy['converged'] == (code == EXIT_OK)
        assert policy['lambda'] == 0.0
        assert len(policy['vectors']) == len(policy['action_indices']) >= 1

        code = run(temp_dir, 'simulate', '--policy-file', 'policy.json', '--trace', 'trace.jsonl')
        assert code == EXIT_OK
        _, rows = ArtifactClient(temp_dir).load_csv('simulate.csv')
        assert len(rows) == 1 and rows[0][0] == 'perseus'
        with open(os.path.join(temp_dir, 'trace.jsonl'), encoding='utf-8') as f:
            records = [json.loads(line) for line in f]
        assert [r['episode'] for r in records] == [0, 1, 2, 3]
        assert all(r['config_hash'] == policy['config_hash'] for r in records)

        # A different sidelobe ratio changes the config hash
        code = run(temp_dir, 'simulate', '--policy-file', 'policy.json', '--sidelobe-ratio', '0.05')
        assert code == EXIT_INVALID

        for name in ('fsm-heu', 'baseline', 'genie'):
            assert run(temp_dir, 'simulate', '--policy', name, '--power', '30', '--out', f'{name}.csv') == EXIT_OK
    finally:
        shutil.rmtree(temp_dir)

    print("\n✅ Test 5 PASSED\n")


def test_6_sweeps_are_reproducible():
    """Test 6: Rerunning a sweep reproduces the CSV byte for byte."""
    print("\n" + "="*70)
    print("🧪 Test 6: Reproducible sweeps")
    print("="*70)

    temp_dir = setup_workspace()
    try:
        for mode in ('analytic', 'simulate'):
            for out in (f'{mode}_a.csv', f'{mode}_b.csv'):
                code = run(temp_dir, 'sweep', '--policy', 'fsm-heu,baseline,genie', '--mode', mode, '--out', out)
                assert code == EXIT_OK
            assert read_bytes(temp_dir, f'{mode}_a.csv') == read_bytes(temp_dir, f'{mode}_b.csv')

        _, rows = ArtifactClient(temp_dir).load_csv('simulate_a.csv')
        assert [row[0] for row in rows] == ['fsm-heu', 'baseline', 'genie']
        meta = read_json(temp_dir, 'simulate_a.meta.json')
        assert meta['mode'] == 'simulate' and meta['config']['num_sectors'] == '3'
    finally:
        shutil.rmtree(temp_dir)

    print("\n✅ Test 6 PASSED\n")


def test_7_plots():
    """Test 7: --plot writes the episode trace or the trade-off chart."""
    print("\n" + "="*70)
    print("🧪 Test 7: Charts")
    print("="*70)

    temp_dir = setup_workspace()
    try:
        code = run(temp_dir, 'simulate', '--policy', 'fsm-heu', '--trace', 'fsm.jsonl', '--plot', 'episode.png')
        assert code == EXIT_OK
        code = run(temp_dir, 'sweep', '--policy', 'baseline,genie', '--mode', 'analytic', '--plot', 'tradeoff.png')
        assert code == EXIT_OK

        for name in ('episode.png', 'tradeoff.png'):
            assert read_bytes(temp_dir, name).startswith(b'\x89PNG'), f"{name} is a PNG"
    finally:
        shutil.rmtree(temp_dir)

    print("\n✅ Test 7 PASSED\n")
