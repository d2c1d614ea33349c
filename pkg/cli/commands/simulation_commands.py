"""
Command definitions for Monte-Carlo evaluation and trade-off sweeps.
"""

from cli.core import CommandDefinition, CommandOption
from cli.actions import action_simulate, action_sweep
from services.experiment_service import MODES, POLICIES


def create_simulate_command() -> CommandDefinition:
    return CommandDefinition(
        name='simulate',
        title='🎲 SIMULATE',
        description='Simulate episodes of one policy and write its trade-off point',
        action=action_simulate,
        options=[
            CommandOption(
                flags=('--policy',),
                help='Policy to simulate',
                default='perseus',
                choices=POLICIES
            ),
            CommandOption(
                flags=('--policy-file',),
                help='PERSEUS policy written by solve (default: solve for --lambda now)',
                default='',
                metavar='JSON'
            ),
            CommandOption(
                flags=('--power',),
                help='Transmit power of FSM and genie policies in dBm (default: 30)',
                type=float,
                metavar='DBM'
            ),
            CommandOption(
                flags=('--trace',),
                help='Write per-epoch episode traces as JSON lines',
                default='',
                metavar='JSONL'
            ),
            CommandOption(
                flags=('--plot',),
                help='PNG: first traced episode with --trace, else the trade-off point',
                default='',
                metavar='PNG'
            ),
        ],
        default_out='simulate.csv'
    )


def create_sweep_command() -> CommandDefinition:
    """
    Creates the sweep command.

    PERSEUS runs over lambda_grid, FSM policies and the genie over power_levels.
    """
    return CommandDefinition(
        name='sweep',
        title='📈 SWEEP',
        description='Spectral efficiency versus average power for several policies',
        action=action_sweep,
        options=[
            CommandOption(
                flags=('--policy',),
                help=f"Comma-separated policies (default: {','.join(POLICIES)})",
                default=','.join(POLICIES),
                metavar='LIST'
            ),
            CommandOption(
                flags=('--mode',),
                help='simulate: Monte-Carlo episodes; analytic: linear-system FSM evaluation',
                default='simulate',
                choices=MODES
            ),
            CommandOption(
                flags=('--plot',),
                help='Write the trade-off chart to this PNG',
                default='',
                metavar='PNG'
            ),
        ],
        default_out='sweep.csv'
    )
