"""
Command definitions for the point-based solver.
"""

from cli.core import CommandDefinition, CommandOption
from cli.actions import action_expand_beliefs, action_solve


def create_expand_beliefs_command() -> CommandDefinition:
    return CommandDefinition(
        name='expand-beliefs',
        title='🔭 EXPAND BELIEFS',
        description='Grow the reachable belief set used by the solver',
        action=action_expand_beliefs,
        default_out='beliefs.json'
    )


def create_solve_command() -> CommandDefinition:
    """
    Creates the solve command.

    The trade-off weight comes from the --lambda scenario flag.
    """
    return CommandDefinition(
        name='solve',
        title='🧮 SOLVE',
        description='Run PERSEUS for one lambda and write the policy JSON',
        action=action_solve,
        options=[
            CommandOption(
                flags=('--beliefs',),
                help='Belief set written by expand-beliefs (default: expand now)',
                default='',
                metavar='JSON'
            ),
        ],
        default_out='policy.json'
    )
