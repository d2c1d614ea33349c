"""
Command definition for mobility estimation.
"""

from cli.core import CommandDefinition
from cli.actions import action_estimate_mobility


def create_estimate_mobility_command() -> CommandDefinition:
    return CommandDefinition(
        name='estimate-mobility',
        title='🚗 ESTIMATE MOBILITY',
        description='Estimate the sector transition matrix from Gauss-Markov trajectories',
        action=action_estimate_mobility,
        default_out='mobility_chain.csv'
    )
