"""
Command definitions package.

Exports the factories of every subcommand, in the order --help lists them.
"""

from .config_help import CONFIG_HELP
from .mobility_commands import create_estimate_mobility_command
from .model_commands import create_build_model_command, create_dump_kernel_command
from .solver_commands import create_expand_beliefs_command, create_solve_command
from .simulation_commands import create_simulate_command, create_sweep_command

ALL_COMMANDS = [
    create_estimate_mobility_command,
    create_build_model_command,
    create_dump_kernel_command,
    create_expand_beliefs_command,
    create_solve_command,
    create_simulate_command,
    create_sweep_command,
]

__all__ = [
    'CONFIG_HELP',
    'ALL_COMMANDS',
    'create_estimate_mobility_command',
    'create_build_model_command',
    'create_dump_kernel_command',
    'create_expand_beliefs_command',
    'create_solve_command',
    'create_simulate_command',
    'create_sweep_command',
]
