"""
Core components for the CLI system.

Building blocks for a subcommand-based command line: declarative command
definitions, a router that parses and dispatches, results and output helpers.
"""

from .colors import Colors
from .action_result import ActionResult, EXIT_OK, EXIT_INVALID, EXIT_RUNTIME, EXIT_INTERRUPTED
from .command_definition import CommandDefinition, CommandOption
from .views import Views
from .router import CommandRouter, CommandLineError

__all__ = [
    'Colors',
    'ActionResult',
    'EXIT_OK',
    'EXIT_INVALID',
    'EXIT_RUNTIME',
    'EXIT_INTERRUPTED',
    'CommandDefinition',
    'CommandOption',
    'Views',
    'CommandRouter',
    'CommandLineError',
]
