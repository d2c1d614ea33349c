"""
Command definitions for building and exporting the POMDP.
"""

from cli.core import CommandDefinition, CommandOption
from cli.actions import action_build_model, action_dump_kernel


def create_build_model_command() -> CommandDefinition:
    """
    Creates the build-model command.

    Returns:
        CommandDefinition writing a model summary JSON
    """
    return CommandDefinition(
        name='build-model',
        title='📡 BUILD MODEL',
        description='Assemble the POMDP and write its labels, sizes and kernel check',
        action=action_build_model,
        default_out='model.json'
    )


def create_dump_kernel_command() -> CommandDefinition:
    return CommandDefinition(
        name='dump-kernel',
        title='🗂️  DUMP KERNEL',
        description='Write the transition-observation kernel as one CSV per action',
        action=action_dump_kernel,
        options=[
            CommandOption(
                flags=('--actions',),
                help='Comma-separated action indices (default: all)',
                default='',
                metavar='LIST'
            ),
        ],
        default_out='kernel'
    )
