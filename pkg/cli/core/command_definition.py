"""
CommandDefinition - Data structures for defining subcommands declaratively.

Provides CommandOption and CommandDefinition so that each subcommand's
flags and action live in one small module under cli/commands, separate
from the argument parsing and dispatch logic in the router.
"""

from dataclasses import dataclass, field
from typing import Any, Callable, List, Optional, Sequence, Tuple


@dataclass
class CommandOption:
    """
    Represents a single command-specific flag.

    Attributes:
        flags: Option strings, e.g. ('--policy-file',)
        help: Help text shown by --help
        default: Value when the flag is absent
        type: Callable converting the raw string (argparse semantics)
        choices: Allowed values (optional)
        action: argparse action, e.g. 'store_true'
        metavar: Placeholder shown in usage

    Examples:
        CommandOption(('--policy',), 'Policy to simulate',
                      default='perseus', choices=POLICIES)
        CommandOption(('--trace',), 'Write episode traces (JSON lines)',
                      metavar='JSONL')
    """

    flags: Tuple[str, ...]
    help: str = ""
    default: Any = None
    type: Optional[Callable[[str], Any]] = None
    choices: Optional[Sequence[Any]] = None
    action: Optional[str] = None
    metavar: Optional[str] = None

    def __post_init__(self):
        if not self.flags or not all(flag.startswith('--') for flag in self.flags):
            raise ValueError(f"CommandOption flags must start with '--': {self.flags}")

    @property
    def dest(self) -> str:
        return self.flags[0].lstrip('-').replace('-', '_')

    def parser_kwargs(self) -> dict:
        """Keyword arguments for ArgumentParser.add_argument."""
        kwargs = {'help': self.help, 'dest': self.dest, 'default': self.default}
        if self.action:
            kwargs['action'] = self.action
            return kwargs
        if self.type is not None:
            kwargs['type'] = self.type
        if self.choices is not None:
            kwargs['choices'] = list(self.choices)
        if self.metavar:
            kwargs['metavar'] = self.metavar
        return kwargs


@dataclass
class CommandDefinition:
    """
    Defines a complete subcommand.

    Attributes:
        name: Subcommand name on the command line (e.g. 'dump-kernel')
        title: Header printed when the command starts
        description: One-line help
        action: Function(context) -> ActionResult
        options: Command-specific flags
        default_out: Output file name used when --out is not given
        config_flags: If True, every ScenarioConfig field is exposed as --<field>

    Examples:
        CommandDefinition(
            name='solve',
            title='🧮 SOLVE',
            description='Run PERSEUS for one lambda and write the policy',
            action=action_solve,
            default_out='policy.json'
        )
    """

    name: str
    title: str
    description: str
    action: Callable
    options: List[CommandOption] = field(default_factory=list)
    default_out: str = ""
    config_flags: bool = True

    def __post_init__(self):
        if not self.name:
            raise ValueError("CommandDefinition must have a name")

        if self.action is None:
            raise ValueError(f"CommandDefinition '{self.name}' must have an action")

        dests = [option.dest for option in self.options]
        if len(dests) != len(set(dests)):
            raise ValueError(f"CommandDefinition '{self.name}' has duplicate options")

    def get_option(self, dest: str) -> Optional[CommandOption]:
        for option in self.options:
            if option.dest == dest:
                return option
        return None
