"""
CommandRouter - orchestrator for argument parsing and command execution.

The Router manages one CLI invocation:
- Command registration
- Parser construction (common flags, command flags, one flag per config field)
- Handler construction through the context factory
- Exception to exit-code mapping and the run summary
"""

import argparse
import time
from dataclasses import fields
from typing import Any, Callable, Dict, List, Optional, Sequence

import config
from models.core.scenario_config import ATTRIBUTE_KEYS, ScenarioConfig, serialize_config

from .action_result import EXIT_OK, ActionResult
from .colors import Colors
from .command_definition import CommandDefinition
from .views import Views

CONFIG_DEST_PREFIX = 'cfg__'


class CommandLineError(ValueError):
    """Malformed command line (unknown flag, missing subcommand...)."""


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that raises instead of exiting, so errors map to exit code 1."""

    def error(self, message: str):
        raise CommandLineError(f"{self.prog}: {message}")


class CommandRouter:
    """
    Parses the command line and runs exactly one registered command.

    Usage:
        router = CommandRouter()
        router.context['handler_factory'] = setup_model
        router.context['config_help'] = CONFIG_HELP

        router.register_command(solve_command)
        router.register_command(simulate_command)

        exit_code = router.dispatch(sys.argv[1:])

    Attributes:
        commands: Registered commands {name: CommandDefinition}
        context: Shared dictionary handed to every action
        prog: Program name shown in usage lines
    """

    def __init__(self, prog: str = 'mmwave-pomdp'):
        self.commands: Dict[str, CommandDefinition] = {}
        self.context: Dict[str, Any] = {}
        self.prog = prog

    # ──────────────────────────────────────────────────────
    # Command Registration
    # ──────────────────────────────────────────────────────

    def register_command(self, command: CommandDefinition):
        """
        Raises:
            ValueError: If the command name already exists
        """
        if command.name in self.commands:
            raise ValueError(f"Command '{command.name}' is already registered")
        self.commands[command.name] = command

    def get_command(self, name: str) -> Optional[CommandDefinition]:
        return self.commands.get(name)

    # ──────────────────────────────────────────────────────
    # Parser
    # ──────────────────────────────────────────────────────

    def build_parser(self) -> argparse.ArgumentParser:
        parser = _Parser(
            prog=self.prog,
            allow_abbrev=False,
            description='Beam training, data transmission and handover POMDP toolkit for mm-wave vehicular links.'
        )
        subparsers = parser.add_subparsers(dest='command', metavar='COMMAND', parser_class=_Parser)
        subparsers.required = True

        for command in self.commands.values():
            sub = subparsers.add_parser(
                command.name, help=command.description, description=command.description, allow_abbrev=False
            )
            self._add_common_flags(sub, command)
            for option in command.options:
                sub.add_argument(*option.flags, **option.parser_kwargs())
            if command.config_flags:
                self._add_config_flags(sub)
        return parser

    @staticmethod
    def _add_common_flags(parser: argparse.ArgumentParser, command: CommandDefinition):
        group = parser.add_argument_group('run')
        group.add_argument('--config', default=config.DEFAULT_CONFIG_PATH, metavar='PATH',
                           help='Scenario file (key=value); defaults are used for missing keys')
        group.add_argument('--out', default=command.default_out, metavar='PATH',
                           help=f'Output artifact (default: {command.default_out or "none"})')
        group.add_argument('--output-dir', default=config.OUTPUT_DIR, metavar='DIR',
                           help=f'Directory for bare artifact names (default: {config.OUTPUT_DIR})')
        group.add_argument('--mobility-file', default='', metavar='CSV',
                           help='Reuse a sector chain written by estimate-mobility')
        group.add_argument('--threads', type=int, default=1,
                           help='Worker threads for episode batches (default: 1)')
        group.add_argument('--quiet', action='store_true',
                           help='No progress bars or status lines, only the run summary')

    def _add_config_flags(self, parser: argparse.ArgumentParser):
        group = parser.add_argument_group('scenario (every field of the configuration file)')
        defaults = serialize_config(ScenarioConfig())
        descriptions = self.context.get('config_help', {})
        for f in fields(ScenarioConfig):
            key = ATTRIBUTE_KEYS.get(f.name, f.name)
            flags = [f"--{key.replace('_', '-')}"]
            if '_' in key:
                flags.append(f"--{key}")
            description = descriptions.get(key, '')
            group.add_argument(
                *flags,
                dest=CONFIG_DEST_PREFIX + key,
                default=None,
                metavar='VALUE',
                help=f"{description} (default: {defaults[key] or 'unset'})".strip()
            )

    @staticmethod
    def config_overrides(args: argparse.Namespace) -> Dict[str, str]:
        """{config key: raw string} for every scenario flag given on the command line."""
        return {
            dest[len(CONFIG_DEST_PREFIX):]: value
            for dest, value in vars(args).items()
            if dest.startswith(CONFIG_DEST_PREFIX) and value is not None
        }

    # ──────────────────────────────────────────────────────
    # Execution
    # ──────────────────────────────────────────────────────

    def execute(self, command: CommandDefinition, args: argparse.Namespace) -> ActionResult:
        """
        Builds the handler, runs the action and maps exceptions to results.

        ValueError and OSError (bad input, missing files, hash mismatch) give
        exit code 1; RuntimeError (impossible observation, singular system)
        gives exit code 2.
        """
        context = dict(self.context)
        context['args'] = args
        context['command'] = command
        context['router'] = self

        try:
            if command.config_flags and 'handler_factory' in context:
                context['handler'] = context['handler_factory'](args, self.config_overrides(args))
            return command.action(context)
        except KeyboardInterrupt:
            return ActionResult.interrupted()
        except (ValueError, OSError) as e:
            return ActionResult.error(str(e))
        except RuntimeError as e:
            return ActionResult.runtime_error(str(e))

    def dispatch(self, argv: Optional[Sequence[str]] = None) -> int:
        """
        Runs one command line end to end.

        Returns:
            Process exit status
        """
        try:
            args = self.build_parser().parse_args(argv)
        except CommandLineError as e:
            Views.print_error(str(e))
            return ActionResult.error(str(e)).exit_code
        except SystemExit as e:
            # --help
            return e.code if isinstance(e.code, int) else EXIT_OK

        command = self.commands[args.command]
        Views.quiet = args.quiet
        Views.print_header(command.title, command.description)

        started = time.perf_counter()
        result = self.execute(command, args)
        elapsed = time.perf_counter() - started

        self.report(result, elapsed)
        return result.exit_code

    @staticmethod
    def report(result: ActionResult, elapsed: float):
        summary: Dict[str, Any] = dict((result.data or {}).get('summary', {}))
        summary['elapsed [s]'] = round(elapsed, 3)
        Views.print_summary(summary)

        for path in result.artifacts:
            print(f"   {Colors.gray('wrote')} {path}")

        if result.success:
            if result.message:
                Views.print_success(result.message)
        elif result.is_runtime_failure():
            Views.print_warning(result.message or "Run flagged a runtime failure")
        else:
            Views.print_error(result.message or "Command failed")

    # ──────────────────────────────────────────────────────
    # Utilities
    # ──────────────────────────────────────────────────────

    def command_names(self) -> List[str]:
        return list(self.commands)

    def register_all(self, factories: Sequence[Callable[[], CommandDefinition]]):
        for factory in factories:
            self.register_command(factory())

    def __repr__(self) -> str:
        return f"CommandRouter(commands={self.command_names()})"
