"""
Main application setup and initialization.

This module is responsible for:
- Loading the scenario configuration (file + command-line overrides)
- Creating the artifact client and the ModelHandler
- Setting up the CLI router with every subcommand
"""

import argparse
import sys
from typing import Mapping, Optional, Sequence

import config
from clients import ArtifactClient
from handlers import ModelHandler
from models.core.scenario_config import ScenarioConfig, load_config


# ──────────────────────────────────────────────────────
# Configuration Setup
# ──────────────────────────────────────────────────────

def setup_config(
    path: str = '',
    overrides: Optional[Mapping[str, str]] = None,
    echo: bool = False
) -> ScenarioConfig:
    """
    Loads the scenario.

    Args:
        path: key=value scenario file ('' = config.DEFAULT_CONFIG_PATH, then defaults)
        overrides: {key: raw value} from --<field> flags
        echo: print the effective configuration

    Raises:
        ConfigurationError / ValidationError: bad key or value
    """
    return load_config(path or config.DEFAULT_CONFIG_PATH, overrides, echo=echo)


# ──────────────────────────────────────────────────────
# Model Setup
# ──────────────────────────────────────────────────────

def setup_model(args: argparse.Namespace, overrides: Optional[Mapping[str, str]] = None) -> ModelHandler:
    """
    Creates the ModelHandler for one command.

    Nothing heavy happens here: the sector table, chains and kernel are
    built lazily by whichever command needs them.

    Args:
        args: parsed command line (config, output_dir, mobility_file, quiet)
        overrides: scenario overrides collected by the router

    Returns:
        ModelHandler ready to use
    """
    cfg = setup_config(args.config, overrides, echo=not args.quiet)
    client = ArtifactClient(args.output_dir or config.OUTPUT_DIR)
    return ModelHandler(cfg, client, mobility_file=args.mobility_file, quiet=args.quiet)


# ──────────────────────────────────────────────────────
# CLI Setup
# ──────────────────────────────────────────────────────

def setup_cli():
    """
    Sets up the CLI router with all commands.

    Returns:
        Configured CommandRouter ready to dispatch
    """
    from cli.core import CommandRouter
    from cli.commands import ALL_COMMANDS, CONFIG_HELP

    router = CommandRouter()

    router.context['handler_factory'] = setup_model
    router.context['config_help'] = CONFIG_HELP

    router.register_all(ALL_COMMANDS)

    return router


def run_cli(argv: Optional[Sequence[str]] = None) -> int:
    """
    Main CLI entry point.

    Args:
        argv: arguments without the program name (default: sys.argv[1:])

    Returns:
        Process exit status
    """
    router = setup_cli()
    return router.dispatch(sys.argv[1:] if argv is None else list(argv))
