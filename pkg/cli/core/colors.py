"""
Color system for CLI output with cross-platform support.

Uses colorama when installed, falls back to ANSI codes on terminals that
support them, and to plain text otherwise (pipes, redirected logs, NO_COLOR).
"""

import os
import sys
from typing import Dict

# ──────────────────────────────────────────────────────
# Attempt to import colorama (cross-platform solution)
# ──────────────────────────────────────────────────────
try:
    from colorama import Fore, Style, init as colorama_init
    colorama_init()
    USE_COLORAMA = True
except ImportError:
    USE_COLORAMA = False

USE_COLORS = sys.stdout.isatty() and 'NO_COLOR' not in os.environ

if USE_COLORAMA:
    _CODES: Dict[str, str] = {
        'red': Fore.RED, 'green': Fore.GREEN, 'yellow': Fore.YELLOW,
        'blue': Fore.BLUE, 'magenta': Fore.MAGENTA, 'cyan': Fore.CYAN,
        'gray': Fore.LIGHTBLACK_EX, 'bold': Style.BRIGHT, 'reset': Style.RESET_ALL,
    }
else:
    _CODES = {
        'red': '\033[91m', 'green': '\033[92m', 'yellow': '\033[93m',
        'blue': '\033[94m', 'magenta': '\033[95m', 'cyan': '\033[96m',
        'gray': '\033[90m', 'bold': '\033[1m', 'reset': '\033[0m',
    }


class Colors:
    """
    Utilities for coloring terminal text.

    Colors are switched off automatically when stdout is not a terminal;
    ``Colors.disable()`` forces plain output (``--quiet`` runs, tests).

    Usage:
        print(Colors.red("Error"))
        print(Colors.bold(Colors.blue("Title")))
        print(Colors.policy("fsm-heu"))
    """

    enabled = USE_COLORS

    POLICY_COLORS = {
        'genie': 'blue',
        'perseus': 'magenta',
        'fsm-heu': 'yellow',
        'baseline': 'red',
    }

    @classmethod
    def _wrap(cls, code: str, text: str) -> str:
        if not cls.enabled:
            return str(text)
        return f"{_CODES[code]}{text}{_CODES['reset']}"

    @classmethod
    def disable(cls) -> None:
        cls.enabled = False

    @classmethod
    def enable(cls) -> None:
        cls.enabled = True

    # ──────────────────────────────────────────────────────
    # Basic Colors
    # ──────────────────────────────────────────────────────

    @classmethod
    def red(cls, text: str) -> str:
        return cls._wrap('red', text)

    @classmethod
    def green(cls, text: str) -> str:
        return cls._wrap('green', text)

    @classmethod
    def yellow(cls, text: str) -> str:
        return cls._wrap('yellow', text)

    @classmethod
    def blue(cls, text: str) -> str:
        return cls._wrap('blue', text)

    @classmethod
    def magenta(cls, text: str) -> str:
        return cls._wrap('magenta', text)

    @classmethod
    def cyan(cls, text: str) -> str:
        return cls._wrap('cyan', text)

    @classmethod
    def gray(cls, text: str) -> str:
        return cls._wrap('gray', text)

    @classmethod
    def bold(cls, text: str) -> str:
        return cls._wrap('bold', text)

    # ──────────────────────────────────────────────────────
    # Semantic Combinations
    # ──────────────────────────────────────────────────────

    @classmethod
    def success(cls, text: str) -> str:
        """Green + bold."""
        return cls.bold(cls.green(text))

    @classmethod
    def error(cls, text: str) -> str:
        """Red + bold."""
        return cls.bold(cls.red(text))

    @classmethod
    def warning(cls, text: str) -> str:
        return cls.yellow(text)

    @classmethod
    def info(cls, text: str) -> str:
        return cls.cyan(text)

    @classmethod
    def header(cls, text: str) -> str:
        return cls.bold(cls.blue(text))

    @classmethod
    def policy(cls, name: str) -> str:
        """Policy name in the color its trade-off curve uses."""
        return cls._wrap(cls.POLICY_COLORS.get(name, 'gray'), name)

    # ──────────────────────────────────────────────────────
    # Utility Methods
    # ──────────────────────────────────────────────────────

    @classmethod
    def get_backend(cls) -> str:
        """Returns the color backend being used: 'colorama', 'ansi', or 'none'."""
        if not cls.enabled:
            return 'none'
        return 'colorama' if USE_COLORAMA else 'ansi'
