"""
mm-wave vehicular beam management - Main Entry Point

Builds the beam training / data transmission / handover POMDP, solves it
with PERSEUS, and evaluates it against the FSM heuristics and the genie
bound by Monte-Carlo simulation.

Usage:
    python main.py sweep --policy baseline,genie --episodes 200 --plot tradeoff.png
    python main.py solve --lambda 10 --out policy.json
    python main.py simulate --policy-file policy.json
"""

import sys

from app import run_cli
from cli.core import EXIT_INTERRUPTED, Views


def main() -> int:
    """
    Main entry point of the application.

    Returns:
        Process exit status (0 ok, 1 invalid input, 2 runtime failure, 130 interrupted)
    """
    try:
        return run_cli(sys.argv[1:])

    except KeyboardInterrupt:
        print()
        Views.print_warning("Interrupted by user")
        return EXIT_INTERRUPTED


if __name__ == "__main__":
    sys.exit(main())
