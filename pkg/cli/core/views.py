"""
Views - output utilities for consistent CLI presentation.

Headers, status messages, aligned tables and the run summary every
command prints at the end. Commands never call print() for status lines
directly; they go through Views so ``--quiet`` can silence them.
"""

from typing import Any, Dict, List, Optional, Sequence

from .colors import Colors


class Views:
    """
    Output helpers with consistent formatting.

    All methods are static - no need to instantiate.

    Usage:
        Views.print_header("SOLVE", "PERSEUS, lambda = 10")
        Views.print_table(['policy', 'SE'], [['genie', 3.1]])
        Views.print_summary({'config hash': h, 'seed': 1})
    """

    quiet = False

    # ──────────────────────────────────────────────────────
    # Headers and Separators
    # ──────────────────────────────────────────────────────

    @staticmethod
    def print_header(title: str, subtitle: str = "", width: int = 60):
        """
        Prints a formatted header with title and optional subtitle.

        Example:
            Views.print_header("📡 BUILD MODEL", "8 sectors, 166 actions")
        """
        if Views.quiet:
            return
        print("\n" + Colors.bold("=" * width))
        print(Colors.bold(f"  {title}"))
        if subtitle:
            print(Colors.blue(f"  {subtitle}"))
        print(Colors.bold("=" * width) + "\n")

    @staticmethod
    def print_separator(width: int = 60, char: str = "─"):
        if not Views.quiet:
            print(char * width)

    # ──────────────────────────────────────────────────────
    # Messages (Success, Error, Warning, Info)
    # ──────────────────────────────────────────────────────

    @staticmethod
    def print_success(message: str):
        if not Views.quiet:
            print(Colors.green(f"✅ {message}"))

    @staticmethod
    def print_error(message: str):
        """Errors are printed even in quiet mode."""
        print(Colors.red(f"❌ {message}"))

    @staticmethod
    def print_warning(message: str):
        print(Colors.yellow(f"⚠️  {message}"))

    @staticmethod
    def print_info(message: str):
        if not Views.quiet:
            print(Colors.info(f"ℹ️  {message}"))

    # ──────────────────────────────────────────────────────
    # Tables
    # ──────────────────────────────────────────────────────

    @staticmethod
    def format_cell(value: Any, precision: int = 4) -> str:
        if value is None:
            return "-"
        if isinstance(value, float):
            return f"{value:.{precision}g}"
        return str(value)

    @staticmethod
    def print_table(
        headers: Sequence[str],
        rows: Sequence[Sequence[Any]],
        col_widths: Optional[List[int]] = None,
        precision: int = 4
    ):
        """
        Prints a formatted table with headers and rows.

        Floats are shown with `precision` significant digits.

        Example:
            Views.print_table(
                headers=['policy', 'power [W]', 'SE [bps/Hz]'],
                rows=[['genie', 0.8, 7.1], ['baseline', 0.4, 2.2]]
            )
        """
        if Views.quiet:
            return
        if not rows:
            Views.print_warning("No data to display")
            return

        cells = [[Views.format_cell(v, precision) for v in row] for row in rows]

        if col_widths is None:
            col_widths = []
            for i, header in enumerate(headers):
                max_width = len(str(header))
                for row in cells:
                    if i < len(row):
                        max_width = max(max_width, len(row[i]))
                col_widths.append(max_width + 2)

        print("  ".join(
            Colors.bold(str(header).ljust(width))
            for header, width in zip(headers, col_widths)
        ))
        print("  ".join("─" * width for width in col_widths))
        for row in cells:
            print("  ".join(
                (row[i] if i < len(row) else "").ljust(width)
                for i, width in enumerate(col_widths)
            ))

    # ──────────────────────────────────────────────────────
    # Run summary
    # ──────────────────────────────────────────────────────

    @staticmethod
    def print_summary(fields: Dict[str, Any], title: str = "Run summary"):
        """Key/value block printed at the end of every command (also in quiet mode)."""
        print(Colors.bold(f"\n📋 {title}"))
        width = max((len(key) for key in fields), default=0)
        for key, value in fields.items():
            print(f"   {key.ljust(width)} : {Views.format_cell(value, precision=6)}")
