"""
ActionResult - Data structure for command execution results.

Lets a command tell the Router how the run ended:
- Success (exit status 0)
- Validation failure (exit status 1)
- Runtime failure such as non-convergence (exit status 2)
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_RUNTIME = 2
EXIT_INTERRUPTED = 130


@dataclass
class ActionResult:
    """
    Result of a command execution.

    The Router prints the message and turns exit_code into the process
    exit status.

    Attributes:
        success: Whether the command completed successfully
        message: Optional message (error, success, info)
        exit_code: Process exit status
        artifacts: Paths written by the command
        data: Additional data the command wants to return

    Examples:
        # Simple success
        return ActionResult.success("Policy written", artifacts=[path])

        # Bad input
        return ActionResult.error("Unknown policy 'foo'")

        # Artifacts written but the run is flagged
        return ActionResult.runtime_error("Solver hit max_iters", artifacts=[path])
    """

    success: bool
    message: str = ""
    exit_code: int = EXIT_OK
    artifacts: List[str] = field(default_factory=list)
    data: Optional[Dict[str, Any]] = None

    # ──────────────────────────────────────────────────────
    # Factory Methods (convenient constructors)
    # ──────────────────────────────────────────────────────

    @classmethod
    def success(
        cls,
        message: str = "",
        artifacts: Optional[List[str]] = None,
        data: Optional[Dict[str, Any]] = None
    ) -> 'ActionResult':
        """
        Creates a successful result.

        Args:
            message: Optional success message
            artifacts: Files written
            data: Additional data

        Returns:
            ActionResult with success=True and exit code 0
        """
        return cls(
            success=True,
            message=message,
            artifacts=list(artifacts or []),
            data=data
        )

    @classmethod
    def error(
        cls,
        message: str,
        data: Optional[Dict[str, Any]] = None
    ) -> 'ActionResult':
        """
        Creates a validation-error result (exit code 1).

        Args:
            message: Error message (required)
            data: Additional error data
        """
        return cls(
            success=False,
            message=message,
            exit_code=EXIT_INVALID,
            data=data
        )

    @classmethod
    def runtime_error(
        cls,
        message: str,
        artifacts: Optional[List[str]] = None,
        data: Optional[Dict[str, Any]] = None
    ) -> 'ActionResult':
        """Creates a runtime-failure result (exit code 2); artifacts may still exist."""
        return cls(
            success=False,
            message=message,
            exit_code=EXIT_RUNTIME,
            artifacts=list(artifacts or []),
            data=data
        )

    @classmethod
    def interrupted(cls, message: str = "Interrupted by user") -> 'ActionResult':
        return cls(
            success=False,
            message=message,
            exit_code=EXIT_INTERRUPTED
        )

    # ──────────────────────────────────────────────────────
    # Helpers
    # ──────────────────────────────────────────────────────

    def is_runtime_failure(self) -> bool:
        """Returns True if the command ran but flagged a runtime failure."""
        return self.exit_code == EXIT_RUNTIME
