"""
Actions package.

One function per subcommand; each takes the router context and returns
an ActionResult.
"""

from .mobility_actions import action_estimate_mobility
from .model_actions import action_build_model, action_dump_kernel
from .solver_actions import action_expand_beliefs, action_solve
from .simulation_actions import action_simulate, action_sweep

__all__ = [
    'action_estimate_mobility',
    'action_build_model',
    'action_dump_kernel',
    'action_expand_beliefs',
    'action_solve',
    'action_simulate',
    'action_sweep',
]
