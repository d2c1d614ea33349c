"""
Actions that assemble and export the POMDP.

build-model: model summary JSON (labels, sizes, kernel check).
dump-kernel: one row-major CSV per action, for diffing against other builds.
"""

import os
from typing import List

from cli.core import ActionResult, Views
from models.core.errors import ValidationError
from models.core.scenario_config import serialize_config
from services.kernel_service import KernelService

from .helpers import provenance, run_summary

# Normalization error above which a kernel is reported as broken
KERNEL_TOLERANCE = 1e-9


def _parse_indices(text: str, count: int) -> List[int]:
    """'0,3,10' -> [0, 3, 10]; empty means every action."""
    if not text:
        return list(range(count))
    try:
        indices = [int(part) for part in text.split(',') if part.strip()]
    except ValueError:
        raise ValidationError(f"Action indices must be integers: '{text}'")
    bad = [a for a in indices if not 0 <= a < count]
    if bad:
        raise ValidationError(f"Action indices out of range 0..{count - 1}: {bad}")
    return indices


def action_build_model(context: dict) -> ActionResult:
    handler = context['handler']
    args = context['args']
    model = handler.model

    kernel_error = model.kernel.check()
    Views.print_table(
        ['states', 'actions', 'observations', 'max normalization error'],
        [[model.num_states, model.num_actions, model.num_observations, kernel_error]]
    )

    document = provenance(
        handler,
        config=serialize_config(handler.cfg),
        num_states=model.num_states,
        num_actions=model.num_actions,
        num_observations=model.num_observations,
        kernel_error=kernel_error,
        states=list(model.state_labels),
        observations=list(model.observation_labels),
        actions=[action.to_dict() for action in model.actions],
        blockage_steady_state=handler.steady_states().tolist(),
        link_gain=handler.budget.gain,
    )
    path = handler.client.save_json(args.out, document)

    summary = run_summary(handler, states=model.num_states, actions=model.num_actions,
                          **{'kernel error': kernel_error})
    if kernel_error > KERNEL_TOLERANCE:
        return ActionResult.runtime_error(
            f"Kernel rows sum to 1 only within {kernel_error:.3g}",
            artifacts=[path], data={'summary': summary}
        )
    return ActionResult.success("Model built", artifacts=[path], data={'summary': summary})


def action_dump_kernel(context: dict) -> ActionResult:
    """
    Writes <out>/kernel_<a>.csv (state, observation, next_state, probability)
    with the non-zero entries of each selected action, plus <out>/index.json.
    """
    handler = context['handler']
    args = context['args']
    model = handler.model
    client = handler.client
    directory = client.path(args.out)

    indices = _parse_indices(args.actions, model.num_actions)
    files = []
    for a in indices:
        name = os.path.join(directory, f"kernel_{a:03d}.csv")
        header, rows = KernelService.kernel_rows(model, a)
        client.save_csv(name, header, rows)
        files.append({'action': a, 'label': model.action_label(a), 'file': os.path.basename(name)})

    index_path = client.save_json(
        os.path.join(directory, "index.json"),
        provenance(handler, states=list(model.state_labels),
                   observations=list(model.observation_labels), files=files)
    )
    Views.print_info(f"{len(files)} kernel files written to {os.path.dirname(index_path)}")

    return ActionResult.success(
        "Kernel dumped",
        artifacts=[index_path],
        data={'summary': run_summary(handler, **{'kernel files': len(files)})}
    )
