"""
Actions for the point-based solver.

expand-beliefs: grow the belief set from the initial belief and save it.
solve: PERSEUS for one lambda, written as a policy JSON.
"""

from cli.core import ActionResult, Views
from models.collections.belief_set import BeliefSet
from services.perseus_service import PerseusService

from .helpers import provenance, run_summary


def action_expand_beliefs(context: dict) -> ActionResult:
    handler = context['handler']
    args = context['args']
    cfg = handler.cfg

    Views.print_info(f"Expanding to {cfg.belief_set_size} belief points")
    beliefs = handler.belief_set()

    document = BeliefSet(beliefs.get_all(), client=handler.client)
    document.metadata = provenance(handler, size=len(beliefs), states=list(handler.model.state_labels))
    path = document.flush(args.out)

    summary = run_summary(handler, **{'belief points': len(beliefs)})
    if len(beliefs) < cfg.belief_set_size:
        Views.print_warning(
            f"Only {len(beliefs)} distinct reachable beliefs found (asked for {cfg.belief_set_size})"
        )
    return ActionResult.success("Belief set written", artifacts=[path], data={'summary': summary})


def action_solve(context: dict) -> ActionResult:
    """
    Solve for cfg.lambda and write the policy even when the solver did not
    converge (exit code 2 in that case).
    """
    handler = context['handler']
    args = context['args']
    cfg = handler.cfg
    model = handler.model

    beliefs = handler.belief_set(args.beliefs)
    Views.print_info(
        f"PERSEUS: lambda = {cfg.lambda_:g} x {cfg.lambda_scale:g} bits/J, "
        f"{len(beliefs)} beliefs, {model.num_actions} actions, tol = {handler.solver_tol:.3g}"
    )
    result = handler.solve(beliefs=beliefs)
    value = PerseusService.value_at(model.initial_belief, result.alpha_set)

    path = PerseusService.save_policy(
        result.alpha_set, model, handler.client, args.out,
        provenance={
            **provenance(handler),
            'lambda': cfg.lambda_,
            'lambda_scale': cfg.lambda_scale,
            'converged': result.converged,
            'initial_value_trace': result.value_trace[:, 0].tolist(),
        }
    )

    summary = run_summary(
        handler,
        **{'lambda': cfg.lambda_,
           'iterations': result.iterations,
           'alpha vectors': len(result.alpha_set),
           'final delta': result.final_delta,
           'value at initial belief': value}
    )
    if not result.converged:
        return ActionResult.runtime_error(
            f"Solver hit max_iters={cfg.max_iters} without converging; policy written anyway",
            artifacts=[path], data={'summary': summary}
        )
    return ActionResult.success("Policy solved", artifacts=[path], data={'summary': summary})
