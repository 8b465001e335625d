"""Exhaustive-search redundancy allocation under an availability target.

Enumerates every redundancy vector in the per-subsystem bounds box,
evaluates each through the shared-cache chain evaluator, and reports *all*
minimal-cost feasible configurations (ties are results, not broken).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, replace

from .chain import ChainEvaluator, ChainSpec, Redundancy

SEARCH_SPACE_CAP = 10**6
_COST_TIE_TOL = 1e-9


class OptimizerError(ValueError):
    """Search space misuse (bounds, cap)."""


@dataclass(frozen=True)
class EvaluatedConfig:
    """One enumerated configuration (CSV row material)."""

    redundancy: Redundancy
    cost: float
    availability: float
    feasible: bool


@dataclass(frozen=True)
class OptimizationResult:
    """All minimal-cost feasible configurations, or an infeasible outcome.

    ``optima`` is empty iff no configuration met the target; in that case
    ``best_availability``/``best_config`` still carry the closest miss so
    an infeasible run is an explicit, inspectable outcome.
    """

    target: float
    optima: tuple[Redundancy, ...]
    availabilities: tuple[float, ...]
    min_cost: float | None
    evaluated_count: int
    feasible_count: int
    best_availability: float
    best_config: Redundancy
    evaluations: tuple[EvaluatedConfig, ...] = ()

    @property
    def feasible(self) -> bool:
        return bool(self.optima)


def optimize(
    spec: ChainSpec,
    a0: float,
    evaluator: ChainEvaluator | None = None,
    keep_evaluations: bool = False,
) -> OptimizationResult:
    """Minimize deployment cost subject to availability >= ``a0``.

    Full box enumeration in lexicographic order; deterministic output.
    ``keep_evaluations`` retains the per-configuration rows for reporting.
    """
    if not 0.0 < a0 < 1.0:
        raise OptimizerError(f"availability target {a0!r} outside (0, 1)")
    bounds = [sub.max_redundancy for sub in spec.subsystems]
    space = math.prod(bounds)
    if space > SEARCH_SPACE_CAP:
        raise OptimizerError(
            f"search space {space} exceeds cap {SEARCH_SPACE_CAP}; tighten bounds"
        )
    ev = evaluator or ChainEvaluator(spec)

    rows: list[EvaluatedConfig] = []
    feasible: list[tuple[float, Redundancy, float]] = []
    best_availability = -1.0
    best_config: Redundancy = tuple(1 for _ in bounds)
    for l in itertools.product(*(range(1, b + 1) for b in bounds)):
        result = ev.evaluate(l)
        ok = result.availability >= a0
        if keep_evaluations:
            rows.append(EvaluatedConfig(l, result.cost, result.availability, ok))
        if result.availability > best_availability:
            best_availability = result.availability
            best_config = l
        if ok:
            feasible.append((result.cost, l, result.availability))

    if not feasible:
        return OptimizationResult(
            target=a0,
            optima=(),
            availabilities=(),
            min_cost=None,
            evaluated_count=space,
            feasible_count=0,
            best_availability=best_availability,
            best_config=best_config,
            evaluations=tuple(rows),
        )

    min_cost = min(cost for cost, _, _ in feasible)
    tie = _COST_TIE_TOL * max(1.0, abs(min_cost))
    optima = sorted(
        (l, a) for cost, l, a in feasible if cost <= min_cost + tie
    )
    return OptimizationResult(
        target=a0,
        optima=tuple(l for l, _ in optima),
        availabilities=tuple(a for _, a in optima),
        min_cost=min_cost,
        evaluated_count=space,
        feasible_count=len(feasible),
        best_availability=best_availability,
        best_config=best_config,
        evaluations=tuple(rows),
    )


@dataclass(frozen=True)
class DemandPoint:
    """Optimization outcome for one demand vector."""

    demand: tuple[int, ...]
    result: OptimizationResult


def respecify_instances(spec: ChainSpec, demand: tuple[int, ...]) -> ChainSpec:
    """Resize every node to the fewest instances covering the demand alone."""
    subsystems = []
    for sub in spec.subsystems:
        def resize(node):
            counts = tuple(
                max(1, math.ceil(w / node.capacity_per_instance)) for w in demand
            )
            return replace(node, instances=counts)

        sub = replace(
            sub,
            node_spec=resize(sub.node_spec),
            node_specs=None
            if sub.node_specs is None
            else tuple(resize(n) for n in sub.node_specs),
        )
        subsystems.append(sub)
    return ChainSpec(subsystems=tuple(subsystems), demand=demand)


def demand_sweep(
    spec: ChainSpec,
    demands: list[tuple[int, ...]],
    a0: float,
    recompute_instances: bool = False,
) -> tuple[DemandPoint, ...]:
    """Optimize once per demand vector.

    Instance counts stay fixed by default; with ``recompute_instances`` each
    demand re-derives them as ceil(w_i / capacity). The evaluator cache is
    shared across demands whenever the node models are unchanged.
    """
    points = []
    shared = ChainEvaluator(spec)
    for demand in demands:
        demand = tuple(int(w) for w in demand)
        if recompute_instances:
            local_spec = respecify_instances(spec, demand)
            evaluator = ChainEvaluator(local_spec)
        else:
            # Distributions depend only on node specs, so the caches carry
            # over between demands untouched.
            local_spec = ChainSpec(subsystems=spec.subsystems, demand=demand)
            evaluator = ChainEvaluator(local_spec, share_from=shared)
        points.append(DemandPoint(demand, optimize(local_spec, a0, evaluator)))
    return tuple(points)
