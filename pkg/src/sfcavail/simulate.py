"""Monte Carlo cross-check of the analytic chain availability.

Every deployed node runs as an independent continuous-time Markov chain
driven by competing exponential clocks; whenever any node jumps, the chain
performance (element-wise minimum over subsystems of the element-wise sum
over their parallel nodes) is refreshed and the time spent meeting the
demand is accumulated. Long-run time fractions estimate the steady-state
availability, with a standard error taken across independent replications.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .chain import ChainSpec, Redundancy
from .vnf import VnfSpec, build_vnf_generator, enumerate_states, performance_map


class SimulationError(ValueError):
    """Invalid simulation configuration."""


@dataclass(frozen=True)
class SimConfig:
    """Horizon and warmup in model seconds; warmup defaults to 1% of horizon."""

    horizon: float
    seed: int = 0
    replications: int = 1
    warmup: float | None = None

    def __post_init__(self) -> None:
        warmup = 0.01 * self.horizon if self.warmup is None else float(self.warmup)
        object.__setattr__(self, "warmup", warmup)
        if not self.horizon > 0:
            raise SimulationError("horizon must be positive")
        if warmup < 0 or warmup >= self.horizon:
            raise SimulationError("need horizon > warmup >= 0")
        if self.replications < 1:
            raise SimulationError("need at least one replication")


@dataclass(frozen=True)
class SimEstimate:
    availability_mean: float
    std_error: float
    replications: int


class _NodeModel:
    """Per-state jump data for one node spec, shared by identical nodes."""

    def __init__(self, spec: VnfSpec):
        q = build_vnf_generator(spec).rates
        n = q.shape[0]
        self.initial = enumerate_states(spec).index(spec.instances)
        self.perf = performance_map(spec)
        self.exit_rate = -q.diagonal()
        self.targets = []
        self.cum_probs = []
        for j in range(n):
            row = q[j].copy()
            row[j] = 0.0
            dests = np.flatnonzero(row)
            self.targets.append(dests)
            self.cum_probs.append(np.cumsum(row[dests]) / self.exit_rate[j])


def _node_stream(seed: int, replication: int, node_index: int) -> np.random.Generator:
    # Counter-based generator keyed per (seed, replication, node): streams
    # stay decoupled however replications are scheduled.
    key = np.random.SeedSequence(entropy=seed, spawn_key=(replication, node_index))
    return np.random.Generator(np.random.Philox(key))


def simulate_chain(
    spec: ChainSpec, redundancy: Redundancy, config: SimConfig
) -> SimEstimate:
    """Estimate availability under a fixed redundancy configuration.

    Identical (spec, redundancy, config) inputs produce identical output.
    """
    l = spec.check_redundancy(redundancy)
    models: dict[VnfSpec, _NodeModel] = {}
    node_models: list[_NodeModel] = []
    node_subsystem: list[int] = []
    for m, (sub, lm) in enumerate(zip(spec.subsystems, l)):
        for node_spec in sub.slot_specs(lm):
            if node_spec not in models:
                models[node_spec] = _NodeModel(node_spec)
            node_models.append(models[node_spec])
            node_subsystem.append(m)

    fractions = [
        _run_replication(spec, node_models, node_subsystem, config, rep)
        for rep in range(config.replications)
    ]
    values = np.array(fractions)
    mean = float(values.mean())
    if config.replications > 1:
        std_error = float(values.std(ddof=1) / np.sqrt(config.replications))
    else:
        std_error = 0.0
    return SimEstimate(mean, std_error, config.replications)


def _run_replication(
    spec: ChainSpec,
    node_models: list[_NodeModel],
    node_subsystem: list[int],
    config: SimConfig,
    replication: int,
) -> float:
    n_nodes = len(node_models)
    n_subs = len(spec.subsystems)
    k = spec.tenants
    demand = spec.demand

    streams = [
        _node_stream(config.seed, replication, i) for i in range(n_nodes)
    ]
    states = [model.initial for model in node_models]
    subsystem_sum = [[0] * k for _ in range(n_subs)]
    for i, model in enumerate(node_models):
        perf = model.perf[states[i]]
        acc = subsystem_sum[node_subsystem[i]]
        for t in range(k):
            acc[t] += perf[t]

    def acceptable() -> bool:
        for t in range(k):
            if min(acc[t] for acc in subsystem_sum) < demand[t]:
                return False
        return True

    next_time = np.empty(n_nodes)
    for i, model in enumerate(node_models):
        rate = model.exit_rate[states[i]]
        next_time[i] = streams[i].exponential(1.0 / rate)

    now = 0.0
    ok = acceptable()
    time_ok = 0.0
    horizon, warmup = config.horizon, config.warmup
    while True:
        i = int(np.argmin(next_time))  # lowest index wins ties: deterministic
        t_next = float(next_time[i])
        segment_end = min(t_next, horizon)
        if ok and segment_end > warmup:
            time_ok += segment_end - max(now, warmup)
        if t_next >= horizon:
            break
        now = t_next

        model = node_models[i]
        old = states[i]
        u = streams[i].random()
        j = int(np.searchsorted(model.cum_probs[old], u, side="right"))
        j = min(j, len(model.targets[old]) - 1)  # guard u == 1.0 edge
        new = int(model.targets[old][j])
        states[i] = new
        acc = subsystem_sum[node_subsystem[i]]
        old_perf, new_perf = model.perf[old], model.perf[new]
        for t in range(k):
            acc[t] += new_perf[t] - old_perf[t]
        ok = acceptable()
        next_time[i] = now + streams[i].exponential(1.0 / model.exit_rate[new])

    return time_ok / (horizon - warmup)
