"""Series-parallel chain assembly: subsystems of parallel nodes in series.

A chain is an ordered list of subsystems; subsystem m deploys l_m parallel
nodes (flow dispersion, so capacities add) and the chain's performance is
the element-wise minimum across subsystems. Availability is the mass of
terms meeting the per-tenant demand.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .mugf import PerfDistribution, availability, parallel_compose, series_compose
from .vnf import VnfSpec, node_distribution

Redundancy = tuple[int, ...]


class ChainError(ValueError):
    """Inconsistent chain specification or redundancy vector."""


@dataclass(frozen=True)
class SubsystemSpec:
    """One stage of the chain: a homogeneous parallel group of nodes.

    ``node_specs`` optionally assigns a distinct spec to each parallel slot
    (heterogeneous group); the redundancy for such a subsystem is capped by
    the number of slots provided.
    """

    name: str
    node_spec: VnfSpec
    node_cost: float = 1.0
    max_redundancy: int = 4
    node_specs: tuple[VnfSpec, ...] | None = None

    def __post_init__(self) -> None:
        if self.node_cost < 0:
            raise ChainError(f"negative node cost for {self.name!r}")
        if self.max_redundancy < 1:
            raise ChainError(f"max_redundancy must be >= 1 for {self.name!r}")
        if self.node_specs is not None:
            object.__setattr__(self, "node_specs", tuple(self.node_specs))
            if any(s.tenants != self.node_spec.tenants for s in self.node_specs):
                raise ChainError(f"tenant-count mismatch in {self.name!r} slots")

    def slot_specs(self, count: int) -> tuple[VnfSpec, ...]:
        if self.node_specs is None:
            return (self.node_spec,) * count
        if count > len(self.node_specs):
            raise ChainError(
                f"{self.name!r} provides {len(self.node_specs)} node specs, "
                f"requested {count}"
            )
        return self.node_specs[:count]


@dataclass(frozen=True)
class ChainSpec:
    """Ordered subsystems plus the per-tenant demand vector (sessions)."""

    subsystems: tuple[SubsystemSpec, ...]
    demand: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "subsystems", tuple(self.subsystems))
        object.__setattr__(self, "demand", tuple(int(w) for w in self.demand))
        if not self.subsystems:
            raise ChainError("chain needs at least one subsystem")
        k = self.subsystems[0].node_spec.tenants
        if any(s.node_spec.tenants != k for s in self.subsystems):
            raise ChainError("all node specs must share the tenant count")
        if len(self.demand) != k:
            raise ChainError(
                f"demand has dimension {len(self.demand)}, tenant count is {k}"
            )
        if any(w < 0 for w in self.demand):
            raise ChainError("demand must be non-negative")

    @property
    def tenants(self) -> int:
        return len(self.demand)

    @property
    def size(self) -> int:
        return len(self.subsystems)

    def check_redundancy(self, redundancy: Redundancy) -> Redundancy:
        l = tuple(int(x) for x in redundancy)
        if len(l) != self.size:
            raise ChainError(
                f"redundancy vector has {len(l)} entries, chain has {self.size}"
            )
        for lm, sub in zip(l, self.subsystems):
            if not 1 <= lm <= sub.max_redundancy:
                raise ChainError(
                    f"redundancy {lm} outside [1, {sub.max_redundancy}] "
                    f"for {sub.name!r}"
                )
        return l


@dataclass(frozen=True)
class ChainResult:
    """Whole-chain distribution plus the derived summary figures.

    ``state_space`` is the exact (never enumerated) joint state count of
    the flat chain model the composition replaces.
    """

    distribution: PerfDistribution
    availability: float
    cost: float
    state_space: int


class ChainEvaluator:
    """Evaluates redundancy configurations over one spec with shared caches.

    Node distributions are solved once per distinct node spec, parallel
    groups once per (slot specs) tuple, and series results once per
    multiset of subsystem distributions (series composition is
    commutative). Pure lookups after first computation, so results are
    identical regardless of evaluation order.
    """

    def __init__(self, spec: ChainSpec, share_from: "ChainEvaluator | None" = None):
        self.spec = spec
        src = share_from
        self._node: dict[VnfSpec, PerfDistribution] = src._node if src else {}
        self._group: dict[tuple[VnfSpec, ...], PerfDistribution] = (
            src._group if src else {}
        )
        self._series: dict[tuple, PerfDistribution] = src._series if src else {}

    def node_dist(self, node_spec: VnfSpec) -> PerfDistribution:
        if node_spec not in self._node:
            self._node[node_spec] = node_distribution(node_spec)
        return self._node[node_spec]

    def subsystem_dist(self, m: int, count: int) -> PerfDistribution:
        key = self.spec.subsystems[m].slot_specs(count)
        if key not in self._group:
            self._group[key] = parallel_compose([self.node_dist(s) for s in key])
        return self._group[key]

    def chain_dist(self, redundancy: Redundancy) -> PerfDistribution:
        l = self.spec.check_redundancy(redundancy)
        keys = [self.spec.subsystems[m].slot_specs(lm) for m, lm in enumerate(l)]
        # Series composition is commutative, so configurations sharing the
        # multiset of parallel groups share one result (content-keyed).
        series_key = tuple(sorted(keys, key=repr))
        if series_key not in self._series:
            dists = [self.subsystem_dist(m, lm) for m, lm in enumerate(l)]
            self._series[series_key] = series_compose(dists)
        return self._series[series_key]

    def evaluate(self, redundancy: Redundancy) -> ChainResult:
        l = self.spec.check_redundancy(redundancy)
        dist = self.chain_dist(l)
        return ChainResult(
            distribution=dist,
            availability=availability(dist, self.spec.demand),
            cost=chain_cost(self.spec, l),
            state_space=state_space_size(self.spec, l),
        )


def chain_cost(spec: ChainSpec, redundancy: Redundancy) -> float:
    l = spec.check_redundancy(redundancy)
    return sum(lm * sub.node_cost for lm, sub in zip(l, spec.subsystems))


def state_space_size(spec: ChainSpec, redundancy: Redundancy) -> int:
    """Exact product of per-node state counts over every deployed node."""
    l = spec.check_redundancy(redundancy)
    j = 1
    for lm, sub in zip(l, spec.subsystems):
        for node in sub.slot_specs(lm):
            j *= node.n_states
    return j


def evaluate_chain(spec: ChainSpec, redundancy: Redundancy) -> ChainResult:
    """One-shot chain evaluation (use :class:`ChainEvaluator` for sweeps)."""
    return ChainEvaluator(spec).evaluate(redundancy)
