"""Multi-state performance model of a single virtualized network function.

A node hosts K tenants; tenant i runs n_i identical software instances of
serving capacity gamma each. Instances fail and get repaired one at a time
per tenant; on top of that the whole node can lose its virtualization layer
(VLF) or its hardware layer (HLF), both of which zero every tenant's
capacity and are repaired by a complete restoration to the fully working
state.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .ctmc import GeneratorMatrix, build_generator, steady_state
from .mugf import PerfDistribution, PerfVec, merge_terms

# Distinguished whole-node failure states.
VLF = "VLF"
HLF = "HLF"

VnfState = tuple[int, ...] | str

DEFAULT_STATE_CAP = 10**6


class VnfModelError(ValueError):
    """Inconsistent node specification."""


class StateSpaceError(VnfModelError):
    """State count above the configured cap."""


@dataclass(frozen=True)
class RateSet:
    """Failure/repair rates (per second) for the three layers of one node."""

    lambda_s: tuple[float, ...]
    mu_s: tuple[float, ...]
    lambda_v: float
    mu_v: float
    lambda_h: float
    mu_h: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "lambda_s", tuple(float(x) for x in self.lambda_s))
        object.__setattr__(self, "mu_s", tuple(float(x) for x in self.mu_s))
        if len(self.lambda_s) != len(self.mu_s) or not self.lambda_s:
            raise VnfModelError("lambda_s and mu_s must be non-empty, equal length")
        for name in ("lambda_v", "mu_v", "lambda_h", "mu_h"):
            object.__setattr__(self, name, float(getattr(self, name)))
        rates = self.lambda_s + self.mu_s + (
            self.lambda_v, self.mu_v, self.lambda_h, self.mu_h,
        )
        if not all(r > 0.0 for r in rates):
            raise VnfModelError("all rates must be strictly positive")

    @property
    def tenants(self) -> int:
        return len(self.lambda_s)


@dataclass(frozen=True)
class VnfSpec:
    """One node: per-tenant instance counts, per-instance capacity, rates.

    ``instance_scaled`` switches to rates proportional to the number of
    failed/active instances (experimentation only; the calibrated model
    uses constant per-tenant rates).
    """

    instances: tuple[int, ...]
    capacity_per_instance: int
    rates: RateSet
    instance_scaled: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "instances", tuple(int(n) for n in self.instances))
        object.__setattr__(
            self, "capacity_per_instance", int(self.capacity_per_instance)
        )
        if not self.instances or any(n < 1 for n in self.instances):
            raise VnfModelError("instance counts must be positive")
        if self.capacity_per_instance < 1:
            raise VnfModelError("capacity_per_instance must be positive")
        if self.rates.tenants != len(self.instances):
            raise VnfModelError(
                f"rates cover {self.rates.tenants} tenants, "
                f"spec has {len(self.instances)}"
            )

    @property
    def tenants(self) -> int:
        return len(self.instances)

    @property
    def n_states(self) -> int:
        return math.prod(n + 1 for n in self.instances) + 2


@dataclass(frozen=True)
class VnfStateSpace:
    """Deterministically ordered states: instance-count vectors, then VLF, HLF."""

    states: tuple[VnfState, ...]

    def __len__(self) -> int:
        return len(self.states)

    def index(self, state: VnfState) -> int:
        return self.states.index(state)


def enumerate_states(spec: VnfSpec, cap: int = DEFAULT_STATE_CAP) -> VnfStateSpace:
    """All instance-count vectors in lexicographic order, plus VLF and HLF."""
    count = spec.n_states
    if count > cap:
        raise StateSpaceError(f"state count {count} exceeds cap {cap}")
    alphas = itertools.product(*(range(n + 1) for n in spec.instances))
    return VnfStateSpace(tuple(alphas) + (VLF, HLF))


def build_vnf_generator(spec: VnfSpec) -> GeneratorMatrix:
    """Generator over :func:`enumerate_states`.

    Transitions: per-tenant single instance failure/repair at constant
    rate (or scaled by failed/active counts when ``instance_scaled``);
    every instance-count state feeds VLF and HLF; VLF additionally feeds
    HLF; both whole-node repairs go to the fully working state.
    """
    space = enumerate_states(spec)
    idx = {s: j for j, s in enumerate(space.states)}
    r = spec.rates
    full = spec.instances
    transitions: list[tuple[int, int, float]] = []
    for state in space.states:
        if state == VLF:
            transitions.append((idx[VLF], idx[HLF], r.lambda_h))
            transitions.append((idx[VLF], idx[full], r.mu_v))
            continue
        if state == HLF:
            transitions.append((idx[HLF], idx[full], r.mu_h))
            continue
        alpha = state
        j = idx[alpha]
        for i, a in enumerate(alpha):
            if a > 0:
                down = alpha[:i] + (a - 1,) + alpha[i + 1 :]
                rate = r.lambda_s[i] * (a if spec.instance_scaled else 1)
                transitions.append((j, idx[down], rate))
            if a < spec.instances[i]:
                up = alpha[:i] + (a + 1,) + alpha[i + 1 :]
                rate = r.mu_s[i] * (
                    spec.instances[i] - a if spec.instance_scaled else 1
                )
                transitions.append((j, idx[up], rate))
        transitions.append((j, idx[VLF], r.lambda_v))
        transitions.append((j, idx[HLF], r.lambda_h))
    return build_generator(len(space), transitions)


def performance_map(spec: VnfSpec) -> list[PerfVec]:
    """Per-state performance vectors: gamma * alpha; VLF and HLF map to zero."""
    gamma = spec.capacity_per_instance
    zero = (0,) * spec.tenants
    out: list[PerfVec] = []
    for state in enumerate_states(spec).states:
        if state in (VLF, HLF):
            out.append(zero)
        else:
            out.append(tuple(gamma * a for a in state))
    return out


def node_distribution(spec: VnfSpec) -> PerfDistribution:
    """Steady-state performance distribution of one node.

    Solves the node chain and pushes probabilities through the performance
    map; states with equal performance vectors (the all-zero vector absorbs
    VLF and HLF) merge into one term.
    """
    probs = steady_state(build_vnf_generator(spec))
    pairs = zip(performance_map(spec), probs.probs)
    return merge_terms(((g, float(p)) for g, p in pairs), dimension=spec.tenants)
