"""Shared fixtures: the two-tenant IMS study constants and small specs."""

from __future__ import annotations

import pytest

from sfcavail import ChainSpec, RateSet, SubsystemSpec, VnfSpec

# Published two-tenant study: rates in 1/s, capacity in sessions.
VIMS_LAMBDA_S = 1.587e-6
VIMS_MU_S = 5.556e-4
VIMS_LAMBDA_V = 1.047e-7
VIMS_MU_V = 1.667e-4
VIMS_LAMBDA_H = 4.630e-9
VIMS_MU_H = 3.472e-5
VIMS_GAMMA = 10000
VIMS_INSTANCES = (2, 3)
VIMS_DEMAND = (15000, 25000)
VIMS_A0 = 1.0 - 1e-5
VIMS_SUBSYSTEMS = ("pcscf", "scscf-1", "icscf", "hss", "scscf-2")

# Single-node steady-state distribution (12 merged performance vectors).
TABLE1 = {
    (0, 0): 7.608e-4,
    (0, 10000): 6.617e-11,
    (0, 20000): 2.316e-8,
    (0, 30000): 8.107e-6,
    (10000, 0): 6.617e-11,
    (10000, 10000): 2.316e-8,
    (10000, 20000): 8.108e-6,
    (10000, 30000): 2.838e-3,
    (20000, 0): 2.316e-8,
    (20000, 10000): 8.107e-6,
    (20000, 20000): 2.838e-3,
    (20000, 30000): 0.9935,
}

# Whole-chain distribution for redundancy (2,3,3,3,3): all 35 terms.
CHAIN_TERMS = {
    (0, 0): 5.806e-7,
    (10000, 0): 1.011e-13,
    (20000, 0): 3.540e-11,
    (30000, 0): 3.149e-18,
    (40000, 0): 5.412e-16,
    (0, 10000): 1.011e-13,
    (10000, 10000): 3.540e-11,
    (20000, 10000): 1.239e-8,
    (30000, 10000): 2.204e-15,
    (40000, 10000): 3.789e-13,
    (0, 20000): 3.540e-11,
    (10000, 20000): 1.239e-8,
    (20000, 20000): 4.338e-6,
    (30000, 20000): 1.157e-12,
    (40000, 20000): 1.990e-10,
    (0, 30000): 1.239e-8,
    (10000, 30000): 4.338e-6,
    (20000, 30000): 1.519e-3,
    (30000, 30000): 5.403e-10,
    (40000, 30000): 9.287e-8,
    (0, 40000): 1.654e-15,
    (10000, 40000): 1.158e-12,
    (20000, 40000): 6.079e-10,
    (30000, 40000): 1.418e-7,
    (40000, 40000): 2.438e-5,
    (0, 50000): 3.858e-13,
    (10000, 50000): 2.701e-10,
    (20000, 50000): 1.418e-7,
    (30000, 50000): 3.310e-5,
    (40000, 50000): 5.690e-3,
    (0, 60000): 6.632e-11,
    (10000, 60000): 4.643e-8,
    (20000, 60000): 2.438e-5,
    (30000, 60000): 5.690e-3,
    (40000, 60000): 0.9870,
}

# The subset of CHAIN_TERMS meeting the demand (underlined in the study).
CHAIN_ACCEPTABLE = {
    g: p
    for g, p in CHAIN_TERMS.items()
    if g[0] >= 20000 and g[1] >= 30000
}

# Demand variation study: (demand, one published optimum, availability).
TABLE2 = (
    ((15000, 25000), (2, 3, 3, 3, 3), 0.999990659),
    ((20000, 20000), (2, 2, 3, 3, 3), 0.999990022),
    ((20000, 30000), (2, 3, 3, 3, 3), 0.999990659),
    ((10000, 30000), (2, 2, 3, 3, 3), 0.999990114),
    ((10000, 20000), (2, 2, 2, 2, 2), 0.999996982),
)

# Published degradation breakpoints at redundancy (2,3,3,3,3): the largest
# rate deviation still meeting the five-nines target, in reciprocal form.
BREAKPOINTS = {
    "lambda_s": (167.0, "hours"),
    "lambda_v": (2527.0, "hours"),
    "lambda_h": (44440.0, "hours"),
    "mu_s": (31.6, "minutes"),
    "mu_v": (105.0, "minutes"),
    "mu_h": (10.7, "hours"),
}


def make_vims_rates(**overrides) -> RateSet:
    values = dict(
        lambda_s=(VIMS_LAMBDA_S, VIMS_LAMBDA_S),
        mu_s=(VIMS_MU_S, VIMS_MU_S),
        lambda_v=VIMS_LAMBDA_V,
        mu_v=VIMS_MU_V,
        lambda_h=VIMS_LAMBDA_H,
        mu_h=VIMS_MU_H,
    )
    values.update(overrides)
    return RateSet(**values)


def make_vims_node(**overrides) -> VnfSpec:
    values = dict(
        instances=VIMS_INSTANCES,
        capacity_per_instance=VIMS_GAMMA,
        rates=make_vims_rates(),
    )
    values.update(overrides)
    return VnfSpec(**values)


def make_vims_chain(node: VnfSpec | None = None, demand=VIMS_DEMAND) -> ChainSpec:
    node = node or make_vims_node()
    return ChainSpec(
        subsystems=tuple(
            SubsystemSpec(name=name, node_spec=node, node_cost=1.0, max_redundancy=4)
            for name in VIMS_SUBSYSTEMS
        ),
        demand=demand,
    )


@pytest.fixture(scope="session")
def vims_node() -> VnfSpec:
    return make_vims_node()


@pytest.fixture(scope="session")
def vims_chain() -> ChainSpec:
    return make_vims_chain()


def tiny_node(
    lam: float = 2e-4, mu: float = 3e-2, tenants: int = 1, instances: int = 1
) -> VnfSpec:
    """Small fast node for property tests: N = (instances+1)^tenants + 2."""
    return VnfSpec(
        instances=(instances,) * tenants,
        capacity_per_instance=100,
        rates=RateSet(
            lambda_s=(lam,) * tenants,
            mu_s=(mu,) * tenants,
            lambda_v=lam / 2,
            mu_v=mu,
            lambda_h=lam / 10,
            mu_h=mu / 4,
        ),
    )
