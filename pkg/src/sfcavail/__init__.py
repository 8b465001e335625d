"""Steady-state availability of multi-tenant service function chains.

Per-node multi-state Markov models are solved exactly and composed into a
whole-chain performance distribution through sparse series/parallel
operators over integer performance vectors; on top sit a minimal-cost
redundancy search, rate sensitivity sweeps, and a Monte Carlo cross-check.
"""

from .chain import (
    ChainError,
    ChainEvaluator,
    ChainResult,
    ChainSpec,
    SubsystemSpec,
    chain_cost,
    evaluate_chain,
    state_space_size,
)
from .config import ChainConfig, ConfigError, load_config, vims_example_path
from .ctmc import (
    CtmcError,
    GeneratorMatrix,
    ProbabilityVector,
    ReducibleChainError,
    build_generator,
    steady_state,
)
from .mugf import (
    DistributionError,
    PerfDistribution,
    availability,
    degenerate,
    merge_terms,
    parallel_compose,
    series_compose,
)
from .optimizer import (
    DemandPoint,
    OptimizationResult,
    OptimizerError,
    demand_sweep,
    optimize,
)
from .sensitivity import (
    SensitivityError,
    SweepPoint,
    SweepSpec,
    ThresholdResult,
    find_threshold,
    sweep,
)
from .simulate import SimConfig, SimEstimate, SimulationError, simulate_chain
from .vnf import (
    HLF,
    VLF,
    RateSet,
    VnfModelError,
    VnfSpec,
    VnfStateSpace,
    build_vnf_generator,
    enumerate_states,
    node_distribution,
    performance_map,
)

__version__ = "0.1.0"

__all__ = [
    "ChainConfig",
    "ChainError",
    "ChainEvaluator",
    "ChainResult",
    "ChainSpec",
    "ConfigError",
    "CtmcError",
    "DemandPoint",
    "DistributionError",
    "GeneratorMatrix",
    "HLF",
    "OptimizationResult",
    "OptimizerError",
    "PerfDistribution",
    "ProbabilityVector",
    "RateSet",
    "ReducibleChainError",
    "SensitivityError",
    "SimConfig",
    "SimEstimate",
    "SimulationError",
    "SubsystemSpec",
    "SweepPoint",
    "SweepSpec",
    "ThresholdResult",
    "VLF",
    "VnfModelError",
    "VnfSpec",
    "VnfStateSpace",
    "availability",
    "build_generator",
    "build_vnf_generator",
    "chain_cost",
    "degenerate",
    "demand_sweep",
    "enumerate_states",
    "evaluate_chain",
    "find_threshold",
    "load_config",
    "merge_terms",
    "node_distribution",
    "optimize",
    "parallel_compose",
    "performance_map",
    "series_compose",
    "simulate_chain",
    "state_space_size",
    "steady_state",
    "sweep",
    "vims_example_path",
]
