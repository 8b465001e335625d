"""Independent reference computations the implementation is checked against.

These deliberately avoid the library's composition code paths: joint
distributions come from exhaustive enumeration over the product measure,
joint chains from a Kronecker-sum generator, and transients from the
matrix exponential.
"""

from __future__ import annotations

import itertools

import numpy as np
from scipy.linalg import expm

from sfcavail import GeneratorMatrix
from sfcavail.mugf import PerfDistribution


def enumerate_joint(
    node_dists: list[PerfDistribution], node_subsystem: list[int]
) -> dict[tuple[int, ...], float]:
    """Exhaustive chain distribution: min over subsystems of sums of nodes.

    Walks every combination of one term per node, multiplying
    probabilities; no sparse merging tricks shared with the library.
    """
    n_subs = max(node_subsystem) + 1
    k = node_dists[0].dimension
    joint: dict[tuple[int, ...], float] = {}
    term_lists = [list(d.terms.items()) for d in node_dists]
    for combo in itertools.product(*term_lists):
        sums = [[0] * k for _ in range(n_subs)]
        prob = 1.0
        for (g, p), m in zip(combo, node_subsystem):
            prob *= p
            for t in range(k):
                sums[m][t] += g[t]
        perf = tuple(min(sums[m][t] for m in range(n_subs)) for t in range(k))
        joint[perf] = joint.get(perf, 0.0) + prob
    return joint


def joint_availability(
    joint: dict[tuple[int, ...], float], demand: tuple[int, ...]
) -> float:
    return sum(
        p
        for g, p in joint.items()
        if all(gi >= wi for gi, wi in zip(g, demand))
    )


def kronecker_sum_steady(q1: np.ndarray, q2: np.ndarray) -> np.ndarray:
    """Stationary distribution of two independent chains run jointly.

    The joint generator is the Kronecker sum q1 (+) q2; solved directly on
    the product space, bypassing the per-node factorization entirely.
    """
    n1, n2 = q1.shape[0], q2.shape[0]
    q = np.kron(q1, np.eye(n2)) + np.kron(np.eye(n1), q2)
    a = q.T.copy()
    a[-1, :] = 1.0
    b = np.zeros(n1 * n2)
    b[-1] = 1.0
    return np.linalg.solve(a, b)


def transient_distribution(
    q: GeneratorMatrix, p0: np.ndarray, t: float
) -> np.ndarray:
    """p0 @ expm(Q t): the exact transient law at time t."""
    return p0 @ expm(q.rates * t)
