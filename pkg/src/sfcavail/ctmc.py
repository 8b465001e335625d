"""Finite-state continuous-time Markov chains and their stationary solution.

Generic over the state meaning: states are plain indices 0..n-1, rates are
per second. The VNF layer (:mod:`sfcavail.vnf`) builds on this.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

# Fixed numeric policy, not user configuration. Row-sum and residual checks
# are relative to the magnitude of the largest rate (for rate scales <= 1/s
# they are effectively absolute).
ROW_SUM_TOL = 1e-12
RESIDUAL_TOL = 1e-12
PROB_FLOOR = 1e-300


class CtmcError(ValueError):
    """Invalid transition data or generator matrix."""


class ReducibleChainError(CtmcError):
    """The directed graph of positive rates is not strongly connected."""


@dataclass(frozen=True)
class GeneratorMatrix:
    """Infinitesimal generator: q[j][k] >= 0 for j != k, rows sum to zero."""

    rates: np.ndarray

    def __post_init__(self) -> None:
        q = np.array(self.rates, dtype=float)
        if q.ndim != 2 or q.shape[0] != q.shape[1] or q.shape[0] < 1:
            raise CtmcError("generator must be a non-empty square matrix")
        off = q.copy()
        np.fill_diagonal(off, 0.0)
        if (off < 0.0).any():
            raise CtmcError("negative off-diagonal rate")
        scale = max(1.0, float(np.abs(q).max()))
        row_err = float(np.abs(q.sum(axis=1)).max())
        if row_err > ROW_SUM_TOL * scale:
            raise CtmcError(f"rows do not sum to zero (max |sum| = {row_err:.3e})")
        q.flags.writeable = False
        object.__setattr__(self, "rates", q)

    @property
    def n_states(self) -> int:
        return self.rates.shape[0]

    def is_irreducible(self) -> bool:
        graph = csr_matrix(self.rates > 0.0)
        n_comp, _ = connected_components(graph, directed=True, connection="strong")
        return n_comp == 1


@dataclass(frozen=True)
class ProbabilityVector:
    """Distribution over the states of one chain."""

    probs: np.ndarray

    def __post_init__(self) -> None:
        p = np.array(self.probs, dtype=float)
        if p.ndim != 1 or p.size < 1:
            raise CtmcError("probability vector must be non-empty and 1-D")
        if (p < 0.0).any() or (p > 1.0).any():
            raise CtmcError("probabilities outside [0, 1]")
        if abs(p.sum() - 1.0) > 1e-12:
            raise CtmcError(f"probabilities sum to {p.sum()!r}, not 1")
        p.flags.writeable = False
        object.__setattr__(self, "probs", p)

    def __len__(self) -> int:
        return self.probs.size

    def __getitem__(self, j: int) -> float:
        return float(self.probs[j])


def build_generator(
    n_states: int, transitions: list[tuple[int, int, float]]
) -> GeneratorMatrix:
    """Assemble a generator from (from, to, rate) triples.

    Duplicate (from, to) pairs are summed. Rates must be strictly positive,
    self-loops are rejected, and the diagonal is set to minus the row sum.
    """
    if n_states < 1:
        raise CtmcError("n_states must be positive")
    q = np.zeros((n_states, n_states))
    for src, dst, rate in transitions:
        if not 0 <= src < n_states or not 0 <= dst < n_states:
            raise CtmcError(f"state index out of range in ({src}, {dst}, {rate})")
        if src == dst:
            raise CtmcError(f"self-loop on state {src}")
        if not rate > 0.0:
            raise CtmcError(f"non-positive rate {rate!r} on ({src}, {dst})")
        q[src, dst] += rate
    np.fill_diagonal(q, -q.sum(axis=1))
    return GeneratorMatrix(q)


def steady_state(q: GeneratorMatrix) -> ProbabilityVector:
    """Solve p Q = 0 with sum(p) = 1 by direct dense factorization.

    The last balance equation is replaced by the normalization constraint
    (the chain's state counts never justify iterative methods). Raises
    :class:`ReducibleChainError` if the chain has more than one strongly
    connected class.
    """
    if not q.is_irreducible():
        raise ReducibleChainError(
            "chain is reducible: steady state is not unique; "
            "check for unreachable or absorbing state groups"
        )
    n = q.n_states
    a = q.rates.T.copy()
    a[-1, :] = 1.0
    b = np.zeros(n)
    b[-1] = 1.0
    try:
        p = np.linalg.solve(a, b)
    except np.linalg.LinAlgError as exc:
        raise CtmcError(f"singular steady-state system: {exc}") from exc
    # Roundoff can leave tiny negatives; clip, flush denormals, renormalize.
    p[np.abs(p) < PROB_FLOOR] = 0.0
    p = np.clip(p, 0.0, None)
    p /= p.sum()
    scale = max(1.0, float(np.abs(q.rates).max()))
    residual = float(np.abs(p @ q.rates).max())
    if residual > RESIDUAL_TOL * scale:
        raise CtmcError(f"steady-state residual {residual:.3e} exceeds tolerance")
    return ProbabilityVector(p)
