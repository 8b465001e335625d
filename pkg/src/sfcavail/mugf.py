"""Sparse multidimensional performance distributions and their composition.

A distribution maps integer performance vectors (sessions per tenant) to
probabilities: the multidimensional universal generating function, with the
formal indeterminates kept implicit as map keys. Two composition operators
cover series-parallel systems:

* :func:`parallel_compose` — flow dispersion: any parallel element serves
  requests, so performance vectors add;
* :func:`series_compose` — the slowest stage is the bottleneck, so
  performance vectors meet element-wise minima.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

PerfVec = tuple[int, ...]

# Terms below this probability are dropped during merges; far below every
# tolerance this package guarantees.
TERM_FLOOR = 1e-300
SUM_TOL = 1e-9


class DistributionError(ValueError):
    """Malformed distribution or mismatched dimensions."""


def _as_perf_vec(g: Iterable[int], dimension: int) -> PerfVec:
    vec = tuple(g)
    if len(vec) != dimension:
        raise DistributionError(
            f"performance vector {vec} has dimension {len(vec)}, expected {dimension}"
        )
    out = []
    for x in vec:
        xi = int(x)
        if xi != x:
            raise DistributionError(f"non-integer performance level {x!r}")
        if xi < 0:
            raise DistributionError(f"negative performance level {xi}")
        out.append(xi)
    return tuple(out)


@dataclass(frozen=True)
class PerfDistribution:
    """Finite map from performance vectors to probabilities summing to one.

    Terms are stored sorted lexicographically by performance vector, which
    makes iteration order and serialized output byte-stable. Treat ``terms``
    as read-only; all operators return new distributions.
    """

    dimension: int
    terms: dict[PerfVec, float]

    def __post_init__(self) -> None:
        if self.dimension < 1:
            raise DistributionError("dimension must be >= 1")
        if not self.terms:
            raise DistributionError("distribution needs at least one term")
        clean: dict[PerfVec, float] = {}
        for g, p in sorted(self.terms.items()):
            vec = _as_perf_vec(g, self.dimension)
            if vec in clean:
                raise DistributionError(f"duplicate performance vector {vec}")
            pf = float(p)
            if not pf > 0.0:
                raise DistributionError(f"non-positive probability {p!r} at {vec}")
            if pf > 1.0 + SUM_TOL:
                raise DistributionError(f"probability {pf!r} above 1 at {vec}")
            clean[vec] = pf
        total = sum(clean.values())
        if abs(total - 1.0) > SUM_TOL:
            raise DistributionError(f"probabilities sum to {total!r}, not 1")
        object.__setattr__(self, "terms", clean)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[tuple[PerfVec, float]]:
        return iter(self.terms.items())

    def prob(self, g: Iterable[int]) -> float:
        """Probability of one performance vector (0 if absent)."""
        return self.terms.get(tuple(int(x) for x in g), 0.0)

    def total(self) -> float:
        return sum(self.terms.values())

    def to_dict(self) -> dict:
        """JSON form: {"dimension": K, "terms": [{"g": [...], "p": ...}]}."""
        return {
            "dimension": self.dimension,
            "terms": [{"g": list(g), "p": p} for g, p in self.terms.items()],
        }

    @classmethod
    def from_dict(cls, doc: Mapping) -> "PerfDistribution":
        return cls(
            dimension=int(doc["dimension"]),
            terms={tuple(t["g"]): float(t["p"]) for t in doc["terms"]},
        )


def degenerate(g: Iterable[int]) -> PerfDistribution:
    """Point mass at one performance vector."""
    vec = tuple(int(x) for x in g)
    return PerfDistribution(len(vec), {vec: 1.0})


def _check_family(dists: list[PerfDistribution] | tuple[PerfDistribution, ...]) -> int:
    if not dists:
        raise DistributionError("need at least one distribution")
    dim = dists[0].dimension
    for d in dists[1:]:
        if d.dimension != dim:
            raise DistributionError(
                f"dimension mismatch: {d.dimension} vs {dim}"
            )
    return dim


def _binary(a: PerfDistribution, b: PerfDistribution, elementwise) -> PerfDistribution:
    out: dict[PerfVec, float] = {}
    for g1, p1 in a.terms.items():
        for g2, p2 in b.terms.items():
            g = tuple(map(elementwise, g1, g2))
            out[g] = out.get(g, 0.0) + p1 * p2
    return merge_terms(out.items(), dimension=a.dimension)


def parallel_compose(dists: list[PerfDistribution]) -> PerfDistribution:
    """Distribution of the element-wise sum of independent draws."""
    _check_family(dists)
    result = dists[0]
    for d in dists[1:]:
        result = _binary(result, d, lambda x, y: x + y)
    return result


def series_compose(dists: list[PerfDistribution]) -> PerfDistribution:
    """Distribution of the element-wise minimum of independent draws.

    Left fold of the binary operator; associativity makes the order
    immaterial (property-tested).
    """
    _check_family(dists)
    result = dists[0]
    for d in dists[1:]:
        result = _binary(result, d, min)
    return result


def availability(dist: PerfDistribution, demand: Iterable[int]) -> float:
    """Probability that every coordinate meets its demand (>= , not >)."""
    w = tuple(demand)
    if len(w) != dist.dimension:
        raise DistributionError(
            f"demand dimension {len(w)} does not match distribution {dist.dimension}"
        )
    return sum(
        p for g, p in dist.terms.items() if all(gi >= wi for gi, wi in zip(g, w))
    )


def merge_terms(
    terms: PerfDistribution | Iterable[tuple[Iterable[int], float]],
    dimension: int | None = None,
) -> PerfDistribution:
    """Collect terms with equal performance vectors, summing probabilities.

    Accepts a distribution (idempotent) or raw (vector, probability) pairs,
    which may repeat vectors. Terms at or below zero, or below the floor of
    1e-300, are dropped.
    """
    if isinstance(terms, PerfDistribution):
        dimension = terms.dimension
        pairs: Iterable[tuple[Iterable[int], float]] = terms.terms.items()
    else:
        pairs = terms
    merged: dict[PerfVec, float] = {}
    for g, p in pairs:
        vec = tuple(int(x) for x in g)
        if dimension is None:
            dimension = len(vec)
        merged[vec] = merged.get(vec, 0.0) + float(p)
    if dimension is None:
        raise DistributionError("cannot infer dimension from empty input")
    kept = {g: p for g, p in merged.items() if p > TERM_FLOOR}
    return PerfDistribution(dimension, kept)
