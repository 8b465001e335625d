import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _oracles import transient_distribution
from sfcavail import (
    CtmcError,
    GeneratorMatrix,
    ReducibleChainError,
    build_generator,
    steady_state,
)


def random_irreducible(rng: np.random.Generator, n: int) -> GeneratorMatrix:
    # A dense positive rate matrix is strongly connected by construction.
    rates = rng.uniform(0.1, 5.0, size=(n, n))
    np.fill_diagonal(rates, 0.0)
    np.fill_diagonal(rates, -rates.sum(axis=1))
    return GeneratorMatrix(rates)


class TestBuildGenerator:
    def test_two_state_birth_death(self):
        lam, mu = 0.7, 2.1
        q = build_generator(2, [(0, 1, lam), (1, 0, mu)])
        assert np.allclose(q.rates, [[-lam, lam], [mu, -mu]], atol=0, rtol=0)

    def test_duplicate_transitions_sum(self):
        q = build_generator(3, [(0, 1, 1.0), (0, 1, 0.5), (1, 2, 2.0), (2, 0, 3.0)])
        assert q.rates[0, 1] == 1.5
        assert q.rates[0, 0] == -1.5

    def test_rejects_non_positive_rate(self):
        with pytest.raises(CtmcError, match="non-positive rate"):
            build_generator(2, [(0, 1, 0.0), (1, 0, 1.0)])
        with pytest.raises(CtmcError, match="non-positive rate"):
            build_generator(2, [(0, 1, -2.0), (1, 0, 1.0)])

    def test_rejects_self_loop(self):
        with pytest.raises(CtmcError, match="self-loop"):
            build_generator(2, [(0, 0, 1.0), (1, 0, 1.0)])

    def test_rejects_out_of_range_index(self):
        with pytest.raises(CtmcError, match="out of range"):
            build_generator(2, [(0, 2, 1.0)])

    def test_rejects_negative_off_diagonal(self):
        with pytest.raises(CtmcError, match="negative off-diagonal"):
            GeneratorMatrix(np.array([[1.0, -1.0], [0.5, -0.5]]))

    def test_rejects_bad_row_sums(self):
        with pytest.raises(CtmcError, match="sum to zero"):
            GeneratorMatrix(np.array([[-1.0, 2.0], [0.5, -0.5]]))

    def test_matrix_is_frozen(self):
        q = build_generator(2, [(0, 1, 1.0), (1, 0, 1.0)])
        with pytest.raises(ValueError):
            q.rates[0, 1] = 5.0


class TestSteadyState:
    def test_two_state_analytic(self):
        # mu/(lam+mu), lam/(lam+mu)
        q = build_generator(2, [(0, 1, 1.0), (1, 0, 3.0)])
        p = steady_state(q)
        assert p.probs == pytest.approx([0.75, 0.25], abs=1e-14)

    def test_rejects_reducible_chain(self):
        q = build_generator(4, [(0, 1, 1.0), (1, 0, 1.0), (2, 3, 1.0), (3, 2, 1.0)])
        with pytest.raises(ReducibleChainError):
            steady_state(q)

    def test_rejects_absorbing_pocket(self):
        q = build_generator(3, [(0, 1, 1.0), (1, 2, 1.0), (2, 1, 1.0)])
        with pytest.raises(ReducibleChainError):
            steady_state(q)

    def test_matches_long_horizon_transient(self):
        # Independent route: matrix-exponential transient at a horizon long
        # enough to forget the (deliberately lopsided) initial state.
        rng = np.random.default_rng(42)
        q = random_irreducible(rng, 5)
        p = steady_state(q)
        t = 1e9 / np.abs(q.rates).max()
        p0 = np.zeros(5)
        p0[3] = 1.0
        pt = transient_distribution(q, p0, t)
        assert np.abs(p.probs - pt).max() < 1e-9

    def test_residual_and_normalization(self):
        rng = np.random.default_rng(7)
        for n in (2, 3, 8, 40):
            q = random_irreducible(rng, n)
            p = steady_state(q)
            assert abs(p.probs.sum() - 1.0) <= 1e-12
            assert np.abs(p.probs @ q.rates).max() < 1e-12 * max(1.0, np.abs(q.rates).max())

    def test_deterministic(self):
        rng = np.random.default_rng(3)
        q = random_irreducible(rng, 6)
        p1 = steady_state(q)
        p2 = steady_state(GeneratorMatrix(q.rates.copy()))
        assert (p1.probs == p2.probs).all()

    def test_permutation_invariance(self):
        rng = np.random.default_rng(11)
        q = random_irreducible(rng, 6)
        p = steady_state(q).probs
        perm = rng.permutation(6)
        q_perm = GeneratorMatrix(q.rates[np.ix_(perm, perm)])
        p_perm = steady_state(q_perm).probs
        restored = np.empty_like(p_perm)
        restored[perm] = p_perm
        assert np.abs(restored - p).max() < 1e-14

    @given(scale=st.floats(min_value=1e-3, max_value=1e3), seed=st.integers(0, 2**16))
    @settings(max_examples=60, deadline=None)
    def test_rate_scaling_invariance(self, scale, seed):
        q = random_irreducible(np.random.default_rng(seed), 4)
        p = steady_state(q).probs
        p_scaled = steady_state(GeneratorMatrix(q.rates * scale)).probs
        assert np.abs(p - p_scaled).max() < 1e-12


class TestProbabilityVector:
    def test_rejects_unnormalized(self):
        from sfcavail import ProbabilityVector

        with pytest.raises(CtmcError):
            ProbabilityVector(np.array([0.5, 0.4]))

    def test_rejects_out_of_range(self):
        from sfcavail import ProbabilityVector

        with pytest.raises(CtmcError):
            ProbabilityVector(np.array([1.5, -0.5]))
