import numpy as np

from artmoo.core import decisions
from artmoo.variation import VariationParams, polynomial_mutation, random_init, sbx_crossover

UNIT = (np.zeros(4), np.ones(4))


class TestSbx:
    def test_identical_parents_yield_parent(self):
        rng = np.random.default_rng(0)
        v = np.array([0.3, 0.7, 0.1, 0.9])
        for _ in range(20):
            child = sbx_crossover(v, v, UNIT, VariationParams(), rng)
            assert np.array_equal(child, v)

    def test_large_eta_approaches_parents(self):
        rng = np.random.default_rng(1)
        p1 = np.full(4, 0.4)
        p2 = np.full(4, 0.6)
        params = VariationParams(eta_c=1e9)
        for _ in range(20):
            child = sbx_crossover(p1, p2, UNIT, params, rng)
            gap = np.minimum(np.abs(child - p1), np.abs(child - p2))
            assert np.all(gap < 1e-6)

    def test_seed_replay_is_bit_identical(self):
        p1 = np.zeros(4)
        p2 = np.ones(4)
        a = sbx_crossover(p1, p2, UNIT, VariationParams(), np.random.default_rng(123))
        b = sbx_crossover(p1, p2, UNIT, VariationParams(), np.random.default_rng(123))
        assert np.array_equal(a, b)

    def test_zero_crossover_probability_copies_first_parent(self):
        rng = np.random.default_rng(2)
        p1 = np.array([0.2, 0.4, 0.6, 0.8])
        p2 = np.array([0.9, 0.1, 0.5, 0.3])
        child = sbx_crossover(p1, p2, UNIT, VariationParams(p_c=0.0), rng)
        assert np.array_equal(child, p1)

    def test_respects_bounds(self):
        rng = np.random.default_rng(3)
        lo, hi = np.array([0.0, -1.0, 2.0, 0.0]), np.array([1.0, 1.0, 3.0, 0.5])
        for _ in range(2000):
            p1 = lo + rng.random(4) * (hi - lo)
            p2 = lo + rng.random(4) * (hi - lo)
            child = sbx_crossover(p1, p2, (lo, hi), VariationParams(), rng)
            assert np.all(child >= lo) and np.all(child <= hi)


class TestPolynomialMutation:
    def test_zero_rate_is_identity(self):
        rng = np.random.default_rng(0)
        x = np.array([0.1, 0.5, 0.9, 0.3])
        out = polynomial_mutation(x, UNIT, VariationParams(p_m=0.0), rng)
        assert np.array_equal(out, x)

    def test_lower_bound_variable_never_escapes_below(self):
        # negative-side draws collapse exactly onto the bound; positive-side
        # draws may move up but never below
        rng = np.random.default_rng(1)
        x = np.zeros(4)
        outputs = np.concatenate(
            [polynomial_mutation(x, UNIT, VariationParams(p_m=1.0), rng) for _ in range(50)]
        )
        assert np.all(outputs >= 0.0)
        assert np.sum(outputs == 0.0) > 50  # roughly half the draws are negative-side

    def test_respects_bounds(self):
        rng = np.random.default_rng(2)
        lo, hi = np.array([-2.0, 0.0, 1.0, 0.0]), np.array([2.0, 1.0, 4.0, 0.1])
        for _ in range(2000):
            x = lo + rng.random(4) * (hi - lo)
            out = polynomial_mutation(x, (lo, hi), VariationParams(p_m=1.0), rng)
            assert np.all(out >= lo) and np.all(out <= hi)

    def test_midpoint_perturbation_mean_is_centered(self):
        # Monte Carlo symmetry check: at the box midpoint the expected
        # perturbation is zero; the empirical mean must land within three
        # standard errors.
        rng = np.random.default_rng(5)
        n = 100_000
        x = np.full(n, 0.5)
        bounds = (np.zeros(n), np.ones(n))
        out = polynomial_mutation(x, bounds, VariationParams(p_m=1.0), rng)
        delta = out - 0.5
        stderr = delta.std(ddof=1) / np.sqrt(n)
        assert abs(delta.mean()) < 3 * stderr

    def test_expected_fraction_perturbed(self):
        rng = np.random.default_rng(6)
        n = 100_000
        x = np.full(n, 0.5)
        bounds = (np.zeros(n), np.ones(n))
        out = polynomial_mutation(x, bounds, VariationParams(p_m=0.25), rng)
        frac = np.mean(out != 0.5)
        assert abs(frac - 0.25) < 0.01


class TestRandomInit:
    def test_within_bounds(self):
        rng = np.random.default_rng(0)
        pop = random_init(3, (np.zeros(2), np.ones(2)), rng)
        X = decisions(pop)
        assert X.shape == (3, 2)
        assert np.all(X >= 0) and np.all(X <= 1)
        assert all(ind.f is None for ind in pop)

    def test_seed_replay(self):
        bounds = (np.zeros(5), np.ones(5))
        a = decisions(random_init(4, bounds, np.random.default_rng(42)))
        b = decisions(random_init(4, bounds, np.random.default_rng(42)))
        assert np.array_equal(a, b)

    def test_degenerate_bounds(self):
        rng = np.random.default_rng(0)
        lo = np.array([0.5, 1.0])
        pop = random_init(3, (lo, lo), rng)
        assert np.all(decisions(pop) == lo)
