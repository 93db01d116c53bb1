import itertools
import math

import numpy as np
import pytest

from artmoo.indicators import hypervolume, igd_plus, normalize_front
from artmoo.problems import make_problem, reference_front


def hv_inclusion_exclusion(F, q):
    """Independent exact hypervolume for small sets via inclusion-exclusion."""
    total = 0.0
    n = len(F)
    for r in range(1, n + 1):
        for subset in itertools.combinations(range(n), r):
            corner = np.max(F[list(subset)], axis=0)
            vol = np.prod(np.maximum(q - corner, 0.0))
            total += (-1) ** (r + 1) * vol
    return total


def igdp_double_loop(F, R):
    """Independent scalar IGD+ with the same elementary operation order."""
    mins = []
    for r in R:
        best = math.inf
        for p in F:
            acc = 0.0
            for pm, rm in zip(p, r):
                gap = max(pm - rm, 0.0)
                acc = acc + gap * gap
            best = min(best, math.sqrt(acc))
        mins.append(best)
    return float(np.mean(mins))


class TestHypervolumeExact:
    def test_single_point_2d(self):
        res = hypervolume(np.array([[0.0, 0.0]]), np.array([1.5, 1.5]))
        assert res.value == 2.25
        assert res.method == "exact"

    def test_two_point_2d(self):
        res = hypervolume(np.array([[0.0, 1.0], [1.0, 0.0]]), np.array([1.5, 1.5]))
        assert res.value == pytest.approx(1.25, abs=1e-15)

    def test_points_outside_reference_ignored(self):
        res = hypervolume(np.array([[0.0, 1.0], [2.0, 0.0]]), np.array([1.5, 1.5]))
        assert res.value == pytest.approx(1.5 * 0.5, abs=1e-15)

    def test_empty_contribution(self):
        assert hypervolume(np.array([[2.0, 2.0]]), np.array([1.5, 1.5])).value == 0.0

    def test_duplicates_add_nothing(self):
        q = np.array([1.5, 1.5])
        one = hypervolume(np.array([[0.5, 0.5]]), q).value
        two = hypervolume(np.array([[0.5, 0.5], [0.5, 0.5]]), q).value
        assert one == two

    @pytest.mark.parametrize("m", [2, 3])
    def test_matches_inclusion_exclusion(self, m):
        rng = np.random.default_rng(3)
        q = np.full(m, 1.5)
        for _ in range(40):
            F = rng.random((rng.integers(1, 8), m))
            expected = hv_inclusion_exclusion(F, q)
            assert hypervolume(F, q).value == pytest.approx(expected, rel=1e-10, abs=1e-12)

    def test_monotone_under_added_points(self):
        rng = np.random.default_rng(4)
        q = np.full(3, 1.5)
        F = rng.random((5, 3))
        base = hypervolume(F, q).value
        for _ in range(20):
            extra = np.vstack([F, rng.random(3)])
            assert hypervolume(extra, q).value >= base - 1e-12

    def test_2d_matches_grid_rasterization(self):
        # brute-force rasterization at delta = 1e-3 on random 20-point fronts
        rng = np.random.default_rng(5)
        q = np.array([1.5, 1.5])
        delta = 1e-3
        centers = (np.arange(1500) + 0.5) * delta
        cx, cy = np.meshgrid(centers, centers, indexing="ij")
        cells = np.stack([cx.ravel(), cy.ravel()], axis=1)
        for _ in range(3):
            F = rng.random((20, 2))
            dominated = np.zeros(len(cells), dtype=bool)
            for p in F:
                dominated |= (cells >= p).all(axis=1)
            raster = dominated.sum() * delta * delta
            assert hypervolume(F, q).value == pytest.approx(raster, abs=2e-3)

    def test_exact_mode_rejects_high_dimensions(self):
        with pytest.raises(ValueError):
            hypervolume(np.zeros((1, 4)), np.full(4, 1.5), mode="exact")


class TestHypervolumeMonteCarlo:
    def test_within_one_percent_of_exact(self):
        F = np.array([[0.0, 1.0], [1.0, 0.0]])
        q = np.array([1.5, 1.5])
        res = hypervolume(F, q, mode="monte-carlo", samples=10**6, seed=0)
        assert res.method == "monte-carlo"
        assert res.samples == 10**6
        assert abs(res.value - 1.25) / 1.25 < 0.01

    def test_bit_exact_reproducibility(self):
        rng = np.random.default_rng(6)
        F = rng.random((30, 4))
        q = np.full(4, 1.5)
        a = hypervolume(F, q, mode="monte-carlo", samples=200_000, seed=42)
        b = hypervolume(F, q, mode="monte-carlo", samples=200_000, seed=42)
        assert a.value == b.value

    def test_auto_mode_uses_mc_above_3d(self):
        F = np.zeros((1, 4))
        res = hypervolume(F, np.full(4, 1.5), samples=50_000, seed=1)
        assert res.method == "monte-carlo"
        assert res.value == pytest.approx(1.5**4, rel=0.02)


class TestIgdPlus:
    def test_superset_of_reference_is_zero(self):
        rng = np.random.default_rng(0)
        R = rng.random((20, 3))
        F = np.vstack([R, rng.random((5, 3))])
        assert igd_plus(F, R).value == 0.0

    def test_both_coordinates_clamp_positive(self):
        assert igd_plus(np.array([[1.0, 1.0]]), np.array([[0.0, 0.0]])).value == pytest.approx(
            math.sqrt(2.0)
        )

    def test_improved_coordinate_clamps_to_zero(self):
        assert igd_plus(np.array([[0.0, 1.0]]), np.array([[1.0, 0.0]])).value == 1.0

    def test_matches_double_loop_exactly(self):
        rng = np.random.default_rng(1)
        for _ in range(100):
            F = rng.random((rng.integers(1, 12), 4))
            R = rng.random((rng.integers(1, 15), 4))
            assert igd_plus(F, R).value == igdp_double_loop(F, R)

    def test_weakly_pareto_compliant_on_dominating_pairs(self):
        rng = np.random.default_rng(2)
        R = rng.random((25, 3))
        P2 = rng.random((10, 3)) + 0.1
        P1 = P2 - rng.random((10, 3)) * 0.1  # componentwise dominates P2
        assert igd_plus(P1, R).value <= igd_plus(P2, R).value

    def test_empty_population_rejected(self):
        with pytest.raises(ValueError):
            igd_plus(np.empty((0, 2)), np.array([[0.0, 0.0]]))


class TestNormalizeFront:
    def test_affine_map(self):
        problem = make_problem("maf1", 2)
        front = reference_front(problem, 50)
        # synthetic bounds check with hand-built front-like object
        ideal, nadir = front.ideal, front.nadir
        mid = normalize_front((ideal + nadir) / 2.0, front)
        assert mid[0] == pytest.approx(np.full(2, 0.5), abs=1e-12)
        assert normalize_front(ideal, front)[0] == pytest.approx(np.zeros(2), abs=1e-12)
        assert normalize_front(nadir, front)[0] == pytest.approx(np.ones(2), abs=1e-12)

    def test_explicit_values(self):
        class Stub:
            ideal = np.zeros(2)
            nadir = np.full(2, 4.0)

        from artmoo.problems import ReferenceFront

        front = ReferenceFront("stub", np.zeros((1, 2)), Stub.ideal, Stub.nadir)
        out = normalize_front(np.array([[2.0, 2.0]]), front)
        assert np.array_equal(out, [[0.5, 0.5]])

    def test_degenerate_span_maps_to_zero(self):
        from artmoo.problems import ReferenceFront

        front = ReferenceFront("stub", np.zeros((1, 2)), np.zeros(2), np.array([1.0, 0.0]))
        out = normalize_front(np.array([[0.5, 7.0]]), front)
        assert np.array_equal(out, [[0.5, 0.0]])
