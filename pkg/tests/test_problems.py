"""Problem-suite tests; every objective kernel is checked against a second,
independently written scalar transcription of the published formulas."""

import math

import numpy as np
import pytest

from artmoo.core import dominates, nondominated_mask
from artmoo.problems import available_problems, front_to_csv, make_problem, reference_front

# -- scalar oracles -------------------------------------------------------------


def trig_column(x, M, m):
    """m-th (1-based) DTLZ2-style product over position values x."""
    val = 1.0
    for i in range(M - m):
        val *= math.cos(0.5 * math.pi * x[i])
    if m > 1:
        val *= math.sin(0.5 * math.pi * x[M - m])
    return val


def dtlz2_scalar(x, M):
    g = sum((xi - 0.5) ** 2 for xi in x[M - 1 :])
    return [(1.0 + g) * trig_column(x, M, m) for m in range(1, M + 1)]


def dtlz7_scalar(x, M):
    k = len(x) - M + 1
    g = 1.0 + 9.0 / k * sum(x[M - 1 :])
    f = list(x[: M - 1])
    h = M - sum(fi / (1.0 + g) * (1.0 + math.sin(3.0 * math.pi * fi)) for fi in f)
    return f + [(1.0 + g) * h]


def maf1_scalar(x, M):
    g = sum((xi - 0.5) ** 2 for xi in x[M - 1 :])
    f = []
    for m in range(1, M + 1):
        prod = 1.0
        for i in range(M - m):
            prod *= x[i]
        if m > 1:
            prod *= 1.0 - x[M - m]
        f.append((1.0 + g) * (1.0 - prod))
    return f


def maf2_scalar(x, M):
    D = len(x)
    c = (D - M + 1) // M
    f = []
    theta = [xi / 2.0 + 0.25 for xi in x[: M - 1]]
    for m in range(1, M + 1):
        start = (M - 1) + (m - 1) * c
        stop = start + c if m < M else D
        g = sum((xi / 2.0 + 0.25 - 0.5) ** 2 for xi in x[start:stop])
        f.append((1.0 + g) * trig_column(theta, M, m))
    return f


def g_multimodal_scalar(xd):
    return 100.0 * (len(xd) + sum((xi - 0.5) ** 2 - math.cos(20.0 * math.pi * (xi - 0.5)) for xi in xd))


def maf3_scalar(x, M):
    g = g_multimodal_scalar(x[M - 1 :])
    f = [(1.0 + g) * trig_column(x, M, m) for m in range(1, M + 1)]
    return [fi**4 for fi in f[:-1]] + [f[-1] ** 2]


def maf4_scalar(x, M):
    g = g_multimodal_scalar(x[M - 1 :])
    return [2.0**m * (1.0 + g) * (1.0 - trig_column(x, M, m)) for m in range(1, M + 1)]


def maf5_scalar(x, M):
    g = sum((xi - 0.5) ** 2 for xi in x[M - 1 :])
    warped = [xi**100 for xi in x[: M - 1]]
    return [
        2.0 ** (M - m + 1) * ((1.0 + g) * trig_column(warped, M, m)) ** 4 for m in range(1, M + 1)
    ]


def maf6_scalar(x, M):
    g = sum((xi - 0.5) ** 2 for xi in x[M - 1 :])
    theta = list(x[: M - 1])
    for i in range(1, M - 1):
        theta[i] = (1.0 + 2.0 * g * theta[i]) / (2.0 + 2.0 * g)
    return [(1.0 + 100.0 * g) * trig_column(theta, M, m) for m in range(1, M + 1)]


SCALAR_ORACLES = {
    "dtlz2": dtlz2_scalar,
    "dtlz7": dtlz7_scalar,
    "maf1": maf1_scalar,
    "maf2": maf2_scalar,
    "maf3": maf3_scalar,
    "maf4": maf4_scalar,
    "maf5": maf5_scalar,
    "maf6": maf6_scalar,
    "maf7": dtlz7_scalar,
}


@pytest.mark.parametrize("name", sorted(SCALAR_ORACLES))
@pytest.mark.parametrize("m", [2, 3, 5])
def test_evaluate_matches_independent_transcription(name, m):
    problem = make_problem(name, m)
    rng = np.random.default_rng(hash((name, m)) % 2**32)
    X = rng.random((50, problem.n_var))
    F = problem.evaluate_batch(X)
    for x, f in zip(X, F):
        expected = SCALAR_ORACLES[name](list(x), m)
        assert f == pytest.approx(expected, rel=1e-10, abs=1e-12)


class TestAnalyticIdentities:
    def test_dtlz2_optimal_g_on_unit_sphere(self):
        problem = make_problem("dtlz2", 4)
        rng = np.random.default_rng(0)
        for _ in range(20):
            x = np.concatenate([rng.random(3), np.full(problem.n_var - 3, 0.5)])
            f = problem.evaluate(x)
            assert np.sum(f**2) == pytest.approx(1.0)

    def test_maf1_optimal_g_on_inverted_simplex(self):
        for m in (3, 5):
            problem = make_problem("maf1", m)
            rng = np.random.default_rng(1)
            for _ in range(20):
                x = np.concatenate([rng.random(m - 1), np.full(problem.n_var - m + 1, 0.5)])
                f = problem.evaluate(x)
                assert np.sum(f) == pytest.approx(m - 1)

    def test_dtlz7_zero_position_and_distance(self):
        for m in (3, 5):
            problem = make_problem("dtlz7", m)
            f = problem.evaluate(np.zeros(problem.n_var))
            assert np.array_equal(f[: m - 1], np.zeros(m - 1))
            assert f[m - 1] == pytest.approx(2.0 * m)

    def test_evaluate_is_pure(self):
        problem = make_problem("maf3", 3)
        rng = np.random.default_rng(2)
        x = rng.random(problem.n_var)
        first = problem.evaluate(x)
        for _ in range(100):
            assert np.array_equal(problem.evaluate(x), first)

    def test_dimension_mismatch_raises(self):
        problem = make_problem("dtlz2", 3)
        with pytest.raises(ValueError):
            problem.evaluate(np.zeros(problem.n_var + 1))

    def test_unknown_problem_rejected(self):
        with pytest.raises(ValueError):
            make_problem("nope", 3)

    def test_default_dimensions(self):
        assert make_problem("maf1", 5).n_var == 14  # k = 10
        assert make_problem("maf7", 5).n_var == 24  # k = 20
        assert make_problem("dtlz7", 3).n_var == 22


class TestReferenceFronts:
    def test_dtlz2_front_on_unit_sphere(self):
        problem = make_problem("dtlz2", 3)
        front = reference_front(problem, 100)
        raw = front.points * (front.nadir - front.ideal) + front.ideal
        assert np.allclose(np.linalg.norm(raw, axis=1), 1.0, atol=1e-9)

    def test_maf1_front_on_inverted_simplex(self):
        problem = make_problem("maf1", 3)
        front = reference_front(problem, 100)
        raw = front.points * (front.nadir - front.ideal) + front.ideal
        assert np.allclose(raw.sum(axis=1), 2.0, atol=1e-9)

    def test_maf7_front_internally_nondominated(self):
        problem = make_problem("maf7", 3)
        front = reference_front(problem, 300)
        assert np.all(nondominated_mask(front.points))

    def test_points_are_normalized(self):
        for name in sorted(SCALAR_ORACLES):
            problem = make_problem(name, 3)
            front = reference_front(problem, 150)
            assert len(front) >= 150 * 0.5
            assert front.points.min() >= -1e-12
            assert front.points.max() <= 1.0 + 1e-12

    @pytest.mark.parametrize("name", sorted(SCALAR_ORACLES))
    def test_optimal_solutions_consistent_with_front(self, name):
        # cross-validation of the two transcriptions: evaluating with optimal
        # distance settings never dominates a true-front sample, and for the
        # connected geometries the front never dominates such points either
        # (tiny slack absorbs rounding in the normalization)
        m = 3
        problem = make_problem(name, m)
        front = reference_front(problem, 200)
        rng = np.random.default_rng(7)
        X = rng.random((30, problem.n_var))
        X[:, m - 1 :] = 0.0 if name in ("dtlz7", "maf7") else 0.5
        F = problem.evaluate_batch(X)
        span = np.where(front.nadir - front.ideal > 0, front.nadir - front.ideal, 1.0)
        normalized = (F - front.ideal) / span
        connected = name not in ("dtlz7", "maf7")
        for f in normalized:
            for p in front.points:
                assert not dominates(f + 1e-9, p)
                if connected:
                    assert not dominates(p, f - 1e-9)

    def test_csv_export(self, tmp_path):
        problem = make_problem("maf1", 3)
        front = reference_front(problem, 50)
        path = tmp_path / "front.csv"
        front_to_csv(front, path)
        rows = path.read_text().strip().splitlines()
        assert rows[0] == "f1,f2,f3"
        assert len(rows) == len(front) + 1
        parsed = np.array([[float(v) for v in row.split(",")] for row in rows[1:]])
        assert np.allclose(parsed, front.points)


def test_available_problems_lists_all():
    assert set(available_problems()) == set(SCALAR_ORACLES)
