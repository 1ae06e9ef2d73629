import itertools
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from polybounds.lemmas import (
    DEFAULT_SEED,
    HypothesisError,
    MomentSequence,
    chebyshev_suite,
    chebyshev_sum_holds,
    moment_check,
    rearrangement_exhaustive,
    rearrangement_min,
    rearrangement_suite,
    reverse_chebyshev_holds,
    reverse_chebyshev_suite,
    simplex_f,
    simplex_f_min,
    simplex_grid_min,
    simplex_random_suite,
)
from polybounds.solver import clamped_basis_grams, eigenfunction_moments, interval_polyharmonic_eig


def test_ground_state_moments_l1():
    assert moment_check(MomentSequence((1.0, math.pi**2)), 1) == []


def test_beam_ground_state_moments():
    e, g = interval_polyharmonic_eig(2, 40, 1)
    ms = eigenfunction_moments(e, g, 0, 2)
    assert moment_check(ms, 2) == []
    assert ms.mu[1] <= math.sqrt(ms.lam) and round(math.sqrt(ms.lam), 2) == 22.37


def test_synthetic_violation():
    got = moment_check(MomentSequence((1.0, 2.0, 1.0)), 2)
    checks = {v.check for v in got}
    assert "log-convex-power" in checks and "power-bound" in checks and "log-convex" in checks


def test_moment_length_mismatch():
    with pytest.raises(ValueError):
        moment_check(MomentSequence((1.0, 2.0)), 2)


def test_moment_sequence_props():
    ms = MomentSequence((1, 3, 10))
    assert ms.l == 2 and ms.lam == 10.0


@given(st.floats(0.01, 100), st.integers(2, 6))
def test_power_moments_pass(lam, l):
    # mu_k = lam^{k/l} is on the boundary of every moment inequality
    assert moment_check(MomentSequence(tuple(lam ** (k / l) for k in range(l + 1))), l) == []


def test_simplex_values():
    for n in range(1, 11):
        assert simplex_f([1 / n] * n) == pytest.approx(simplex_f_min(n), rel=1e-14)
        vertex = [1.0] + [0.0] * (n - 1)
        assert simplex_f(vertex) == pytest.approx(0.2) and simplex_f(vertex) >= simplex_f_min(n)


def test_simplex_rejects_off_simplex():
    with pytest.raises(HypothesisError):
        simplex_f([0.5, 0.6])
    with pytest.raises(HypothesisError):
        simplex_f([1.5, -0.5])


@pytest.mark.parametrize("n", range(1, 11))
def test_simplex_random(n):
    assert simplex_random_suite(n, trials=10_000) == 0


def test_simplex_grid_small():
    for n in (1, 2):
        best, arg = simplex_grid_min(n)
        assert abs(best - 1 / (n + 4)) < 1e-6
        assert np.allclose(arg, 1 / n, atol=2e-3)


def test_chebyshev_examples():
    assert chebyshev_sum_holds([3.0], [2.0], [5.0])
    a, b, c = [2, 1], [1, 2], [1, 3]
    lhs = (4 + 2) * (2 + 3)
    rhs = 5 * (4 + 6)
    assert (lhs, rhs) == (30, 50) and chebyshev_sum_holds(a, b, c)


def test_chebyshev_hypotheses():
    with pytest.raises(HypothesisError, match="nonincreasing"):
        chebyshev_sum_holds([1, 2], [1, 2], [1, 2])
    with pytest.raises(HypothesisError, match="nondecreasing"):
        chebyshev_sum_holds([2, 1], [2, 1], [1, 2])
    with pytest.raises(HypothesisError, match="non-negative"):
        chebyshev_sum_holds([2, -1], [1, 2], [1, 2])


def test_reverse_chebyshev_examples():
    assert reverse_chebyshev_holds([1, 2, 7], [3, 3, 3])
    a, b = np.array([1, 2, 7.0]), np.array([3.0, 3, 3])
    assert np.dot(a, b) == a.sum() * b.sum() / 3
    assert reverse_chebyshev_holds([1, 2], [2, 1])
    with pytest.raises(HypothesisError):
        reverse_chebyshev_holds([2, 1], [2, 1])


def test_rearrangement_examples():
    c = d = [1, 2, 3]
    assert rearrangement_min(c, d, [2, 1, 0])
    assert np.dot(c, d) == 14 and np.dot(c, d[::-1]) == 10
    assert rearrangement_min(c, d, [0, 1, 2])
    with pytest.raises(HypothesisError, match="permutation"):
        rearrangement_min(c, d, [0, 0, 1])


def test_rearrangement_exhaustive_length5():
    rng = np.random.default_rng(7)
    for _ in range(20):
        c, d = np.sort(rng.normal(size=5)), np.sort(rng.normal(size=5))
        best, _ = rearrangement_exhaustive(c, d)
        assert best == pytest.approx(float(np.dot(c, d[::-1])), rel=1e-12, abs=1e-12)
        for p in itertools.permutations(range(5)):
            assert rearrangement_min(c, d, p)


def test_suites_are_seeded():
    assert chebyshev_suite(2000) == chebyshev_suite(2000, seed=DEFAULT_SEED)


sorted_lists = st.lists(st.floats(0, 100), min_size=1, max_size=7).map(sorted)


@given(sorted_lists, sorted_lists, sorted_lists)
def test_chebyshev_property(a, b, c):
    m = min(len(a), len(b), len(c))
    assert chebyshev_sum_holds(a[:m][::-1], b[:m], c[:m])


@given(sorted_lists, sorted_lists)
def test_reverse_chebyshev_property(a, b):
    m = min(len(a), len(b))
    assert reverse_chebyshev_holds(a[:m], b[:m][::-1])


@given(sorted_lists, sorted_lists, st.randoms(use_true_random=False))
def test_rearrangement_property(c, d, rnd):
    m = min(len(c), len(d))
    perm = list(range(m))
    rnd.shuffle(perm)
    assert rearrangement_min(c[:m], d[:m], perm)
