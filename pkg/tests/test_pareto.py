from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from prefpareto import (
    ModelPoint,
    dominates,
    hypervolume,
    indicator_value,
    max_spread,
    pareto_filter,
    r2_indicator,
    spacing,
)

from .conftest import make_front, make_points
from .oracles import (
    brute_force_front,
    grid_hypervolume,
    naive_max_spread,
    naive_r2,
    naive_spacing,
    staircase_front,
)

loss_value = st.floats(min_value=0.0, max_value=1.0, allow_nan=False, width=64)
loss_vector = st.tuples(loss_value, loss_value)


class TestDominates:
    def test_strict_in_one_equal_in_other(self):
        assert dominates((0.2, 0.3), (0.4, 0.3))

    def test_equal_vectors_do_not_dominate(self):
        assert not dominates((0.2, 0.3), (0.2, 0.3))

    def test_incomparable_pair(self):
        assert not dominates((0.1, 0.9), (0.9, 0.1))
        assert not dominates((0.9, 0.1), (0.1, 0.9))

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            dominates((0.1, 0.2), (0.1, 0.2, 0.3))

    @given(loss_vector, loss_vector)
    def test_antisymmetry(self, a, b):
        assert not (dominates(a, b) and dominates(b, a))

    @given(loss_vector)
    def test_irreflexivity(self, a):
        assert not dominates(a, a)


class TestParetoFilter:
    def test_drops_dominated_point(self):
        front = pareto_filter(make_points([(0.2, 0.5), (0.5, 0.2), (0.6, 0.6)]))
        assert sorted(tuple(p.losses) for p in front.points) == [(0.2, 0.5), (0.5, 0.2)]

    def test_single_point(self):
        front = pareto_filter(make_points([(0.4, 0.4)]))
        assert len(front) == 1

    def test_duplicates_collapse_to_smallest_id(self):
        front = pareto_filter(make_points([(0.3, 0.3), (0.3, 0.3)]))
        assert len(front) == 1
        assert front.points[0].id == "m0"

    def test_empty_input(self):
        with pytest.raises(ValueError):
            pareto_filter([])

    def test_sorted_by_energy(self):
        front = pareto_filter(make_points([(0.2, 0.5), (0.5, 0.2)]))
        energies = [p.losses[1] for p in front.points]
        assert energies == sorted(energies)

    def test_idempotent(self, rng):
        for _ in range(20):
            pts = make_points(rng.uniform(0, 1, size=(8, 2)))
            once = pareto_filter(pts)
            twice = pareto_filter(once.points)
            assert [p.id for p in once.points] == [p.id for p in twice.points]

    def test_matches_brute_force(self, rng):
        for _ in range(50):
            rows = rng.uniform(0, 1, size=(rng.integers(1, 10), 2))
            got = {tuple(p.losses) for p in pareto_filter(make_points(rows)).points}
            want = {tuple(rows[i]) for i in brute_force_front(rows)}
            assert got == want


class TestHypervolume:
    def test_ideal_point_fills_unit_square(self):
        assert hypervolume(make_front([(0.0, 0.0)])) == 1.0

    def test_point_at_reference(self):
        assert hypervolume(make_front([(1.0, 1.0)])) == 0.0

    def test_two_point_front_exact(self):
        got = hypervolume(make_front([(0.2, 0.5), (0.5, 0.2)]))
        assert got == pytest.approx(0.55, abs=1e-12)
        oracle = grid_hypervolume([(0.2, 0.5), (0.5, 0.2)])
        assert abs(got - oracle) <= 1e-3

    def test_reference_violation(self):
        with pytest.raises(ValueError):
            hypervolume(make_front([(0.5, 0.5)]), ref=(0.4, 1.0))

    def test_matches_grid_oracle(self, rng):
        for _ in range(20):
            rows = staircase_front(rng, int(rng.integers(1, 21)))
            got = hypervolume(make_front(rows))
            assert abs(got - grid_hypervolume(rows)) <= 1e-3

    def test_monotone_in_new_nondominated_point(self, rng):
        for _ in range(20):
            rows = staircase_front(rng, 6)
            base = make_front(rows)
            extra = np.vstack([rows, [[rows[:, 0].min() / 2, rows[:, 1].max() + (1 - rows[:, 1].max()) / 2]]])
            bigger = pareto_filter(make_points(extra))
            assert hypervolume(bigger) >= hypervolume(base) - 1e-12


class TestSpacing:
    def test_equidistant_manhattan_is_zero(self):
        assert spacing(make_front([(0.0, 1.0), (0.5, 0.5), (1.0, 0.0)])) == pytest.approx(0.0, abs=1e-15)

    def test_singleton_is_zero(self):
        assert spacing(make_front([(0.3, 0.3)])) == 0.0

    def test_matches_naive_oracle(self):
        rows = [(0.0, 1.0), (0.5, 0.5), (0.6, 0.4)]
        assert spacing(make_front(rows)) == pytest.approx(naive_spacing(rows), abs=1e-12)

    def test_non_negative(self, rng):
        for _ in range(20):
            rows = staircase_front(rng, int(rng.integers(1, 12)))
            assert spacing(make_front(rows)) >= 0.0


class TestMaxSpread:
    def test_full_diagonal(self):
        assert max_spread(make_front([(0.0, 1.0), (1.0, 0.0)])) == pytest.approx(math.sqrt(2), abs=1e-12)

    def test_singleton_is_zero(self):
        assert max_spread(make_front([(0.7, 0.2)])) == 0.0

    def test_matches_naive_oracle(self):
        rows = [(0.1, 0.8), (0.4, 0.5), (0.6, 0.2)]
        assert max_spread(make_front(rows)) == pytest.approx(math.sqrt(0.5**2 + 0.6**2), abs=1e-12)
        assert max_spread(make_front(rows)) == pytest.approx(naive_max_spread(rows), abs=1e-12)

    def test_permutation_invariant(self, rng):
        rows = staircase_front(rng, 5)
        shuffled = rows[rng.permutation(5)]
        assert max_spread(make_front(rows)) == max_spread(make_front(shuffled))

    def test_superset_with_same_extrema(self):
        outer = [(0.1, 0.9), (0.9, 0.1)]
        inner = [(0.1, 0.9), (0.5, 0.5), (0.9, 0.1)]
        assert max_spread(make_front(outer)) == max_spread(make_front(inner))


class TestR2:
    def test_front_containing_ideal(self):
        assert r2_indicator(make_front([(0.0, 0.0)])) == 0.0

    def test_single_point(self):
        assert r2_indicator(make_front([(0.3, 0.4)])) == pytest.approx(0.4, abs=1e-15)

    def test_min_over_points(self):
        assert r2_indicator(make_front([(0.3, 0.4), (0.1, 0.9)])) == pytest.approx(0.4, abs=1e-15)

    def test_lower_bound_of_pointwise_chebyshev(self, rng):
        rows = staircase_front(rng, 7)
        value = r2_indicator(make_front(rows))
        assert value <= naive_r2(rows) + 1e-15
        for row in rows:
            assert value <= max(abs(v) for v in row) + 1e-15


class TestIndicatorValue:
    def test_dispatch(self):
        assert indicator_value("HV", make_front([(0.0, 0.0)])) == 1.0
        assert indicator_value("R2", make_front([(0.0, 0.0)])) == 0.0
        assert indicator_value("MS", make_front([(0.0, 1.0), (1.0, 0.0)])) == pytest.approx(math.sqrt(2))

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            indicator_value("IGD", make_front([(0.5, 0.5)]))

    def test_deterministic(self, rng):
        rows = staircase_front(rng, 9)
        front = make_front(rows)
        for kind in ("HV", "SP", "MS", "R2"):
            assert indicator_value(kind, front) == indicator_value(kind, front)


class TestModelPoint:
    def test_rejects_out_of_range_losses(self):
        with pytest.raises(ValueError):
            ModelPoint(id="bad", losses=np.array([1.2, 0.1]))

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            ModelPoint(id="bad", losses=np.array([np.nan, 0.1]))

    def test_front_rejects_dominated_members(self):
        with pytest.raises(ValueError):
            make_front([(0.2, 0.2), (0.5, 0.5)])
