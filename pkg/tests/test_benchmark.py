from __future__ import annotations

import math

import numpy as np
import pytest

from prefpareto import (
    Configuration,
    DatasetProfile,
    EpochGrid,
    default_space,
    pareto_filter,
    run_moml,
    sample_config,
)


def config(**overrides):
    base = {
        "batch_size": 128,
        "learning_rate": 1e-2,
        "momentum": 0.5,
        "weight_decay": 1e-3,
        "n_layers": 3,
        "n_units": 256,
        "dropout": 0.2,
    }
    base.update(overrides)
    return Configuration(values=base)


class TestConfigSpace:
    def test_has_the_seven_hyperparameters(self):
        space = default_space()
        assert space.names() == [
            "batch_size",
            "learning_rate",
            "momentum",
            "weight_decay",
            "n_layers",
            "n_units",
            "dropout",
        ]
        assert space["batch_size"].log and space["batch_size"].kind == "int"
        assert space["momentum"].lo == 0.1 and space["momentum"].hi == 0.99

    def test_samples_stay_in_range(self, rng):
        space = default_space()
        for _ in range(2000):
            cfg = sample_config(space, rng)
            space.validate(cfg)

    def test_log_sampling_median_at_geometric_mean(self):
        space = default_space()
        rng = np.random.default_rng(5)
        lr_mid = math.sqrt(1e-4 * 1e-1)
        below = sum(sample_config(space, rng)["learning_rate"] < lr_mid for _ in range(10000))
        assert below / 10000 == pytest.approx(0.5, abs=0.02)

    def test_same_seed_same_config(self):
        space = default_space()
        a = sample_config(space, np.random.default_rng(42))
        b = sample_config(space, np.random.default_rng(42))
        assert a.values == b.values

    def test_validate_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            default_space().validate(config(batch_size=8))
        with pytest.raises(ValueError):
            default_space().validate(config(n_layers=2.5))


class TestDatasetProfile:
    def test_reproducible_coefficients(self):
        assert DatasetProfile(3).coefficients == DatasetProfile(3).coefficients

    def test_distinct_profiles_differ(self):
        assert DatasetProfile(0).coefficients != DatasetProfile(1).coefficients

    def test_coefficient_ranges(self):
        for pid in range(20):
            c = DatasetProfile(pid).coefficients
            assert len(c) == 11
            for i, v in enumerate(c, start=1):
                if i in (4, 6):
                    assert 0.2 <= v <= 0.8
                elif i == 11:
                    assert 0.0 <= v <= 0.3
                else:
                    assert 0.5 <= v <= 2.0


class TestEpochGrid:
    def test_default_grid(self):
        grid = EpochGrid()
        assert grid.epochs == tuple(range(5, 51, 5))
        assert len(grid) == 10

    def test_rejects_non_increasing(self):
        with pytest.raises(ValueError):
            EpochGrid(epochs=(5, 5, 10))


class TestRunMoml:
    def test_one_model_per_epoch(self):
        models = run_moml(config(), DatasetProfile(0))
        assert len(models) == 10
        assert [m.meta["epoch"] for m in models] == list(range(5, 51, 5))
        assert len({m.id for m in models}) == 10

    def test_losses_in_unit_interval(self, rng):
        space = default_space()
        for pid in range(3):
            profile = DatasetProfile(pid)
            for _ in range(50):
                for m in run_moml(sample_config(space, rng), profile):
                    assert 0.0 < m.losses[0] <= 1.0
                    assert 0.0 < m.losses[1] <= 1.0

    def test_energy_strictly_increasing_in_epoch(self, rng):
        space = default_space()
        profile = DatasetProfile(1)
        for _ in range(20):
            energies = [m.losses[1] for m in run_moml(sample_config(space, rng), profile)]
            assert all(b > a for a, b in zip(energies, energies[1:]))

    def test_accuracy_loss_monotone_without_dropout(self, rng):
        space = default_space()
        profile = DatasetProfile(2)
        for _ in range(100):
            cfg = sample_config(space, rng)
            cfg = Configuration(values={**cfg.values, "dropout": 0.0})
            acc_losses = [m.losses[0] for m in run_moml(cfg, profile)]
            assert all(b <= a + 1e-12 for a, b in zip(acc_losses, acc_losses[1:]))

    def test_power_ratio_linear_in_units(self):
        lo = run_moml(config(n_units=64), DatasetProfile(0))
        hi = run_moml(config(n_units=1024), DatasetProfile(0))
        assert hi[0].losses[1] / lo[0].losses[1] == pytest.approx(16.0)

    def test_deterministic(self):
        a = run_moml(config(), DatasetProfile(4))
        b = run_moml(config(), DatasetProfile(4))
        assert all(np.array_equal(x.losses, y.losses) for x, y in zip(a, b))

    def test_front_never_empty(self, rng):
        space = default_space()
        profile = DatasetProfile(5)
        for _ in range(50):
            front = pareto_filter(run_moml(sample_config(space, rng), profile))
            assert len(front) >= 1

    def test_front_diversity_across_configs(self, rng):
        space = default_space()
        profile = DatasetProfile(0)
        signatures = set()
        for _ in range(40):
            front = pareto_filter(run_moml(sample_config(space, rng), profile))
            signatures.add(tuple(tuple(p.losses) for p in front.points))
        assert len(signatures) > 1
