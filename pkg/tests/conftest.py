from __future__ import annotations

import numpy as np
import pytest

from prefpareto import ModelPoint, ParetoFront


def make_points(loss_rows, prefix="m"):
    return [
        ModelPoint(id=f"{prefix}{i}", losses=np.asarray(row, dtype=float))
        for i, row in enumerate(loss_rows)
    ]


def make_front(loss_rows, order_key=1):
    return ParetoFront(points=tuple(make_points(loss_rows)), order_key=order_key)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
