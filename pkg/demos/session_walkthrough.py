"""Scripted walk through the interactive session API.

Drives the same HTTP surface the browser frontend uses: create a session,
answer the served pairs (here scripted to act like a hypervolume-minded
user), train, optimize, and fetch the result. Uses the in-process test
client; `prefpareto serve` exposes the identical routes over a socket.

Run:  python3 demos/session_walkthrough.py
"""

import tempfile
import time

from fastapi.testclient import TestClient

from prefpareto import ModelPoint, ParetoFront, hypervolume
from prefpareto.service import create_app

import numpy as np


def as_front(point_rows):
    points = tuple(
        ModelPoint(id=f"p{i}", losses=np.asarray(row)) for i, row in enumerate(point_rows)
    )
    return ParetoFront(points=points)


def result_front(doc):
    points = tuple(ModelPoint(id=p["id"], losses=np.asarray(p["losses"])) for p in doc)
    return ParetoFront(points=points)


with tempfile.TemporaryDirectory() as data_dir, TestClient(create_app(data_dir)) as client:
    created = client.post(
        "/sessions", json={"profile_id": 0, "n_fronts": 40, "pair_limit": 28, "seed": 7}
    ).json()
    sid = created["id"]
    print(f"session {sid}: phase={created['phase']}, {created['pair_total']} pairs queued")

    answered = 0
    while True:
        pair = client.get(f"/sessions/{sid}/pairs/next").json()
        if pair.get("done"):
            break
        left = hypervolume(as_front(pair["left_front"]))
        right = hypervolume(as_front(pair["right_front"]))
        choice = "left" if left >= right else "right"
        client.post(f"/sessions/{sid}/preferences", json={"pair_id": pair["pair_id"], "choice": choice})
        answered += 1
    print(f"answered {answered} pairs as a hypervolume-minded user")

    trained = client.post(f"/sessions/{sid}/train", json={"train_config": {"reg": 0.01}}).json()
    print(f"trained: cv tau estimate {trained['cv_tau_estimate']}")

    client.post(f"/sessions/{sid}/optimize", json={"budget": 30})
    while True:
        status = client.get(f"/sessions/{sid}/status").json()
        if status["phase"] == "done":
            break
        time.sleep(0.25)
    print(f"optimization finished: {status['trials_done']} trials")

    result = client.get(f"/sessions/{sid}/result").json()
    front = result_front(result["incumbent"]["front"])
    print(f"incumbent config: {result['incumbent']['config']}")
    print(f"incumbent front hypervolume: {hypervolume(front):.4f}")
