"""REST service walking a session through sampling, preferences, and HPO.

Each session is one JSON document under the data directory, rewritten
atomically after every mutation, so a restarted server resumes exactly where
the client left off. Optimization runs as one background thread per session;
it is a pure function of the persisted state, so an orphaned job (server died
mid-run) is simply relaunched and reproduces the same trajectory.
"""

from __future__ import annotations

import hashlib
import json
import threading
from datetime import datetime, timezone
from pathlib import Path

import numpy as np
from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse

from .benchmark import DatasetProfile, default_space, run_moml
from .features import FeatureStats, encode_front, fit_stats, front_features
from .hpo import CostSpec, OptimizerConfig, cost, optimize as hpo_optimize, random_search
from .oracle import build_pairs
from .pareto import ModelPoint, ParetoFront, pareto_filter
from .ranksvm import (
    PreferencePair,
    TrainConfig,
    UtilityModel,
    build_svm_dataset,
    train_linear_ranksvm,
    utility,
)

PHASES = ("sampling", "preferences", "training", "optimizing", "done")
CV_ESTIMATE_MIN_PREFS = 10


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message


def _bad_request(message: str) -> ApiError:
    return ApiError(400, "invalid_request", message)


def _not_found(session_id: str) -> ApiError:
    return ApiError(404, "session_not_found", f"no session {session_id!r}")


def _conflict(code: str, message: str) -> ApiError:
    return ApiError(409, code, message)


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


def _derived_seed(seed: int, tag: int) -> int:
    return int(np.random.SeedSequence([seed, tag]).generate_state(1)[0])


def _session_id(profile_id: int, n_fronts: int, pair_limit, seed: int) -> str:
    payload = json.dumps(
        {"profile_id": profile_id, "n_fronts": n_fronts, "pair_limit": pair_limit, "seed": seed},
        sort_keys=True,
    )
    return hashlib.sha256(payload.encode()).hexdigest()[:16]


def _front_to_json(front: ParetoFront) -> list:
    return [{"id": p.id, "losses": p.losses.tolist()} for p in front.points]


def _front_from_json(doc: list) -> ParetoFront:
    points = tuple(ModelPoint(id=p["id"], losses=np.asarray(p["losses"])) for p in doc)
    return ParetoFront(points=points)


class SessionStore:
    """One JSON file per session, written atomically."""

    def __init__(self, data_dir):
        self.data_dir = Path(data_dir)
        self.data_dir.mkdir(parents=True, exist_ok=True)

    def path(self, session_id: str) -> Path:
        return self.data_dir / f"{session_id}.json"

    def exists(self, session_id: str) -> bool:
        return self.path(session_id).exists()

    def load(self, session_id: str) -> dict:
        return json.loads(self.path(session_id).read_text())

    def save(self, state: dict) -> None:
        state["updated_at"] = _now()
        target = self.path(state["id"])
        tmp = target.with_suffix(".tmp")
        tmp.write_text(json.dumps(state, sort_keys=True))
        tmp.replace(target)


class SessionManager:
    def __init__(self, data_dir):
        self.store = SessionStore(data_dir)
        self.sessions: dict[str, dict] = {}
        self.locks: dict[str, threading.Lock] = {}
        self.jobs: dict[str, threading.Thread] = {}
        self.registry_lock = threading.Lock()

    def lock_for(self, session_id: str) -> threading.Lock:
        with self.registry_lock:
            return self.locks.setdefault(session_id, threading.Lock())

    def get(self, session_id: str) -> dict:
        with self.registry_lock:
            state = self.sessions.get(session_id)
        if state is not None:
            return state
        if not self.store.exists(session_id):
            raise _not_found(session_id)
        state = self.store.load(session_id)
        with self.registry_lock:
            state = self.sessions.setdefault(session_id, state)
        # a session persisted mid-optimization has no live job here: relaunch,
        # the trajectory is seed-determined and comes out identical
        if state["phase"] == "optimizing":
            self.ensure_job(state)
        return state

    def persist(self, state: dict) -> None:
        self.store.save(state)

    # -- creation ----------------------------------------------------------

    def create(self, profile_id: int, n_fronts: int, pair_limit, seed: int) -> dict:
        if n_fronts < 2:
            raise _bad_request("n_fronts must be >= 2")
        if pair_limit is not None and pair_limit < 1:
            raise _bad_request("pair_limit must be >= 1 when given")
        session_id = _session_id(profile_id, n_fronts, pair_limit, seed)
        if self.store.exists(session_id):
            raise _conflict("session_exists", f"session {session_id} already exists")

        space = default_space()
        profile = DatasetProfile(profile_id)

        def sample_objective(cfg):
            return 0.0, pareto_filter(run_moml(cfg, profile))

        sampling = random_search(sample_objective, space, budget=n_fronts, seed=_derived_seed(seed, 1))
        fronts = [t.front for t in sampling.trials]
        stats = fit_stats([encode_front(f) for f in fronts])
        try:
            pairs = build_pairs(fronts, limit=pair_limit, seed=_derived_seed(seed, 2))
        except ValueError as exc:
            raise _bad_request(str(exc)) from None
        flip_rng = np.random.default_rng([seed, 3])
        queue = []
        for i, (a, b) in enumerate(pairs):
            left, right = (a, b) if flip_rng.random() < 0.5 else (b, a)
            queue.append({"pair_id": f"p{i:04d}", "left": left, "right": right})

        state = {
            "id": session_id,
            "phase": "preferences",
            "profile_id": profile_id,
            "n_fronts": n_fronts,
            "pair_limit": pair_limit,
            "seed": seed,
            "created_at": _now(),
            "updated_at": None,
            "sampled_fronts": [_front_to_json(f) for f in fronts],
            "stats": stats.to_json(),
            "pair_queue": queue,
            "cursor": 0,
            "preferences": [],
            "cv_tau_estimate": None,
            "model": None,
            "optimize": None,
        }
        self.persist(state)
        with self.registry_lock:
            self.sessions[session_id] = state
        return state

    # -- preference phase --------------------------------------------------

    def next_pair(self, state: dict) -> dict:
        if state["phase"] != "preferences":
            raise _conflict("wrong_phase", f"no pairs in phase {state['phase']}")
        total = len(state["pair_queue"])
        progress = {"answered": state["cursor"], "total": total}
        if state["cursor"] >= total:
            return {"done": True, "progress": progress}
        entry = state["pair_queue"][state["cursor"]]
        fronts = state["sampled_fronts"]
        return {
            "pair_id": entry["pair_id"],
            "left_front": [p["losses"] for p in fronts[entry["left"]]],
            "right_front": [p["losses"] for p in fronts[entry["right"]]],
            "progress": progress,
        }

    def submit_preference(self, state: dict, pair_id: str, choice: str) -> dict:
        if state["phase"] != "preferences":
            raise _conflict("wrong_phase", f"cannot answer pairs in phase {state['phase']}")
        if choice not in ("left", "right", "skip"):
            raise _bad_request(f"choice must be left, right, or skip, got {choice!r}")
        total = len(state["pair_queue"])
        if state["cursor"] >= total:
            raise _conflict("queue_exhausted", "all pairs already answered")
        entry = state["pair_queue"][state["cursor"]]
        if pair_id != entry["pair_id"]:
            raise _conflict("stale_pair", f"current pair is {entry['pair_id']}, got {pair_id!r}")
        if choice != "skip":
            winner = entry["left"] if choice == "left" else entry["right"]
            loser = entry["right"] if choice == "left" else entry["left"]
            state["preferences"].append({"winner": winner, "loser": loser, "source": "human"})
        state["cursor"] += 1
        self.persist(state)
        return {"ok": True, "recorded": choice != "skip", "progress": {"answered": state["cursor"], "total": total}}

    # -- training phase ------------------------------------------------------

    def _features(self, state: dict) -> tuple[dict, FeatureStats]:
        stats = FeatureStats.from_json(state["stats"])
        fronts = [_front_from_json(doc) for doc in state["sampled_fronts"]]
        return {i: front_features(f, stats) for i, f in enumerate(fronts)}, stats

    def train(self, state: dict, train_config: dict | None) -> dict:
        if state["phase"] not in ("preferences", "training"):
            raise _conflict("wrong_phase", f"cannot train in phase {state['phase']}")
        prefs = [PreferencePair(p["winner"], p["loser"], p["source"]) for p in state["preferences"]]
        if not prefs:
            raise _conflict("no_preferences", "at least one recorded preference is required")
        try:
            cfg = TrainConfig(**train_config) if train_config else TrainConfig(seed=state["seed"])
        except (TypeError, ValueError) as exc:
            raise _bad_request(f"bad train_config: {exc}") from None
        feats, stats = self._features(state)
        model = train_linear_ranksvm(build_svm_dataset(prefs, feats), cfg, stats_ref=stats.digest())
        estimate = self._cv_estimate(state, prefs, feats, cfg, stats)
        state["model"] = model.to_json()
        state["cv_tau_estimate"] = estimate
        state["phase"] = "training"
        self.persist(state)
        return {
            "cv_tau_estimate": estimate,
            "model_summary": {
                "stats_ref": model.stats_ref,
                "dim": len(model.w),
                "n_preferences": len(prefs),
            },
        }

    def _cv_estimate(self, state, prefs, feats, cfg, stats) -> float | None:
        """Fold the sampled fronts; score held-in pairs by held-out training."""
        if len(prefs) < CV_ESTIMATE_MIN_PREFS:
            return None
        folds = np.array_split(np.arange(state["n_fronts"]), 5)
        taus = []
        for fold in folds:
            held = set(fold.tolist())
            train_prefs = [p for p in prefs if p.winner not in held and p.loser not in held]
            test_prefs = [p for p in prefs if p.winner in held and p.loser in held]
            if not train_prefs or not test_prefs:
                continue
            model = train_linear_ranksvm(build_svm_dataset(train_prefs, feats), cfg, stats_ref=stats.digest())
            correct = sum(
                utility(model, feats[p.winner]) > utility(model, feats[p.loser]) for p in test_prefs
            )
            taus.append(2.0 * correct / len(test_prefs) - 1.0)
        if not taus:
            return None
        return float(np.mean(taus))

    # -- optimization phase --------------------------------------------------

    def start_optimize(self, state: dict, budget: int) -> dict:
        if budget < 1:
            raise _bad_request("budget must be >= 1")
        if state["phase"] == "optimizing":
            raise _conflict("already_optimizing", "an optimization job is already running")
        if state["phase"] != "training" or state["model"] is None:
            raise _conflict("wrong_phase", "train a utility model before optimizing")
        state["optimize"] = {
            "budget": budget,
            "trials_done": 0,
            "incumbent_cost": None,
            "trajectory": None,
        }
        state["phase"] = "optimizing"
        self.persist(state)
        self.ensure_job(state)
        return {"accepted": True, "budget": budget}

    def ensure_job(self, state: dict) -> None:
        session_id = state["id"]
        with self.registry_lock:
            job = self.jobs.get(session_id)
            if job is not None and job.is_alive():
                return
            thread = threading.Thread(target=self._run_job, args=(session_id,), daemon=True)
            self.jobs[session_id] = thread
        thread.start()

    def _run_job(self, session_id: str) -> None:
        lock = self.lock_for(session_id)
        with lock:
            state = self.get(session_id)
            model = UtilityModel.from_json(state["model"])
            stats = FeatureStats.from_json(state["stats"])
            profile = DatasetProfile(state["profile_id"])
            budget = state["optimize"]["budget"]
            seed = _derived_seed(state["seed"], 4)
        space = default_space()
        spec = CostSpec(mode="preference", model=model, stats=stats)

        def objective(cfg):
            front = pareto_filter(run_moml(cfg, profile))
            return cost(spec, front, stats), front

        def wrapped(cfg):
            result = objective(cfg)
            with lock:
                live = self.get(session_id)
                live["optimize"]["trials_done"] += 1
                finite = result[0] if np.isfinite(result[0]) else None
                best = live["optimize"]["incumbent_cost"]
                if finite is not None and (best is None or finite < best):
                    live["optimize"]["incumbent_cost"] = finite
                self.persist(live)
            return result

        n_init = min(OptimizerConfig().n_init, max(1, budget - 1))
        if budget == 1:
            trajectory = random_search(wrapped, space, budget=1, seed=seed)
        else:
            trajectory = hpo_optimize(
                wrapped, space, OptimizerConfig(budget=budget, n_init=n_init, seed=seed)
            )
        with lock:
            state = self.get(session_id)
            state["optimize"]["trajectory"] = trajectory.to_json()
            state["optimize"]["trials_done"] = len(trajectory.trials)
            state["optimize"]["incumbent_cost"] = trajectory.incumbent().cost
            state["phase"] = "done"
            self.persist(state)

    # -- views ---------------------------------------------------------------

    def view(self, state: dict) -> dict:
        return {
            "id": state["id"],
            "phase": state["phase"],
            "profile_id": state["profile_id"],
            "n_fronts": state["n_fronts"],
            "pair_limit": state["pair_limit"],
            "seed": state["seed"],
            "pair_total": len(state["pair_queue"]),
            "pairs_answered": state["cursor"],
            "preferences_count": len(state["preferences"]),
            "cv_tau_estimate": state["cv_tau_estimate"],
            "model": None
            if state["model"] is None
            else {"stats_ref": state["model"]["stats_ref"], "dim": len(state["model"]["w"])},
            "optimize": None
            if state["optimize"] is None
            else {
                "budget": state["optimize"]["budget"],
                "trials_done": state["optimize"]["trials_done"],
                "incumbent_cost": state["optimize"]["incumbent_cost"],
            },
            "created_at": state["created_at"],
            "updated_at": state["updated_at"],
        }

    def status(self, state: dict) -> dict:
        opt = state["optimize"] or {"trials_done": 0, "incumbent_cost": None}
        return {
            "phase": state["phase"],
            "trials_done": opt["trials_done"],
            "incumbent_cost": opt["incumbent_cost"],
        }

    def result(self, state: dict) -> dict:
        if state["phase"] != "done":
            raise _conflict("not_done", f"session is in phase {state['phase']}")
        trajectory = state["optimize"]["trajectory"]
        best = trajectory["incumbent_index"]
        incumbent = trajectory["trials"][best]
        return {
            "incumbent": {
                "config": incumbent["config"],
                "front": incumbent["front"],
                "cost": incumbent["cost"],
                "trial_index": incumbent["trial_index"],
            },
            "trajectory": trajectory,
        }


def create_app(data_dir, frontend_dir=None) -> FastAPI:
    app = FastAPI(title="prefpareto session service")
    manager = SessionManager(data_dir)
    app.state.manager = manager
    if frontend_dir is not None:
        _mount_frontend(app, Path(frontend_dir))

    @app.exception_handler(ApiError)
    async def api_error_handler(request: Request, exc: ApiError):
        return JSONResponse(
            status_code=exc.status,
            content={"error": {"code": exc.code, "message": exc.message}},
        )

    @app.exception_handler(RequestValidationError)
    async def validation_handler(request: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=400,
            content={"error": {"code": "invalid_request", "message": str(exc.errors())}},
        )

    def locked(session_id: str):
        return manager.lock_for(session_id)

    @app.post("/sessions", status_code=201)
    def create_session(body: dict):
        if not isinstance(body, dict):
            raise _bad_request("body must be a JSON object")
        try:
            profile_id = int(body["profile_id"])
            seed = int(body.get("seed", 0))
            n_fronts = int(body.get("n_fronts", 40))
            raw_limit = body.get("pair_limit")
            pair_limit = None if raw_limit is None else int(raw_limit)
        except (KeyError, TypeError, ValueError) as exc:
            raise _bad_request(f"bad request body: {exc}") from None
        state = manager.create(profile_id, n_fronts, pair_limit, seed)
        return manager.view(state)

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str):
        return manager.view(manager.get(session_id))

    @app.get("/sessions/{session_id}/pairs/next")
    def get_next_pair(session_id: str):
        with locked(session_id):
            return manager.next_pair(manager.get(session_id))

    @app.post("/sessions/{session_id}/preferences")
    def post_preference(session_id: str, body: dict):
        pair_id = body.get("pair_id")
        choice = body.get("choice")
        if not isinstance(pair_id, str) or not isinstance(choice, str):
            raise _bad_request("body needs string fields pair_id and choice")
        with locked(session_id):
            return manager.submit_preference(manager.get(session_id), pair_id, choice)

    @app.post("/sessions/{session_id}/train")
    def post_train(session_id: str, body: dict | None = None):
        train_config = (body or {}).get("train_config")
        with locked(session_id):
            return manager.train(manager.get(session_id), train_config)

    @app.post("/sessions/{session_id}/optimize", status_code=202)
    def post_optimize(session_id: str, body: dict | None = None):
        raw = (body or {}).get("budget", 30)
        try:
            budget = int(raw)
        except (TypeError, ValueError):
            raise _bad_request(f"budget must be an integer, got {raw!r}") from None
        with locked(session_id):
            return manager.start_optimize(manager.get(session_id), budget)

    @app.get("/sessions/{session_id}/status")
    def get_status(session_id: str):
        return manager.status(manager.get(session_id))

    @app.get("/sessions/{session_id}/result")
    def get_result(session_id: str):
        return manager.result(manager.get(session_id))

    return app


def _mount_frontend(app: FastAPI, frontend_dir: Path) -> None:
    """Serve the browser client from the API origin (SPA resume needs /session/{id})."""
    from fastapi.responses import FileResponse
    from fastapi.staticfiles import StaticFiles

    index = frontend_dir / "index.html"
    if not index.exists():
        raise ValueError(f"no index.html under {frontend_dir}; build the frontend first")
    app.mount("/dist", StaticFiles(directory=frontend_dir / "dist"), name="frontend-dist")

    @app.get("/styles.css", include_in_schema=False)
    def styles():
        return FileResponse(frontend_dir / "styles.css")

    @app.get("/", include_in_schema=False)
    def home():
        return FileResponse(index)

    @app.get("/session/{_session_id}", include_in_schema=False)
    def session_page(_session_id: str):
        return FileResponse(index)
