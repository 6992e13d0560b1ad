"""Command-line harness: batch experiments and the session service."""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import experiments
from .pareto import INDICATOR_KINDS

DATA_DIR_ENV = "PREFPARETO_DATA_DIR"


def _ints(text: str) -> list[int]:
    return [int(part) for part in text.split(",") if part]


def _floats(text: str) -> list[float]:
    return [float(part) for part in text.split(",") if part]


def _indicators(text: str) -> list[str]:
    kinds = [part.strip().upper() for part in text.split(",") if part.strip()]
    for kind in kinds:
        if kind not in INDICATOR_KINDS:
            raise argparse.ArgumentTypeError(f"unknown indicator {kind!r}")
    return kinds


def _seed_list(base: int, count: int) -> list[int]:
    return list(range(base, base + count))


def _write_report(out_dir: Path, name: str, meta: dict, payload: dict, csv_rows: list[dict]) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    doc = {"meta": meta, **payload}
    (out_dir / f"{name}.json").write_text(json.dumps(doc, sort_keys=True, indent=2) + "\n")
    lines = [f"# {key}={json.dumps(value, sort_keys=True)}" for key, value in sorted(meta.items())]
    if csv_rows:
        header = list(csv_rows[0])
        lines.append(",".join(header))
        for row in csv_rows:
            lines.append(",".join(repr(row[col]) if isinstance(row[col], float) else str(row[col]) for col in header))
    (out_dir / f"{name}.csv").write_text("\n".join(lines) + "\n")


def cmd_tau_curve(args) -> int:
    seeds = _seed_list(args.seed, args.seeds)
    result = experiments.tau_curve(
        indicators=args.indicators,
        n_pairs_list=args.n_pairs,
        profile_ids=args.profiles,
        seeds=seeds,
        n_fronts=args.n_fronts,
        reg=args.reg,
    )
    meta = {
        "command": "tau-curve",
        "indicators": args.indicators,
        "n_pairs_list": args.n_pairs,
        "profiles": args.profiles,
        "seeds": seeds,
        "n_fronts": args.n_fronts,
        "reg": args.reg if args.reg is not None else experiments.TUNED_REG,
    }
    _write_report(Path(args.out), "tau_curve", meta, result, result["runs"])
    return 0


def cmd_matrix(args) -> int:
    seeds = _seed_list(args.seed, args.seeds)
    result = experiments.pb_ib_matrix(
        profile_ids=args.profiles,
        seeds=seeds,
        budget=args.budget,
        n_pairs=args.n_pairs,
        n_fronts=args.n_fronts,
        reg=args.reg,
    )
    meta = {
        "command": "matrix",
        "profiles": args.profiles,
        "seeds": seeds,
        "budget": args.budget,
        "n_pairs": args.n_pairs,
        "n_fronts": args.n_fronts,
        "reg": args.reg if args.reg is not None else experiments.TUNED_REG,
    }
    _write_report(Path(args.out), "matrix", meta, result, result["cells"])
    return 0


def cmd_tune_ranker(args) -> int:
    seeds = _seed_list(args.seed, args.seeds)
    result = experiments.tune_ranker(
        reg_grid=args.reg_grid,
        profile_ids=args.profiles,
        seeds=seeds,
        n_pairs=args.n_pairs,
    )
    meta = {
        "command": "tune-ranker",
        "reg_grid": args.reg_grid,
        "profiles": args.profiles,
        "seeds": seeds,
        "n_pairs": args.n_pairs,
    }
    _write_report(Path(args.out), "tune_ranker", meta, result, result["grid"])
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    data_dir = os.environ.get(DATA_DIR_ENV) or args.data_dir
    frontend_dir = args.frontend_dir
    if frontend_dir is None and Path("frontend/index.html").exists():
        frontend_dir = "frontend"
    app = create_app(data_dir, frontend_dir=frontend_dir)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="prefpareto")
    sub = parser.add_subparsers(dest="command", required=True)

    tau = sub.add_parser("tau-curve", help="cross-validated ranking quality per comparison regime")
    tau.add_argument("--indicators", type=_indicators, default=list(INDICATOR_KINDS))
    tau.add_argument("--n-pairs", type=_ints, default=list(experiments.PAIR_REGIMES))
    tau.add_argument("--profiles", type=_ints, default=list(experiments.TUNING_PROFILES))
    tau.add_argument("--seeds", type=int, default=3, help="number of seeds, starting at --seed")
    tau.add_argument("--seed", type=int, default=0)
    tau.add_argument("--n-fronts", type=int, default=40)
    tau.add_argument("--reg", type=float, default=None, help="override the tuned per-indicator regularization")
    tau.add_argument("--out", required=True)
    tau.set_defaults(func=cmd_tau_curve)

    matrix = sub.add_parser("matrix", help="preference-based vs indicator-based HPO comparison")
    matrix.add_argument("--profiles", type=_ints, default=list(experiments.EVALUATION_PROFILES))
    matrix.add_argument("--seeds", type=int, default=3)
    matrix.add_argument("--seed", type=int, default=0)
    matrix.add_argument("--budget", type=int, default=30)
    matrix.add_argument("--n-pairs", type=int, default=28)
    matrix.add_argument("--n-fronts", type=int, default=40)
    matrix.add_argument("--reg", type=float, default=None)
    matrix.add_argument("--out", required=True)
    matrix.set_defaults(func=cmd_matrix)

    tune = sub.add_parser("tune-ranker", help="grid-search the ranker regularization per indicator")
    tune.add_argument("--reg-grid", type=_floats, default=[0.01, 0.1, 1.0, 10.0])
    tune.add_argument("--profiles", type=_ints, default=list(experiments.TUNING_PROFILES))
    tune.add_argument("--seeds", type=int, default=3)
    tune.add_argument("--seed", type=int, default=0)
    tune.add_argument("--n-pairs", type=int, default=112)
    tune.add_argument("--out", required=True)
    tune.set_defaults(func=cmd_tune_ranker)

    serve = sub.add_parser("serve", help="run the interactive session service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    serve.add_argument("--data-dir", default="./prefpareto-sessions")
    serve.add_argument("--frontend-dir", default=None, help="serve the built browser client from this directory")
    serve.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except Exception as exc:  # noqa: BLE001 - the contract is JSON on stdout, nonzero exit
        print(json.dumps({"error": {"code": type(exc).__name__, "message": str(exc)}}))
        return 1


if __name__ == "__main__":
    sys.exit(main())
