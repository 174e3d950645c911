"""Command-line entry points: train a classifier, export stored payloads,
serve the read-only API.

The store location comes from --store, falling back to the QNN_LENS_STORE
environment variable and then ./store.  Exit codes: 0 success, 2 invalid
flags, 3 unknown run/epoch/datapoint.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .circuit import build_default_circuit
from .datasets import DATASET_KINDS, DatasetSpec, generate_dataset
from .store import canonical_json, record_run
from .train import TrainConfig, train

DEFAULT_STORE = "store"
STORE_ENV_VAR = "QNN_LENS_STORE"

EXIT_NOT_FOUND = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qnnlens",
        description="Train small variational quantum classifiers and serve their traces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_train = sub.add_parser("train", help="train a classifier and record the run")
    p_train.add_argument("--qubits", type=int, default=3)
    p_train.add_argument("--layers", type=int, default=4)
    p_train.add_argument("--dataset", choices=DATASET_KINDS, default="blobs")
    p_train.add_argument("--points", type=int, default=80)
    p_train.add_argument("--noise", type=float, default=0.1)
    p_train.add_argument("--epochs", type=int, default=100)
    p_train.add_argument("--lr", type=float, default=0.05)
    p_train.add_argument("--seed", type=int, default=42)
    p_train.add_argument("--store", default=None)

    p_export = sub.add_parser("export", help="print a stored payload as JSON")
    p_export.add_argument("run_id")
    p_export.add_argument("--what", choices=("grid", "states"), required=True)
    p_export.add_argument("--epoch", type=int, required=True)
    p_export.add_argument("--datapoint", default=None, help="restrict states to one datapoint id")
    p_export.add_argument("--store", default=None)

    p_serve = sub.add_parser("serve", help="serve recorded runs over HTTP")
    p_serve.add_argument("--store", default=None)
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.add_argument("--host", default="127.0.0.1")

    return parser


def resolve_store(flag_value: str | None) -> Path:
    if flag_value:
        return Path(flag_value)
    env_value = os.environ.get(STORE_ENV_VAR)
    if env_value:
        return Path(env_value)
    return Path(DEFAULT_STORE)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "train":
        return _cmd_train(parser, args)
    if args.command == "export":
        return _cmd_export(args)
    return _cmd_serve(args)


def _cmd_train(parser: argparse.ArgumentParser, args) -> int:
    if not 1 <= args.qubits <= 10:
        parser.error(f"--qubits must be in [1, 10], got {args.qubits}")
    if args.layers < 1:
        parser.error(f"--layers must be >= 1, got {args.layers}")
    if args.points < 4 or args.points % 2 != 0:
        parser.error(f"--points must be even and >= 4, got {args.points}")
    if args.noise < 0:
        parser.error(f"--noise must be >= 0, got {args.noise}")
    if args.epochs < 0:
        parser.error(f"--epochs must be >= 0, got {args.epochs}")
    if args.lr <= 0:
        parser.error(f"--lr must be > 0, got {args.lr}")
    if args.seed < 0:
        parser.error(f"--seed must be >= 0, got {args.seed}")

    data = generate_dataset(
        DatasetSpec(args.dataset, args.points, args.noise, args.seed)
    )
    spec = build_default_circuit(args.qubits, 2, args.layers)
    config = TrainConfig(
        epochs=args.epochs, learning_rate=args.lr, seed=args.seed
    )
    snapshots = train(spec, data, config)
    record = record_run(resolve_store(args.store), spec, data, config, snapshots)
    print(record.run_id)
    print(f"final_accuracy={snapshots[-1].accuracy:.4f}")
    return 0


def _cmd_export(args) -> int:
    store_dir = resolve_store(args.store)
    run_dir = store_dir / args.run_id
    kind = "grids" if args.what == "grid" else "traces"
    path = run_dir / kind / f"{args.epoch}.json"
    if not run_dir.is_dir() or not path.is_file():
        print(
            f"not_found: no stored {args.what} for run {args.run_id!r} epoch {args.epoch}",
            file=sys.stderr,
        )
        return EXIT_NOT_FOUND

    text = path.read_text(encoding="utf-8")
    if args.what == "states" and args.datapoint is not None:
        import json

        states = json.loads(text).get("states", {})
        if args.datapoint not in states:
            print(
                f"not_found: datapoint {args.datapoint!r} not in run {args.run_id!r}",
                file=sys.stderr,
            )
            return EXIT_NOT_FOUND
        sys.stdout.write(canonical_json(states[args.datapoint]))
        return 0
    sys.stdout.write(text)
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .server import create_app

    app = create_app(resolve_store(args.store))
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
