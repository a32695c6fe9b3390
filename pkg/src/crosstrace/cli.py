"""Command-line entry points: generate, replay, verify, serve.

Exit codes: 0 on success, 2 on verification failure, 1 on errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import TraceError
from .generator import GenSpec, generate
from .harness import parse_script, replay, verify_finding
from .model import RelationGraph
from .protocol import canonical_json, serialize_log


def _cmd_generate(args: argparse.Namespace) -> int:
    spec = GenSpec(seed=args.seed, density=args.density,
                   bundling=args.bundling == "on",
                   band=(args.band_min, args.band_max),
                   max_attempts=args.max_attempts)
    result = generate(spec)
    text = canonical_json(result.document) + "\n"
    with open(args.out, "w", encoding="utf-8") as f:
        f.write(text)
    with open(args.out + ".meta.json", "w", encoding="utf-8") as f:
        f.write(canonical_json(result.meta) + "\n")
    print(f"wrote {args.out} ({result.meta['biclusters']} biclusters, "
          f"{result.meta['retries']} retries)")
    return 0


def _cmd_replay(args: argparse.Namespace) -> int:
    graph = RelationGraph.load(args.data)
    with open(args.script, "r", encoding="utf-8") as f:
        commands = parse_script(f.read())
    result = replay(graph, commands, checkpoint_every=args.checkpoint_every)
    if args.log:
        with open(args.log, "w", encoding="utf-8") as f:
            f.write(serialize_log(result.log))
    if args.metrics:
        with open(args.metrics, "w", encoding="utf-8") as f:
            f.write(canonical_json(result.metrics) + "\n")
    if args.snapshot:
        with open(args.snapshot, "w", encoding="utf-8") as f:
            f.write(canonical_json(result.final_snapshot) + "\n")
    print(f"replayed {len(commands)} commands, {len(result.log)} log records")
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    graph = RelationGraph.load(args.data)
    with open(args.claim, "r", encoding="utf-8") as f:
        claim = json.load(f)
    ok = verify_finding(graph, claim)
    print("correct" if ok else "incorrect")
    return 0 if ok else 2


def _cmd_serve(args: argparse.Namespace) -> int:
    from .server import serve_forever

    serve_forever(args.data, host=args.host, port=args.port)
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="crosstrace",
        description="Cross-view relationship tracing: dataset generation, "
                    "headless replay, finding verification, UI server.")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="generate a study-scale dataset")
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("--density", choices=("low", "high"), default="low")
    g.add_argument("--bundling", choices=("on", "off"), default="off")
    g.add_argument("--out", required=True)
    g.add_argument("--band-min", type=int, default=8)
    g.add_argument("--band-max", type=int, default=16)
    g.add_argument("--max-attempts", type=int, default=100)
    g.set_defaults(func=_cmd_generate)

    r = sub.add_parser("replay", help="run a command script headlessly")
    r.add_argument("--data", required=True)
    r.add_argument("--script", required=True)
    r.add_argument("--log")
    r.add_argument("--metrics")
    r.add_argument("--snapshot")
    r.add_argument("--checkpoint-every", type=int, default=None)
    r.set_defaults(func=_cmd_replay)

    v = sub.add_parser("verify", help="check a reported finding")
    v.add_argument("--data", required=True)
    v.add_argument("--claim", required=True)
    v.set_defaults(func=_cmd_verify)

    s = sub.add_parser("serve", help="expose the engine protocol over a websocket")
    s.add_argument("--data", required=True,
                   help="dataset file, or a directory of datasets selectable at load")
    s.add_argument("--host", default="127.0.0.1")
    s.add_argument("--port", type=int, default=0)
    s.set_defaults(func=_cmd_serve)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except TraceError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
