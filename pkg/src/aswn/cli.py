"""Command line entry point: ``aswn tower|lpoly|verify <name> [options]``."""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import harness
from .errors import ASWNError, EnumerationTooLarge, InvalidConfig, PrecisionExhausted

VERIFY = ("main", "strong", "decompose", "independent", "dwork", "distance")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="aswn", description="Twisted exponential sums and their Newton polygons.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", help="JSON instance (or {\"instances\": [...]})")
        p.add_argument("--out", help="directory for reports")
        p.add_argument("--cache", help="exponential-sum cache directory (ASWN_CACHE overrides)")
        p.add_argument("--dry-run", action="store_true", help="print enumeration cost and exit")
        p.add_argument("--svg", action="store_true", help="also write an SVG plot per report")

    t = sub.add_parser("tower", help="print the deterministic field tower")
    common(t)
    t.add_argument("--levels", type=int, default=2)
    common(sub.add_parser("lpoly", help="L-polynomial and its Newton polygon"))
    v = sub.add_parser("verify", help="run a theorem check")
    v.add_argument("check", choices=VERIFY)
    common(v)
    return ap


def _write(out_dir: str, stem: str, rep: harness.Report, svg: bool) -> None:
    os.makedirs(out_dir, exist_ok=True)
    with open(os.path.join(out_dir, stem + ".json"), "w") as fh:
        fh.write(rep.to_json())
    np_pts = rep.polygons.get("np") or rep.polygons.get("tadic")
    if np_pts:
        from .polygon import Polygon

        with open(os.path.join(out_dir, stem + ".csv"), "w") as fh:
            fh.write(Polygon.from_json(np_pts).to_csv())
    if svg:
        with open(os.path.join(out_dir, stem + ".svg"), "w") as fh:
            fh.write(harness.plot_svg(rep))


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if not args.config:
            raise InvalidConfig("--config is required")
        instances = harness.load_config(args.config)
        cache = harness.resolve_cache_dir(args.cache)
        name = args.check if args.command == "verify" else args.command
        if args.command == "tower":
            for inst in instances:
                print(json.dumps(harness.cmd_tower(inst, args.levels), sort_keys=True))
            return harness.EXIT_OK
        if args.dry_run:
            for inst in instances:
                print(json.dumps(harness.dry_run_cost(name, inst), sort_keys=True))
            return harness.EXIT_OK
        fn = harness.COMMANDS[name]
        code = harness.EXIT_OK
        for inst in instances:
            rep = fn(inst, cache_dir=cache)
            for c in rep.checks:
                print(f"{c['status']:7s} {name} {c['name']}")
            if args.out:
                _write(args.out, f"{name}_{inst.key()}", rep, args.svg)
            else:
                sys.stdout.write(rep.to_json())
            code = max(code, rep.exit_code)
        return code
    except (InvalidConfig, EnumerationTooLarge) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return harness.EXIT_CONFIG
    except PrecisionExhausted as exc:
        print(f"precision exhausted: {exc}", file=sys.stderr)
        return harness.EXIT_PRECISION
    except ASWNError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return harness.EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
