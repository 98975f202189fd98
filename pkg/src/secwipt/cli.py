"""Command-line entry point.

    secwipt run <config> [--out PATH] [--seed N] [--threads N]
    secwipt validate <config>

Exit status: 0 success, 2 configuration error, 3 numeric/domain error.
"""
from __future__ import annotations

import argparse
import logging
import sys
import traceback
from pathlib import Path

from .config import MAX_SEED, ConfigError, load_config, validate
from .experiments import run

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3

log = logging.getLogger("secwipt")


def _seed(text):
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if not 0 <= value <= MAX_SEED:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def build_parser():
    parser = argparse.ArgumentParser(prog="secwipt", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run the experiment described by a config file")
    p_run.add_argument("config", type=Path)
    p_run.add_argument("--out", type=Path, help="CSV destination (default: config 'output' or stdout)")
    p_run.add_argument("--seed", type=_seed, help="override the config seed")
    p_run.add_argument("--threads", type=_positive_int, default=1)

    p_val = sub.add_parser("validate", help="check a config file without running it")
    p_val.add_argument("config", type=Path)
    return parser


def _report_config_error(exc):
    for v in exc.violations:
        print(f"config error: {v}", file=sys.stderr)
    return EXIT_CONFIG


def _failing_operation(exc):
    frames = traceback.extract_tb(exc.__traceback__)
    return frames[-1].name if frames else "?"


def cmd_validate(args):
    try:
        cfg = load_config(args.config)
    except ConfigError as exc:
        return _report_config_error(exc)
    violations = validate(cfg)
    if violations:
        return _report_config_error(ConfigError(violations))
    print(f"{args.config}: ok")
    return EXIT_OK


def cmd_run(args):
    try:
        cfg = load_config(args.config)
        table = run(cfg, seed=args.seed, threads=args.threads)
    except ConfigError as exc:
        return _report_config_error(exc)
    except (ValueError, ArithmeticError) as exc:
        print(f"numeric error in {_failing_operation(exc)}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC

    text = table.to_csv()
    out = args.out or (Path(cfg["output"]) if cfg.get("output") else None)
    if out is None:
        sys.stdout.write(text)
    else:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text)
        log.info("wrote %d rows to %s", len(table.rows), out)
    return EXIT_OK


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    if args.command == "validate":
        return cmd_validate(args)
    return cmd_run(args)


if __name__ == "__main__":
    sys.exit(main())
