"""Command line entry point: ``spinbath run|validate|scenarios``."""

import argparse
import dataclasses
import sys

from .config import parse_config
from .errors import CapacityError, ConfigError
from .presets import PRESETS
from .runner import run_scenario, write_outputs

EXIT_OK, EXIT_VALIDATION, EXIT_CAPACITY, EXIT_IO = 0, 2, 3, 4


def _load(path, seed_override=None, output_dir=None):
    with open(path) as fh:
        cfg = parse_config(fh.read())
    if seed_override is not None:
        cfg = dataclasses.replace(cfg, model=cfg.model.replace(seed=seed_override))
    if output_dir is not None:
        cfg = dataclasses.replace(cfg, output_dir=output_dir)
    return cfg


def build_parser():
    parser = argparse.ArgumentParser(prog="spinbath", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a scenario config and write CSV outputs")
    run.add_argument("config")
    run.add_argument("--output-dir", help="override the config's output_dir")
    run.add_argument("--threads", type=int, default=1)
    run.add_argument("--seed-override", type=int)

    validate = sub.add_parser("validate", help="check a config without running it")
    validate.add_argument("config")
    validate.add_argument("--seed-override", type=int)

    scen = sub.add_parser("scenarios", help="list preset scenarios")
    scen.add_argument("--show", metavar="NAME", help="print the preset config")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.command == "scenarios":
        if args.show:
            if args.show not in PRESETS:
                print(f"unknown preset {args.show!r}", file=sys.stderr)
                return EXIT_VALIDATION
            sys.stdout.write(PRESETS[args.show][1])
            return EXIT_OK
        width = max(map(len, PRESETS))
        for name, (desc, _) in PRESETS.items():
            print(f"{name:<{width}}  {desc}")
        return EXIT_OK

    try:
        cfg = _load(args.config, args.seed_override, getattr(args, "output_dir", None))
    except ConfigError as err:
        print(f"invalid config: {err}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as err:
        print(f"cannot read {args.config}: {err.strerror}", file=sys.stderr)
        return EXIT_IO

    if args.command == "validate":
        print(f"ok: {cfg.scenario}, {len(cfg.points)} point(s) x {cfg.ensemble} member(s)")
        return EXIT_OK

    try:
        summary = run_scenario(cfg, threads=max(1, args.threads))
        paths = write_outputs(summary, cfg.output_dir)
    except CapacityError as err:
        print(f"capacity error: {err}", file=sys.stderr)
        return EXIT_CAPACITY
    except OSError as err:
        print(f"I/O error: {err}", file=sys.stderr)
        return EXIT_IO
    print(f"wrote {len(paths)} files to {cfg.output_dir}")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
