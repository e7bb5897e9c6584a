# -*- coding: utf-8 -*-
import argparse
import sys

from app import App, log, config
from app.errors import AppError, ERR_UNKNOWN


def parse_args(argv=None):
    parser = argparse.ArgumentParser(prog="harnack-lab",
                                     description="Run a (p,q)-parabolic Harnack scenario and write its reports.")
    parser.add_argument("scenario", help="scenario file (key = value lines with [sections])")
    parser.add_argument("--out", default=config.OUTPUT_DIR,
                        help=f"output directory (default: {config.OUTPUT_DIR})")
    parser.add_argument("--quiet", action="store_true", help="log warnings and errors only")
    return parser.parse_args(argv)


def main(argv=None):
    args = parse_args(argv)
    log.set_quiet(args.quiet)
    try:
        return App().run_file(args.scenario, args.out, sys.stderr)
    except Exception as e:
        log.get_logger().exception("Unexpected error")
        return AppError.handle(AppError(ERR_UNKNOWN, f"{type(e).__name__}: {e}"), sys.stderr)


if __name__ == "__main__":
    sys.exit(main())
