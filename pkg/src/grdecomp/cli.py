"""``grbench``: run a condition-number sweep and write the metrics as CSV.

Exit status is 0 when every cell succeeded, 2 when some cells failed (the
CSV is still written) and 1 for usage or configuration errors.
"""

import argparse
import sys

from .bench import DEFAULT_CONDS, METHODS, REFERENCE_SIZES, ExperimentConfig, run_sweep


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _floats(text):
    try:
        return tuple(float(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}")


def _names(text):
    return tuple(v.strip() for v in text.split(",") if v.strip())


def build_parser():
    p = _Parser(prog="grbench", description="Accuracy of GR decompositions versus cond(A).")
    p.add_argument("family", choices=sorted(METHODS))
    p.add_argument("--size", type=int, default=None,
                   help="matrix order (HR: n, SR: 2n, QR: rows; QR uses size//4 columns)")
    p.add_argument("--conds", type=_floats, default=DEFAULT_CONDS,
                   help="comma-separated target condition numbers")
    p.add_argument("--methods", type=_names, default=None,
                   help="comma-separated method ids (default: all of the family)")
    p.add_argument("--trials", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="output CSV file")
    p.add_argument("--paper-scale", action="store_true",
                   help="use the published sizes (HR 500, SR 1000) unless --size is given")
    p.add_argument("--timing", action="store_true",
                   help="record wall-clock seconds per cell (makes the CSV run-dependent)")
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    size = args.size
    if size is None and args.paper_scale:
        size = REFERENCE_SIZES[args.family]
    try:
        config = ExperimentConfig(args.family, size=size, conds=args.conds,
                                  methods=args.methods, trials=args.trials, seed=args.seed,
                                  output_path=args.out, timing=args.timing)
        records = run_sweep(config)
    except (ValueError, OSError) as exc:
        print(f"grbench: error: {exc}", file=sys.stderr)
        return 1

    failed = [r for r in records if r.status != "ok"]
    for r in failed:
        print(f"grbench: {r.method} cond={r.cond_target:g} trial={r.trial}: {r.status}",
              file=sys.stderr)
    return 2 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
