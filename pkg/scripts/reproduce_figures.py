"""Write every figure dataset (one CSV per curve) into a directory.

    python scripts/reproduce_figures.py [OUTDIR] [--steps N] [--r-max R]
"""

import argparse
import sys

from cvoml import cli


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("outdir", nargs="?", default="figures")
    parser.add_argument("--steps", type=int, default=cli.DEFAULT_SWEEP_STEPS)
    parser.add_argument("--r-max", type=float, default=cli.DEFAULT_R_MAX)
    args = parser.parse_args()
    for fig in cli.FIGURES:
        code = cli.main(["figure", fig, "--out", args.outdir, "--steps", str(args.steps),
                         "--r-max", str(args.r_max)])
        if code:
            return code
    return 0


if __name__ == "__main__":
    sys.exit(main())
