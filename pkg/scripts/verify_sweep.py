"""Run every verification suite over a range of d and print a timing table.

    python3 scripts/verify_sweep.py --d 0..6
    python3 scripts/verify_sweep.py --d 0..16 --q 2 --suite algebra
"""
import argparse
import sys
import time
from fractions import Fraction

from equitable.cli import parse_d
from equitable.modmodel import FreeScalars
from equitable.scalars import SYMBOLIC, Backend
from equitable.suites import run_suites, suite_names


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--d", default="0..4")
    p.add_argument("--suite", default="all")
    p.add_argument("--q", help="rational q0; symbolic when omitted")
    p.add_argument("--scalars", default="", help="free pairings, e.g. xy*=2,zy*=1/2")
    args = p.parse_args(argv)
    backend = Backend(Fraction(args.q)) if args.q else SYMBOLIC
    free = FreeScalars.parse(args.scalars, backend)
    failed = 0
    print(f"{'suite':<14}{'d':>4}{'checks':>9}{'failed':>8}{'seconds':>10}")
    for name in suite_names(args.suite):
        for d in parse_d(args.d):
            t0 = time.perf_counter()
            (_, _, report), = run_suites([name], [d], backend, free)
            dt = time.perf_counter() - t0
            bad = len(report.failures())
            failed += bad
            print(f"{name:<14}{d:>4}{len(report.checks):>9}{bad:>8}{dt:>10.2f}")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
