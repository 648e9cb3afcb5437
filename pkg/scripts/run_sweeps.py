"""Run every property sweep over the built-in corpora and print a summary."""

import argparse
import time
from pathlib import Path

from bcx.verify import SUITES, VerifyConfig, run_suite


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--suite", choices=SUITES, action="append")
    ap.add_argument("--dump-dir", type=Path)
    args = ap.parse_args()
    ok = True
    for name in args.suite or SUITES:
        start = time.perf_counter()
        res = run_suite(name, VerifyConfig(suite=name, seed=args.seed, dump_dir=args.dump_dir))
        ok &= res.passed
        print(f"{name:18s} checked={res.checked:5d} failures={len(res.failures)} "
              f"{time.perf_counter() - start:6.2f}s")
    raise SystemExit(0 if ok else 1)


if __name__ == "__main__":
    main()
