"""Run the identity suite and summarize failures.

    python3 scripts/run_suite.py --models all --points 20 --out report.json
"""

import argparse
import sys

from nearsasaki.cli import dumps
from nearsasaki.identities import run_suite


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--models", default="all")
    ap.add_argument("--identities", default="all")
    ap.add_argument("--points", type=int, default=20)
    ap.add_argument("--tuples", type=int, default=8)
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--threads", type=int, default=4)
    ap.add_argument("--out", default=None)
    args = ap.parse_args()
    rep = run_suite(args.models, args.identities, args.points, args.seed, 1e-8, args.tuples, args.threads)
    counts = {}
    for r in rep.rows:
        counts[r.status] = counts.get(r.status, 0) + 1
    print("rows by status:", ", ".join(f"{k}={v}" for k, v in sorted(counts.items())))
    for r in rep.failures():
        extra = ", ".join(f"{k}={v:.1e}" for k, v in r.variants.items())
        print(f"  {r.model:14s} {r.identity:8s} {r.max_residual:.2e} {r.status}" + (f"  [{extra}]" if extra else ""))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(dumps(rep.as_dict()) + "\n")
    return rep.exit_code


if __name__ == "__main__":
    sys.exit(main())
