"""Run the theorem checkers on an instance family and summarise the statuses.

    python3 scripts/run_suite.py                       # builtin matrix, all ids
    python3 scripts/run_suite.py --family ci --count 6 --seed 3
    python3 scripts/run_suite.py --write-golden tests/golden/builtin_suite.json
"""

import argparse
import collections
import json
import sys
import time

from glcoh.verify import (FAMILIES, THEOREM_IDS, builtin_instances, gen_instances,
                          run_suite, suite_failed)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--family", choices=("builtin",) + FAMILIES, default="builtin")
    ap.add_argument("--count", type=int, default=5)
    ap.add_argument("--nvars", type=int, default=2)
    ap.add_argument("--maxdeg", type=int, default=2)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--ids", nargs="*", default=list(THEOREM_IDS))
    ap.add_argument("--write-golden", metavar="PATH")
    ap.add_argument("--verbose", action="store_true")
    args = ap.parse_args(argv)

    if args.family == "builtin":
        instances = builtin_instances()
    else:
        instances = gen_instances(args.family, {"count": args.count, "nvars": args.nvars,
                                                "maxdeg": args.maxdeg}, seed=args.seed,
                                  include_builtins=False)

    def show(rep):
        if args.verbose or rep.status not in ("verified", "hypothesis-not-met"):
            print(f"{rep.instance:24s} {rep.theorem_id:10s} {rep.status:20s} "
                  f"{rep.runtime:6.2f}s {rep.detail}")

    t0 = time.perf_counter()
    reports = run_suite(args.ids, instances, seed=args.seed, on_report=show)
    counts = collections.Counter(r.status for r in reports)
    per_id = collections.defaultdict(collections.Counter)
    for r in reports:
        per_id[r.theorem_id][r.status] += 1
    for tid in args.ids:
        print(f"{tid:10s} " + ", ".join(f"{k}={v}" for k, v in sorted(per_id[tid].items())))
    print(f"total {len(reports)} reports in {time.perf_counter() - t0:.1f}s: "
          + ", ".join(f"{k}={v}" for k, v in sorted(counts.items())))

    if args.write_golden:
        if suite_failed(reports):
            print("refusing to write a golden file from a run with FAILED reports")
            return 1
        with open(args.write_golden, "w") as fh:
            json.dump([r.as_dict() for r in reports], fh, indent=1, sort_keys=True)
            fh.write("\n")
    return 1 if suite_failed(reports) else 0


if __name__ == "__main__":
    sys.exit(main())
