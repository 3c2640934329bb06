"""Compare the Čech window of H^i_m(M, N) with the flipped Ext^{t-i}(N, M)(-g).

Sweeps the Gorenstein families over 2..3 variables and prints, per instance,
the status of the duality checker together with its runtime.

    python3 scripts/duality_sweep.py --seeds 0 1 2 --count 3
"""

import argparse
import collections
import time

from glcoh.verify import check, gen_instances


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seeds", type=int, nargs="+", default=[0])
    ap.add_argument("--count", type=int, default=3)
    ap.add_argument("--nvars", type=int, nargs="+", default=[2, 3])
    ap.add_argument("--maxdeg", type=int, nargs="+", default=[2, 3])
    args = ap.parse_args(argv)

    counts = collections.Counter()
    t0 = time.perf_counter()
    for family in ("binomial-hypersurface", "ci"):
        for nvars in args.nvars:
            for maxdeg in args.maxdeg:
                for seed in args.seeds:
                    params = {"count": args.count, "nvars": nvars, "maxdeg": maxdeg}
                    for inst in gen_instances(family, params, seed=seed,
                                              include_builtins=False):
                        rep = check("C3.10", inst)
                        counts[rep.status] += 1
                        print(f"{inst.name:32s} n={nvars} d<={maxdeg} {rep.status:20s} "
                              f"{rep.runtime:6.2f}s {rep.detail}")
    print(f"{sum(counts.values())} instances in {time.perf_counter() - t0:.1f}s: "
          + ", ".join(f"{k}={v}" for k, v in sorted(counts.items())))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
