"""Time the incremental slot solver against the DP table on growing full-window instances.

    python scripts/bench_fast_vs_dp.py --sizes 500 1000 2000 4000 --ratio 2.5
"""

import argparse
import time

from energysched import dp, fast
from energysched.generators import RandomFamily, random_instance


def timed(fn, *args):
    start = time.perf_counter()
    out = fn(*args)
    return out, time.perf_counter() - start


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", type=int, nargs="+", default=[500, 1000, 2000, 4000])
    parser.add_argument("--ratio", type=float, default=2.5, help="horizon T as a multiple of n")
    parser.add_argument("--emax", type=int, default=4000)
    parser.add_argument("--hmax", type=int, default=1000)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--skip-dp-above", type=int, default=20000)
    args = parser.parse_args()

    fast.warm_up()
    print(f"{'n':>8} {'T':>9} {'count':>8} {'fast_s':>9} {'dp_s':>9}")
    for n in args.sizes:
        T = max(1, int(n * args.ratio))
        inst = random_instance(RandomFamily(n, T, args.emax, args.hmax, full_window=True), args.seed)
        res_fast, t_fast = timed(fast.solve_slots, inst)
        if n <= args.skip_dp_above:
            res_dp, t_dp = timed(dp.solve_count, inst)
            assert res_dp.objective == res_fast.objective, (res_dp.objective, res_fast.objective)
            dp_col = f"{t_dp:9.3f}"
        else:
            dp_col = f"{'-':>9}"
        print(f"{n:>8} {T:>9} {res_fast.objective:>8} {t_fast:9.3f} {dp_col}")


if __name__ == "__main__":
    main()
