"""Empirical greedy-to-optimum ratio on random general instances.

Prints the ratio histogram and the worst instance found.

    python scripts/greedy_ratio_experiment.py --count 5000 --n-max 8 --t-max 10
"""

import argparse
from collections import Counter
from fractions import Fraction

from energysched import greedy, oracle
from energysched.generators import random_corpus
from energysched.model import serialize_instance


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--count", type=int, default=5000)
    parser.add_argument("--seed", type=int, default=1)
    parser.add_argument("--n-max", type=int, default=8)
    parser.add_argument("--t-max", type=int, default=10)
    parser.add_argument("--emax", type=int, default=6)
    parser.add_argument("--hmax", type=int, default=6)
    parser.add_argument("--emin", type=int, default=0)
    args = parser.parse_args()

    hist = Counter()
    worst, worst_inst = Fraction(1), None
    corpus = random_corpus(args.count, args.seed, args.n_max, args.t_max, args.emax, args.hmax, emin=args.emin)
    for inst in corpus:
        opt = oracle.solve_oracle(inst).objective
        if opt == 0:
            continue
        ratio = Fraction(greedy.solve_greedy(inst).objective, opt)
        hist[ratio] += 1
        if ratio < worst:
            worst, worst_inst = ratio, inst

    total = sum(hist.values())
    print(f"instances with a positive optimum: {total}")
    for ratio in sorted(hist):
        print(f"  {str(ratio):>5}  {float(ratio):.3f}  {hist[ratio]:>6}  {hist[ratio] / total:6.1%}")
    print(f"worst ratio: {worst}")
    if worst_inst is not None and worst < 1:
        print(serialize_instance(worst_inst))


if __name__ == "__main__":
    main()
