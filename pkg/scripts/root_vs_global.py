"""Probe whether root consequence and all-worlds consequence ever split.

On the subset frames they agree by theorem (persistence plus generated
subcones that are again subset frames).  This script hammers random sequents
against both readings on a chosen frame and reports any mismatch, exiting
nonzero if one shows up.
"""

import argparse
import random
import sys

from medlog.formula import BOT, And, Implies, Or, Var, render
from medlog.medvedev import frame
from medlog.semantics import consequence, consequence_all


def random_formula(rng, names, depth):
    if depth == 0 or rng.random() < 0.25:
        if rng.random() < 0.12:
            return BOT
        return Var(rng.choice(names))
    cls = rng.choice((And, Or, Implies))
    return cls(random_formula(rng, names, depth - 1),
               random_formula(rng, names, depth - 1))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("-n", type=int, default=3, help="frame to probe")
    ap.add_argument("--trials", type=int, default=500)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--depth", type=int, default=3)
    ap.add_argument("--vars", type=int, default=3)
    args = ap.parse_args(argv)

    rng = random.Random(args.seed)
    names = tuple(f"p{i}" for i in range(1, args.vars + 1))
    F = frame(args.n)
    mismatches = 0
    for t in range(args.trials):
        gamma = [random_formula(rng, names, args.depth)
                 for _ in range(rng.randrange(3))]
        f = random_formula(rng, names, args.depth)
        at_root = consequence(F, F.root_world, gamma, f)
        everywhere = consequence_all(F, gamma, f)
        if at_root != everywhere:
            mismatches += 1
            shown = "; ".join(render(g) for g in gamma)
            print(f"MISMATCH at trial {t}: {shown} |- {render(f)} "
                  f"root={at_root} everywhere={everywhere}")
    print(f"{args.trials} sequents on the {args.n}-frame, "
          f"{mismatches} mismatches")
    return 1 if mismatches else 0


if __name__ == "__main__":
    sys.exit(main())
