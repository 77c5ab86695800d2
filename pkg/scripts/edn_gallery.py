"""Endpoint-rule correspondence on a small gallery of rooted posets.

For each poset: the endpoint count, a maximum pairwise-incompatible family,
and for each n whether the rule holds at the root; where it fails, the rule
instance whose premise is root-valid while its conclusion is not.
"""

import argparse
import sys

from medlog.formula import render
from medlog.medvedev import edn_falsifier, edn_root_check, frame
from medlog.poset import Poset, max_incompatible_family


def gallery():
    fan3 = Poset.from_relation("rxyz", [("r", "x"), ("r", "y"), ("r", "z")])
    chain4 = Poset.from_relation("abcd", [("a", "b"), ("b", "c"), ("c", "d")])
    diamond = Poset.from_relation(
        "abcd", [("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")]
    )
    tee = Poset.from_relation(
        "ruvxy", [("r", "u"), ("u", "v"), ("r", "x"), ("x", "y")]
    )
    return [
        ("1-frame", frame(1)),
        ("2-frame", frame(2)),
        ("3-frame", frame(3)),
        ("three-leaf fan", fan3),
        ("4-chain", chain4),
        ("diamond", diamond),
        ("two branches", tee),
    ]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=4)
    args = ap.parse_args(argv)

    for name, P in gallery():
        family = max_incompatible_family(P)
        labels = ", ".join(P.label(e) for e in family) or "-"
        print(f"{name}: {len(P)} elements, {len(P.end_points())} endpoints, "
              f"max incompatible family {{{labels}}}")
        for n in range(1, args.max_n + 1):
            holds = edn_root_check(P, n)
            if holds:
                print(f"  ed{n}: holds")
                continue
            instance, _ = edn_falsifier(P, n)
            print(f"  ed{n}: fails   {render(instance)}")
        print()
    return 0


if __name__ == "__main__":
    sys.exit(main())
