"""Run the four headline demonstrations for a range of frame sizes.

Each demonstration re-verifies its own claim inside the library, so a clean
run of this script is itself a check: any broken step raises instead of
printing.
"""

import argparse
import sys

from medlog.formula import Or, parse, render
from medlog.medvedev import (
    compactness_witness,
    dp_failure_witness,
    frame,
    separation_witness,
)
from medlog.prucnal import structural_demo


def show_chain(n):
    f = separation_witness(n)
    print(f"[chain]  n={n}: {render(f)}")
    print(f"         valid on the {n}-frame, invalid on the {n + 1}-frame")


def show_dp(n):
    left, right = dp_failure_witness(n)
    print(f"[dp]     n={n}: {render(Or(left, right))} is valid")
    print(f"         neither {render(left)} nor {render(right)} is")


def show_compactness(i):
    model = compactness_witness(i)
    worlds = len(model.poset)
    print(f"[compact] i={i}: on the {i + 1}-frame ({worlds} worlds) the root")
    print(f"          forces bd(j) -> p0 for every j <= {i}, but not p0")


def show_prucnal(n, phi, psi):
    rep = structural_demo(n, parse(phi), parse(psi))
    if rep.vacuous:
        print(f"[prucnal] {phi} / {psi} on the {n}-frame: implication valid, nothing to do")
        return
    print(f"[prucnal] {phi} / {psi} on the {n}-frame is not admissible:")
    for nm, f in sorted(rep.sigma.items()):
        print(f"          sigma({nm}) = {render(f)}")
    print(f"          sigma({phi}) valid: {rep.premise_verdict.valid};"
          f" sigma({psi}) valid: {rep.conclusion_verdict.valid}")


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=3)
    ap.add_argument("--phi", default="~~p", help="rule premise for the substitution demo")
    ap.add_argument("--psi", default="p", help="rule conclusion for the substitution demo")
    args = ap.parse_args(argv)

    for n in range(1, args.max_n + 1):
        show_chain(n)
    print()
    for n in range(1, args.max_n + 1):
        show_dp(n)
    print()
    for i in range(1, args.max_n + 1):
        show_compactness(i)
    print()
    for n in range(1, args.max_n + 1):
        show_prucnal(n, args.phi, args.psi)
    return 0


if __name__ == "__main__":
    sys.exit(main())
