"""Tabulate which bounded-depth formulas hold at the root of which frames.

bd(k) is root-valid on the n-frame exactly when n <= k, so the table is
upper triangular.  Cells whose full sweep would overrun the work cap are
reported as refused together with the exact budget they would need; raise
--work-cap to fill them in.
"""

import argparse
import sys
import time

from medlog.errors import WorkCapExceeded
from medlog.formula import bd
from medlog.medvedev import frame
from medlog.semantics import DEFAULT_WORK_CAP, valid_at


def cell(n, k, work_cap):
    F = frame(n)
    t0 = time.perf_counter()
    try:
        ok = valid_at(F, F.root_world, bd(k), work_cap)
    except WorkCapExceeded as exc:
        return f"refused (needs {exc.required})"
    ms = (time.perf_counter() - t0) * 1000
    return f"{'valid' if ok else 'invalid'} ({ms:.0f} ms)"


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=4, help="largest frame")
    ap.add_argument("--max-k", type=int, default=4, help="largest depth bound")
    ap.add_argument("--work-cap", type=int, default=DEFAULT_WORK_CAP)
    args = ap.parse_args(argv)

    width = 26
    header = "bd(k) at root".ljust(14) + "".join(
        f"k={k}".ljust(width) for k in range(1, args.max_k + 1)
    )
    print(header)
    for n in range(1, args.max_n + 1):
        row = [f"{n}-frame".ljust(14)]
        for k in range(1, args.max_k + 1):
            row.append(cell(n, k, args.work_cap).ljust(width))
        print("".join(row).rstrip())
    return 0


if __name__ == "__main__":
    sys.exit(main())
