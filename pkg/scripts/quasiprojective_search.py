"""Look for bimodules over small algebras that fail the bounded w-Sigma-quasi-
projectivity check, printing the first kernel witness of each."""

import argparse
import time

from adjforge.algmod import (direct_sum, dual_numbers, enumerate_modules,
                             regular_module, upper_triangular)
from adjforge.starlab import build_context, star_verdict, w_sigma_qp_check


def candidates(R, max_dim):
    mods = [M for M in enumerate_modules(R, max_dim).modules if M.dim > 0]
    yield from mods
    reg = regular_module(R)
    for M in mods:
        yield direct_sum([reg, M])


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-dim", type=int, default=1, help="summand dimension bound")
    ap.add_argument("--k", type=int, default=1, help="power bound for P^k")
    args = ap.parse_args()
    t0 = time.perf_counter()
    for label, R in (("dual numbers", dual_numbers(2)), ("triangular", upper_triangular(2))):
        for P in candidates(R, args.max_dim):
            ctx = build_context(R, P, 1)
            res = w_sigma_qp_check(ctx, args.k)
            if not res["w_sigma_qp"]:
                w = res["witnesses"][0]
                status = star_verdict(ctx, extra_checks=False).status
                print(f"{label}: dim P {P.dim}, dim S {ctx.S.dim}: fails at k={w['k']} "
                      f"(quotient dim {w['quotient_dim']}), verdict {status}")
    print(f"({time.perf_counter() - t0:.1f}s)")


if __name__ == "__main__":
    main()
