"""Time the eight-condition pair battery and the fixed-point equivalence over
all Galois connections between posets of each size."""

import argparse
import time

from adjforge.adjunctions import idempotent_pair_battery, pair_context, star_pair_check, verify_equivalence
from adjforge.corpus import galois_corpus


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=5)
    args = ap.parse_args()
    for n in range(1, args.max_n + 1):
        t0 = time.perf_counter()
        count = all_true = equiv = star = 0
        for _, a in galois_corpus(n, min_n=n):
            ctx = pair_context(a)
            r = idempotent_pair_battery(a, ctx=ctx)
            count += 1
            all_true += all(r.conditions.values())
            equiv += verify_equivalence(a, ctx=ctx).ok
            star += star_pair_check(a).star
        print(f"both posets of size {n}: {count} pairs, all-true {all_true}, equivalences {equiv}, "
              f"star pairs {star}  ({time.perf_counter() - t0:.1f}s)")


if __name__ == "__main__":
    main()
