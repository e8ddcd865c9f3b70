"""Exhaustive monad search: run the seven-condition battery on every monad found
on the small and extended category corpora and tabulate the verdicts."""

import argparse
import time
from collections import Counter

from adjforge.corpus import extended_categories, monads_on, small_categories
from adjforge.monadics import idempotence_battery


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--extended", action="store_true", help="include the extended corpus")
    ap.add_argument("--limit", type=int, default=None, help="monads per category")
    args = ap.parse_args()

    cats = dict(small_categories())
    if args.extended:
        cats.update(extended_categories())
    totals = Counter()
    t0 = time.perf_counter()
    for name, c in sorted(cats.items()):
        seen = Counter()
        for m in monads_on(c, args.limit):
            r = idempotence_battery(m)
            seen["agree" if r.agree else "DISAGREE"] += 1
            seen["idempotent" if r.verdict else "non-idempotent"] += 1
        totals.update(seen)
        print(f"{name:>14}: {c.n_objects} obj {c.n_morphisms:>3} mor  "
              + "  ".join(f"{k}={v}" for k, v in sorted(seen.items())))
    print(f"total: {dict(sorted(totals.items()))}  ({time.perf_counter() - t0:.1f}s)")


if __name__ == "__main__":
    main()
