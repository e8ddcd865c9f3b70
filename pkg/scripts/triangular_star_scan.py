"""Star verdicts for every 2x2 upper-triangular F_2 module structure of small
dimension, with S computed as the endomorphism algebra."""

import argparse
import itertools
import time
from collections import Counter

import numpy as np

from adjforge.algmod import LeftModule, upper_triangular, validate_module
from adjforge.starlab import build_context, revalidate_certificate, star_verdict
from adjforge import serialize


def structures(alg, n):
    mats = [np.array(m, dtype=np.int64).reshape(n, n)
            for m in itertools.product(range(alg.p), repeat=n * n)]
    for action in itertools.product(mats, repeat=alg.dim):
        try:
            M = LeftModule(alg, n, list(action))
        except ValueError:
            continue
        if validate_module(M).ok:
            yield M


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-p-dim", type=int, default=2)
    ap.add_argument("--max-dim", type=int, default=2, help="window bound")
    args = ap.parse_args()

    T = upper_triangular(2)
    t0 = time.perf_counter()
    tally, bad_certs = Counter(), 0
    for n in range(1, args.max_p_dim + 1):
        for P in structures(T, n):
            ctx = build_context(T, P, args.max_dim)
            v = star_verdict(ctx, extra_checks=False)
            tally[(n, ctx.S.dim, v.status)] += 1
            bim = serialize.bimodule_to_json(ctx.P)
            payload = v.to_json(ctx)
            bad_certs += sum(not revalidate_certificate(c, bim) for c in payload["certificates"])
    for (n, s, status), k in sorted(tally.items()):
        print(f"dim P {n}  dim S {s}  {status:<15} {k}")
    print(f"non-reproducible certificates: {bad_certs}  ({time.perf_counter() - t0:.1f}s)")


if __name__ == "__main__":
    main()
