"""Brute-force reference implementations used only by the tests.

Nothing here calls the package's search code paths: these are deliberately
naive scans written against raw tables and raw matrices.
"""

import itertools
import math

import numpy as np


# ---------------------------------------------------------------------------
# categories
# ---------------------------------------------------------------------------

def _hom(c, a, b):
    return [m for m in range(c.n_morphisms) if c.src[m] == a and c.dst[m] == b]


def _comp(c, g, f):
    return c.table[(g, f)]


def oracle_mono(c, m):
    a = c.src[m]
    for x in range(c.n_objects):
        hs = _hom(c, x, a)
        for f in hs:
            for g in hs:
                if f != g and _comp(c, m, f) == _comp(c, m, g):
                    return False
    return True


def oracle_epi(c, m):
    b = c.dst[m]
    for x in range(c.n_objects):
        hs = _hom(c, b, x)
        for f in hs:
            for g in hs:
                if f != g and _comp(c, f, m) == _comp(c, g, m):
                    return False
    return True


def oracle_iso(c, m):
    return any(_comp(c, k, m) == c.identities[c.src[m]] and
               _comp(c, m, k) == c.identities[c.dst[m]]
               for k in _hom(c, c.dst[m], c.src[m]))


def oracle_extremal_epi(c, e):
    """Every factorization ``e = m . f`` through a mono ``m`` has ``m`` iso."""
    if not oracle_epi(c, e):
        return False
    s, t = c.src[e], c.dst[e]
    for x in range(c.n_objects):
        for f in _hom(c, s, x):
            for m in _hom(c, x, t):
                if _comp(c, m, f) == e and oracle_mono(c, m) and not oracle_iso(c, m):
                    return False
    return True


def oracle_extremal_mono(c, m):
    if not oracle_mono(c, m):
        return False
    s, t = c.src[m], c.dst[m]
    for x in range(c.n_objects):
        for e in _hom(c, s, x):
            for f in _hom(c, x, t):
                if _comp(c, f, e) == m and oracle_epi(c, e) and not oracle_iso(c, e):
                    return False
    return True


def oracle_flags(c, m):
    return {"mono": oracle_mono(c, m), "epi": oracle_epi(c, m),
            "extremal_mono": oracle_extremal_mono(c, m),
            "extremal_epi": oracle_extremal_epi(c, m), "iso": oracle_iso(c, m)}


def oracle_modules(monad):
    """All ``(A, rho)`` passing the raw module equations."""
    c, T, mu, eta = monad.base, monad.T, monad.mu, monad.eta
    out = []
    for a in range(c.n_objects):
        for rho in range(c.n_morphisms):
            if c.src[rho] != T.ob(a) or c.dst[rho] != a:
                continue
            if _comp(c, rho, eta[a]) != c.identities[a]:
                continue
            if _comp(c, rho, T(rho)) != _comp(c, rho, mu[a]):
                continue
            out.append((a, rho))
    return out


# ---------------------------------------------------------------------------
# linear algebra over F_p
# ---------------------------------------------------------------------------

def all_matrices(p, rows, cols):
    for entries in itertools.product(range(p), repeat=rows * cols):
        yield np.array(entries, dtype=np.int64).reshape(rows, cols)


def brute_hom_count(M, N):
    """Number of intertwiners ``M -> N`` found by scanning every linear map."""
    p = M.algebra.p
    count = 0
    for f in all_matrices(p, N.dim, M.dim):
        if all(np.array_equal((f @ M.action[i]) % p, (N.action[i] @ f) % p)
               for i in range(M.algebra.dim)):
            count += 1
    return count


def brute_hom_dim(M, N):
    p = M.algebra.p
    count = brute_hom_count(M, N)
    d = round(math.log(count, p))
    assert p ** d == count
    return d


def raw_module_structures(alg, n):
    """Every tuple of ``n x n`` matrices satisfying the module equations."""
    p, d = alg.p, alg.dim
    eye = np.eye(n, dtype=np.int64)
    c = np.asarray(alg.constants, dtype=np.int64)
    u = np.asarray(alg.unit, dtype=np.int64)
    mats = list(all_matrices(p, n, n))
    for tup in itertools.product(mats, repeat=d):
        L = np.stack(tup)
        if not np.array_equal(np.einsum("i,ijk->jk", u, L) % p, eye % p):
            continue
        ok = True
        for i in range(d):
            for j in range(d):
                lhs = (L[i] @ L[j]) % p
                rhs = np.einsum("k,kab->ab", c[i, j], L) % p
                if not np.array_equal(lhs, rhs):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            yield L


def brute_isomorphic(M, N):
    """Conjugacy of action tuples by scanning every invertible matrix."""
    if M.dim != N.dim:
        return False
    p, n = M.algebra.p, M.dim
    if n == 0:
        return True
    for g in all_matrices(p, n, n):
        if round(np.linalg.det(g)) % p == 0:
            continue
        if all(np.array_equal((g @ M.action[i]) % p, (N.action[i] @ g) % p)
               for i in range(M.algebra.dim)):
            return True
    return False


def count_iso_classes(modules):
    reps = []
    for M in modules:
        if not any(brute_isomorphic(M, R) for R in reps):
            reps.append(M)
    return len(reps)


# ---------------------------------------------------------------------------
# non-idempotent monad search
# ---------------------------------------------------------------------------

def search_all_false_monad(max_objects=3, max_morphisms=12, extended=False):
    """First searched monad whose battery is false on every condition, else None."""
    from adjforge.corpus import extended_categories, monads_on, small_categories
    from adjforge.monadics import idempotence_battery

    cats = [c for c in small_categories().values()
            if c.n_objects <= max_objects and c.n_morphisms <= max_morphisms]
    if extended:
        cats += list(extended_categories().values())
    for c in cats:
        for m in monads_on(c):
            r = idempotence_battery(m)
            if not any(r.conditions.values()) and not any(r.parts.values()):
                return m
    return None
