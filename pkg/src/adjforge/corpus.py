"""Generated test corpora: posets, closure operators, Galois connections and
exhaustively searched monads on small hand-built categories."""

from __future__ import annotations

import itertools
from functools import lru_cache

from .fincat import (FinCategory, FinFunctor, StructureError, category_from_names,
                     complete_identity_entries, poset_category, poset_functor,
                     validate_category)
from .adjunctions import adjunction_from_components
from .monadics import closure_monad, monad_from_components, validate_monad


# ---------------------------------------------------------------------------
# posets
# ---------------------------------------------------------------------------

def _canonical(n, rel):
    best = None
    for perm in itertools.permutations(range(n)):
        key = tuple(sorted((perm[i], perm[j]) for i, j in rel))
        if best is None or key < best:
            best = key
    return best


@lru_cache(maxsize=None)
def posets_up_to_iso(n: int) -> tuple:
    """Partial orders on ``range(n)`` up to isomorphism, as sets of strict pairs ``(i, j)``, i < j.

    Every poset has a linear extension, so relabelling along one puts all
    strict pairs in the upper triangle; enumeration runs over transitive
    subsets of the upper triangle.
    """
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    seen = set()
    out = []
    for mask in range(1 << len(pairs)):
        rel = {pairs[k] for k in range(len(pairs)) if mask >> k & 1}
        if any((i, k) not in rel for (i, j) in rel for (j2, k) in rel if j == j2):
            continue
        key = _canonical(n, rel)
        if key in seen:
            continue
        seen.add(key)
        out.append(frozenset(key))
    return tuple(sorted(out, key=lambda r: (len(r), sorted(r))))


def poset_cat(n: int, strict) -> FinCategory:
    strict = set(strict)
    return poset_category(range(n), lambda a, b: a == b or (a, b) in strict)


def all_posets(max_n: int, min_n: int = 1):
    """``(n, strict_pairs, category)`` for every poset up to iso with ``min_n <= n <= max_n``."""
    for n in range(min_n, max_n + 1):
        for rel in posets_up_to_iso(n):
            yield n, rel, poset_cat(n, rel)


def _order_masks(P: FinCategory):
    """Bitmasks ``down[j]`` (elements below j) and ``up[j]`` (elements above j)."""
    n = P.n_objects
    down = [sum(1 << i for i in range(n) if P.hom(i, j)) for j in range(n)]
    up = [sum(1 << i for i in range(n) if P.hom(j, i)) for j in range(n)]
    return down, up


def monotone_maps(P: FinCategory, Q: FinCategory):
    """Object maps ``P -> Q`` that are monotone, by backtracking in object order."""
    n, m = P.n_objects, Q.n_objects
    pdown, pup = _order_masks(P)
    qdown, qup = _order_masks(Q)
    full = (1 << m) - 1
    below = [[i for i in range(k) if pdown[k] >> i & 1] for k in range(n)]
    above = [[i for i in range(k) if pup[k] >> i & 1] for k in range(n)]
    f = [0] * n

    def rec(k):
        if k == n:
            yield tuple(f)
            return
        allowed = full
        for i in below[k]:
            allowed &= qup[f[i]]
        for i in above[k]:
            allowed &= qdown[f[i]]
        while allowed:
            low = allowed & -allowed
            f[k] = low.bit_length() - 1
            allowed ^= low
            yield from rec(k + 1)

    yield from rec(0)


def closure_operators(P: FinCategory):
    """Monotone, inflationary, idempotent object maps on a poset category."""
    for f in monotone_maps(P, P):
        if all(P.hom(a, f[a]) for a in range(P.n_objects)) and \
           all(f[f[a]] == f[a] for a in range(P.n_objects)):
            yield f


def closure_monad_corpus(max_n: int = 5):
    """Every closure-operator monad on every poset with at most ``max_n`` elements."""
    for n, rel, P in all_posets(max_n):
        for cl in closure_operators(P):
            yield (n, rel, cl), closure_monad(P, cl)


def galois_connections(P: FinCategory, Q: FinCategory):
    """All adjoint pairs ``f -| g`` of monotone maps ``f: P -> Q``, ``g: Q -> P``.

    For each monotone ``f``, the right adjoint exists iff for every ``q`` the
    set ``{p : f(p) <= q}`` has a greatest element; it is then ``g(q)``.
    """
    n, m = P.n_objects, Q.n_objects
    pdown, _ = _order_masks(P)
    _, qup = _order_masks(Q)
    principal = {mask: p for p, mask in enumerate(pdown)}
    above = [[q for q in range(m) if qup[v] >> q & 1] for v in range(m)]
    for f in monotone_maps(P, Q):
        down = [0] * m
        for p in range(n):
            bit = 1 << p
            for q in above[f[p]]:
                down[q] |= bit
        g = tuple(principal.get(d, -1) for d in down)
        if -1 not in g:
            yield f, g


def galois_adjunction(P: FinCategory, Q: FinCategory, f, g):
    F = poset_functor(P, Q, f, name="f")
    G = poset_functor(Q, P, g, name="g")
    eta = []
    for p in range(P.n_objects):
        h = P.hom(p, g[f[p]])
        if not h:
            raise StructureError(f"no unit at {P.objects[p]}: f, g are not adjoint")
        eta.append(h[0])
    eps = []
    for q in range(Q.n_objects):
        h = Q.hom(f[g[q]], q)
        if not h:
            raise StructureError(f"no counit at {Q.objects[q]}: f, g are not adjoint")
        eps.append(h[0])
    return adjunction_from_components(F, G, eta, eps)


def galois_corpus(max_n: int = 5, min_n: int = 1):
    """Every Galois connection between posets with ``min_n..max_n`` elements (up to iso)."""
    posets = list(all_posets(max_n, min_n))
    for (n1, r1, P) in posets:
        for (n2, r2, Q) in posets:
            for f, g in galois_connections(P, Q):
                yield ((n1, r1), (n2, r2), f, g), galois_adjunction(P, Q, f, g)


# ---------------------------------------------------------------------------
# small non-poset categories
# ---------------------------------------------------------------------------

def _from_table(objects, morphisms, identities, compose):
    comp = complete_identity_entries(objects, morphisms, identities, compose)
    return category_from_names(objects, morphisms, identities, comp)


def monoid_category(elements, mult, unit, name="*") -> FinCategory:
    """One-object category of a finite monoid; ``mult(g, f)`` is ``g after f``."""
    elements = list(elements)
    mors = [(str(e), name, name) for e in elements]
    comp = [(str(g), str(f), str(mult(g, f))) for g in elements for f in elements]
    return category_from_names([name], mors, {name: str(unit)}, comp)


def finset_category(sizes) -> FinCategory:
    """Full subcategory of finite sets on the given cardinalities."""
    sizes = list(sizes)
    objects = [str(s) for s in sizes]
    mors, ident, funcs = [], {}, {}
    for a in sizes:
        for b in sizes:
            for fn in itertools.product(range(b), repeat=a):
                name = f"{a}->{b}:{''.join(map(str, fn))}"
                mors.append((name, str(a), str(b)))
                funcs[name] = (a, b, fn)
                if a == b and fn == tuple(range(a)):
                    ident[str(a)] = name
    comp = []
    for g, (b, c, gf) in funcs.items():
        for f, (a, b2, ff) in funcs.items():
            if b2 == b:
                h = tuple(gf[x] for x in ff)
                comp.append((g, f, f"{a}->{c}:{''.join(map(str, h))}"))
    return category_from_names(objects, mors, ident, comp)


def fp_vector_category(p: int, dims) -> FinCategory:
    """Full subcategory of F_p-vector spaces on the given dimensions (all matrices)."""
    import numpy as np
    dims = list(dims)
    objects = [f"F{p}^{d}" for d in dims]
    mats = {}
    mors, ident = [], {}
    for a in dims:
        for b in dims:
            for entries in itertools.product(range(p), repeat=a * b):
                name = f"{a}->{b}:{''.join(map(str, entries))}"
                mats[name] = (a, b, np.array(entries, dtype=np.int64).reshape(b, a))
                mors.append((name, f"F{p}^{a}", f"F{p}^{b}"))
                if a == b and np.array_equal(mats[name][2], np.eye(a, dtype=np.int64)):
                    ident[f"F{p}^{a}"] = name
    comp = []
    for g, (b, c, G) in mats.items():
        for f, (a, b2, Fm) in mats.items():
            if b2 == b:
                H = (G @ Fm) % p
                comp.append((g, f, f"{a}->{c}:{''.join(map(str, H.reshape(-1)))}"))
    return category_from_names(objects, mors, ident, comp)


def split_idempotent_category() -> FinCategory:
    """``X`` a retract of ``Y``: ``r s = id_X``, ``s r = e`` with ``e`` idempotent."""
    objects = ["X", "Y"]
    morphisms = [("1X", "X", "X"), ("1Y", "Y", "Y"), ("s", "X", "Y"),
                 ("r", "Y", "X"), ("e", "Y", "Y")]
    ident = {"X": "1X", "Y": "1Y"}
    compose = [("r", "s", "1X"), ("s", "r", "e"), ("e", "e", "e"),
               ("e", "s", "s"), ("r", "e", "r")]
    return _from_table(objects, morphisms, ident, compose)


def retract_chain_category() -> FinCategory:
    """Three objects with ``W`` a retract of ``X`` and ``X`` a retract of ``Y``."""
    objects = ["W", "X", "Y"]
    elems = {"W": 1, "X": 2, "Y": 3}
    # realised inside finite sets: W = {0}, X = {0,1}, Y = {0,1,2}, keeping only
    # the maps generated by the inclusions/retractions below
    gens = {
        "s1": ("W", "X", (0,)), "r1": ("X", "W", (0, 0)),
        "s2": ("X", "Y", (0, 1)), "r2": ("Y", "X", (0, 1, 1)),
    }
    funcs = {}
    for o, n in elems.items():
        funcs[("1" + o)] = (o, o, tuple(range(n)))
    funcs.update(gens)
    changed = True
    while changed:
        changed = False
        for g, (b, c, gf) in list(funcs.items()):
            for f, (a, b2, ff) in list(funcs.items()):
                if b2 != b:
                    continue
                h = tuple(gf[x] for x in ff)
                if not any(v == (a, c, h) for v in funcs.values()):
                    funcs[f"{g}.{f}"] = (a, c, h)
                    changed = True
    mors = [(n, a, b) for n, (a, b, _) in funcs.items()]
    lookup = {v: n for n, v in funcs.items()}
    comp = []
    for g, (b, c, gf) in funcs.items():
        for f, (a, b2, ff) in funcs.items():
            if b2 == b:
                comp.append((g, f, lookup[(a, c, tuple(gf[x] for x in ff))]))
    ident = {o: "1" + o for o in objects}
    return category_from_names(objects, mors, ident, comp)


def monoids_up_to_iso(order: int) -> list:
    """Multiplication tables of all monoids of the given order up to isomorphism.

    Element 0 is the unit; tables are tuples with ``t[g][f]`` = ``g after f``.
    """
    n = order
    free = [(g, f) for g in range(1, n) for f in range(1, n)]
    seen, out = set(), []
    for vals in itertools.product(range(n), repeat=len(free)):
        t = [[0] * n for _ in range(n)]
        for x in range(n):
            t[0][x] = x
            t[x][0] = x
        for (g, f), v in zip(free, vals):
            t[g][f] = v
        if any(t[t[a][b]][c] != t[a][t[b][c]]
               for a in range(n) for b in range(n) for c in range(n)):
            continue
        best = None
        for perm in itertools.permutations(range(1, n)):
            pm = (0,) + perm
            inv = [0] * n
            for i, j in enumerate(pm):
                inv[j] = i
            key = tuple(tuple(pm[t[inv[a]][inv[b]]] for b in range(n)) for a in range(n))
            if best is None or key < best:
                best = key
        if best not in seen:
            seen.add(best)
            out.append(best)
    return sorted(out)


def preorders_up_to_iso(n: int) -> list:
    """Reflexive transitive relations on ``range(n)`` up to relabelling, as sets of pairs."""
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    seen, out = set(), []
    for mask in range(1 << len(pairs)):
        rel = {pairs[k] for k in range(len(pairs)) if mask >> k & 1}
        if any((i, k) not in rel and i != k for (i, j) in rel for (j2, k) in rel if j == j2):
            continue
        key = _canonical(n, rel)
        if key not in seen:
            seen.add(key)
            out.append(frozenset(key))
    return sorted(out, key=lambda r: (len(r), sorted(r)))


def kronecker_category() -> FinCategory:
    """Two parallel arrows ``a, b: X -> Y``."""
    return _from_table(["X", "Y"], [("1X", "X", "X"), ("1Y", "Y", "Y"),
                                    ("a", "X", "Y"), ("b", "X", "Y")],
                       {"X": "1X", "Y": "1Y"}, [])


def group_arrow_category() -> FinCategory:
    """``Z/2`` acting on both ends of a single arrow ``X -> Y``, equivariantly."""
    objects = ["X", "Y"]
    mors = [("1X", "X", "X"), ("tX", "X", "X"), ("1Y", "Y", "Y"), ("tY", "Y", "Y"),
            ("f", "X", "Y"), ("tf", "X", "Y")]
    comp = [("tX", "tX", "1X"), ("tY", "tY", "1Y"), ("tY", "f", "tf"), ("f", "tX", "tf"),
            ("tY", "tf", "f"), ("tf", "tX", "f")]
    return _from_table(objects, mors, {"X": "1X", "Y": "1Y"}, comp)


def _s3_mult(g, f):
    perms = list(itertools.permutations(range(3)))
    pg, pf = perms[g], perms[f]
    return perms.index(tuple(pg[pf[i]] for i in range(3)))


def small_categories() -> dict:
    """Named hand-built categories with at most 3 objects and 12 morphisms."""
    cats = {
        "terminal": poset_cat(1, ()),
        "discrete2": poset_cat(2, ()),
        "discrete3": poset_cat(3, ()),
        "chain2": poset_cat(2, {(0, 1)}),
        "chain3": poset_cat(3, {(0, 1), (1, 2), (0, 2)}),
        "vee": poset_cat(3, {(0, 1), (0, 2)}),
        "wedge": poset_cat(3, {(0, 2), (1, 2)}),
        "chain2+point": poset_cat(3, {(0, 1)}),
        "Z2": monoid_category([0, 1], lambda g, f: (g + f) % 2, 0),
        "Z3": monoid_category([0, 1, 2], lambda g, f: (g + f) % 3, 0),
        "idempotent-monoid": monoid_category(["1", "e"], lambda g, f: "e" if "e" in (g, f) else "1", "1"),
        "End(2)": finset_category([2]),
        "split-idempotent": split_idempotent_category(),
        "FinSet{1,2}": finset_category([1, 2]),
        "FinSet{0,1,2}": finset_category([0, 1, 2]),
        "FinSet{0,1}": finset_category([0, 1]),
        "Vect_F2{0,1}": fp_vector_category(2, [0, 1]),
        "Vect_F3{0,1}": fp_vector_category(3, [0, 1]),
        "kronecker": kronecker_category(),
        "Z2-arrow": group_arrow_category(),
        "Z4": monoid_category(range(4), lambda g, f: (g + f) % 4, 0),
        "Z2xZ2": monoid_category(range(4), lambda g, f: g ^ f, 0),
        "S3": monoid_category(range(6), _s3_mult, 0),
        "Z6": monoid_category(range(6), lambda g, f: (g + f) % 6, 0),
    }
    for n in (2, 3):
        for k, rel in enumerate(preorders_up_to_iso(n)):
            c = poset_category(range(n), lambda a, b, rel=rel: a == b or (a, b) in rel)
            cats.setdefault(f"preorder{n}-{k}", c)
    for order in (2, 3):
        for k, t in enumerate(monoids_up_to_iso(order)):
            cats[f"monoid{order}-{k}"] = monoid_category(range(order), lambda g, f, t=t: t[g][f], 0)
    for name, c in cats.items():
        if c.n_objects > 3 or c.n_morphisms > 12:
            raise AssertionError(f"{name} is outside the search bounds")
        v = validate_category(c)
        if not v.ok:
            raise AssertionError(f"{name} is not a category: {v.violations[:3]}")
    return cats


# ---------------------------------------------------------------------------
# exhaustive monad search
# ---------------------------------------------------------------------------

def endofunctors(c: FinCategory):
    """All endofunctors of ``c`` by backtracking over object then morphism images."""
    n, M = c.n_objects, c.n_morphisms
    order = [m for m in range(M) if not c.is_identity(m)]
    for obj in itertools.product(range(n), repeat=n):
        mor = [None] * M
        for a in range(n):
            mor[c.identities[a]] = c.identities[obj[a]]

        def consistent(m):
            for (g, f), h in c.table.items():
                if m not in (g, f, h):
                    continue
                if mor[g] is None or mor[f] is None or mor[h] is None:
                    continue
                if c.table[(mor[g], mor[f])] != mor[h]:
                    return False
            return True

        def rec(k):
            if k == len(order):
                yield FinFunctor(c, c, obj, list(mor), name="T")
                return
            m = order[k]
            for cand in c.hom(obj[c.src[m]], obj[c.dst[m]]):
                mor[m] = cand
                if consistent(m):
                    yield from rec(k + 1)
            mor[m] = None

        yield from rec(0)


def _natural_families(c: FinCategory, F: FinFunctor, G: FinFunctor):
    """All natural transformations ``F => G`` as component tuples."""
    n = c.n_objects
    choices = [c.hom(F.ob(a), G.ob(a)) for a in range(n)]
    comps = [None] * n

    def ok_upto(k):
        for m in range(c.n_morphisms):
            s, t = c.src[m], c.dst[m]
            if max(s, t) != k:
                continue
            if c.table[(G(m), comps[s])] != c.table[(comps[t], F(m))]:
                return False
        return True

    def rec(k):
        if k == n:
            yield tuple(comps)
            return
        for cand in choices[k]:
            comps[k] = cand
            if ok_upto(k):
                yield from rec(k + 1)
        comps[k] = None

    yield from rec(0)


def monads_on(c: FinCategory, limit: int | None = None):
    """Every monad on ``c``, found by enumerating functors and component families."""
    from .fincat import compose_functors, identity_functor
    count = 0
    I = identity_functor(c)
    for T in endofunctors(c):
        TT = compose_functors(T, T)
        etas = list(_natural_families(c, I, T))
        if not etas:
            continue
        for mu in _natural_families(c, TT, T):
            for eta in etas:
                m = monad_from_components(T, mu, eta)
                if validate_monad(m).ok:
                    yield m
                    count += 1
                    if limit is not None and count >= limit:
                        return


def extended_categories() -> dict:
    """Categories past the default search bounds, used by the longer scripts."""
    return {"retract-chain": retract_chain_category(),
            "FinSet{0,1,2}+Z2": _finset_with_swap()}


def _finset_with_swap() -> FinCategory:
    """``Z/2`` glued to ``{0, 1}`` in FinSet: objects 1, 2 and a free-standing group object."""
    base = finset_category([1, 2])
    objs = list(base.objects) + ["G"]
    mors = [(base.names[k], base.objects[base.src[k]], base.objects[base.dst[k]])
            for k in range(base.n_morphisms)] + [("1G", "G", "G"), ("tG", "G", "G")]
    ids = {base.objects[a]: base.names[base.identities[a]] for a in range(base.n_objects)}
    ids["G"] = "1G"
    comp = [(base.names[g], base.names[f], base.names[h]) for (g, f), h in base.table.items()]
    comp += [("tG", "tG", "1G")]
    return _from_table(objs, mors, ids, comp)


def searched_monad_corpus(limit_per_category: int | None = None):
    for name, c in small_categories().items():
        for k, m in enumerate(monads_on(c, limit_per_category)):
            yield (name, k), m
