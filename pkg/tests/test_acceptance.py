"""Acceptance suite: one test (or a small group) per numbered criterion.

A summary line per criterion is printed at the end of the pytest run.
"""

import json
import time

import pytest

from adjforge import serialize
from adjforge.adjunctions import idempotent_pair_battery, pair_context, star_pair_check, verify_equivalence
from adjforge.algmod import (LeftModule, algebra_isomorphism, dual_numbers, field_algebra,
                             hom_basis, power, regular_module, simple_dual_numbers_module,
                             upper_triangular, zero_module)
from adjforge.corpus import (closure_monad_corpus, extended_categories, galois_corpus,
                             monads_on, searched_monad_corpus)
from adjforge.fincat import validate_adjunction
from adjforge.monadics import (build_em_adjunction, dual_comonad, idempotence_battery,
                               idempotence_battery_comonad)
from adjforge.starlab import (build_context, build_window_category, counit_matrix,
                              hom, idempotence_battery_concrete, revalidate_certificate,
                              star_verdict, tensor, triangle_identities, unit_matrix,
                              window_adjunction)

from oracles import brute_hom_dim, raw_module_structures

criterion = pytest.mark.criterion


def _vector(report):
    return tuple(report.conditions[k] for k in sorted(report.conditions)) + \
        tuple(report.parts[k] for k in sorted(report.parts))


# ---------------------------------------------------------------------------
# shared corpora (built once per session)
# ---------------------------------------------------------------------------

@pytest.fixture(scope="module")
def monad_corpus():
    t0 = time.perf_counter()
    closure = list(closure_monad_corpus(5))
    searched = list(searched_monad_corpus())
    built = time.perf_counter() - t0
    return closure, searched, built


@pytest.fixture(scope="module")
def monad_batteries(monad_corpus):
    closure, searched, built = monad_corpus
    t0 = time.perf_counter()
    reports = [(key, m, idempotence_battery(m)) for key, m in closure + searched]
    return reports, built + time.perf_counter() - t0


@pytest.fixture(scope="module")
def galois_run():
    t0 = time.perf_counter()
    rows = []
    for key, a in galois_corpus(5):
        ctx = pair_context(a)
        battery = idempotent_pair_battery(a, ctx=ctx)
        eq = verify_equivalence(a, ctx=ctx)
        rows.append((key, a, battery, eq))
    return rows, time.perf_counter() - t0


MORITA = {
    "dual numbers, P = R": (dual_numbers(2), lambda R: regular_module(R)),
    "triangular, P = R": (upper_triangular(2), lambda R: regular_module(R)),
    "dual numbers, P = R^2": (dual_numbers(2), lambda R: power(regular_module(R), 2)),
    "triangular, P = R^2": (upper_triangular(2), lambda R: power(regular_module(R), 2)),
}


@pytest.fixture(scope="module")
def morita_runs():
    t0 = time.perf_counter()
    out = {}
    for name, (R, mk) in MORITA.items():
        ctx = build_context(R, mk(R), 3)
        out[name] = (ctx, star_verdict(ctx))
    return out, time.perf_counter() - t0


@pytest.fixture(scope="module")
def simple_run():
    R = dual_numbers(2)
    ctx = build_context(R, simple_dual_numbers_module(2), 4)
    return ctx, star_verdict(ctx)


@pytest.fixture(scope="module")
def triangular_scan():
    R = upper_triangular(2)
    rows = []
    for n in (1, 2):
        for L in raw_module_structures(R, n):
            ctx = build_context(R, LeftModule(R, n, L), 2)
            rows.append((ctx, star_verdict(ctx, extra_checks=False)))
    return rows


# ---------------------------------------------------------------------------
# 1-2: monad and comonad batteries
# ---------------------------------------------------------------------------

@criterion(1, "monad battery agreement over closure operators and searched monads, < 60 s")
def test_monad_battery_agreement(monad_corpus, monad_batteries):
    closure, searched, _ = monad_corpus
    reports, elapsed = monad_batteries
    assert len(searched) >= 100
    assert {k[0] for k, _ in searched} and max(m.base.n_objects for _, m in searched) <= 3
    assert max(m.base.n_morphisms for _, m in searched) <= 12
    disagree = [key for key, _, r in reports if not r.agree]
    assert not disagree, disagree[:5]
    assert elapsed < 60, elapsed


@criterion(1, "an all-false instance exists in the search space")
def test_monad_battery_has_all_false_instance(monad_batteries):
    reports, _ = monad_batteries
    found = [key for key, _, r in reports if not any(_vector(r))]
    if not found:
        for name, c in extended_categories().items():
            for k, m in enumerate(monads_on(c)):
                if not any(_vector(idempotence_battery(m))):
                    found.append((name, k))
    assert found, "no non-idempotent monad in the searched space"


@criterion(2, "comonad battery on the op-dual corpus reproduces every verdict vector")
def test_op_dual_comonad_battery(monad_batteries):
    reports, _ = monad_batteries
    bad = []
    for key, m, r in reports:
        d = idempotence_battery_comonad(dual_comonad(m))
        if not d.agree or _vector(d) != _vector(r):
            bad.append(key)
    assert not bad, bad[:5]


# ---------------------------------------------------------------------------
# 3-5: pairs and EM adjunctions
# ---------------------------------------------------------------------------

@criterion(3, "every Galois connection on posets <= 5 is an idempotent pair with equivalence, < 60 s")
def test_galois_pairs(galois_run):
    rows, elapsed = galois_run
    assert len(rows) > 1000
    bad = [key for key, _, b, eq in rows if not (b.verdict and b.agree and eq.ok)]
    assert not bad, bad[:5]
    assert elapsed < 60, elapsed


@criterion(4, "star pairs in the Galois corpus have closed Fix classes")
def test_galois_star_pair_closure(galois_run):
    rows, _ = galois_run
    stars, bad = 0, []
    for key, a, _, _ in rows:
        rep = star_pair_check(a)
        if rep.star:
            stars += 1
            if not rep.closure_ok:
                bad.append((key, rep.witnesses))
    assert stars > 0
    assert not bad, bad[:5]


@criterion(5, "the Eilenberg-Moore adjunction satisfies the triangle identities for every corpus monad")
def test_em_triangles(monad_corpus):
    closure, searched, _ = monad_corpus
    bad = [key for key, m in closure + searched
           if not validate_adjunction(build_em_adjunction(m).adjunction).ok]
    assert not bad, bad[:5]


# ---------------------------------------------------------------------------
# 6-9: concrete contexts
# ---------------------------------------------------------------------------

@criterion(6, "Morita contexts: unit and counit iso on windows of dim <= 3, < 120 s")
def test_morita_contexts(morita_runs):
    runs, elapsed = morita_runs
    for name, (ctx, verdict) in runs.items():
        assert ctx.complete, name
        assert all(unit_matrix(ctx, X).is_iso() for X in ctx.s_modules), name
        assert all(counit_matrix(ctx, N).is_iso() for N in ctx.r_modules), name
        assert verdict.status == "star-on-window", name
        assert all(verdict.checks.values()), (name, verdict.checks)
    assert elapsed < 120, elapsed


@criterion(7, "simple module over the dual numbers: S = F2, counits injective, units onto, hom dims match brute force")
def test_simple_dual_numbers(simple_run):
    ctx, verdict = simple_run
    assert algebra_isomorphism(ctx.S, field_algebra(2)) is not None
    assert ctx.complete and max(M.dim for M in ctx.r_modules) == 4
    P = ctx.P.left_module
    for N in ctx.r_modules:
        assert counit_matrix(ctx, N).is_injective()
        assert len(hom_basis(P, N)) == brute_hom_dim(P, N)
    for X in ctx.s_modules:
        assert unit_matrix(ctx, X).is_surjective()
        TX = tensor(ctx, X).module
        assert len(hom_basis(P, TX)) == brute_hom_dim(P, TX)
    assert len(hom_basis(P, P)) == brute_hom_dim(P, P) == 1
    assert verdict.status == "star-on-window"


@criterion(8, "scan of triangular-algebra bimodules of dim <= 2 refutes some P; all certificates revalidate")
def test_triangular_refutation(triangular_scan):
    refuted = [(ctx, v) for ctx, v in triangular_scan if v.status == "refuted"]
    assert refuted
    for ctx, v in refuted:
        assert v.certificates
        pj = serialize.bimodule_to_json(ctx.P)
        pj = json.loads(serialize.dumps(pj))
        for cert in v.certificates:
            cert = json.loads(serialize.dumps(cert))
            assert revalidate_certificate(cert, pj)


@criterion(9, "window conditions (b), (d), (e), (f) agree on every concrete context")
def test_concrete_battery_coherence(morita_runs, simple_run, triangular_scan):
    runs, _ = morita_runs
    contexts = [ctx for ctx, _ in runs.values()] + [simple_run[0]] + \
        [ctx for ctx, _ in triangular_scan]
    for ctx in contexts:
        r = idempotence_battery_concrete(ctx)
        assert len({r.conditions[k] for k in "bdef"}) == 1, r.to_text()


# ---------------------------------------------------------------------------
# 10-11
# ---------------------------------------------------------------------------

@criterion(10, "window category over F2: surjective => epi, injective => mono; abstract pair battery matches")
def test_cross_layer():
    F2 = field_algebra(2)
    wc = build_window_category([zero_module(F2), regular_module(F2)])
    C = wc.category
    assert sum(1 for m in range(C.n_morphisms) if not C.is_identity(m)) == 3
    for k, f in enumerate(wc.maps):
        if f.is_surjective():
            assert C.is_epi(k)
        if f.is_injective():
            assert C.is_mono(k)
    compared = 0
    for R, P in [(F2, regular_module(F2)), (dual_numbers(2), simple_dual_numbers_module(2)),
                 (dual_numbers(2), regular_module(dual_numbers(2)))]:
        ctx = build_context(R, P, 1)
        wa = window_adjunction(ctx)
        if wa.adjunction is None:
            continue
        compared += 1
        assert validate_adjunction(wa.adjunction).ok
        pair = idempotent_pair_battery(wa.adjunction)
        concrete = idempotence_battery_concrete(ctx)
        verdict = star_verdict(ctx)
        assert pair.agree
        assert pair.verdict == concrete.verdict
        assert star_pair_check(wa.adjunction).star == (verdict.status == "star-on-window")
    assert compared >= 1


@criterion(11, "triangle identity composites are exact identity matrices on contexts 6-7")
def test_exact_triangles(morita_runs, simple_run):
    runs, _ = morita_runs
    for ctx in [c for c, _ in runs.values()] + [simple_run[0]]:
        for X in ctx.s_modules:
            assert triangle_identities(ctx, X=X) == {"T": True}
        for N in ctx.r_modules:
            assert triangle_identities(ctx, N=N) == {"H": True}
            assert hom(ctx, N).module.dim == len(hom_basis(ctx.P.left_module, N))
