import itertools

import pytest
from hypothesis import given, strategies as st

from adjforge.corpus import closure_monad_corpus, fp_vector_category, small_categories
from adjforge.fincat import (BudgetExceeded, FinCategory, FinFunctor, NatTrans, StructureError,
                             chain, classify_morphism, compose_functors, constant_functor,
                             identity_functor, identity_nattrans, poset_category, poset_functor,
                             terminal_category, validate_category, validate_functor,
                             validate_nattrans, vertical_compose, whisker)
from adjforge.monadics import closure_monad

from oracles import oracle_flags

CATS = small_categories()


@st.composite
def posets(draw, max_n=5):
    n = draw(st.integers(1, max_n))
    pairs = draw(st.sets(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))
                         .filter(lambda t: t[0] < t[1])))
    rel = {(i, i) for i in range(n)} | set(pairs)
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in itertools.product(list(rel), repeat=2):
            if b == c and (a, d) not in rel:
                rel.add((a, d))
                changed = True
    return poset_category(range(n), lambda a, b: (a, b) in rel)


categories = st.one_of(posets(), st.sampled_from(sorted(CATS)).map(CATS.__getitem__))


def test_terminal_category_is_valid():
    assert validate_category(terminal_category()).ok


def test_three_chain_has_six_morphisms_and_is_valid():
    c = chain(3)
    assert c.n_morphisms == 6
    assert validate_category(c).ok


def _loop_table(ff, gf, fg, gg):
    names = ["id", "f", "g"]
    comp = {(0, 0): 0, (0, 1): 1, (1, 0): 1, (0, 2): 2, (2, 0): 2,
            (1, 1): ff, (2, 1): gf, (1, 2): fg, (2, 2): gg}
    return FinCategory(["*"], [(n, 0, 0) for n in names], [0], comp)


def test_associativity_violation_names_fff():
    # f.f = g and g.f = f; scan the remaining entries for a failing table
    found = None
    for fg, gg in itertools.product(range(3), repeat=2):
        c = _loop_table(2, 1, fg, gg)
        v = validate_category(c)
        if not v.ok:
            found = v
            break
    assert found is not None
    laws = {(x.law, x.witness) for x in found.violations}
    assert ("associativity", ("f", "f", "f")) in laws


def test_structural_errors_are_distinct_from_law_failures():
    with pytest.raises(StructureError):
        FinCategory(["a"], [("id", 0, 3)], [0], {})
    with pytest.raises(StructureError):
        FinCategory(["a", "b"], [("ia", 0, 0), ("ib", 1, 1), ("f", 0, 1)], [0, 1],
                    {(2, 2): 2})
    with pytest.raises(BudgetExceeded):
        FinCategory(["a"], [(str(i), 0, 0) for i in range(5)], [0], {}, budget=4)


def test_missing_composite_is_a_totality_failure():
    c = FinCategory(["a", "b"], [("ia", 0, 0), ("ib", 1, 1), ("f", 0, 1)], [0, 1],
                    {(0, 0): 0, (1, 1): 1, (2, 0): 2})
    v = validate_category(c)
    assert [x.law for x in v.violations] == ["totality"]
    assert v.violations[0].witness == ("ib", "f")


def test_identity_is_everything():
    c = CATS["FinSet{0,1,2}"]
    for a in range(c.n_objects):
        flags = classify_morphism(c, c.identities[a])
        assert all(vars(flags).values())


def test_two_chain_arrow_is_mono_epi_not_iso():
    c = chain(2)
    m = c.hom(0, 1)[0]
    f = classify_morphism(c, m)
    assert f.mono and f.epi
    assert not (f.iso or f.extremal_epi or f.extremal_mono)


def test_zero_map_on_f2_is_neither_mono_nor_epi():
    c = fp_vector_category(2, [0, 1])
    one = c.obj_id("F2^1")
    zero_maps = [m for m in c.hom(one, one) if m != c.identities[one]]
    assert len(zero_maps) == 1
    f = classify_morphism(c, zero_maps[0])
    assert not f.mono and not f.epi


def test_classify_rejects_unknown_id():
    with pytest.raises(StructureError):
        classify_morphism(chain(2), 99)


@given(categories)
def test_classification_matches_oracle(c):
    for m in range(c.n_morphisms):
        f = classify_morphism(c, m)
        o = oracle_flags(c, m)
        assert {k: getattr(f, k) for k in o} == o
        if f.iso:
            assert f.mono and f.epi and f.extremal_mono and f.extremal_epi
        if f.extremal_epi and f.mono:
            assert f.iso
        if f.extremal_mono and f.epi:
            assert f.iso
        assert f.epi or not f.retraction
        assert f.mono or not f.coretraction


@given(categories)
def test_opposite_swaps_flags(c):
    o = c.op()
    assert validate_category(o).ok
    for m in range(c.n_morphisms):
        f, g = classify_morphism(c, m), classify_morphism(o, m)
        assert (f.mono, f.epi, f.extremal_mono, f.extremal_epi, f.iso) == \
            (g.epi, g.mono, g.extremal_epi, g.extremal_mono, g.iso)


def test_iso_witness_is_a_pair_of_inverses():
    c = CATS["Z2-arrow"]
    for a in range(c.n_objects):
        w = c.iso_witness(a, a)
        assert w is not None
        f, g = w
        assert c.compose(g, f) == c.identities[a]


# -- functors ---------------------------------------------------------------

@given(categories)
def test_identity_and_constant_functors_validate(c):
    assert validate_functor(identity_functor(c)).ok
    for a in range(c.n_objects):
        assert validate_functor(constant_functor(c, c, a)).ok


def test_non_monotone_object_map_is_caught():
    c = chain(3)
    obj = [1, 0, 2]
    mor = []
    for m in range(c.n_morphisms):
        hs = c.hom(obj[c.src[m]], obj[c.dst[m]])
        mor.append(hs[0] if hs else c.identities[obj[c.src[m]]])
    v = validate_functor(FinFunctor(c, c, obj, mor))
    assert not v.ok
    assert v.violations[0].law == "endpoints"
    assert v.violations[0].witness == ("0<=1",)
    with pytest.raises(StructureError, match="0<=1"):
        poset_functor(c, c, obj)


def test_compose_functors_shape_mismatch():
    with pytest.raises(StructureError):
        compose_functors(identity_functor(chain(2)), identity_functor(chain(3)))


# -- natural transformations ------------------------------------------------

def test_whiskering_identity_gives_identity():
    c = chain(3)
    T = poset_functor(c, c, [1, 1, 2])
    I = identity_nattrans(T)
    for side in ("left", "right"):
        w = whisker(I, T, side)
        assert validate_nattrans(w).ok
        assert w == identity_nattrans(w.source)


def test_closure_monad_unit_whiskers_agree():
    c = chain(3)
    m = closure_monad(c, [1, 1, 2])
    left = whisker(m.eta, m.T, "left")
    right = whisker(m.eta, m.T, "right")
    assert left.components == right.components


def test_vertical_identity_is_neutral():
    c = chain(3)
    m = closure_monad(c, [1, 1, 2])
    assert vertical_compose(m.eta, identity_nattrans(m.eta.source)) == m.eta
    assert vertical_compose(identity_nattrans(m.eta.target), m.eta) == m.eta


def test_bad_component_endpoints():
    c = chain(2)
    I = identity_functor(c)
    bad = NatTrans(I, I, [c.hom(0, 1)[0], c.identities[1]])
    v = validate_nattrans(bad)
    assert [x.law for x in v.violations] == ["component endpoints"]


CLOSURE_SAMPLE = [m for k, (_, m) in enumerate(closure_monad_corpus(4)) if k % 5 == 0]


@pytest.mark.parametrize("m", CLOSURE_SAMPLE)
def test_whiskered_and_composed_transformations_validate(m):
    T = m.T
    for side in ("left", "right"):
        w = whisker(m.eta, T, side)
        assert validate_nattrans(w).ok
    muT = whisker(m.mu, T, "right")
    assert validate_nattrans(vertical_compose(m.mu, muT)).ok
