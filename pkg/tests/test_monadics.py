import pytest
from hypothesis import given, strategies as st

from adjforge.corpus import closure_monad_corpus, searched_monad_corpus, small_categories
from adjforge.fincat import StructureError, chain, validate_adjunction
from adjforge.monadics import (TModule, build_coem_adjunction, build_em_adjunction,
                               closure_monad, dual_comonad, dual_monad, enumerate_comodules,
                               enumerate_modules, idempotence_battery,
                               idempotence_battery_comonad, identity_comonad, identity_monad,
                               interior_comonad, monad_from_components, validate_comonad,
                               validate_monad)

from oracles import oracle_modules, search_all_false_monad

CATS = small_categories()
CLOSURE = [m for _, m in closure_monad_corpus(4)]
SEARCHED = [m for _, m in searched_monad_corpus()]
monads = st.sampled_from(CLOSURE + SEARCHED)
cats = st.sampled_from(sorted(CATS)).map(CATS.__getitem__)


def _closure3():
    return closure_monad(chain(3), [1, 1, 2])


# -- laws -------------------------------------------------------------------

@given(cats)
def test_identity_monad_and_comonad_are_valid(c):
    assert validate_monad(identity_monad(c)).ok
    assert validate_comonad(identity_comonad(c)).ok


def test_closure_monad_on_three_chain_is_valid():
    assert validate_monad(_closure3()).ok


def test_missing_unit_component_is_a_shape_error():
    m = _closure3()
    with pytest.raises(StructureError):
        monad_from_components(m.T, list(m.mu.components), list(m.eta.components)[:2])


def test_broken_unit_law_is_reported():
    c = CATS["Z2"]
    m = identity_monad(c)
    swap = [x for x in range(c.n_morphisms) if x != c.identities[0]][0]
    bad = monad_from_components(m.T, [swap], [c.identities[0]])
    laws = {v.law for v in validate_monad(bad).violations}
    assert {"unit mu.Teta", "unit mu.etaT"} <= laws


# -- modules ----------------------------------------------------------------

@given(cats)
def test_identity_monad_modules_are_identities(c):
    mods = enumerate_modules(identity_monad(c))
    assert mods == [TModule(a, c.identities[a]) for a in range(c.n_objects)]


def test_closure_modules_sit_on_closed_elements():
    m = _closure3()
    assert sorted(x.carrier for x in enumerate_modules(m)) == [1, 2]


@given(monads)
def test_modules_match_raw_oracle_and_include_free_modules(m):
    mods = enumerate_modules(m)
    assert [(x.carrier, x.structure) for x in mods] == oracle_modules(m)
    for a in range(m.base.n_objects):
        assert TModule(m.T.ob(a), m.mu[a]) in mods


# -- Eilenberg-Moore ----------------------------------------------------------

@given(cats)
def test_identity_monad_em_is_the_base(c):
    em = build_em_adjunction(identity_monad(c))
    assert em.category.n_objects == c.n_objects
    assert em.category.n_morphisms == c.n_morphisms
    assert validate_adjunction(em.adjunction).ok


def test_closure_em_category_is_closed_subposet():
    m = _closure3()
    em = build_em_adjunction(m)
    carriers = [em.forgetful.ob(i) for i in range(em.category.n_objects)]
    assert carriers == [1, 2]
    assert em.category.n_morphisms == 3
    assert em.forgetful.ob(em.free.ob(0)) == 1


@given(monads)
def test_em_adjunction_is_sound(m):
    em = build_em_adjunction(m)
    C = m.base
    assert validate_adjunction(em.adjunction).ok
    for a in range(C.n_objects):
        assert em.forgetful.ob(em.free.ob(a)) == m.T.ob(a)
        assert em.underlying[em.counit[em.free.ob(a)]] == m.mu[a]
    for f in range(C.n_morphisms):
        assert em.forgetful(em.free(f)) == m.T(f)


# -- batteries ----------------------------------------------------------------

def test_identity_and_closure_batteries_all_true():
    for m in (identity_monad(CATS["S3"]), _closure3()):
        r = idempotence_battery(m)
        assert r.verdict and r.agree and not r.witnesses


def test_interior_comonad_battery_all_true():
    c = chain(3)
    s = interior_comonad(c, [0, 1, 1])
    assert validate_comonad(s).ok
    r = idempotence_battery_comonad(s)
    assert r.verdict and r.agree
    assert sorted(x.carrier for x in enumerate_comodules(s)) == [0, 1]
    assert idempotence_battery_comonad(identity_comonad(c)).verdict


@given(monads)
def test_battery_agreement(m):
    assert idempotence_battery(m).agree


@given(monads)
def test_op_duality_preserves_verdict_vector(m):
    r = idempotence_battery(m)
    s = dual_comonad(m)
    assert validate_comonad(s).ok
    d = idempotence_battery_comonad(s)
    assert d.agree
    assert list(d.conditions.values()) == list(r.conditions.values())
    assert list(d.parts.values()) == list(r.parts.values())
    back = dual_monad(s)
    assert back.T == m.T and back.mu == m.mu and back.eta == m.eta


@given(monads)
def test_coem_adjunction_of_dual_is_sound(m):
    assert validate_adjunction(build_coem_adjunction(dual_comonad(m)).adjunction).ok


def test_report_serializations():
    r = idempotence_battery(_closure3())
    j = r.to_json()
    assert set(j["conditions"]) == set("abcdefg")
    assert j["verdict"] is True and j["agree"] is True
    assert "verdict: True" in r.to_text()


def test_non_idempotent_monad_on_two_objects():
    """All seven conditions false for some monad on <= 2 objects and <= 8 morphisms."""
    m = search_all_false_monad(max_objects=2, max_morphisms=8)
    assert m is not None, "every searched monad is idempotent"
    r = idempotence_battery(m)
    assert not any(r.conditions.values())
    d = idempotence_battery_comonad(dual_comonad(m))
    assert not any(d.conditions.values())
