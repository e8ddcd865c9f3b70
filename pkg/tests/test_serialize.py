import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from adjforge import serialize
from adjforge.algmod import dual_numbers, enumerate_modules, regular_bimodule, upper_triangular
from adjforge.corpus import galois_corpus, searched_monad_corpus, small_categories
from adjforge.monadics import dual_comonad
from adjforge.serialize import SerializationError

CATS = small_categories()
MONADS = [m for _, m in searched_monad_corpus()]


def _roundtrip(obj):
    return json.loads(serialize.dumps(obj))


@pytest.mark.parametrize("name", sorted(CATS))
def test_category_round_trip(name):
    c = CATS[name]
    back = serialize.category_from_json(_roundtrip(serialize.category_to_json(c)))
    assert back.n_objects == c.n_objects and back.n_morphisms == c.n_morphisms
    assert np.array_equal(back.table, c.table)
    assert back.identities == c.identities


@given(st.sampled_from(MONADS))
def test_monad_and_comonad_round_trip(m):
    back = serialize.monad_from_json(_roundtrip(serialize.monad_to_json(m)))
    assert back.T == m.T and back.mu == m.mu and back.eta == m.eta
    s = dual_comonad(m)
    sback = serialize.comonad_from_json(_roundtrip(serialize.comonad_to_json(s)))
    assert sback.S == s.S and sback.delta == s.delta and sback.eps == s.eps


@given(st.sampled_from([a for _, a in galois_corpus(3)]))
def test_adjunction_round_trip(a):
    back = serialize.adjunction_from_json(_roundtrip(serialize.adjunction_to_json(a)))
    assert back.F == a.F and back.G == a.G
    assert back.eta == a.eta and back.eps == a.eps


@pytest.mark.parametrize("R", [dual_numbers(2), upper_triangular(2)], ids=["D", "T2"])
def test_algebra_and_module_round_trip(R):
    back = serialize.algebra_from_json(_roundtrip(serialize.algebra_to_json(R)))
    assert back.p == R.p and np.array_equal(back.constants, R.constants)
    assert np.array_equal(back.unit, R.unit)
    for M in enumerate_modules(R, 2).modules:
        mb = serialize.module_from_json(_roundtrip(serialize.module_to_json(M)))
        assert mb.dim == M.dim and np.array_equal(mb.action, M.action)


def test_bimodule_round_trip():
    P = regular_bimodule(upper_triangular(2))
    back = serialize.bimodule_from_json(_roundtrip(serialize.bimodule_to_json(P)))
    assert np.array_equal(back.S.constants, P.S.constants)
    assert all(np.array_equal(x, y) for x, y in zip(back.right, P.right))
    assert np.array_equal(back.left, P.left)


def test_dumps_is_canonical():
    a = serialize.dumps({"b": np.int64(1), "a": np.array([[1, 0]]), "c": {3, 1}})
    assert a == '{\n  "a": [\n    [\n      1,\n      0\n    ]\n  ],\n  "b": 1,\n  "c": [\n    1,\n    3\n  ]\n}\n'
    with pytest.raises(TypeError):
        serialize.dumps({"x": object()})


def test_loader_errors(tmp_path, fixtures_dir):
    with pytest.raises(SerializationError, match="invalid JSON"):
        serialize.load_json(fixtures_dir / "truncated.json")
    with pytest.raises(SerializationError):
        serialize.load_json(tmp_path / "absent.json")
    with pytest.raises(SerializationError, match="missing key"):
        serialize.category_from_json({"objects": ["a"]})
    with pytest.raises(SerializationError):
        serialize.algebra_from_json([1, 2])


def test_algebra_references_resolve_relative_to_file(fixtures_dir):
    d = serialize.load_json(fixtures_dir / "simple_module.json")
    M = serialize.module_from_json(d, base_dir=fixtures_dir)
    assert M.algebra.dim == 2 and M.dim == 1
