"""JSON loaders and dumpers for every object the command line reads.

Categories::

    {"objects": [...], "morphisms": [{"name", "src", "dst"}, ...],
     "identities": {object: morphism} | [morphism per object],
     "compose": [[g, f, "g after f"], ...]}

Compositions with an identity may be omitted.  Functors, natural
transformations, monads, comonads and adjunctions refer to morphisms by name.
Algebras and modules follow ``{"p", "dim", "constants", "unit"}`` and
``{"algebra", "dim", "action"}``; bimodules add ``"right_algebra"`` and
``"right_action"``.  Wherever an algebra is expected, a path to a JSON file
holding one is accepted too.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .algmod import Bimodule, FqAlgebra, LeftModule
from .ffla import PrimeField
from .fincat import (FinAdjunction, FinCategory, FinFunctor, NatTrans, StructureError,
                     category_from_names, complete_identity_entries, compose_functors,
                     identity_functor)
from .monadics import FinComonad, FinMonad


class SerializationError(ValueError):
    """Input could not be parsed into the expected shape."""


def _need(d, key, where):
    if not isinstance(d, dict):
        raise SerializationError(f"{where}: expected an object, got {type(d).__name__}")
    if key not in d:
        raise SerializationError(f"{where}: missing key {key!r}")
    return d[key]


def load_json(path) -> object:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise SerializationError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc
    except OSError as exc:
        raise SerializationError(f"{path}: {exc.strerror}") from exc


def _plain(o):
    if isinstance(o, np.integer):
        return int(o)
    if isinstance(o, np.bool_):
        return bool(o)
    if isinstance(o, np.ndarray):
        return o.tolist()
    if isinstance(o, (set, frozenset)):
        return sorted(o)
    raise TypeError(f"cannot serialize {type(o).__name__}")


def dumps(obj) -> str:
    """Canonical text form: sorted keys, fixed separators, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, separators=(",", ": "), default=_plain) + "\n"


# ---------------------------------------------------------------------------
# categories and functors
# ---------------------------------------------------------------------------

def category_from_json(d) -> FinCategory:
    objects = [str(o) for o in _need(d, "objects", "category")]
    raw = _need(d, "morphisms", "category")
    try:
        morphisms = [(str(m["name"]), str(m["src"]), str(m["dst"])) for m in raw]
    except (TypeError, KeyError) as exc:
        raise SerializationError("category: morphisms need name, src and dst") from exc
    ids = _need(d, "identities", "category")
    if isinstance(ids, list):
        if len(ids) != len(objects):
            raise SerializationError("category: one identity per object expected")
        ids = dict(zip(objects, ids))
    ids = {str(k): str(v) for k, v in ids.items()}
    comp = d.get("compose", [])
    try:
        comp = [(str(g), str(f), str(h)) for g, f, h in comp]
    except (TypeError, ValueError) as exc:
        raise SerializationError("category: compose entries are [g, f, g_after_f]") from exc
    comp = complete_identity_entries(objects, morphisms, ids, comp)
    return category_from_names(objects, morphisms, ids, comp)


def category_to_json(c: FinCategory) -> dict:
    return {
        "objects": list(c.objects),
        "morphisms": [{"name": c.names[k], "src": c.objects[c.src[k]], "dst": c.objects[c.dst[k]]}
                      for k in range(c.n_morphisms)],
        "identities": {c.objects[a]: c.names[c.identities[a]] for a in range(c.n_objects)},
        "compose": sorted([c.names[g], c.names[f], c.names[h]] for (g, f), h in c.table.items()
                          if not (c.is_identity(g) or c.is_identity(f))),
    }


def _lookup(c: FinCategory, name, kind, where):
    try:
        return c.obj_id(str(name)) if kind == "object" else c.mor_id(str(name))
    except (KeyError, StructureError) as exc:
        raise SerializationError(f"{where}: unknown {kind} {name!r}") from exc


def functor_from_json(d, source: FinCategory | None = None,
                      target: FinCategory | None = None, name: str = "F") -> FinFunctor:
    if source is None:
        source = category_from_json(_need(d, "source", "functor"))
    if target is None:
        target = category_from_json(_need(d, "target", "functor"))
    objs = _need(d, "objects", "functor")
    mors = _need(d, "morphisms", "functor")
    obj_map = [_lookup(target, objs.get(o) if isinstance(objs, dict) else None, "object", "functor")
               for o in source.objects]
    mor_map = [_lookup(target, mors.get(m) if isinstance(mors, dict) else None, "morphism", "functor")
               for m in source.names]
    return FinFunctor(source, target, obj_map, mor_map, name=d.get("name", name))


def functor_to_json(F: FinFunctor, with_categories: bool = True) -> dict:
    out = {"objects": {F.source.objects[a]: F.target.objects[F.ob(a)]
                       for a in range(F.source.n_objects)},
           "morphisms": {F.source.names[m]: F.target.names[F(m)]
                         for m in range(F.source.n_morphisms)}}
    if with_categories:
        out["source"] = category_to_json(F.source)
        out["target"] = category_to_json(F.target)
    return out


def _components(d, F: FinFunctor, G: FinFunctor, where):
    if isinstance(d, dict) and "components" in d:
        d = d["components"]
    C = F.source
    if isinstance(d, list):
        if len(d) != C.n_objects:
            raise SerializationError(f"{where}: one component per object expected")
        names = d
    elif isinstance(d, dict):
        names = [d.get(o) for o in C.objects]
    else:
        raise SerializationError(f"{where}: components must be a list or an object")
    return [_lookup(F.target, n, "morphism", where) for n in names]


def nattrans_from_json(d, F: FinFunctor, G: FinFunctor, name: str = "alpha") -> NatTrans:
    return NatTrans(F, G, _components(d, F, G, name), name=name)


def nattrans_to_json(t: NatTrans) -> dict:
    C, D = t.source.source, t.source.target
    return {C.objects[a]: D.names[t[a]] for a in range(C.n_objects)}


def _endofunctor(d, where):
    T = _need(d, where, where)
    if "category" in d:
        cat = category_from_json(d["category"])
        return functor_from_json(T, cat, cat, name=where)
    return functor_from_json(T, name=where)


def monad_from_json(d) -> FinMonad:
    T = _endofunctor(d, "T")
    TT = compose_functors(T, T)
    I = identity_functor(T.source)
    mu = NatTrans(TT, T, _components(_need(d, "mu", "monad"), TT, T, "mu"), "mu")
    eta = NatTrans(I, T, _components(_need(d, "eta", "monad"), I, T, "eta"), "eta")
    return FinMonad(T, mu, eta)


def comonad_from_json(d) -> FinComonad:
    S = _endofunctor(d, "S") if "S" in d else _endofunctor(d, "T")
    SS = compose_functors(S, S)
    I = identity_functor(S.source)
    delta = NatTrans(S, SS, _components(_need(d, "delta", "comonad"), S, SS, "delta"), "delta")
    eps = NatTrans(S, I, _components(_need(d, "eps", "comonad"), S, I, "eps"), "eps")
    return FinComonad(S, delta, eps)


def monad_to_json(m: FinMonad) -> dict:
    return {"category": category_to_json(m.base), "T": functor_to_json(m.T, False),
            "mu": nattrans_to_json(m.mu), "eta": nattrans_to_json(m.eta)}


def comonad_to_json(s: FinComonad) -> dict:
    return {"category": category_to_json(s.base), "S": functor_to_json(s.S, False),
            "delta": nattrans_to_json(s.delta), "eps": nattrans_to_json(s.eps)}


def adjunction_from_json(d) -> FinAdjunction:
    if "A" in d and "B" in d:
        A, B = category_from_json(d["A"]), category_from_json(d["B"])
        F = functor_from_json(_need(d, "F", "adjunction"), A, B, "F")
        G = functor_from_json(_need(d, "G", "adjunction"), B, A, "G")
    else:
        F = functor_from_json(_need(d, "F", "adjunction"), name="F")
        G = functor_from_json(_need(d, "G", "adjunction"), F.target, F.source, "G")
    GF, FG = compose_functors(G, F), compose_functors(F, G)
    eta = NatTrans(identity_functor(F.source), GF,
                   _components(_need(d, "eta", "adjunction"), identity_functor(F.source), GF, "eta"),
                   "eta")
    eps = NatTrans(FG, identity_functor(F.target),
                   _components(_need(d, "eps", "adjunction"), FG, identity_functor(F.target), "eps"),
                   "eps")
    return FinAdjunction(F, G, eta, eps)


def adjunction_to_json(a: FinAdjunction) -> dict:
    return {"A": category_to_json(a.A), "B": category_to_json(a.B),
            "F": functor_to_json(a.F, False), "G": functor_to_json(a.G, False),
            "eta": nattrans_to_json(a.eta), "eps": nattrans_to_json(a.eps)}


# ---------------------------------------------------------------------------
# algebras and modules
# ---------------------------------------------------------------------------

def _resolve(ref, base_dir):
    if isinstance(ref, str):
        path = Path(ref)
        if not path.is_absolute() and base_dir is not None:
            path = Path(base_dir) / path
        return load_json(path)
    return ref


def _int_array(x, shape, where):
    try:
        a = np.array(x, dtype=np.int64)
    except (TypeError, ValueError) as exc:
        raise SerializationError(f"{where}: entries must be integers") from exc
    if a.size == 0 and int(np.prod(shape)) == 0:
        return a.reshape(shape)
    if a.shape != tuple(shape):
        raise SerializationError(f"{where}: expected shape {tuple(shape)}, got {a.shape}")
    return a


def algebra_from_json(d, base_dir=None) -> FqAlgebra:
    d = _resolve(d, base_dir)
    p = _need(d, "p", "algebra")
    try:
        field = PrimeField(int(p))
    except (TypeError, ValueError) as exc:
        raise SerializationError(f"algebra: {exc}") from exc
    dim = int(_need(d, "dim", "algebra"))
    c = _int_array(_need(d, "constants", "algebra"), (dim, dim, dim), "algebra constants")
    u = _int_array(_need(d, "unit", "algebra"), (dim,), "algebra unit")
    return FqAlgebra(field, c, u, name=str(d.get("name", "")))


def algebra_to_json(a: FqAlgebra) -> dict:
    out = {"p": a.p, "dim": a.dim, "constants": a.constants.tolist(), "unit": a.unit.tolist()}
    if a.name:
        out["name"] = a.name
    return out


def _mats(raw, count, n, where):
    if not isinstance(raw, list) or len(raw) != count:
        raise SerializationError(f"{where}: expected {count} matrices")
    return [_int_array(m, (n, n), where) for m in raw]


def module_from_json(d, algebra: FqAlgebra | None = None, base_dir=None) -> LeftModule:
    if algebra is None:
        algebra = algebra_from_json(_need(d, "algebra", "module"), base_dir)
    n = int(_need(d, "dim", "module"))
    mats = _mats(_need(d, "action", "module"), algebra.dim, n, "module action")
    return LeftModule(algebra, n, mats, name=str(d.get("name", "")))


def module_to_json(m: LeftModule, with_algebra: bool = True) -> dict:
    out = {"dim": m.dim, "action": [a.tolist() for a in m.action]}
    if with_algebra:
        out["algebra"] = algebra_to_json(m.algebra)
    return out


def bimodule_from_json(d, base_dir=None) -> Bimodule:
    R = algebra_from_json(_need(d, "algebra", "bimodule"), base_dir)
    S = algebra_from_json(_need(d, "right_algebra", "bimodule"), base_dir)
    n = int(_need(d, "dim", "bimodule"))
    left = _mats(_need(d, "action", "bimodule"), R.dim, n, "bimodule action")
    right = _mats(_need(d, "right_action", "bimodule"), S.dim, n, "bimodule right_action")
    return Bimodule(R, S, n, left, right, name=str(d.get("name", "")))


def bimodule_to_json(b: Bimodule) -> dict:
    return {"algebra": algebra_to_json(b.R), "right_algebra": algebra_to_json(b.S),
            "dim": b.dim, "action": [a.tolist() for a in b.left],
            "right_action": [a.tolist() for a in b.right]}
