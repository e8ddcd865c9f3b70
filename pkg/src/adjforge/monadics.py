"""Monads and comonads on finite categories, their (co)module categories and
the idempotence batteries.

The batteries evaluate every condition from its own definition: nothing is
inferred from another condition, so agreement across a report is evidence,
not an assumption.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .fincat import (DEFAULT_BUDGET, BudgetExceeded, FinAdjunction, FinCategory,
                     FinFunctor, NatTrans, StructureError, Validation,
                     compose_functors, identity_functor, validate_functor,
                     validate_nattrans)

CONDITIONS = "abcdefg"


@dataclass
class FinMonad:
    T: FinFunctor
    mu: NatTrans
    eta: NatTrans

    @property
    def base(self) -> FinCategory:
        return self.T.source


@dataclass
class FinComonad:
    S: FinFunctor
    delta: NatTrans
    eps: NatTrans

    @property
    def base(self) -> FinCategory:
        return self.S.source


@dataclass(frozen=True)
class TModule:
    carrier: int
    structure: int


@dataclass(frozen=True)
class SComodule:
    carrier: int
    costructure: int


def _check_endo(F: FinFunctor, what: str):
    if F.source != F.target:
        raise StructureError(f"{what} must be an endofunctor")


def check_monad_shape(m: FinMonad):
    _check_endo(m.T, "T")
    TT = compose_functors(m.T, m.T)
    if m.mu.source != TT or m.mu.target != m.T:
        raise StructureError("mu must go TT => T")
    if m.eta.source != identity_functor(m.base) or m.eta.target != m.T:
        raise StructureError("eta must go Id => T")


def check_comonad_shape(s: FinComonad):
    _check_endo(s.S, "S")
    SS = compose_functors(s.S, s.S)
    if s.delta.source != s.S or s.delta.target != SS:
        raise StructureError("delta must go S => SS")
    if s.eps.source != s.S or s.eps.target != identity_functor(s.base):
        raise StructureError("eps must go S => Id")


def validate_monad(m: FinMonad) -> Validation:
    """Associativity and both unit laws at every object."""
    check_monad_shape(m)
    v = Validation()
    v.extend(validate_functor(m.T), "T ")
    if v.ok:
        v.extend(validate_nattrans(m.mu), "mu ")
        v.extend(validate_nattrans(m.eta), "eta ")
    if not v.ok:
        return v
    C, T, mu, eta = m.base, m.T, m.mu, m.eta
    for a in range(C.n_objects):
        ta = T.ob(a)
        if C.table[(mu[a], T(mu[a]))] != C.table[(mu[a], mu[ta])]:
            v.add("associativity", C.objects[a])
        if C.table[(mu[a], T(eta[a]))] != C.identities[ta]:
            v.add("unit mu.Teta", C.objects[a])
        if C.table[(mu[a], eta[ta])] != C.identities[ta]:
            v.add("unit mu.etaT", C.objects[a])
    return v


def validate_comonad(s: FinComonad) -> Validation:
    check_comonad_shape(s)
    v = Validation()
    v.extend(validate_functor(s.S), "S ")
    if v.ok:
        v.extend(validate_nattrans(s.delta), "delta ")
        v.extend(validate_nattrans(s.eps), "eps ")
    if not v.ok:
        return v
    C, S, d, e = s.base, s.S, s.delta, s.eps
    for a in range(C.n_objects):
        sa = S.ob(a)
        if C.table[(S(d[a]), d[a])] != C.table[(d[sa], d[a])]:
            v.add("coassociativity", C.objects[a])
        if C.table[(S(e[a]), d[a])] != C.identities[sa]:
            v.add("counit Seps.delta", C.objects[a])
        if C.table[(e[sa], d[a])] != C.identities[sa]:
            v.add("counit epsS.delta", C.objects[a])
    return v


def is_module(m: FinMonad, a: int, rho: int) -> bool:
    C, T = m.base, m.T
    if C.table[(rho, m.eta[a])] != C.identities[a]:
        return False
    return C.table[(rho, T(rho))] == C.table[(rho, m.mu[a])]


def is_comodule(s: FinComonad, a: int, rho: int) -> bool:
    C, S = s.base, s.S
    if C.table[(s.eps[a], rho)] != C.identities[a]:
        return False
    return C.table[(s.delta[a], rho)] == C.table[(S(rho), rho)]


def enumerate_modules(m: FinMonad) -> list[TModule]:
    """All ``(A, rho)`` with ``rho: T(A) -> A`` satisfying both module laws."""
    C, T = m.base, m.T
    return [TModule(a, rho) for a in range(C.n_objects)
            for rho in C.hom(T.ob(a), a) if is_module(m, a, rho)]


def enumerate_comodules(s: FinComonad) -> list[SComodule]:
    C, S = s.base, s.S
    return [SComodule(a, rho) for a in range(C.n_objects)
            for rho in C.hom(a, S.ob(a)) if is_comodule(s, a, rho)]


# ---------------------------------------------------------------------------
# Eilenberg-Moore categories
# ---------------------------------------------------------------------------

@dataclass
class EMData:
    """A materialized (co)module category with its free/forgetful adjunction.

    ``adjunction`` is ``free -| forgetful`` for a monad and
    ``forgetful -| free`` for a comonad.  ``underlying[k]`` is the base
    morphism beneath EM morphism ``k``.
    """

    category: FinCategory
    modules: list
    underlying: tuple
    forgetful: FinFunctor
    free: FinFunctor
    unit: NatTrans
    counit: NatTrans
    adjunction: FinAdjunction
    index: dict = field(default_factory=dict)


def _algebra_category(C: FinCategory, objs, is_hom, label, budget):
    mors, under = [], []
    homs = {}
    for i, mi in enumerate(objs):
        for j, mj in enumerate(objs):
            for f in C.hom(mi[0], mj[0]):
                if is_hom(mi, mj, f):
                    homs[(i, j, f)] = len(mors)
                    mors.append((f"{C.names[f]}:{i}->{j}", i, j))
                    under.append(f)
                    if len(mors) > budget:
                        raise BudgetExceeded(
                            f"{label} category exceeds morphism budget {budget}")
    ids = [homs[(i, i, C.identities[mi[0]])] for i, mi in enumerate(objs)]
    table = {}
    for (i, j, f), k in homs.items():
        for l in range(len(objs)):
            for g in C.hom(objs[j][0], objs[l][0]):
                k2 = homs.get((j, l, g))
                if k2 is not None:
                    table[(k2, k)] = homs[(i, l, C.table[(g, f)])]
    names = [f"{C.objects[a]}|{C.names[r]}" for a, r in objs]
    return FinCategory(names, mors, ids, table, budget=budget), tuple(under), homs


def build_em_adjunction(m: FinMonad, budget: int = DEFAULT_BUDGET) -> EMData:
    """Eilenberg-Moore category of ``m`` with ``free -| forgetful``."""
    C, T, mu, eta = m.base, m.T, m.mu, m.eta
    mods = enumerate_modules(m)
    objs = [(x.carrier, x.structure) for x in mods]

    def is_hom(mi, mj, f):
        return C.table[(f, mi[1])] == C.table[(mj[1], T(f))]

    EM, under, homs = _algebra_category(C, objs, is_hom, "Eilenberg-Moore", budget)
    index = {o: i for i, o in enumerate(objs)}
    U = FinFunctor(EM, C, [a for a, _ in objs], under, name="U_T")
    free_obj = []
    for a in range(C.n_objects):
        key = (T.ob(a), mu[a])
        if key not in index:
            raise StructureError(f"free module on {C.objects[a]} missing; monad invalid")
        free_obj.append(index[key])
    free_mor = [homs[(free_obj[C.src[f]], free_obj[C.dst[f]], T(f))]
                for f in range(C.n_morphisms)]
    phi = FinFunctor(C, EM, free_obj, free_mor, name="phi_T")
    unit = NatTrans(identity_functor(C), compose_functors(U, phi), list(eta.components),
                    name="eta")
    counit_c = [homs[(index[(T.ob(a), mu[a])], i, rho)] for i, (a, rho) in enumerate(objs)]
    counit = NatTrans(compose_functors(phi, U), identity_functor(EM), counit_c,
                      name="eps~")
    adj = FinAdjunction(phi, U, unit, counit)
    return EMData(EM, mods, under, U, phi, unit, counit, adj, index)


def build_coem_adjunction(s: FinComonad, budget: int = DEFAULT_BUDGET) -> EMData:
    """Comodule category of ``s`` with ``forgetful -| cofree``."""
    C, S, delta, eps = s.base, s.S, s.delta, s.eps
    comods = enumerate_comodules(s)
    objs = [(x.carrier, x.costructure) for x in comods]

    def is_hom(mi, mj, f):
        return C.table[(mj[1], f)] == C.table[(S(f), mi[1])]

    CE, under, homs = _algebra_category(C, objs, is_hom, "comodule", budget)
    index = {o: i for i, o in enumerate(objs)}
    U = FinFunctor(CE, C, [a for a, _ in objs], under, name="U^S")
    cofree_obj = []
    for a in range(C.n_objects):
        key = (S.ob(a), delta[a])
        if key not in index:
            raise StructureError(f"cofree comodule on {C.objects[a]} missing; comonad invalid")
        cofree_obj.append(index[key])
    cofree_mor = [homs[(cofree_obj[C.src[f]], cofree_obj[C.dst[f]], S(f))]
                  for f in range(C.n_morphisms)]
    phi = FinFunctor(C, CE, cofree_obj, cofree_mor, name="phi^S")
    unit_c = [homs[(i, index[(S.ob(a), delta[a])], rho)] for i, (a, rho) in enumerate(objs)]
    unit = NatTrans(identity_functor(CE), compose_functors(phi, U), unit_c, name="eta~")
    counit = NatTrans(compose_functors(U, phi), identity_functor(C), list(eps.components),
                      name="eps")
    adj = FinAdjunction(U, phi, unit, counit)
    return EMData(CE, comods, under, U, phi, unit, counit, adj, index)


def forgetful_full_faithful(em: EMData, base: FinCategory):
    """First module pair on which ``Mor_T(M, M') -> Mor(UM, UM')`` is not bijective."""
    EM = em.category
    for i in range(EM.n_objects):
        for j in range(EM.n_objects):
            images = [em.underlying[k] for k in EM.hom(i, j)]
            if len(set(images)) != len(images):
                return (i, j)
            if len(images) != len(base.hom(em.forgetful.ob(i), em.forgetful.ob(j))):
                return (i, j)
    return None


# ---------------------------------------------------------------------------
# batteries
# ---------------------------------------------------------------------------

@dataclass
class BatteryReport:
    """One boolean per condition plus the first witness of each failure."""

    kind: str
    conditions: dict
    witnesses: dict
    parts: dict = field(default_factory=dict)

    @property
    def verdict(self) -> bool:
        return all(self.conditions.values())

    @property
    def agree(self) -> bool:
        vals = list(self.conditions.values()) + list(self.parts.values())
        return len(set(vals)) <= 1

    def to_json(self) -> dict:
        return {"kind": self.kind,
                "conditions": dict(self.conditions),
                "parts": dict(self.parts),
                "witnesses": {k: list(v) if isinstance(v, tuple) else v
                              for k, v in self.witnesses.items()},
                "verdict": self.verdict,
                "agree": self.agree}

    def to_text(self) -> str:
        lines = [f"{self.kind} battery"]
        for k, v in self.conditions.items():
            w = self.witnesses.get(k)
            lines.append((f"  ({k}) {str(v).lower():<5}" + (f"  witness: {w}" if w else "")).rstrip())
        for k, v in self.parts.items():
            lines.append(f"      {k}: {v}")
        lines.append(f"  verdict: {self.verdict}   conditions agree: {self.agree}")
        return "\n".join(lines)


def _first(items, pred):
    for x in items:
        if not pred(x):
            return x
    return None


def idempotence_battery(m: FinMonad, budget: int = DEFAULT_BUDGET) -> BatteryReport:
    C, T, mu, eta = m.base, m.T, m.mu, m.eta
    em = build_em_adjunction(m, budget)
    EM = em.category
    objs = range(C.n_objects)
    names = C.objects
    W = {}

    ff = forgetful_full_faithful(em, C)
    W["a"] = None if ff is None else (EM.objects[ff[0]], EM.objects[ff[1]])
    bad = _first(range(EM.n_objects), lambda i: EM.is_iso(em.counit[i]))
    W["b"] = None if bad is None else (EM.objects[bad],)
    bad = _first(objs, lambda a: C.is_iso(mu[a]))
    W["c"] = None if bad is None else (names[bad],)
    bad = _first(em.modules, lambda x: C.is_iso(x.structure))
    W["d"] = None if bad is None else (names[bad.carrier], C.names[bad.structure])
    bad_te = _first(objs, lambda a: C.is_iso(T(eta[a])))
    bad_et = _first(objs, lambda a: C.is_iso(eta[T.ob(a)]))
    bad = bad_te if bad_te is not None else bad_et
    W["e"] = None if bad is None else (names[bad],)
    bad = _first(objs, lambda a: T(eta[a]) == eta[T.ob(a)])
    W["f"] = None if bad is None else (names[bad],)
    bad = _first(objs, lambda a: T(mu[a]) == mu[T.ob(a)])
    W["g"] = None if bad is None else (names[bad],)

    conds = {k: W[k] is None for k in CONDITIONS}
    parts = {"e:T_eta_iso": bad_te is None, "e:eta_T_iso": bad_et is None}
    return BatteryReport("monad", conds, {k: v for k, v in W.items() if v is not None}, parts)


def idempotence_battery_comonad(s: FinComonad, budget: int = DEFAULT_BUDGET) -> BatteryReport:
    C, S, delta, eps = s.base, s.S, s.delta, s.eps
    ce = build_coem_adjunction(s, budget)
    CE = ce.category
    objs = range(C.n_objects)
    names = C.objects
    W = {}

    ff = forgetful_full_faithful(ce, C)
    W["a"] = None if ff is None else (CE.objects[ff[0]], CE.objects[ff[1]])
    bad = _first(range(CE.n_objects), lambda i: CE.is_iso(ce.unit[i]))
    W["b"] = None if bad is None else (CE.objects[bad],)
    bad = _first(objs, lambda a: C.is_iso(delta[a]))
    W["c"] = None if bad is None else (names[bad],)
    bad = _first(ce.modules, lambda x: C.is_iso(x.costructure))
    W["d"] = None if bad is None else (names[bad.carrier], C.names[bad.costructure])
    bad_se = _first(objs, lambda a: C.is_iso(S(eps[a])))
    bad_es = _first(objs, lambda a: C.is_iso(eps[S.ob(a)]))
    bad = bad_se if bad_se is not None else bad_es
    W["e"] = None if bad is None else (names[bad],)
    bad = _first(objs, lambda a: S(eps[a]) == eps[S.ob(a)])
    W["f"] = None if bad is None else (names[bad],)
    bad = _first(objs, lambda a: S(delta[a]) == delta[S.ob(a)])
    W["g"] = None if bad is None else (names[bad],)

    conds = {k: W[k] is None for k in CONDITIONS}
    parts = {"e:S_eps_iso": bad_se is None, "e:eps_S_iso": bad_es is None}
    return BatteryReport("comonad", conds, {k: v for k, v in W.items() if v is not None}, parts)


# ---------------------------------------------------------------------------
# duality and small constructors
# ---------------------------------------------------------------------------

def dual_comonad(m: FinMonad) -> FinComonad:
    """The comonad ``(T^op, mu^op, eta^op)`` on the opposite category."""
    return FinComonad(m.T.op(), m.mu.op(), m.eta.op())


def dual_monad(s: FinComonad) -> FinMonad:
    return FinMonad(s.S.op(), s.delta.op(), s.eps.op())


def identity_monad(c: FinCategory) -> FinMonad:
    I = identity_functor(c)
    ids = [c.identities[a] for a in range(c.n_objects)]
    return FinMonad(I, NatTrans(compose_functors(I, I), I, ids, name="mu"),
                    NatTrans(I, I, ids, name="eta"))


def identity_comonad(c: FinCategory) -> FinComonad:
    I = identity_functor(c)
    ids = [c.identities[a] for a in range(c.n_objects)]
    return FinComonad(I, NatTrans(I, compose_functors(I, I), ids, name="delta"),
                      NatTrans(I, I, ids, name="eps"))


def monad_from_components(T: FinFunctor, mu, eta) -> FinMonad:
    """Wrap raw component lists; shape errors surface as StructureError."""
    return FinMonad(T, NatTrans(compose_functors(T, T), T, mu, name="mu"),
                    NatTrans(identity_functor(T.source), T, eta, name="eta"))


def comonad_from_components(S: FinFunctor, delta, eps) -> FinComonad:
    return FinComonad(S, NatTrans(S, compose_functors(S, S), delta, name="delta"),
                      NatTrans(S, identity_functor(S.source), eps, name="eps"))


def closure_monad(poset_cat: FinCategory, closure) -> FinMonad:
    """Monad of a closure operator on a preorder category.

    ``closure[i]`` is the object id of the closure of object ``i``.
    """
    from .fincat import poset_functor
    C = poset_cat
    T = poset_functor(C, C, closure, name="T")
    mu = [C.hom(T.ob(T.ob(a)), T.ob(a)) for a in range(C.n_objects)]
    eta = [C.hom(a, T.ob(a)) for a in range(C.n_objects)]
    if any(not h for h in mu) or any(not h for h in eta):
        raise StructureError("closure map is not inflationary and idempotent")
    return monad_from_components(T, [h[0] for h in mu], [h[0] for h in eta])


def interior_comonad(poset_cat: FinCategory, interior) -> FinComonad:
    from .fincat import poset_functor
    C = poset_cat
    S = poset_functor(C, C, interior, name="S")
    delta = [C.hom(S.ob(a), S.ob(S.ob(a))) for a in range(C.n_objects)]
    eps = [C.hom(S.ob(a), a) for a in range(C.n_objects)]
    if any(not h for h in delta) or any(not h for h in eps):
        raise StructureError("interior map is not deflationary and idempotent")
    return comonad_from_components(S, [h[0] for h in delta], [h[0] for h in eps])
