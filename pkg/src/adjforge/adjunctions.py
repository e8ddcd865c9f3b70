"""Adjoint pairs between finite categories.

Covers the induced monad and comonad, comparison and related functors, the
eight-condition idempotent-pair battery, Fix subcategories, the equivalence
check and star pairs with their closure properties.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .fincat import (DEFAULT_BUDGET, FinAdjunction, FinCategory, FinFunctor, NatTrans,
                     StructureError, compose_functors, identity_functor,
                     opposite_adjunction, validate_adjunction)
from .monadics import (BatteryReport, EMData, FinComonad, FinMonad,
                       build_coem_adjunction, build_em_adjunction,
                       forgetful_full_faithful)

__all__ = [
    "FinAdjunction", "validate_adjunction", "opposite_adjunction", "hom_bijection",
    "induced_monad", "induced_comonad", "comparison_functors", "related_functors",
    "unit_module_morphism_analysis", "idempotent_pair_battery", "fix",
    "verify_equivalence", "star_pair_check", "identity_adjunction",
    "pair_context", "PairContext", "adjunction_from_components",
]

PAIR_CONDITIONS = "abcdefgh"


def identity_adjunction(c: FinCategory) -> FinAdjunction:
    I = identity_functor(c)
    ids = [c.identities[a] for a in range(c.n_objects)]
    return FinAdjunction(I, I, NatTrans(I, compose_functors(I, I), ids, name="eta"),
                         NatTrans(compose_functors(I, I), I, ids, name="eps"))


def adjunction_from_components(F: FinFunctor, G: FinFunctor, eta, eps) -> FinAdjunction:
    A, B = F.source, F.target
    return FinAdjunction(F, G,
                         NatTrans(identity_functor(A), compose_functors(G, F), eta, name="eta"),
                         NatTrans(compose_functors(F, G), identity_functor(B), eps, name="eps"))


@dataclass
class HomBijection:
    forward: dict
    backward: dict

    @property
    def mutually_inverse(self) -> bool:
        return (all(self.backward[g] == f for f, g in self.forward.items())
                and all(self.forward[f] == g for g, f in self.backward.items()))


def hom_bijection(a: FinAdjunction, x: int, y: int) -> HomBijection:
    """``Mor_B(F x, y) <-> Mor_A(x, G y)`` via ``f -> G(f) eta_x`` and ``g -> eps_y F(g)``."""
    A, B, F, G = a.A, a.B, a.F, a.G
    fwd = {f: A.table[(G(f), a.eta[x])] for f in B.hom(F.ob(x), y)}
    bwd = {g: B.table[(a.eps[y], F(g))] for g in A.hom(x, G.ob(y))}
    return HomBijection(fwd, bwd)


def induced_monad(a: FinAdjunction) -> FinMonad:
    """``(GF, G eps F, eta)`` on A."""
    F, G = a.F, a.G
    GF = compose_functors(G, F)
    mu = [G(a.eps[F.ob(x)]) for x in range(a.A.n_objects)]
    return FinMonad(GF, NatTrans(compose_functors(GF, GF), GF, mu, name="GepsF"),
                    NatTrans(identity_functor(a.A), GF, a.eta.components, name="eta"))


def induced_comonad(a: FinAdjunction) -> FinComonad:
    """``(FG, F eta G, eps)`` on B."""
    F, G = a.F, a.G
    FG = compose_functors(F, G)
    delta = [F(a.eta[G.ob(y)]) for y in range(a.B.n_objects)]
    return FinComonad(FG, NatTrans(FG, compose_functors(FG, FG), delta, name="FetaG"),
                      NatTrans(FG, identity_functor(a.B), a.eps.components, name="eps"))


@dataclass
class PairContext:
    """Everything the pair-level checks share, built once."""

    adjunction: FinAdjunction
    monad: FinMonad
    comonad: FinComonad
    em: EMData
    coem: EMData


def pair_context(a: FinAdjunction, budget: int = DEFAULT_BUDGET) -> PairContext:
    T = induced_monad(a)
    S = induced_comonad(a)
    return PairContext(a, T, S, build_em_adjunction(T, budget), build_coem_adjunction(S, budget))


def _em_hom(em: EMData, i: int, j: int, f: int) -> int:
    for k in em.category.hom(i, j):
        if em.underlying[k] == f:
            return k
    raise StructureError("morphism is not a (co)module morphism")


def comparison_functors(a: FinAdjunction, ctx: PairContext | None = None):
    """``G_bar: B -> A_GF`` and ``F_bar: A -> B^FG``."""
    ctx = ctx or pair_context(a)
    A, B, F, G = a.A, a.B, a.F, a.G
    em, ce = ctx.em, ctx.coem
    g_obj = []
    for y in range(B.n_objects):
        key = (G.ob(y), G(a.eps[y]))
        if key not in em.index:
            raise StructureError(f"(G{B.objects[y]}, G eps) is not a GF-module")
        g_obj.append(em.index[key])
    g_mor = [_em_hom(em, g_obj[B.src[m]], g_obj[B.dst[m]], G(m)) for m in range(B.n_morphisms)]
    Gbar = FinFunctor(B, em.category, g_obj, g_mor, name="Gbar")
    f_obj = []
    for x in range(A.n_objects):
        key = (F.ob(x), F(a.eta[x]))
        if key not in ce.index:
            raise StructureError(f"(F{A.objects[x]}, F eta) is not an FG-comodule")
        f_obj.append(ce.index[key])
    f_mor = [_em_hom(ce, f_obj[A.src[m]], f_obj[A.dst[m]], F(m)) for m in range(A.n_morphisms)]
    Fbar = FinFunctor(A, ce.category, f_obj, f_mor, name="Fbar")
    return Gbar, Fbar


@dataclass
class RelatedFunctors:
    Ftilde: FinFunctor
    Gtilde: FinFunctor
    Gbar: FinFunctor
    Fbar: FinFunctor
    faces: dict

    @property
    def commutes(self) -> bool:
        return all(self.faces.values())


def related_functors(a: FinAdjunction, ctx: PairContext | None = None) -> RelatedFunctors:
    """``F~ = F_bar U_GF`` and ``G~ = G_bar U^FG`` with the commuting faces checked."""
    ctx = ctx or pair_context(a)
    Gbar, Fbar = comparison_functors(a, ctx)
    U_gf, U_fg = ctx.em.forgetful, ctx.coem.forgetful
    Ft = compose_functors(Fbar, U_gf)
    Gt = compose_functors(Gbar, U_fg)
    faces = {
        "U_GF Gbar = G": compose_functors(U_gf, Gbar) == a.G,
        "U^FG Fbar = F": compose_functors(U_fg, Fbar) == a.F,
        "U^FG F~ = F U_GF": compose_functors(U_fg, Ft) == compose_functors(a.F, U_gf),
        "U_GF G~ = G U^FG": compose_functors(U_gf, Gt) == compose_functors(a.G, U_fg),
    }
    return RelatedFunctors(Ft, Gt, Gbar, Fbar, faces)


def related_adjoint(a: FinAdjunction, ctx: PairContext | None = None):
    """Whether ``(F~, G~)`` is adjoint by the restricted hom bijection.

    Returns ``(flag, witness)``.  The criterion only says yes when every
    ``eta_A`` on a GF-module is a GF-module morphism and the restricted map
    is bijective; otherwise the pair is reported "not adjoint by this
    criterion" without searching for other adjunctions.
    """
    ctx = ctx or pair_context(a)
    rf = related_functors(a, ctx)
    A, em, ce = a.A, ctx.em, ctx.coem
    T = ctx.monad
    for i, mod in enumerate(em.modules):
        x = mod.carrier
        if A.table[(a.eta[x], mod.structure)] != A.table[(T.mu[x], T.T(a.eta[x]))]:
            return False, ("eta not a module morphism", A.objects[x])
        for j in range(ce.category.n_objects):
            src = ce.category.hom(rf.Ftilde.ob(i), j)
            dst = em.category.hom(i, rf.Gtilde.ob(j))
            images = set()
            for k in src:
                f = ce.underlying[k]
                g = A.table[(a.G(f), a.eta[x])]
                if not any(em.underlying[h] == g for h in dst):
                    return False, ("image not a module morphism", em.category.objects[i])
                images.add(g)
            if len(images) != len(src) or len(images) != len(dst):
                return False, ("not bijective", em.category.objects[i], ce.category.objects[j])
    return True, None


@dataclass
class ModuleUnitRow:
    module: str
    module_morphism: bool
    epi: bool
    iso: bool
    structure_iso: bool

    @property
    def agree(self) -> bool:
        return len({self.module_morphism, self.epi, self.iso, self.structure_iso}) == 1


def unit_module_morphism_analysis(a: FinAdjunction, ctx: PairContext | None = None):
    """Per-(co)module rows for the unit/counit (co)module-morphism equivalences."""
    ctx = ctx or pair_context(a)
    A, B = a.A, a.B
    T, S = ctx.monad, ctx.comonad
    rows_m = []
    for mod in ctx.em.modules:
        x, rho = mod.carrier, mod.structure
        e = a.eta[x]
        # eta_x: (x, rho) -> (GFx, GepsF_x) is a module morphism
        is_mm = A.table[(e, rho)] == A.table[(T.mu[x], T.T(e))]
        rows_m.append(ModuleUnitRow(f"{A.objects[x]}|{A.names[rho]}", is_mm,
                                    A.is_epi(e), A.is_iso(e), A.is_iso(rho)))
    rows_c = []
    for com in ctx.coem.modules:
        y, rho = com.carrier, com.costructure
        e = a.eps[y]
        # eps_y: (FGy, FetaG_y) -> (y, rho) is a comodule morphism
        is_cm = B.table[(rho, e)] == B.table[(S.S(e), S.delta[y])]
        rows_c.append(ModuleUnitRow(f"{B.objects[y]}|{B.names[rho]}", is_cm,
                                    B.is_mono(e), B.is_iso(e), B.is_iso(rho)))
    return {"modules": rows_m, "comodules": rows_c}


# ---------------------------------------------------------------------------
# batteries and Fix
# ---------------------------------------------------------------------------

@dataclass
class PairBatteryReport(BatteryReport):
    star: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = super().to_json()
        out["star"] = dict(self.star)
        return out

    def to_text(self) -> str:
        lines = [super().to_text()]
        for k, v in self.star.items():
            lines.append(f"  {k}: {v}")
        return "\n".join(lines)


def _first(items, pred):
    for x in items:
        if not pred(x):
            return x
    return None


def idempotent_pair_battery(a: FinAdjunction, budget: int = DEFAULT_BUDGET,
                            ctx: PairContext | None = None) -> PairBatteryReport:
    ctx = ctx or pair_context(a, budget)
    A, B, F, G = a.A, a.B, a.F, a.G
    em, ce = ctx.em, ctx.coem
    W = {}
    ff = forgetful_full_faithful(em, A)
    W["a"] = None if ff is None else (em.category.objects[ff[0]], em.category.objects[ff[1]])
    bad = _first(range(em.category.n_objects), lambda i: em.category.is_iso(em.counit[i]))
    W["b"] = None if bad is None else (em.category.objects[bad],)
    bad = _first(range(A.n_objects), lambda x: A.is_iso(G(a.eps[F.ob(x)])))
    W["c"] = None if bad is None else (A.objects[bad],)
    bad = _first(range(A.n_objects), lambda x: B.is_iso(a.eps[F.ob(x)]))
    W["d"] = None if bad is None else (A.objects[bad],)
    ff = forgetful_full_faithful(ce, B)
    W["e"] = None if ff is None else (ce.category.objects[ff[0]], ce.category.objects[ff[1]])
    bad = _first(range(ce.category.n_objects), lambda i: ce.category.is_iso(ce.unit[i]))
    W["f"] = None if bad is None else (ce.category.objects[bad],)
    bad = _first(range(B.n_objects), lambda y: B.is_iso(F(a.eta[G.ob(y)])))
    W["g"] = None if bad is None else (B.objects[bad],)
    bad = _first(range(B.n_objects), lambda y: A.is_iso(a.eta[G.ob(y)]))
    W["h"] = None if bad is None else (B.objects[bad],)
    conds = {k: W[k] is None for k in PAIR_CONDITIONS}
    unit_x = _first(range(A.n_objects), lambda x: A.is_extremal_epi(a.eta[x]))
    counit_x = _first(range(B.n_objects), lambda y: B.is_extremal_mono(a.eps[y]))
    star = {"unit_extremal_epi": unit_x is None, "counit_extremal_mono": counit_x is None}
    if unit_x is not None:
        W["unit_extremal_epi"] = (A.objects[unit_x],)
    if counit_x is not None:
        W["counit_extremal_mono"] = (B.objects[counit_x],)
    return PairBatteryReport("pair", conds, {k: v for k, v in W.items() if v is not None},
                             star=star)


@dataclass
class FixSubcategory:
    parent: FinCategory
    side: str
    members: tuple
    image_closure: tuple

    @property
    def coincide(self) -> bool:
        return set(self.members) == set(self.image_closure)

    @property
    def names(self):
        return [self.parent.objects[i] for i in self.members]


def _iso_closure(c: FinCategory, objs) -> tuple:
    objs = set(objs)
    return tuple(x for x in range(c.n_objects)
                 if any(x == o or c.iso_witness(x, o) is not None for o in objs))


def fix(a: FinAdjunction, side: str) -> FixSubcategory:
    """``Fix(GF, eta)`` (side "GF") or ``Fix(FG, eps)`` (side "FG")."""
    A, B, F, G = a.A, a.B, a.F, a.G
    if side == "GF":
        members = tuple(x for x in range(A.n_objects) if A.is_iso(a.eta[x]))
        image = _iso_closure(A, {G.ob(F.ob(x)) for x in range(A.n_objects)})
        return FixSubcategory(A, side, members, image)
    if side == "FG":
        members = tuple(y for y in range(B.n_objects) if B.is_iso(a.eps[y]))
        image = _iso_closure(B, {F.ob(G.ob(y)) for y in range(B.n_objects)})
        return FixSubcategory(B, side, members, image)
    raise ValueError(f"side must be 'GF' or 'FG', not {side!r}")


@dataclass
class EquivalenceReport:
    ran: bool
    checks: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)
    reason: str = ""

    @property
    def ok(self) -> bool:
        return self.ran and all(self.checks.values())


def verify_equivalence(a: FinAdjunction, budget: int = DEFAULT_BUDGET,
                       ctx: PairContext | None = None) -> EquivalenceReport:
    """Reflectivity, coreflectivity and the restricted equivalence ``F -| G``.

    Refuses (``ran=False``) unless the pair battery verdict is true.
    """
    ctx = ctx or pair_context(a, budget)
    battery = idempotent_pair_battery(a, budget, ctx)
    if not battery.verdict:
        return EquivalenceReport(False, reason="pair is not idempotent")
    A, B, F, G = a.A, a.B, a.F, a.G
    fa, fb = fix(a, "GF"), fix(a, "FG")
    W = {}
    checks = {"Fix(GF) = GF(A)": fa.coincide, "Fix(FG) = FG(B)": fb.coincide}

    # reflective: GF(x) fixed and h -> h o eta_x bijective into fixed objects
    bad = None
    for x in range(A.n_objects):
        gfx = G.ob(F.ob(x))
        if gfx not in fa.members:
            bad = (A.objects[x], "GF(x) not fixed")
            break
        for z in fa.members:
            img = [A.table[(h, a.eta[x])] for h in A.hom(gfx, z)]
            if len(set(img)) != len(img) or len(img) != len(A.hom(x, z)):
                bad = (A.objects[x], A.objects[z])
                break
        if bad:
            break
    checks["reflective"] = bad is None
    if bad:
        W["reflective"] = bad

    bad = None
    for y in range(B.n_objects):
        fgy = F.ob(G.ob(y))
        if fgy not in fb.members:
            bad = (B.objects[y], "FG(y) not fixed")
            break
        for z in fb.members:
            img = [B.table[(a.eps[y], h)] for h in B.hom(z, fgy)]
            if len(set(img)) != len(img) or len(img) != len(B.hom(z, y)):
                bad = (B.objects[y], B.objects[z])
                break
        if bad:
            break
    checks["coreflective"] = bad is None
    if bad:
        W["coreflective"] = bad

    # restricted F, G: land in the other Fix, fully faithful, unit/counit isos
    bad = None
    for x in fa.members:
        if F.ob(x) not in fb.members:
            bad = (A.objects[x], "F(x) not fixed")
            break
        for x2 in fa.members:
            img = [F(m) for m in A.hom(x, x2)]
            if len(set(img)) != len(img) or len(img) != len(B.hom(F.ob(x), F.ob(x2))):
                bad = (A.objects[x], A.objects[x2])
                break
        if bad:
            break
    checks["F restricted fully faithful"] = bad is None
    if bad:
        W["F restricted fully faithful"] = bad
    bad = None
    for y in fb.members:
        if G.ob(y) not in fa.members:
            bad = (B.objects[y], "G(y) not fixed")
            break
        for y2 in fb.members:
            img = [G(m) for m in B.hom(y, y2)]
            if len(set(img)) != len(img) or len(img) != len(A.hom(G.ob(y), G.ob(y2))):
                bad = (B.objects[y], B.objects[y2])
                break
        if bad:
            break
    checks["G restricted fully faithful"] = bad is None
    if bad:
        W["G restricted fully faithful"] = bad

    # G~F~ ~ Id on A_GF via eta, F~G~ ~ Id on B^FG via eps, hom-set by hom-set
    rf = related_functors(a, ctx)
    em, ce = ctx.em, ctx.coem
    ok = True
    for i, mod in enumerate(em.modules):
        j = rf.Gtilde.ob(rf.Ftilde.ob(i))
        try:
            k = _em_hom(em, i, j, a.eta[mod.carrier])
        except StructureError:
            ok = False
            W["G~F~ = Id"] = (em.category.objects[i],)
            break
        if not em.category.is_iso(k):
            ok = False
            W["G~F~ = Id"] = (em.category.objects[i],)
            break
    checks["G~F~ = Id"] = ok
    ok = True
    for i, com in enumerate(ce.modules):
        j = rf.Ftilde.ob(rf.Gtilde.ob(i))
        try:
            k = _em_hom(ce, j, i, a.eps[com.carrier])
        except StructureError:
            ok = False
            W["F~G~ = Id"] = (ce.category.objects[i],)
            break
        if not ce.category.is_iso(k):
            ok = False
            W["F~G~ = Id"] = (ce.category.objects[i],)
            break
    checks["F~G~ = Id"] = ok
    return EquivalenceReport(True, checks, W)


@dataclass
class StarReport:
    star: bool
    witnesses: dict = field(default_factory=dict)
    closure: dict = field(default_factory=dict)

    @property
    def closure_ok(self) -> bool:
        return all(self.closure.values())


def star_pair_check(a: FinAdjunction) -> StarReport:
    """Extremal-epi unit and extremal-mono counit, plus the closure theorems."""
    A, B, F, G = a.A, a.B, a.F, a.G
    W = {}
    ux = _first(range(A.n_objects), lambda x: A.is_extremal_epi(a.eta[x]))
    cx = _first(range(B.n_objects), lambda y: B.is_extremal_mono(a.eps[y]))
    if ux is not None:
        W["unit"] = A.objects[ux]
    if cx is not None:
        W["counit"] = B.objects[cx]
    star = ux is None and cx is None
    rep = StarReport(star, W)
    if not star:
        return rep
    fa, fb = set(fix(a, "GF").members), set(fix(a, "FG").members)
    sub_bad = [A.names[m] for m in range(A.n_morphisms)
               if A.dst[m] in fa and A.is_mono(m) and A.src[m] not in fa]
    fac_bad = [B.names[e] for e in range(B.n_morphisms)
               if B.src[e] in fb and B.is_epi(e) and B.dst[e] not in fb]
    gf_epi = [A.names[m] for m in range(A.n_morphisms)
              if A.is_epi(m) and not A.is_epi(G(F(m)))]
    fg_mono = [B.names[m] for m in range(B.n_morphisms)
               if B.is_mono(m) and not B.is_mono(F(G(m)))]
    rep.closure = {"Fix(GF) closed under subobjects": not sub_bad,
                   "Fix(FG) closed under factor objects": not fac_bad,
                   "GF preserves epis": not gf_epi,
                   "FG preserves monos": not fg_mono}
    for k, bad in zip(rep.closure, (sub_bad, fac_bad, gf_epi, fg_mono)):
        if bad:
            W[k] = bad[0]
    return rep
