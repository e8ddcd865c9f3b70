"""The tensor/Hom adjunction of a bimodule, checked on finite module windows.

For an ``(R, S)``-bimodule ``P`` the functors are ``T(X) = P (x)_S X`` from
left ``S``-modules to left ``R``-modules and ``H(N) = Hom_R(P, N)`` back.  A
window is a finite list of modules (every module up to a dimension bound,
plus a few canonical ones); all verdicts here are claims about windows.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .algmod import (Bimodule, BudgetError, FqAlgebra, HomModule, LeftModule, ModuleMap,
                     ModuleWindow, TensorProduct, all_submodules, are_isomorphic, direct_sum_maps,
                     dual_module, endomorphism_algebra, enumerate_modules, hom_as_left_S_module,
                     hom_basis, kernel, power, quotient, regular_module, restrict_action,
                     tensor_over,
                     validate_bimodule, validate_map, zero_module)
from .ffla import DTYPE
from .fincat import (FinAdjunction, FinCategory, FinFunctor, NatTrans, StructureError,
                     category_from_names, compose_functors, identity_functor)
from .monadics import BatteryReport
from . import serialize

STATUSES = ("star-on-window", "refuted", "undecided")


@dataclass(eq=False)
class StarContext:
    R: FqAlgebra
    P: Bimodule
    Q: LeftModule
    pstar: HomModule
    r_window: ModuleWindow
    s_window: ModuleWindow
    r_modules: list
    s_modules: list
    max_dim: int
    s_auto: bool
    notes: list = field(default_factory=list)
    _tensor: dict = field(default_factory=dict, repr=False)
    _hom: dict = field(default_factory=dict, repr=False)

    @property
    def S(self) -> FqAlgebra:
        return self.P.S

    @property
    def complete(self) -> bool:
        return self.r_window.complete and self.s_window.complete


def _with_extras(window: ModuleWindow, extras) -> list:
    mods = list(window.modules)
    for M in extras:
        if not any(N.dim == M.dim and are_isomorphic(N, M).status == "isomorphic" for N in mods):
            mods.append(M)
    return mods


def build_context(R: FqAlgebra, P, max_dim: int, budget: int | None = None) -> StarContext:
    """Context for a bimodule, or for a left ``R``-module with ``S = End_R(P)``."""
    notes = []
    if isinstance(P, LeftModule):
        _, P = endomorphism_algebra(P)
        s_auto = True
    else:
        s_auto = False
        v = validate_bimodule(P)
        if not v.ok:
            raise StructureError(f"invalid bimodule: {v.violations[0]}")
    if P.R != R:
        raise StructureError("bimodule is over a different left algebra")
    Q = dual_module(R)
    notes.append("injective cogenerator fixed as the linear dual of the right regular module")
    pstar = hom_as_left_S_module(P, Q)
    kw = {} if budget is None else {"budget": budget}
    md = max(int(max_dim), 0)
    rw = enumerate_modules(R, md, **kw)
    sw = enumerate_modules(P.S, md, **kw)
    rmods = _with_extras(rw, [zero_module(R), P.left_module])
    smods = _with_extras(sw, [zero_module(P.S), regular_module(P.S), pstar.module])
    return StarContext(R, P, Q, pstar, rw, sw, rmods, smods, int(max_dim), s_auto, notes)


def bare_context(P: Bimodule) -> StarContext:
    """Context without windows, enough to recompute unit and counit maps."""
    R = P.R
    Q = dual_module(R)
    empty_r = ModuleWindow(R, -1, [])
    empty_s = ModuleWindow(P.S, -1, [])
    return StarContext(R, P, Q, hom_as_left_S_module(P, Q), empty_r, empty_s, [], [], -1, False)


# ---------------------------------------------------------------------------
# functors and the unit / counit
# ---------------------------------------------------------------------------

def tensor(ctx: StarContext, X: LeftModule) -> TensorProduct:
    key = X.key()
    if key not in ctx._tensor:
        ctx._tensor[key] = tensor_over(ctx.P, X)
    return ctx._tensor[key]


def hom(ctx: StarContext, N: LeftModule) -> HomModule:
    key = N.key()
    if key not in ctx._hom:
        ctx._hom[key] = hom_as_left_S_module(ctx.P, N)
    return ctx._hom[key]


def _coords(F, basis, target) -> np.ndarray:
    c = F.coordinates(basis, target)
    if c is None:
        raise StructureError("matrix is not in the span of the Hom basis")
    return c


def T_map(ctx: StarContext, g: ModuleMap) -> ModuleMap:
    F = ctx.P.field
    tx, ty = tensor(ctx, g.source), tensor(ctx, g.target)
    n = ctx.P.dim
    if tx.module.dim == 0 or ty.module.dim == 0:
        return ModuleMap(tx.module, ty.module, np.zeros((ty.module.dim, tx.module.dim), dtype=DTYPE))
    big = F.kron(np.eye(n, dtype=DTYPE), g.matrix)
    return ModuleMap(tx.module, ty.module, F.mul(ty.proj, big, tx.sect))


def H_map(ctx: StarContext, g: ModuleMap) -> ModuleMap:
    F = ctx.P.field
    hs, ht = hom(ctx, g.source), hom(ctx, g.target)
    m = np.zeros((len(ht.basis), len(hs.basis)), dtype=DTYPE)
    for k, Hk in enumerate(hs.basis):
        m[:, k] = _coords(F, ht.basis, F.mul(g.matrix, Hk))
    return ModuleMap(hs.module, ht.module, m)


def unit_matrix(ctx: StarContext, X: LeftModule) -> ModuleMap:
    """``eta_X: X -> H(T(X))``, ``x -> (p -> p (x) x)``."""
    F = ctx.P.field
    tp = tensor(ctx, X)
    target = hom(ctx, tp.module)
    n, m = ctx.P.dim, X.dim
    out = np.zeros((len(target.basis), m), dtype=DTYPE)
    if tp.module.dim:
        for j in range(m):
            e = np.zeros((m, 1), dtype=DTYPE)
            e[j, 0] = 1
            out[:, j] = _coords(F, target.basis, F.mul(tp.proj, F.kron(np.eye(n, dtype=DTYPE), e)))
    return ModuleMap(X, target.module, out)


def counit_matrix(ctx: StarContext, N: LeftModule) -> ModuleMap:
    """``eps_N: T(H(N)) -> N``, ``p (x) f -> f(p)``."""
    F = ctx.P.field
    hm = hom(ctx, N)
    tp = tensor(ctx, hm.module)
    n, h = ctx.P.dim, len(hm.basis)
    E0 = np.zeros((N.dim, n * h), dtype=DTYPE)
    for p_ in range(n):
        for a, Ha in enumerate(hm.basis):
            E0[:, p_ * h + a] = Ha[:, p_]
    if tp.relations.shape[1] and np.any(F.mul(E0, tp.relations)):
        raise StructureError("evaluation does not vanish on the tensor relations")
    mat = F.mul(E0, tp.sect) if tp.module.dim else np.zeros((N.dim, 0), dtype=DTYPE)
    return ModuleMap(tp.module, N, mat)


def is_static(ctx: StarContext, N: LeftModule) -> bool:
    return counit_matrix(ctx, N).is_iso()


def is_adstatic(ctx: StarContext, X: LeftModule) -> bool:
    return unit_matrix(ctx, X).is_iso()


def triangle_identities(ctx: StarContext, X: LeftModule | None = None,
                        N: LeftModule | None = None) -> dict:
    """The two triangle composites compared with identity matrices.

    ``X`` (an ``S``-module) checks ``eps_T(X) . T(eta_X)``; ``N`` (an
    ``R``-module) checks ``H(eps_N) . eta_H(N)``.
    """
    F = ctx.P.field
    out = {}
    if X is not None:
        tx = tensor(ctx, X).module
        comp = F.mul(counit_matrix(ctx, tx).matrix, T_map(ctx, unit_matrix(ctx, X)).matrix) \
            if tx.dim else np.zeros((0, 0), dtype=DTYPE)
        out["T"] = bool(np.array_equal(comp, np.eye(tx.dim, dtype=DTYPE)))
    if N is not None:
        hn = hom(ctx, N).module
        comp = F.mul(H_map(ctx, counit_matrix(ctx, N)).matrix, unit_matrix(ctx, hn).matrix) \
            if hn.dim else np.zeros((0, 0), dtype=DTYPE)
        out["H"] = bool(np.array_equal(comp, np.eye(hn.dim, dtype=DTYPE)))
    return out


# ---------------------------------------------------------------------------
# presentations
# ---------------------------------------------------------------------------

@dataclass
class Cover:
    flag: bool
    cover: ModuleMap | None = None


def canonical_cover(ctx: StarContext, N: LeftModule) -> ModuleMap:
    """``P^(h) -> N`` summing all Hom basis maps."""
    basis = hom_basis(ctx.P.left_module, N)
    src = power(ctx.P.left_module, len(basis))
    mat = np.hstack(basis) if basis else np.zeros((N.dim, 0), dtype=DTYPE)
    return ModuleMap(src, N, mat)


def is_p_generated(ctx: StarContext, N: LeftModule) -> Cover:
    c = canonical_cover(ctx, N)
    return Cover(c.is_surjective(), c)


def is_p_presented(ctx: StarContext, N: LeftModule) -> Cover:
    gen = is_p_generated(ctx, N)
    if not gen.flag:
        return gen
    K, _ = kernel(gen.cover)
    return Cover(is_p_generated(ctx, K).flag, gen.cover)


def canonical_coembedding(ctx: StarContext, X: LeftModule) -> ModuleMap:
    """``X -> (P*)^(m)`` stacking all maps into ``P*``."""
    Ps = ctx.pstar.module
    basis = hom_basis(X, Ps)
    tgt = power(Ps, len(basis))
    mat = np.vstack(basis) if basis else np.zeros((0, X.dim), dtype=DTYPE)
    return ModuleMap(X, tgt, mat)


def is_pstar_cogenerated(ctx: StarContext, X: LeftModule) -> bool:
    return canonical_coembedding(ctx, X).is_injective()


def is_pstar_copresented(ctx: StarContext, X: LeftModule) -> bool:
    emb = canonical_coembedding(ctx, X)
    if not emb.is_injective():
        return False
    C, _ = quotient(emb.target, emb.matrix)
    return is_pstar_cogenerated(ctx, C)


# ---------------------------------------------------------------------------
# battery
# ---------------------------------------------------------------------------

CONCRETE_CONDITIONS = "abcdef"


def _first_failure(mods, pred):
    for k, M in enumerate(mods):
        if not pred(M):
            return k
    return None


def idempotence_battery_concrete(ctx: StarContext) -> BatteryReport:
    """Conditions (a)-(f) on the windows; (a) and (c) restate (b) and (d)."""
    W = {}
    smods, rmods = ctx.s_modules, ctx.r_modules
    k = _first_failure(smods, lambda X: is_static(ctx, tensor(ctx, X).module))
    W["b"] = None if k is None else ("S", k, smods[k].dim)
    k = _first_failure(rmods, lambda N: is_adstatic(ctx, hom(ctx, N).module))
    W["d"] = None if k is None else ("R", k, rmods[k].dim)
    k = _first_failure(rmods, lambda N: not is_p_presented(ctx, N).flag or is_static(ctx, N))
    W["e"] = None if k is None else ("R", k, rmods[k].dim)
    k = _first_failure(smods, lambda X: not is_pstar_copresented(ctx, X) or is_adstatic(ctx, X))
    W["f"] = None if k is None else ("S", k, smods[k].dim)
    W["a"], W["c"] = W["b"], W["d"]
    conds = {c: W[c] is None for c in CONCRETE_CONDITIONS}
    return BatteryReport("concrete", conds, {c: w for c, w in W.items() if w is not None},
                         parts={"window_bounded": True})


def self_small_check(ctx: StarContext, lambda_bound: int = 2) -> dict:
    """Canonical ``Hom(P,P)^k -> Hom(P, P^k)`` is bijective for ``k <= lambda_bound``."""
    F = ctx.P.field
    P = ctx.P.left_module
    end = hom_basis(P, P)
    per = {}
    for k in range(1, lambda_bound + 1):
        Pk, inj, _ = direct_sum_maps([P] * k)
        target = hom_basis(P, Pk)
        cols = [_coords(F, target, F.mul(i.matrix, e)) for i in inj for e in end]
        m = np.stack(cols, axis=1) if cols else np.zeros((len(target), 0), dtype=DTYPE)
        per[k] = F.is_invertible(m) if m.size else len(target) == 0
    return {"self_small": all(per.values()), "per_k": per,
            "note": "a finite-dimensional module is self-small for every index set"}


def w_sigma_qp_check(ctx: StarContext, k_bound: int = 2, budget: int = 4096) -> dict:
    """For ``0 -> K -> P^k -> N -> 0`` with ``K`` P-generated, ``Hom(P, P^k) -> Hom(P, N)`` is onto."""
    F = ctx.P.field
    P = ctx.P.left_module
    witnesses = []
    checked = 0
    complete = True
    for k in range(1, k_bound + 1):
        Pk = power(P, k)
        try:
            subs = all_submodules(Pk, budget)
        except BudgetError:
            complete = False
            break
        src = hom_basis(P, Pk)
        for W in subs:
            Kmod = restrict_action(Pk, W)
            if not is_p_generated(ctx, Kmod).flag:
                continue
            checked += 1
            N, proj = quotient(Pk, W)
            tgt = hom_basis(P, N)
            if not tgt:
                continue
            cols = [_coords(F, tgt, F.mul(proj.matrix, f)) for f in src]
            m = np.stack(cols, axis=1) if cols else np.zeros((len(tgt), 0), dtype=DTYPE)
            if F.rank(m) < len(tgt):
                witnesses.append({"k": k, "kernel": W.tolist(), "quotient_dim": N.dim})
    return {"w_sigma_qp": not witnesses, "witnesses": witnesses, "checked": checked,
            "complete": complete}


# ---------------------------------------------------------------------------
# verdict
# ---------------------------------------------------------------------------

@dataclass
class StarVerdict:
    status: str
    battery: BatteryReport | None
    certificates: list
    window_dim: int
    checks: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    def to_json(self, ctx: StarContext) -> dict:
        return {
            "context": context_json(ctx),
            "battery": None if self.battery is None else self.battery.to_json(),
            "verdict": self.status,
            "window_dim": self.window_dim,
            "certificates": self.certificates,
            "checks": dict(self.checks),
            "notes": list(self.notes),
        }


def context_json(ctx: StarContext) -> dict:
    return {
        "algebra": serialize.algebra_to_json(ctx.R),
        "bimodule": serialize.bimodule_to_json(ctx.P),
        "S_auto": ctx.s_auto,
        "S_dim": ctx.S.dim,
        "Q": "linear dual of the right regular module",
        "window": {"R": len(ctx.r_modules), "S": len(ctx.s_modules),
                   "complete": ctx.complete, "max_dim": ctx.max_dim},
        "notes": list(ctx.notes),
    }


def _certificate(side: str, M: LeftModule, f: ModuleMap) -> dict:
    kind = "unit not surjective" if side == "S" else "counit not injective"
    return {"side": side, "kind": kind, "module": serialize.module_to_json(M, False),
            "matrix": f.matrix.tolist(), "rank": f.field.rank(f.matrix) if f.matrix.size else 0}


def _cert_key(c):
    return (c["module"]["dim"], c["side"], json_key(c["module"]["action"]))


def json_key(x) -> str:
    return serialize.dumps(x)


def star_verdict(ctx: StarContext, extra_checks: bool = True) -> StarVerdict:
    """``star-on-window`` iff every unit in the S-window is onto and every
    counit in the R-window is one-to-one."""
    notes = ["bounded claim: only modules in the windows were examined"]
    if ctx.max_dim < 1 or not ctx.complete:
        why = "window dimension below 1" if ctx.max_dim < 1 else "window enumeration hit its budget"
        return StarVerdict("undecided", None, [], ctx.max_dim, notes=notes + [why])
    battery = idempotence_battery_concrete(ctx)
    certs = []
    for X in ctx.s_modules:
        u = unit_matrix(ctx, X)
        if not u.is_surjective():
            certs.append(_certificate("S", X, u))
    for N in ctx.r_modules:
        e = counit_matrix(ctx, N)
        if not e.is_injective():
            certs.append(_certificate("R", N, e))
    certs.sort(key=_cert_key)
    if certs:
        return StarVerdict("refuted", battery, certs, ctx.max_dim, notes=notes)
    checks = closure_checks(ctx) if extra_checks else {}
    return StarVerdict("star-on-window", battery, [], ctx.max_dim, checks, notes)


def closure_checks(ctx: StarContext) -> dict:
    """Closure and inverse-equivalence checks that must hold for a star pair.

    Submodule, quotient and binary-sum checks range over window modules of
    dimension at most ``max_dim``; the larger canonical extras are only
    used by the unit and counit checks.
    """
    small_r = [N for N in ctx.r_modules if N.dim <= ctx.max_dim]
    small_s = [X for X in ctx.s_modules if X.dim <= ctx.max_dim]
    static = [N for N in small_r if is_static(ctx, N)]
    adstatic = [X for X in small_s if is_adstatic(ctx, X)]
    out = {}
    out["static closed under quotients"] = all(
        is_static(ctx, quotient(N, W)[0]) for N in static for W in all_submodules(N))
    out["adstatic closed under submodules"] = all(
        is_adstatic(ctx, restrict_action(X, W)) for X in adstatic for W in all_submodules(X))
    out["H maps static to adstatic"] = all(is_adstatic(ctx, hom(ctx, N).module) for N in static)
    out["T maps adstatic to static"] = all(is_static(ctx, tensor(ctx, X).module) for X in adstatic)
    out["psi onto on binary sums"] = all(
        psi_map(ctx, X1, X2).is_surjective()
        for X1, X2 in itertools.combinations_with_replacement(small_s, 2))
    out["phi one-to-one on binary products"] = all(
        phi_map(ctx, N1, N2).is_injective()
        for N1, N2 in itertools.combinations_with_replacement(small_r, 2))
    tri = [triangle_identities(ctx, X=X) for X in ctx.s_modules] + \
          [triangle_identities(ctx, N=N) for N in ctx.r_modules]
    out["triangle identities"] = all(all(t.values()) for t in tri)
    return out


def _hstack(mats, rows):
    return np.hstack(mats) if mats else np.zeros((rows, 0), dtype=DTYPE)


def psi_map(ctx: StarContext, X1: LeftModule, X2: LeftModule) -> ModuleMap:
    """``HT(X1) + HT(X2) -> HT(X1 + X2)`` from the images of the injections."""
    Xs, inj, _ = direct_sum_maps([X1, X2])
    tgt = hom(ctx, tensor(ctx, Xs).module).module
    parts = [H_map(ctx, T_map(ctx, i)) for i in inj]
    src, _, _ = direct_sum_maps([p.source for p in parts])
    return ModuleMap(src, tgt, _hstack([p.matrix for p in parts], tgt.dim))


def phi_map(ctx: StarContext, N1: LeftModule, N2: LeftModule) -> ModuleMap:
    """``TH(N1 x N2) -> TH(N1) x TH(N2)`` from the images of the projections."""
    Ns, _, prj = direct_sum_maps([N1, N2])
    src = tensor(ctx, hom(ctx, Ns).module).module
    parts = [T_map(ctx, H_map(ctx, q)) for q in prj]
    tgt, _, _ = direct_sum_maps([p.target for p in parts])
    mat = np.vstack([p.matrix for p in parts]) if src.dim else np.zeros((tgt.dim, 0), dtype=DTYPE)
    return ModuleMap(src, tgt, mat)


def revalidate_certificate(cert: dict, bimodule_json: dict) -> bool:
    """Recompute the certificate's map from serialized data and confirm the failure."""
    P = serialize.bimodule_from_json(bimodule_json)
    ctx = bare_context(P)
    side = cert["side"]
    alg = P.S if side == "S" else P.R
    M = serialize.module_from_json(cert["module"], algebra=alg)
    if side == "S":
        f = unit_matrix(ctx, M)
        failed = not f.is_surjective()
    elif side == "R":
        f = counit_matrix(ctx, M)
        failed = not f.is_injective()
    else:
        return False
    if not validate_map(f).ok:
        return False
    return failed and f.matrix.tolist() == cert["matrix"]


# ---------------------------------------------------------------------------
# window categories
# ---------------------------------------------------------------------------

@dataclass
class WindowCategory:
    category: FinCategory
    modules: list
    maps: list          # ModuleMap per morphism index
    lookup: dict        # (src, dst, matrix bytes) -> morphism index

    def morphism_of(self, i: int, j: int, matrix) -> int:
        m = np.asarray(matrix, dtype=DTYPE).reshape(self.modules[j].dim, self.modules[i].dim)
        return self.lookup[(i, j, m.tobytes())]


def build_window_category(modules, budget: int = 4096) -> WindowCategory:
    """Every module map between the given modules, as a finite category."""
    modules = list(modules)
    F = modules[0].field
    p = F.p
    names, mors, maps, lookup = [], [], [], {}
    ids = {}
    for i, M in enumerate(modules):
        for j, N in enumerate(modules):
            basis = hom_basis(M, N)
            if p ** len(basis) > budget:
                raise BudgetError(f"Hom({i}, {j}) has {p}^{len(basis)} elements")
            for coeffs in itertools.product(range(p), repeat=len(basis)):
                mat = np.zeros((N.dim, M.dim), dtype=DTYPE)
                for c, b in zip(coeffs, basis):
                    mat = mat + c * b
                mat %= p
                name = f"{i}->{j}:{''.join(map(str, coeffs))}"
                k = len(maps)
                lookup[(i, j, mat.tobytes())] = k
                maps.append(ModuleMap(M, N, mat))
                mors.append((name, f"M{i}", f"M{j}"))
                names.append(name)
                if i == j and np.array_equal(mat, np.eye(M.dim, dtype=DTYPE)):
                    ids[f"M{i}"] = name
            if len(maps) > budget:
                raise BudgetError(f"more than {budget} module maps")
    comp = []
    src_of = {}
    for (i, j, _), k in lookup.items():
        src_of[k] = (i, j)
    for f in range(len(maps)):
        i, j = src_of[f]
        for g in range(len(maps)):
            j2, l = src_of[g]
            if j2 != j:
                continue
            h = lookup[(i, l, F.mul(maps[g].matrix, maps[f].matrix).tobytes()
                        if maps[f].matrix.size and maps[g].matrix.size
                        else np.zeros((modules[l].dim, modules[i].dim), dtype=DTYPE).tobytes())]
            comp.append((names[g], names[f], names[h]))
    cat = category_from_names([f"M{i}" for i in range(len(modules))], mors, ids, comp,
                              budget=max(budget, len(maps)))
    return WindowCategory(cat, modules, maps, lookup)


@dataclass
class WindowAdjunction:
    """``T -| H`` restricted to window categories, when both windows are closed."""

    adjunction: FinAdjunction | None
    s_category: WindowCategory | None
    r_category: WindowCategory | None
    reason: str = ""


def _locate(modules, M):
    for k, N in enumerate(modules):
        if N.dim == M.dim:
            r = are_isomorphic(M, N)
            if r.status == "isomorphic":
                return k, r.witness
    return None, None


def window_adjunction(ctx: StarContext, budget: int = 4096) -> WindowAdjunction:
    """Transport ``T``, ``H``, unit and counit onto the window categories.

    Needs every ``T(X)`` and ``H(N)`` to be isomorphic to a window module;
    otherwise ``adjunction`` is None and ``reason`` says why.
    """
    F = ctx.P.field
    sm, rm = ctx.s_modules, ctx.r_modules
    try:
        SC = build_window_category(sm, budget)
        RC = build_window_category(rm, budget)
    except BudgetError as exc:
        return WindowAdjunction(None, None, None, str(exc))
    t_obj, t_iso = [], []
    for X in sm:
        k, w = _locate(rm, tensor(ctx, X).module)
        if k is None:
            return WindowAdjunction(None, SC, RC, "T leaves the R-window")
        t_obj.append(k)
        t_iso.append(w)           # T(X) -> window module
    h_obj, h_iso = [], []
    for N in rm:
        k, w = _locate(sm, hom(ctx, N).module)
        if k is None:
            return WindowAdjunction(None, SC, RC, "H leaves the S-window")
        h_obj.append(k)
        h_iso.append(w)           # H(N) -> window module

    def inv(f: ModuleMap) -> np.ndarray:
        return F.inverse(f.matrix) if f.matrix.size else f.matrix

    def mul(*ms):
        if any(m.size == 0 for m in ms):
            return np.zeros((ms[0].shape[0], ms[-1].shape[1]), dtype=DTYPE)
        return F.mul(*ms)

    t_mor = []
    for g in SC.maps:
        i, j = sm.index(g.source), sm.index(g.target)
        mat = mul(t_iso[j].matrix, T_map(ctx, g).matrix, inv(t_iso[i]))
        t_mor.append(RC.morphism_of(t_obj[i], t_obj[j], mat))
    h_mor = []
    for g in RC.maps:
        i, j = rm.index(g.source), rm.index(g.target)
        mat = mul(h_iso[j].matrix, H_map(ctx, g).matrix, inv(h_iso[i]))
        h_mor.append(SC.morphism_of(h_obj[i], h_obj[j], mat))
    Tf = FinFunctor(SC.category, RC.category, t_obj, t_mor, name="T")
    Hf = FinFunctor(RC.category, SC.category, h_obj, h_mor, name="H")
    eta = []
    for i, X in enumerate(sm):
        # X -> H(T X) -> H(rep T X) -> rep H(rep T X)
        r = t_obj[i]
        a = H_map(ctx, t_iso[i]).matrix
        mat = mul(h_iso[r].matrix, a, unit_matrix(ctx, X).matrix)
        eta.append(SC.morphism_of(i, h_obj[r], mat))
    eps = []
    for j, N in enumerate(rm):
        # rep T(rep H N) -> T(rep H N) -> T(H N) -> N
        s = h_obj[j]
        back = ModuleMap(sm[s], hom(ctx, N).module, inv(h_iso[j]))
        mat = mul(counit_matrix(ctx, N).matrix, T_map(ctx, back).matrix, inv(t_iso[s]))
        eps.append(RC.morphism_of(t_obj[s], j, mat))
    HT = compose_functors(Hf, Tf)
    TH = compose_functors(Tf, Hf)
    a = FinAdjunction(Tf, Hf, NatTrans(identity_functor(SC.category), HT, eta, "eta"),
                      NatTrans(TH, identity_functor(RC.category), eps, "eps"))
    return WindowAdjunction(a, SC, RC)
