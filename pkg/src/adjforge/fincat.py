"""Finite categories as dense composition tables.

Objects and morphisms carry dense integer ids; names are kept only for
reporting.  ``compose(g, f)`` means "first f, then g" and is defined exactly
when ``dst(f) == src(g)``.  Every search here iterates in id order, so the
first witness found is also the smallest one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

DEFAULT_BUDGET = 512


class StructureError(ValueError):
    """Input is malformed (dangling ids, wrong shapes) rather than unlawful."""


class BudgetExceeded(RuntimeError):
    """A construction would exceed the configured morphism budget."""


@dataclass(frozen=True)
class Violation:
    law: str
    witness: tuple

    def __str__(self):
        return f"{self.law}: {', '.join(map(str, self.witness))}"


@dataclass
class Validation:
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, law, *witness):
        self.violations.append(Violation(law, tuple(witness)))

    def extend(self, other: "Validation", prefix: str = ""):
        for v in other.violations:
            self.violations.append(Violation(prefix + v.law, v.witness))

    def __bool__(self):
        return self.ok


class FinCategory:
    """A finite category given by its composition table.

    ``morphisms`` is a sequence of ``(name, src, dst)`` with object ids,
    ``identities[a]`` the id of the identity on object ``a`` and ``compose``
    a mapping ``(g, f) -> h``.  Structural problems raise
    :class:`StructureError`; law failures are reported by
    :func:`validate_category`.
    """

    def __init__(self, objects: Sequence[str], morphisms: Sequence[tuple],
                 identities: Sequence[int], compose: dict,
                 budget: int = DEFAULT_BUDGET):
        self.objects = tuple(str(o) for o in objects)
        if len(morphisms) > budget:
            raise BudgetExceeded(f"{len(morphisms)} morphisms exceed budget {budget}")
        nobj = len(self.objects)
        names, src, dst = [], [], []
        for entry in morphisms:
            if len(entry) != 3:
                raise StructureError(f"morphism entry {entry!r} is not (name, src, dst)")
            name, s, t = entry
            if not (0 <= s < nobj and 0 <= t < nobj):
                raise StructureError(f"morphism {name!r} has dangling endpoint")
            names.append(str(name))
            src.append(int(s))
            dst.append(int(t))
        self.names = tuple(names)
        self.src = tuple(src)
        self.dst = tuple(dst)
        nmor = len(names)
        if len(identities) != nobj:
            raise StructureError("one identity per object required")
        for a, i in enumerate(identities):
            if not 0 <= i < nmor:
                raise StructureError(f"identity of object {self.objects[a]!r} is dangling")
            if src[i] != a or dst[i] != a:
                raise StructureError(f"identity {names[i]!r} is not an endomorphism of {self.objects[a]!r}")
        self.identities = tuple(int(i) for i in identities)
        table = {}
        for (g, f), h in compose.items():
            if not (0 <= g < nmor and 0 <= f < nmor and 0 <= h < nmor):
                raise StructureError(f"composition entry {(g, f, h)} is dangling")
            if dst[f] != src[g]:
                raise StructureError(
                    f"composition entry ({names[g]}, {names[f]}) is not composable")
            table[(int(g), int(f))] = int(h)
        self.table = table
        homs = {}
        for m in range(nmor):
            homs.setdefault((src[m], dst[m]), []).append(m)
        self._hom = {k: tuple(v) for k, v in homs.items()}
        self._name_ids = {n: i for i, n in enumerate(names)}
        self._obj_ids = {n: i for i, n in enumerate(self.objects)}
        self._cache = {}
        self._key = None

    # -- basic access --------------------------------------------------
    @property
    def n_objects(self) -> int:
        return len(self.objects)

    @property
    def n_morphisms(self) -> int:
        return len(self.names)

    def hom(self, a: int, b: int) -> tuple:
        return self._hom.get((a, b), ())

    def compose(self, g: int, *fs: int) -> int:
        """``compose(g, f1, f2, ...)`` is ``g o f1 o f2 o ...``."""
        out = g
        for f in fs:
            try:
                out = self.table[(out, f)]
            except KeyError:
                raise StructureError(
                    f"no composite for ({self.names[out]}, {self.names[f]})") from None
        return out

    def identity(self, a: int) -> int:
        return self.identities[a]

    def is_identity(self, m: int) -> bool:
        return self.identities[self.src[m]] == m

    def mor_id(self, name: str) -> int:
        return self._name_ids[name]

    def obj_id(self, name: str) -> int:
        return self._obj_ids[name]

    def key(self):
        if self._key is None:
            self._key = (self.objects, self.names, self.src, self.dst,
                         self.identities, tuple(sorted(self.table.items())))
        return self._key

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, FinCategory):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"FinCategory({self.n_objects} objects, {self.n_morphisms} morphisms)"

    # -- morphism properties (cached; the table never changes) --------
    def _memo(self, kind, m, fn):
        k = (kind, m)
        if k not in self._cache:
            self._cache[k] = fn(m)
        return self._cache[k]

    def is_mono(self, m: int) -> bool:
        def check(m):
            s = self.src[m]
            for x in range(self.n_objects):
                seen = set()
                for f in self.hom(x, s):
                    h = self.table[(m, f)]
                    if h in seen:
                        return False
                    seen.add(h)
            return True
        return self._memo("mono", m, check)

    def is_epi(self, m: int) -> bool:
        def check(m):
            t = self.dst[m]
            for y in range(self.n_objects):
                seen = set()
                for g in self.hom(t, y):
                    h = self.table[(g, m)]
                    if h in seen:
                        return False
                    seen.add(h)
            return True
        return self._memo("epi", m, check)

    def inverse_of(self, m: int):
        def find(m):
            for g in self.hom(self.dst[m], self.src[m]):
                if (self.table[(g, m)] == self.identities[self.src[m]]
                        and self.table[(m, g)] == self.identities[self.dst[m]]):
                    return g
            return None
        return self._memo("inv", m, find)

    def is_iso(self, m: int) -> bool:
        return self.inverse_of(m) is not None

    def is_retraction(self, m: int) -> bool:
        ident = self.identities[self.dst[m]]
        return any(self.table[(m, s)] == ident for s in self.hom(self.dst[m], self.src[m]))

    def is_coretraction(self, m: int) -> bool:
        ident = self.identities[self.src[m]]
        return any(self.table[(r, m)] == ident for r in self.hom(self.dst[m], self.src[m]))

    def is_extremal_epi(self, m: int) -> bool:
        def check(m):
            if not self.is_epi(m):
                return False
            s, t = self.src[m], self.dst[m]
            for y in range(self.n_objects):
                for mp in self.hom(y, t):
                    if not self.is_mono(mp) or self.is_iso(mp):
                        continue
                    if any(self.table[(mp, f)] == m for f in self.hom(s, y)):
                        return False
            return True
        return self._memo("xepi", m, check)

    def is_extremal_mono(self, m: int) -> bool:
        def check(m):
            if not self.is_mono(m):
                return False
            s, t = self.src[m], self.dst[m]
            for y in range(self.n_objects):
                for e in self.hom(s, y):
                    if not self.is_epi(e) or self.is_iso(e):
                        continue
                    if any(self.table[(f, e)] == m for f in self.hom(y, t)):
                        return False
            return True
        return self._memo("xmono", m, check)

    def iso_witness(self, a: int, b: int):
        """A pair ``(f: a -> b, g: b -> a)`` of mutually inverse morphisms, or None."""
        for f in self.hom(a, b):
            g = self.inverse_of(f)
            if g is not None:
                return f, g
        return None

    def op(self) -> "FinCategory":
        """Opposite category: same ids, arrows reversed."""
        if "op" not in self._cache:
            mors = [(n, t, s) for n, s, t in zip(self.names, self.src, self.dst)]
            comp = {(f, g): h for (g, f), h in self.table.items()}
            self._cache["op"] = FinCategory(self.objects, mors, self.identities, comp,
                                            budget=max(DEFAULT_BUDGET, self.n_morphisms))
        return self._cache["op"]


@dataclass(frozen=True)
class MorphismFlags:
    mono: bool
    epi: bool
    extremal_mono: bool
    extremal_epi: bool
    iso: bool
    retraction: bool
    coretraction: bool


def classify_morphism(c: FinCategory, m: int) -> MorphismFlags:
    if not 0 <= m < c.n_morphisms:
        raise StructureError(f"no morphism with id {m}")
    return MorphismFlags(
        mono=c.is_mono(m), epi=c.is_epi(m),
        extremal_mono=c.is_extremal_mono(m), extremal_epi=c.is_extremal_epi(m),
        iso=c.is_iso(m), retraction=c.is_retraction(m),
        coretraction=c.is_coretraction(m))


def validate_category(c: FinCategory) -> Validation:
    """Check totality, endpoints, identity laws and associativity."""
    v = Validation()
    n = c.names
    for f in range(c.n_morphisms):
        for y in range(c.n_objects):
            for g in c.hom(c.dst[f], y):
                h = c.table.get((g, f))
                if h is None:
                    v.add("totality", n[g], n[f])
                elif c.src[h] != c.src[f] or c.dst[h] != c.dst[g]:
                    v.add("endpoints", n[g], n[f])
    if not v.ok:
        return v
    for f in range(c.n_morphisms):
        if c.table[(c.identities[c.dst[f]], f)] != f:
            v.add("left identity", n[f])
        if c.table[(f, c.identities[c.src[f]])] != f:
            v.add("right identity", n[f])
    for f in range(c.n_morphisms):
        for g in _out(c, f):
            gf = c.table[(g, f)]
            for h in _out(c, g):
                if c.table[(h, gf)] != c.table[(c.table[(h, g)], f)]:
                    v.add("associativity", n[h], n[g], n[f])
    return v


def _out(c: FinCategory, f: int):
    t = c.dst[f]
    for y in range(c.n_objects):
        yield from c.hom(t, y)


# ---------------------------------------------------------------------------
# functors and natural transformations
# ---------------------------------------------------------------------------

class FinFunctor:
    """Functor between finite categories given by object and morphism maps."""

    def __init__(self, source: FinCategory, target: FinCategory,
                 obj_map: Sequence[int], mor_map: Sequence[int], name: str = "F"):
        if len(obj_map) != source.n_objects:
            raise StructureError(f"{name}: object map has {len(obj_map)} entries, "
                                 f"source has {source.n_objects} objects")
        if len(mor_map) != source.n_morphisms:
            raise StructureError(f"{name}: morphism map has {len(mor_map)} entries, "
                                 f"source has {source.n_morphisms} morphisms")
        if any(not 0 <= o < target.n_objects for o in obj_map):
            raise StructureError(f"{name}: object map points outside the target")
        if any(not 0 <= m < target.n_morphisms for m in mor_map):
            raise StructureError(f"{name}: morphism map points outside the target")
        self.source = source
        self.target = target
        self.obj_map = tuple(int(o) for o in obj_map)
        self.mor_map = tuple(int(m) for m in mor_map)
        self.name = name

    def ob(self, a: int) -> int:
        return self.obj_map[a]

    def __call__(self, m: int) -> int:
        return self.mor_map[m]

    def __eq__(self, other):
        if not isinstance(other, FinFunctor):
            return NotImplemented
        return (self.obj_map == other.obj_map and self.mor_map == other.mor_map
                and self.source == other.source and self.target == other.target)

    def __hash__(self):
        return hash((self.obj_map, self.mor_map))

    def __repr__(self):
        return f"FinFunctor({self.name}: {self.obj_map})"

    def op(self) -> "FinFunctor":
        return FinFunctor(self.source.op(), self.target.op(), self.obj_map,
                          self.mor_map, name=self.name + "^op")


def identity_functor(c: FinCategory) -> FinFunctor:
    return FinFunctor(c, c, range(c.n_objects), range(c.n_morphisms), name="Id")


def constant_functor(source: FinCategory, target: FinCategory, obj: int) -> FinFunctor:
    i = target.identities[obj]
    return FinFunctor(source, target, [obj] * source.n_objects,
                      [i] * source.n_morphisms, name=f"const_{target.objects[obj]}")


def validate_functor(F: FinFunctor) -> Validation:
    v = Validation()
    s, t = F.source, F.target
    for m in range(s.n_morphisms):
        fm = F.mor_map[m]
        if t.src[fm] != F.obj_map[s.src[m]] or t.dst[fm] != F.obj_map[s.dst[m]]:
            v.add("endpoints", s.names[m])
    for a in range(s.n_objects):
        if F.mor_map[s.identities[a]] != t.identities[F.obj_map[a]]:
            v.add("identity", s.objects[a])
    if not v.ok:
        return v
    for (g, f), h in s.table.items():
        if t.table.get((F.mor_map[g], F.mor_map[f])) != F.mor_map[h]:
            v.add("composition", s.names[g], s.names[f])
    return v


def compose_functors(G: FinFunctor, F: FinFunctor) -> FinFunctor:
    """``G o F``: apply F first."""
    if F.target != G.source:
        raise StructureError(f"cannot compose {G.name} after {F.name}: shape mismatch")
    return FinFunctor(F.source, G.target,
                      [G.obj_map[o] for o in F.obj_map],
                      [G.mor_map[m] for m in F.mor_map],
                      name=f"{G.name}{F.name}")


class NatTrans:
    """Natural transformation ``source => target`` between parallel functors."""

    def __init__(self, source: FinFunctor, target: FinFunctor,
                 components: Sequence[int], name: str = "alpha"):
        if source.source != target.source or source.target != target.target:
            raise StructureError(f"{name}: functors {source.name}, {target.name} are not parallel")
        if len(components) != source.source.n_objects:
            raise StructureError(f"{name}: {len(components)} components for "
                                 f"{source.source.n_objects} objects")
        if any(not 0 <= m < source.target.n_morphisms for m in components):
            raise StructureError(f"{name}: component points outside the target category")
        self.source = source
        self.target = target
        self.components = tuple(int(m) for m in components)
        self.name = name

    @property
    def domain(self) -> FinCategory:
        return self.source.source

    @property
    def codomain(self) -> FinCategory:
        return self.source.target

    def __getitem__(self, a: int) -> int:
        return self.components[a]

    def __eq__(self, other):
        if not isinstance(other, NatTrans):
            return NotImplemented
        return (self.components == other.components and self.source == other.source
                and self.target == other.target)

    def __hash__(self):
        return hash(self.components)

    def op(self) -> "NatTrans":
        """Reverse direction in the opposite categories."""
        return NatTrans(self.target.op(), self.source.op(), self.components,
                        name=self.name + "^op")


def validate_nattrans(alpha: NatTrans) -> Validation:
    v = Validation()
    F, G = alpha.source, alpha.target
    A, B = alpha.domain, alpha.codomain
    for a in range(A.n_objects):
        c = alpha.components[a]
        if B.src[c] != F.obj_map[a] or B.dst[c] != G.obj_map[a]:
            v.add("component endpoints", A.objects[a])
    if not v.ok:
        return v
    for m in range(A.n_morphisms):
        lhs = B.table[(G.mor_map[m], alpha.components[A.src[m]])]
        rhs = B.table[(alpha.components[A.dst[m]], F.mor_map[m])]
        if lhs != rhs:
            v.add("naturality", A.names[m])
    return v


def identity_nattrans(F: FinFunctor) -> NatTrans:
    B = F.target
    return NatTrans(F, F, [B.identities[F.obj_map[a]] for a in range(F.source.n_objects)],
                    name=f"id_{F.name}")


def vertical_compose(beta: NatTrans, alpha: NatTrans) -> NatTrans:
    """``beta . alpha`` for ``alpha: F => G`` and ``beta: G => H``."""
    if alpha.target != beta.source:
        raise StructureError(f"cannot compose {beta.name} after {alpha.name}")
    B = alpha.codomain
    comps = [B.table[(beta.components[a], alpha.components[a])]
             for a in range(alpha.domain.n_objects)]
    return NatTrans(alpha.source, beta.target, comps, name=f"{beta.name}.{alpha.name}")


def whisker(alpha: NatTrans, F: FinFunctor, side: str) -> NatTrans:
    """Whisker ``alpha`` by ``F``.

    ``side="right"`` gives ``alpha F`` (precompose: components ``alpha_{F a}``),
    ``side="left"`` gives ``F alpha`` (postcompose: components ``F(alpha_a)``).
    """
    if side == "right":
        if F.target != alpha.domain:
            raise StructureError(f"cannot whisker {alpha.name} by {F.name} on the right")
        comps = [alpha.components[F.obj_map[a]] for a in range(F.source.n_objects)]
        return NatTrans(compose_functors(alpha.source, F), compose_functors(alpha.target, F),
                        comps, name=f"{alpha.name}{F.name}")
    if side == "left":
        if F.source != alpha.codomain:
            raise StructureError(f"cannot whisker {alpha.name} by {F.name} on the left")
        comps = [F.mor_map[c] for c in alpha.components]
        return NatTrans(compose_functors(F, alpha.source), compose_functors(F, alpha.target),
                        comps, name=f"{F.name}{alpha.name}")
    raise ValueError(f"side must be 'left' or 'right', not {side!r}")


# ---------------------------------------------------------------------------
# adjunctions (the record type; the theory lives in adjunctions.py)
# ---------------------------------------------------------------------------

@dataclass
class FinAdjunction:
    """``F -| G`` with ``F: A -> B``, unit ``eta: Id_A => GF``, counit ``eps: FG => Id_B``."""

    F: FinFunctor
    G: FinFunctor
    eta: NatTrans
    eps: NatTrans

    @property
    def A(self) -> FinCategory:
        return self.F.source

    @property
    def B(self) -> FinCategory:
        return self.F.target


def check_adjunction_shape(a: FinAdjunction):
    F, G = a.F, a.G
    if F.target != G.source or G.target != F.source:
        raise StructureError("F and G do not form a pair A -> B -> A")
    if a.eta.domain != F.source or a.eta.codomain != F.source:
        raise StructureError("unit must be a transformation on A")
    if a.eps.domain != F.target or a.eps.codomain != F.target:
        raise StructureError("counit must be a transformation on B")
    if (a.eta.source != identity_functor(F.source)
            or a.eta.target != compose_functors(G, F)):
        raise StructureError("unit must go Id_A => GF")
    if (a.eps.source != compose_functors(F, G)
            or a.eps.target != identity_functor(F.target)):
        raise StructureError("counit must go FG => Id_B")


def validate_adjunction(a: FinAdjunction) -> Validation:
    """Functor/transformation laws plus both triangle identities."""
    check_adjunction_shape(a)
    v = Validation()
    v.extend(validate_functor(a.F), "F ")
    v.extend(validate_functor(a.G), "G ")
    if not v.ok:
        return v
    v.extend(validate_nattrans(a.eta), "unit ")
    v.extend(validate_nattrans(a.eps), "counit ")
    if not v.ok:
        return v
    A, B, F, G = a.A, a.B, a.F, a.G
    for x in range(A.n_objects):
        # eps_{F x} o F(eta_x) = id_{F x}
        if B.table[(a.eps[F.obj_map[x]], F.mor_map[a.eta[x]])] != B.identities[F.obj_map[x]]:
            v.add("triangle epsF.Feta", A.objects[x])
    for y in range(B.n_objects):
        # G(eps_y) o eta_{G y} = id_{G y}
        if A.table[(G.mor_map[a.eps[y]], a.eta[G.obj_map[y]])] != A.identities[G.obj_map[y]]:
            v.add("triangle Geps.etaG", B.objects[y])
    return v


def opposite_adjunction(a: FinAdjunction) -> FinAdjunction:
    """``G^op -| F^op`` between the opposite categories."""
    return FinAdjunction(a.G.op(), a.F.op(), a.eps.op(), a.eta.op())


# ---------------------------------------------------------------------------
# small builders
# ---------------------------------------------------------------------------

def category_from_names(objects: Sequence[str], morphisms: Iterable[tuple],
                        identities: dict, compose: Iterable[tuple],
                        budget: int = DEFAULT_BUDGET) -> FinCategory:
    """Build from names: morphisms ``(name, src, dst)``, compose ``(g, f, gf)``."""
    objects = list(objects)
    oid = {o: i for i, o in enumerate(objects)}
    if len(oid) != len(objects):
        raise StructureError("duplicate object names")
    mors = list(morphisms)
    mid = {}
    entries = []
    for name, s, t in mors:
        if name in mid:
            raise StructureError(f"duplicate morphism name {name!r}")
        if s not in oid or t not in oid:
            raise StructureError(f"morphism {name!r} refers to an unknown object")
        mid[name] = len(entries)
        entries.append((name, oid[s], oid[t]))
    try:
        ids = [mid[identities[o]] for o in objects]
    except KeyError as e:
        raise StructureError(f"missing or unknown identity: {e}") from None
    table = {}
    for entry in compose:
        if len(entry) != 3:
            raise StructureError(f"composition entry {entry!r} is not [g, f, gf]")
        g, f, h = entry
        if g not in mid or f not in mid or h not in mid:
            raise StructureError(f"composition entry {entry!r} names an unknown morphism")
        key = (mid[g], mid[f])
        if key in table and table[key] != mid[h]:
            raise StructureError(f"composition of ({g}, {f}) given twice")
        table[key] = mid[h]
    return FinCategory(objects, entries, ids, table, budget=budget)


def complete_identity_entries(objects, morphisms, identities, compose):
    """Add the composites with identities that a table may leave implicit."""
    comp = {(g, f): h for g, f, h in compose}
    for n, s, t in morphisms:
        comp.setdefault((identities[t], n), n)
        comp.setdefault((n, identities[s]), n)
    return [(g, f, h) for (g, f), h in comp.items()]


def poset_category(elements: Sequence, leq) -> FinCategory:
    """Category of a preorder: one morphism ``a -> b`` iff ``leq(a, b)``."""
    elements = list(elements)
    n = len(elements)
    mors = []
    idx = {}
    for i in range(n):
        for j in range(n):
            if leq(elements[i], elements[j]):
                idx[(i, j)] = len(mors)
                mors.append((f"{elements[i]}<={elements[j]}", i, j))
    ids = [idx[(i, i)] for i in range(n)]
    table = {}
    for (i, j), f in idx.items():
        for k in range(n):
            g = idx.get((j, k))
            if g is not None:
                h = idx.get((i, k))
                if h is None:
                    raise StructureError("relation is not transitive")
                table[(g, f)] = h
    return FinCategory([str(e) for e in elements], mors, ids, table,
                       budget=max(DEFAULT_BUDGET, len(mors)))


def poset_functor(source: FinCategory, target: FinCategory, obj_map: Sequence[int],
                  name: str = "f") -> FinFunctor:
    """Functor between preorder categories induced by a monotone object map.

    Raises :class:`StructureError` naming the witnessing morphism if the map
    is not monotone.
    """
    mors = []
    for m in range(source.n_morphisms):
        hs = target.hom(obj_map[source.src[m]], obj_map[source.dst[m]])
        if not hs:
            raise StructureError(f"{name} is not monotone on {source.names[m]}")
        mors.append(hs[0])
    return FinFunctor(source, target, obj_map, mors, name=name)


def chain(n: int) -> FinCategory:
    return poset_category(range(n), lambda a, b: a <= b)


def terminal_category() -> FinCategory:
    return FinCategory(["*"], [("id", 0, 0)], [0], {(0, 0): 0})


def all_composable_triples(c: FinCategory):
    for f in range(c.n_morphisms):
        for g in _out(c, f):
            for h in _out(c, g):
                yield h, g, f
