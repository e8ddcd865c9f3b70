"""Finite-dimensional algebras over F_p and their modules as matrices.

Conventions used throughout:

* vectors are columns, a linear map ``f`` is stored as the matrix ``F`` with
  ``f(v) = F @ v``;
* a left module stores one action matrix ``L_i`` per algebra basis element;
* a right action of ``S`` on the same space stores ``N_j`` with
  ``p . s = N_s @ p``, so ``N(st) = N(t) @ N(s)``;
* endomorphisms act on the right of their argument, so the product ``f g``
  in an endomorphism algebra means "first f, then g", with matrix ``G @ F``;
* plain tensor coordinates follow ``np.kron``: ``e_p (x) e_x`` sits at
  index ``p * dim X + x``.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .fincat import StructureError, Validation
from .ffla import DTYPE, DimensionError, PrimeField

DEFAULT_ISO_BUDGET = 1 << 16
DEFAULT_ENUM_BUDGET = 1 << 22


# ---------------------------------------------------------------------------
# algebras
# ---------------------------------------------------------------------------

class FqAlgebra:
    """Algebra with basis ``b_0..b_{d-1}`` and ``b_i b_j = sum_k c[i, j, k] b_k``."""

    def __init__(self, field: PrimeField, constants, unit, name: str = ""):
        self.field = field
        c = np.asarray(constants, dtype=DTYPE)
        if c.ndim != 3 or not (c.shape[0] == c.shape[1] == c.shape[2]):
            raise DimensionError(f"structure constants must be d x d x d, got {c.shape}")
        u = np.asarray(unit, dtype=DTYPE).reshape(-1)
        if u.shape[0] != c.shape[0]:
            raise DimensionError(f"unit has {u.shape[0]} coordinates, algebra has {c.shape[0]}")
        self.constants = c % field.p
        self.unit = u % field.p
        self.name = name

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def dim(self) -> int:
        return self.constants.shape[0]

    def basis_vector(self, i: int) -> np.ndarray:
        v = np.zeros(self.dim, dtype=DTYPE)
        v[i] = 1
        return v

    def mult(self, x, y) -> np.ndarray:
        return np.einsum("i,j,ijk->k", np.asarray(x, dtype=DTYPE), np.asarray(y, dtype=DTYPE),
                         self.constants) % self.p

    def left_mult_matrix(self, x) -> np.ndarray:
        """Matrix of ``y -> x y``."""
        return np.einsum("i,ijk->kj", np.asarray(x, dtype=DTYPE), self.constants) % self.p

    def right_mult_matrix(self, y) -> np.ndarray:
        """Matrix of ``x -> x y``."""
        return np.einsum("i,jik->kj", np.asarray(y, dtype=DTYPE), self.constants) % self.p

    def key(self) -> tuple:
        return (self.p, self.dim, self.constants.tobytes(), self.unit.tobytes())

    def __eq__(self, other):
        return isinstance(other, FqAlgebra) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<FqAlgebra{label} over F_{self.p}, dim {self.dim}>"


def validate_algebra(a: FqAlgebra) -> Validation:
    v = Validation()
    d, p = a.dim, a.p
    c = a.constants
    # (b_i b_j) b_l versus b_i (b_j b_l), all basis triples
    left = np.einsum("ijk,klm->ijlm", c, c) % p
    right = np.einsum("jlk,ikm->ijlm", c, c) % p
    bad = np.argwhere((left != right).any(axis=3))
    for i, j, l in bad[:1]:
        v.add("associativity", int(i), int(j), int(l))
    for i in range(d):
        e = a.basis_vector(i)
        if np.any(a.mult(a.unit, e) != e):
            v.add("left unit", i)
            break
        if np.any(a.mult(e, a.unit) != e):
            v.add("right unit", i)
            break
    return v


def field_algebra(p: int = 2) -> FqAlgebra:
    return FqAlgebra(PrimeField(p), [[[1]]], [1], name=f"F{p}")


def dual_numbers(p: int = 2) -> FqAlgebra:
    """``F_p[x]/(x^2)`` with basis ``1, x``."""
    c = np.zeros((2, 2, 2), dtype=DTYPE)
    c[0, 0, 0] = c[0, 1, 1] = c[1, 0, 1] = 1
    return FqAlgebra(PrimeField(p), c, [1, 0], name=f"F{p}[x]/(x^2)")


def upper_triangular(p: int = 2) -> FqAlgebra:
    """2x2 upper-triangular matrices with basis ``e11, e12, e22``."""
    c = np.zeros((3, 3, 3), dtype=DTYPE)
    c[0, 0, 0] = 1  # e11 e11
    c[0, 1, 1] = 1  # e11 e12
    c[1, 2, 1] = 1  # e12 e22
    c[2, 2, 2] = 1  # e22 e22
    return FqAlgebra(PrimeField(p), c, [1, 0, 1], name=f"T2(F{p})")


def matrix_algebra(p: int, n: int) -> FqAlgebra:
    """Full ``n x n`` matrices, basis ``E_ij`` at index ``i*n + j``."""
    d = n * n
    c = np.zeros((d, d, d), dtype=DTYPE)
    for i, j, l in itertools.product(range(n), repeat=3):
        c[i * n + j, j * n + l, i * n + l] = 1
    u = np.zeros(d, dtype=DTYPE)
    for i in range(n):
        u[i * n + i] = 1
    return FqAlgebra(PrimeField(p), c, u, name=f"M{n}(F{p})")


def cyclic_group_algebra(p: int, n: int) -> FqAlgebra:
    c = np.zeros((n, n, n), dtype=DTYPE)
    for i, j in itertools.product(range(n), repeat=2):
        c[i, j, (i + j) % n] = 1
    u = np.zeros(n, dtype=DTYPE)
    u[0] = 1
    return FqAlgebra(PrimeField(p), c, u, name=f"F{p}[C{n}]")


def algebra_isomorphism(a: FqAlgebra, b: FqAlgebra, budget: int = DEFAULT_ISO_BUDGET):
    """An invertible matrix ``M`` with ``M(xy) = M(x)M(y)`` and ``M(1) = 1``, or None.

    Exhaustive over invertible ``d x d`` matrices; raises ``BudgetError`` when
    ``p**(d*d)`` exceeds ``budget``.
    """
    if a.p != b.p or a.dim != b.dim:
        return None
    d, p = a.dim, a.p
    if p ** (d * d) > budget:
        raise BudgetError(f"{p}^{d * d} candidate maps exceed budget {budget}")
    F = a.field
    for flat in itertools.product(range(p), repeat=d * d):
        m = np.array(flat, dtype=DTYPE).reshape(d, d)
        if np.any(F.mul(m, a.unit.reshape(-1, 1)).reshape(-1) != b.unit):
            continue
        if not F.is_invertible(m):
            continue
        if all(np.array_equal(F.mul(m, a.mult(a.basis_vector(i), a.basis_vector(j)).reshape(-1, 1))
                              .reshape(-1), b.mult(m[:, i], m[:, j]))
               for i in range(d) for j in range(d)):
            return m
    return None


class BudgetError(RuntimeError):
    """A search would exceed its configured budget."""


# ---------------------------------------------------------------------------
# modules
# ---------------------------------------------------------------------------

def _as_mats(action, n):
    out = []
    for m in action:
        a = np.asarray(m, dtype=DTYPE)
        if a.size == 0:
            a = a.reshape(n, n)
        out.append(a)
    return tuple(out)


class LeftModule:
    """Left module over ``algebra`` on ``F_p^dim`` given by action matrices."""

    def __init__(self, algebra: FqAlgebra, dim: int, action, name: str = ""):
        self.algebra = algebra
        self.dim = int(dim)
        mats = _as_mats(action, self.dim)
        if len(mats) != algebra.dim:
            raise DimensionError(f"{len(mats)} action matrices for an algebra of dim {algebra.dim}")
        for m in mats:
            if m.shape != (self.dim, self.dim):
                raise DimensionError(f"action matrix of shape {m.shape}, module dim {self.dim}")
        self.action = tuple(m % algebra.p for m in mats)
        self.name = name

    @property
    def field(self) -> PrimeField:
        return self.algebra.field

    def act(self, x) -> np.ndarray:
        """Matrix of the algebra element with coordinates ``x``."""
        x = np.asarray(x, dtype=DTYPE)
        out = np.zeros((self.dim, self.dim), dtype=DTYPE)
        for xi, m in zip(x, self.action):
            if xi:
                out = out + xi * m
        return out % self.algebra.p

    def key(self) -> tuple:
        return (self.dim,) + tuple(m.tobytes() for m in self.action)

    def sort_key(self) -> tuple:
        return (self.dim, tuple(tuple(m.reshape(-1).tolist()) for m in self.action))

    def __eq__(self, other):
        return (isinstance(other, LeftModule) and self.algebra == other.algebra
                and self.key() == other.key())

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<LeftModule{label} dim {self.dim} over {self.algebra!r}>"


def _check_representation(alg: FqAlgebra, mats, n, v: Validation, prefix: str):
    p = alg.p
    unit = sum((int(u) * m for u, m in zip(alg.unit, mats)), np.zeros((n, n), dtype=DTYPE)) % p
    if np.any(unit != np.eye(n, dtype=DTYPE)):
        v.add(f"{prefix}unit acts as identity")
    stack = np.stack(mats) if mats else np.zeros((0, n, n), dtype=DTYPE)
    for i in range(alg.dim):
        for j in range(alg.dim):
            lhs = (mats[i] @ mats[j]) % p
            rhs = np.tensordot(alg.constants[i, j], stack, axes=1) % p
            if np.any(lhs != rhs):
                v.add(f"{prefix}multiplicative", i, j)
                return


def validate_module(m: LeftModule) -> Validation:
    v = Validation()
    _check_representation(m.algebra, m.action, m.dim, v, "")
    return v


class Bimodule:
    """An ``(R, S)``-bimodule: left ``R``-action ``left`` and right ``S``-action ``right``.

    ``right[j]`` is the matrix of ``p -> p . s_j``.
    """

    def __init__(self, R: FqAlgebra, S: FqAlgebra, dim: int, left, right, name: str = ""):
        if R.p != S.p:
            raise DimensionError("left and right algebras live over different fields")
        self.left_module = LeftModule(R, dim, left, name)
        self.S = S
        mats = _as_mats(right, int(dim))
        if len(mats) != S.dim:
            raise DimensionError(f"{len(mats)} right action matrices for an algebra of dim {S.dim}")
        for m in mats:
            if m.shape != (int(dim), int(dim)):
                raise DimensionError(f"right action matrix of shape {m.shape}, module dim {dim}")
        self.right = tuple(m % S.p for m in mats)
        self.name = name

    @property
    def R(self) -> FqAlgebra:
        return self.left_module.algebra

    @property
    def dim(self) -> int:
        return self.left_module.dim

    @property
    def left(self):
        return self.left_module.action

    @property
    def field(self) -> PrimeField:
        return self.R.field

    def right_act(self, s) -> np.ndarray:
        s = np.asarray(s, dtype=DTYPE)
        out = np.zeros((self.dim, self.dim), dtype=DTYPE)
        for si, m in zip(s, self.right):
            if si:
                out = out + si * m
        return out % self.S.p

    def key(self) -> tuple:
        return self.left_module.key() + tuple(m.tobytes() for m in self.right)

    def __repr__(self):
        return f"<Bimodule dim {self.dim} over ({self.R!r}, {self.S!r})>"


def validate_bimodule(b: Bimodule) -> Validation:
    v = Validation()
    _check_representation(b.R, b.left, b.dim, v, "left: ")
    p, n, S = b.S.p, b.dim, b.S
    unit = sum((int(u) * m for u, m in zip(S.unit, b.right)), np.zeros((n, n), dtype=DTYPE)) % p
    if np.any(unit != np.eye(n, dtype=DTYPE)):
        v.add("right: unit acts as identity")
    stack = np.stack(b.right) if b.right else np.zeros((0, n, n), dtype=DTYPE)
    done = False
    for i in range(S.dim):
        for j in range(S.dim):
            # N(s_i s_j) = N(s_j) N(s_i)
            lhs = (b.right[j] @ b.right[i]) % p
            rhs = np.tensordot(S.constants[i, j], stack, axes=1) % p
            if np.any(lhs != rhs):
                v.add("right: reverses products", i, j)
                done = True
                break
        if done:
            break
    for i, L in enumerate(b.left):
        for j, N in enumerate(b.right):
            if np.any((L @ N - N @ L) % p):
                v.add("actions commute", i, j)
                return v
    return v


@dataclass
class ModuleMap:
    source: LeftModule
    target: LeftModule
    matrix: np.ndarray

    def __post_init__(self):
        self.matrix = np.asarray(self.matrix, dtype=DTYPE).reshape(self.target.dim, self.source.dim)
        self.matrix = self.matrix % self.source.algebra.p

    @property
    def field(self) -> PrimeField:
        return self.source.field

    def is_injective(self) -> bool:
        return self.field.is_injective(self.matrix)

    def is_surjective(self) -> bool:
        return self.field.is_surjective(self.matrix)

    def is_iso(self) -> bool:
        return self.field.is_invertible(self.matrix)

    def then(self, other: "ModuleMap") -> "ModuleMap":
        """``other`` after ``self``."""
        return ModuleMap(self.source, other.target, self.field.mul(other.matrix, self.matrix))


def validate_map(f: ModuleMap) -> Validation:
    v = Validation()
    if f.source.algebra != f.target.algebra:
        v.add("same algebra")
        return v
    p = f.source.algebra.p
    for i, (a, b) in enumerate(zip(f.source.action, f.target.action)):
        if np.any((f.matrix @ a - b @ f.matrix) % p):
            v.add("intertwines", i)
            break
    return v


def identity_map(m: LeftModule) -> ModuleMap:
    return ModuleMap(m, m, np.eye(m.dim, dtype=DTYPE))


def zero_module(alg: FqAlgebra) -> LeftModule:
    return LeftModule(alg, 0, [np.zeros((0, 0), dtype=DTYPE)] * alg.dim, name="0")


def regular_module(alg: FqAlgebra) -> LeftModule:
    return LeftModule(alg, alg.dim, [alg.left_mult_matrix(alg.basis_vector(i))
                                     for i in range(alg.dim)], name="regular")


def regular_bimodule(alg: FqAlgebra) -> Bimodule:
    """``R`` as an ``(R, R)``-bimodule."""
    return Bimodule(alg, alg, alg.dim,
                    [alg.left_mult_matrix(alg.basis_vector(i)) for i in range(alg.dim)],
                    [alg.right_mult_matrix(alg.basis_vector(i)) for i in range(alg.dim)],
                    name="regular")


def dual_module(alg: FqAlgebra) -> LeftModule:
    """Linear dual of the right regular module: ``(r phi)(x) = phi(x r)``."""
    c = alg.constants
    mats = [c[:, i, :].copy() for i in range(alg.dim)]
    return LeftModule(alg, alg.dim, mats, name="D(R)")


# ---------------------------------------------------------------------------
# Hom, End, tensor
# ---------------------------------------------------------------------------

def _hom_equations(F: PrimeField, src_action, tgt_action, n_src, n_tgt):
    rows = []
    for a, b in zip(src_action, tgt_action):
        # vec(X a) - vec(b X), column-major vec
        rows.append((np.kron(a.T, np.eye(n_tgt, dtype=DTYPE))
                     - np.kron(np.eye(n_src, dtype=DTYPE), b)) % F.p)
    if not rows:
        return np.zeros((0, n_src * n_tgt), dtype=DTYPE)
    return np.vstack(rows)


def hom_basis(P: LeftModule, N: LeftModule) -> list:
    """Matrices spanning ``Hom_R(P, N)``."""
    if P.algebra != N.algebra:
        raise StructureError("modules over different algebras")
    F = P.field
    n, m = P.dim, N.dim
    if n == 0 or m == 0:
        return []
    ker = F.kernel_basis(_hom_equations(F, P.action, N.action, n, m))
    return [ker[:, k].reshape(m, n, order="F") for k in range(ker.shape[1])]


def hom_space(P: LeftModule, N: LeftModule) -> list:
    """Basis of ``Hom_R(P, N)`` as module maps; its length is the dimension."""
    return [ModuleMap(P, N, h) for h in hom_basis(P, N)]


def hom_dim(P: LeftModule, N: LeftModule) -> int:
    return len(hom_basis(P, N))


def endomorphism_algebra(P: LeftModule):
    """``(S, bimodule)`` with ``S = End_R(P)``; ``S`` acts on ``P`` from the right.

    The basis of ``S`` is :func:`hom_basis` of ``(P, P)`` and ``f g`` is
    "first f, then g".
    """
    F = P.field
    basis = hom_basis(P, P)
    d = len(basis)
    c = np.zeros((d, d, d), dtype=DTYPE)
    for a, fa in enumerate(basis):
        for b, fb in enumerate(basis):
            coords = F.coordinates(basis, F.mul(fb, fa))
            if coords is None:
                raise StructureError("endomorphisms not closed under composition")
            c[a, b] = coords
    u = F.coordinates(basis, np.eye(P.dim, dtype=DTYPE)) if d else np.zeros(0, dtype=DTYPE)
    S = FqAlgebra(F, c.reshape(d, d, d), u, name=f"End({P.name or 'P'})")
    return S, Bimodule(P.algebra, S, P.dim, P.action, basis, name=P.name)


@dataclass
class TensorProduct:
    """``P (x)_S X`` with its quotient data from the plain tensor space."""

    module: LeftModule
    proj: np.ndarray
    sect: np.ndarray
    relations: np.ndarray


def tensor_over(P: Bimodule, X: LeftModule) -> TensorProduct:
    if P.S != X.algebra:
        raise StructureError("right algebra of the bimodule differs from the module's algebra")
    F = P.field
    n, m = P.dim, X.dim
    total = n * m
    rels = [(F.kron(N, np.eye(m, dtype=DTYPE)) - F.kron(np.eye(n, dtype=DTYPE), M)) % F.p
            for N, M in zip(P.right, X.action)]
    W = np.hstack(rels) if rels and total else np.zeros((total, 0), dtype=DTYPE)
    W = F.image_basis(W) if W.shape[1] else W
    proj, sect = F.quotient_basis(total, W)
    t = proj.shape[0]
    mats = []
    for L in P.left:
        big = F.kron(L, np.eye(m, dtype=DTYPE))
        if W.shape[1] and not F.in_span(W, F.mul(big, W)):
            raise StructureError("relation subspace is not stable under the left action")
        mats.append(F.mul(proj, big, sect) if t else np.zeros((0, 0), dtype=DTYPE))
    return TensorProduct(LeftModule(P.R, t, mats), proj, sect, W)


@dataclass
class HomModule:
    """``Hom_R(P, N)`` as a left ``S``-module, with the underlying matrices."""

    module: LeftModule
    basis: list


def hom_as_left_S_module(P: Bimodule, N: LeftModule) -> HomModule:
    """``(s f)`` is ``p -> f(p . s)``, matrix ``F @ N_s``."""
    F = P.field
    basis = hom_basis(P.left_module, N)
    h = len(basis)
    mats = []
    for Ns in P.right:
        A = np.zeros((h, h), dtype=DTYPE)
        for k, Hk in enumerate(basis):
            coords = F.coordinates(basis, F.mul(Hk, Ns))
            if coords is None:
                raise StructureError("Hom space not stable under the S-action")
            A[:, k] = coords
        mats.append(A)
    return HomModule(LeftModule(P.S, h, mats), basis)


# ---------------------------------------------------------------------------
# sums, submodules, quotients
# ---------------------------------------------------------------------------

def direct_sum(Ms) -> LeftModule:
    return direct_sum_maps(Ms)[0]


def direct_sum_maps(Ms):
    """``(sum, injections, projections)`` for a nonempty list of modules."""
    Ms = list(Ms)
    if not Ms:
        raise ValueError("direct sum of an empty list needs an algebra; use zero_module")
    alg = Ms[0].algebra
    if any(M.algebra != alg for M in Ms):
        raise StructureError("direct sum of modules over different algebras")
    total = sum(M.dim for M in Ms)
    mats = []
    for i in range(alg.dim):
        blk = np.zeros((total, total), dtype=DTYPE)
        o = 0
        for M in Ms:
            blk[o:o + M.dim, o:o + M.dim] = M.action[i]
            o += M.dim
        mats.append(blk)
    S = LeftModule(alg, total, mats)
    inj, prj = [], []
    o = 0
    for M in Ms:
        e = np.zeros((total, M.dim), dtype=DTYPE)
        e[o:o + M.dim] = np.eye(M.dim, dtype=DTYPE)
        inj.append(ModuleMap(M, S, e))
        prj.append(ModuleMap(S, M, e.T.copy()))
        o += M.dim
    return S, inj, prj


def power(M: LeftModule, k: int) -> LeftModule:
    return direct_sum([M] * k) if k else zero_module(M.algebra)


def _columns(x, n: int) -> np.ndarray:
    a = np.asarray(x, dtype=DTYPE)
    if a.size == 0:
        return np.zeros((n, 0), dtype=DTYPE)
    return a.reshape(n, -1)


def span_closure(M: LeftModule, vectors) -> np.ndarray:
    """Basis (columns) of the smallest submodule containing the given columns."""
    F = M.field
    W = _columns(vectors, M.dim) % F.p
    W = F.image_basis(W) if W.shape[1] else W
    while True:
        grown = np.hstack([W] + [F.mul(L, W) for L in M.action]) if W.shape[1] else W
        nxt = F.image_basis(grown) if grown.shape[1] else grown
        if nxt.shape[1] == W.shape[1]:
            return W
        W = nxt


def restrict_action(M: LeftModule, W) -> LeftModule:
    F = M.field
    k = W.shape[1]
    mats = []
    for L in M.action:
        a = F.solve(W, F.mul(L, W)) if k else np.zeros((0, 0), dtype=DTYPE)
        if a is None:
            raise StructureError("subspace is not a submodule")
        mats.append(a)
    return LeftModule(M.algebra, k, mats)


def submodule(M: LeftModule, generators):
    """``(K, inclusion)`` for the submodule generated by the columns of ``generators``."""
    W = span_closure(M, generators)
    K = restrict_action(M, W)
    return K, ModuleMap(K, M, W)


def quotient(M: LeftModule, sub):
    """``(M/K, projection)``; ``sub`` is an inclusion map or a matrix of spanning columns."""
    F = M.field
    W = _columns(sub.matrix if isinstance(sub, ModuleMap) else sub, M.dim)
    W = span_closure(M, W)
    proj, sect = F.quotient_basis(M.dim, W)
    t = proj.shape[0]
    mats = [F.mul(proj, L, sect) if t else np.zeros((0, 0), dtype=DTYPE) for L in M.action]
    Q = LeftModule(M.algebra, t, mats)
    return Q, ModuleMap(M, Q, proj.reshape(t, M.dim))


def kernel(f: ModuleMap):
    """``(K, inclusion)`` for the kernel of a module map."""
    F = f.field
    if f.source.dim == 0:
        K = zero_module(f.source.algebra)
        return K, ModuleMap(K, f.source, np.zeros((0, 0), dtype=DTYPE))
    W = F.kernel_basis(f.matrix) if f.target.dim else np.eye(f.source.dim, dtype=DTYPE)
    K = restrict_action(f.source, W)
    return K, ModuleMap(K, f.source, W)


def cokernel(f: ModuleMap):
    """``(C, projection)`` for the cokernel of a module map."""
    return quotient(f.target, f.matrix)


def all_submodules(M: LeftModule, budget: int = 4096) -> list:
    """Every submodule of ``M`` as a basis matrix, smallest first."""
    F = M.field
    vecs = F.all_vectors(M.dim)

    def canon(W):
        if W.shape[1] == 0:
            return (0,)
        red, r, _ = F.rref(W.T)
        return (r, red[:r].tobytes())

    start = np.zeros((M.dim, 0), dtype=DTYPE)
    seen = {canon(start): start}
    queue = deque([start])
    while queue:
        W = queue.popleft()
        for v in vecs:
            if not v.any() or (W.shape[1] and F.in_span(W, v)):
                continue
            nxt = span_closure(M, np.hstack([W, v.reshape(-1, 1)]))
            key = canon(nxt)
            if key not in seen:
                if len(seen) >= budget:
                    raise BudgetError(f"more than {budget} submodules")
                seen[key] = nxt
                queue.append(nxt)
    return sorted(seen.values(), key=lambda W: (W.shape[1], canon(W)))


# ---------------------------------------------------------------------------
# isomorphism
# ---------------------------------------------------------------------------

@dataclass
class IsoResult:
    status: str  # "isomorphic" | "not-isomorphic" | "undecided"
    witness: ModuleMap | None = None

    def __bool__(self):
        return self.status == "isomorphic"


def _rank_profile(M: LeftModule) -> tuple:
    F = M.field
    return tuple(F.rank(L) if M.dim else 0 for L in M.action)


def module_invariants(M: LeftModule) -> tuple:
    """Cheap isomorphism invariants: dimension, action ranks, dimension of End."""
    return (M.dim, _rank_profile(M), hom_dim(M, M))


def are_isomorphic(M: LeftModule, N: LeftModule, budget: int = DEFAULT_ISO_BUDGET,
                   seed: int = 0, tries: int = 64) -> IsoResult:
    """Search ``Hom(M, N)`` for an invertible element.

    Seeded random combinations are tried first, then the full span when it
    has at most ``budget`` elements; otherwise the answer is "undecided".
    """
    if M.algebra != N.algebra:
        raise StructureError("modules over different algebras")
    if M.dim != N.dim or _rank_profile(M) != _rank_profile(N):
        return IsoResult("not-isomorphic")
    n = M.dim
    if n == 0:
        return IsoResult("isomorphic", ModuleMap(M, N, np.zeros((0, 0), dtype=DTYPE)))
    F = M.field
    p = F.p
    basis = hom_basis(M, N)
    h = len(basis)
    if h == 0 or h != hom_dim(M, M):
        return IsoResult("not-isomorphic")
    stack = np.stack(basis).reshape(h, n * n)
    rng = np.random.default_rng(seed)
    coeffs = rng.integers(0, p, size=(tries, h))
    mats = (coeffs @ stack % p).reshape(-1, n, n)
    mask = F.invertible_mask(mats)
    if mask.any():
        return IsoResult("isomorphic", ModuleMap(M, N, mats[int(np.argmax(mask))]))
    if p ** h > budget:
        return IsoResult("undecided")
    chunk = 4096
    grid = itertools.product(range(p), repeat=h)
    while True:
        block = np.array(list(itertools.islice(grid, chunk)), dtype=DTYPE)
        if block.size == 0:
            return IsoResult("not-isomorphic")
        mats = (block @ stack % p).reshape(-1, n, n)
        mask = F.invertible_mask(mats)
        if mask.any():
            return IsoResult("isomorphic", ModuleMap(M, N, mats[int(np.argmax(mask))]))


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------

def _generated_span(alg: FqAlgebra, gens) -> int:
    F = alg.field
    basis = [alg.unit]
    queue = deque([alg.unit])
    while queue:
        b = queue.popleft()
        for g in gens:
            e = alg.mult(g, b)
            if not F.in_span(np.stack(basis, axis=1), e):
                basis.append(e)
                queue.append(e)
    return len(basis)


def algebra_generators(alg: FqAlgebra) -> list:
    """Basis vectors generating ``alg`` as a unital algebra, chosen greedily."""
    gens = []
    cur = _generated_span(alg, gens)
    while cur < alg.dim:
        best, best_i = cur, None
        for i in range(alg.dim):
            size = _generated_span(alg, gens + [alg.basis_vector(i)])
            if size > best:
                best, best_i = size, i
        gens.append(alg.basis_vector(best_i))
        cur = best
    return gens


@dataclass
class _Plan:
    """Words in a prefix of the generators: new words and the linear relations."""

    words: list        # (generator, parent word) for words 1.., word 0 is the unit
    relations: list    # (generator, parent word, coefficients over words)
    elements: np.ndarray


def _relation_plan(alg: FqAlgebra, gens) -> _Plan:
    F = alg.field
    elems = [alg.unit]
    words, rels = [], []
    queue = deque([0])
    while queue:
        w = queue.popleft()
        for j, g in enumerate(gens):
            e = alg.mult(g, elems[w])
            coords = F.solve(np.stack(elems, axis=1), e)
            if coords is None:
                elems.append(e)
                words.append((j, w))
                queue.append(len(elems) - 1)
            else:
                rels.append((j, w, coords))
    return _Plan(words, rels, np.stack(elems, axis=1))


def _eval_words(plan: _Plan, gen_mats, n, p):
    """Word matrices for a batch: ``gen_mats[j]`` has shape ``(B, n, n)`` or ``(n, n)``."""
    B = max(g.shape[0] for g in gen_mats if g.ndim == 3) if any(g.ndim == 3 for g in gen_mats) else 1
    eye = np.broadcast_to(np.eye(n, dtype=DTYPE), (B, n, n))
    mats = [eye]
    for j, w in plan.words:
        mats.append(np.matmul(gen_mats[j], mats[w]) % p)
    return mats


def _filter(plan: _Plan, fixed, cand, n, p):
    """Indices of candidate matrices for the last generator satisfying the plan."""
    idx = np.arange(cand.shape[0])
    gen_mats = list(fixed) + [cand]
    mats = None
    for j, w, coeffs in plan.relations:
        if mats is None:
            mats = _eval_words(plan, gen_mats, n, p)
        lhs = np.matmul(gen_mats[j], mats[w]) % p
        rhs = sum(int(c) * m for c, m in zip(coeffs, mats) if c) % p \
            if np.any(coeffs) else np.zeros_like(lhs)
        ok = ~((lhs - rhs) % p).reshape(lhs.shape[0], -1).any(axis=1)
        if not ok.all():
            idx = idx[ok]
            gen_mats[-1] = gen_mats[-1][ok]
            mats = None
            if idx.size == 0:
                break
    return idx


def _conjugation_generators(F: PrimeField, n: int) -> list:
    gens = []
    for i in range(n):
        for j in range(n):
            if i != j:
                g = np.eye(n, dtype=DTYPE)
                g[i, j] = 1
                gens.append(g)
    if F.p > 2 and n:
        root = next(a for a in range(2, F.p)
                    if all(pow(a, (F.p - 1) // q, F.p) != 1
                           for q in range(2, F.p) if (F.p - 1) % q == 0 and all(q % r for r in range(2, q))))
        g = np.eye(n, dtype=DTYPE)
        g[0, 0] = root
        gens.append(g)
    return [(g, F.inverse(g)) for g in gens]


def _orbit_representatives(F: PrimeField, cand: np.ndarray) -> np.ndarray:
    """One matrix per conjugacy orbit among ``cand`` (a conjugation-stable set)."""
    if cand.shape[0] == 0:
        return cand
    n = cand.shape[1]
    p = F.p
    gens = _conjugation_generators(F, n)
    index = {m.tobytes(): k for k, m in enumerate(cand)}
    seen = np.zeros(cand.shape[0], dtype=bool)
    reps = []
    for k in range(cand.shape[0]):
        if seen[k]:
            continue
        reps.append(k)
        seen[k] = True
        queue = deque([cand[k]])
        while queue:
            a = queue.popleft()
            for g, gi in gens:
                b = (g @ a @ gi) % p
                t = index.get(b.tobytes())
                if t is not None and not seen[t]:
                    seen[t] = True
                    queue.append(cand[t])
    return cand[reps]


@dataclass
class ModuleWindow:
    algebra: FqAlgebra
    max_dim: int
    modules: list
    complete: bool = True
    examined: int = 0
    undecided_pairs: int = 0
    notes: list = field(default_factory=list)


def _all_matrices(p: int, n: int) -> np.ndarray:
    grid = np.indices((p,) * (n * n)).reshape(n * n, -1).T
    return grid.reshape(-1, n, n).astype(DTYPE)


def _modules_of_dim(alg: FqAlgebra, n: int, gens, plans, budget: int, window: ModuleWindow):
    F = alg.field
    p = F.p
    if n == 0:
        return [zero_module(alg)]
    count = p ** (n * n)
    if count > budget:
        window.complete = False
        window.notes.append(f"dim {n}: {count} candidate matrices per generator exceed budget")
        return []
    allm = _all_matrices(p, n)
    full = plans[-1]
    basis_coords = [F.solve(full.elements, alg.basis_vector(i)) for i in range(alg.dim)]
    found = []
    window.examined += count
    first = allm[_filter(plans[0], [], allm, n, p)]
    first = _orbit_representatives(F, first)

    def rec(k, fixed):
        if k == len(gens):
            mats = _eval_words(full, [m[None] for m in fixed], n, p)
            action = []
            for coords in basis_coords:
                acc = np.zeros((n, n), dtype=DTYPE)
                for c, m in zip(coords, mats):
                    if c:
                        acc = acc + int(c) * m[0]
                action.append(acc % p)
            found.append(LeftModule(alg, n, action))
            return
        window.examined += count
        if window.examined > budget:
            raise BudgetError("enumeration budget exhausted")
        ok = _filter(plans[k], fixed, allm, n, p)
        for t in ok:
            rec(k + 1, fixed + [allm[t]])

    for a in first:
        rec(1, [a])
    return found


def enumerate_modules(alg: FqAlgebra, max_dim: int, budget: int = DEFAULT_ENUM_BUDGET,
                      iso_budget: int = DEFAULT_ISO_BUDGET) -> ModuleWindow:
    """All modules of dimension ``<= max_dim`` up to isomorphism, smallest first."""
    window = ModuleWindow(alg, max_dim, [])
    gens = algebra_generators(alg)
    if not gens:
        # spanned by the unit: modules are vector spaces
        scale = alg.field.inv_scalar(alg.unit[0])
        window.modules = [LeftModule(alg, n, [np.eye(n, dtype=DTYPE) * scale % alg.p])
                          for n in range(max_dim + 1)]
        return window
    plans = [_relation_plan(alg, gens[:k + 1]) for k in range(len(gens))]
    reps = []
    for n in range(max_dim + 1):
        try:
            raw = _modules_of_dim(alg, n, gens, plans, budget, window)
        except BudgetError as exc:
            window.complete = False
            window.notes.append(f"dim {n}: {exc}")
            break
        buckets: dict = {}
        for M in sorted(raw, key=LeftModule.sort_key):
            inv = module_invariants(M)
            bucket = buckets.setdefault(inv, [])
            duplicate = False
            for N in bucket:
                res = are_isomorphic(N, M, iso_budget)
                if res.status == "isomorphic":
                    duplicate = True
                    break
                if res.status == "undecided":
                    window.undecided_pairs += 1
            if not duplicate:
                bucket.append(M)
        for inv in sorted(buckets):
            reps.extend(buckets[inv])
    window.modules = sorted(reps, key=LeftModule.sort_key)
    return window


def module_from_matrices(alg: FqAlgebra, action, name: str = "") -> LeftModule:
    mats = _as_mats(action, np.asarray(action[0]).shape[0] if len(action) else 0)
    return LeftModule(alg, mats[0].shape[0] if mats else 0, mats, name)


def simple_dual_numbers_module(p: int = 2) -> LeftModule:
    """The one-dimensional module of ``F_p[x]/(x^2)`` on which ``x`` acts by 0."""
    return LeftModule(dual_numbers(p), 1, [[[1]], [[0]]], name="simple")
