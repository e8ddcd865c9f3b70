"""Exact dense linear algebra over prime fields F_p.

Matrices are plain 2-d numpy integer arrays with entries in ``0..p-1``.
Vectors are columns: a matrix ``M`` acts as ``v -> M @ v``.  Pivoting
always takes the first nonzero entry so every basis returned here is
reproducible across runs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

DTYPE = np.int64


class DimensionError(ValueError):
    """Shapes of the operands do not fit together."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


@dataclass(frozen=True)
class PrimeField:
    """The field with ``p`` elements; ``p`` must be prime."""

    p: int

    def __post_init__(self):
        if not isinstance(self.p, (int, np.integer)) or not _is_prime(int(self.p)):
            raise ValueError(f"modulus {self.p!r} is not prime")

    # -- construction ------------------------------------------------
    def matrix(self, rows) -> np.ndarray:
        a = np.array(rows, dtype=DTYPE)
        if a.ndim == 1:
            a = a.reshape(1, -1) if a.size else a.reshape(0, 0)
        return a % self.p

    def zeros(self, r: int, c: int) -> np.ndarray:
        return np.zeros((r, c), dtype=DTYPE)

    def eye(self, n: int) -> np.ndarray:
        return np.eye(n, dtype=DTYPE)

    def reduce(self, a) -> np.ndarray:
        return np.asarray(a, dtype=DTYPE) % self.p

    def inv_scalar(self, a: int) -> int:
        a = int(a) % self.p
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(a, self.p - 2, self.p)

    # -- arithmetic ----------------------------------------------------
    def mul(self, *mats) -> np.ndarray:
        out = mats[0]
        for m in mats[1:]:
            if out.shape[1] != m.shape[0]:
                raise DimensionError(f"cannot multiply {out.shape} by {m.shape}")
            out = (out @ m) % self.p
        return out

    def add(self, a, b) -> np.ndarray:
        if a.shape != b.shape:
            raise DimensionError(f"cannot add {a.shape} and {b.shape}")
        return (a + b) % self.p

    def sub(self, a, b) -> np.ndarray:
        if a.shape != b.shape:
            raise DimensionError(f"cannot subtract {a.shape} and {b.shape}")
        return (a - b) % self.p

    # -- elimination ---------------------------------------------------
    def rref(self, m) -> tuple[np.ndarray, int, tuple[int, ...]]:
        """Reduced row echelon form, rank and pivot columns."""
        p = self.p
        a = np.array(m, dtype=DTYPE) % p
        if a.ndim != 2:
            raise DimensionError("rref expects a 2-d array")
        rows, cols = a.shape
        pivots = []
        r = 0
        for c in range(cols):
            if r == rows:
                break
            nz = np.nonzero(a[r:, c])[0]
            if nz.size == 0:
                continue
            k = r + int(nz[0])
            if k != r:
                a[[r, k]] = a[[k, r]]
            a[r] = (a[r] * self.inv_scalar(a[r, c])) % p
            col = a[:, c].copy()
            col[r] = 0
            nzr = np.nonzero(col)[0]
            if nzr.size:
                a[nzr] = (a[nzr] - np.outer(col[nzr], a[r])) % p
            pivots.append(c)
            r += 1
        return a, r, tuple(pivots)

    def rank(self, m) -> int:
        m = np.asarray(m)
        if m.size == 0:
            return 0
        return self.rref(m)[1]

    def kernel_basis(self, m) -> np.ndarray:
        """Columns spanning ``{x : m x = 0}``."""
        m = np.asarray(m, dtype=DTYPE)
        rows, cols = m.shape
        if cols == 0:
            return self.zeros(0, 0)
        if rows == 0:
            return self.eye(cols)
        red, rank, pivots = self.rref(m)
        free = [c for c in range(cols) if c not in pivots]
        basis = self.zeros(cols, len(free))
        for j, fc in enumerate(free):
            basis[fc, j] = 1
            for i, pc in enumerate(pivots):
                basis[pc, j] = (-red[i, fc]) % self.p
        return basis

    def image_basis(self, m) -> np.ndarray:
        """Pivot columns of ``m``: a basis of its column space."""
        m = np.asarray(m, dtype=DTYPE)
        if m.size == 0:
            return self.zeros(m.shape[0], 0)
        _, _, pivots = self.rref(m)
        return m[:, list(pivots)] % self.p

    def solve(self, m, b) -> np.ndarray | None:
        """One solution of ``m x = b`` (``b`` may have several columns), or None."""
        m = np.asarray(m, dtype=DTYPE)
        b = np.asarray(b, dtype=DTYPE)
        vec = b.ndim == 1
        if vec:
            b = b.reshape(-1, 1)
        rows, cols = m.shape
        if b.shape[0] != rows:
            raise DimensionError(f"rhs has {b.shape[0]} rows, matrix has {rows}")
        if rows == 0:
            x = self.zeros(cols, b.shape[1])
            return x[:, 0] if vec else x
        red, rank, pivots = self.rref(np.hstack([m, b]))
        if any(pc >= cols for pc in pivots):
            return None
        x = self.zeros(cols, b.shape[1])
        for i, pc in enumerate(pivots):
            x[pc] = red[i, cols:]
        return x[:, 0] if vec else x

    def inverse(self, m) -> np.ndarray | None:
        m = np.asarray(m, dtype=DTYPE)
        n, k = m.shape
        if n != k:
            return None
        if n == 0:
            return self.zeros(0, 0)
        red, rank, pivots = self.rref(np.hstack([m, self.eye(n)]))
        if rank < n or pivots[n - 1] >= n:
            return None
        return red[:, n:]

    def is_injective(self, m) -> bool:
        m = np.asarray(m)
        return self.rank(m) == m.shape[1]

    def is_surjective(self, m) -> bool:
        m = np.asarray(m)
        return self.rank(m) == m.shape[0]

    def is_invertible(self, m) -> bool:
        m = np.asarray(m)
        return m.shape[0] == m.shape[1] and self.rank(m) == m.shape[0]

    def in_span(self, basis, v) -> bool:
        return self.solve(basis, v) is not None

    # -- constructions -------------------------------------------------
    def quotient_basis(self, n: int, w) -> tuple[np.ndarray, np.ndarray]:
        """Projection ``F_p^n -> F_p^n / span(w)`` and a section of it.

        Returns ``(proj, sect)`` with ``proj @ sect == I`` and
        ``ker(proj) == span(w)``.  The complement is spanned by the standard
        basis vectors not already in the span, taken in index order.
        """
        w = np.asarray(w, dtype=DTYPE).reshape(n, -1) if np.size(w) else self.zeros(n, 0)
        wb = self.image_basis(w) if w.shape[1] else w
        comp = []
        cur = wb
        for i in range(n):
            e = self.zeros(n, 1)
            e[i, 0] = 1
            trial = np.hstack([cur, e])
            if self.rank(trial) > cur.shape[1]:
                comp.append(i)
                cur = trial
        sect = self.zeros(n, len(comp))
        for j, i in enumerate(comp):
            sect[i, j] = 1
        if n == 0:
            return self.zeros(0, 0), self.zeros(0, 0)
        full_inv = self.inverse(cur)
        proj = full_inv[wb.shape[1]:, :]
        return proj, sect

    def kron(self, a, b) -> np.ndarray:
        return np.kron(np.asarray(a, dtype=DTYPE), np.asarray(b, dtype=DTYPE)) % self.p

    def direct_sum(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=DTYPE)
        b = np.asarray(b, dtype=DTYPE)
        out = self.zeros(a.shape[0] + b.shape[0], a.shape[1] + b.shape[1])
        out[: a.shape[0], : a.shape[1]] = a
        out[a.shape[0]:, a.shape[1]:] = b
        return out

    def coordinates(self, basis_mats, target) -> np.ndarray | None:
        """Coefficients expressing ``target`` in the span of equal-shape matrices."""
        if not basis_mats:
            return np.zeros(0, dtype=DTYPE) if not np.any(target % self.p) else None
        cols = np.stack([np.asarray(b).reshape(-1, order="F") for b in basis_mats], axis=1)
        return self.solve(cols, np.asarray(target).reshape(-1, order="F"))

    def invertible_mask(self, mats) -> np.ndarray:
        """Boolean mask of which square matrices in a ``(B, n, n)`` stack are invertible."""
        p = self.p
        a = np.array(mats, dtype=DTYPE) % p
        b, n, _ = a.shape
        ok = np.ones(b, dtype=bool)
        inv = np.zeros(p, dtype=DTYPE)
        for x in range(1, p):
            inv[x] = pow(x, p - 2, p)
        rows = np.arange(b)
        for c in range(n):
            nz = a[:, c:, c] != 0
            has = nz.any(axis=1)
            ok &= has
            piv = c + np.argmax(nz, axis=1)
            top = a[rows, c].copy()
            a[rows, c] = a[rows, piv]
            a[rows, piv] = top
            scale = inv[a[:, c, c]]
            a[:, c] = (a[:, c] * scale[:, None]) % p
            factors = a[:, :, c].copy()
            factors[:, c] = 0
            a = (a - factors[:, :, None] * a[:, c][:, None, :]) % p
        return ok

    def all_vectors(self, n: int) -> np.ndarray:
        """Every vector of F_p^n as the rows of a ``(p**n, n)`` array."""
        if n == 0:
            return np.zeros((1, 0), dtype=DTYPE)
        grids = np.indices((self.p,) * n).reshape(n, -1).T
        return grids.astype(DTYPE)


def kron(field: PrimeField, a, b):
    return field.kron(a, b)


def direct_sum(field: PrimeField, a, b):
    return field.direct_sum(a, b)
