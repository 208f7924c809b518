"""Exact dense linear algebra over a prime field.

Matrices are plain ``numpy`` integer arrays whose entries are kept in
``[0, p)``.  Every routine returns fresh arrays; inputs are never modified.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from sympy import isprime

DEFAULT_PRIME = 101

# Largest modulus for which p**2 * (inner dimension) stays inside int64 at desk scale.
MAX_PRIME = 1 << 24


@dataclass(frozen=True)
class PrimeField:
    """The field F_p together with matrix routines over it."""

    p: int = DEFAULT_PRIME

    def __post_init__(self):
        if not isinstance(self.p, (int, np.integer)) or self.p < 2 or not isprime(int(self.p)):
            raise ValueError(f"field modulus must be prime, got {self.p!r}")
        if self.p >= MAX_PRIME:
            raise ValueError(f"field modulus {self.p} too large (limit {MAX_PRIME})")

    # -- scalars -------------------------------------------------------------

    def inv(self, a: int) -> int:
        a = int(a) % self.p
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(a, -1, self.p)

    def elem(self, a: int) -> int:
        return int(a) % self.p

    # -- construction --------------------------------------------------------

    def matrix(self, rows, shape: Optional[tuple] = None) -> np.ndarray:
        m = np.array(rows, dtype=np.int64)
        if shape is not None:
            m = m.reshape(shape)
        if m.ndim == 1:
            m = m.reshape(1, -1) if m.size else np.zeros((0, 0), dtype=np.int64)
        return m % self.p

    def zeros(self, rows: int, cols: int) -> np.ndarray:
        return np.zeros((rows, cols), dtype=np.int64)

    def eye(self, n: int) -> np.ndarray:
        return np.eye(n, dtype=np.int64)

    def random(self, rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
        return rng.integers(0, self.p, size=(rows, cols), dtype=np.int64)

    # -- arithmetic ----------------------------------------------------------

    def mul(self, *ms: np.ndarray) -> np.ndarray:
        out = ms[0]
        for m in ms[1:]:
            out = (out @ m) % self.p
        return out % self.p

    def add(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return (a + b) % self.p

    def sub(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return (a - b) % self.p

    def scale(self, c: int, a: np.ndarray) -> np.ndarray:
        return (int(c) % self.p * a) % self.p

    def combine(self, coeffs: Sequence[int], mats: Sequence[np.ndarray]) -> np.ndarray:
        """Linear combination ``sum c_i * M_i``."""
        coeffs = np.asarray(coeffs, dtype=np.int64) % self.p
        stack = np.asarray(mats, dtype=np.int64)
        return np.tensordot(coeffs, stack, axes=1) % self.p

    # -- elimination ---------------------------------------------------------

    def rref(self, m: np.ndarray) -> tuple[np.ndarray, list[int]]:
        """Reduced row-echelon form and the list of pivot columns.

        Pivoting takes the first row with a nonzero entry in the current
        column, so the output is deterministic.
        """
        p = self.p
        a = np.array(m, dtype=np.int64) % p
        if a.ndim != 2:
            raise ValueError("rref expects a 2-d matrix")
        nrows, ncols = a.shape
        pivots: list[int] = []
        r = 0
        for c in range(ncols):
            if r == nrows:
                break
            nz = np.flatnonzero(a[r:, c])
            if nz.size == 0:
                continue
            k = r + int(nz[0])
            if k != r:
                a[[r, k]] = a[[k, r]]
            a[r] = (a[r] * self.inv(a[r, c])) % p
            col = a[:, c].copy()
            col[r] = 0
            hit = np.flatnonzero(col)
            if hit.size:
                a[hit] = (a[hit] - np.outer(col[hit], a[r])) % p
            pivots.append(c)
            r += 1
        return a, pivots

    def rank(self, m: np.ndarray) -> int:
        m = np.asarray(m)
        if m.size == 0:
            return 0
        return len(self.rref(m)[1])

    def kernel_basis(self, m: np.ndarray) -> np.ndarray:
        """Rows spanning the right null space ``{x : m @ x = 0}``."""
        m = np.asarray(m, dtype=np.int64)
        ncols = m.shape[1]
        if m.shape[0] == 0:
            return self.eye(ncols)
        r, pivots = self.rref(m)
        free = [c for c in range(ncols) if c not in set(pivots)]
        basis = np.zeros((len(free), ncols), dtype=np.int64)
        for i, f in enumerate(free):
            basis[i, f] = 1
            for row, pc in enumerate(pivots):
                basis[i, pc] = (-r[row, f]) % self.p
        return basis

    def solve(self, m: np.ndarray, rhs: np.ndarray) -> Optional[np.ndarray]:
        """Some ``x`` with ``m @ x == rhs``, or ``None`` when inconsistent."""
        m = np.asarray(m, dtype=np.int64)
        rhs = np.asarray(rhs, dtype=np.int64)
        vector = rhs.ndim == 1
        if vector:
            rhs = rhs.reshape(-1, 1)
        if m.shape[0] != rhs.shape[0]:
            raise ValueError(f"solve: {m.shape[0]} equations but right-hand side has {rhs.shape[0]} rows")
        ncols = m.shape[1]
        k = rhs.shape[1]
        if m.shape[0] == 0:
            x = self.zeros(ncols, k)
            return x.ravel() if vector else x
        r, pivots = self.rref(np.hstack([m, rhs]))
        if any(pc >= ncols for pc in pivots):
            return None
        x = self.zeros(ncols, k)
        for row, pc in enumerate(pivots):
            x[pc] = r[row, ncols:]
        return x.ravel() if vector else x

    def inverse(self, m: np.ndarray) -> np.ndarray:
        n = m.shape[0]
        if m.shape != (n, n):
            raise ValueError("inverse of a non-square matrix")
        x = self.solve(m, self.eye(n))
        if x is None:
            raise ValueError("matrix is singular")
        return x

    def row_space(self, m: np.ndarray) -> np.ndarray:
        """Reduced basis (rows) of the row space."""
        m = np.asarray(m, dtype=np.int64)
        if m.size == 0:
            return np.zeros((0, m.shape[1] if m.ndim == 2 else 0), dtype=np.int64)
        r, pivots = self.rref(m)
        return r[: len(pivots)]

    def column_space(self, m: np.ndarray) -> np.ndarray:
        """Columns of ``m`` (a subset) forming a basis of its image."""
        m = np.asarray(m, dtype=np.int64)
        if m.shape[1] == 0 or m.shape[0] == 0:
            return np.zeros((m.shape[0], 0), dtype=np.int64)
        _, pivots = self.rref(m)
        return m[:, pivots] % self.p

    def complement_columns(self, sub: np.ndarray, n: int) -> list[int]:
        """Indices of standard basis vectors completing the columns of ``sub`` to F_p^n."""
        if sub.shape[1] == 0:
            return list(range(n))
        _, pivots = self.rref(np.hstack([sub, self.eye(n)]))
        k = sub.shape[1]
        return [c - k for c in pivots if c >= k]

    def left_inverse(self, w: np.ndarray) -> np.ndarray:
        """``L`` with ``L @ w == I`` for ``w`` of full column rank."""
        n, k = w.shape
        if k == 0:
            return self.zeros(0, n)
        _, rows = self.rref(w.T)
        if len(rows) != k:
            raise ValueError("left_inverse: columns are dependent")
        sel = self.zeros(k, n)
        sel[np.arange(k), rows] = 1
        return self.mul(self.inverse(w[rows, :]), sel)

    def in_span(self, basis_rows: np.ndarray, v: np.ndarray) -> bool:
        if basis_rows.shape[0] == 0:
            return not np.any(np.asarray(v) % self.p)
        return self.rank(np.vstack([basis_rows, v])) == self.rank(basis_rows)

    def power(self, m: np.ndarray, k: int) -> np.ndarray:
        out = self.eye(m.shape[0])
        base = m % self.p
        while k:
            if k & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            k >>= 1
        return out

    def is_nilpotent(self, m: np.ndarray) -> bool:
        n = m.shape[0]
        return n == 0 or not np.any(self.power(m, n))
