"""Exact integer matrix algebra and canonical forms of abelian groups.

Matrices are immutable row-major arrays of Python ints; columns are the
images of generators, so `im(A)` always means the column span.  Everything
downstream (modules, complexes, cohomology) reduces to the operations in
this module: Smith and Hermite forms, integer kernels, image membership,
and elementary-divisor invariants of cokernels and subquotients.
"""

from __future__ import annotations

import math

from ._backend import kernels
from .errors import BoundaryNotInCycles


class IntMatrix:
    __slots__ = ("rows", "cols", "data", "_hnf_cache")

    def __init__(self, rows: int, cols: int, data):
        if rows < 0 or cols < 0:
            raise ValueError("negative matrix dimensions")
        data = [list(r) for r in data]
        if len(data) != rows or any(len(r) != cols for r in data):
            raise ValueError(f"data does not match shape {rows}x{cols}")
        self.rows = rows
        self.cols = cols
        self.data = data
        self._hnf_cache = None

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, [[0] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        data = [[0] * n for _ in range(n)]
        for i in range(n):
            data[i][i] = 1
        return cls(n, n, data)

    @classmethod
    def diagonal(cls, rows: int, cols: int, diag) -> "IntMatrix":
        data = [[0] * cols for _ in range(rows)]
        for i, d in enumerate(diag):
            data[i][i] = d
        return cls(rows, cols, data)

    @classmethod
    def from_columns(cls, rows: int, columns) -> "IntMatrix":
        columns = [list(c) for c in columns]
        for c in columns:
            if len(c) != rows:
                raise ValueError("column length mismatch")
        data = [[c[i] for c in columns] for i in range(rows)]
        return cls(rows, len(columns), data)

    def column(self, j: int) -> list:
        return [self.data[i][j] for i in range(self.rows)]

    def columns(self) -> list:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows, [list(r) for r in zip(*self.data)] if self.data and self.cols else [[] for _ in range(self.cols)])

    def mul(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} * {other.rows}x{other.cols}")
        if self.rows == 0 or other.cols == 0:
            return IntMatrix.zeros(self.rows, other.cols)
        if self.cols == 0:
            return IntMatrix.zeros(self.rows, other.cols)
        return IntMatrix(self.rows, other.cols, kernels.matmul(self.data, other.data))

    def apply(self, vec: list) -> list:
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        return [sum(a * x for a, x in zip(row, vec)) for row in self.data]

    def add(self, other: "IntMatrix") -> "IntMatrix":
        self._same_shape(other)
        return IntMatrix(self.rows, self.cols, [[a + b for a, b in zip(r, s)] for r, s in zip(self.data, other.data)])

    def sub(self, other: "IntMatrix") -> "IntMatrix":
        self._same_shape(other)
        return IntMatrix(self.rows, self.cols, [[a - b for a, b in zip(r, s)] for r, s in zip(self.data, other.data)])

    def neg(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, [[-a for a in r] for r in self.data])

    def scale(self, k: int) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, [[k * a for a in r] for r in self.data])

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.rows != other.rows:
            raise ValueError("row count mismatch in hstack")
        return IntMatrix(self.rows, self.cols + other.cols, [r + s for r, s in zip(self.data, other.data)])

    def vstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.cols:
            raise ValueError("column count mismatch in vstack")
        return IntMatrix(self.rows + other.rows, self.cols, self.data + other.data)

    @staticmethod
    def block_diagonal(blocks) -> "IntMatrix":
        blocks = list(blocks)
        rows = sum(b.rows for b in blocks)
        cols = sum(b.cols for b in blocks)
        out = [[0] * cols for _ in range(rows)]
        ro = co = 0
        for b in blocks:
            for i in range(b.rows):
                out[ro + i][co : co + b.cols] = b.data[i]
            ro += b.rows
            co += b.cols
        return IntMatrix(rows, cols, out)

    def is_zero(self) -> bool:
        return all(not any(r) for r in self.data)

    def _same_shape(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape mismatch")

    def __eq__(self, other):
        return (
            isinstance(other, IntMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(tuple(r) for r in self.data)))

    def __repr__(self):
        return f"IntMatrix({self.rows}x{self.cols}, {self.data})"

    def hermite(self):
        """Cached column Hermite form (h, v, pivots) with self * v == h."""
        if self._hnf_cache is None:
            h, v, piv = kernels.hnf_cols(self.data, self.rows, self.cols)
            self._hnf_cache = (
                IntMatrix(self.rows, self.cols, h),
                IntMatrix(self.cols, self.cols, v),
                tuple(piv),
            )
        return self._hnf_cache


class SmithDecomposition:
    """u * a * v == d with u, v unimodular and d diagonal (d1 | d2 | ...)."""

    __slots__ = ("u", "d", "v")

    def __init__(self, u: IntMatrix, d: IntMatrix, v: IntMatrix):
        self.u = u
        self.d = d
        self.v = v

    def diagonal(self) -> list:
        return [self.d.data[i][i] for i in range(min(self.d.rows, self.d.cols))]


class AbelianInvariants:
    """Canonical form of a finitely generated abelian group.

    free_rank plus the elementary-divisor chain (each >= 2, each dividing
    the next).  Two groups are isomorphic iff these agree.
    """

    __slots__ = ("free_rank", "torsion")

    def __init__(self, free_rank: int, torsion=()):
        torsion = tuple(int(t) for t in torsion)
        if free_rank < 0:
            raise ValueError("negative free rank")
        for t in torsion:
            if t < 2:
                raise ValueError("torsion entries must be >= 2")
        for a, b in zip(torsion, torsion[1:]):
            if b % a:
                raise ValueError("torsion chain must satisfy divisibility")
        self.free_rank = free_rank
        self.torsion = torsion

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def torsion_order(self) -> int:
        return math.prod(self.torsion)

    def __eq__(self, other):
        return (
            isinstance(other, AbelianInvariants)
            and self.free_rank == other.free_rank
            and self.torsion == other.torsion
        )

    def __hash__(self):
        return hash((self.free_rank, self.torsion))

    def render(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " x ".join(parts) if parts else "0"

    def __repr__(self):
        return f"AbelianInvariants({self.render()})"


class Subquotient:
    """A subquotient Z/B of some Z^ambient.

    `cycles` columns span the subgroup Z, `boundaries` columns span B; every
    boundary must lie in the cycle lattice.  Invariants are basis-free.
    """

    __slots__ = ("ambient_rank", "cycles", "boundaries")

    def __init__(self, ambient_rank: int, cycles: IntMatrix, boundaries: IntMatrix):
        if cycles.rows != ambient_rank or boundaries.rows != ambient_rank:
            raise ValueError("cycles/boundaries must live in the ambient space")
        self.ambient_rank = ambient_rank
        self.cycles = cycles
        self.boundaries = boundaries


def smith_normal_form(a: IntMatrix) -> SmithDecomposition:
    d, u, v = kernels.snf(a.data, a.rows, a.cols, True)
    return SmithDecomposition(
        IntMatrix(a.rows, a.rows, u),
        IntMatrix(a.rows, a.cols, d),
        IntMatrix(a.cols, a.cols, v),
    )


def smith_diagonal(a: IntMatrix) -> list:
    """Just the diagonal of the Smith form (no transform bookkeeping)."""
    d, _, _ = kernels.snf(a.data, a.rows, a.cols, False)
    return [d[i][i] for i in range(min(a.rows, a.cols))]


def kernel_basis(a: IntMatrix) -> IntMatrix:
    """Basis of {x : a*x == 0}, as columns."""
    h, v, pivots = a.hermite()
    first_free = len(pivots)
    return IntMatrix.from_columns(a.cols, [v.column(j) for j in range(first_free, a.cols)])


def solve_integer(a: IntMatrix, b) -> list | None:
    """An integer solution x of a*x == b, or None if none exists."""
    b = list(b)
    if len(b) != a.rows:
        raise ValueError("right-hand side length mismatch")
    h, v, pivots = a.hermite()
    residual = b
    y = [0] * a.cols
    for r, c in pivots:
        val = residual[r]
        p = h.data[r][c]
        if val % p:
            return None
        q = val // p
        if q:
            y[c] = q
            col = h.column(c)
            residual = [x - q * e for x, e in zip(residual, col)]
    if any(residual):
        return None
    return v.apply(y)


def invariants_from_diagonal(diag, ambient: int) -> AbelianInvariants:
    nonzero = [d for d in diag if d]
    return AbelianInvariants(ambient - len(nonzero), [d for d in nonzero if d > 1])


def cokernel_invariants(a: IntMatrix) -> AbelianInvariants:
    """Invariants of Z^rows / (column span of a)."""
    return invariants_from_diagonal(smith_diagonal(a), a.rows)


def subquotient_invariants(s: Subquotient) -> AbelianInvariants:
    """Invariants of the quotient of the cycle lattice by the boundaries.

    Boundary columns are rewritten in cycle coordinates (raising
    BoundaryNotInCycles when impossible); redundancy among the cycle
    columns is absorbed through the kernel of the cycle matrix.
    """
    k = s.cycles.cols
    coord_cols = []
    for j in range(s.boundaries.cols):
        x = solve_integer(s.cycles, s.boundaries.column(j))
        if x is None:
            raise BoundaryNotInCycles(f"boundary column {j} is outside the cycle lattice")
        coord_cols.append(x)
    rel = kernel_basis(s.cycles).hstack(IntMatrix.from_columns(k, coord_cols))
    return cokernel_invariants(rel)


def determinant(a: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if a.rows != a.cols:
        raise ValueError("determinant of a non-square matrix")
    n = a.rows
    if n == 0:
        return 1
    m = [list(r) for r in a.data]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def is_unimodular(a: IntMatrix) -> bool:
    return a.rows == a.cols and determinant(a) in (1, -1)


def unimodular_inverse(a: IntMatrix) -> IntMatrix:
    """Exact inverse of a unimodular matrix (columnwise integer solves)."""
    if a.rows != a.cols:
        raise ValueError("inverse of a non-square matrix")
    cols = []
    for i in range(a.rows):
        e = [0] * a.rows
        e[i] = 1
        x = solve_integer(a, e)
        if x is None:
            raise ValueError("matrix is not unimodular")
        cols.append(x)
    return IntMatrix.from_columns(a.rows, cols)

