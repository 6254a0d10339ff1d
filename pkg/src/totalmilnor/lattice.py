"""Exact integer linear algebra: Hermite and Smith normal forms with transforms.

All arithmetic uses Python integers, so nothing overflows.  Pivot selection is
deterministic (smallest absolute value, first occurrence on ties), which makes
canonical coset representatives reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence


class IntMatrix:
    """Immutable integer matrix stored row-major as a tuple of row tuples."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data: Iterable[Iterable[int]], cols: Optional[int] = None):
        rows = tuple(tuple(int(x) for x in row) for row in data)
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for row in rows:
            if len(row) != cols:
                raise ValueError("ragged matrix")
        self.rows = len(rows)
        self.cols = cols
        self.data = rows

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(((1 if i == j else 0) for j in range(n)) for i in range(n))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls(((0,) * cols for _ in range(rows)), cols)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> IntMatrix:
        return cls(((col[i] for col in columns) for i in range(rows)), len(columns))

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.data)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.data]

    def transpose(self) -> IntMatrix:
        return IntMatrix((self.column(j) for j in range(self.cols)), self.rows)

    def __matmul__(self, other):
        if isinstance(other, IntMatrix):
            if self.cols != other.rows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            cols = [other.column(j) for j in range(other.cols)]
            return IntMatrix(
                (sum(a * b for a, b in zip(row, col)) for col in cols) for row in self.data
            ) if self.rows else IntMatrix.zeros(0, other.cols)
        vec = list(other)
        if len(vec) != self.cols:
            raise ValueError("dimension mismatch")
        return [sum(a * b for a, b in zip(row, vec)) for row in self.data]

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __eq__(self, other) -> bool:
        return isinstance(other, IntMatrix) and self.shape == other.shape and self.data == other.data

    def __hash__(self) -> int:
        return hash((self.shape, self.data))

    def __repr__(self) -> str:
        return f"IntMatrix({self.tolist()!r})"

    def determinant(self) -> int:
        """Bareiss fraction-free determinant."""
        if self.rows != self.cols:
            raise ValueError("determinant of non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        m = self.tolist()
        sign, prev = 1, 1
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


def as_matrix(A) -> IntMatrix:
    return A if isinstance(A, IntMatrix) else IntMatrix(A)


@dataclass(frozen=True)
class HermiteBasis:
    """Column-style Hermite form: ``A @ U == [H | 0]`` with ``H`` of shape rows x rank."""

    H: IntMatrix
    U: IntMatrix
    pivot_rows: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.pivot_rows)


@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ A @ V == S``; ``U_inv``/``V_inv`` are the tracked inverse transforms."""

    U: IntMatrix
    S: IntMatrix
    V: IntMatrix
    U_inv: IntMatrix
    V_inv: IntMatrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.S[i, i] for i in range(min(self.S.shape)))

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        return tuple(d for d in self.diagonal if d)

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)


def _col_op(m: list[list[int]], dst: int, src: int, q: int) -> None:
    """column dst -= q * column src"""
    if q:
        for row in m:
            row[dst] -= q * row[src]


def _col_swap(m: list[list[int]], a: int, b: int) -> None:
    if a != b:
        for row in m:
            row[a], row[b] = row[b], row[a]


def _col_neg(m: list[list[int]], a: int) -> None:
    for row in m:
        row[a] = -row[a]


def hnf(A) -> HermiteBasis:
    A = as_matrix(A)
    rows, cols = A.shape
    M = A.tolist()
    U = IntMatrix.identity(cols).tolist()
    pivots: list[int] = []
    col = 0
    for i in range(rows):
        if col >= cols:
            break
        while True:
            nz = [j for j in range(col, cols) if M[i][j]]
            if not nz:
                break
            best = min(nz, key=lambda j: (abs(M[i][j]), j))
            _col_swap(M, col, best)
            _col_swap(U, col, best)
            p = M[i][col]
            done = True
            for j in range(col + 1, cols):
                if M[i][j]:
                    q = M[i][j] // p
                    _col_op(M, j, col, q)
                    _col_op(U, j, col, q)
                    if M[i][j]:
                        done = False
            if done:
                break
        if not any(M[i][j] for j in range(col, cols)):
            continue
        if M[i][col] < 0:
            _col_neg(M, col)
            _col_neg(U, col)
        p = M[i][col]
        for c in range(col):
            q = M[i][c] // p
            _col_op(M, c, col, q)
            _col_op(U, c, col, q)
        pivots.append(i)
        col += 1
    H = IntMatrix(([row[j] for j in range(col)] for row in M), col)
    return HermiteBasis(H, IntMatrix(U), tuple(pivots))


def snf(A) -> SmithDecomposition:
    A = as_matrix(A)
    rows, cols = A.shape
    M = A.tolist()
    U = IntMatrix.identity(rows).tolist()
    Ui = IntMatrix.identity(rows).tolist()
    V = IntMatrix.identity(cols).tolist()
    Vi = IntMatrix.identity(cols).tolist()

    # row operations: apply to M and U, inverse update to Ui (columns)
    def row_swap(a, b):
        if a != b:
            M[a], M[b] = M[b], M[a]
            U[a], U[b] = U[b], U[a]
            _col_swap(Ui, a, b)

    def row_add(dst, src, q):
        # row dst -= q * row src
        if q:
            for mat in (M, U):
                r_s, r_d = mat[src], mat[dst]
                for j in range(len(r_d)):
                    r_d[j] -= q * r_s[j]
            _col_op(Ui, src, dst, -q)

    def row_neg(a):
        M[a] = [-x for x in M[a]]
        U[a] = [-x for x in U[a]]
        _col_neg(Ui, a)

    # column operations: apply to M and V, inverse update to Vi (rows)
    def col_swap(a, b):
        if a != b:
            _col_swap(M, a, b)
            _col_swap(V, a, b)
            Vi[a], Vi[b] = Vi[b], Vi[a]

    def col_add(dst, src, q):
        # col dst -= q * col src
        if q:
            _col_op(M, dst, src, q)
            _col_op(V, dst, src, q)
            r_s, r_d = Vi[src], Vi[dst]
            for j in range(len(r_s)):
                r_s[j] += q * r_d[j]

    t = 0
    while t < min(rows, cols):
        entries = [(abs(M[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if M[i][j]]
        if not entries:
            break
        _, pi, pj = min(entries)
        row_swap(t, pi)
        col_swap(t, pj)
        while True:
            p = M[t][t]
            clean = True
            for i in range(t + 1, rows):
                if M[i][t]:
                    row_add(i, t, M[i][t] // p)
                    if M[i][t]:
                        clean = False
            for j in range(t + 1, cols):
                if M[t][j]:
                    col_add(j, t, M[t][j] // p)
                    if M[t][j]:
                        clean = False
            if clean:
                bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                            if M[i][j] % p), None)
                if bad is None:
                    break
                # pull the offending row in so the next pass lowers the pivot
                row_add(t, bad[0], -1)
                continue
            entries = [(abs(M[i][j]), i, j) for i in range(t, rows) for j in range(t, cols)
                       if M[i][j] and (i == t or j == t)]
            _, pi, pj = min(entries)
            row_swap(t, pi)
            col_swap(t, pj)
        if M[t][t] < 0:
            row_neg(t)
        t += 1
    return SmithDecomposition(IntMatrix(U), IntMatrix(M, cols), IntMatrix(V, cols),
                              IntMatrix(Ui), IntMatrix(Vi, cols))


def _check_dim(H: HermiteBasis, x: Sequence[int]) -> list[int]:
    vec = [int(v) for v in x]
    if len(vec) != H.H.rows:
        raise ValueError(f"dimension mismatch: vector of length {len(vec)} for {H.H.rows} rows")
    return vec


def reduce_with_witness(A, x: Sequence[int], basis: Optional[HermiteBasis] = None
                        ) -> tuple[list[int], list[int]]:
    """Canonical representative of ``x + col-lattice(A)`` and ``z`` with ``x - rep == A @ z``."""
    A = as_matrix(A)
    H = basis if basis is not None else hnf(A)
    if len(x) != A.rows:
        raise ValueError(f"dimension mismatch: vector of length {len(x)} for {A.rows} rows")
    vec = [int(v) for v in x]
    q = [0] * H.rank
    for c, p_row in enumerate(H.pivot_rows):
        piv = H.H[p_row, c]
        k = vec[p_row] // piv
        if k:
            q[c] = k
            for i in range(p_row, A.rows):
                vec[i] -= k * H.H[i, c]
    z = [sum(H.U[r, c] * q[c] for c in range(H.rank)) for r in range(A.cols)]
    return vec, z


def reduce_mod_lattice(A, x: Sequence[int], basis: Optional[HermiteBasis] = None) -> list[int]:
    return reduce_with_witness(A, x, basis)[0]


def lattice_solve(A, x: Sequence[int], basis: Optional[HermiteBasis] = None) -> Optional[list[int]]:
    """Integer ``y`` with ``A @ y == x``, or ``None`` when ``x`` is not in the column lattice."""
    rep, z = reduce_with_witness(A, x, basis)
    if any(rep):
        return None
    return z


def cokernel_structure(A, decomposition: Optional[SmithDecomposition] = None
                       ) -> tuple[int, tuple[int, ...]]:
    """``(free rank, torsion factors > 1)`` of ``Z^rows / A Z^cols``."""
    A = as_matrix(A)
    D = decomposition if decomposition is not None else snf(A)
    factors = D.invariant_factors
    return A.rows - len(factors), tuple(d for d in factors if d > 1)


def format_structure(structure: tuple[int, Sequence[int]]) -> str:
    free, torsion = structure
    parts = []
    if free:
        parts.append(f"Z^{free}")
    parts.extend(f"Z/{d}" for d in torsion)
    return " (+) ".join(parts) if parts else "0"
