"""Exact integer matrix algebra.

Dense matrices over Z with arbitrary precision entries, Smith and
Hermite normal forms with unimodular transforms, kernels, cokernel
structure, and localised solvability tests.  Everything here is exact;
no floats appear anywhere.

Smith normal form reduction runs in the compiled kernel
(normone._snf_core) when it is available and entries fit int64, and in
the pure Python twin (normone._snf_py) otherwise.  Both kernels follow
the same deterministic pivoting rule, so results do not depend on which
one ran.  Set NORMONE_PURE_PYTHON=1 to force the pure kernel.
"""

from __future__ import annotations

import os

import numpy as np

from . import _snf_py
from .numutil import is_prime, prime_valuation

try:
    from . import _snf_core
except ImportError:
    _snf_core = None

_FORCE_PURE = os.environ.get("NORMONE_PURE_PYTHON", "") not in ("", "0")

# entries below this bound are safe inputs for the int64 kernel
_I64_ENTRY_BOUND = 2**62


def kernel_backend() -> str:
    """Which SNF kernel new computations will use: 'compiled' or 'pure'."""
    if _FORCE_PURE or _snf_core is None:
        return "pure"
    return "compiled"


class IntMatrix:
    """Immutable dense matrix over Z.

    Stored as a tuple of row tuples of Python ints, so entries never
    overflow.  Matrix product dispatches to numpy int64 when a proven
    bound rules out overflow.
    """

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data, rows=None, cols=None):
        data = tuple(tuple(int(x) for x in row) for row in data)
        if rows is None:
            rows = len(data)
        if cols is None:
            cols = len(data[0]) if data else 0
        if not data and rows:
            data = ((),) * rows
        assert len(data) == rows
        for row in data:
            assert len(row) == cols
        if rows == 0:
            data = ()
        self.rows = rows
        self.cols = cols
        self.data = data

    # -- construction ------------------------------------------------

    @staticmethod
    def zeros(rows, cols):
        return IntMatrix(((0,) * cols,) * rows, rows, cols)

    @staticmethod
    def identity(n):
        return IntMatrix(
            tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
        )

    @staticmethod
    def from_columns(columns, rows=None):
        """Matrix whose j-th column is columns[j]."""
        columns = [tuple(int(x) for x in c) for c in columns]
        if rows is None:
            assert columns, "need rows= for a matrix with no columns"
            rows = len(columns[0])
        for c in columns:
            assert len(c) == rows
        return IntMatrix(
            tuple(tuple(c[i] for c in columns) for i in range(rows)),
            rows,
            len(columns),
        )

    @staticmethod
    def column(vec):
        return IntMatrix.from_columns([vec], rows=len(vec))

    # -- basic access ------------------------------------------------

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def row(self, i):
        return self.data[i]

    def col(self, j):
        return tuple(row[j] for row in self.data)

    def columns(self):
        return [self.col(j) for j in range(self.cols)]

    def to_lists(self):
        return [list(row) for row in self.data]

    def __eq__(self, other):
        return (
            isinstance(other, IntMatrix)
            and self.shape == other.shape
            and self.data == other.data
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.data))

    def __repr__(self):
        return "IntMatrix(%dx%d)" % (self.rows, self.cols)

    def is_zero(self):
        return all(x == 0 for row in self.data for x in row)

    def max_abs(self):
        return max((abs(x) for row in self.data for x in row), default=0)

    # -- arithmetic --------------------------------------------------

    def __add__(self, other):
        assert self.shape == other.shape
        return IntMatrix(
            tuple(
                tuple(a + b for a, b in zip(ra, rb))
                for ra, rb in zip(self.data, other.data)
            ),
            self.rows,
            self.cols,
        )

    def __sub__(self, other):
        assert self.shape == other.shape
        return IntMatrix(
            tuple(
                tuple(a - b for a, b in zip(ra, rb))
                for ra, rb in zip(self.data, other.data)
            ),
            self.rows,
            self.cols,
        )

    def __neg__(self):
        return IntMatrix(
            tuple(tuple(-a for a in row) for row in self.data), self.rows, self.cols
        )

    def scale(self, c):
        c = int(c)
        return IntMatrix(
            tuple(tuple(c * a for a in row) for row in self.data),
            self.rows,
            self.cols,
        )

    def __matmul__(self, other):
        assert self.cols == other.rows, (self.shape, other.shape)
        m, k, n = self.rows, self.cols, other.cols
        if m == 0 or n == 0 or k == 0:
            return IntMatrix.zeros(m, n)
        # numpy int64 route when |C_ij| <= k * maxA * maxB provably fits
        ma, mb = self.max_abs(), other.max_abs()
        if ma and mb and k * ma * mb < _I64_ENTRY_BOUND:
            c = np.array(self.data, dtype=np.int64) @ np.array(
                other.data, dtype=np.int64
            )
            return IntMatrix(c.tolist(), m, n)
        bcols = [other.col(j) for j in range(n)]
        return IntMatrix(
            tuple(
                tuple(sum(a * b for a, b in zip(row, col)) for col in bcols)
                for row in self.data
            ),
            m,
            n,
        )

    def apply(self, vec):
        """Matrix times column vector, returned as a tuple."""
        assert len(vec) == self.cols
        return tuple(sum(a * b for a, b in zip(row, vec)) for row in self.data)

    def transpose(self):
        return IntMatrix(
            tuple(tuple(row[i] for row in self.data) for i in range(self.cols)),
            self.cols,
            self.rows,
        )

    # -- block operations --------------------------------------------

    def hstack(self, other):
        assert self.rows == other.rows
        return IntMatrix(
            tuple(ra + rb for ra, rb in zip(self.data, other.data)),
            self.rows,
            self.cols + other.cols,
        )

    def vstack(self, other):
        assert self.cols == other.cols
        return IntMatrix(self.data + other.data, self.rows + other.rows, self.cols)

    @staticmethod
    def block_diag(blocks):
        blocks = list(blocks)
        rows = sum(b.rows for b in blocks)
        cols = sum(b.cols for b in blocks)
        out = [[0] * cols for _ in range(rows)]
        ro = co = 0
        for b in blocks:
            for i, row in enumerate(b.data):
                out[ro + i][co : co + b.cols] = row
            ro += b.rows
            co += b.cols
        return IntMatrix(out, rows, cols)

    def submatrix(self, row_indices, col_indices):
        return IntMatrix(
            tuple(
                tuple(self.data[i][j] for j in col_indices) for i in row_indices
            ),
            len(row_indices),
            len(col_indices),
        )

    # -- determinant (Bareiss, exact) ----------------------------------

    def det(self):
        assert self.rows == self.cols, "determinant of a non-square matrix"
        n = self.rows
        if n == 0:
            return 1
        m = [list(row) for row in self.data]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if m[k][k] == 0:
                for i in range(k + 1, n):
                    if m[i][k] != 0:
                        m[k], m[i] = m[i], m[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
                m[i][k] = 0
            prev = m[k][k]
        return sign * m[n - 1][n - 1]

    # -- serialization -------------------------------------------------

    def to_json(self):
        """Row-major nested lists (lossless)."""
        return self.to_lists()

    @staticmethod
    def from_json(obj, rows=None, cols=None):
        mat = IntMatrix(obj, rows, cols)
        return mat


class SmithForm:
    """Result of smith_normal_form: U @ A @ V == D with U, V unimodular.

    D is diagonal with nonnegative entries, each dividing the next.
    """

    __slots__ = ("matrix", "U", "D", "V", "_diag")

    def __init__(self, matrix, U, D, V):
        self.matrix = matrix
        self.U = U
        self.D = D
        self.V = V
        self._diag = None

    def diagonal(self):
        """The diagonal of D, length min(m, n)."""
        if self._diag is None:
            self._diag = tuple(
                self.D[i, i] for i in range(min(self.D.rows, self.D.cols))
            )
        return self._diag

    @property
    def rank(self):
        return sum(1 for d in self.diagonal() if d != 0)

    def torsion(self):
        """Elementary divisors > 1."""
        return [d for d in self.diagonal() if d > 1]

    def verify(self):
        """Recheck U A V = D, unimodularity, and the divisor chain."""
        assert self.U @ self.matrix @ self.V == self.D
        assert self.U.det() in (1, -1)
        assert self.V.det() in (1, -1)
        diag = self.diagonal()
        for a, b in zip(diag, diag[1:]):
            assert a >= 0 and b >= 0
            if a == 0:
                assert b == 0
            else:
                assert b % a == 0
        off = [
            self.D[i, j]
            for i in range(self.D.rows)
            for j in range(self.D.cols)
            if i != j
        ]
        assert all(x == 0 for x in off)
        return True


def smith_normal_form(A: IntMatrix) -> SmithForm:
    """Smith normal form with transforms, deterministic across kernels."""
    m, n = A.rows, A.cols
    if m == 0 or n == 0:
        return SmithForm(A, IntMatrix.identity(m), A, IntMatrix.identity(n))
    if (
        not _FORCE_PURE
        and _snf_core is not None
        and A.max_abs() < _I64_ENTRY_BOUND
    ):
        try:
            u, d, v = _snf_core.snf_kernel_i64(np.array(A.data, dtype=np.int64))
            return SmithForm(
                A,
                IntMatrix(u.tolist(), m, m),
                IntMatrix(d.tolist(), m, n),
                IntMatrix(v.tolist(), n, n),
            )
        except OverflowError:
            pass
    u, d, v = _snf_py.snf_kernel(A.data, m, n)
    return SmithForm(A, IntMatrix(u, m, m), IntMatrix(d, m, n), IntMatrix(v, n, n))


def cokernel_invariants(A: IntMatrix):
    """Structure of Z^rows / colspan(A): (torsion divisors, free rank).

    torsion is the list of elementary divisors > 1 in divisor order;
    free rank is rows - rank(A).
    """
    s = smith_normal_form(A)
    return s.torsion(), A.rows - s.rank


def kernel_basis(A: IntMatrix) -> IntMatrix:
    """Columns forming a basis of ker(A : Z^cols -> Z^rows).

    The basis is saturated: any integer kernel vector is an integer
    combination of the columns.
    """
    s = smith_normal_form(A)
    diag = s.diagonal()
    free = [j for j in range(A.cols) if j >= len(diag) or diag[j] == 0]
    return s.V.submatrix(range(A.cols), free)


def solve_exact(A: IntMatrix, B: IntMatrix) -> IntMatrix:
    """Some integer X with A @ X == B, or ValueError if none exists."""
    assert A.rows == B.rows
    s = smith_normal_form(A)
    diag = s.diagonal()
    C = s.U @ B
    y = [[0] * B.cols for _ in range(A.cols)]
    for i in range(A.rows):
        d = diag[i] if i < len(diag) else 0
        for j in range(B.cols):
            c = C[i, j]
            if d == 0:
                if c != 0:
                    raise ValueError("no integer solution")
            else:
                q, r = divmod(c, d)
                if r != 0:
                    raise ValueError("no integer solution")
                y[i][j] = q
    return s.V @ IntMatrix(y, A.cols, B.cols)


def in_column_span(A: IntMatrix, vec) -> bool:
    """Is vec an integer combination of the columns of A?"""
    try:
        solve_exact(A, IntMatrix.column(vec))
        return True
    except ValueError:
        return False


def inverse_unimodular(A: IntMatrix) -> IntMatrix:
    """Inverse of a matrix with determinant +-1 (ValueError otherwise)."""
    assert A.rows == A.cols
    s = smith_normal_form(A)
    if any(d != 1 for d in s.diagonal()):
        raise ValueError("matrix is not unimodular")
    return s.V @ s.U


def hermite_normal_form(A: IntMatrix):
    """Row-style Hermite normal form: returns (H, U) with U A = H.

    U is unimodular; pivots are positive, strictly right of earlier
    pivots, with entries above each pivot reduced into [0, pivot).
    """
    m, n = A.rows, A.cols
    h = [list(row) for row in A.data]
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]

    def row_op(i, k, q):
        # row_i -= q * row_k
        h[i] = [a - q * b for a, b in zip(h[i], h[k])]
        u[i] = [a - q * b for a, b in zip(u[i], u[k])]

    r = 0
    for j in range(n):
        # euclidean elimination in column j below row r
        while True:
            nz = [i for i in range(r, m) if h[i][j] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: (abs(h[i][j]), i))
            if piv != r:
                h[r], h[piv] = h[piv], h[r]
                u[r], u[piv] = u[piv], u[r]
            if h[r][j] < 0:
                h[r] = [-a for a in h[r]]
                u[r] = [-a for a in u[r]]
            done = True
            for i in range(r + 1, m):
                if h[i][j] != 0:
                    row_op(i, r, h[i][j] // h[r][j])
                    if h[i][j] != 0:
                        done = False
            if done:
                break
        if r < m and h[r][j] != 0:
            for i in range(r):
                q = h[i][j] // h[r][j]
                if q:
                    row_op(i, r, q)
            r += 1
            if r == m:
                break
    return IntMatrix(h, m, n), IntMatrix(u, m, m)


def solvable_at_p(A: IntMatrix, b, p: int) -> bool:
    """Does A x = b admit a solution over Z localised at the prime p?

    Decided by comparing p-valuations of the elementary divisors of A
    and of the augmented matrix [A | b]: the system is solvable over
    Z_(p) iff v_p(d_i([A|b])) == v_p(d_i(A)) for all i up to
    min(rows, cols + 1), reading missing divisors as 0 (valuation
    infinity).
    """
    if not is_prime(p):
        raise ValueError("p must be prime, got %r" % (p,))
    bvec = tuple(int(x) for x in b)
    assert len(bvec) == A.rows
    aug = A.hstack(IntMatrix.column(bvec))

    def vals(mat, count):
        diag = smith_normal_form(mat).diagonal()
        out = []
        for i in range(count):
            d = diag[i] if i < len(diag) else 0
            out.append(None if d == 0 else prime_valuation(d, p) if d > 1 else 0)
        return out

    count = min(A.rows, A.cols + 1)
    return vals(A, count) == vals(aug, count)


__all__ = [
    "IntMatrix",
    "SmithForm",
    "smith_normal_form",
    "cokernel_invariants",
    "kernel_basis",
    "solve_exact",
    "in_column_span",
    "inverse_unimodular",
    "hermite_normal_form",
    "solvable_at_p",
    "kernel_backend",
]
