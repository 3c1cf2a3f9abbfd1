"""Exact and interval matrix algebra.

Rank-dependent operations (kernels, subspaces, solving) are exact-only.
Interval matrices get arithmetic and characteristic polynomials, which is all
the certified spectrum pipeline needs.
"""

from __future__ import annotations

from gmpy2 import mpq

from .errors import AmbientMismatch, BackendMismatch, ShapeMismatch
from .scalar.exact import exact, format_exact, is_exact
from .scalar.interval import CInterval
from .scalar.poly import Polynomial, squarefree_part

ZERO = mpq(0)
ONE = mpq(1)


def _nz(x) -> bool:
    if isinstance(x, CInterval):
        return not x.is_point_zero()
    return bool(x)


class Matrix:
    """Immutable dense matrix with entries from a single scalar backend."""

    __slots__ = ("entries", "rows", "cols")

    def __init__(self, entries, cols=None):
        rows = [tuple(r) for r in entries]
        if cols is None:
            if not rows:
                raise ShapeMismatch("matrix needs at least one row or explicit cols")
            cols = len(rows[0])
        if any(len(r) != cols for r in rows):
            raise ShapeMismatch("ragged matrix")
        self.entries = tuple(tuple(x if isinstance(x, CInterval) else exact(x) for x in r) for r in rows)
        self.rows = len(rows)
        self.cols = cols

    @classmethod
    def identity(cls, n):
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, r, c):
        return cls([[ZERO] * c for _ in range(r)], cols=c)

    @classmethod
    def diag(cls, values):
        n = len(values)
        return cls([[values[i] if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, columns, rows=None):
        columns = [tuple(c) for c in columns]
        if not columns:
            return cls.zeros(rows or 0, 0) if rows else cls([], cols=0)
        return cls(list(zip(*columns)))

    @property
    def shape(self):
        return self.rows, self.cols

    def is_square(self):
        return self.rows == self.cols

    def is_exact(self) -> bool:
        return all(is_exact(x) for r in self.entries for x in r)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i):
        return self.entries[i]

    def column(self, j):
        return tuple(r[j] for r in self.entries)

    def transpose(self) -> "Matrix":
        return Matrix(list(zip(*self.entries)), cols=self.rows) if self.cols else Matrix([], cols=self.rows)

    T = property(transpose)

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.entries == other.entries and self.cols == other.cols

    def __hash__(self):
        return hash(self.entries)

    def __add__(self, other):
        _same_shape(self, other)
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)], self.cols)

    def __sub__(self, other):
        _same_shape(self, other)
        return Matrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)], self.cols)

    def __neg__(self):
        return Matrix([[-a for a in r] for r in self.entries], self.cols)

    def scale(self, c) -> "Matrix":
        return Matrix([[c * a for a in r] for r in self.entries], self.cols)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise ShapeMismatch(f"{self.shape} @ {other.shape}")
            ocols = [other.column(j) for j in range(other.cols)]
            return Matrix([[_dot(r, c) for c in ocols] for r in self.entries], other.cols)
        vec = tuple(other)
        if len(vec) != self.cols:
            raise ShapeMismatch(f"{self.shape} @ vector of length {len(vec)}")
        return tuple(_dot(r, vec) for r in self.entries)

    def is_zero(self) -> bool:
        return not any(_nz(x) for r in self.entries for x in r)

    def trace(self):
        acc = ZERO
        for i in range(min(self.rows, self.cols)):
            acc = acc + self.entries[i][i]
        return acc

    def to_strings(self):
        return [[format_exact(x) if is_exact(x) else x.to_string() for x in r] for r in self.entries]

    def __repr__(self):
        return f"Matrix({self.to_strings()})"


def _same_shape(a, b):
    if a.shape != b.shape:
        raise ShapeMismatch(f"{a.shape} vs {b.shape}")


def _dot(r, c):
    acc = ZERO
    for a, b in zip(r, c):
        if _nz(a) and _nz(b):
            acc = acc + a * b
    return acc


def _require_exact_rows(rows):
    for r in rows:
        for x in r:
            if isinstance(x, CInterval):
                raise BackendMismatch("rank-dependent operation on interval entries")


# -- elimination ----------------------------------------------------------------


def rref(rows, ncols=None):
    """Reduced row echelon form of a list of exact row vectors.

    Returns (nonzero rows, pivot columns).
    """
    m = [list(r) for r in rows]
    _require_exact_rows(m)
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        if piv != 1:
            inv = 1 / piv
            m[r] = [x * inv if x else x for x in m[r]]
        prow = m[r]
        nzc = [k for k in range(c, ncols) if prow[k]]
        for i in range(len(m)):
            if i != r:
                f = m[i][c]
                if f:
                    row = m[i]
                    for k in nzc:
                        row[k] = row[k] - f * prow[k]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return [tuple(x for x in row) for row in m[:r]], pivots


def rank(M: Matrix) -> int:
    return len(rref(M.entries, M.cols)[1])


class Subspace:
    """Subspace of K^n stored by its canonical reduced echelon basis (rows)."""

    __slots__ = ("ambient_dim", "basis", "pivots")

    def __init__(self, ambient_dim, basis, pivots):
        self.ambient_dim = ambient_dim
        self.basis = tuple(basis)
        self.pivots = tuple(pivots)

    @classmethod
    def span(cls, vectors, ambient_dim=None) -> "Subspace":
        vectors = [tuple(exact(x) for x in v) for v in vectors]
        if ambient_dim is None:
            if not vectors:
                raise AmbientMismatch("cannot infer ambient dimension of an empty span")
            ambient_dim = len(vectors[0])
        if any(len(v) != ambient_dim for v in vectors):
            raise AmbientMismatch("vectors of mixed length")
        rows, piv = rref(vectors, ambient_dim) if vectors else ([], [])
        return cls(ambient_dim, rows, piv)

    @classmethod
    def zero(cls, n):
        return cls(n, (), ())

    @classmethod
    def full(cls, n):
        return cls.span([[ONE if i == j else ZERO for j in range(n)] for i in range(n)], n)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self):
        return len(self.basis)

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.ambient_dim == other.ambient_dim
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim}, basis={[[format_exact(x) for x in b] for b in self.basis]})"

    def basis_matrix(self) -> Matrix:
        """Columns are the basis vectors."""
        return Matrix.from_columns(self.basis, self.ambient_dim) if self.basis else Matrix.zeros(self.ambient_dim, 0)

    def coords(self, v):
        """Coordinates of a vector known to lie in the subspace (read at pivots)."""
        return tuple(v[p] for p in self.pivots)

    def contains(self, v) -> bool:
        v = tuple(v)
        if len(v) != self.ambient_dim:
            raise AmbientMismatch("vector length differs from ambient dimension")
        residual = list(v)
        for b, p in zip(self.basis, self.pivots):
            f = residual[p]
            if f:
                residual = [x - f * y if y else x for x, y in zip(residual, b)]
        return not any(residual)

    def contains_subspace(self, other: "Subspace") -> bool:
        _check_ambient(self, other)
        return all(self.contains(b) for b in other.basis)

    def complement_indices(self):
        """Coordinate axes spanning the echelon complement."""
        ps = set(self.pivots)
        return tuple(i for i in range(self.ambient_dim) if i not in ps)

    def image(self, M: Matrix) -> "Subspace":
        return Subspace.span([M @ b for b in self.basis], M.rows) if self.basis else Subspace.zero(M.rows)

    def join(self, other):
        return subspace_meet_join(self, other)[1]

    def meet(self, other):
        return subspace_meet_join(self, other)[0]


def _check_ambient(U, V):
    if U.ambient_dim != V.ambient_dim:
        raise AmbientMismatch(f"ambient {U.ambient_dim} vs {V.ambient_dim}")


def kernel(M: Matrix) -> Subspace:
    """Exact null space of M."""
    if not M.is_exact():
        raise BackendMismatch("kernel needs an exact matrix")
    n = M.cols
    rows, piv = rref(M.entries, n) if M.rows else ([], [])
    free = [j for j in range(n) if j not in set(piv)]
    vecs = []
    for f in free:
        v = [ZERO] * n
        v[f] = ONE
        for r, p in zip(rows, piv):
            v[p] = -r[f]
        vecs.append(v)
    return Subspace.span(vecs, n) if vecs else Subspace.zero(n)


def subspace_meet_join(U: Subspace, V: Subspace):
    """(U ∩ V, U + V), both canonical."""
    _check_ambient(U, V)
    n = U.ambient_dim
    join = Subspace.span(list(U.basis) + list(V.basis), n) if (U.dim or V.dim) else Subspace.zero(n)
    if not U.dim or not V.dim:
        return Subspace.zero(n), join
    # x in U ∩ V  <=>  sum a_i u_i - sum b_j v_j = 0
    cols = list(U.basis) + [tuple(-x for x in v) for v in V.basis]
    K = kernel(Matrix.from_columns(cols))
    meet_vecs = []
    for k in K.basis:
        vec = [ZERO] * n
        for a, u in zip(k[: U.dim], U.basis):
            if a:
                vec = [x + a * y for x, y in zip(vec, u)]
        meet_vecs.append(vec)
    meet = Subspace.span(meet_vecs, n) if meet_vecs else Subspace.zero(n)
    return meet, join


def char_poly(M: Matrix) -> Polynomial:
    """det(xI - M) by the division-free Samuelson-Berkowitz recurrence."""
    if not M.is_square():
        raise ShapeMismatch("char_poly needs a square matrix")
    A = M.entries
    n = M.rows
    coeffs = [ONE]  # highest degree first
    for k in range(n):
        R = A[k][:k]
        S = [A[i][k] for i in range(k)]
        toeplitz = [ONE, -A[k][k]]
        vec = S
        for _ in range(k):
            toeplitz.append(-_dot(R, vec))
            vec = [_dot(A[i][:k], vec) for i in range(k)]
        new = []
        for i in range(k + 2):
            acc = ZERO
            for j in range(min(i, k) + 1):
                t = toeplitz[i - j]
                c = coeffs[j]
                if _nz(t) and _nz(c):
                    acc = acc + t * c
            new.append(acc)
        coeffs = new
    return Polynomial(list(reversed(coeffs)))


def poly_at_matrix(p: Polynomial, M: Matrix) -> Matrix:
    n = M.rows
    acc = Matrix.zeros(n, n)
    eye = Matrix.identity(n)
    for c in reversed(p.coeffs):
        acc = acc @ M + eye.scale(c)
    return acc


def is_diagonalizable(M: Matrix) -> bool:
    """True iff the squarefree part of the characteristic polynomial kills M."""
    if not M.is_exact():
        raise BackendMismatch("diagonalizability is decided over exact scalars only")
    if not M.is_square():
        raise ShapeMismatch("is_diagonalizable needs a square matrix")
    if M.rows == 0:
        return True
    s = squarefree_part(char_poly(M))
    return poly_at_matrix(s, M).is_zero()


def solve_linear(A: Matrix, b):
    """Some x with A x = b, or None when b is outside the column space."""
    b = tuple(exact(x) for x in b)
    if len(b) != A.rows:
        raise ShapeMismatch(f"rhs of length {len(b)} for {A.rows} rows")
    if not A.is_exact():
        raise BackendMismatch("solve_linear needs exact entries")
    n = A.cols
    aug = [tuple(r) + (bi,) for r, bi in zip(A.entries, b)]
    rows, piv = rref(aug, n + 1) if aug else ([], [])
    if piv and piv[-1] == n:
        return None
    x = [ZERO] * n
    for r, p in zip(rows, piv):
        x[p] = r[n]
    return tuple(x)


def inconsistency_certificate(A: Matrix, b):
    """y with y^T A = 0 and y^T b = 1 (exists iff A x = b is unsolvable)."""
    cols = [A.column(j) for j in range(A.cols)]
    # unknown y of length rows: A^T y = 0, b^T y = 1
    system = Matrix([list(c) for c in cols] + [list(b)], cols=A.rows) if A.rows else None
    if system is None:
        return None
    rhs = [ZERO] * A.cols + [ONE]
    return solve_linear(system, rhs)


def inverse(M: Matrix) -> Matrix:
    if not M.is_square():
        raise ShapeMismatch("inverse of a non-square matrix")
    n = M.rows
    aug = [tuple(r) + tuple(ONE if i == j else ZERO for j in range(n)) for i, r in enumerate(M.entries)]
    rows, piv = rref(aug, 2 * n)
    if len(piv) < n or piv[n - 1] != n - 1:
        raise ZeroDivisionError("matrix is singular")
    return Matrix([r[n:] for r in rows])
