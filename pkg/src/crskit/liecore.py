"""Lie algebras given by structure constants."""

from __future__ import annotations

from dataclasses import dataclass, field

from gmpy2 import mpq

from .errors import (
    ActionNotCentral,
    AmbientMismatch,
    AntisymmetryViolation,
    BackendMismatch,
    JacobiViolation,
    NotAbelian,
    NotAnIdeal,
    NotSolvable,
    ShapeMismatch,
)
from .linalg import Matrix, Subspace, inconsistency_certificate, inverse, kernel, solve_linear
from .scalar.exact import exact, format_exact, is_exact
from .scalar.interval import CInterval

ZERO = mpq(0)
ONE = mpq(1)


def _nz(x):
    if isinstance(x, CInterval):
        return not x.is_point_zero()
    return bool(x)


class LieAlgebra:
    """[e_i, e_j] = sum_k c[i][j][k] e_k.

    ``c`` is stored densely as a tuple of tuples of coefficient tuples.
    """

    __slots__ = ("dim", "c", "labels")

    def __init__(self, dim, c, labels=None):
        self.dim = dim
        self.c = tuple(
            tuple(tuple(x if isinstance(x, CInterval) else exact(x) for x in c[i][j]) for j in range(dim))
            for i in range(dim)
        )
        if any(len(c[i][j]) != dim for i in range(dim) for j in range(dim)):
            raise ShapeMismatch("structure constants must be dim x dim x dim")
        self.labels = tuple(labels) if labels else tuple(f"e{i}" for i in range(dim))

    @classmethod
    def from_brackets(cls, dim, brackets, labels=None):
        """Build from a sparse map {(i, j): {k: coeff}}; antisymmetry is filled in."""
        c = [[[ZERO] * dim for _ in range(dim)] for _ in range(dim)]
        for (i, j), out in brackets.items():
            for k, v in out.items():
                v = exact(v) if not isinstance(v, CInterval) else v
                c[i][j][k] = v
                c[j][i][k] = -v
        return cls(dim, c, labels)

    @classmethod
    def abelian(cls, dim, labels=None):
        return cls.from_brackets(dim, {}, labels)

    def is_exact(self) -> bool:
        return all(is_exact(x) for row in self.c for v in row for x in v)

    def basis_vector(self, i):
        return tuple(ONE if k == i else ZERO for k in range(self.dim))

    def bracket(self, x, y):
        n = self.dim
        out = [ZERO] * n
        for i in range(n):
            xi = x[i]
            if not _nz(xi):
                continue
            ci = self.c[i]
            for j in range(n):
                yj = y[j]
                if not _nz(yj):
                    continue
                f = xi * yj
                for k, ck in enumerate(ci[j]):
                    if _nz(ck):
                        out[k] = out[k] + f * ck
        return tuple(out)

    def adjoint_matrix(self, x) -> Matrix:
        """Matrix of y -> [x, y] in the standard basis."""
        cols = [self.bracket(x, self.basis_vector(j)) for j in range(self.dim)]
        return Matrix.from_columns(cols, self.dim)

    def ad_basis(self, i) -> Matrix:
        return Matrix([[self.c[i][j][k] for j in range(self.dim)] for k in range(self.dim)])

    def bracket_space(self, U: Subspace, V: Subspace) -> Subspace:
        self._require_exact()
        vecs = [self.bracket(u, v) for u in U.basis for v in V.basis]
        vecs = [v for v in vecs if any(v)]
        return Subspace.span(vecs, self.dim) if vecs else Subspace.zero(self.dim)

    def full(self) -> Subspace:
        return Subspace.full(self.dim)

    def _require_exact(self):
        if not self.is_exact():
            raise BackendMismatch("operation needs exact structure constants")

    def restrict(self, U: Subspace, labels=None) -> "LieAlgebra":
        """The subalgebra U in its echelon-basis coordinates."""
        if U.ambient_dim != self.dim:
            raise AmbientMismatch("subspace ambient dimension differs from algebra dimension")
        d = U.dim
        c = [[U.coords(self.bracket(U.basis[i], U.basis[j])) for j in range(d)] for i in range(d)]
        return LieAlgebra(d, c, labels)

    def change_basis(self, P: Matrix) -> "LieAlgebra":
        """Structure constants in the basis given by the columns of P."""
        Pinv = inverse(P)
        cols = [P.column(j) for j in range(P.cols)]
        n = self.dim
        c = [[Pinv @ self.bracket(cols[i], cols[j]) for j in range(n)] for i in range(n)]
        return LieAlgebra(n, c, self.labels)

    def __eq__(self, other):
        return isinstance(other, LieAlgebra) and self.dim == other.dim and self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def __repr__(self):
        nz = []
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                v = self.c[i][j]
                terms = [f"{format_exact(x) if is_exact(x) else x}*{self.labels[k]}" for k, x in enumerate(v) if _nz(x)]
                if terms:
                    nz.append(f"[{self.labels[i]},{self.labels[j]}]={' + '.join(terms)}")
        return f"LieAlgebra(dim={self.dim}; {'; '.join(nz)})"


@dataclass
class SeriesReport:
    derived_series: list
    lower_central_series: list
    solvable: bool
    nilpotent: bool


def check_axioms(L: LieAlgebra):
    """Antisymmetry and Jacobi: exact zero, or intervals enclosing zero."""
    n = L.dim

    def zero(x):
        return x.contains_zero() if isinstance(x, CInterval) else not x

    for i in range(n):
        for j in range(i, n):
            for k in range(n):
                if not zero(L.c[i][j][k] + L.c[j][i][k]):
                    raise AntisymmetryViolation((i, j))
    for i in range(n):
        ei = L.basis_vector(i)
        for j in range(i + 1, n):
            ej = L.basis_vector(j)
            eij = L.c[i][j]
            for k in range(j + 1, n):
                ek = L.basis_vector(k)
                r1 = L.bracket(ei, L.c[j][k])
                r2 = L.bracket(ej, L.c[k][i])
                r3 = L.bracket(ek, eij)
                res = tuple(a + b + c for a, b, c in zip(r1, r2, r3))
                if not all(zero(x) for x in res):
                    raise JacobiViolation((i, j, k), res)


def derived_series(L: LieAlgebra):
    series = [L.full()]
    while True:
        nxt = L.bracket_space(series[-1], series[-1])
        if nxt == series[-1]:
            break
        series.append(nxt)
        if nxt.dim == 0:
            break
    return series


def lower_central_series(L: LieAlgebra):
    full = L.full()
    series = [full]
    while True:
        nxt = L.bracket_space(full, series[-1])
        if nxt == series[-1]:
            break
        series.append(nxt)
        if nxt.dim == 0:
            break
    return series


def validate(L: LieAlgebra) -> SeriesReport:
    check_axioms(L)
    ds = derived_series(L)
    lcs = lower_central_series(L)
    return SeriesReport(ds, lcs, ds[-1].dim == 0, lcs[-1].dim == 0)


def is_solvable(L: LieAlgebra) -> bool:
    return derived_series(L)[-1].dim == 0


def is_nilpotent(L: LieAlgebra) -> bool:
    return lower_central_series(L)[-1].dim == 0


def derived(L: LieAlgebra) -> Subspace:
    full = L.full()
    return L.bracket_space(full, full)


def center(L: LieAlgebra) -> Subspace:
    """Kernel of the stacked adjoint map x -> ([e_i, x])_i."""
    L._require_exact()
    n = L.dim
    rows = []
    for i in range(n):
        ad = L.ad_basis(i)
        rows.extend(ad.entries)
    return kernel(Matrix(rows, cols=n)) if rows else Subspace.zero(n)


def is_ideal(L: LieAlgebra, U: Subspace) -> bool:
    _ambient(L, U)
    return all(U.contains(L.bracket(L.basis_vector(i), u)) for i in range(L.dim) for u in U.basis)


def is_subalgebra(L: LieAlgebra, U: Subspace) -> bool:
    _ambient(L, U)
    return all(U.contains(L.bracket(u, v)) for a, u in enumerate(U.basis) for v in U.basis[a + 1 :])


def is_abelian_subspace(L: LieAlgebra, U: Subspace) -> bool:
    return not any(any(L.bracket(u, v)) for a, u in enumerate(U.basis) for v in U.basis[a + 1 :])


def centralizes(L: LieAlgebra, U: Subspace, V: Subspace) -> bool:
    """[U, V] = 0."""
    return not any(any(L.bracket(u, v)) for u in U.basis for v in V.basis)


def _ambient(L, U):
    if U.ambient_dim != L.dim:
        raise AmbientMismatch(f"subspace of K^{U.ambient_dim} in algebra of dim {L.dim}")


# -- nilradical ------------------------------------------------------------------


def _matmul_flat(A, B, n):
    out = [ZERO] * (n * n)
    for i in range(n):
        row = A[i * n : (i + 1) * n]
        for k, a in enumerate(row):
            if not a:
                continue
            bk = B[k * n : (k + 1) * n]
            base = i * n
            for j, b in enumerate(bk):
                if b:
                    out[base + j] = out[base + j] + a * b
    return out


class _Echelon:
    """Incremental semi-echelon basis for span-growth loops."""

    def __init__(self):
        self.rows = {}  # pivot -> normalized row
        self.order = []

    def reduce(self, v):
        v = list(v)
        for p in sorted(self.rows):
            f = v[p]
            if f:
                r = self.rows[p]
                for k in range(p, len(v)):
                    if r[k]:
                        v[k] = v[k] - f * r[k]
        return v

    def add(self, v) -> bool:
        v = self.reduce(v)
        p = next((k for k, x in enumerate(v) if x), None)
        if p is None:
            return False
        inv = 1 / v[p]
        v = [x * inv if x else x for x in v]
        self.rows[p] = v
        self.order.append(v)
        return True


def associative_closure(mats, n):
    """Basis (flattened n*n) of the associative algebra generated by mats."""
    ech = _Echelon()
    gens = [list(m) for m in mats]
    for g in gens:
        ech.add(g)
    queue = list(ech.order)
    while queue:
        a = queue.pop()
        for g in gens:
            prod = _matmul_flat(g, a, n)
            if ech.add(prod):
                queue.append(ech.order[-1])
    return ech.order


def nilradical(L: LieAlgebra) -> Subspace:
    """Largest nilpotent ideal of a solvable algebra.

    Pulls back the trace radical of the associative envelope of ad(L):
    x is in the nilradical iff Tr(ad x * b) = 0 for every b in the envelope.
    """
    L._require_exact()
    if not is_solvable(L):
        raise NotSolvable("nilradical is only computed for solvable algebras")
    n = L.dim
    if is_nilpotent(L):
        return L.full()
    ads = []
    for i in range(n):
        A = L.ad_basis(i)
        ads.append([x for row in A.entries for x in row])
    env = associative_closure(ads, n)
    # trace pairing Tr(X Y) = sum_{k,l} X[k,l] Y[l,k]
    rows = []
    for b in env:
        bt = [b[l * n + k] for k in range(n) for l in range(n)]
        rows.append([sum((a * t for a, t in zip(ad, bt) if a and t), ZERO) for ad in ads])
    nil = kernel(Matrix(rows, cols=n))
    assert nil.contains_subspace(derived(L)), "nilradical must contain the derived algebra"
    assert is_ideal(L, nil), "nilradical must be an ideal"
    assert is_nilpotent(L.restrict(nil)), "nilradical must be nilpotent"
    return nil


# -- abelian extension splitting ---------------------------------------------------


@dataclass
class SplittingOutcome:
    """Either a certificate (phi, complement) or an obstruction (cocycle, y)."""

    exists: bool
    central: bool
    section_indices: tuple
    cocycle: dict = field(default_factory=dict)
    phi: Matrix | None = None
    complement: Subspace | None = None
    inconsistency: tuple | None = None
    equation_labels: tuple = ()

    def to_dict(self):
        out = {
            "exists": self.exists,
            "variant": "central" if self.central else "semidirect",
            "section_indices": list(self.section_indices),
            "cocycle": {f"{a},{b}": [format_exact(x) for x in v] for (a, b), v in self.cocycle.items()},
        }
        if self.exists:
            out["phi"] = self.phi.to_strings() if self.phi is not None else []
            out["complement_basis"] = [[format_exact(x) for x in v] for v in self.complement.basis]
        else:
            rows = [
                {"equation": lab, "weight": format_exact(w)}
                for lab, w in zip(self.equation_labels, self.inconsistency)
                if w
            ]
            out["inconsistent_rows"] = rows
        return out


def split_abelian_extension(L: LieAlgebra, m: Subspace, require_central_complement=False) -> SplittingOutcome:
    """Decide whether L = a0 (+) m with a0 a subalgebra (and [a0, m] = 0 if central).

    Solves the coboundary equation c = d(phi) for the extension cocycle of the
    echelon section as one exact linear system.
    """
    L._require_exact()
    _ambient(L, m)
    if not is_ideal(L, m):
        raise NotAnIdeal("m is not an ideal")
    if not is_abelian_subspace(L, m):
        raise NotAbelian("m is not abelian")
    if require_central_complement and not centralizes(L, L.full(), m):
        raise ActionNotCentral("[L, m] != 0, no central complement possible")
    n = L.dim
    r = m.dim
    sec = m.complement_indices()
    q = len(sec)

    def axis(j):
        return tuple(ONE if k == j else ZERO for k in range(n))

    def split(v):
        beta = tuple(v[p] for p in m.pivots)
        w = list(v)
        for b, u in zip(beta, m.basis):
            if b:
                w = [x - b * y for x, y in zip(w, u)]
        alpha = tuple(w[j] for j in sec)
        return alpha, beta

    s = [axis(j) for j in sec]
    f = {}
    cocycle = {}
    for a in range(q):
        for b in range(a + 1, q):
            alpha, beta = split(L.bracket(s[a], s[b]))
            f[(a, b)] = alpha
            cocycle[(a, b)] = beta
    # rho[a][k][l]: coordinate k of [s_a, u_l]
    rho = [[[ZERO] * r for _ in range(r)] for _ in range(q)]
    if not require_central_complement:
        for a in range(q):
            for l, u in enumerate(m.basis):
                coords = m.coords(L.bracket(s[a], u))
                for k in range(r):
                    rho[a][k][l] = coords[k]

    def var(k, a):
        return k * q + a

    rows, rhs, labels = [], [], []
    for a in range(q):
        for b in range(a + 1, q):
            for k in range(r):
                row = [ZERO] * (r * q)
                for l in range(r):
                    if rho[a][k][l]:
                        row[var(l, b)] += rho[a][k][l]
                    if rho[b][k][l]:
                        row[var(l, a)] -= rho[b][k][l]
                for cidx, fc in enumerate(f[(a, b)]):
                    if fc:
                        row[var(k, cidx)] -= fc
                rows.append(row)
                rhs.append(cocycle[(a, b)][k])
                labels.append(f"({L.labels[sec[a]]},{L.labels[sec[b]]})->m[{k}]")
    if not rows or r == 0:
        sol = tuple([ZERO] * (r * q))
    else:
        sol = solve_linear(Matrix(rows, cols=r * q), rhs)
    if sol is None:
        A = Matrix(rows, cols=r * q)
        y = inconsistency_certificate(A, rhs)
        return SplittingOutcome(False, require_central_complement, tuple(sec), cocycle, inconsistency=y,
                                equation_labels=tuple(labels))
    phi = Matrix([[sol[var(k, a)] for a in range(q)] for k in range(r)], cols=q)
    comp_vecs = []
    for a in range(q):
        v = list(s[a])
        for k, u in enumerate(m.basis):
            c = sol[var(k, a)]
            if c:
                v = [x - c * y for x, y in zip(v, u)]
        comp_vecs.append(v)
    a0 = Subspace.span(comp_vecs, n) if comp_vecs else Subspace.zero(n)
    if not is_subalgebra(L, a0) or a0.join(m).dim != n or a0.meet(m).dim != 0:
        raise AssertionError("splitting certificate failed re-verification")
    if require_central_complement and not centralizes(L, a0, m):
        raise AssertionError("central certificate failed re-verification")
    return SplittingOutcome(True, require_central_complement, tuple(sec), cocycle, phi=phi, complement=a0)
