"""CR-solvmanifold triples as data.

A triple is stored in realified form: a real Lie algebra of dimension 2n with
a complex structure J and the real subalgebra g0.  Structure constants may
depend linearly on named real parameters (real/imaginary parts of constants
such as log(alpha)); they are kept as one exact tensor per parameter so the
triple can be instantiated either exactly (rational stand-ins) or with
certified intervals.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import mpmath
from gmpy2 import mpq

from .errors import (
    InvalidComplexStructure,
    MNotIdeal,
    NotGeneric,
    NotSolvable,
    NotSubalgebra,
    SubtripleNotGeneric,
    ValidationError,
)
from .liecore import (
    LieAlgebra,
    center,
    check_axioms,
    is_abelian_subspace,
    is_ideal,
    is_nilpotent,
    is_solvable,
    nilradical,
)
from .parametric import param_matrix
from .linalg import Matrix, Subspace, char_poly, inverse, is_diagonalizable, kernel, subspace_meet_join
from .scalar.exact import Exact, exact, format_exact, imag_part, is_real, make, real_part
from .scalar.interval import DEFAULT_PRECISION, CInterval, real_interval
from .scalar.poly import (
    Polynomial,
    all_roots_purely_imaginary,
    interval_roots_imaginary,
    squarefree_part,
)
from .truth import Truth

ZERO = mpq(0)
ONE = mpq(1)
I = Exact(0, 1)


@dataclass(frozen=True)
class FieldDescriptor:
    kind: str = "gaussian-rational"  # or "gaussian-rational-with-sqrt", "complex-interval"
    sqrt: int = 0
    precision: int = DEFAULT_PRECISION

    def __post_init__(self):
        if self.kind not in ("gaussian-rational", "gaussian-rational-with-sqrt", "complex-interval"):
            raise ValidationError(f"unknown field kind {self.kind!r}")
        if self.kind == "gaussian-rational-with-sqrt":
            from .scalar.exact import _squarefree

            if not _squarefree(self.sqrt):
                raise ValidationError(f"sqrt({self.sqrt}) needs a squarefree d >= 2")
        if self.precision < 32 and self.kind == "complex-interval":
            raise ValidationError("interval precision must be at least 32 bits")

    def to_dict(self):
        out = {"kind": self.kind}
        if self.sqrt:
            out["sqrt"] = self.sqrt
        if self.kind == "complex-interval":
            out["precision"] = self.precision
        return out


@dataclass(frozen=True)
class NamedConstant:
    """A real or complex constant known through certified decimal bounds.

    ``re``/``im`` are (lo, hi) decimal strings.  A real constant has no ``im``;
    a declared-imaginary constant has no ``re``.  ``surrogate`` is an exact
    stand-in with the same zero / real / imaginary pattern.
    """

    name: str
    re: tuple | None = None
    im: tuple | None = None
    real: bool = False
    declared_imaginary: bool = False
    surrogate: object = ONE

    def __post_init__(self):
        if self.real and self.declared_imaginary:
            raise ValidationError(f"constant {self.name} cannot be both real and imaginary")
        if self.real and self.im is not None:
            raise ValidationError(f"real constant {self.name} has an imaginary enclosure")
        if self.declared_imaginary and self.re is not None:
            raise ValidationError(f"imaginary constant {self.name} has a real enclosure")
        s = exact(self.surrogate)
        object.__setattr__(self, "surrogate", s)
        if self.real and not is_real(s):
            raise ValidationError(f"surrogate of real constant {self.name} is not real")
        if self.declared_imaginary and real_part(s):
            raise ValidationError(f"surrogate of imaginary constant {self.name} is not imaginary")

    def params(self):
        out = []
        if not self.declared_imaginary:
            out.append(self.name + ".re")
        if not self.real:
            out.append(self.name + ".im")
        return out

    def param_interval(self, part, prec) -> CInterval:
        bounds = self.re if part == "re" else self.im
        if bounds is None:
            return CInterval.from_exact(0, prec)
        return CInterval(real_interval(bounds[0], bounds[1], prec), prec=prec)

    def param_surrogate(self, part):
        return real_part(self.surrogate) if part == "re" else imag_part(self.surrogate)

    def enclosure(self, prec=DEFAULT_PRECISION) -> CInterval:
        return self.param_interval("re", prec) + I * self.param_interval("im", prec)

    def to_dict(self):
        out = {"name": self.name, "real": self.real, "declared_imaginary": self.declared_imaginary}
        if self.declared_imaginary:
            out["enclosure"] = list(self.im)
        else:
            out["enclosure"] = list(self.re)
            if self.im is not None:
                out["imag_enclosure"] = list(self.im)
        out["surrogate"] = format_exact(self.surrogate)
        return out


def _split_param(p):
    name, part = p.rsplit(".", 1)
    return name, part


@dataclass(frozen=True, eq=False)
class CRSTriple:
    """Realified triple (g_real, J, g0) with parametric structure constants.

    ``parts[""]`` holds the constant tensor; ``parts["c.re"]`` etc. hold the
    coefficient tensors of real parameters.
    """

    parts: dict
    J: Matrix
    g0: Subspace
    constants: dict = field(default_factory=dict)
    lattice_generators: tuple = ()
    labels: tuple = ()
    field: FieldDescriptor = field(default_factory=FieldDescriptor)
    name: str = ""
    source: dict | None = None  # complex-form input, kept for serialization

    @property
    def dim(self) -> int:
        return self.J.rows

    @property
    def n(self) -> int:
        return self.dim // 2

    @property
    def has_constants(self) -> bool:
        return any(k for k in self.parts)

    @property
    def codim(self) -> int:
        return self.dim - self.g0.dim

    def _combine(self, values):
        n = self.dim
        base = self.parts[""].c
        c = [[list(base[i][j]) for j in range(n)] for i in range(n)]
        for p, L in self.parts.items():
            if not p:
                continue
            v = values[p]
            for i in range(n):
                for j in range(n):
                    row = L.c[i][j]
                    tgt = c[i][j]
                    for k, x in enumerate(row):
                        if x:
                            tgt[k] = tgt[k] + v * x
        return LieAlgebra(n, c, self.labels)

    @cached_property
    def exact_algebra(self) -> LieAlgebra:
        """g_real with exact scalars (surrogates substituted for constants)."""
        if not self.has_constants:
            return self.parts[""]
        vals = {}
        for p in self.parts:
            if p:
                name, part = _split_param(p)
                vals[p] = self.constants[name].param_surrogate(part)
        return self._combine(vals)

    def param_values(self, prec=DEFAULT_PRECISION) -> dict:
        """Interval enclosure of every real parameter, keyed like ``parts``."""
        vals = {}
        for p in self.parts:
            if p:
                name, part = _split_param(p)
                vals[p] = self.constants[name].param_interval(part, prec)
        return vals

    def interval_algebra(self, prec=DEFAULT_PRECISION) -> LieAlgebra:
        vals = self.param_values(prec)
        n = self.dim
        base = self.parts[""]
        c = [[[CInterval.from_exact(x, prec) for x in base.c[i][j]] for j in range(n)] for i in range(n)]
        L = LieAlgebra(n, c, self.labels)
        return _add_params(L, self.parts, vals)

    def transform(self, P: Matrix) -> "CRSTriple":
        """Same triple in the real basis given by the columns of P."""
        Pinv = inverse(P)
        parts = {k: L.change_basis(P) for k, L in self.parts.items()}
        J = Pinv @ self.J @ P
        g0 = Subspace.span([Pinv @ v for v in self.g0.basis], self.dim)
        return CRSTriple(parts, J, g0, self.constants, (), tuple(f"b{i}" for i in range(self.dim)),
                         self.field, self.name)

    def canonical(self):
        """Comparable canonical form (used for round-trip equality)."""
        return (
            tuple(sorted((k, L.c) for k, L in self.parts.items())),
            self.J.entries,
            self.g0.basis,
            tuple(sorted((k, c.to_dict().__repr__()) for k, c in self.constants.items())),
            self.labels,
        )

    def __eq__(self, other):
        return isinstance(other, CRSTriple) and self.canonical() == other.canonical()

    def __hash__(self):
        return hash(self.canonical())


def _add_params(L, parts, vals):
    n = L.dim
    c = [[list(L.c[i][j]) for j in range(n)] for i in range(n)]
    for p, T in parts.items():
        if not p:
            continue
        v = vals[p]
        for i in range(n):
            for j in range(n):
                for k, x in enumerate(T.c[i][j]):
                    if x:
                        c[i][j][k] = c[i][j][k] + v * x
    return LieAlgebra(n, c, L.labels)


# -- construction ------------------------------------------------------------------


def standard_J(n) -> Matrix:
    """Complex structure on (e_1..e_n, Je_1..Je_n)."""
    rows = [[ZERO] * (2 * n) for _ in range(2 * n)]
    for k in range(n):
        rows[n + k][k] = ONE  # J e_k = Je_k
        rows[k][n + k] = -ONE  # J Je_k = -e_k
    return Matrix(rows)


def _coef_terms(value):
    """Normalize a complex coefficient entry to [(exact, const_name | None)]."""
    if isinstance(value, list):
        out = []
        for v in value:
            out.extend(_coef_terms(v))
        return out
    if isinstance(value, tuple) and len(value) == 2 and isinstance(value[1], str):
        return [(exact(value[0]), value[1])]
    if isinstance(value, dict):
        return [(exact(value.get("coef", "1")), value["const"])]
    return [(exact(value), None)]


def realify_brackets(n, brackets, constants):
    """Complex sparse brackets -> dict of real exact tensors keyed by parameter."""
    dim = 2 * n
    acc = {}

    def add(param, i, j, k, v):
        if not v:
            return
        T = acc.setdefault(param, [[[ZERO] * dim for _ in range(dim)] for _ in range(dim)])
        T[i][j][k] = T[i][j][k] + v
        T[j][i][k] = T[j][i][k] - v

    for (i, j), out in brackets.items():
        for k, value in out.items():
            for kappa, cname in _coef_terms(value):
                if cname is None:
                    contribs = [("", real_part(kappa), imag_part(kappa))]
                else:
                    if cname not in constants:
                        raise ValidationError(f"unknown constant {cname!r}")
                    kr, ki = real_part(kappa), imag_part(kappa)
                    const = constants[cname]
                    contribs = []
                    if not const.declared_imaginary:
                        contribs.append((cname + ".re", kr, ki))
                    if not const.real:
                        contribs.append((cname + ".im", -ki, kr))
                for param, a, b in contribs:
                    # [e_i,e_j] = a e_k + b Je_k ; [Je_i,e_j] = [e_i,Je_j] = a Je_k - b e_k ;
                    # [Je_i,Je_j] = -a e_k - b Je_k
                    add(param, i, j, k, a)
                    add(param, i, j, n + k, b)
                    add(param, n + i, j, n + k, a)
                    add(param, n + i, j, k, -b)
                    add(param, i, n + j, n + k, a)
                    add(param, i, n + j, k, -b)
                    add(param, n + i, n + j, k, -a)
                    add(param, n + i, n + j, n + k, -b)
    return acc


def realify_vector(v):
    v = [exact(x) for x in v]
    return tuple(real_part(x) for x in v) + tuple(imag_part(x) for x in v)


def build_crs(
    n=None,
    brackets=None,
    g0_basis=None,
    *,
    labels=None,
    constants=None,
    lattice_generators=(),
    field=None,
    name="",
    real_parts=None,
    J=None,
    real_g0_basis=None,
) -> CRSTriple:
    """Build and validate a triple.

    Complex form: ``n`` complex dimensions, sparse ``brackets`` {(i, j): {k: coef}}
    with coefficients that are exact scalars or (exact, constant-name) terms,
    and ``g0_basis`` as complex coordinate vectors.  Real form: pass
    ``real_parts`` (parameter -> LieAlgebra), ``J`` and ``real_g0_basis``.
    """
    constants = dict(constants or {})
    if real_parts is None:
        labels = list(labels or [f"e{k}" for k in range(n)])
        real_labels = tuple(labels) + tuple("i" + s for s in labels)
        tensors = realify_brackets(n, brackets or {}, constants)
        dim = 2 * n
        parts = {"": LieAlgebra(dim, tensors.get("", [[[ZERO] * dim] * dim] * dim), real_labels)}
        for p, T in tensors.items():
            if p:
                parts[p] = LieAlgebra(dim, T, real_labels)
        J = standard_J(n)
        g0_vecs = [realify_vector(v) for v in g0_basis]
    else:
        parts = dict(real_parts)
        dim = J.rows
        real_labels = tuple(labels or parts[""].labels)
        g0_vecs = [tuple(exact(x) for x in v) for v in real_g0_basis]
    g0 = Subspace.span(g0_vecs, dim) if g0_vecs else Subspace.zero(dim)
    if g0.dim != len(g0_vecs):
        raise ValidationError("g0 basis vectors are linearly dependent", "g0_basis")
    field = field or _infer_field(parts, g0)
    source = None
    if real_parts is None:
        source = {"n": n, "labels": list(labels), "brackets": brackets or {}, "g0_basis": [list(v) for v in g0_basis]}
    T = CRSTriple(parts, J, g0, constants, tuple(lattice_generators), real_labels, field, name, source)
    validate_triple(T)
    return T


def _infer_field(parts, g0):
    ds = set()
    for L in parts.values():
        for row in L.c:
            for v in row:
                for x in v:
                    if isinstance(x, Exact) and x.d:
                        ds.add(x.d)
    for b in g0.basis:
        for x in b:
            if isinstance(x, Exact) and x.d:
                ds.add(x.d)
    if len(ds) > 1:
        raise ValidationError(f"more than one square root in use: {sorted(ds)}")
    if ds:
        return FieldDescriptor("gaussian-rational-with-sqrt", ds.pop())
    return FieldDescriptor()


def validate_triple(T: CRSTriple):
    dim = T.dim
    if dim % 2:
        raise InvalidComplexStructure("real dimension must be even")
    if not (T.J @ T.J) == Matrix.identity(dim).scale(-1):
        raise InvalidComplexStructure("J^2 != -1")
    # complex bilinearity [Jx, y] = J[x, y], identically in the parameters
    for p, L in T.parts.items():
        for i in range(dim):
            Jei = T.J.column(i)
            for j in range(dim):
                lhs = L.bracket(Jei, L.basis_vector(j))
                rhs = T.J @ L.c[i][j]
                if tuple(lhs) != tuple(rhs):
                    raise ValidationError(f"bracket is not complex bilinear on ({i},{j})", p or "base")
    L = T.exact_algebra
    check_axioms(L)
    if T.has_constants:
        check_axioms(T.interval_algebra(T.field.precision))
    if not is_solvable(L):
        raise NotSolvable("g is not solvable")
    basis = T.g0.basis
    for a in range(len(basis)):
        for b in range(a + 1, len(basis)):
            if not T.g0.contains(L.bracket(basis[a], basis[b])):
                raise NotSubalgebra((a, b))
    Jg0 = T.g0.image(T.J)
    _, s = subspace_meet_join(T.g0, Jg0)
    if s.dim != dim:
        raise NotGeneric(dim - s.dim)


# -- m and the adjoint action ------------------------------------------------------


def j_adapted_basis(J: Matrix, U: Subspace):
    """v_1..v_k in U with (v_1..v_k, Jv_1..Jv_k) a basis of U."""
    chosen = []
    span = Subspace.zero(U.ambient_dim)
    for v in U.basis:
        if span.contains(v):
            continue
        chosen.append(v)
        span = Subspace.span(list(span.basis) + [v, J @ v], U.ambient_dim)
    return chosen


@dataclass
class MData:
    m: Subspace
    k: int
    codim: int
    is_abelian: bool
    is_ideal_in_g: bool
    is_ideal_in_g0: bool
    complex_basis: list

    def to_dict(self):
        return {
            "real_dim": self.m.dim,
            "complex_dim": self.k,
            "codim": self.codim,
            "is_abelian": self.is_abelian,
            "is_ideal_in_g": self.is_ideal_in_g,
            "is_ideal_in_g0": self.is_ideal_in_g0,
            "basis": [[format_exact(x) for x in v] for v in self.m.basis],
        }


def compute_m(T: CRSTriple) -> MData:
    m, _ = subspace_meet_join(T.g0, T.g0.image(T.J))
    assert m.image(T.J) == m, "m must be J-stable"
    L = T.exact_algebra
    g0_alg_ideal = all(m.contains(L.bracket(x, u)) for x in T.g0.basis for u in m.basis)
    return MData(
        m=m,
        k=m.dim // 2,
        codim=T.codim,
        is_abelian=is_abelian_subspace(L, m),
        is_ideal_in_g=is_ideal(L, m),
        is_ideal_in_g0=g0_alg_ideal,
        complex_basis=j_adapted_basis(T.J, m),
    )


class ComplexCoords:
    """Complex coordinates on a J-stable subspace w.r.t. a J-adapted basis."""

    def __init__(self, J, U: Subspace, adapted=None):
        self.U = U
        self.adapted = adapted if adapted is not None else j_adapted_basis(J, U)
        self.k = len(self.adapted)
        basis = list(self.adapted) + [J @ v for v in self.adapted]
        self.real_basis = basis
        B = Matrix.from_columns([U.coords(v) for v in basis]) if basis else None
        self.Binv = inverse(B) if B is not None else None

    def of(self, w):
        """Complex coordinate vector of w in U (exact or interval entries)."""
        if not self.k:
            return ()
        x = self.Binv @ self.U.coords(w)
        return tuple(x[j] + I * x[self.k + j] for j in range(self.k))

    def to_real(self, z):
        """Real vector for complex coordinates z (exact)."""
        out = [ZERO] * self.U.ambient_dim
        for j, zj in enumerate(z):
            a, b = real_part(zj), imag_part(zj)
            for vec, f in ((self.real_basis[j], a), (self.real_basis[self.k + j], b)):
                if f:
                    out = [o + f * x for o, x in zip(out, vec)]
        return tuple(out)


def complement_generators(T: CRSTriple, m: Subspace):
    """Echelon complement of m inside g0 (real vectors of g_real)."""
    in_g0 = [T.g0.coords(u) for u in m.basis]
    msub = Subspace.span(in_g0, T.g0.dim) if in_g0 else Subspace.zero(T.g0.dim)
    return [T.g0.basis[i] for i in msub.complement_indices()]


@dataclass
class SpectralReport:
    generators: list
    matrices: list
    commuting: bool
    each_diagonalizable: list
    spectra_imaginary: list
    weights: list | None = None
    char_polys: list = field(default_factory=list)
    tests: list = field(default_factory=list)
    backend: str = "exact"
    precision: int | None = None
    notes: list = field(default_factory=list)

    def to_dict(self, certificates=True):
        out = {
            "backend": self.backend,
            "precision": self.precision,
            "commuting": self.commuting,
            "each_diagonalizable": [str(t) for t in self.each_diagonalizable],
            "spectra_imaginary": [str(t) for t in self.spectra_imaginary],
        }
        if certificates:
            out["generators"] = [[format_exact(x) for x in g] for g in self.generators]
            out["matrices"] = [M.to_strings() for M in self.matrices]
            out["char_polys"] = [p.to_strings() for p in self.char_polys]
            if self.weights is not None:
                out["weights"] = [[format_exact(x) for x in row] for row in self.weights]
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def _rho(L, coords, x, m_basis):
    cols = [coords.of(L.bracket(x, v)) for v in m_basis]
    return Matrix.from_columns(cols) if cols else Matrix.zeros(0, 0)


def adjoint_on_m(T: CRSTriple, M: MData | None = None, *, prec=None) -> SpectralReport:
    """ad(g0)|_m as complex k x k matrices with diagonalizability and spectrum flags.

    ``prec=None`` runs exactly (surrogates for constants); an integer runs the
    spectrum test with certified intervals at that precision.
    """
    M = M or compute_m(T)
    if not M.is_ideal_in_g0:
        raise MNotIdeal("m is not an ideal of g0")
    L = T.exact_algebra
    coords = ComplexCoords(T.J, M.m, M.complex_basis)
    gens = complement_generators(T, M.m)
    for u in M.m.basis:
        assert not M.is_abelian or not any(any(L.bracket(u, w)) for w in M.m.basis)
    exact_mats = [_rho(L, coords, x, M.complex_basis) for x in gens]
    # rho vanishes on [g0, g0] iff the action is commutative
    g0b = T.g0.basis
    derived_vecs = [L.bracket(a, b) for i, a in enumerate(g0b) for b in g0b[i + 1 :]]
    commuting = not any(any(L.bracket(d, u)) for d in derived_vecs for u in M.m.basis)
    interval = prec is not None and T.has_constants
    report = SpectralReport(gens, [], commuting, [], [], backend="interval" if interval else "exact",
                            precision=prec if interval else None)
    if T.has_constants and not interval:
        report.notes.append("constants replaced by exact surrogates")
    polys = [None] * len(gens)
    if interval and M.k:
        vals = T.param_values(prec)
        pms = [param_matrix(T, lambda Lp, x=x: _rho(Lp, coords, x, M.complex_basis)) for x in gens]
        mats = [pm.evaluate(vals, prec) for pm in pms]
        polys = [pm.char_poly(vals, prec) for pm in pms]
    else:
        mats = exact_mats
    report.matrices = mats
    for Mx, Me, p in zip(mats, exact_mats, polys):
        if Mx.rows == 0:
            report.char_polys.append(Polynomial([1]))
            report.each_diagonalizable.append(Truth.TRUE)
            report.spectra_imaginary.append(Truth.TRUE)
            report.tests.append(None)
            continue
        p = p or char_poly(Mx)
        report.char_polys.append(p)
        if interval:
            test = interval_roots_imaginary(p, prec)
            report.tests.append(test)
            report.spectra_imaginary.append(test.value)
            distinct = all(cl.count == 1 for cl in test.clusters)
            if distinct:
                report.each_diagonalizable.append(Truth.TRUE)
            else:
                report.each_diagonalizable.append(Truth.of(is_diagonalizable(Me)))
                report.notes.append("diagonalizability of clustered spectrum decided on exact surrogates")
        else:
            report.tests.append(None)
            report.spectra_imaginary.append(Truth.of(all_roots_purely_imaginary(p)))
            report.each_diagonalizable.append(Truth.of(is_diagonalizable(Mx)))
    if not interval and commuting and all(t is Truth.TRUE for t in report.each_diagonalizable):
        report.weights = weight_table(exact_mats, M.k)
    return report


def field_roots(p: Polynomial):
    """Roots of an exact polynomial lying in Q(i), or None if some root is not."""
    s = squarefree_part(p)
    if s.degree == 0:
        return []
    ctx = mpmath.MPContext()
    ctx.dps = 60
    coeffs = []
    for c in reversed(s.coeffs):
        a = real_part(c)
        b = imag_part(c)
        if (isinstance(a, Exact)) or (isinstance(b, Exact)):
            return None
        coeffs.append(ctx.mpc(ctx.mpf(int(a.numerator)) / int(a.denominator),
                              ctx.mpf(int(b.numerator)) / int(b.denominator)))
    approx = ctx.polyroots(coeffs, maxsteps=200, extraprec=200) if len(coeffs) > 1 else []
    roots = []
    for z in approx:
        re = Fraction(str(ctx.nstr(z.real, 40))).limit_denominator(10**9)
        im = Fraction(str(ctx.nstr(z.imag, 40))).limit_denominator(10**9)
        cand = make(mpq(re), mpq(im))
        if s(cand):
            return None
        roots.append(cand)
    return roots


def weight_table(mats, k):
    """Joint eigenvalues lambda_j(x_i) over Q(i); rows are joint eigenlines."""
    if k == 0:
        return []
    spaces = [Subspace.full(k)]
    per_mat_roots = []
    for Mx in mats:
        roots = field_roots(char_poly(Mx))
        if roots is None:
            return None
        per_mat_roots.append(roots)
    for Mx, roots in zip(mats, per_mat_roots):
        refined = []
        for V in spaces:
            for lam in roots:
                E = kernel(Mx - Matrix.identity(k).scale(lam))
                W, _ = subspace_meet_join(V, E)
                if W.dim:
                    refined.append(W)
        spaces = refined
    rows = []
    for V in spaces:
        for v in V.basis:
            row = []
            for Mx in mats:
                w = Mx @ v
                p = next(i for i, x in enumerate(v) if x)
                row.append(w[p] / v[p])
            rows.append(row)
    return rows


# -- nilradical sub-triple ------------------------------------------------------------


def complex_form(T: CRSTriple):
    """(complex LieAlgebra of g, ComplexCoords on g_real)."""
    full = Subspace.full(T.dim)
    cc = ComplexCoords(T.J, full)
    L = T.exact_algebra
    v = cc.adapted
    c = [[cc.of(L.bracket(v[a], v[b])) for b in range(cc.k)] for a in range(cc.k)]
    return LieAlgebra(cc.k, c), cc


def complex_nilradical(T: CRSTriple) -> Subspace:
    """Real subspace of g_real underlying the nilradical of the complex algebra g."""
    L = T.exact_algebra
    if is_nilpotent(L):
        return Subspace.full(T.dim)
    G, cc = complex_form(T)
    N = nilradical(G)
    vecs = []
    for z in N.basis:
        w = cc.to_real(z)
        vecs.extend([w, T.J @ w])
    n = Subspace.span(vecs, T.dim) if vecs else Subspace.zero(T.dim)
    return n


def restrict_triple(T: CRSTriple, U: Subspace, g0_sub: Subspace, name_suffix="") -> CRSTriple:
    """Sub-triple on a J-stable subalgebra U with real subalgebra g0_sub ⊆ U."""
    parts = {}
    for p, L in T.parts.items():
        for a in U.basis:
            for b in U.basis:
                if not U.contains(L.bracket(a, b)):
                    raise ValidationError("parametric tensor leaves the subalgebra", p or "base")
        parts[p] = L.restrict(U)
    J = Matrix.from_columns([U.coords(T.J @ b) for b in U.basis])
    g0 = Subspace.span([U.coords(v) for v in g0_sub.basis], U.dim) if g0_sub.dim else Subspace.zero(U.dim)
    labels = tuple(f"n{i}" for i in range(U.dim))
    return CRSTriple(parts, J, g0, T.constants, (), labels, T.field, T.name + name_suffix)


@dataclass
class NilpotentSubtriple:
    triple: CRSTriple
    n: Subspace
    n0: Subspace
    is_whole: bool


def nilpotent_subtriple(T: CRSTriple) -> NilpotentSubtriple:
    """(n0 inside n): nilradicals of g and g0 as a CRS triple.

    n0 is computed as g0 ∩ n, which equals the nilradical of g0 for generic g0.
    """
    n = complex_nilradical(T)
    n0, _ = subspace_meet_join(T.g0, n)
    _, s = subspace_meet_join(n0, n0.image(T.J))
    if s != n:
        raise SubtripleNotGeneric(n.dim, s.dim)
    m = compute_m(T).m
    if n0.contains_subspace(m):
        sub_m, _ = subspace_meet_join(n0, n0.image(T.J))
        assert sub_m == m, "m of the nilpotent sub-triple must equal m"
    if n.dim == T.dim:
        return NilpotentSubtriple(T, n, n0, True)
    sub = restrict_triple(T, n, n0, ":nil")
    return NilpotentSubtriple(sub, n, n0, False)


def g0_algebra(T: CRSTriple):
    """g0 as an exact Lie algebra in its echelon coordinates."""
    return T.exact_algebra.restrict(T.g0)


def g0_interval_algebra(T: CRSTriple, prec):
    return T.interval_algebra(prec).restrict(T.g0)


def center_of(T: CRSTriple) -> Subspace:
    return center(T.exact_algebra)
