"""Constructors for the standard examples.

Transcendental constants (logarithms, arguments, 2*pi) are computed here as
certified enclosures and stored as named constants with decimal bounds; each
also gets a rational stand-in close to its midpoint for the exact path.
"""

from __future__ import annotations

from fractions import Fraction

from gmpy2 import mpq
from mpmath.libmp import fzero, libmpi, mpf_lt

from .crsmodel import CRSTriple, NamedConstant, build_crs
from .errors import BadParameters, NonImaginaryWeight, NotSalem, RootPatternViolation, UnknownExample
from .linalg import Matrix, char_poly
from .scalar.exact import Exact, exact, format_exact, imag_part, parse_exact, real_part, real_sign
from .scalar.interval import CInterval, decimal_bounds, log, pi, real_interval, real_sqrt
from .scalar.poly import Polynomial, squarefree_part, sturm_real_root_count

I = Exact(0, 1)
WORK = 400  # bits used when computing constant enclosures
DIGITS = 60  # decimal digits kept in the emitted bounds


def _scalar(x):
    return parse_exact(x) if isinstance(x, str) else exact(x)


def _surrogate(iv) -> mpq:
    lo, hi = decimal_bounds(iv, 20)
    mid = (Fraction(lo) + Fraction(hi)) / 2
    q = mid.limit_denominator(1000)
    if q == 0:
        q = mid.limit_denominator(10**6)
    return mpq(q.numerator, q.denominator)


def real_constant(name, iv) -> NamedConstant:
    return NamedConstant(name, re=decimal_bounds(iv, DIGITS), real=True, surrogate=_surrogate(iv))


def imaginary_constant(name, iv_im) -> NamedConstant:
    return NamedConstant(name, im=decimal_bounds(iv_im, DIGITS), declared_imaginary=True,
                         surrogate=I * _surrogate(iv_im))


def complex_constant(name, z: CInterval) -> NamedConstant:
    return NamedConstant(name, re=decimal_bounds(z.re, DIGITS), im=decimal_bounds(z.im, DIGITS),
                         surrogate=_surrogate(z.re) + I * _surrogate(z.im))


def _approx(z: CInterval, digits=25) -> str:
    lo, hi = decimal_bounds(z.re, digits)
    ilo, ihi = decimal_bounds(z.im, digits)
    re = (Fraction(lo) + Fraction(hi)) / 2
    im = (Fraction(ilo) + Fraction(ihi)) / 2
    fmt = lambda f: f"{float(f):.17g}"  # noqa: E731
    if im == 0:
        return fmt(re)
    return f"{fmt(re)} + {fmt(im)} i"


def bracket_root(p: Polynomial, lo, hi, bits=WORK) -> tuple:
    """Exact rational bracket [a, b] of width <= 2^-bits around the sign change of p in (lo, hi)."""
    a, b = mpq(lo), mpq(hi)
    sa, sb = real_sign(p(a)), real_sign(p(b))
    if sa == 0:
        return a, a
    if sb == 0:
        return b, b
    if sa == sb:
        raise ValueError("no sign change on the bracket")
    eps = mpq(1, 2**bits)
    while b - a > eps:
        c = (a + b) / 2
        sc = real_sign(p(c))
        if sc == 0:
            return c, c
        if sc == sa:
            a = c
        else:
            b = c
    return a, b


def _root_bound(p: Polynomial):
    lc = p.coeffs[-1]
    return 1 + max(abs(mpq(c / lc)) for c in p.coeffs[:-1])


# -- two-dimensional family ------------------------------------------------------------


def make_lemma31(beta="i") -> CRSTriple:
    """g = span(Z, W), [Z, W] = beta W, g0 = RZ + CW."""
    beta = _scalar(beta)
    return build_crs(
        2,
        {(0, 1): {1: beta}} if beta else {},
        [[1, 0], [0, 1], [0, I]],
        labels=["Z", "W"],
        name=f"lemma31(beta={format_exact(beta)})",
    )


# -- non-imaginary spectrum ------------------------------------------------------------


def inoue_matrix(k: int) -> Matrix:
    return Matrix([[0, 1, 0], [k, 0, 1], [1, 1 - k, 0]])


def inoue_data(k=2, matrix=None, prec=WORK) -> dict:
    """alpha (real eigenvalue > 1) and beta (Im > 0) of the integer matrix, as enclosures."""
    A = matrix if matrix is not None else inoue_matrix(k)
    if not isinstance(A, Matrix):
        A = Matrix(A)
    if A.shape != (3, 3) or not all(isinstance(x, type(mpq(0))) and x.denominator == 1 for r in A.entries for x in r):
        raise RootPatternViolation("need a 3x3 integer matrix")
    p = char_poly(A)
    if squarefree_part(p).degree != 3:
        raise RootPatternViolation(f"characteristic polynomial {p.to_strings()} has a repeated root")
    if sturm_real_root_count(p) != 1:
        raise RootPatternViolation(f"characteristic polynomial {p.to_strings()} does not have exactly one real root")
    B = _root_bound(p)
    if real_sign(p(1)) >= 0:
        raise RootPatternViolation("the real eigenvalue is not > 1")
    a, b = bracket_root(p, 1, B)
    alpha = CInterval(real_interval(a, b, prec), prec=prec)
    det = p.coeffs[0] * (-1) ** 3
    tr = -p.coeffs[2]
    if det != 1:
        raise RootPatternViolation(f"det A = {format_exact(det)}, not 1")
    re_beta = (CInterval.from_exact(tr, prec) - alpha) / 2
    abs2 = CInterval.from_exact(det, prec) / alpha
    im_beta = real_sqrt(abs2 - re_beta * re_beta)
    beta = re_beta + I * im_beta
    return {"matrix": A, "char_poly": p, "alpha": alpha, "beta": beta, "abs_beta_sq": abs2, "det": det}


def make_inoue(k: int = 2, matrix=None) -> CRSTriple:
    """G = C x| C^2 with [T,X] = log(alpha) X, [T,Y] = log(beta) Y; g0 = RT + CX + CY."""
    if matrix is None and not isinstance(k, int):
        raise BadParameters("k must be an integer")
    d = inoue_data(k, matrix)
    la, lb = log(d["alpha"]), log(d["beta"])
    consts = {"lnalpha": real_constant("lnalpha", la.re), "logbeta": complex_constant("logbeta", lb)}
    kk = d["matrix"][1, 0]
    lattice = [["1", "0", "0"]]
    alpha, beta = d["alpha"], d["beta"]
    avec = [CInterval.from_exact(1, WORK), alpha, alpha * alpha - kk]
    bvec = [CInterval.from_exact(1, WORK), beta, beta * beta - kk]
    for j in range(3):
        lattice.append(["0", _approx(avec[j]), _approx(bvec[j])])
    return build_crs(
        3,
        {(0, 1): {1: (1, "lnalpha")}, (0, 2): {2: (1, "logbeta")}},
        [[1, 0, 0], [0, 1, 0], [0, I, 0], [0, 0, 1], [0, 0, I]],
        labels=["T", "X", "Y"],
        constants=consts,
        lattice_generators=lattice,
        name=f"inoue(k={k})" if matrix is None else "inoue(matrix)",
    )


# -- five-dimensional example ------------------------------------------------------------


def make_heisenberg5() -> CRSTriple:
    """(C x| H_3) x C with [T,X] = X, [T,Y] = -Y, [X,Y] = Z, W central.

    g0 is the real span of the logarithms of the lattice generators; the
    generator (0,0,0,sqrt2,i sqrt3) contributes iW modulo RZ.
    """
    s5 = parse_exact("sqrt(5)")
    half = mpq(1, 2)
    g0 = [
        [1, 0, 0, 0, 0],
        [0, 1, -1, 0, 0],
        [0, (s5 - 1) * half, (s5 + 1) * half, 0, 0],
        [0, 0, 0, s5, 0],
        [0, 0, 0, 0, 1],
        [0, 0, 0, 0, I],
    ]
    lattice = [
        ["ln((3 + sqrt(5))/2)", "0", "0", "0", "0"],
        ["0", "1", "-1", "-1/2", "0"],
        ["0", "-1/2 + 1/2 sqrt(5)", "1/2 + 1/2 sqrt(5)", "1/2", "0"],
        ["0", "0", "0", "sqrt(5)", "0"],
        ["0", "0", "0", "0", "1"],
        ["0", "0", "0", "sqrt(2)", "i sqrt(3)"],
    ]
    return build_crs(
        5,
        {(0, 1): {1: 1}, (0, 2): {2: -1}, (1, 2): {3: 1}},
        g0,
        labels=["T", "X", "Y", "Z", "W"],
        lattice_generators=lattice,
        name="heisenberg5",
    )


# -- Salem example -----------------------------------------------------------------------------

DEFAULT_SALEM = (1, -3, 3, -3, 1)  # x^4 - 3x^3 + 3x^2 - 3x + 1, lowest degree first


def _int_coeffs(p):
    if isinstance(p, Polynomial):
        cs = list(p.coeffs)
    else:
        cs = [mpq(c) for c in p]
    out = []
    for c in cs:
        if isinstance(c, Exact) or mpq(c).denominator != 1:
            return None
        out.append(int(c))
    return out


def _divisors(n):
    n = abs(n)
    return [d for d in range(1, n + 1) if n % d == 0]


def _is_square(n):
    if n < 0:
        return False
    r = int(n**0.5)
    while r * r > n:
        r -= 1
    while (r + 1) * (r + 1) <= n:
        r += 1
    return r * r == n


def irreducible_monic_quartic(c) -> bool:
    """Irreducibility over Q of a monic integer quartic (lowest degree first)."""
    a0, a1, a2, a3, _ = c
    if a0 == 0:
        return False
    p = Polynomial([mpq(x) for x in c])
    for r in _divisors(a0):
        for s in (r, -r):
            if not p(mpq(s)):
                return False
    # (x^2 + a x + b)(x^2 + e x + d) with bd = a0, a + e = a3, ae + b + d = a2, ad + be = a1
    for b in _divisors(a0):
        for b in (b, -b):
            d = a0 // b
            if d != b:
                num = a1 - b * a3
                if num % (d - b):
                    continue
                a = num // (d - b)
                e = a3 - a
                if a * e + b + d == a2:
                    return False
            else:
                if a1 != b * a3:
                    continue
                # a + e = a3, a e = a2 - 2b: integer roots iff discriminant is a square
                disc = a3 * a3 - 4 * (a2 - 2 * b)
                if _is_square(disc) and (a3 + int(disc**0.5 + 0.5)) % 2 == 0:
                    return False
    return True


def salem_data(p=DEFAULT_SALEM, prec=WORK) -> dict:
    """Structure of a palindromic Salem quartic: enclosures of alpha, 1/alpha, ln alpha, s."""
    c = _int_coeffs(p)
    # p(x) = x^2 q(x + 1/x), q(y) = y^2 + a3 y + (a2 - 2)
    a3, a2 = c[3], c[2]
    q = Polynomial([mpq(a2 - 2), mpq(a3), mpq(1)])
    disc = CInterval.from_exact(a3 * a3 - 4 * (a2 - 2), prec)
    root = real_sqrt(disc)
    y1 = (-a3 + root) / 2
    y2 = (-a3 - root) / 2
    alpha = (y1 + real_sqrt(y1 * y1 - 4)) / 2
    inv = (y1 - real_sqrt(y1 * y1 - 4)) / 2
    sin = real_sqrt(4 - y2 * y2)
    s = CInterval(libmpi.mpi_atan2(sin.re, y2.re, prec), prec=prec)
    beta = (y2 + I * sin) / 2
    return {"q": q, "y1": y1, "y2": y2, "alpha": alpha, "alpha_inv": inv, "ln_alpha": log(alpha), "s": s,
            "beta": beta, "product": alpha * inv, "abs_beta_sq": beta * beta.conjugate()}


def salem_verify(p=DEFAULT_SALEM) -> bool:
    """Monic palindromic irreducible integer quartic with roots alpha > 1, 1/alpha, beta, conj(beta), |beta| = 1."""
    c = _int_coeffs(p)
    if c is None:
        return False
    while c and c[-1] == 0:
        c.pop()
    if len(c) != 5 or c[4] != 1:
        return False
    if c != c[::-1]:
        return False
    if not irreducible_monic_quartic(c):
        return False
    q = Polynomial([mpq(c[2] - 2), mpq(c[3]), mpq(1)])
    # roots y1 > 2 > y2 > -2 of q give alpha + 1/alpha = y1 and beta + conj(beta) = y2
    if not (real_sign(q(2)) < 0 < real_sign(q(-2))):
        return False
    d = salem_data(c, 128)
    one = CInterval.from_exact(1, 128)
    ok_alpha = d["alpha"].re_sign() == 1 and (d["alpha"] - one).re_sign() == 1
    ok_inv = d["alpha_inv"].re_sign() == 1 and (one - d["alpha_inv"]).re_sign() == 1
    return ok_alpha and ok_inv and d["product"].contains(1) and d["abs_beta_sq"].contains(1)


def salem_embedding(p=DEFAULT_SALEM, prec=WORK):
    """Rows sigma(alpha^j) in R^4 coordinates (sigma1, sigma2, Re sigma3, Im sigma3)."""
    d = salem_data(p, prec)
    rows = []
    for j in range(4):
        a = d["alpha"]
        b = d["beta"]
        aj = _pow(a, j, prec)
        ij = _pow(d["alpha_inv"], j, prec)
        bj = _pow(b, j, prec)
        rows.append([aj.re, ij.re, bj.re, bj.im])
    return rows


def _pow(x, j, prec):
    out = CInterval.from_exact(1, prec)
    for _ in range(j):
        out = out * x
    return out


def _det4(rows, prec):
    """Interval determinant by Laplace expansion (4x4 real mpi entries)."""

    def det(m):
        if len(m) == 1:
            return m[0][0]
        acc = None
        for j in range(len(m)):
            minor = [r[:j] + r[j + 1 :] for r in m[1:]]
            t = libmpi.mpi_mul(m[0][j], det(minor), prec)
            if j % 2:
                t = libmpi.mpi_neg(t)
            acc = t if acc is None else libmpi.mpi_add(acc, t, prec)
        return acc

    return det(rows)


def embedding_nonsingular(p=DEFAULT_SALEM, prec=WORK) -> bool:
    """Certify that sigma(1), ..., sigma(alpha^3) are R-independent in R x R x C."""
    dv = _det4(salem_embedding(p, prec), prec)
    return mpf_lt(fzero, dv[0]) or mpf_lt(dv[1], fzero)


def make_salem(p=DEFAULT_SALEM) -> CRSTriple:
    """C x| C^3 with D = diag(ln alpha, -ln alpha, i s); g0 = R x| V_R, V_R = R + R + C."""
    if not salem_verify(p):
        raise NotSalem(f"{p} is not a Salem quartic")
    c = _int_coeffs(p)
    if not embedding_nonsingular(c):
        raise NotSalem("embedding of the power basis is not certified nonsingular")
    d = salem_data(c)
    consts = {"lnalpha": real_constant("lnalpha", d["ln_alpha"].re), "is": imaginary_constant("is", d["s"].re)}
    lattice = [["1", "0", "0", "0"]]
    for j in range(4):
        vals = [_pow(d["alpha"], j, WORK), _pow(d["alpha_inv"], j, WORK), _pow(d["beta"], j, WORK)]
        lattice.append(["0"] + [_approx(v) for v in vals])
    poly = _poly_str(c)
    return build_crs(
        4,
        {(0, 1): {1: (1, "lnalpha")}, (0, 2): {2: (-1, "lnalpha")}, (0, 3): {3: (1, "is")}},
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [0, 0, 0, I]],
        labels=["T", "E1", "E2", "E3"],
        constants=consts,
        lattice_generators=lattice,
        name=f"salem({poly})",
    )


def _poly_str(c):
    terms = []
    for k in range(len(c) - 1, -1, -1):
        x = c[k]
        if not x:
            continue
        mag = "" if abs(x) == 1 and k else str(abs(x))
        var = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
        terms.append(("-" if x < 0 else "+") + mag + var)
    out = "".join(terms)
    return out[1:] if out.startswith("+") else out


# -- non-diagonalizable example ----------------------------------------------------------------


def make_nondiag() -> CRSTriple:
    """C x| C^3 with [T,Z] = 2 pi i Z, [T,B] = A; g0 = RT x| C^3."""
    twopi = pi(WORK) * 2
    consts = {"twopi": real_constant("twopi", twopi.re)}
    lattice = [["1", "0", "0", "0"]]
    for k in range(1, 4):
        for unit in ("1", "i"):
            v = ["0"] * 4
            v[k] = unit
            lattice.append(v)
    return build_crs(
        4,
        {(0, 1): {1: (I, "twopi")}, (0, 3): {2: 1}},
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, I, 0, 0], [0, 0, 1, 0], [0, 0, I, 0], [0, 0, 0, 1], [0, 0, 0, I]],
        labels=["T", "Z", "A", "B"],
        constants=consts,
        lattice_generators=lattice,
        name="nondiag",
    )


# -- imaginary-weight semidirect products -----------------------------------------------------------


def make_semidirect_imaginary(sigma_dim: int, weights) -> CRSTriple:
    """(sigma0 + i sigma0) x| theta with [S_a, t_j] = weights[a][j] t_j; g0 = sigma0 x| theta.

    ``weights`` is a sigma_dim x dim(theta) table of purely imaginary Gaussian rationals.
    """
    weights = [[_scalar(w) for w in row] for row in weights]
    if len(weights) != sigma_dim:
        raise BadParameters("need one weight row per generator of sigma0")
    q = len(weights[0]) if weights else 0
    if any(len(r) != q for r in weights):
        raise BadParameters("ragged weight table")
    if sigma_dim < 0 or (sigma_dim == 0 and q == 0):
        raise BadParameters("empty algebra")
    for row in weights:
        for w in row:
            if real_part(w) or isinstance(imag_part(w), Exact):
                raise NonImaginaryWeight(f"weight {format_exact(w)} is not a purely imaginary Gaussian rational")
    n = sigma_dim + q
    br = {}
    for a, row in enumerate(weights):
        for j, w in enumerate(row):
            if w:
                br[(a, sigma_dim + j)] = {sigma_dim + j: w}
    g0 = []
    for a in range(sigma_dim):
        g0.append([1 if k == a else 0 for k in range(n)])
    for j in range(q):
        g0.append([1 if k == sigma_dim + j else 0 for k in range(n)])
        g0.append([I if k == sigma_dim + j else 0 for k in range(n)])
    labels = [f"S{a}" for a in range(sigma_dim)] + [f"t{j}" for j in range(q)]
    return build_crs(n, br, g0, labels=labels, name="semidirect-imaginary")


# -- registry ---------------------------------------------------------------------------------------


def _parse_params(name, params: dict):
    params = dict(params or {})
    try:
        if name == "lemma31":
            return {"beta": params.pop("beta", "i")}, params
        if name == "inoue":
            return {"k": int(params.pop("k", 2))}, params
        if name == "salem":
            raw = params.pop("p", None)
            if raw is None:
                return {}, params
            if isinstance(raw, str):
                raw = [int(x) for x in raw.split(",")]
            return {"p": tuple(int(x) for x in raw)}, params
        if name == "semidirect-imaginary":
            sd = int(params.pop("sigma_dim", 1))
            raw = params.pop("weights", [["i"]])
            if isinstance(raw, str):
                raw = [r.split(",") for r in raw.split(";")]
            return {"sigma_dim": sd, "weights": raw}, params
        return {}, params
    except (TypeError, ValueError) as exc:
        raise BadParameters(f"bad parameters for {name}: {exc}") from None


EXAMPLES = {
    "lemma31": make_lemma31,
    "inoue": make_inoue,
    "heisenberg5": make_heisenberg5,
    "salem": make_salem,
    "nondiag": make_nondiag,
    "semidirect-imaginary": make_semidirect_imaginary,
}


def make_example(name: str, params: dict | None = None) -> CRSTriple:
    if name not in EXAMPLES:
        raise UnknownExample(f"unknown example {name!r}; choose from {', '.join(EXAMPLES)}")
    kwargs, rest = _parse_params(name, params)
    if rest:
        raise BadParameters(f"unexpected parameters for {name}: {', '.join(rest)}")
    return EXAMPLES[name](**kwargs)


def emit(name: str, params: dict | None = None, path=None, assertions=None) -> dict:
    """Build an example and write it in the model-file format; returns the model dict."""
    from .modelio import dump_model, triple_to_model

    T = make_example(name, params)
    model = triple_to_model(T, assertions)
    if path is not None:
        dump_model(model, path)
    return model
