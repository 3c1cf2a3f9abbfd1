"""Univariate polynomials over the exact field or complex intervals, and the
spectrum tests built on them (Sturm counting, imaginary-axis root tests,
certified root enclosures)."""

from __future__ import annotations

from dataclasses import dataclass, field

import mpmath
from gmpy2 import mpq
from mpmath.libmp import from_int, fzero, libmpi, mpf_add, mpf_lt, round_ceiling

from ..errors import (
    BackendMismatch,
    DegenerateLeadingCoefficient,
    NonRealCoefficients,
    NotSquarefree,
    ZeroPolynomial,
)
from ..truth import Truth
from .exact import Exact, exact, format_exact, is_exact, is_real, real_sign
from .interval import CInterval, interval

I = Exact(0, 1)


def _is_zero(c) -> bool:
    if isinstance(c, CInterval):
        return c.is_point_zero()
    return not c


class Polynomial:
    """Coefficients lowest degree first; trailing zeros are stripped."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = [c if isinstance(c, CInterval) else exact(c) for c in coeffs]
        while cs and _is_zero(cs[-1]):
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def from_roots(cls, roots):
        p = cls([1])
        for r in roots:
            p = p * cls([-r, 1])
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self):
        if not self.coeffs:
            raise ZeroPolynomial("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_exact(self) -> bool:
        return all(is_exact(c) for c in self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, k):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else mpq(0)

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        n = max(len(self), len(other))
        return Polynomial([self[k] + other[k] for k in range(n)])

    def __sub__(self, other):
        n = max(len(self), len(other))
        return Polynomial([self[k] - other[k] for k in range(n)])

    def __neg__(self):
        return Polynomial([-c for c in self.coeffs])

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return Polynomial([c * other for c in self.coeffs])
        if self.is_zero() or other.is_zero():
            return Polynomial([])
        out = [mpq(0)] * (len(self) + len(other) - 1)
        for i, a in enumerate(self.coeffs):
            if _is_zero(a):
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __call__(self, x):
        acc = mpq(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "Polynomial":
        return Polynomial([k * c for k, c in enumerate(self.coeffs)][1:])

    def monic(self) -> "Polynomial":
        lc = self.lc
        if isinstance(lc, CInterval):
            if lc.contains_zero():
                raise DegenerateLeadingCoefficient("leading interval contains 0")
            inv = 1 / lc
        else:
            inv = 1 / lc if isinstance(lc, Exact) else mpq(1) / lc
        return Polynomial([c * inv for c in self.coeffs[:-1]] + [mpq(1)])

    def substitute_i(self) -> "Polynomial":
        """Return r(mu) = p(i*mu)."""
        out, power = [], mpq(1)
        for c in self.coeffs:
            out.append(c * power)
            power = power * I
        return Polynomial(out)

    def divmod(self, other: "Polynomial"):
        _require_exact(self, other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        inv = 1 / other.lc if isinstance(other.lc, Exact) else mpq(1) / other.lc
        quot = [mpq(0)] * max(0, len(rem) - dq)
        while len(rem) - 1 >= dq and rem:
            shift = len(rem) - 1 - dq
            f = rem[-1] * inv
            quot[shift] = f
            for k, c in enumerate(other.coeffs):
                rem[shift + k] = rem[shift + k] - f * c
            rem.pop()
            while rem and not rem[-1]:
                rem.pop()
        return Polynomial(quot), Polynomial(rem)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def to_strings(self):
        return [format_exact(c) if is_exact(c) else c.to_string() for c in self.coeffs]

    def __repr__(self):
        if not self.coeffs:
            return "Polynomial(0)"
        terms = []
        for k, c in enumerate(self.coeffs):
            if _is_zero(c):
                continue
            s = format_exact(c) if is_exact(c) else repr(c)
            terms.append(f"({s})x^{k}" if k else f"({s})")
        return "Polynomial(" + " + ".join(reversed(terms)) + ")"


def _require_exact(*polys):
    for p in polys:
        if not p.is_exact():
            raise BackendMismatch("operation needs exact coefficients")


def gcd(p: Polynomial, q: Polynomial) -> Polynomial:
    """Monic gcd over the exact field (zero if both are zero)."""
    _require_exact(p, q)
    a, b = p, q
    while not b.is_zero():
        a, b = b, a % b
    return a if a.is_zero() else a.monic()


def squarefree_part(p: Polynomial) -> Polynomial:
    """p / gcd(p, p'), made monic."""
    if p.is_zero():
        raise ZeroPolynomial("squarefree part of the zero polynomial")
    _require_exact(p)
    if p.degree == 0:
        return Polynomial([1])
    return (p // gcd(p, p.derivative())).monic()


def sturm_sequence(p: Polynomial) -> list[Polynomial]:
    seq = [p, p.derivative()]
    while not seq[-1].is_zero() and seq[-1].degree > 0:
        seq.append(-(seq[-2] % seq[-1]))
    if seq[-1].is_zero():
        seq.pop()
    return seq


def sturm_real_root_count(p: Polynomial) -> int:
    """Number of distinct real roots of a squarefree real polynomial.

    Coefficients may lie in Q(sqrt d); signs are decided exactly there.
    """
    if p.is_zero():
        raise ZeroPolynomial("zero polynomial")
    _require_exact(p)
    if not all(is_real(c) for c in p.coeffs):
        raise NonRealCoefficients("Sturm counting needs real coefficients")
    if gcd(p, p.derivative()).degree > 0:
        raise NotSquarefree("polynomial has a repeated root")
    seq = sturm_sequence(p)

    def changes(signs):
        signs = [s for s in signs if s]
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

    at_pos = [real_sign(q.lc) for q in seq]
    at_neg = [real_sign(q.lc) * (-1) ** q.degree for q in seq]
    return changes(at_neg) - changes(at_pos)


def all_roots_purely_imaginary(p: Polynomial) -> bool:
    """Exact test that every root of ``p`` lies on the imaginary axis."""
    if p.is_zero():
        raise ZeroPolynomial("zero polynomial")
    _require_exact(p)
    r = p.substitute_i().monic()
    if not all(is_real(c) for c in r.coeffs):
        return False
    s = squarefree_part(r)
    return sturm_real_root_count(s) == s.degree


# -- certified enclosures -----------------------------------------------------


@dataclass(frozen=True)
class RootCluster:
    """A connected component of inclusion disks; holds exactly ``count`` roots.

    ``re``/``im`` bound the whole component.  ``exact_zero`` marks roots that
    are zero because the corresponding low-order coefficients are exactly 0.
    """

    count: int
    re: tuple
    im: tuple
    centers: tuple = ()
    radii: tuple = ()
    exact_zero: bool = False

    def re_sign(self):
        if self.exact_zero:
            return 0
        lo, hi = self.re
        if mpf_lt(fzero, lo):
            return 1
        if mpf_lt(hi, fzero):
            return -1
        return None

    def as_interval(self, prec) -> CInterval:
        return CInterval(self.re, self.im, prec)

    def describe(self) -> dict:
        dps = 20
        return {
            "count": self.count,
            "re": libmpi.mpi_to_str(self.re, dps),
            "im": libmpi.mpi_to_str(self.im, dps),
            "exact_zero": self.exact_zero,
        }


@dataclass
class ImaginaryTest:
    value: Truth
    clusters: list = field(default_factory=list)
    structurally_real: bool = False
    precision: int = 0
    witness: RootCluster | None = None


def _point(z: mpmath.mpc, prec) -> CInterval:
    re = mpmath.mpf(z.real)._mpf_
    im = mpmath.mpf(z.imag)._mpf_
    return CInterval((re, re), (im, im), prec)


def _approx_roots(coeffs, prec):
    """Approximate roots of the midpoint polynomial (centers only)."""
    ctx = mpmath.MPContext()
    ctx.prec = prec + 20
    mids = [ctx.mpc(c.mid()) for c in reversed(coeffs)]
    try:
        roots = ctx.polyroots(mids, maxsteps=200, extraprec=prec + 20, cleanup=True)
    except ctx.NoConvergence:
        import numpy as np

        roots = [ctx.mpc(complex(z)) for z in np.roots([complex(m) for m in mids])]
    roots = [ctx.mpc(r) for r in roots]
    # centers must be pairwise distinct
    out = []
    for k, z in enumerate(roots):
        while any(z == w for w in out):
            z = z + ctx.mpf(2) ** (-(prec // 2)) * (k + 1) * (1 + 1j)
        out.append(z)
    return out


def _add_up(a, b, prec):
    return mpf_add(a, b, prec, round_ceiling)


def _lt_dist(ci: CInterval, cj: CInterval, bound, prec) -> bool:
    """Certify |ci - cj| > bound."""
    d = ci - cj
    lo = libmpi.mpci_abs((d.re, d.im), prec)[0]
    return mpf_lt(bound, lo)


def root_clusters(p: Polynomial, prec: int | None = None) -> list[RootCluster]:
    """Certified inclusion clusters for all roots of an interval polynomial.

    Uses Weierstrass corrections around approximate roots: the disks
    D(z_j, n |W_j|) cover all roots and a connected component made of k
    disks holds exactly k roots, for every polynomial in the interval family.
    """
    if p.is_zero():
        raise ZeroPolynomial("zero polynomial")
    coeffs = [interval(c, prec or 64) for c in p.coeffs]
    prec = prec or min(c.prec for c in coeffs)
    coeffs = [c.with_prec(min(c.prec, prec)) for c in coeffs]
    if coeffs[-1].contains_zero():
        raise DegenerateLeadingCoefficient("leading coefficient interval contains 0")
    clusters = []
    nz = 0
    while nz < len(coeffs) - 1 and coeffs[nz].is_point_zero():
        nz += 1
    zero = (fzero, fzero)
    if nz:
        clusters.append(RootCluster(nz, zero, zero, exact_zero=True))
    q = coeffs[nz:]
    n = len(q) - 1
    if n == 0:
        return clusters
    q_poly = Polynomial(q)
    centers_mp = _approx_roots(q, prec)
    centers = [_point(z, prec) for z in centers_mp]
    lc = q[-1]
    radii = []
    inf = mpmath.inf._mpf_
    for j, zj in enumerate(centers):
        den = lc
        for k, zk in enumerate(centers):
            if k != j:
                den = den * (zj - zk)
        if den.contains_zero():
            radii.append(inf)
            continue
        w = q_poly(zj) / den
        radii.append(libmpi.mpi_mul((from_int(n), from_int(n)), (w.mag(), w.mag()), prec)[1])
    # components by certified disjointness
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for j in range(n):
        for k in range(j + 1, n):
            if not _lt_dist(centers[j], centers[k], _add_up(radii[j], radii[k], prec), prec):
                parent[find(j)] = find(k)
    groups: dict[int, list[int]] = {}
    for j in range(n):
        groups.setdefault(find(j), []).append(j)
    if nz:
        # a disk that may contain 0 can hold a root equal to one of the exact zeros
        origin = CInterval((fzero, fzero), (fzero, fzero), prec)
        touching = [j for j in range(n) if not _lt_dist(centers[j], origin, radii[j], prec)]
        if touching:
            clusters.pop(0)
            root = find(touching[0])
            for j in touching[1:]:
                parent[find(j)] = root
            groups = {}
            for j in range(n):
                groups.setdefault(find(j), []).append(j)
            zero_extra = {find(root): nz}
        else:
            zero_extra = {}
    else:
        zero_extra = {}
    for key, members in groups.items():
        re_lo = re_hi = im_lo = im_hi = None
        for j in members:
            c, r = centers[j], radii[j]
            lo = libmpi.mpi_sub(c.re, (r, r), prec)[0]
            hi = libmpi.mpi_add(c.re, (r, r), prec)[1]
            ilo = libmpi.mpi_sub(c.im, (r, r), prec)[0]
            ihi = libmpi.mpi_add(c.im, (r, r), prec)[1]
            re_lo = lo if re_lo is None or mpf_lt(lo, re_lo) else re_lo
            re_hi = hi if re_hi is None or mpf_lt(re_hi, hi) else re_hi
            im_lo = ilo if im_lo is None or mpf_lt(ilo, im_lo) else im_lo
            im_hi = ihi if im_hi is None or mpf_lt(im_hi, ihi) else im_hi
        extra = zero_extra.get(key, 0)
        if extra:
            # the component already contains 0, so its box does too
            re_lo, re_hi, im_lo, im_hi = _widen_to_zero(re_lo, re_hi, im_lo, im_hi)
        clusters.append(
            RootCluster(
                len(members) + extra,
                (re_lo, re_hi),
                (im_lo, im_hi),
                tuple(centers[j] for j in members),
                tuple(radii[j] for j in members),
            )
        )
    return clusters


def _widen_to_zero(re_lo, re_hi, im_lo, im_hi):
    lo = lambda a: a if mpf_lt(a, fzero) else fzero  # noqa: E731
    hi = lambda a: a if mpf_lt(fzero, a) else fzero  # noqa: E731
    return lo(re_lo), hi(re_hi), lo(im_lo), hi(im_hi)


def _reflection_isolated(cluster: RootCluster, others, prec) -> bool:
    """For a one-disk cluster, check that the mirror image of its disk in the
    imaginary axis meets no other disk."""
    c, r = cluster.centers[0], cluster.radii[0]
    mirror = -c.conjugate()
    for other in others:
        for ck, rk in zip(other.centers, other.radii):
            if not _lt_dist(mirror, ck, _add_up(r, rk, prec), prec):
                return False
    return True


def interval_roots_imaginary(p: Polynomial, prec: int | None = None) -> ImaginaryTest:
    """Three-valued imaginary-axis test for a polynomial with interval coefficients.

    FALSE when some certified cluster lies strictly off the axis.  TRUE needs
    p(i*mu)/lc to have exactly real coefficients (imaginary parts that are
    point zeros, as produced by declared real / declared imaginary constants)
    and every nonzero root isolated in a disk whose mirror image meets no
    other disk; then the root equals its own mirror image.  Otherwise UNKNOWN.
    """
    if p.is_zero():
        raise ZeroPolynomial("zero polynomial")
    coeffs = [interval(c, prec or 64) for c in p.coeffs]
    prec = prec or min(c.prec for c in coeffs)
    if coeffs[-1].contains_zero():
        raise DegenerateLeadingCoefficient("leading coefficient interval contains 0")
    ip = Polynomial(coeffs)
    clusters = root_clusters(ip, prec)
    for cl in clusters:
        s = cl.re_sign()
        if s is not None and s != 0:
            return ImaginaryTest(Truth.FALSE, clusters, False, prec, witness=cl)
    lc = coeffs[-1]
    r = ip.substitute_i()
    if lc.real_is_point_zero() and lc.imag_is_point_zero():
        raise DegenerateLeadingCoefficient("leading coefficient is zero")
    lead = r.coeffs[-1]
    rc = [c / lead for c in r.coeffs]
    structurally_real = all(c.imag_is_point_zero() for c in rc)
    if not structurally_real:
        return ImaginaryTest(Truth.UNKNOWN, clusters, False, prec)
    nonzero = [cl for cl in clusters if not cl.exact_zero]
    for cl in nonzero:
        if cl.count != 1:
            return ImaginaryTest(Truth.UNKNOWN, clusters, True, prec)
        others = [o for o in nonzero if o is not cl]
        if not _reflection_isolated(cl, others, prec):
            return ImaginaryTest(Truth.UNKNOWN, clusters, True, prec)
    return ImaginaryTest(Truth.TRUE, clusters, True, prec)


def exact_root_clusters(p: Polynomial, prec: int = 128) -> list[RootCluster]:
    """Clusters of the distinct roots of an exact polynomial."""
    s = squarefree_part(p)
    return root_clusters(Polynomial([interval(c, prec) for c in s.coeffs]), prec)
