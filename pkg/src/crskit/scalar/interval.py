"""Outward-rounded complex interval arithmetic.

Rectangular enclosures built on :mod:`mpmath.libmp.libmpi`, which takes the
working precision as an explicit argument.  Every value carries its own
precision, so nothing here reads or mutates mpmath's global context.
"""

from __future__ import annotations

from fractions import Fraction

from gmpy2 import mpq
from mpmath import mpc, mpf
from mpmath.libmp import (
    from_int,
    from_rational,
    from_str,
    fzero,
    libmpi,
    mpf_cmp,
    mpf_le,
    mpf_lt,
    round_ceiling,
    round_floor,
    to_rational,
)

from ..errors import BackendMismatch
from .exact import Exact, _NUMERIC

DEFAULT_PRECISION = 64

_ZERO_I = (fzero, fzero)


def _rat_interval(q, prec):
    q = mpq(q)
    p, d = int(q.numerator), int(q.denominator)
    if d == 1 and abs(p).bit_length() <= prec:
        v = from_int(p)
        return (v, v)
    return (from_rational(p, d, prec, round_floor), from_rational(p, d, prec, round_ceiling))


def real_interval(lo, hi=None, prec=DEFAULT_PRECISION):
    """Real interval from decimal strings, ints or rationals (outward)."""
    hi = lo if hi is None else hi

    def bound(v, rnd):
        if isinstance(v, str):
            if "/" in v:
                v = Fraction(v)
            else:
                return from_str(v, prec, rnd)
        if isinstance(v, float):
            v = Fraction(v)
        q = mpq(v)
        return from_rational(int(q.numerator), int(q.denominator), prec, rnd)

    a, b = bound(lo, round_floor), bound(hi, round_ceiling)
    if mpf_lt(b, a):
        raise ValueError(f"empty interval [{lo}, {hi}]")
    return (a, b)


def _exact_parts(x, prec):
    """(re, im) mpi enclosures of an exact field element."""
    if isinstance(x, Exact):
        a, b, c, e, d = x.a, x.b, x.c, x.e, x.d
    else:
        a, b, c, e, d = mpq(x), 0, 0, 0, 0
    re = _rat_interval(a, prec)
    im = _rat_interval(b, prec)
    if d:
        work = prec + 10
        root = libmpi.mpi_sqrt((from_int(d), from_int(d)), work)
        re = libmpi.mpi_add(re, libmpi.mpi_mul(_rat_interval(c, work), root, work), prec)
        im = libmpi.mpi_add(im, libmpi.mpi_mul(_rat_interval(e, work), root, work), prec)
    return re, im


class CInterval:
    """Complex rectangle ``re + i*im`` with real intervals as mpi tuples."""

    __slots__ = ("re", "im", "prec")

    def __init__(self, re, im=_ZERO_I, prec=DEFAULT_PRECISION):
        self.re = re
        self.im = im
        self.prec = prec

    @classmethod
    def from_exact(cls, x, prec=DEFAULT_PRECISION):
        re, im = _exact_parts(x, prec)
        return cls(re, im, prec)

    @classmethod
    def from_bounds(cls, re_lo, re_hi, im_lo=0, im_hi=0, prec=DEFAULT_PRECISION):
        return cls(real_interval(re_lo, re_hi, prec), real_interval(im_lo, im_hi, prec), prec)

    # -- coercion --------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, CInterval):
            return other
        if isinstance(other, (Exact,) + _NUMERIC):
            return CInterval.from_exact(other, self.prec)
        raise BackendMismatch(f"cannot combine interval with {type(other).__name__}")

    def _wrap(self, z, other):
        return CInterval(z[0], z[1], min(self.prec, other.prec))

    def __add__(self, other):
        o = self._coerce(other)
        p = min(self.prec, o.prec)
        return CInterval(libmpi.mpi_add(self.re, o.re, p), libmpi.mpi_add(self.im, o.im, p), p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        p = min(self.prec, o.prec)
        return CInterval(libmpi.mpi_sub(self.re, o.re, p), libmpi.mpi_sub(self.im, o.im, p), p)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return CInterval(libmpi.mpi_neg(self.re), libmpi.mpi_neg(self.im), self.prec)

    def __pos__(self):
        return self

    def __mul__(self, other):
        o = self._coerce(other)
        return self._wrap(libmpi.mpci_mul((self.re, self.im), (o.re, o.im), min(self.prec, o.prec)), o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        return self._wrap(libmpi.mpci_div((self.re, self.im), (o.re, o.im), min(self.prec, o.prec)), o)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __bool__(self):
        raise TypeError("truth value of an interval is undecidable; use the explicit predicates")

    def __eq__(self, other):
        # structural identity of enclosures, not numeric equality
        if not isinstance(other, CInterval):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def with_prec(self, prec):
        return CInterval(self.re, self.im, prec)

    def to_string(self, dps=20) -> str:
        return f"{libmpi.mpi_to_str(self.re, dps)} + i{libmpi.mpi_to_str(self.im, dps)}"

    # -- predicates --------------------------------------------------------
    def is_point_zero(self) -> bool:
        return self.re == _ZERO_I and self.im == _ZERO_I

    def real_is_point_zero(self) -> bool:
        return self.re == _ZERO_I

    def imag_is_point_zero(self) -> bool:
        return self.im == _ZERO_I

    def contains_zero(self) -> bool:
        return _contains0(self.re) and _contains0(self.im)

    def re_contains_zero(self) -> bool:
        return _contains0(self.re)

    def re_sign(self) -> int | None:
        """+1 / -1 when the real part certifiably has that sign, else None."""
        lo, hi = self.re
        if mpf_lt(fzero, lo):
            return 1
        if mpf_lt(hi, fzero):
            return -1
        return None

    def contains(self, x) -> bool:
        """True when the exact scalar ``x`` certifiably lies in this enclosure."""
        if isinstance(x, Exact) and x.d:
            re, im = _exact_parts(x, self.prec + 64)
            return _subset(re, self.re) and _subset(im, self.im)
        if isinstance(x, Exact):
            a, b = x.a, x.b
        else:
            a, b = mpq(x), mpq(0)
        return _rat_in(a, self.re) and _rat_in(b, self.im)

    def mag(self):
        """Upper bound on |z| as an mpf tuple (exact upper bound, outward)."""
        return libmpi.mpci_abs((self.re, self.im), self.prec)[1]

    def mid(self) -> mpc:
        pr = self.prec + 10
        return mpc(mpf(libmpi.mpi_mid(self.re, pr)), mpf(libmpi.mpi_mid(self.im, pr)))

    def re_bounds(self):
        return mpf(self.re[0]), mpf(self.re[1])

    def im_bounds(self):
        return mpf(self.im[0]), mpf(self.im[1])

    def conjugate(self):
        return CInterval(self.re, libmpi.mpi_neg(self.im), self.prec)

    def __repr__(self):
        dps = max(5, int(self.prec * 0.30103))
        return (
            f"CInterval({libmpi.mpi_to_str(self.re, dps)} + "
            f"i{libmpi.mpi_to_str(self.im, dps)}, prec={self.prec})"
        )


def _contains0(iv) -> bool:
    return mpf_le(iv[0], fzero) and mpf_le(fzero, iv[1])


def _subset(inner, outer) -> bool:
    return mpf_le(outer[0], inner[0]) and mpf_le(inner[1], outer[1])


def _rat_in(q, iv) -> bool:
    lo, hi = iv
    q = Fraction(int(q.numerator), int(q.denominator))
    return _mpf_to_frac(lo) <= q <= _mpf_to_frac(hi)


def _mpf_to_frac(v):
    p, q = to_rational(v)
    return Fraction(int(p), int(q))


def interval(x, prec=DEFAULT_PRECISION) -> CInterval:
    """Promote an exact scalar (or pass through an interval)."""
    if isinstance(x, CInterval):
        return x
    return CInterval.from_exact(x, prec)


def is_interval(x) -> bool:
    return isinstance(x, CInterval)


# -- elementary functions ---------------------------------------------------


def pi(prec=DEFAULT_PRECISION) -> CInterval:
    return CInterval(libmpi.mpi_pi(prec), _ZERO_I, prec)


def real_sqrt(x: CInterval) -> CInterval:
    if not x.imag_is_point_zero() or mpf_lt(x.re[0], fzero):
        raise ValueError("real_sqrt needs a nonnegative real interval")
    return CInterval(libmpi.mpi_sqrt(x.re, x.prec), _ZERO_I, x.prec)


def log(x: CInterval) -> CInterval:
    """Principal logarithm; the enclosure must avoid the branch cut (-inf, 0]."""
    if x.imag_is_point_zero():
        if not mpf_lt(fzero, x.re[0]):
            raise ValueError("log of a real interval touching (-inf, 0]")
        return CInterval(libmpi.mpi_log(x.re, x.prec), _ZERO_I, x.prec)
    if _contains0(x.im) and not mpf_lt(fzero, x.re[0]):
        raise ValueError("log enclosure crosses the branch cut")
    p = x.prec
    r2 = libmpi.mpi_add(libmpi.mpi_square(x.re, p), libmpi.mpi_square(x.im, p), p)
    half = (from_rational(1, 2, p, round_floor), from_rational(1, 2, p, round_ceiling))
    return CInterval(libmpi.mpi_mul(half, libmpi.mpi_log(r2, p), p), libmpi.mpi_atan2(x.im, x.re, p), p)


def arg(x: CInterval) -> CInterval:
    return CInterval(libmpi.mpi_atan2(x.im, x.re, x.prec), _ZERO_I, x.prec)


def mpf_cmp_zero(v) -> int:
    return mpf_cmp(v, fzero)


def decimal_bounds(iv, digits=40):
    """Outward decimal strings (lo, hi) enclosing a real mpi interval."""
    scale = 10**digits
    lo, hi = _mpf_to_frac(iv[0]), _mpf_to_frac(iv[1])
    a = (lo.numerator * scale) // lo.denominator
    b = -((-hi.numerator * scale) // hi.denominator)
    return _fmt_scaled(a, digits), _fmt_scaled(b, digits)


def _fmt_scaled(v, digits):
    sign = "-" if v < 0 else ""
    s = str(abs(v)).rjust(digits + 1, "0")
    head, tail = s[:-digits], s[-digits:].rstrip("0")
    return f"{sign}{head}.{tail}" if tail else f"{sign}{head}"
