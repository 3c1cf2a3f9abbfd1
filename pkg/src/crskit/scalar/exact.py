"""Exact scalars in Q(i, sqrt(d)).

Rational values are carried as plain ``gmpy2.mpq`` so that the common case
(rational structure constants) stays fast; anything with an ``i`` or
``sqrt(d)`` component becomes an :class:`Exact`.  Arithmetic between the two
is transparent and results collapse back to ``mpq`` whenever possible.
"""

from __future__ import annotations

import re
from fractions import Fraction

from gmpy2 import mpq

from ..errors import BackendMismatch, ParseError

_ZERO = mpq(0)
_ONE = mpq(1)


def _squarefree(d: int) -> bool:
    if d < 2:
        return False
    k = 2
    while k * k <= d:
        if d % (k * k) == 0:
            return False
        k += 1
    return True


class Exact:
    """a + b*i + c*sqrt(d) + e*i*sqrt(d) with rational a, b, c, e.

    ``d == 0`` means no quadratic part (c == e == 0).
    """

    __slots__ = ("a", "b", "c", "e", "d")

    def __init__(self, a=0, b=0, c=0, e=0, d=0):
        self.a = mpq(a)
        self.b = mpq(b)
        self.c = mpq(c)
        self.e = mpq(e)
        if not (self.c or self.e):
            d = 0
        elif not _squarefree(d):
            raise ValueError(f"sqrt({d}): d must be a squarefree integer >= 2")
        self.d = d

    # -- helpers -------------------------------------------------------
    @staticmethod
    def _parts(x):
        if isinstance(x, Exact):
            return x.a, x.b, x.c, x.e, x.d
        return x, _ZERO, _ZERO, _ZERO, 0

    @staticmethod
    def _join(d1, d2):
        if d1 and d2 and d1 != d2:
            raise BackendMismatch(f"cannot mix sqrt({d1}) and sqrt({d2})")
        return d1 or d2

    def __add__(self, other):
        if not isinstance(other, (Exact, int, type(_ZERO), Fraction)):
            return NotImplemented
        a, b, c, e, d = Exact._parts(other)
        return make(self.a + a, self.b + b, self.c + c, self.e + e, Exact._join(self.d, d))

    __radd__ = __add__

    def __neg__(self):
        return Exact(-self.a, -self.b, -self.c, -self.e, self.d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if not isinstance(other, (Exact, int, type(_ZERO), Fraction)):
            return NotImplemented
        a, b, c, e, d = Exact._parts(other)
        return make(self.a - a, self.b - b, self.c - c, self.e - e, Exact._join(self.d, d))

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if not isinstance(other, (Exact, int, type(_ZERO), Fraction)):
            return NotImplemented
        a2, b2, c2, e2, d2 = Exact._parts(other)
        a1, b1, c1, e1 = self.a, self.b, self.c, self.e
        d = Exact._join(self.d, d2)
        if not d:
            return make(a1 * a2 - b1 * b2, a1 * b2 + b1 * a2)
        return make(
            a1 * a2 - b1 * b2 + d * (c1 * c2 - e1 * e2),
            a1 * b2 + b1 * a2 + d * (c1 * e2 + e1 * c2),
            a1 * c2 + c1 * a2 - b1 * e2 - e1 * b2,
            a1 * e2 + e1 * a2 + b1 * c2 + c1 * b2,
            d,
        )

    __rmul__ = __mul__

    def inverse(self):
        if not self:
            raise ZeroDivisionError("inverse of zero")
        # x = u + i v with u, v in Q(sqrt d); 1/x = (u - i v) / (u^2 + v^2)
        d = self.d
        u = (self.a, self.c)
        v = (self.b, self.e)
        # n = u^2 + v^2 = p + q sqrt(d)
        p = u[0] * u[0] + d * u[1] * u[1] + v[0] * v[0] + d * v[1] * v[1]
        q = 2 * (u[0] * u[1] + v[0] * v[1])
        den = p * p - d * q * q
        np_, nq = p / den, -q / den  # 1/n
        conj = Exact(self.a, -self.b, self.c, -self.e, d)
        return conj * make(np_, 0, nq, 0, d)

    def __truediv__(self, other):
        if isinstance(other, Exact):
            return self * other.inverse()
        if isinstance(other, (int, type(_ZERO), Fraction)):
            o = mpq(other)
            return make(self.a / o, self.b / o, self.c / o, self.e / o, self.d)
        return NotImplemented

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __bool__(self):
        return bool(self.a or self.b or self.c or self.e)

    def __eq__(self, other):
        if isinstance(other, (int, type(_ZERO), Fraction)):
            return not (self.b or self.c or self.e) and self.a == other
        if isinstance(other, Exact):
            return (self.a, self.b, self.c, self.e) == (other.a, other.b, other.c, other.e) and (
                self.d == other.d or not (self.c or self.e)
            )
        return NotImplemented

    def __hash__(self):
        if not (self.b or self.c or self.e):
            return hash(self.a)
        return hash((self.a, self.b, self.c, self.e, self.d))

    def __repr__(self):
        return f"Exact({format_exact(self)!r})"

    def __str__(self):
        return format_exact(self)


_NUMERIC = (int, type(_ZERO), Fraction)


def make(a, b=_ZERO, c=_ZERO, e=_ZERO, d=0):
    """Build a field element, collapsing to ``mpq`` when it is rational."""
    if b or c or e:
        return Exact(a, b, c, e, d if (c or e) else 0)
    return mpq(a)


def exact(x):
    """Coerce ``x`` (int, Fraction, mpq, Exact, or literal string) to a scalar."""
    if isinstance(x, Exact):
        return make(x.a, x.b, x.c, x.e, x.d)
    if isinstance(x, str):
        return parse_exact(x)
    if isinstance(x, _NUMERIC):
        return mpq(x)
    raise BackendMismatch(f"not an exact scalar: {x!r}")


def is_exact(x) -> bool:
    return isinstance(x, (Exact,) + _NUMERIC)


def parts(x):
    """Return (a, b, c, e, d) for any exact scalar."""
    return Exact._parts(exact(x))


def sqrt_of(x) -> int:
    return x.d if isinstance(x, Exact) else 0


def conj(x):
    if isinstance(x, Exact):
        return make(x.a, -x.b, x.c, -x.e, x.d)
    return x


def real_part(x):
    if isinstance(x, Exact):
        return make(x.a, 0, x.c, 0, x.d)
    return x


def imag_part(x):
    """Imaginary part as a real field element."""
    if isinstance(x, Exact):
        return make(x.b, 0, x.e, 0, x.d)
    return _ZERO


def is_real(x) -> bool:
    return not isinstance(x, Exact) or not (x.b or x.e)


def real_sign(x) -> int:
    """Exact sign of a real element a + c*sqrt(d)."""
    if not is_real(x):
        raise ValueError(f"{x} is not real")
    if not isinstance(x, Exact):
        return (x > 0) - (x < 0)
    a, c, d = x.a, x.c, x.d
    sa = (a > 0) - (a < 0)
    sc = (c > 0) - (c < 0)
    if sc == 0:
        return sa
    if sa == 0 or sa == sc:
        return sc
    # opposite signs: compare a^2 with c^2 d
    lhs, rhs = a * a, c * c * d
    if lhs == rhs:
        return 0
    return sa if lhs > rhs else sc


def to_complex(x) -> complex:
    a, b, c, e, d = Exact._parts(x) if isinstance(x, Exact) else (x, 0, 0, 0, 0)
    s = d ** 0.5 if d else 0.0
    return complex(float(a) + float(c) * s, float(b) + float(e) * s)


# -- literal syntax ------------------------------------------------------

_FAC = r"(?:i|sqrt\(\s*\d+\s*\))"
_TERM = re.compile(
    rf"""\s*(?P<sign>[+-])?\s*
        (?:(?P<coef>\d+(?:\.\d+)?(?:/\d+)?)(?:\s*\*?\s*(?P<f1>{_FAC})(?:\s*\*?\s*(?P<f2>{_FAC}))?)?
          |(?P<g1>{_FAC})(?:\s*\*?\s*(?P<g2>{_FAC}))?)\s*""",
    re.VERBOSE,
)


def parse_exact(text: str):
    """Parse literals such as ``"1/2 + 3/4 i - 2/3 sqrt(5) + i sqrt(5)"``."""
    s = text.strip()
    if not s:
        raise ParseError("empty scalar literal", column=0)
    acc = [_ZERO, _ZERO, _ZERO, _ZERO]
    d_seen = 0
    pos = 0
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if m is None or m.end() == pos:
            raise ParseError(f"bad scalar literal {text!r}", column=pos)
        sign, coef = m.group("sign"), m.group("coef")
        f1, f2 = (m.group("f1"), m.group("f2")) if coef else (m.group("g1"), m.group("g2"))
        if not first and sign is None:
            raise ParseError(f"missing operator in {text!r}", column=pos)
        if coef is None and f1 is None:
            raise ParseError(f"bad scalar literal {text!r}", column=pos)
        first = False
        try:
            value = mpq(Fraction(coef)) if coef else _ONE
        except ZeroDivisionError:
            raise ParseError(f"zero denominator in {text!r}", column=pos) from None
        if sign == "-":
            value = -value
        has_i = False
        root = 0
        for f in (f1, f2):
            if f is None:
                continue
            if f == "i":
                if has_i:
                    raise ParseError(f"repeated i in {text!r}", column=pos)
                has_i = True
            else:
                if root:
                    raise ParseError(f"repeated sqrt in {text!r}", column=pos)
                root = int(f[5:-1])
        if root:
            if not _squarefree(root):
                raise ParseError(f"sqrt({root}) is not squarefree", column=pos)
            if d_seen and d_seen != root:
                raise ParseError(f"mixed square roots in {text!r}", column=pos)
            d_seen = root
        idx = (2 if root else 0) + (1 if has_i else 0)
        acc[idx] += value
        pos = m.end()
    return make(acc[0], acc[1], acc[2], acc[3], d_seen)


def _fmt_q(q) -> str:
    q = mpq(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_exact(x) -> str:
    """Canonical literal; ``parse_exact(format_exact(x)) == x``."""
    a, b, c, e, d = Exact._parts(x) if isinstance(x, Exact) else (mpq(x), 0, 0, 0, 0)
    terms = []
    for coef, suffix in ((a, ""), (b, " i"), (c, f" sqrt({d})"), (e, f" i sqrt({d})")):
        if not coef:
            continue
        mag = abs(mpq(coef))
        body = _fmt_q(mag)
        if suffix and mag == 1:
            body = suffix.strip()
        else:
            body = body + suffix
        terms.append(("-" if coef < 0 else "+", body))
    if not terms:
        return "0"
    out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sgn, body in terms[1:]:
        out += f" {sgn} {body}"
    return out
