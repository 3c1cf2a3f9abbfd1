"""Matrices affine in the real parameters of named constants.

Entries are exact polynomials in the parameters, so cancellations that hold
identically stay exact; intervals enter only at the final evaluation.  This
keeps the enclosures independent of the basis a model happens to be
written in.
"""

from __future__ import annotations

from gmpy2 import mpq

from .linalg import Matrix
from .scalar.interval import CInterval
from .scalar.poly import Polynomial

ZERO = mpq(0)
ONE = mpq(1)

# a parameter polynomial is {monomial: exact coefficient}, monomial = sorted tuple of names


def _add(a, b, sign=1):
    out = dict(a)
    for m, c in b.items():
        s = out.get(m, ZERO) + (c if sign > 0 else -c)
        if s:
            out[m] = s
        else:
            out.pop(m, None)
    return out


def _mul(a, b):
    out = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m = tuple(sorted(m1 + m2))
            s = out.get(m, ZERO) + c1 * c2
            if s:
                out[m] = s
            else:
                out.pop(m, None)
    return out


def _dot(u, v):
    acc = {}
    for a, b in zip(u, v):
        if a and b:
            acc = _add(acc, _mul(a, b))
    return acc


class ParamMatrix:
    """Square matrix base + sum_p t_p * M_p with exact M_p."""

    def __init__(self, forms: dict):
        # forms: {parameter or "": exact Matrix}
        n = next(iter(forms.values())).rows
        self.n = n
        self.entries = [[{} for _ in range(n)] for _ in range(n)]
        for p, M in forms.items():
            mono = (p,) if p else ()
            for i in range(n):
                for j in range(n):
                    x = M.entries[i][j]
                    if x:
                        self.entries[i][j] = _add(self.entries[i][j], {mono: x})

    def char_poly_forms(self):
        """Coefficients (lowest degree first) of det(xI - A) as parameter polynomials."""
        A = self.entries
        n = self.n
        one = {(): ONE}
        coeffs = [one]
        for k in range(n):
            R = A[k][:k]
            vec = [A[i][k] for i in range(k)]
            toeplitz = [one, _add({}, A[k][k], -1)]
            for _ in range(k):
                toeplitz.append(_add({}, _dot(R, vec), -1))
                vec = [_dot(A[i][:k], vec) for i in range(k)]
            new = []
            for i in range(k + 2):
                acc = {}
                for j in range(min(i, k) + 1):
                    t, c = toeplitz[i - j], coeffs[j]
                    if t and c:
                        acc = _add(acc, _mul(t, c))
                new.append(acc)
            coeffs = new
        return list(reversed(coeffs))

    def evaluate(self, values: dict, prec: int) -> Matrix:
        return Matrix([[evaluate(e, values, prec) for e in row] for row in self.entries], self.n)

    def char_poly(self, values: dict, prec: int) -> Polynomial:
        return Polynomial([evaluate(c, values, prec) for c in self.char_poly_forms()])


def evaluate(form: dict, values: dict, prec: int) -> CInterval:
    acc = CInterval.from_exact(0, prec)
    for mono, c in form.items():
        term = CInterval.from_exact(c, prec)
        for p in mono:
            term = term * values[p]
        acc = acc + term
    return acc


def param_matrix(T, build) -> ParamMatrix:
    """``build(L)`` must be linear in the structure constants of ``L``."""
    return ParamMatrix({p: build(L) for p, L in T.parts.items()})
