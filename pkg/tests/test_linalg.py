import itertools
import random

import pytest
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from crskit.errors import ShapeMismatch
from crskit.linalg import (
    Matrix,
    Subspace,
    char_poly,
    inconsistency_certificate,
    inverse,
    is_diagonalizable,
    kernel,
    rank,
    solve_linear,
    subspace_meet_join,
)
from crskit.scalar import Polynomial, exact

I = exact("i")


def P(*c):
    return Polynomial([exact(x) for x in c])


def cofactor_det(rows):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    return sum(
        ((-1) ** j) * rows[0][j] * cofactor_det([r[:j] + r[j + 1:] for r in rows[1:]]) for j in range(n)
    )


def test_kernel_examples():
    assert kernel(Matrix([[1, 0], [0, 0]])) == Subspace.span([[0, 1]])
    assert kernel(Matrix.identity(3)).dim == 0
    K = kernel(Matrix([[1, 2], [2, 4]]))
    assert K == Subspace.span([[2, -1]])
    assert all(not x for x in Matrix([[1, 2], [2, 4]]) @ K.basis[0])


def test_meet_join_examples():
    e1, e2 = Subspace.span([[1, 0]]), Subspace.span([[0, 1]])
    meet, join = subspace_meet_join(e1, e2)
    assert meet.dim == 0 and join == Subspace.full(2)
    assert subspace_meet_join(e1, e1) == (e1, e1)


def _rand_vecs(rng, k, n):
    return [[mpq(rng.randint(-3, 3)) for _ in range(n)] for _ in range(k)]


def test_meet_join_modular_identity_and_bruteforce():
    rng = random.Random(3)
    for _ in range(40):
        U = Subspace.span(_rand_vecs(rng, 3, 6))
        V = Subspace.span(_rand_vecs(rng, 4, 6))
        meet, join = subspace_meet_join(U, V)
        assert meet.dim + join.dim == U.dim + V.dim
        # brute force: kernel of [U^T | -V^T] gives the meet
        A = Matrix.from_columns(list(U.basis) + [[-x for x in v] for v in V.basis])
        K = kernel(A)
        vecs = []
        for c in K.basis:
            vecs.append([sum((c[i] * U.basis[i][k] for i in range(U.dim)), mpq(0)) for k in range(6)])
        assert Subspace.span(vecs, 6) == meet


def test_canonical_order_independence():
    rng = random.Random(4)
    for _ in range(30):
        vs = _rand_vecs(rng, 3, 5)
        ws = _rand_vecs(rng, 2, 5)
        a = subspace_meet_join(Subspace.span(vs), Subspace.span(ws))
        rng.shuffle(vs)
        rng.shuffle(ws)
        b = subspace_meet_join(Subspace.span(vs), Subspace.span(ws))
        assert a == b


def test_char_poly_examples():
    assert char_poly(Matrix([[0, 1], [0, 0]])) == P(0, 0, 1)
    assert char_poly(Matrix.diag([I, 2 * I])) == Polynomial([-I, exact(1)]) * Polynomial([-2 * I, exact(1)])


def test_char_poly_against_cofactor_oracle():
    rng = random.Random(5)
    x = exact(0)
    for _ in range(25):
        rows = [[mpq(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(4)] for _ in range(4)]
        p = char_poly(Matrix(rows))
        for t in (mpq(-2), mpq(1, 3), mpq(0), mpq(5)):
            x = t
            shifted = [[(x if i == j else 0) - rows[i][j] for j in range(4)] for i in range(4)]
            assert p(x) == cofactor_det(shifted)


def _rand_invertible(rng, n):
    while True:
        M = Matrix([[mpq(rng.randint(-2, 2)) for _ in range(n)] for _ in range(n)])
        if rank(M) == n:
            return M


def test_char_poly_and_diagonalizability_similarity_invariant():
    rng = random.Random(6)
    mats = [Matrix([[0, 1], [0, 0]]), Matrix.identity(2), Matrix([[0, 1], [1, 0]]), Matrix([[1, 1, 0], [0, 1, 0], [0, 0, 2]]),
            Matrix([[0, -1, 0], [1, 0, 0], [0, 0, 0]])]
    for M in mats:
        for _ in range(10):
            Q = _rand_invertible(rng, M.rows)
            C = inverse(Q) @ M @ Q
            assert char_poly(C) == char_poly(M)
            assert is_diagonalizable(C) == is_diagonalizable(M)


def test_is_diagonalizable_examples():
    assert not is_diagonalizable(Matrix([[0, 1], [0, 0]]))
    assert is_diagonalizable(Matrix.identity(3))
    assert is_diagonalizable(Matrix([[0, 1], [1, 0]]))
    assert char_poly(Matrix([[0, 1], [1, 0]])) == P(-1, 0, 1)
    # rotation is diagonalizable over C
    assert is_diagonalizable(Matrix([[0, -1], [1, 0]]))


def test_solve_linear_examples():
    b = [mpq(3), mpq(-1), mpq(2)]
    assert list(solve_linear(Matrix.identity(3), b)) == b
    x = solve_linear(Matrix([[1, 1]]), [mpq(2)])
    assert x[0] + x[1] == 2
    A = Matrix([[1], [1]])
    assert solve_linear(A, [mpq(1), mpq(2)]) is None
    y = inconsistency_certificate(A, [mpq(1), mpq(2)])
    # y^T A = 0 and y^T b != 0
    assert y[0] + y[1] == 0 and y[0] * 1 + y[1] * 2 != 0


def test_kernel_equals_homogeneous_solutions():
    rng = random.Random(8)
    for _ in range(30):
        A = Matrix([[mpq(rng.randint(-2, 2)) for _ in range(5)] for _ in range(3)])
        K = kernel(A)
        assert K.dim == 5 - rank(A)
        for v in K.basis:
            assert not any(A @ v)
        x = solve_linear(A, [mpq(0)] * 3)
        assert K.contains(x)


def test_shape_errors():
    with pytest.raises(ShapeMismatch):
        char_poly(Matrix([[1, 2, 3]]))
    with pytest.raises(ShapeMismatch):
        Matrix([[1, 2], [3]])


@settings(max_examples=40)
@given(st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=1, max_size=4))
def test_span_contains_generators(vs):
    U = Subspace.span(vs)
    for v in vs:
        assert U.contains([mpq(x) for x in v])
    # canonical: permuting generators gives the same echelon basis
    for perm in itertools.islice(itertools.permutations(vs), 3):
        assert Subspace.span(list(perm)) == U
