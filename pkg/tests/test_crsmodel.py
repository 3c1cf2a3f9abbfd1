import random

import pytest
from gmpy2 import mpq

from crskit.catalog import make_heisenberg5, make_inoue, make_lemma31, make_nondiag, make_salem
from crskit.crsmodel import (
    ComplexCoords,
    _rho,
    adjoint_on_m,
    build_crs,
    complement_generators,
    compute_m,
    nilpotent_subtriple,
    weight_table,
)
from crskit.errors import InvalidComplexStructure, NotGeneric, NotSolvable, NotSubalgebra, ValidationError
from crskit.liecore import LieAlgebra, center, is_nilpotent, nilradical
from crskit.linalg import Matrix, Subspace
from crskit.scalar import exact
from crskit.truth import Truth

from gen import random_invertible, random_nilpotent_triple

I = exact("i")


def test_totally_real_abelian():
    T = build_crs(3, {}, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    M = compute_m(T)
    assert M.m.dim == 0 and M.k == 0 and T.codim == 3


def test_inoue_dimensions():
    T = make_inoue()
    assert T.g0.dim == 5 and T.dim == 6 and T.codim == 1


def test_not_generic():
    with pytest.raises(NotGeneric):
        build_crs(2, {(0, 1): {1: 1}}, [[0, 1], [0, I]])


def test_not_subalgebra():
    # [X, Y] = Z but Z not in the real span
    with pytest.raises(NotSubalgebra):
        build_crs(3, {(0, 1): {2: 1}}, [[1, 0, 0], [0, 1, 0], [0, 0, I]])


def test_not_solvable():
    # sl2
    with pytest.raises(NotSolvable):
        build_crs(3, {(0, 1): {1: 2}, (0, 2): {2: -2}, (1, 2): {0: 1}}, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])


def test_bad_complex_structure():
    J = Matrix([[0, 1], [1, 0]])
    with pytest.raises(InvalidComplexStructure):
        build_crs(real_parts={"": LieAlgebra.abelian(2)}, J=J, real_g0_basis=[[1, 0]])


def test_dependent_g0():
    with pytest.raises(ValidationError):
        build_crs(1, {}, [[1], [2]])


def test_m_for_catalog():
    M = compute_m(make_salem())
    assert M.k == 1
    assert M.m == Subspace.span([[1 if i == 3 else 0 for i in range(8)], [1 if i == 7 else 0 for i in range(8)]])
    M = compute_m(make_nondiag())
    assert M.k == 3
    assert M.m == Subspace.span([[1 if i == j else 0 for i in range(8)] for j in (1, 2, 3, 5, 6, 7)])


def test_spectral_reports_for_catalog():
    r = adjoint_on_m(make_heisenberg5())
    assert all(A.is_zero() for A in r.matrices)
    T = make_salem()
    r = adjoint_on_m(T, prec=64)
    # generators T, E1, E2 act on m = C E3 by (is, 0, 0)
    assert len(r.matrices) == 3 and all(A.rows == 1 for A in r.matrices)
    assert set(r.spectra_imaginary) == {Truth.TRUE} and set(r.each_diagonalizable) == {Truth.TRUE}
    assert all(A.entries[0][0].is_point_zero() for A in r.matrices[1:])
    entry = r.matrices[0].entries[0][0]
    s = T.constants["is"].param_interval("im", 64)
    # the entry is i*s exactly up to enclosure
    assert entry.real_is_point_zero() and entry.im == s.re
    r = adjoint_on_m(make_nondiag(), prec=64)
    assert r.spectra_imaginary == [Truth.TRUE]
    assert r.each_diagonalizable == [Truth.FALSE]


def test_nondiag_exact_matrix_blocks():
    T = make_nondiag()
    r = adjoint_on_m(T)
    A = r.matrices[0]
    c = T.constants["twopi"].surrogate * I
    assert sorted(A.entries[i][i] for i in range(3) if A.entries[i][i]) == [c]
    assert list(r.char_polys[0].coeffs[:2]) == [0, 0]


def test_nilpotent_subtriple_examples():
    T = random_nilpotent_triple(random.Random(1))
    sub = nilpotent_subtriple(T)
    assert sub.is_whole and sub.triple is T
    T = make_lemma31("i")
    sub = nilpotent_subtriple(T)
    L = T.exact_algebra
    assert sub.n == nilradical(L)
    assert sub.n0 == sub.n.meet(T.g0)
    T = make_heisenberg5()
    sub = nilpotent_subtriple(T)
    assert is_nilpotent(T.exact_algebra.restrict(sub.n))
    # n is the realified Heisenberg x C factor: X, Y, Z, W and their J-images
    assert sub.n.dim == 8


def test_heisenberg5_m_inside_center_times_C():
    T = make_heisenberg5()
    M = compute_m(T)
    Z = center(T.exact_algebra)
    assert Z.contains_subspace(M.m)
    assert Z.dim == 4  # Z, W over R with J


def _fixtures():
    return [make_inoue(), make_heisenberg5(), make_salem(), make_nondiag(), make_lemma31("i")]


def test_m_is_J_stable_everywhere():
    rng = random.Random(2)
    triples = _fixtures() + [random_nilpotent_triple(rng) for _ in range(20)]
    for T in triples:
        M = compute_m(T)
        for v in M.m.basis:
            assert M.m.contains(T.J @ v)


def test_complement_is_totally_real():
    rng = random.Random(3)
    triples = _fixtures() + [random_nilpotent_triple(rng) for _ in range(20)]
    for T in triples:
        M = compute_m(T)
        for _ in range(5):
            gens = complement_generators(T, M.m)
            a0 = []
            for g in gens:
                v = list(g)
                for u in M.m.basis:
                    c = mpq(rng.randint(-3, 3))
                    v = [x + c * y for x, y in zip(v, u)]
                a0.append(v)
            if not a0:
                continue
            A = Subspace.span(a0, T.dim)
            JA = Subspace.span([T.J @ v for v in A.basis], T.dim)
            assert A.meet(JA).dim == 0


def test_representation_property():
    rng = random.Random(4)
    triples = _fixtures() + [random_nilpotent_triple(rng) for _ in range(10)]
    for T in triples:
        M = compute_m(T)
        if not (M.k and M.is_ideal_in_g0):
            continue
        L = T.exact_algebra
        cc = ComplexCoords(T.J, M.m, M.complex_basis)

        def rho(x):
            return _rho(L, cc, x, M.complex_basis)

        B = T.g0.basis
        for a in range(len(B)):
            for b in range(a + 1, len(B)):
                lhs = rho(L.bracket(B[a], B[b]))
                ra, rb = rho(B[a]), rho(B[b])
                assert lhs == ra @ rb - rb @ ra


def test_weight_linearity():
    from crskit.catalog import make_semidirect_imaginary

    rng = random.Random(5)
    for _ in range(20):
        w = [[I * rng.randint(-3, 3) for _ in range(3)] for _ in range(2)]
        T = make_semidirect_imaginary(2, w)
        M = compute_m(T)
        L = T.exact_algebra
        cc = ComplexCoords(T.J, M.m, M.complex_basis)
        x, y = T.g0.basis[0], T.g0.basis[1]
        s = [mpq(rng.randint(-3, 3)) for _ in range(2)]
        xs = [s[0] * a for a in x]
        ys = [s[1] * b for b in y]
        xy = [a + b for a, b in zip(xs, ys)]
        table = weight_table([_rho(L, cc, v, M.complex_basis) for v in (xs, ys, xy)], M.k)
        assert table is not None
        for row in table:
            assert row[2] == row[0] + row[1]


def test_transform_round_trip_identity():
    rng = random.Random(6)
    T = make_salem()
    P = random_invertible(rng, T.dim)
    U = T.transform(P)
    assert U.dim == T.dim and U.g0.dim == T.g0.dim
    assert compute_m(U).k == compute_m(T).k
