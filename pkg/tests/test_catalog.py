import numpy as np
import pytest

from crskit import Truth, decide_locally_kahler
from crskit.catalog import (
    DEFAULT_SALEM,
    EXAMPLES,
    embedding_nonsingular,
    inoue_data,
    inoue_matrix,
    make_example,
    make_heisenberg5,
    make_inoue,
    make_lemma31,
    make_nondiag,
    make_salem,
    make_semidirect_imaginary,
    salem_data,
    salem_verify,
)
from crskit.crsmodel import adjoint_on_m, compute_m, validate_triple
from crskit.errors import BadParameters, MNotZero, NonImaginaryWeight, NotSalem, RootPatternViolation, UnknownExample
from crskit.kahlerdecide import decide_kahler_totally_real, g0_spectrum_check
from crskit.liecore import center
from crskit.linalg import Matrix, Subspace
from crskit.scalar import exact

I = exact("i")


def as_float(M):
    return np.array([[float(x) for x in r] for r in M.entries])


def test_every_catalog_triple_validates():
    for name in EXAMPLES:
        T = make_example(name)
        validate_triple(T)


def test_lemma31_examples():
    assert decide_locally_kahler(make_lemma31("i")).value is Truth.TRUE
    assert decide_locally_kahler(make_lemma31("1")).value is Truth.FALSE
    T = make_lemma31("0")
    assert not any(any(x for x in row) for L in T.parts.values() for M in L.c for row in M)
    assert decide_locally_kahler(T).value is Truth.TRUE


def test_inoue_matrix_data_against_numeric_oracle():
    d = inoue_data(2)
    ev = np.linalg.eigvals(as_float(inoue_matrix(2)))
    real = [e.real for e in ev if abs(e.imag) < 1e-12]
    cplx = [e for e in ev if abs(e.imag) >= 1e-12]
    assert len(real) == 1 and real[0] > 1
    alpha = real[0]
    assert abs(alpha * abs(cplx[0]) ** 2 - 1) < 1e-12
    lo, hi = (float(x) for x in d["alpha"].re_bounds())
    assert lo - 1e-12 <= alpha <= hi + 1e-12
    assert d["det"] == 1
    # alpha |beta|^2 = 1 with alpha > 1, as enclosures
    prod = d["alpha"] * d["abs_beta_sq"]
    assert prod.contains(exact(1))


def test_inoue_verdict():
    v = decide_locally_kahler(make_inoue())
    assert v.value is Truth.FALSE and v.witness["re_sign"] == 1


def test_inoue_degenerate_root_pattern():
    # the k-family always has one real eigenvalue; a matrix with three real
    # eigenvalues exercises the rejection path
    for k in range(-5, 6):
        p = np.poly(as_float(inoue_matrix(k)))
        n_real = sum(abs(r.imag) < 1e-9 for r in np.roots(p))
        assert n_real == 1
    with pytest.raises(RootPatternViolation):
        inoue_data(matrix=[[2, 1, 0], [1, 1, 0], [0, 0, 1]])
    with pytest.raises(RootPatternViolation):
        inoue_data(matrix=[[1, 0, 0], [0, 1, 0], [0, 0, 2]])


def test_heisenberg5():
    T = make_heisenberg5()
    assert decide_locally_kahler(T).value is Truth.TRUE
    r = adjoint_on_m(T)
    assert all(A.is_zero() for A in r.matrices)
    # m lies in center(Heisenberg) x C = span(Z, W) realified
    zw = Subspace.span([[1 if i == j else 0 for i in range(10)] for j in (3, 4, 8, 9)])
    assert zw.contains_subspace(compute_m(T).m)
    assert center(T.exact_algebra) == zw


def test_salem_verify():
    assert salem_verify(DEFAULT_SALEM)
    assert salem_verify((1, -1, -1, -1, 1))
    assert not salem_verify((-1, 0, 0, 0, 1))
    assert not salem_verify((1, -3, 1))


def test_salem_numeric_oracle():
    d = salem_data(DEFAULT_SALEM)
    roots = np.roots([1, -3, 3, -3, 1])
    alpha = max(r.real for r in roots if abs(r.imag) < 1e-12)
    unit = [r for r in roots if abs(r.imag) > 1e-12]
    assert all(abs(abs(u) - 1) < 1e-12 for u in unit)
    lo, hi = (float(x) for x in d["alpha"].re_bounds())
    assert lo - 1e-12 <= alpha <= hi + 1e-12
    s = abs(np.angle(unit[0]))
    slo, shi = (float(x) for x in d["s"].re_bounds())
    assert slo - 1e-12 <= s <= shi + 1e-12
    assert embedding_nonsingular(DEFAULT_SALEM)


def test_salem_local_vs_global():
    T = make_salem()
    assert decide_locally_kahler(T).value is Truth.TRUE
    with pytest.raises(MNotZero):
        decide_kahler_totally_real(T)
    v = g0_spectrum_check(T)
    assert v.value is Truth.FALSE
    assert decide_locally_kahler(make_salem((1, -1, -1, -1, 1))).value is Truth.TRUE


def test_make_salem_rejects():
    with pytest.raises(NotSalem):
        make_salem((-1, 0, 0, 0, 1))


def test_nondiag():
    T = make_nondiag()
    v = decide_locally_kahler(T)
    assert v.value is Truth.FALSE and v.failed_condition == "spectrum-diagonalizable"
    r = adjoint_on_m(T, prec=64)
    assert r.spectra_imaginary == [Truth.TRUE]
    test = r.tests[0]
    assert sorted(cl.count for cl in test.clusters) == [1, 2]
    twopi = 2 * np.pi
    nonzero = [cl for cl in test.clusters if not cl.exact_zero]
    box = nonzero[0].as_interval(64)
    ilo, ihi = (float(x) for x in box.im_bounds())
    assert ilo <= twopi <= ihi


def test_semidirect():
    assert decide_locally_kahler(make_semidirect_imaginary(1, [[0]])).value is Truth.TRUE
    assert decide_locally_kahler(make_semidirect_imaginary(1, [[I, 2 * I]])).value is Truth.TRUE
    assert decide_locally_kahler(make_semidirect_imaginary(2, [[I], [0]])).value is Truth.TRUE
    with pytest.raises(NonImaginaryWeight):
        make_semidirect_imaginary(1, [[1]])
    with pytest.raises(BadParameters):
        make_semidirect_imaginary(2, [[I]])


def test_registry_errors():
    with pytest.raises(UnknownExample):
        make_example("nope")
    with pytest.raises(BadParameters):
        make_example("inoue", {"k": "two"})
    with pytest.raises(BadParameters):
        make_example("lemma31", {"gamma": "1"})


def test_registry_params():
    assert make_example("lemma31", {"beta": "2 i"}).name.startswith("lemma31")
    assert make_example("salem", {"p": "1,-1,-1,-1,1"}).name == "salem(x^4-x^3-x^2-x+1)"
    T = make_example("semidirect-imaginary", {"sigma_dim": "2", "weights": "i,2i;0,-i"})
    assert T.n == 4
    assert isinstance(inoue_matrix(3), Matrix)
