import random

import pytest
from gmpy2 import mpq

from crskit.errors import ActionNotCentral, JacobiViolation, NotAbelian, NotAnIdeal
from crskit.liecore import (
    LieAlgebra,
    center,
    check_axioms,
    derived,
    is_ideal,
    is_nilpotent,
    is_solvable,
    is_subalgebra,
    nilradical,
    split_abelian_extension,
    validate,
)
from crskit.linalg import Matrix, Subspace, char_poly
from crskit.scalar import exact

from gen import direct_sum, random_invertible, random_nilpotent_real, random_solvable

I = exact("i")

HEIS = LieAlgebra.from_brackets(3, {(0, 1): {2: 1}}, ["X", "Y", "Z"])


def lemma31_algebra(beta):
    return LieAlgebra.from_brackets(2, {(0, 1): {1: beta}}, ["Z", "W"])


def ad_nilpotent(L, v):
    A = L.adjoint_matrix(v)
    return all(not c for c in char_poly(A).coeffs[:-1])


def test_validate_examples():
    rep = validate(LieAlgebra.abelian(3))
    assert rep.solvable and rep.nilpotent
    assert len(rep.derived_series) == 2 and rep.derived_series[1].dim == 0
    rep = validate(HEIS)
    assert rep.nilpotent and derived(HEIS) == Subspace.span([[0, 0, 1]])
    L = lemma31_algebra(1)
    rep = validate(L)
    assert rep.solvable and not rep.nilpotent
    # lower central series stabilizes at span(W): [Z, W] = W by direct iteration
    assert rep.lower_central_series[-1] == Subspace.span([[0, 1]])
    assert L.bracket([1, 0], [0, 1]) == (0, 1)


def test_jacobi_violation():
    bad = LieAlgebra.from_brackets(3, {(0, 1): {2: 1}, (1, 2): {0: 1}, (0, 2): {0: 1}})
    with pytest.raises(JacobiViolation):
        check_axioms(bad)


def test_center_and_adjoint():
    assert center(HEIS) == Subspace.span([[0, 0, 1]]) == derived(HEIS)
    A = LieAlgebra.abelian(3)
    assert center(A) == A.full()
    assert A.adjoint_matrix([1, 2, 3]).is_zero()


def test_nondiag_adjoint_blocks():
    # R T x C^3 with [T, Z] = 2 pi i Z approximated by a rational stand-in and [T, B] = A
    c = mpq(710, 113) * I
    L = LieAlgebra.from_brackets(4, {(0, 1): {1: c}, (0, 3): {2: 1}}, ["T", "Z", "A", "B"])
    ad = L.adjoint_matrix([1, 0, 0, 0])
    block = [[ad.entries[i][j] for j in range(1, 4)] for i in range(1, 4)]
    assert block == [[c, 0, 0], [0, 0, 1], [0, 0, 0]]


def test_nilradical_examples():
    assert nilradical(HEIS) == HEIS.full()
    assert nilradical(lemma31_algebra(1)) == Subspace.span([[0, 1]])
    # [T,X] = a X, [T,Y] = b Y with rational stand-ins of the logarithms
    L = LieAlgebra.from_brackets(3, {(0, 1): {1: mpq(178, 633)}, (0, 2): {2: mpq(-89, 633) + mpq(646, 265) * I}})
    assert nilradical(L) == Subspace.span([[0, 1, 0], [0, 0, 1]])


def check_nilradical(L, rng, outer=50, inner=20):
    n = nilradical(L)
    assert is_ideal(L, n)
    assert is_nilpotent(L.restrict(n))
    assert n.contains_subspace(derived(L))
    if n.dim == L.dim:
        return
    for _ in range(outer):
        while True:
            v = [mpq(rng.randint(-3, 3), rng.randint(1, 2)) for _ in range(L.dim)]
            if not n.contains(v):
                break
        found = False
        for _ in range(inner):
            w = [mpq(0)] * L.dim
            for b in n.basis:
                c = mpq(rng.randint(-3, 3))
                w = [x + c * y for x, y in zip(w, b)]
            if not ad_nilpotent(L, [a + b for a, b in zip(v, w)]):
                found = True
                break
        assert found, "sampled element outside n is ad-nilpotent"


def test_nilradical_random_solvable():
    rng = random.Random(11)
    for _ in range(40):
        L = random_solvable(rng)
        assert is_solvable(L)
        check_nilradical(L, rng, outer=10, inner=5)


def test_nilradical_basis_change_invariance():
    rng = random.Random(12)
    for _ in range(20):
        L = random_solvable(rng)
        P = random_invertible(rng, L.dim)
        n = nilradical(L)
        # nilradical of the transformed algebra, mapped back, is the same subspace
        Ln = L.change_basis(P)
        back = Subspace.span([P @ v for v in nilradical(Ln).basis], L.dim) if nilradical(Ln).dim else Subspace.zero(L.dim)
        assert back == n


def test_split_heisenberg_center_obstruction():
    out = split_abelian_extension(HEIS, center(HEIS), require_central_complement=True)
    assert not out.exists
    assert out.to_dict()["inconsistent_rows"]


def test_split_direct_sum_has_zero_certificate():
    L = direct_sum(HEIS, LieAlgebra.abelian(2))
    m = Subspace.span([[0, 0, 0, 1, 0], [0, 0, 0, 0, 1]])
    out = split_abelian_extension(L, m, require_central_complement=True)
    assert out.exists and out.phi.is_zero()
    assert is_subalgebra(L, out.complement)


def test_split_errors():
    with pytest.raises(NotAnIdeal):
        split_abelian_extension(HEIS, Subspace.span([[1, 0, 0]]))
    with pytest.raises(NotAbelian):
        split_abelian_extension(HEIS, HEIS.full())
    L = lemma31_algebra(1)
    with pytest.raises(ActionNotCentral):
        split_abelian_extension(L, Subspace.span([[0, 1]]), require_central_complement=True)


def semidirect_by_construction(rng):
    """a (+) m with a acting on abelian m through commuting matrices, then scrambled."""
    q = rng.randint(1, 2)
    r = rng.randint(1, 3)
    A = [[mpq(rng.randint(-2, 2)) for _ in range(r)] for _ in range(r)]
    powers = [Matrix.identity(r), Matrix(A)]
    acts = []
    for _ in range(q):
        c0, c1 = mpq(rng.randint(-2, 2)), mpq(rng.randint(-2, 2))
        acts.append(powers[0].scale(c0) + powers[1].scale(c1))
    br = {}
    for a in range(q):
        for l in range(r):
            col = {q + k: acts[a].entries[k][l] for k in range(r) if acts[a].entries[k][l]}
            if col:
                br[(a, q + l)] = col
    L = LieAlgebra.from_brackets(q + r, br)
    m = Subspace.span([[1 if i == q + l else 0 for i in range(q + r)] for l in range(r)])
    P = random_invertible(rng, q + r)
    from crskit.linalg import inverse

    Pinv = inverse(P)
    return L.change_basis(P), Subspace.span([Pinv @ v for v in m.basis])


def test_split_soundness_on_constructed_instances():
    rng = random.Random(13)
    for _ in range(200):
        L, m = semidirect_by_construction(rng)
        out = split_abelian_extension(L, m)
        assert out.exists
        assert out.complement.dim + m.dim == L.dim
        assert out.complement.meet(m).dim == 0
        assert is_subalgebra(L, out.complement)


def test_split_central_variant_on_products():
    rng = random.Random(14)
    for _ in range(30):
        N = random_nilpotent_real(rng, max_dim=4)
        L = direct_sum(N, LieAlgebra.abelian(2))
        m = Subspace.span([[1 if i == N.dim + k else 0 for i in range(L.dim)] for k in range(2)])
        out = split_abelian_extension(L, m, require_central_complement=True)
        assert out.exists
        assert is_subalgebra(L, out.complement)
        assert not any(any(L.bracket(a, u)) for a in out.complement.basis for u in m.basis)
