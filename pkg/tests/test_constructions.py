import itertools

import pytest

import oracles
from nonassoc.algebra import AdditiveMap, Algebra, AlgebraError, find_unit, is_ideal, power_ideal, verify_homomorphism
from nonassoc.constructions import (
    BilinearAction,
    free_nilpotent_3,
    heisenberg,
    local_sum,
    matrix_algebra,
    maximal_ideal_algebra,
    null_quadratic,
    plus,
    ring2,
    s_of,
    scalar_action,
    scalar_algebra,
    semidirect_double,
    semidirect_rho,
    triangular,
    triangular_parts,
    trivial_mult,
    truncated_poly,
    two_dim_lie,
)
from nonassoc.exactmath import GF, QQ, Subspace
from nonassoc.invariants import annihilator, center_lie


def vec_set(S: Subspace) -> set:
    return {tuple(v) for v in S.elements()}


# -- triangular -----------------------------------------------------------------------


def test_dual_numbers_are_triangular():
    k = scalar_algebra(QQ)
    V = trivial_mult(QQ, 1)
    L = triangular(k, V, scalar_action(k, V))
    D = truncated_poly(QQ, 2)
    # (r, m) -> r + m x is the identity on coordinates
    iso = AdditiveMap.from_images(L, D, D.basis())
    assert iso.is_invertible() and verify_homomorphism(iso)
    assert L.same_structure(D)


def test_triangular_vector_annihilator_zero():
    F = GF(3)
    k = scalar_algebra(F)
    V = trivial_mult(F, 2)
    L = triangular(k, V, scalar_action(k, V))
    assert annihilator(L).dim == 0
    assert oracles.annihilator(L) == {L.zero_vector()}


def test_triangular_with_zero_module():
    R = truncated_poly(QQ, 3)
    zero = Algebra(QQ, [])
    L = triangular(R, zero, BilinearAction(R, zero, {}, {}))
    assert L.same_structure(R)


def test_triangular_invariants():
    h = heisenberg(QQ, 1)
    L = semidirect_double(h)
    parts = triangular_parts(L)
    assert is_ideal(L, L.tag.subspaces["ideal_M"])
    n = parts["R"].dim
    for i, j in itertools.product(range(n), repeat=2):
        assert L.basis_product(i, j)[:n] == h.basis_product(i, j)
        assert not any(L.basis_product(i, j)[n:])


def test_mismatched_action_rejected():
    R = truncated_poly(QQ, 2)
    M = trivial_mult(QQ, 1)
    with pytest.raises(AlgebraError):
        triangular(R, M, BilinearAction(truncated_poly(QQ, 3), M, {}, {}))
    with pytest.raises(AlgebraError):
        triangular(R, trivial_mult(GF(3), 1), scalar_action(scalar_algebra(GF(3)), trivial_mult(GF(3), 1)))


# -- semidirect sums ------------------------------------------------------------------


def test_semidirect_double_abelian():
    g = trivial_mult(QQ, 2)
    L = semidirect_double(g)
    assert L.dim == 4 and not L.table


def test_semidirect_double_heisenberg_bracket():
    L = semidirect_double(heisenberg(QQ, 1))
    X = L.gen("X")
    Yp = L.gen("Y'")
    assert X * Yp == L.gen("Z'")
    assert L.report().lie


def test_semidirect_double_center_is_product():
    g = heisenberg(GF(2), 1)
    L = semidirect_double(g)
    expected = L.span([L.gen("Z"), L.gen("Z'")])
    assert center_lie(L) == expected == L.tag.subspaces["center"]
    assert vec_set(expected) == oracles.center(L)


def test_semidirect_double_rejects_non_lie():
    with pytest.raises(AlgebraError):
        semidirect_double(truncated_poly(QQ, 2))


def test_semidirect_rho_zero_is_direct_sum():
    g1 = two_dim_lie(QQ)
    g2 = trivial_mult(QQ, 2)
    L = semidirect_rho(g1, g2, BilinearAction(g1, g2, {}, {}))
    assert L.dim == 4
    assert all(i < 2 and j < 2 for (i, j) in L.table)


def test_aff():
    k = trivial_mult(QQ, 1)
    rho = BilinearAction.from_functions(k, k, lambda i, j: (QQ.one,), None)
    L = semidirect_rho(k, k, rho)
    a, x = L.basis()
    assert a * x == x and x * a == -x
    assert L.report().lie


def test_semidirect_rho_matches_double():
    g = heisenberg(QQ, 1)
    rho = BilinearAction.from_functions(g, plus(g), g.basis_product, None)
    assert semidirect_rho(g, plus(g), rho).same_structure(semidirect_double(g))


def test_semidirect_rho_rejects_non_derivation():
    g = trivial_mult(QQ, 1)
    h = heisenberg(QQ, 1)
    # rho(a) = identity on h is not a derivation: id([X,Y]) = Z != 2Z
    rho = BilinearAction.from_functions(g, h, lambda i, j: h.unit_vector(j), None)
    with pytest.raises(AlgebraError):
        semidirect_rho(g, h, rho)


# -- Heisenberg and friends -------------------------------------------------------------


def test_heisenberg_h3():
    h = heisenberg(QQ, 1)
    X, Y, Z = h.basis()
    assert X * Y == Z and X * Z == h.zero() and Y * Z == h.zero()
    r = h.report()
    assert r.two_step_nilpotent
    assert center_lie(h) == h.span([Z])


def test_heisenberg_h5():
    h = heisenberg(QQ, 2)
    assert h.dim == 5 and center_lie(h).dim == 1
    assert h.basis_names == ("p1", "p2", "q1", "q2", "z")


@pytest.mark.parametrize("n", [1, 2, 3])
def test_heisenberg_embedding_commutators(n):
    h = heisenberg(QQ, n)
    E = h.embedding
    for i, j in itertools.product(range(h.dim), repeat=2):
        comm = E[i] @ E[j] - E[j] @ E[i]
        expected = sum((E[k].scale(c) for k, c in enumerate(h.basis_product(i, j)) if c), E[0].scale(0))
        assert comm == expected


def test_two_dim_lie():
    g = two_dim_lie(QQ)
    x, y = g.basis()
    assert x * y == x and y * x == -x
    assert g.report().lie


def test_trivial_truncated_null_quadratic():
    assert not trivial_mult(GF(2), 3).table
    A = truncated_poly(QQ, 2)
    x = A.gen("x")
    assert x * x == A.zero() and find_unit(A) == A.gen("1")
    N = null_quadratic(3, 2)
    m = N.tag.subspaces["maximal_ideal"]
    assert m == N.span([N.gen("y1"), N.gen("y2")])
    assert power_ideal(N, 2, m).dim == 0
    assert annihilator(N, m) & m == m


def test_matrix_algebra():
    L = matrix_algebra(QQ, 2, lie=True)
    assert L.gen("e11") * L.gen("e12") == L.gen("e12")
    A = matrix_algebra(QQ, 2)
    r = A.report()
    assert r.associative and not r.commutative and r.unit is not None


# -- S(h) -------------------------------------------------------------------------------


def test_s_of_heisenberg():
    S = s_of(heisenberg(QQ, 1))
    assert S.dim == 6
    assert S.gen("X_1") * S.gen("Y_2") == S.gen("Z_2")
    r = S.report()
    assert r.commutative and r.associative
    assert power_ideal(S, 3).dim == 0
    assert annihilator(S) == S.span([S.gen("Z_1"), S.gen("Z_2")])


def test_s_of_rejects_three_step():
    f = free_nilpotent_3(QQ)
    assert f.report().lie and not f.report().two_step_nilpotent
    with pytest.raises(AlgebraError):
        s_of(f)
    S = s_of(f, check=False)
    assert not S.report().associative


# -- local sums ------------------------------------------------------------------------


def test_local_sum_truncated():
    F = GF(3)
    R = local_sum(F, maximal_ideal_algebra(truncated_poly(F, 3)))
    assert R.same_structure(truncated_poly(F, 3))


def test_local_sum_s_ring():
    F = GF(3)
    R = local_sum(F, s_of(semidirect_double(heisenberg(F, 1))))
    m = R.tag.subspaces["maximal_ideal"]
    assert R.dim == 13 and m.dim == 12
    from nonassoc.local_rings import is_local

    assert is_local(R, m).ok


def test_local_sum_nonunits_are_maximal_ideal():
    F = GF(3)
    for m_alg in (maximal_ideal_algebra(truncated_poly(F, 3)), trivial_mult(F, 2)):
        R = local_sum(F, m_alg)
        m = R.tag.subspaces["maximal_ideal"]
        assert oracles.is_local(R, vec_set(m))


def test_local_sum_rejects_non_nilpotent():
    with pytest.raises(AlgebraError):
        local_sum(QQ, truncated_poly(QQ, 2))


def test_ring2_shape():
    R = ring2(GF(3, 2))
    assert R.field == GF(3) and R.dim == 5
    assert R.basis_names == ("1", "x", "g*x", "x^2", "g*x^2")
    assert R.report().commutative and R.report().associative
