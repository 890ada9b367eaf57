import pytest

import oracles
from nonassoc.algebra import power_ideal
from nonassoc.constructions import (
    heisenberg,
    local_sum,
    s_of,
    scalar_action,
    scalar_algebra,
    semidirect_double,
    triangular,
    trivial_mult,
    truncated_poly,
    two_dim_lie,
)
from nonassoc.exactmath import GF, QQ, Subspace
from nonassoc.invariants import (
    analysis_chain,
    annihilator,
    center_lie,
    check_triangular_annihilator,
    cross_annihilators,
    derived_series,
    lower_central,
    s_case_chain,
)


def lam_vector(F, n):
    k = scalar_algebra(F)
    V = trivial_mult(F, n)
    return triangular(k, V, scalar_action(k, V))


def vec_set(S):
    return {tuple(v) for v in S.elements()}


def test_annihilator_examples():
    V = trivial_mult(QQ, 3)
    assert annihilator(V) == V.full()
    h = heisenberg(QQ, 1)
    assert annihilator(h) == h.span([h.gen("Z")]) == center_lie(h)
    assert annihilator(truncated_poly(QQ, 3)).dim == 0


@pytest.mark.parametrize("name,A,tags", oracles.corpus(), ids=lambda x: x if isinstance(x, str) else "")
def test_annihilator_and_center_oracle(name, A, tags):
    assert vec_set(annihilator(A)) == oracles.annihilator(A)
    if A.report().lie:
        assert vec_set(center_lie(A)) == oracles.center(A)
        assert center_lie(A) == annihilator(A)


def test_annihilator_of_subspace_oracle():
    A = heisenberg(GF(3), 1)
    S = A.span([A.gen("X")])
    assert vec_set(annihilator(A, S)) == oracles.annihilator(A, [tuple(v) for v in S.elements()])


def test_power_ideals_truncated():
    A = truncated_poly(QQ, 3)
    m = A.tag.subspaces["maximal_ideal"]
    assert power_ideal(A, 2, m) == A.span([A.gen("x^2")])
    assert power_ideal(A, 3, m).dim == 0


def test_series():
    h = heisenberg(QQ, 1)
    lc = lower_central(h)
    assert [s.dim for s in lc] == [3, 1, 0]
    assert lc[1] == h.span([h.gen("Z")])
    assert [s.dim for s in derived_series(two_dim_lie(QQ))] == [2, 1, 0]
    assert center_lie(two_dim_lie(QQ)).dim == 0


def test_cross_annihilators_vector():
    c = cross_annihilators(lam_vector(QQ, 2))
    assert c.ann_M_of_R.dim == 0
    assert c.ann_R.dim == 0


def test_cross_annihilators_semidirect():
    h = heisenberg(QQ, 1)
    c = cross_annihilators(semidirect_double(h))
    assert c.ann_R_of_M == center_lie(h)
    assert c.ann_R == c.ann_R_of_M == c.ann_R_of_annM


def test_cross_annihilators_zero_module():
    from nonassoc.algebra import Algebra
    from nonassoc.constructions import BilinearAction

    R = truncated_poly(QQ, 2)
    zero = Algebra(QQ, [])
    L = triangular(R, zero, BilinearAction(R, zero, {}, {}))
    assert cross_annihilators(L).ann_R_of_M == R.full()


@pytest.mark.parametrize(
    "L",
    [lam_vector(QQ, 3), semidirect_double(heisenberg(QQ, 1)), semidirect_double(heisenberg(GF(3), 2))],
    ids=["vector", "h3", "h5-gf3"],
)
def test_triangular_annihilator_formula(L):
    r = check_triangular_annihilator(L)
    assert r.hypothesis and r.agree


def test_triangular_annihilator_values():
    L = semidirect_double(heisenberg(QQ, 1))
    r = check_triangular_annihilator(L)
    assert r.formula == L.span([L.gen("Z"), L.gen("Z'")])
    assert check_triangular_annihilator(lam_vector(QQ, 2)).brute_force.dim == 0


def test_triangular_annihilator_s_ring_reports():
    F = GF(3)
    R = local_sum(F, s_of(semidirect_double(heisenberg(F, 1))))
    r = check_triangular_annihilator(R)
    assert r.ok
    assert r.formula.ambient_dim == 13


def test_chain_vector():
    L = lam_vector(QQ, 2)
    c = analysis_chain(L)
    assert c.ok
    assert c.lambda1 == L.tag.subspaces["ideal_M"]
    assert c.ann.dim == 0


def test_chain_semidirect():
    h = heisenberg(QQ, 1)
    L = semidirect_double(h)
    c = analysis_chain(L)
    assert c.ok
    expected = L.span([L.gen("Z"), L.gen("X'"), L.gen("Y'"), L.gen("Z'")])
    assert c.lambda1 == expected


def test_s_case_chain():
    F = GF(3)
    S = s_of(semidirect_double(heisenberg(F, 1)))
    r = s_case_chain(S)
    assert r.ok
    assert S.dim == 12 and r.S2.dim == 4 and r.S2 == annihilator(S)
    assert r.single_z_property["bracket_is_center"]


def test_s_case_via_local_sum():
    F = GF(3)
    R = local_sum(F, s_of(semidirect_double(heisenberg(F, 1))))
    c = analysis_chain(R)
    assert c.s_case is not None and c.ok
    assert any("S-case" in line for line in c.summary())


def test_subspace_arguments_validated():
    A = heisenberg(QQ, 1)
    with pytest.raises(ValueError):
        annihilator(A, Subspace.full(QQ, 2))
