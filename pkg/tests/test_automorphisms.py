import random

import pytest

from nonassoc.algebra import AdditiveMap, verify_automorphism
from nonassoc.automorphisms import (
    HypothesisError,
    build_fixing_automorphism,
    claim1_search,
    f_b_family,
    heisenberg_outer_derivation,
    lift_aut_local_f,
    lift_aut_local_g,
    lift_aut_triangular,
    linear_delta,
    orbit,
    quotient_by_ann,
    witness,
    witness_field,
)
from nonassoc.constructions import (
    heisenberg,
    local_sum,
    maximal_ideal_algebra,
    scalar_action,
    scalar_algebra,
    semidirect_double,
    triangular,
    triangular_parts,
    trivial_mult,
    truncated_poly,
)
from nonassoc.derivations import hat_lift_map, scalar_to_delta
from nonassoc.exactmath import GF, QQ, Matrix, Subspace
from nonassoc.invariants import center_lie


def lam_vector(F, n):
    k = scalar_algebra(F)
    V = trivial_mult(F, n)
    return triangular(k, V, scalar_action(k, V))


@pytest.fixture
def R3():
    F = GF(3)
    return local_sum(F, maximal_ideal_algebra(truncated_poly(F, 3)))


def x_plus_x2(R):
    one, x, x2 = R.basis()
    return AdditiveMap.from_images(R, R, [one, x + x2, x2])


def m(R, rows):
    return Matrix(R.field, [[R.field(c) for c in r] for r in rows])


# -- triangular lifts -------------------------------------------------------------------


def test_zero_delta_is_identity():
    L = semidirect_double(heisenberg(QQ, 1))
    R, M = triangular_parts(L)["R"], triangular_parts(L)["M"]
    sigma = lift_aut_triangular(L, AdditiveMap.zero(R, M))
    assert sigma == AdditiveMap.identity(L)


def test_vector_lift(Qt):
    L = lam_vector(Qt, 3)
    M = triangular_parts(L)["M"]
    sigma = lift_aut_triangular(L, scalar_to_delta(L, M.gen("v1")))
    assert verify_automorphism(sigma)
    t = Qt.t
    assert sigma(L.element((t, 0, 0, 0))) == L.element((t, 1, 0, 0))
    assert sigma(L.element((Qt(4), 0, 1, 0))) == L.element((Qt(4), 0, 1, 0))
    for v in L.tag.subspaces["ideal_M"].basis:
        assert sigma(L.element(v)).coords == tuple(v)
    one = L.element((1, 0, 0, 0))
    assert sigma(one) == one


def test_heisenberg_hat_lift(Qt):
    L = semidirect_double(heisenberg(Qt, 1))
    sigma = lift_aut_triangular(L, hat_lift_map(triangular_parts(L)["R"], triangular_parts(L)["M"]))
    assert verify_automorphism(sigma)
    assert sigma(L.element((Qt.t, 0, 0, 0, 0, 0))) == L.element((Qt.t, 0, 0, 1, 0, 0))


def test_delta_outside_annihilator_rejected():
    F = QQ
    k = scalar_algebra(F)
    mm = maximal_ideal_algebra(truncated_poly(F, 3))
    L = triangular(k, mm, scalar_action(k, mm))
    bad = linear_delta(L, m(L, [[1], [0]]))
    with pytest.raises(HypothesisError) as exc:
        lift_aut_triangular(L, bad)
    assert exc.value.clause == "image in ann(M)"


def test_non_leibniz_delta_rejected():
    L = lam_vector(QQ, 2)
    delta = linear_delta(L, m(L, [[1], [0]]))  # δ(1) = v1 violates δ(1) = 2 δ(1)
    with pytest.raises(HypothesisError) as exc:
        lift_aut_triangular(L, delta)
    assert exc.value.clause == "Leibniz"


def test_lifts_compose_additively():
    h = heisenberg(QQ, 1)
    L = semidirect_double(h)
    D1 = heisenberg_outer_derivation(h)
    D2 = m(L, [[0, 0, 0], [0, 0, 0], [1, 0, 0]])  # X -> Z, lands in the center
    s1 = lift_aut_triangular(L, linear_delta(L, D1))
    s2 = lift_aut_triangular(L, linear_delta(L, D2))
    s12 = lift_aut_triangular(L, linear_delta(L, D1 + D2))
    assert s1.compose(s2) == s12


def test_lift_fixes_where_delta_vanishes():
    h = heisenberg(QQ, 1)
    L = semidirect_double(h)
    sigma = lift_aut_triangular(L, linear_delta(L, heisenberg_outer_derivation(h)))
    assert sigma(L.gen("Y")) == L.gen("Y")


# -- local lifts ----------------------------------------------------------------------


def test_local_g(R3):
    sigma = lift_aut_local_g(R3, m(R3, [[1, 0], [1, 1]]))
    assert sigma == x_plus_x2(R3) and verify_automorphism(sigma)
    assert lift_aut_local_g(R3, Matrix.identity(GF(3), 2)) == AdditiveMap.identity(R3)


def test_local_g_rejects_non_identity_on_square(R3):
    with pytest.raises(HypothesisError) as exc:
        lift_aut_local_g(R3, m(R3, [[1, 0], [0, 2]]))
    assert exc.value.clause == "g identity on m^2"


def test_local_f(R3):
    Q, _ = quotient_by_ann(R3)
    assert Q.dim == 1
    assert lift_aut_local_f(R3, m(R3, [[0], [1]])) == x_plus_x2(R3)
    assert lift_aut_local_f(R3, m(R3, [[0], [0]])) == AdditiveMap.identity(R3)


def test_local_f_equals_g_form(R3):
    Q, pi = quotient_by_ann(R3)
    f = m(R3, [[0], [2]])
    g = Matrix.identity(GF(3), 2) + f @ pi.matrix
    assert lift_aut_local_f(R3, f) == lift_aut_local_g(R3, g)


def test_local_f_rejects_non_vanishing():
    F = GF(3)
    R = local_sum(F, maximal_ideal_algebra(truncated_poly(F, 4)))
    Q, _ = quotient_by_ann(R)
    # x^2 lies in m^2, so f must kill its class; send it to x^3 instead
    f = Matrix(F, [[F(0), F(0)], [F(0), F(0)], [F(0), F(1)]])
    with pytest.raises(HypothesisError) as exc:
        lift_aut_local_f(R, f)
    assert "vanishes" in exc.value.clause


def test_f_b_family(R3):
    fam = f_b_family(R3, (1, 0))
    assert len(fam) == 3
    x = R3.gen("x")
    images = {sigma(x).coords for _, sigma in fam}
    assert len(images) == 3
    for b, sigma in fam:
        assert verify_automorphism(sigma)
        assert sigma(x).coords == (0, 1, b[1])


def test_build_fixing(R3):
    F = GF(3)
    z = F.zero
    assert build_fixing_automorphism(R3, [], []) == AdditiveMap.identity(R3)
    sigma = build_fixing_automorphism(R3, [], [((z, F.one, z), (z, F.one, F.one))])
    assert sigma == x_plus_x2(R3)
    bad = build_fixing_automorphism(R3, [], [((z, F.one, z), (z, F.one, F.one)), ((z, F.one, z), (z, F.one, F(2)))])
    assert bad is None


def test_build_fixing_requires_annihilator_difference(R3):
    F = GF(3)
    z, o = F.zero, F.one
    with pytest.raises(HypothesisError):
        build_fixing_automorphism(R3, [], [((z, o, z), (z, o + o, z))])


def test_build_fixing_respects_fixed_points():
    F = GF(3)
    R = local_sum(F, trivial_mult(F, 3))  # m^2 = 0, ann(m) = m
    z, o = F.zero, F.one
    fixed = [(z, z, o, z)]
    sigma = build_fixing_automorphism(R, fixed, [((z, o, z, z), (z, o, z, o))])
    assert sigma is not None and verify_automorphism(sigma)
    assert sigma(R.element(fixed[0])).coords == fixed[0]
    assert sigma(R.gen("v1")) == R.gen("v1") + R.gen("v3")


# -- orbits and witnesses -----------------------------------------------------------------


def test_orbit_identity():
    L = lam_vector(QQ, 2)
    r = orbit(AdditiveMap.identity(L), L.gen("v1"), None, 10)
    assert r.distinct_cosets == 1 and r.periodic == 1


@pytest.mark.parametrize("char,expected", [(0, 21), (5, 5)])
def test_orbit_vector(char, expected):
    F = witness_field(char)
    L = lam_vector(F, 2)
    M = triangular_parts(L)["M"]
    sigma = lift_aut_triangular(L, scalar_to_delta(L, M.gen("v1")))
    a = L.element((F.t, 0, 0))
    r = orbit(sigma, a, Subspace.zero(F, 3), 20)
    assert r.distinct_cosets == expected
    assert r.periodic == (None if char == 0 else 5)
    for i, it in enumerate(r.iterates):
        assert it == L.element((F.t, F(i), 0))


def test_orbit_char0_distinct_up_to_100():
    F = witness_field(0)
    L = lam_vector(F, 1)
    sigma = lift_aut_triangular(L, scalar_to_delta(L, triangular_parts(L)["M"].gen("v1")))
    for N in (1, 7, 100):
        assert orbit(sigma, L.element((F.t, 0)), None, N).distinct_cosets == N + 1


def test_orbit_rejects_non_automorphism():
    L = lam_vector(QQ, 1)
    with pytest.raises(HypothesisError):
        orbit(AdditiveMap.zero(L, L), L.gen("v1"), None, 3)


def test_claim1_finds_element():
    F = witness_field(0)
    h = heisenberg(F, 1)
    found = claim1_search(h, hat_lift_map(h), center_lie(h), random.Random(0))
    assert found is not None
    b, how = found
    assert not center_lie(h).contains(hat_lift_map(h)(b).coords)


def test_claim1_fails_on_abelian():
    F = witness_field(0)
    V = trivial_mult(F, 2)
    assert claim1_search(V, hat_lift_map(V), V.full(), random.Random(0)) is None


@pytest.mark.parametrize("kind", ["vector", "lie", "s_ring"])
@pytest.mark.parametrize("char", [0, 3, 5])
def test_witnesses(kind, char):
    w = witness(kind, char, 30)
    assert w.passed
    if char:
        assert w.period == char and w.distinct_cosets == char
    else:
        assert w.distinct_cosets == 31 and w.period is None


def test_witness_lie_detail():
    w = witness("lie", 0, 50)
    assert w.passed and w.details["hat-lift of b"] == "X"
