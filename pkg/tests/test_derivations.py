import random

import pytest

from nonassoc.algebra import AlgebraError
from nonassoc.constructions import (
    heisenberg,
    matrix_algebra,
    maximal_ideal_algebra,
    scalar_action,
    scalar_algebra,
    semidirect_double,
    triangular,
    trivial_mult,
    truncated_poly,
    two_dim_lie,
)
from nonassoc.derivations import (
    as_matrix,
    derivation_space,
    derivations_vanishing_on,
    embedded_matrix,
    hat_lift,
    hat_lift_map,
    is_derivation,
    leibniz_failures,
    scalar_to_delta,
)
from nonassoc.exactmath import GF, QQ, Matrix


def test_derivation_space_dimensions():
    assert derivation_space(trivial_mult(QQ, 3)).dim == 9
    assert derivation_space(two_dim_lie(QQ)).dim == 2
    assert derivation_space(heisenberg(QQ, 1)).dim == 6


def test_two_dim_lie_derivation_shape():
    g = two_dim_lie(QQ)
    for v in derivation_space(g).basis:
        D = as_matrix(g, v)
        # D(x) = αx, D(y) = γx: second row vanishes
        assert D[1, 0] == 0 and D[1, 1] == 0


@pytest.mark.parametrize(
    "A", [heisenberg(QQ, 1), two_dim_lie(GF(5)), truncated_poly(QQ, 3), semidirect_double(heisenberg(GF(3), 1))],
    ids=["h3", "2dim", "trunc3", "h3xh3"],
)
def test_basis_derivations_satisfy_leibniz(A):
    for v in derivation_space(A).basis:
        assert is_derivation(A, as_matrix(A, v))


def test_non_derivation_detected():
    h = heisenberg(QQ, 1)
    assert leibniz_failures(h, Matrix.identity(QQ, 3))


def test_vanishing_examples():
    h = heisenberg(QQ, 1)
    # DX = 0 leaves DY free (3 parameters) and forces DZ = (Y-coefficient of DY) Z
    V = derivations_vanishing_on(h, [h.gen("X")])
    assert V.dim == 3
    assert V <= derivation_space(h)
    g = two_dim_lie(QQ)
    assert derivations_vanishing_on(g, g.basis()).dim == 0
    assert derivations_vanishing_on(h, h.basis()).dim == 0


def test_hat_lift_example(Qt):
    h = heisenberg(Qt, 1)
    t = Qt.t
    a = h.gen("X").scale(t) + h.gen("Y").scale(t * t)
    lift = hat_lift(h, a)
    assert lift.in_algebra
    assert lift.element == h.gen("X") + h.gen("Y").scale(Qt(2) * t)
    assert lift.matrix == embedded_matrix(h, lift.element)


def test_hat_lift_constant_is_zero(Qt):
    h = heisenberg(Qt, 1)
    a = h.gen("X").scale(3) + h.gen("Z")
    assert not hat_lift(h, a).element


def test_hat_lift_leibniz_brackets(Qt):
    h = heisenberg(Qt, 2)
    rng = random.Random(5)
    for _ in range(50):
        a, b = h.random_element(rng), h.random_element(rng)
        lhs = hat_lift(h, a * b).element
        rhs = hat_lift(h, a).element * b + a * hat_lift(h, b).element
        assert lhs == rhs


def test_hat_lift_leibniz_associative(Qt):
    A = matrix_algebra(Qt, 3)
    rng = random.Random(6)
    for _ in range(30):
        a, b = A.random_element(rng), A.random_element(rng)
        assert hat_lift(A, a * b).element == a * hat_lift(A, b).element + hat_lift(A, a).element * b


def test_hat_lift_additive(Qt):
    h = heisenberg(Qt, 1)
    rng = random.Random(7)
    a, b = h.random_element(rng), h.random_element(rng)
    assert hat_lift(h, a + b).element == hat_lift(h, a).element + hat_lift(h, b).element


def test_hat_lift_pth_powers_vanish(GF5t):
    h = heisenberg(GF5t, 1)
    rng = random.Random(8)
    for _ in range(20):
        coords = tuple(GF5t.random(rng) ** 5 for _ in range(3))
        assert not hat_lift(h, coords).element


def test_hat_lift_needs_derivation():
    with pytest.raises(AlgebraError):
        hat_lift(heisenberg(QQ, 1), (1, 0, 0))


def test_hat_lift_map_matches(Qt):
    h = heisenberg(Qt, 1)
    d = hat_lift_map(h)
    a = h.element((Qt.t, Qt.t * Qt.t, Qt(1) / Qt.t))
    assert d(a) == hat_lift(h, a).element


def test_scalar_to_delta(Qt):
    k = scalar_algebra(Qt)
    V = trivial_mult(Qt, 2)
    L = triangular(k, V, scalar_action(k, V))
    v1 = V.gen("v1")
    delta = scalar_to_delta(L, v1)
    t = Qt.t
    assert not delta(k.element((Qt(5),)))
    assert delta(k.element((t,))) == v1
    tt = k.element((t * t,))
    assert delta(tt) == v1.scale(2 * t)
    # product rule δ(t·t) = t·δ(t) + δ(t)·t
    assert delta(tt) == delta(k.element((t,))).scale(t).scale(2)


def test_scalar_to_delta_rejects_outside_annihilator(Qt):
    k = scalar_algebra(Qt)
    m = maximal_ideal_algebra(truncated_poly(Qt, 3))
    L = triangular(k, m, scalar_action(k, m))
    with pytest.raises(AlgebraError):
        scalar_to_delta(L, m.gen("x"))
    assert scalar_to_delta(L, m.gen("x^2"))
