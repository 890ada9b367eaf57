import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from nonassoc.exactmath import (
    GF,
    QQ,
    DimensionError,
    Matrix,
    RationalFunctionField,
    ScalarParseError,
    Subspace,
    derive_scalar,
    field_from_json,
    inverse,
    kernel,
    parse_field,
    rank,
    rref,
    solve,
)
from nonassoc.exactmath.fields import is_irreducible, least_irreducible


def M(field, rows):
    return Matrix(field, [[field(c) for c in r] for r in rows])


# -- rref / kernel / solve ------------------------------------------------------------


def test_rref_identity():
    I = Matrix.identity(QQ, 2)
    R, piv, r = rref(I)
    assert R == I and piv == [0, 1] and r == 2


def test_rref_zero_gf3():
    Z = Matrix.zeros(GF(3), 3, 3)
    R, piv, r = rref(Z)
    assert R.is_zero() and piv == [] and r == 0


def test_rref_hand_example():
    R, piv, r = rref(M(QQ, [[2, 4], [1, 2]]))
    assert R == M(QQ, [[1, 2], [0, 0]])
    assert r == 1 and piv == [0]


def test_kernel_identity_and_zero():
    assert kernel(Matrix.identity(QQ, 3)).dim == 0
    assert kernel(Matrix.zeros(QQ, 2, 4)) == Subspace.full(QQ, 4)


def test_kernel_row_of_ones():
    K = kernel(M(QQ, [[1, 1]]))
    assert K == Subspace(QQ, 2, [(QQ(1), QQ(-1))])
    assert list(K.basis) == [(QQ(1), QQ(-1))]


def test_solve_examples():
    b = (QQ(3), QQ(-2))
    assert tuple(solve(Matrix.identity(QQ, 2), b)) == b
    assert solve(Matrix.zeros(QQ, 2, 2), b) is None
    assert tuple(solve(M(QQ, [[2]]), (QQ(3),))) == (Fraction(3, 2),)


def test_inverse_roundtrip():
    A = M(GF(7), [[1, 2], [3, 4]])
    assert A @ inverse(A) == Matrix.identity(GF(7), 2)
    assert inverse(M(QQ, [[1, 2], [2, 4]])) is None


def test_subspace_arithmetic():
    U = Subspace(QQ, 2, [(QQ(1), QQ(0))])
    V = Subspace(QQ, 2, [(QQ(1), QQ(1))])
    assert U + Subspace.zero(QQ, 2) == U
    assert (U & U) == U
    assert (U & V).dim == 0
    assert (U + V) == Subspace.full(QQ, 2)
    assert U.contains((QQ(5), QQ(0))) and not U.contains((QQ(0), QQ(1)))
    with pytest.raises(DimensionError):
        U + Subspace.full(QQ, 3)


def test_subspace_equality_is_canonical():
    a = Subspace(QQ, 3, [(1, 2, 3), (0, 1, 1)])
    b = Subspace(QQ, 3, [(1, 3, 4), (2, 5, 7)])
    assert a == b and hash(a) == hash(b)


small = st.integers(min_value=-5, max_value=5)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(small, min_size=4, max_size=4), min_size=1, max_size=5))
def test_rref_idempotent_and_rank_nullity(rows):
    m = M(QQ, rows)
    R, piv, r = rref(m)
    assert rref(R)[0] == R
    K = kernel(m)
    assert K.dim + r == 4
    for v in K.basis:
        assert not any(m.apply(v))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(0, 2), min_size=3, max_size=3), min_size=1, max_size=4))
def test_kernel_gf3_rank_nullity(rows):
    F = GF(3)
    m = M(F, rows)
    assert kernel(m).dim + rank(m) == 3


# -- fields ----------------------------------------------------------------------------


FIELDS = [QQ, GF(5), GF(3, 2), GF(2, 3), RationalFunctionField(QQ), RationalFunctionField(GF(5))]


@pytest.mark.parametrize("F", FIELDS, ids=repr)
def test_field_axioms_random(F):
    rng = random.Random(1)
    for _ in range(1000 if F.is_finite else 200):
        a, b, c = F.random(rng), F.random(rng), F.random(rng)
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + b == b + a and a * b == b * a
        if a:
            assert a * F.inverse(a) == F.one


def test_gf_modulus_is_least_irreducible():
    F = GF(3, 2)
    assert is_irreducible(F.modulus, 3)
    assert F.modulus == least_irreducible(3, 2)
    assert len(list(F.elements())) == 9


def test_gf_rejects_composite():
    with pytest.raises(ValueError):
        GF(9)


def test_gf_reducible_modulus_rejected():
    with pytest.raises(ValueError):
        GF(3, 2, modulus=(2, 0, 1))  # x^2 - 1


def test_gf_frobenius_order():
    F = GF(3, 2)
    assert all(x**9 == x for x in F.elements())
    orders = {min(k for k in range(1, 9) if x**k == F.one) for x in F.elements() if x}
    assert 8 in orders


def test_derive_examples(Qt):
    t = Qt.t
    assert derive_scalar(Qt, t * t) == Qt(2) * t
    assert derive_scalar(Qt, Qt(7)) == Qt.zero
    assert derive_scalar(Qt, Qt.one / t) == -Qt.one / (t * t)
    assert derive_scalar(QQ, QQ(3)) == 0
    assert derive_scalar(GF(5), GF(5)(3)) == GF(5).zero


@pytest.mark.parametrize("base", [QQ, GF(5)], ids=repr)
def test_derive_leibniz(base):
    F = RationalFunctionField(base)
    rng = random.Random(2)
    for _ in range(500):
        x, y = F.random(rng), F.random(rng)
        assert F.derive(x * y) == x * F.derive(y) + F.derive(x) * y
        assert F.derive(x + y) == F.derive(x) + F.derive(y)


def test_pth_powers_are_constants(GF5t):
    rng = random.Random(3)
    for _ in range(50):
        f = GF5t.random(rng)
        assert not GF5t.derive(f**5)


def test_ratfunc_canonical_form(Qt):
    x = Qt.parse("(2*t^2+2*t)/(4*t)")
    assert x == Qt.parse("(t+1)/2")
    assert Qt.format(x) == Qt.format(Qt.parse("t/2+1/2"))


@pytest.mark.parametrize(
    "text,field",
    [("Q", QQ), ("GF(5)", GF(5)), ("GF(3^2)", GF(3, 2)), ("Q(t)", RationalFunctionField(QQ)),
     ("GF(5)(t)", RationalFunctionField(GF(5)))],
)
def test_parse_field_and_json(text, field):
    F = parse_field(text)
    assert F == field
    assert field_from_json(F.to_json()) == F


def test_scalar_literals():
    assert QQ.parse("2/4") == Fraction(1, 2) and QQ.format(QQ.parse("2/4")) == "1/2"
    F = GF(3, 2)
    g = F.generator
    assert F.parse("g^2+1") == g * g + F.one
    assert F.parse(F.format(g + F(2))) == g + F(2)
    with pytest.raises(ScalarParseError):
        QQ.parse("1/0")
    with pytest.raises(ScalarParseError):
        QQ.parse("3 +")
