import pytest

from nonassoc.automorphisms import heisenberg_outer_derivation, lift_aut_triangular, linear_delta
from nonassoc.bch_groups import (
    BchError,
    BchGroup,
    check_automorphism_transfer,
    check_group,
    check_recovery,
    recovered_structure,
)
from nonassoc.constructions import heisenberg, semidirect_double, trivial_mult, two_dim_lie
from nonassoc.exactmath import GF, QQ
from nonassoc.invariants import center_lie


@pytest.fixture
def h3q():
    return BchGroup(heisenberg(QQ, 1))


def test_star_examples(h3q):
    h = h3q.lie
    X, Y, Z = h.basis()
    assert h3q.star(X, h.zero()) == X == h3q.star(h.zero(), X)
    assert h3q.star(X, Y) == X + Y + Z.scale(QQ(1) / 2)
    assert h3q.star(Y, X) == X + Y - Z.scale(QQ(1) / 2)
    assert not h3q.star(X + Y, h3q.inverse(X + Y))


def test_commutator(h3q):
    h = h3q.lie
    X, Y, Z = h.basis()
    assert h3q.group_commutator(X, Y) == Z
    assert not h3q.group_commutator(X, h.zero())
    assert not h3q.group_commutator(Z, X + Y)


def test_recovery_h3q(h3q):
    h = h3q.lie
    add, bracket = h3q.recover_lie()
    X, Y, Z = h.basis()
    assert add(X, Y) == X + Y
    assert bracket(X, Y) == Z
    assert recovered_structure(h3q).same_structure(h)
    assert check_recovery(h3q)


def test_recovery_gf5_uses_three_as_half():
    G = BchGroup(heisenberg(GF(5), 1))
    assert G.half == GF(5)(3)
    assert check_recovery(G)


def test_abelian_star_is_addition():
    V = trivial_mult(QQ, 3)
    G = BchGroup(V)
    x, y, _ = V.basis()
    assert G.star(x, y) == x + y
    assert check_recovery(G)


@pytest.mark.parametrize("p", [3, 5])
def test_exhaustive_heisenberg(p):
    G = BchGroup(heisenberg(GF(p), 1))
    r = check_group(G, "exhaustive")
    assert r.ok, r.failures
    assert r.size == p**3 and r.triples_checked == p**9


def test_random_over_q(h3q):
    r = check_group(h3q, "random", samples=1000, seed=1)
    assert r.ok and r.center_matches is None


def test_center_of_group_is_center_of_lie():
    h = heisenberg(GF(5), 1)
    G = BchGroup(h)
    elems = list(h.elements())
    central = {x.coords for x in elems if all(G.star(x, y) == G.star(y, x) for y in elems)}
    assert central == {tuple(v) for v in center_lie(h).elements()}


def test_p_fold_star_vanishes():
    h = heisenberg(GF(3), 1)
    G = BchGroup(h)
    for x in h.elements():
        assert not G.power(x, 3)


def test_char_two_rejected():
    with pytest.raises(BchError, match="½ unavailable"):
        BchGroup(heisenberg(GF(2), 1))


@pytest.mark.parametrize("A", [two_dim_lie(QQ), semidirect_double(two_dim_lie(QQ))], ids=["2dim", "double"])
def test_non_nilpotent_rejected(A):
    with pytest.raises(BchError, match="2-step"):
        BchGroup(A)


def test_mode_validated():
    with pytest.raises(ValueError):
        check_group(BchGroup(heisenberg(GF(3), 1)), "sometimes")


def test_exhaustive_needs_finite(h3q):
    with pytest.raises(BchError):
        check_group(h3q, "exhaustive")


def test_automorphism_transfer():
    h = heisenberg(QQ, 1)
    L = semidirect_double(h)
    sigma = lift_aut_triangular(L, linear_delta(L, heisenberg_outer_derivation(h)))
    G = BchGroup(L)
    assert check_automorphism_transfer(G, sigma)
    assert check_group(G, "random", samples=200).ok
