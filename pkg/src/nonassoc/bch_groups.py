"""Group structure ``x * y = x + y + ½[x, y]`` on a 2-step nilpotent Lie algebra."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field
from typing import Callable

import numpy as np

from .algebra import AdditiveMap, Algebra, AlgebraError, Element
from .invariants import center_lie

EXHAUSTIVE_LIMIT = 20000


class BchError(AlgebraError):
    pass


class BchGroup:
    def __init__(self, lie: Algebra):
        if lie.field.characteristic == 2:
            raise BchError("½ unavailable: the scalar field has characteristic 2")
        rep = lie.report()
        if not rep.lie:
            raise BchError("underlying algebra is not a Lie algebra")
        if not rep.two_step_nilpotent:
            raise BchError("underlying Lie algebra is not 2-step nilpotent")
        self.lie = lie
        self.half = lie.field.one / lie.field(2)

    def _check(self, *xs: Element) -> None:
        for x in xs:
            if x.algebra != self.lie:
                raise BchError("element does not belong to this group")

    def star(self, x: Element, y: Element) -> Element:
        self._check(x, y)
        A = self.lie
        br = A.mul_coords(x.coords, y.coords)
        h = self.half
        return Element(A, tuple(a + b + h * c for a, b, c in zip(x.coords, y.coords, br)))

    def identity(self) -> Element:
        return self.lie.zero()

    def inverse(self, x: Element) -> Element:
        return -x

    def power(self, x: Element, n: int) -> Element:
        acc = self.identity()
        for _ in range(n):
            acc = self.star(acc, x)
        return acc

    def group_commutator(self, x: Element, y: Element) -> Element:
        """``x * y * x^-1 * y^-1``."""
        return self.star(self.star(self.star(x, y), -x), -y)

    def recover_lie(self) -> tuple[Callable[[Element, Element], Element], Callable[[Element, Element], Element]]:
        """Addition ``x * y * (-½ c(x, y))`` and bracket ``c(x, y)`` from group operations alone."""

        def bracket(x: Element, y: Element) -> Element:
            return self.group_commutator(x, y)

        def add(x: Element, y: Element) -> Element:
            return self.star(self.star(x, y), bracket(x, y).scale(-self.half))

        return add, bracket


def recovered_structure(G: BchGroup) -> Algebra:
    """Rebuild the structure tensor from the recovered bracket on basis pairs."""
    A = G.lie
    _, bracket = G.recover_lie()
    basis = A.basis()
    entries = []
    for i, x in enumerate(basis):
        for j, y in enumerate(basis):
            for k, c in enumerate(bracket(x, y).coords):
                if c:
                    entries.append((i, j, k, c))
    return Algebra(A.field, A.basis_names, entries)


@dataclass
class GroupCheckReport:
    mode: str
    size: int | None
    triples_checked: int
    associative: bool
    identity: bool
    inverses: bool
    powers: bool
    commutator_is_bracket: bool
    center_matches: bool | None
    failures: list[str] = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (
            self.associative and self.identity and self.inverses and self.powers
            and self.commutator_is_bracket and self.center_matches is not False
        )


def _index_elements(A: Algebra) -> tuple[list[tuple], dict[tuple, int]]:
    elems = [e.coords for e in A.elements()]
    return elems, {c: i for i, c in enumerate(elems)}


def star_table(G: BchGroup) -> tuple[np.ndarray, list[tuple], dict[tuple, int]]:
    A = G.lie
    size = A.size()
    if size is None or size > EXHAUSTIVE_LIMIT:
        raise BchError(f"exhaustive mode needs a finite group of at most {EXHAUSTIVE_LIMIT} elements")
    elems, index = _index_elements(A)
    h = G.half
    n = len(elems)
    dtype = np.int32 if n < 2**31 else np.int64
    T = np.empty((n, n), dtype=dtype)
    for a, x in enumerate(elems):
        for b, y in enumerate(elems):
            br = A.mul_coords(x, y)
            T[a, b] = index[tuple(p + q + h * r for p, q, r in zip(x, y, br))]
    return T, elems, index


def check_group(G: BchGroup, mode: str = "exhaustive", *, samples: int = 1000, seed: int = 0) -> GroupCheckReport:
    """Group axioms, ``x^n = n x`` for ``n <= 10`` and commutator = bracket.

    Exhaustive mode builds the full multiplication table and checks all
    triples; it is limited to groups with at most ``EXHAUSTIVE_LIMIT`` elements
    (the table has size squared entries).
    """
    A = G.lie
    rng = random.Random(seed)
    fails: list[str] = []
    if mode == "exhaustive":
        T, elems, index = star_table(G)
        n = len(elems)
        zero = index[A.zero_vector()]
        assoc_ok = True
        for a in range(n):
            # (a*b)*c vs a*(b*c) for all b, c at once
            left = T[T[a, :], :]
            right = T[a, T]
            if not np.array_equal(left, right):
                assoc_ok = False
                b, c = map(int, np.argwhere(left != right)[0])
                fails.append(f"associativity fails at {elems[a]}, {elems[b]}, {elems[c]}")
                break
        ident = bool(np.all(T[zero, :] == np.arange(n)) and np.all(T[:, zero] == np.arange(n)))
        neg = np.array([index[tuple(-c for c in x)] for x in elems])
        inv = bool(np.all(T[np.arange(n), neg] == zero) and np.all(T[neg, np.arange(n)] == zero))
        pw = _powers_ok(G, [Element(A, x) for x in elems])
        comm = _commutator_ok(G, [Element(A, x) for x in elems[: min(n, 200)]], rng, 0)
        commuting = np.all(T == T.T, axis=1)
        zL = center_lie(A)
        center_ok = all(bool(commuting[i]) == zL.contains(x) for i, x in enumerate(elems))
        return GroupCheckReport("exhaustive", n, n**3, assoc_ok, ident, inv, pw, comm, center_ok, fails)
    if mode != "random":
        raise ValueError("mode must be 'exhaustive' or 'random'")
    elems = [A.random_element(rng) for _ in range(3 * samples)]
    assoc_ok = True
    for k in range(samples):
        x, y, z = elems[3 * k: 3 * k + 3]
        if G.star(G.star(x, y), z) != G.star(x, G.star(y, z)):
            assoc_ok = False
            fails.append(f"associativity fails at {x}, {y}, {z}")
            break
    e = G.identity()
    ident = all(G.star(x, e) == x == G.star(e, x) for x in elems[:samples])
    inv = all(not G.star(x, G.inverse(x)) and not G.star(G.inverse(x), x) for x in elems[:samples])
    pw = _powers_ok(G, elems[:50])
    comm = _commutator_ok(G, [], rng, 500)
    return GroupCheckReport("random", A.size(), samples, assoc_ok, ident, inv, pw, comm, None, fails)


def _powers_ok(G: BchGroup, xs) -> bool:
    for x in xs:
        acc = G.identity()
        for n in range(1, 11):
            acc = G.star(acc, x)
            if acc != x.scale(n):
                return False
    return True


def _commutator_ok(G: BchGroup, xs, rng: random.Random, random_pairs: int) -> bool:
    A = G.lie
    basis = A.basis()
    pairs = list(itertools.product(basis, basis))
    pairs += [(A.random_element(rng), A.random_element(rng)) for _ in range(random_pairs)]
    pairs += list(zip(xs, reversed(xs)))
    return all(G.group_commutator(x, y) == x * y for x, y in pairs)


def check_recovery(G: BchGroup, *, pairs: int = 200, seed: int = 0) -> bool:
    A = G.lie
    add, bracket = G.recover_lie()
    if not recovered_structure(G).same_structure(A):
        return False
    rng = random.Random(seed)
    basis = A.basis()
    test = list(itertools.product(basis, basis))
    test += [(A.random_element(rng), A.random_element(rng)) for _ in range(pairs)]
    return all(add(x, y) == x + y and bracket(x, y) == x * y for x, y in test)


def check_automorphism_transfer(G: BchGroup, sigma: AdditiveMap, *, pairs: int = 200, seed: int = 0) -> bool:
    """``σ(x * y) = σ(x) * σ(y)`` on basis pairs and random pairs."""
    A = G.lie
    if sigma.domain != A or sigma.codomain != A:
        raise BchError("σ must be an endomorphism of the underlying Lie algebra")
    rng = random.Random(seed)
    basis = A.basis()
    test = list(itertools.product(basis, basis))
    test += [(A.random_element(rng), A.random_element(rng)) for _ in range(pairs)]
    return all(sigma(G.star(x, y)) == G.star(sigma(x), sigma(y)) for x, y in test)
