"""Element-level brute force over small finite algebras.

These deliberately avoid the library's linear algebra.  Every element is
enumerated, products and sums are tabulated by element index, and each
property is decided by comparing table entries.  That makes them independent
oracles for the basis-level computations.
"""

from __future__ import annotations

import itertools
import json
from functools import lru_cache
from pathlib import Path

import numpy as np

from nonassoc.algebra import Algebra, loads

CORPUS = Path(__file__).parent / "corpus"


def corpus():
    out = []
    for path in sorted(CORPUS.glob("*.json")):
        text = path.read_text(encoding="utf-8")
        out.append((path.stem, loads(text), json.loads(text).get("tags", {})))
    return out


def elems(A: Algebra) -> list[tuple]:
    vals = list(A.field.elements())
    return [tuple(v) for v in itertools.product(vals, repeat=A.dim)]


class Tables:
    """Multiplication and addition tables indexed by element position."""

    def __init__(self, A: Algebra):
        self.elems = elems(A)
        self.index = {e: i for i, e in enumerate(self.elems)}
        n = len(self.elems)
        self.n = n
        self.zero = self.index[A.zero_vector()]
        self.mul = np.array(
            [[self.index[A.mul_coords(x, y)] for y in self.elems] for x in self.elems], dtype=np.int64
        ).reshape(n, n)
        self._add = None

    @property
    def add(self) -> np.ndarray:
        if self._add is None:
            self._add = np.array(
                [[self.index[tuple(a + b for a, b in zip(x, y))] for y in self.elems] for x in self.elems],
                dtype=np.int64,
            ).reshape(self.n, self.n)
        return self._add


@lru_cache(maxsize=None)
def _tables(A: Algebra) -> Tables:
    return Tables(A)


def tables(A: Algebra) -> Tables:
    try:
        return _tables(A)
    except TypeError:  # unhashable algebra
        return Tables(A)


def axioms(A: Algebra) -> dict:
    T = tables(A)
    M, S, n, z = T.mul, T.add, T.n, T.zero
    r = np.arange(n)
    x, y, w = r[:, None, None], r[None, :, None], r[None, None, :]
    commutative = bool(np.array_equal(M, M.T))
    associative = bool(np.array_equal(M[M[x, y], w], M[x, M[y, w]]))
    alternating = bool(np.all(M[r, r] == z))
    jacobi = bool(np.all(S[S[M[x, M[y, w]], M[y, M[w, x]]], M[w, M[x, y]]] == z))
    two_step = bool(np.all(M[M[x, y], w] == z) and np.all(M[x, M[y, w]] == z))
    units = [u for u in range(n) if np.array_equal(M[u, :], r) and np.array_equal(M[:, u], r)]
    return {
        "commutative": commutative,
        "associative": associative,
        "lie": alternating and jacobi,
        "two_step_nilpotent": two_step,
        "unit": T.elems[units[0]] if units else None,
    }


def annihilator(A: Algebra, S=None) -> set:
    T = tables(A)
    cols = np.arange(T.n) if S is None else np.array([T.index[tuple(s)] for s in S])
    ok = np.all(T.mul[:, cols] == T.zero, axis=1) & np.all(T.mul[cols, :].T == T.zero, axis=1)
    return {T.elems[i] for i in np.flatnonzero(ok)}


def center(A: Algebra) -> set:
    """Lie center: elements bracketing every element to zero."""
    T = tables(A)
    ok = np.all(T.mul == T.zero, axis=1)
    return {T.elems[i] for i in np.flatnonzero(ok)}


def is_local(A: Algebra, m: set) -> bool:
    """Finite commutative unital ring is local with maximal ideal m iff the non-units are exactly m."""
    T = tables(A)
    ax = axioms(A)
    if ax["unit"] is None or not ax["commutative"]:
        return False
    u = T.index[ax["unit"]]
    units = np.any(T.mul == u, axis=1)
    nonunits = {T.elems[i] for i in np.flatnonzero(~units)}
    if nonunits != m:
        return False
    mi = np.array([T.index[a] for a in m])
    closed_add = set(T.add[np.ix_(mi, mi)].ravel().tolist()) <= set(mi.tolist())
    closed_mul = set(T.mul[:, mi].ravel().tolist()) <= set(mi.tolist())
    return closed_add and closed_mul
