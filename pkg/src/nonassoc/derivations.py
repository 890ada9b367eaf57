"""Derivation spaces, constrained derivations and entrywise lifts of a scalar derivation.

A derivation ``D`` of an ``n``-dimensional algebra is stored as a vector of
length ``n*n`` holding ``D[r][c]`` at index ``r*n + c`` (column ``c`` is the
image of ``b_c``).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Sequence

from .algebra import AdditiveMap, Algebra, AlgebraError, Element
from .constructions import triangular_parts
from .exactmath import Matrix, Subspace, kernel_of_rows
from .invariants import annihilator


def _leibniz_rows(A: Algebra) -> list[list[Any]]:
    n = A.dim
    F = A.field
    rows = []
    for i in range(n):
        for j in range(n):
            cij = A.table.get((i, j), ())
            for k in range(n):
                row: dict[int, Any] = {}

                def bump(r: int, c: int, v: Any) -> None:
                    idx = r * n + c
                    row[idx] = row.get(idx, F.zero) + v

                # D(b_i b_j)_k
                for l, c in cij:
                    bump(k, l, c)
                # (b_i D b_j)_k = sum_l D[l][j] c_{i l k}
                for l in range(n):
                    for kk, c in A.table.get((i, l), ()):
                        if kk == k:
                            bump(l, j, -c)
                    for kk, c in A.table.get((l, j), ()):
                        if kk == k:
                            bump(l, i, -c)
                if any(row.values()):
                    dense = [F.zero] * (n * n)
                    for idx, v in row.items():
                        dense[idx] = v
                    rows.append(dense)
    return rows


def derivation_space(A: Algebra) -> Subspace:
    """All ``D`` with ``D(b_i b_j) = b_i D(b_j) + D(b_i) b_j``; ambient dimension ``dim^2``."""
    return kernel_of_rows(A.field, _leibniz_rows(A), A.dim * A.dim)


def derivations_vanishing_on(A: Algebra, S: Sequence[Element | Sequence[Any]]) -> Subspace:
    n = A.dim
    rows = _leibniz_rows(A)
    for s in S:
        s = s.coords if isinstance(s, Element) else tuple(s)
        for k in range(n):
            row = [A.field.zero] * (n * n)
            for l, c in enumerate(s):
                row[k * n + l] = c
            rows.append(row)
    return kernel_of_rows(A.field, rows, n * n)


def as_matrix(A: Algebra, vec: Sequence[Any]) -> Matrix:
    n = A.dim
    return Matrix(A.field, [list(vec[r * n:(r + 1) * n]) for r in range(n)], n)


def as_vector(D: Matrix) -> tuple:
    return tuple(c for row in D.rows for c in row)


def leibniz_failures(A: Algebra, D: Matrix) -> list[tuple[int, int]]:
    out = []
    for i in range(A.dim):
        for j in range(A.dim):
            lhs = D.apply(A.basis_product(i, j))
            a = A.mul_coords(A.unit_vector(i), D.column(j))
            b = A.mul_coords(D.column(i), A.unit_vector(j))
            if lhs != tuple(x + y for x, y in zip(a, b)):
                out.append((i, j))
    return out


def is_derivation(A: Algebra, D: Matrix) -> bool:
    return not leibniz_failures(A, D)


# -- entrywise lift ------------------------------------------------------------


@dataclass
class HatLift:
    matrix: Matrix
    element: Element | None  # g-coordinates when the lift lands in g

    @property
    def in_algebra(self) -> bool:
        return self.element is not None


def embedded_matrix(g: Algebra, a: Element | Sequence[Any]) -> Matrix:
    if g.embedding is None:
        raise AlgebraError("algebra has no matrix embedding")
    coords = a.coords if isinstance(a, Element) else tuple(a)
    size = g.embedding[0].nrows
    acc = [[g.field.zero] * size for _ in range(size)]
    for c, E in zip(coords, g.embedding):
        if not c:
            continue
        for i, row in enumerate(E.rows):
            for j, e in enumerate(row):
                if e:
                    acc[i][j] = acc[i][j] + c * e
    return Matrix(g.field, acc, size)


def constant_embedding(g: Algebra) -> bool:
    """True when the derivation kills every entry of every embedded basis vector."""
    cached = g.__dict__.get("_constant_embedding")
    if cached is None:
        d = g.field.derive
        cached = all(not d(c) for E in g.embedding for row in E.rows for c in row)
        g.__dict__["_constant_embedding"] = cached
    return cached


def hat_lift(g: Algebra, a: Element | Sequence[Any]) -> HatLift:
    """Apply the field derivation entrywise to the embedded matrix of ``a``."""
    if not g.field.has_derivation:
        raise AlgebraError("field carries no nonzero derivation")
    X = embedded_matrix(g, a)
    lifted = X.map(g.field.derive)
    if not constant_embedding(g):
        return HatLift(lifted, None)
    coords = a.coords if isinstance(a, Element) else tuple(a)
    # constant embedding: the lift is the coordinatewise derivative
    elem = Element(g, tuple(g.field.derive(c) for c in coords))
    return HatLift(lifted, elem)


def hat_lift_map(g: Algebra, target: Algebra | None = None) -> AdditiveMap:
    """``δ̂`` as the additive map ``x -> ∂x`` (requires a constant embedding)."""
    if g.embedding is not None and not constant_embedding(g):
        raise AlgebraError("embedding has non-constant entries; the lift leaves the algebra")
    target = target if target is not None else g
    if target.dim != g.dim:
        raise AlgebraError("target must have the same dimension")
    F = g.field
    return AdditiveMap(g, target, Matrix.zeros(F, g.dim, g.dim), Matrix.identity(F, g.dim))


def scalar_to_delta(L: Algebra, x0: Element | Sequence[Any]) -> AdditiveMap:
    """``α -> δ0(α) x0`` from the scalar ring part of ``Λ(k, M)`` into ``M``.

    ``x0`` is given in ``M`` coordinates and must lie in ``ann(M)``.
    """
    parts = triangular_parts(L)
    R, M = parts["R"], parts["M"]
    if R.dim != 1 or R.basis_product(0, 0) != (R.field.one,):
        raise AlgebraError("ring part must be the scalar field")
    if not L.field.has_derivation:
        raise AlgebraError("field carries no nonzero derivation")
    x0 = x0.coords if isinstance(x0, Element) else tuple(x0)
    if len(x0) != M.dim:
        raise AlgebraError("x0 must be given in module coordinates")
    if not any(x0):
        raise AlgebraError("x0 must be nonzero")
    if not annihilator(M).contains(x0):
        raise AlgebraError("x0 is not in ann(M)")
    F = L.field
    return AdditiveMap(R, M, Matrix.zeros(F, M.dim, 1), Matrix.from_columns(F, [x0], M.dim))
