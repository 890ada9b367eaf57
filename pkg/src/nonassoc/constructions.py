"""Factories for the structure-constant algebras used throughout the package.

Composite constructions order their basis ring part first, then module part.
Each result carries a :class:`ConstructionTag` naming its ingredients and any
distinguished subspaces (``ideal_M``, ``maximal_ideal``, ``split``, ``center``).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Any, Callable, Sequence

from .algebra import Algebra, AlgebraError, is_ideal, restrict_scalars, subalgebra
from .exactmath import Field, FiniteField, Matrix, Subspace


@dataclass
class ConstructionTag:
    kind: str
    parts: dict = dc_field(default_factory=dict)
    subspaces: dict = dc_field(default_factory=dict)


@dataclass
class BilinearAction:
    """Left and right actions of ``ring`` on ``module`` as sparse tensors.

    ``left[(i, j)]`` is the list of ``(k, c)`` with ``r_i . m_j`` containing
    ``c m_k``; ``right[(j, i)]`` likewise for ``m_j . r_i``.
    """

    ring: Algebra
    module: Algebra
    left: dict
    right: dict

    @classmethod
    def from_functions(
        cls,
        ring: Algebra,
        module: Algebra,
        left: Callable[[int, int], Sequence[Any]] | None,
        right: Callable[[int, int], Sequence[Any]] | None,
    ) -> "BilinearAction":
        """``left(i, j)`` / ``right(j, i)`` return module coordinate vectors."""
        if ring.field != module.field:
            raise AlgebraError("ring and module are over different fields")
        lt, rt = {}, {}
        for i in range(ring.dim):
            for j in range(module.dim):
                if left is not None:
                    v = [(k, c) for k, c in enumerate(left(i, j)) if c]
                    if v:
                        lt[(i, j)] = v
                if right is not None:
                    v = [(k, c) for k, c in enumerate(right(j, i)) if c]
                    if v:
                        rt[(j, i)] = v
        return cls(ring, module, lt, rt)

    def act_left(self, i: int, j: int) -> tuple:
        out = list(self.module.zero_vector())
        for k, c in self.left.get((i, j), ()):
            out[k] = c
        return tuple(out)

    def act_right(self, j: int, i: int) -> tuple:
        out = list(self.module.zero_vector())
        for k, c in self.right.get((j, i), ()):
            out[k] = c
        return tuple(out)


def plus(g: Algebra) -> Algebra:
    """Additive copy ``g+``: same basis, zero product."""
    return Algebra(g.field, g.basis_names, (), tag=ConstructionTag("TrivialMult", {"source": g}))


def scalar_algebra(field: Field) -> Algebra:
    """The field as a one-dimensional algebra with basis ``1``."""
    return Algebra(field, ["1"], [(0, 0, 0, field.one)])


def scalar_action(ring: Algebra, module: Algebra) -> BilinearAction:
    if ring.dim != 1 or ring.basis_product(0, 0) != (ring.field.one,):
        raise AlgebraError("scalar action needs the one-dimensional field algebra")
    return BilinearAction.from_functions(
        ring, module, lambda i, j: module.unit_vector(j), lambda j, i: module.unit_vector(j)
    )


def adjoint_action(g: Algebra, module: Algebra | None = None) -> BilinearAction:
    """``g`` acting on a copy of itself: left ``[a, y]``, right ``[x, b]``."""
    module = module if module is not None else plus(g)
    return BilinearAction.from_functions(g, module, g.basis_product, g.basis_product)


def _disjoint_names(a: Sequence[str], b: Sequence[str]) -> list[str]:
    if set(a).isdisjoint(b):
        return list(b)
    return [n + "'" for n in b]


def triangular(R: Algebra, M: Algebra, act: BilinearAction, *, kind: str = "Triangular", extra: dict | None = None) -> Algebra:
    """``Λ(R, M)`` on ``R x M`` with ``(r1,m1)(r2,m2) = (r1 r2, r1.m2 + m1.r2 + m1 m2)``."""
    if R.field != M.field:
        raise AlgebraError("ring and module are over different fields")
    if act.ring.dim != R.dim or act.module.dim != M.dim:
        raise AlgebraError("action dimensions do not match the ring and module")
    n = R.dim
    entries = list(R.entries())
    for (i, j), lst in act.left.items():
        entries += [(i, n + j, n + k, c) for k, c in lst]
    for (j, i), lst in act.right.items():
        entries += [(n + j, i, n + k, c) for k, c in lst]
    entries += [(n + i, n + j, n + k, c) for i, j, k, c in M.entries()]
    names = list(R.basis_names) + _disjoint_names(R.basis_names, M.basis_names)
    F = R.field
    ideal_M = Subspace(F, n + M.dim, [_embed(F, n, M.dim, (), M.unit_vector(j)) for j in range(M.dim)])
    ring_part = Subspace(F, n + M.dim, [_embed(F, n, M.dim, R.unit_vector(i), ()) for i in range(n)])
    subspaces = {"ideal_M": ideal_M, "R_part": ring_part}
    tag = ConstructionTag(kind, {"R": R, "M": M, "action": act, **(extra or {})}, subspaces)
    L = Algebra(F, names, entries, tag=tag)
    if not is_ideal(L, ideal_M):
        raise AlgebraError("{0} x M is not an ideal; the action is inconsistent")
    return L


def _embed(F: Field, n: int, nm: int, r: Sequence[Any], m: Sequence[Any]) -> tuple:
    z = F.zero
    r = tuple(r) if r else (z,) * n
    m = tuple(m) if m else (z,) * nm
    return r + m


def embed_R(L: Algebra, r: Sequence[Any]) -> tuple:
    parts = triangular_parts(L)
    return _embed(L.field, parts["R"].dim, parts["M"].dim, r, ())


def embed_M(L: Algebra, m: Sequence[Any]) -> tuple:
    parts = triangular_parts(L)
    return _embed(L.field, parts["R"].dim, parts["M"].dim, (), m)


def split_coords(L: Algebra, v: Sequence[Any]) -> tuple[tuple, tuple]:
    n = triangular_parts(L)["R"].dim
    v = tuple(v)
    return v[:n], v[n:]


def triangular_parts(L: Algebra) -> dict:
    tag = L.tag
    if tag is None or "R" not in tag.parts or "M" not in tag.parts or "action" not in tag.parts:
        raise AlgebraError("algebra is not tagged as a triangular ring")
    return tag.parts


def is_lie(A: Algebra) -> bool:
    return A.report().lie


def semidirect_double(g: Algebra) -> Algebra:
    """``g ⋉ g+`` with bracket ``([a,b], [a,y] + [x,b])``."""
    if not is_lie(g):
        raise AlgebraError("semidirect double needs a Lie algebra")
    from .invariants import center_lie

    L = triangular(g, plus(g), adjoint_action(g), kind="SemidirectDouble")
    z = center_lie(g)
    L.tag.subspaces["center"] = Subspace(
        g.field, 2 * g.dim, [v + g.zero_vector() for v in z.basis] + [g.zero_vector() + v for v in z.basis]
    )
    return L


def _is_derivation_matrix(A: Algebra, D: Matrix) -> tuple[int, int] | None:
    for i in range(A.dim):
        for j in range(A.dim):
            lhs = D.apply(A.basis_product(i, j))
            rhs = tuple(
                a + b
                for a, b in zip(A.mul_coords(A.unit_vector(i), D.column(j)), A.mul_coords(D.column(i), A.unit_vector(j)))
            )
            if lhs != rhs:
                return (i, j)
    return None


def semidirect_rho(g1: Algebra, g2: Algebra, rho: BilinearAction) -> Algebra:
    """``g1 ⋉_ρ g2``: bracket ``([a,b]_1, [x,y]_2 + ρ(a)y − ρ(b)x)``.

    ``rho.left`` encodes ``ρ(a_i) y_j``; ``rho.right`` is ignored.  Each
    ``ρ(a_i)`` must be a derivation of ``g2`` and ``ρ`` must preserve brackets.
    """
    if not (is_lie(g1) and is_lie(g2)):
        raise AlgebraError("semidirect sum needs Lie algebras")
    if rho.ring.dim != g1.dim or rho.module.dim != g2.dim:
        raise AlgebraError("rho has the wrong dimensions")
    F = g1.field
    mats = [Matrix.from_columns(F, [rho.act_left(i, j) for j in range(g2.dim)], g2.dim) for i in range(g1.dim)]
    for i, D in enumerate(mats):
        bad = _is_derivation_matrix(g2, D)
        if bad is not None:
            raise AlgebraError(f"rho({g1.basis_names[i]}) is not a derivation of g2 (fails on basis pair {bad})")
    for i in range(g1.dim):
        for j in range(g1.dim):
            br = g1.basis_product(i, j)
            lhs = Matrix.zeros(F, g2.dim, g2.dim)
            for k, c in enumerate(br):
                if c:
                    lhs = lhs + mats[k].scale(c)
            if lhs != mats[i] @ mats[j] - mats[j] @ mats[i]:
                raise AlgebraError(f"rho does not preserve the bracket on basis pair {(i, j)}")
    act = BilinearAction.from_functions(
        g1, g2, lambda i, j: mats[i].column(j), lambda j, i: tuple(-c for c in mats[i].column(j))
    )
    return triangular(g1, g2, act, kind="SemidirectRho")


def heisenberg(field: Field, n: int = 1) -> Algebra:
    """``h_{2n+1}`` with basis p1..pn, q1..qn, z (X, Y, Z when n = 1) and its matrix embedding."""
    if n < 1:
        raise ValueError("Heisenberg algebra needs n >= 1")
    if n == 1:
        names = ["X", "Y", "Z"]
    else:
        names = [f"p{i}" for i in range(1, n + 1)] + [f"q{i}" for i in range(1, n + 1)] + ["z"]
    one = field.one
    entries = []
    for i in range(n):
        entries.append((i, n + i, 2 * n, one))
        entries.append((n + i, i, 2 * n, -one))
    size = n + 2

    def unit(r: int, c: int) -> Matrix:
        rows = [[field.zero] * size for _ in range(size)]
        rows[r][c] = one
        return Matrix(field, rows, size)

    emb = [unit(0, i + 1) for i in range(n)] + [unit(i + 1, n + 1) for i in range(n)] + [unit(0, n + 1)]
    z = Subspace(field, 2 * n + 1, [tuple(one if k == 2 * n else field.zero for k in range(2 * n + 1))])
    tag = ConstructionTag("Heisenberg", {"n": n}, {"center": z})
    return Algebra(field, names, entries, tag=tag, embedding=emb)


def two_dim_lie(field: Field) -> Algebra:
    """Non-abelian two-dimensional Lie algebra, ``[x, y] = x``."""
    one = field.one
    return Algebra(field, ["x", "y"], [(0, 1, 0, one), (1, 0, 0, -one)])


def trivial_mult(field: Field, n: int) -> Algebra:
    if n < 0:
        raise ValueError("dimension must be non-negative")
    return Algebra(field, [f"v{i}" for i in range(1, n + 1)], tag=ConstructionTag("TrivialMult"))


def _local_tag(kind: str, field: Field, dim: int, parts: dict | None = None) -> ConstructionTag:
    one, zero = field.one, field.zero
    m = Subspace(field, dim, [tuple(one if k == i else zero for k in range(dim)) for i in range(1, dim)])
    k = Subspace(field, dim, [tuple(one if c == 0 else zero for c in range(dim))])
    return ConstructionTag(kind, parts or {}, {"maximal_ideal": m, "split": k})


def truncated_poly(field: Field, n: int) -> Algebra:
    """``F[x]/(x^n)`` with basis ``1, x, ..., x^(n-1)``."""
    if n < 1:
        raise ValueError("truncation degree must be >= 1")
    names = ["1", "x"] + [f"x^{a}" for a in range(2, n)]
    entries = [(a, b, a + b, field.one) for a in range(n) for b in range(n) if a + b < n]
    return Algebra(field, names[:n], entries, tag=_local_tag("TruncatedPoly", field, n, {"n": n}))


def null_quadratic(p: int, m: int) -> Algebra:
    """``GF(p)[y1..ym]/(yi yj)`` with basis ``1, y1..ym``."""
    F = FiniteField(p)
    names = ["1"] + [f"y{i}" for i in range(1, m + 1)]
    entries = [(0, 0, 0, F.one)]
    for i in range(1, m + 1):
        entries += [(0, i, i, F.one), (i, 0, i, F.one)]
    return Algebra(F, names, entries, tag=_local_tag("NullQuadratic", F, m + 1, {"m": m}))


def matrix_algebra(field: Field, n: int, lie: bool = False) -> Algebra:
    """Full ``n x n`` matrix algebra on units ``e_ij``; with ``lie=True`` the commutator bracket (gl_n)."""
    if n < 1:
        raise ValueError("matrix size must be >= 1")
    sep = "" if n < 10 else "_"
    idx = [(i, j) for i in range(n) for j in range(n)]
    names = [f"e{i + 1}{sep}{j + 1}" for i, j in idx]
    pos = {ij: a for a, ij in enumerate(idx)}
    one = field.one
    acc: dict[tuple[int, int, int], Any] = {}
    for a, (i, j) in enumerate(idx):
        for b, (k, l) in enumerate(idx):
            if j == k:
                key = (a, b, pos[(i, l)])
                acc[key] = acc.get(key, field.zero) + one
            if lie and l == i:
                key = (a, b, pos[(k, j)])
                acc[key] = acc.get(key, field.zero) - one
    emb = []
    for i, j in idx:
        rows = [[field.zero] * n for _ in range(n)]
        rows[i][j] = one
        emb.append(Matrix(field, rows, n))
    entries = [(a, b, c, v) for (a, b, c), v in sorted(acc.items()) if v]
    return Algebra(field, names, entries, tag=ConstructionTag("MatrixLie" if lie else "MatrixAlgebra", {"n": n}), embedding=emb)


def free_nilpotent_3(field: Field) -> Algebra:
    """Free 3-step nilpotent Lie algebra on x, y: ``[x,y]=z, [x,z]=u, [y,z]=w``."""
    one = field.one
    pairs = [(0, 1, 2), (0, 2, 3), (1, 2, 4)]
    entries = []
    for i, j, k in pairs:
        entries += [(i, j, k, one), (j, i, k, -one)]
    return Algebra(field, ["x", "y", "z", "u", "w"], entries)


def s_of(h: Algebra, check: bool = True) -> Algebra:
    """``S(h)`` on ``h x h`` with ``(a1,a2)(b1,b2) = (0, [a1,b2] + [b1,a2])``."""
    if check:
        rep = h.report()
        if not rep.lie:
            raise AlgebraError("S(h) needs a Lie algebra")
        if not rep.two_step_nilpotent:
            raise AlgebraError("S(h) is associative only for 2-step nilpotent h")
    n = h.dim
    entries = []
    for (i, j), lst in h.table.items():
        for k, c in lst:
            entries.append((i, n + j, n + k, c))
            entries.append((n + j, i, n + k, c))
    merged: dict[tuple[int, int, int], Any] = {}
    for i, j, k, c in entries:
        merged[(i, j, k)] = merged.get((i, j, k), h.field.zero) + c
    names = [f"{b}_1" for b in h.basis_names] + [f"{b}_2" for b in h.basis_names]
    tag = ConstructionTag("SOf", {"h": h})
    return Algebra(h.field, names, [(i, j, k, c) for (i, j, k), c in sorted(merged.items()) if c], tag=tag)


def local_sum(field: Field, m: Algebra, *, extra: dict | None = None) -> Algebra:
    """``Λ(F, m)`` for a nilpotent commutative associative ``m``: a local ring ``F ⊕ m``."""
    if m.field != field:
        raise AlgebraError("m must be an algebra over the given field")
    rep = m.report()
    if not (rep.commutative and rep.associative):
        raise AlgebraError("m must be commutative and associative")
    if rep.nilpotency_index is None:
        raise AlgebraError("m must be nilpotent")
    k = scalar_algebra(field)
    L = triangular(k, m, scalar_action(k, m), kind="LocalSum", extra=extra)
    L.tag.subspaces["maximal_ideal"] = L.tag.subspaces["ideal_M"]
    L.tag.subspaces["split"] = L.tag.subspaces["R_part"]
    L.tag.parts["connected"] = "unverified"
    return L


def maximal_ideal_algebra(A: Algebra) -> Algebra:
    """The tagged maximal ideal of a local construction, as an algebra of its own."""
    if A.tag is None or "maximal_ideal" not in A.tag.subspaces:
        raise AlgebraError("algebra carries no maximal-ideal tag")
    return subalgebra(A, A.tag.subspaces["maximal_ideal"])[0]


def ring2(F: FiniteField) -> Algebra:
    """``GF(p) ⊕ m`` where ``m`` is the maximal ideal of ``F[x]/(x^3)`` viewed over ``GF(p)``."""
    m = maximal_ideal_algebra(truncated_poly(F, 3))
    if F.k > 1:
        m = restrict_scalars(m)
    P = FiniteField(F.p)
    return local_sum(P, m, extra={"base_field": F, "restriction_degree": F.k})
