"""Automorphisms obtained by lifting derivations and annihilator-valued maps,
plus orbit analysis of cosets and the end-to-end witness procedures."""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from typing import Any, Sequence

from .algebra import AdditiveMap, Algebra, AlgebraError, Element, quotient, verify_automorphism
from .constructions import (
    heisenberg,
    local_sum,
    s_of,
    scalar_action,
    scalar_algebra,
    semidirect_double,
    trivial_mult,
    triangular,
    triangular_parts,
)
from .exactmath import QQ, Field, FiniteField, Matrix, RationalFunctionField, Subspace
from .exactmath import inverse as mat_inverse
from .exactmath import solve as lin_solve
from .invariants import annihilator, center_lie, power_ideal


class HypothesisError(AlgebraError):
    """A construction's hypothesis failed; ``clause`` names which one."""

    def __init__(self, clause: str, detail: str = ""):
        super().__init__(f"{clause}: {detail}" if detail else clause)
        self.clause = clause
        self.detail = detail


def _block(F: Field, rows: int, cols: int, placements: Sequence[tuple[int, int, Matrix]]) -> Matrix:
    grid = [[F.zero] * cols for _ in range(rows)]
    for r0, c0, m in placements:
        for r in range(m.nrows):
            for c in range(m.ncols):
                grid[r0 + r][c0 + c] = m.rows[r][c]
    return Matrix(F, grid, cols)


# -- triangular lift -----------------------------------------------------------


def check_delta(L: Algebra, delta: AdditiveMap) -> None:
    """Raise :class:`HypothesisError` unless ``δ: R -> ann(M)`` satisfies Leibniz."""
    parts = triangular_parts(L)
    R, M = parts["R"], parts["M"]
    if delta.domain != R or delta.codomain != M:
        raise HypothesisError("shape", "δ must map the ring part into the module part")
    annM = annihilator(M)
    for col in delta.image_columns():
        if not annM.contains(col):
            raise HypothesisError("image in ann(M)", f"column {col} is not in ann(M)")
    n = R.dim
    zR = (L.field.zero,) * n

    def inL(m):
        return zR + tuple(m)

    def mcoords(v):
        return v[n:]

    for i in range(n):
        ri = L.unit_vector(i)
        for j in range(n):
            rj = L.unit_vector(j)
            prod = R.basis_product(i, j)
            lhs = delta.matrix.apply(prod)
            a = mcoords(L.mul_coords(ri, inL(delta.matrix.column(j))))
            b = mcoords(L.mul_coords(inL(delta.matrix.column(i)), rj))
            if lhs != tuple(x + y for x, y in zip(a, b)):
                raise HypothesisError("Leibniz", f"fails on basis pair {(R.basis_names[i], R.basis_names[j])}")
            if delta.dmatrix is not None:
                dl = delta.dmatrix.apply(prod)
                if dl != mcoords(L.mul_coords(inL(delta.dmatrix.column(i)), rj)):
                    raise HypothesisError("Leibniz", f"scalar-derivative term fails on right for pair {(i, j)}")
                if dl != mcoords(L.mul_coords(ri, inL(delta.dmatrix.column(j)))):
                    raise HypothesisError("Leibniz", f"scalar-derivative term fails on left for pair {(i, j)}")


def lift_aut_triangular(L: Algebra, delta: AdditiveMap) -> AdditiveMap:
    """``σ(r, m) = (r, m + δ(r))`` on ``Λ(R, M)``."""
    check_delta(L, delta)
    parts = triangular_parts(L)
    n = parts["R"].dim
    F = L.field
    lin = Matrix.identity(F, L.dim) + _block(F, L.dim, L.dim, [(n, 0, delta.matrix)])
    der = _block(F, L.dim, L.dim, [(n, 0, delta.dmatrix)]) if delta.dmatrix is not None else None
    sigma = AdditiveMap(L, L, lin, der)
    if not verify_automorphism(sigma):
        raise HypothesisError("automorphism", "lifted map failed verification")
    return sigma


def linear_delta(L: Algebra, D: Matrix) -> AdditiveMap:
    """Wrap a matrix ``R -> M`` (columns indexed by the ring basis) as a linear δ."""
    parts = triangular_parts(L)
    return AdditiveMap(parts["R"], parts["M"], D)


# -- local rings F ⊕ m -----------------------------------------------------------


def _local_parts(R: Algebra) -> tuple[Algebra, Subspace]:
    if R.tag is None or R.tag.kind != "LocalSum":
        raise AlgebraError("expected a local-sum construction F ⊕ m")
    return R.tag.parts["M"], annihilator(R.tag.parts["M"])


def lift_aut_local_g(R: Algebra, g: AdditiveMap | Matrix) -> AdditiveMap:
    """``σ(α + a) = α + g(a)`` for linear bijective ``g`` on ``m`` with
    ``g - id`` valued in ``ann(m)`` and ``g`` the identity on ``m²``."""
    m, annm = _local_parts(R)
    G = g.matrix if isinstance(g, AdditiveMap) else g
    if isinstance(g, AdditiveMap) and not g.is_linear:
        raise HypothesisError("linear", "g must be linear")
    if G.shape != (m.dim, m.dim):
        raise HypothesisError("shape", f"g must be {m.dim}x{m.dim}")
    if AdditiveMap(m, m, G).inverse() is None:
        raise HypothesisError("bijective", "g is not invertible")
    diff = G - Matrix.identity(R.field, m.dim)
    for j, col in enumerate(diff.columns()):
        if not annm.contains(col):
            raise HypothesisError("g - id valued in ann(m)", f"fails at basis vector {m.basis_names[j]}")
    for v in power_ideal(m, 2).basis:
        if G.apply(v) != tuple(v):
            raise HypothesisError("g identity on m^2", f"moves {v}")
    F = R.field
    one = Matrix.identity(F, 1)
    sigma = AdditiveMap(R, R, _block(F, R.dim, R.dim, [(0, 0, one), (1, 1, G)]))
    if not verify_automorphism(sigma):
        raise HypothesisError("automorphism", "lifted map failed verification")
    return sigma


def quotient_by_ann(R: Algebra) -> tuple[Algebra, AdditiveMap]:
    """``m/ann(m)`` and the projection ``m -> m/ann(m)``."""
    m, annm = _local_parts(R)
    return quotient(m, annm)


def lift_aut_local_f(R: Algebra, f: AdditiveMap | Matrix) -> AdditiveMap:
    """``σ(α + a) = α + a + f(a + ann(m))`` for ``f: m/ann(m) -> ann(m)``
    vanishing on ``(m² + ann(m))/ann(m)``; realised as ``g = id + f∘π``."""
    m, annm = _local_parts(R)
    Q, pi = quotient_by_ann(R)
    Fm = f.matrix if isinstance(f, AdditiveMap) else f
    if Fm.shape != (m.dim, Q.dim):
        raise HypothesisError("shape", f"f must be {m.dim}x{Q.dim}")
    for col in Fm.columns():
        if not annm.contains(col):
            raise HypothesisError("f valued in ann(m)", f"column {col} is not in ann(m)")
    for v in power_ideal(m, 2).basis:
        if any(Fm.apply(pi.matrix.apply(v))):
            raise HypothesisError("f vanishes on (m^2 + ann(m))/ann(m)", f"f(π({v})) ≠ 0")
    g = Matrix.identity(R.field, m.dim) + Fm @ pi.matrix
    return lift_aut_local_g(R, g)


def f_b_family(R: Algebra, a: Sequence[Any]) -> list[tuple[tuple, AdditiveMap]]:
    """For ``a ∈ m \\ (m² + ann(m))``, one automorphism per ``b ∈ ann(m)`` sending ``a`` to ``a + b``."""
    m, annm = _local_parts(R)
    F = R.field
    if not isinstance(F, FiniteField):
        raise AlgebraError("the f_b family is enumerated only over finite fields")
    a = tuple(a)
    W = power_ideal(m, 2) + annm
    if W.contains(a):
        raise HypothesisError("a outside m^2 + ann(m)", f"{a} lies in m^2 + ann(m)")
    Q, pi = quotient_by_ann(R)
    pa = pi.matrix.apply(a)
    base = Subspace(F, Q.dim, [pi.matrix.apply(v) for v in W.basis])
    # basis of Q: base, then pa, then completion; f sends pa -> b and the rest to 0
    src = list(base.basis) + [pa]
    cur = Subspace(F, Q.dim, src)
    for i in range(Q.dim):
        e = Q.unit_vector(i)
        if not cur.contains(e):
            src.append(e)
            cur = cur + Subspace(F, Q.dim, [e])
    S = Matrix.from_columns(F, src, Q.dim)
    Sinv = mat_inverse(S)
    out = []
    for b in annm.elements():
        cols = [(F.zero,) * m.dim] * len(src)
        cols[len(base.basis)] = tuple(b)
        T = Matrix.from_columns(F, cols, m.dim)
        out.append((tuple(b), lift_aut_local_f(R, T @ Sinv)))
    return out


def _greedy_extend(F: Field, n: int, start: Subspace, candidates: Sequence[Sequence[Any]]) -> list[tuple]:
    picked = []
    cur = start
    for v in candidates:
        if not cur.contains(v):
            picked.append(tuple(v))
            cur = cur + Subspace(F, n, [v])
    return picked


def build_fixing_automorphism(
    R: Algebra,
    fixed: Sequence[Sequence[Any]],
    pairs: Sequence[tuple[Sequence[Any], Sequence[Any]]],
) -> AdditiveMap | None:
    """Automorphism fixing ``F``, ``m²`` and ``fixed`` and sending each ``b_i`` to ``b'_i``.

    All elements are in ``R`` coordinates.  Follows a basis-extension
    procedure: a basis of ``W0 = <m², fixed>``, a maximal independent part of
    the ``b`` over ``W0``, bases of ``<b - b'>`` over ``<W0, b>`` and over
    ``<W0, b'>``, then ``ann(m)`` and finally ``m``.  Returns None when the
    assignment is inconsistent or the two sides have different ranks.
    """
    m, annm = _local_parts(R)
    F = R.field
    n = m.dim

    def split(v):
        v = tuple(v)
        if len(v) != R.dim:
            raise AlgebraError("elements must be given in R coordinates")
        return v[0], v[1:]

    fixed_m = [split(v)[1] for v in fixed]
    bs, bps = [], []
    for b, bp in pairs:
        (s, bm), (sp, bpm) = split(b), split(bp)
        diff = tuple(x - y for x, y in zip(bm, bpm))
        if s != sp or not annm.contains(diff):
            raise HypothesisError("b - b' in ann(m)", f"{tuple(b)} - {tuple(bp)} is not in ann(m)")
        bs.append(bm)
        bps.append(bpm)
    if not pairs:
        return lift_aut_local_g(R, Matrix.identity(F, n))

    W0 = power_ideal(m, 2) + Subspace(F, n, fixed_m)
    idx = []
    cur = W0
    for j, b in enumerate(bs):
        if not cur.contains(b):
            idx.append(j)
            cur = cur + Subspace(F, n, [b])
    W0b = cur
    W0bp = W0 + Subspace(F, n, [bps[j] for j in idx])
    if W0bp.dim != W0b.dim:
        return None
    # dependent b_j: b_j = w + sum c_i b_i must give b'_j = w + sum c_i b'_i
    w_basis = list(W0.basis)
    Sfull = Matrix.from_columns(F, w_basis + [bs[j] for j in idx], n)
    Tfull = Matrix.from_columns(F, w_basis + [bps[j] for j in idx], n)
    for j in range(len(bs)):
        coeff = lin_solve(Sfull, bs[j])
        if coeff is None or Tfull.apply(coeff) != bps[j]:
            return None
    diffs = [tuple(x - y for x, y in zip(b, bp)) for b, bp in zip(bs, bps)]
    c = _greedy_extend(F, n, W0b, diffs)
    cp = _greedy_extend(F, n, W0bp, diffs)
    if len(c) != len(cp):
        return None
    U = W0b + Subspace(F, n, c)
    d = _greedy_extend(F, n, U, annm.basis)
    e = _greedy_extend(F, n, U + annm, [m.unit_vector(i) for i in range(n)])
    src = w_basis + [bs[j] for j in idx] + c + d + e
    dst = w_basis + [bps[j] for j in idx] + cp + d + e
    if len(src) != n:
        return None
    S = Matrix.from_columns(F, src, n)
    Sinv = mat_inverse(S)
    if Sinv is None:
        return None
    G = Matrix.from_columns(F, dst, n) @ Sinv
    try:
        return lift_aut_local_g(R, G)
    except HypothesisError:
        return None


# -- orbits --------------------------------------------------------------------


@dataclass
class OrbitReport:
    base: Element
    modulo: Subspace
    iterates: list[Element]
    distinct_cosets: int
    periodic: int | None

    def as_dict(self) -> dict:
        return {
            "base": repr(self.base),
            "modulo_dim": self.modulo.dim,
            "steps": len(self.iterates) - 1,
            "distinct_cosets": self.distinct_cosets,
            "period": self.periodic,
        }


def orbit(sigma: AdditiveMap, a: Element, modulo: Subspace | None, N: int, *, check: bool = True) -> OrbitReport:
    """Iterates ``σ^0(a) .. σ^N(a)`` and the number of distinct cosets modulo ``modulo``."""
    if check and not verify_automorphism(sigma):
        raise HypothesisError("automorphism", "σ is not a verified automorphism")
    A = sigma.domain
    modulo = modulo if modulo is not None else Subspace.zero(A.field, A.dim)
    its = [a]
    for _ in range(N):
        its.append(sigma(its[-1]))
    reps = [modulo.reduce(x.coords) for x in its]
    period = next((i for i in range(1, len(reps)) if reps[i] == reps[0]), None)
    return OrbitReport(a, modulo, its, len(set(reps)), period)


# -- witnesses -----------------------------------------------------------------


@dataclass
class WitnessReport:
    kind: str
    field: str
    N: int
    expected: str
    passed: bool
    distinct_cosets: int
    period: int | None
    details: dict = dc_field(default_factory=dict)

    def lines(self) -> list[str]:
        out = [f"witness {self.kind} over {self.field}, N = {self.N}"]
        out += [f"  {k}: {v}" for k, v in self.details.items()]
        out.append(f"  {self.distinct_cosets} distinct cosets" + (f", period {self.period}" if self.period else ""))
        out.append(f"  expected {self.expected}: {'PASS' if self.passed else 'FAIL'}")
        return out


def witness_field(char: int) -> RationalFunctionField:
    return RationalFunctionField(QQ if char == 0 else FiniteField(char))


def _expect(char: int, N: int, distinct: int, period: int | None) -> tuple[str, bool]:
    if char == 0:
        return f"{N + 1} distinct cosets", distinct == N + 1
    return f"period {char}", period == char and distinct == min(char, N + 1)


def witness_vector(char: int, N: int, dim_v: int = 2) -> WitnessReport:
    """``Λ(k, V)`` over ``k = F(t)`` with ``σ`` lifted from ``α -> δ0(α) v1``; orbit of ``(t, 0)`` modulo ``ann(Λ)``."""
    F = witness_field(char)
    V = trivial_mult(F, dim_v)
    k = scalar_algebra(F)
    L = triangular(k, V, scalar_action(k, V))
    from .derivations import scalar_to_delta

    delta = scalar_to_delta(L, V.unit_vector(0))
    sigma = lift_aut_triangular(L, delta)
    a = L.element([F.t] + [F.zero] * dim_v)
    rep = orbit(sigma, a, annihilator(L), N)
    expected, ok = _expect(char, N, rep.distinct_cosets, rep.periodic)
    return WitnessReport(
        "vector", repr(F), N, expected, ok, rep.distinct_cosets, rep.periodic,
        {"algebra": f"Λ(k, V), dim V = {dim_v}", "sigma(a)": repr(sigma(a)), "ann(Λ) dim": annihilator(L).dim},
    )


def claim1_search(g: Algebra, delta: AdditiveMap, z: Subspace, rng: random.Random, attempts: int = 50) -> tuple[Element, str] | None:
    """Find ``b`` with ``δ(b) ∉ z``: basis vectors, pairwise sums, ``t·b_i``, then random combinations."""
    basis = g.basis()

    def good(b):
        return not z.contains(delta(b).coords)

    for b in basis:
        if good(b):
            return b, "basis element"
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            if good(basis[i] + basis[j]):
                return basis[i] + basis[j], "pairwise sum"
    if isinstance(g.field, RationalFunctionField):
        t = g.field.t
        for b in basis:
            if good(b.scale(t)):
                return b.scale(t), "t multiple of a basis element"
    for _ in range(attempts):
        b = g.random_element(rng)
        if good(b):
            return b, "random combination"
    return None


def witness_lie(char: int, N: int, n: int = 1, seed: int = 0) -> WitnessReport:
    """``h ⋉ h+`` over ``F(t)`` with ``σ(r, m) = (r, m + δ̂(r))``; distinctness of ``k·δ̂(b)`` modulo ``z(h)``."""
    F = witness_field(char)
    h = heisenberg(F, n)
    L = semidirect_double(h)
    from .derivations import hat_lift_map

    parts = triangular_parts(L)
    delta = hat_lift_map(h, parts["M"])
    sigma = lift_aut_triangular(L, delta)
    zh = center_lie(h)
    found = claim1_search(h, delta, zh, random.Random(seed))
    if found is None:
        raise HypothesisError("Claim 1", "no b with δ̂(b) outside the center (abelian input?)")
    b, how = found
    db = delta(b)
    first_fail = None
    for k in range(1, N + 1):
        if zh.contains(db.scale(k).coords):
            first_fail = k
            break
    a = L.element(tuple(b.coords) + h.zero_vector())
    zL = center_lie(L)
    rep = orbit(sigma, a, zL, N)
    expected, ok = _expect(char, N, rep.distinct_cosets, rep.periodic)
    if char == 0:
        ok = ok and first_fail is None
    else:
        ok = ok and first_fail == char
    return WitnessReport(
        "lie", repr(F), N, expected, ok, rep.distinct_cosets, rep.periodic,
        {
            "algebra": f"h_{2 * n + 1} ⋉ h+",
            "b": repr(b),
            "found by": how,
            "hat-lift of b": repr(db),
            "k·δ̂(b) first central at k": first_fail,
            "z(h ⋉ h+) equals z(h) x z(h)": zL == L.tag.subspaces["center"],
        },
    )


def heisenberg_outer_derivation(h: Algebra) -> Matrix:
    """Linear derivation of ``h_{2n+1}`` with ``p_1 -> q_1``, zero elsewhere."""
    n = (h.dim - 1) // 2
    F = h.field
    grid = [[F.zero] * h.dim for _ in range(h.dim)]
    grid[n][0] = F.one
    return Matrix(F, grid, h.dim)


def induced_on_s(S: Algebra, sigma: Matrix) -> AdditiveMap:
    """``(x1, x2) -> (σ x1, σ x2)`` on ``S(g)``."""
    k = sigma.nrows
    return AdditiveMap(S, S, _block(S.field, S.dim, S.dim, [(0, 0, sigma), (k, k, sigma)]))


def witness_s_ring(char: int, N: int, n: int = 1) -> WitnessReport:
    """``R = Λ(F, S(h ⋉ h+))`` with ``τ`` induced from ``σ(r, m) = (r, m + D r)``;
    orbit of ``((p1, 0), 0)`` modulo ``ann(S)``."""
    F: Field = QQ if char == 0 else FiniteField(char)
    h = heisenberg(F, n)
    g = semidirect_double(h)
    D = heisenberg_outer_derivation(h)
    from .derivations import is_derivation

    if not is_derivation(h, D):
        raise HypothesisError("derivation", "outer derivation check failed")
    sigma = lift_aut_triangular(g, linear_delta(g, D))
    S = s_of(g)
    tau_S = induced_on_s(S, sigma.matrix)
    if not verify_automorphism(tau_S):
        raise HypothesisError("automorphism", "induced map on S(g) failed verification")
    R = local_sum(F, S)
    one = Matrix.identity(F, 1)
    tau = AdditiveMap(R, R, _block(F, R.dim, R.dim, [(0, 0, one), (1, 1, tau_S.matrix)]))
    if not verify_automorphism(tau):
        raise HypothesisError("automorphism", "τ failed verification")
    a = R.element([F.zero] + list(R.unit_vector(1)[1:]))
    annS = annihilator(S)
    modulo = Subspace(F, R.dim, [(F.zero,) + tuple(v) for v in annS.basis])
    rep = orbit(tau, a, modulo, N)
    expected, ok = _expect(char, N, rep.distinct_cosets, rep.periodic)
    return WitnessReport(
        "s_ring", repr(F), N, expected, ok, rep.distinct_cosets, rep.periodic,
        {"algebra": f"Λ(F, S(h_{2 * n + 1} ⋉ h+)), dim {R.dim}", "ann(S) dim": annS.dim, "a": repr(a)},
    )


def witness(kind: str, char: int, N: int, **params) -> WitnessReport:
    if kind == "vector":
        return witness_vector(char, N, **params)
    if kind == "lie":
        return witness_lie(char, N, **params)
    if kind == "s_ring":
        return witness_s_ring(char, N, **params)
    raise ValueError(f"unknown witness kind {kind!r}")


__all__ = [
    "HypothesisError", "check_delta", "lift_aut_triangular", "linear_delta", "lift_aut_local_g",
    "lift_aut_local_f", "quotient_by_ann", "f_b_family", "build_fixing_automorphism", "OrbitReport",
    "orbit", "WitnessReport", "witness", "witness_vector", "witness_lie", "witness_s_ring",
    "claim1_search", "heisenberg_outer_derivation", "induced_on_s",
]
