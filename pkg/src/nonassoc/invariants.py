"""Annihilators, centers, power and derived series, and the kernel/image chains
used to analyse triangular rings and ``S(h)`` constructions."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Any, Sequence

from .algebra import Algebra, AlgebraError, nilpotency_index, power_ideal
from .constructions import triangular_parts
from .exactmath import Subspace, kernel_of_rows

__all__ = [
    "annihilator", "left_annihilator_rows", "center_lie", "power_ideal", "nilpotency_index",
    "derived_series", "lower_central", "cross_annihilators", "CrossAnnihilators",
    "check_triangular_annihilator", "TriangularAnnihilatorReport", "analysis_chain", "ChainReport",
    "s_case_chain", "SChainReport", "bracket_span",
]


def left_annihilator_rows(A: Algebra, s: Sequence[Any]) -> list[tuple]:
    """Rows whose common kernel is ``{r : r s = 0 = s r}``."""
    return list(A.right_matrix(s).rows) + list(A.left_matrix(s).rows)


def annihilator(A: Algebra, S: Subspace | None = None) -> Subspace:
    """Two-sided annihilator of ``S`` (default: all of ``A``) inside ``A``."""
    if S is not None and (S.ambient_dim != A.dim or S.field != A.field):
        raise AlgebraError(f"subspace lives in dimension {S.ambient_dim}, algebra has dimension {A.dim}")
    gens = S.basis if S is not None else [A.unit_vector(i) for i in range(A.dim)]
    rows = []
    for s in gens:
        rows += left_annihilator_rows(A, s)
    return kernel_of_rows(A.field, rows, A.dim)


def center_lie(g: Algebra) -> Subspace:
    """Kernel of all ``ad`` maps: ``{x : [x, b_j] = 0 for all j}``."""
    rows = []
    for j in range(g.dim):
        rows += list(g.right_matrix(g.unit_vector(j)).rows)
    return kernel_of_rows(g.field, rows, g.dim)


def bracket_span(A: Algebra, U: Subspace, V: Subspace) -> Subspace:
    return Subspace(A.field, A.dim, [A.mul_coords(u, v) for u in U.basis for v in V.basis])


def derived_series(g: Algebra) -> list[Subspace]:
    """``g ⊇ [g,g] ⊇ [[g,g],[g,g]] ⊇ ...`` until it stabilises."""
    series = [g.full()]
    while True:
        nxt = bracket_span(g, series[-1], series[-1])
        if nxt == series[-1]:
            return series
        series.append(nxt)


def lower_central(g: Algebra) -> list[Subspace]:
    """``g ⊇ [g,g] ⊇ [[g,g],g] ⊇ ...`` (left-normed) until it stabilises."""
    series = [g.full()]
    while True:
        nxt = bracket_span(g, series[-1], g.full())
        if nxt == series[-1]:
            return series
        series.append(nxt)


# -- triangular rings ----------------------------------------------------------


@dataclass
class CrossAnnihilators:
    """Subspaces in the coordinates of the factor they live in."""

    ann_R: Subspace
    ann_R_of_M: Subspace
    ann_M_of_R: Subspace
    ann_R_of_annM: Subspace
    ann_M: Subspace


def _project(L: Algebra, S: Subspace, lo: int, hi: int) -> Subspace:
    return Subspace(L.field, hi - lo, [v[lo:hi] for v in S.basis])


def cross_annihilators(L: Algebra) -> CrossAnnihilators:
    """Annihilators between the ring and module parts of ``Λ(R, M)``, computed inside ``Λ``."""
    parts = triangular_parts(L)
    R, M = parts["R"], parts["M"]
    n = R.dim
    subs = L.tag.subspaces
    R_part, M_part = subs["R_part"], subs["ideal_M"]
    annM = annihilator(M)
    annM_in_L = Subspace(L.field, L.dim, [(L.field.zero,) * n + tuple(v) for v in annM.basis])
    return CrossAnnihilators(
        ann_R=annihilator(R),
        ann_R_of_M=_project(L, annihilator(L, M_part) & R_part, 0, n),
        ann_M_of_R=_project(L, annihilator(L, R_part) & M_part, n, L.dim),
        ann_R_of_annM=_project(L, annihilator(L, annM_in_L) & R_part, 0, n),
        ann_M=annM,
    )


@dataclass
class TriangularAnnihilatorReport:
    hypothesis: bool
    formula: Subspace
    brute_force: Subspace
    agree: bool
    cross: CrossAnnihilators

    @property
    def ok(self) -> bool:
        """False only when the hypothesis holds yet the two sides differ."""
        return self.agree or not self.hypothesis


def check_triangular_annihilator(L: Algebra) -> TriangularAnnihilatorReport:
    """Compare ``ann(R) x (ann(M) ∩ ann_M(R))`` with the directly computed ``ann(Λ)``.

    The formula is valid when ``ann(R) = ann_R(M) = ann_R(ann(M))``; both sides
    are reported regardless.
    """
    cross = cross_annihilators(L)
    hyp = cross.ann_R == cross.ann_R_of_M == cross.ann_R_of_annM
    n = cross.ann_R.ambient_dim
    zR = (L.field.zero,) * n
    zM = (L.field.zero,) * (L.dim - n)
    right = cross.ann_M & cross.ann_M_of_R
    formula = Subspace(
        L.field, L.dim, [tuple(v) + zM for v in cross.ann_R.basis] + [zR + tuple(v) for v in right.basis]
    )
    brute = annihilator(L)
    return TriangularAnnihilatorReport(hyp, formula, brute, formula == brute, cross)


@dataclass
class ChainReport:
    """``Λ ⊇ Λ1 = ker f1 ⊇ ann(Λ) = ker(f2 on Λ1)`` plus the image subspaces."""

    b_elements: list[tuple]
    a_elements: list[tuple]
    lambda1: Subspace
    expected_lambda1: Subspace
    ann: Subspace
    ker_f2: Subspace
    f1_images: list[Subspace]
    f2_images: list[Subspace]
    ideal_M: Subspace
    s_case: "SChainReport | None" = None

    @property
    def kernel_f1_ok(self) -> bool:
        return self.lambda1 == self.expected_lambda1

    @property
    def kernel_f2_ok(self) -> bool:
        return self.ker_f2 == self.ann

    @property
    def images_in_M(self) -> bool:
        return all(img <= self.ideal_M for img in self.f1_images + self.f2_images)

    @property
    def ok(self) -> bool:
        s_ok = self.s_case is None or self.s_case.ok
        return self.kernel_f1_ok and self.kernel_f2_ok and self.images_in_M and s_ok

    def summary(self) -> list[str]:
        lines = [
            f"dim Λ = {self.ann.ambient_dim}",
            f"dim Λ1 = {self.lambda1.dim} (kernel of f1 matches ann_Λ({{0}} x ann(M)): {self.kernel_f1_ok})",
            f"dim ann(Λ) = {self.ann.dim} (kernel of f2 on Λ1 matches: {self.kernel_f2_ok})",
            f"images inside {{0}} x M: {self.images_in_M}",
        ]
        if self.s_case is not None:
            lines += ["S-case: " + s for s in self.s_case.summary()]
        return lines


def _stacked_rows(L: Algebra, elems: Sequence[tuple]) -> list[tuple]:
    rows = []
    for b in elems:
        rows += list(L.left_matrix(b).rows) + list(L.right_matrix(b).rows)
    return rows


def _images(L: Algebra, elems: Sequence[tuple], domain: Subspace) -> list[Subspace]:
    out = []
    for b in elems:
        out.append(Subspace(L.field, L.dim, [L.mul_coords(b, x) for x in domain.basis]))
        out.append(Subspace(L.field, L.dim, [L.mul_coords(x, b) for x in domain.basis]))
    return out


def analysis_chain(L: Algebra) -> ChainReport:
    """Kernel/image chain of the stacked multiplication maps ``f1``, ``f2``.

    ``b_j = (0, m_j)`` runs over the RREF basis of ``ann(M)``; ``a_j`` over the
    standard basis of ``Λ``.  When ``M`` is an ``S(g)`` with ``g = h ⋉ h+`` the
    finer chain of :func:`s_case_chain` is attached as well.
    """
    parts = triangular_parts(L)
    M = parts["M"]
    n = parts["R"].dim
    F = L.field
    zR = (F.zero,) * n
    annM = annihilator(M)
    b_elems = [zR + tuple(v) for v in annM.basis]
    a_elems = [L.unit_vector(i) for i in range(L.dim)]
    lambda1 = kernel_of_rows(F, _stacked_rows(L, b_elems), L.dim)
    expected = annihilator(L, Subspace(F, L.dim, b_elems))
    # f2 restricted to Λ1: x = B c with B the basis matrix of Λ1
    basis = lambda1.basis
    rows2 = []
    for a in a_elems:
        for v_rows in (L.left_matrix(a).rows, L.right_matrix(a).rows):
            for row in v_rows:
                rows2.append(tuple(sum((row[k] * vec[k] for k in range(L.dim)), F.zero) for vec in basis))
    coeff_kernel = kernel_of_rows(F, rows2, len(basis)) if basis else Subspace.zero(F, 0)
    ker_f2 = Subspace(
        F, L.dim,
        [tuple(sum((c[i] * basis[i][k] for i in range(len(basis))), F.zero) for k in range(L.dim)) for c in coeff_kernel.basis],
    )
    report = ChainReport(
        b_elements=b_elems,
        a_elements=a_elems,
        lambda1=lambda1,
        expected_lambda1=expected,
        ann=annihilator(L),
        ker_f2=ker_f2,
        f1_images=_images(L, b_elems, L.full()),
        f2_images=_images(L, a_elems, lambda1),
        ideal_M=L.tag.subspaces["ideal_M"],
    )
    h = M.tag.parts.get("h") if M.tag is not None and M.tag.kind == "SOf" else None
    if h is not None and h.tag is not None and h.tag.kind == "SemidirectDouble":
        report.s_case = s_case_chain(M)
    return report


@dataclass
class SChainReport:
    """Chain ``S ⊇ S1 ⊇ S2`` for ``S = S(B ⋉ B+)``, in ``S`` coordinates."""

    z_family: list[str]
    single_z_property: dict[str, bool]
    S1: Subspace
    expected_S1: Subspace
    S2: Subspace
    annS: Subspace
    target: Subspace
    images: list[Subspace] = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (
            self.S1 == self.expected_S1
            and self.S2 == self.annS
            and all(img <= self.target for img in self.images)
        )

    def summary(self) -> list[str]:
        prop = ", ".join(f"{k}={v}" for k, v in self.single_z_property.items())
        return [
            f"z family {self.z_family}; single-z property: {prop}",
            f"dim S1 = {self.S1.dim} (expected (z x B) x (z x B): {self.S1 == self.expected_S1})",
            f"dim S2 = {self.S2.dim}, dim ann(S) = {self.annS.dim} (equal: {self.S2 == self.annS})",
            f"images inside target of dim {self.target.dim}: {all(img <= self.target for img in self.images)}",
        ]


def s_case_chain(S: Algebra) -> SChainReport:
    """Kernel chain of ``S = S(B ⋉ B+)`` driven by ``ρ_y(x) = x y``.

    With ``x = ((x1,x2),(x3,x4))`` the elements ``b = ((0,z),(0,0))`` and
    ``d = ((0,0),(0,z))`` cut out ``S1``; ``a = ((z,0),(0,0))`` and
    ``c = ((0,0),(z,0))`` cut ``S2`` out of ``S1``.  A single non-central ``z``
    suffices only when its centralizer is ``z(B)`` and ``[z, B] = z(B)``;
    this property is reported, and the chain uses every non-central basis
    vector of ``B`` as ``z`` so that the kernels are the intended ones.
    """
    if S.tag is None or S.tag.kind != "SOf":
        raise AlgebraError("expected an S(g) construction")
    g = S.tag.parts["h"]
    if g.tag is None or g.tag.kind != "SemidirectDouble":
        raise AlgebraError("expected S(B ⋉ B+)")
    B = g.tag.parts["R"]
    F = S.field
    nb = B.dim
    zB = center_lie(B)
    zero = (F.zero,) * nb
    noncentral = [i for i in range(nb) if not zB.contains(B.unit_vector(i))]
    if not noncentral:
        raise AlgebraError("B is abelian; no non-central z exists")

    def pack(x1, x2, x3, x4) -> tuple:
        return tuple(x1) + tuple(x2) + tuple(x3) + tuple(x4)

    z0 = B.unit_vector(noncentral[0])
    centralizer = kernel_of_rows(F, B.right_matrix(z0).rows, nb)
    brz = Subspace(F, nb, [B.mul_coords(z0, B.unit_vector(j)) for j in range(nb)])
    single = {"centralizer_is_center": centralizer == zB, "bracket_is_center": brz == zB}

    zs = [B.unit_vector(i) for i in noncentral]
    bd = [pack(zero, z, zero, zero) for z in zs] + [pack(zero, zero, zero, z) for z in zs]
    ac = [pack(z, zero, zero, zero) for z in zs] + [pack(zero, zero, z, zero) for z in zs]

    S1 = kernel_of_rows(F, [row for y in bd for row in S.right_matrix(y).rows], S.dim)
    full_B = [B.unit_vector(i) for i in range(nb)]
    expected_S1 = Subspace(
        F, S.dim,
        [pack(v, zero, zero, zero) for v in zB.basis] + [pack(zero, v, zero, zero) for v in full_B]
        + [pack(zero, zero, v, zero) for v in zB.basis] + [pack(zero, zero, zero, v) for v in full_B],
    )
    rows = [row for y in ac for row in S.right_matrix(y).rows]
    S2 = S1 & kernel_of_rows(F, rows, S.dim)
    target = Subspace(F, S.dim, [pack(zero, zero, zero, v) for v in zB.basis])
    images = [Subspace(F, S.dim, [S.mul_coords(x, y) for x in S.full().basis]) for y in bd]
    images += [Subspace(F, S.dim, [S.mul_coords(x, y) for x in S1.basis]) for y in ac]
    return SChainReport(
        z_family=[B.basis_names[i] for i in noncentral],
        single_z_property=single,
        S1=S1,
        expected_S1=expected_S1,
        S2=S2,
        annS=annihilator(S),
        target=target,
        images=images,
    )
