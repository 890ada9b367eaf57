"""Local rings: locality checks, characteristic, multiplicative representatives,
idempotent decomposition, coefficient-field splits, the annihilator criterion
and the field interpreted on ``ann(m)`` of ``GF(p) ⊕ m``.

``Z/n`` is not an algebra over a field when ``n`` is not prime, so finite
rings are also accepted through the small :class:`FiniteRing` interface.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Any, Hashable, Iterable, Iterator

from .algebra import Algebra, AlgebraError, Element, find_unit, is_ideal, nilpotency_index, quotient, subalgebra
from .constructions import scalar_action, triangular
from .exactmath import FiniteField, Subspace, kernel, solve
from .invariants import annihilator, power_ideal

ENUMERATION_LIMIT = 2**16


class FiniteRing:
    """Finite ring with hashable elements.  Subclasses define the operations."""

    name = "ring"

    def elements(self) -> Iterator[Hashable]:
        raise NotImplementedError

    @property
    def size(self) -> int:
        raise NotImplementedError

    zero: Hashable
    one: Hashable | None

    def add(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def label(self, a) -> str:
        return str(a)

    def mult_check_pairs(self) -> Iterable[tuple[Hashable, Hashable]]:
        """Pairs on which multiplicativity of an additive map needs checking."""
        els = list(self.elements())
        return itertools.product(els, els)

    def power(self, a, e: int):
        result, base = self.one, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def is_unit(self, a) -> bool:
        return any(self.mul(a, b) == self.one for b in self.elements())


class IntegersMod(FiniteRing):
    def __init__(self, n: int):
        if n < 1:
            raise ValueError("modulus must be positive")
        self.n = n
        self.name = f"Z/{n}"
        self.zero = 0
        self.one = 1 % n

    def elements(self):
        return iter(range(self.n))

    @property
    def size(self) -> int:
        return self.n

    def add(self, a, b):
        return (a + b) % self.n

    def neg(self, a):
        return (-a) % self.n

    def mul(self, a, b):
        return (a * b) % self.n

    def mult_check_pairs(self):
        # additive generator 1: multiplicativity on (1, 1) plus additivity suffices
        return [(1 % self.n, 1 % self.n)]

    def __repr__(self) -> str:
        return self.name


class AlgebraRing(FiniteRing):
    """Elements of a finite algebra as coordinate tuples."""

    def __init__(self, A: Algebra):
        if A.size() is None:
            raise AlgebraError("algebra is over an infinite field")
        self.algebra = A
        self.name = repr(A)
        self.zero = A.zero_vector()
        u = find_unit(A)
        self.one = None if u is None else u.coords

    def elements(self):
        return (e.coords for e in self.algebra.elements())

    @property
    def size(self) -> int:
        return self.algebra.size()

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x for x in a)

    def mul(self, a, b):
        return self.algebra.mul_coords(a, b)

    def label(self, a) -> str:
        return repr(Element(self.algebra, a))

    def mult_check_pairs(self):
        basis = [self.algebra.unit_vector(i) for i in range(self.algebra.dim)]
        return itertools.product(basis, basis)

    def is_unit(self, a) -> bool:
        if self.one is None:
            return False
        return solve(self.algebra.left_matrix(a), self.one) is not None


class SubsetRing(FiniteRing):
    """A subset of a parent ring closed under its operations, with its own unit."""

    def __init__(self, parent: FiniteRing, elements: Iterable[Hashable], one: Hashable, name: str = ""):
        self.parent = parent
        self._elements = sorted(set(elements), key=repr)
        self.zero = parent.zero
        self.one = one
        self.name = name or f"subring of {parent.name}"

    def elements(self):
        return iter(self._elements)

    @property
    def size(self) -> int:
        return len(self._elements)

    def add(self, a, b):
        return self.parent.add(a, b)

    def neg(self, a):
        return self.parent.neg(a)

    def mul(self, a, b):
        return self.parent.mul(a, b)

    def label(self, a) -> str:
        return self.parent.label(a)

    def __repr__(self) -> str:
        return self.name


def as_finite_ring(R) -> FiniteRing:
    return R if isinstance(R, FiniteRing) else AlgebraRing(R)


# -- characteristic ---------------------------------------------------------------


def characteristic(R) -> int:
    """Additive order of the unit, 0 when it is infinite."""
    if isinstance(R, Algebra):
        if find_unit(R) is None:
            raise AlgebraError("characteristic needs a unital ring")
        return R.field.characteristic
    if R.one is None:
        raise AlgebraError("characteristic needs a unital ring")
    acc, k = R.one, 1
    while acc != R.zero:
        acc = R.add(acc, R.one)
        k += 1
    return k


# -- locality --------------------------------------------------------------------


@dataclass
class LocalReport:
    clauses: dict[str, bool | None]
    nilpotency_index: int | None
    residue_dim: int | None
    notes: list[str] = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(v is True for v in self.clauses.values())

    @property
    def failed(self) -> list[str]:
        return [k for k, v in self.clauses.items() if v is not True]


def _residue_is_field(Q: Algebra) -> tuple[bool | None, str]:
    if Q.dim == 0:
        return False, "m is the whole ring"
    unit = find_unit(Q)
    if unit is None:
        return False, "quotient has no unit"
    if Q.size() is not None:
        if Q.size() > ENUMERATION_LIMIT:
            return None, "residue ring too large to enumerate"
        for q in Q.elements():
            if q and solve(Q.left_matrix(q), unit.coords) is None:
                return False, f"{q!r} has no inverse modulo m"
        return True, "every nonzero class is invertible"
    if Q.dim == 1:
        c = Q.basis_product(0, 0)[0]
        return (bool(c), "one-dimensional residue algebra with invertible generator" if c else "generator squares to 0")
    return None, "residue algebra of dimension > 1 over an infinite field is not decided"


def is_local(R: Algebra, m: Subspace) -> LocalReport:
    """Check ``m`` is a nilpotent ideal with ``R/m`` a field."""
    rep = R.report()
    clauses: dict[str, bool | None] = {
        "commutative": rep.commutative,
        "unital": rep.unit is not None,
        "ideal": is_ideal(R, m),
    }
    idx = nilpotency_index(R, m)
    clauses["nilpotent"] = idx is not None
    notes = []
    residue_dim = None
    if clauses["ideal"]:
        Q, _ = quotient(R, m)
        residue_dim = Q.dim
        ok, note = _residue_is_field(Q)
        clauses["residue_field"] = ok
        notes.append(note)
    else:
        clauses["residue_field"] = False
        notes.append("m is not an ideal, so R/m is undefined")
    return LocalReport(clauses, idx, residue_dim, notes)


def nonunits(R) -> list:
    FR = as_finite_ring(R)
    return [a for a in FR.elements() if not FR.is_unit(a)]


# -- multiplicative representatives -------------------------------------------------


@dataclass
class RepresentativesReport:
    p: int
    n: int
    representatives: dict
    X: set
    unique: bool
    closed: bool
    powers: bool
    multiplicative: bool

    @property
    def ok(self) -> bool:
        return self.unique and self.closed and self.powers and self.multiplicative


def _residue_setup(R, m, n):
    if isinstance(R, IntegersMod):
        N = R.n
        p = next(q for q in range(2, N + 1) if N % q == 0)
        s, rest = 0, N
        while rest % p == 0:
            rest //= p
            s += 1
        if rest != 1:
            raise AlgebraError(f"Z/{N} is not local")
        return R, p, (n if n is not None else s), (lambda a: a % p)
    if isinstance(R, Algebra):
        if m is None:
            if R.tag is None or "maximal_ideal" not in R.tag.subspaces:
                raise AlgebraError("maximal ideal required")
            m = R.tag.subspaces["maximal_ideal"]
        if not isinstance(R.field, FiniteField):
            raise AlgebraError("representatives are enumerated over finite fields only")
        idx = nilpotency_index(R, m)
        if idx is None:
            raise AlgebraError("maximal ideal is not nilpotent")
        return AlgebraRing(R), R.field.p, (n if n is not None else idx), m.reduce
    raise AlgebraError("unsupported ring type")


def mult_representatives(R, m: Subspace | None = None, n: int | None = None) -> RepresentativesReport:
    """``X = {b^(p^n)}``: one element per residue class, multiplicatively closed.

    ``n`` must satisfy ``m^n = 0``; by default the nilpotency index is used.
    """
    FR, p, n, key = _residue_setup(R, m, n)
    if FR.size > ENUMERATION_LIMIT:
        raise AlgebraError("ring too large to enumerate")
    e = p**n
    X = {FR.power(b, e) for b in FR.elements()}
    classes: dict[Any, list] = {}
    for a in FR.elements():
        classes.setdefault(key(a), [])
    for a in X:
        classes[key(a)].append(a)
    unique = all(len(v) == 1 for v in classes.values())
    if not unique:
        bad = next(k for k, v in classes.items() if len(v) != 1)
        raise AlgebraError(f"residue class {bad!r} meets X in {len(classes[bad])} elements")
    reps = {k: v[0] for k, v in classes.items()}
    closed = all(FR.mul(a, b) in X for a in X for b in X)
    powers = True
    for k in range(1, n + 1):
        image = {FR.power(b, p**k) for b in FR.elements()}
        if not X <= image:
            powers = False
    mult = all(reps[key(FR.mul(reps[s], reps[t]))] == FR.mul(reps[s], reps[t]) for s in reps for t in reps)
    return RepresentativesReport(p, n, reps, X, unique, closed, powers, mult)


# -- idempotents ------------------------------------------------------------------


@dataclass
class Decomposition:
    idempotents: list
    factors: list
    sizes: list[int]
    orthogonal: bool
    sum_is_one: bool
    reassembly_bijective: bool
    reassembly_multiplicative: bool

    @property
    def ok(self) -> bool:
        return self.orthogonal and self.sum_is_one and self.reassembly_bijective and self.reassembly_multiplicative


def idempotent_decomposition(R) -> Decomposition:
    """Primitive orthogonal idempotents summing to 1 and the factors ``R u_i``."""
    FR = as_finite_ring(R)
    if FR.size > ENUMERATION_LIMIT:
        raise AlgebraError(f"ring has {FR.size} elements; enumeration bound is {ENUMERATION_LIMIT}")
    if FR.one is None:
        raise AlgebraError("ring has no unit")
    elems = list(FR.elements())
    idem = [e for e in elems if FR.mul(e, e) == e and e != FR.zero]
    atoms = [e for e in idem if not any(f != e and FR.mul(f, e) == f for f in idem)]
    orth = all(FR.mul(a, b) == FR.zero for a, b in itertools.combinations(atoms, 2))
    total = FR.zero
    for a in atoms:
        total = FR.add(total, a)
    sum_one = total == FR.one
    images = [sorted({FR.mul(a, u) for a in elems}, key=repr) for u in atoms]
    factors = []
    for u, img in zip(atoms, images):
        if isinstance(R, Algebra):
            S = Subspace(R.field, R.dim, [R.mul_coords(R.unit_vector(i), u) for i in range(R.dim)])
            factors.append(subalgebra(R, S)[0])
        else:
            factors.append(SubsetRing(FR, img, u, name=f"{FR.name}·{FR.label(u)}"))
    tuples = {tuple(FR.mul(a, u) for u in atoms) for a in elems}
    size_prod = 1
    for img in images:
        size_prod *= len(img)
    bij = len(tuples) == len(elems) == size_prod
    mult = all(
        FR.mul(FR.mul(a, b), u) == FR.mul(FR.mul(a, u), FR.mul(b, u))
        for a, b in FR.mult_check_pairs()
        for u in atoms
    )
    return Decomposition(atoms, factors, [len(i) for i in images], orth, sum_one, bij, mult)


# -- coefficient field split -----------------------------------------------------------


@dataclass
class CohenReport:
    clauses: dict[str, bool | None]
    retagged: Algebra | None = None
    notes: list[str] = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(v is True for v in self.clauses.values())


def cohen_split_check(R, k: Subspace | None = None) -> CohenReport:
    """Check that ``k`` is a subfield complementary to ``m`` mapping onto ``R/m``.

    For ``Z/n`` the only candidate containing 1 is the prime subring, which is
    tested directly.  On success an algebra is retagged as ``Λ(k, m)``.
    """
    if isinstance(R, IntegersMod):
        cand = sorted({(j * R.one) % R.n for j in range(R.n)})
        field_ok = all(R.is_unit(a) for a in cand if a != 0)
        notes = ["the subring generated by 1 is the only candidate"]
        if not field_ok:
            bad = next(a for a in cand if a != 0 and not R.is_unit(a))
            notes.append(f"{bad} is nonzero but not invertible")
        return CohenReport({"subfield": field_ok}, None, notes)
    if R.tag is None or "maximal_ideal" not in R.tag.subspaces:
        raise AlgebraError("ring must carry a maximal-ideal tag")
    m = R.tag.subspaces["maximal_ideal"]
    if k is None:
        k = R.tag.subspaces.get("split")
    F = R.field
    unit = find_unit(R)
    clauses: dict[str, bool | None] = {}
    notes: list[str] = []
    clauses["contains 1"] = unit is not None and k.contains(unit.coords)
    clauses["subring"] = all(k.contains(R.mul_coords(a, b)) for a in k.basis for b in k.basis)
    if R.size() is not None:
        inv_ok = True
        for v in k.elements():
            if any(v):
                sol = solve(R.left_matrix(v), unit.coords) if unit is not None else None
                if sol is None or not k.contains(sol):
                    inv_ok = False
                    break
        clauses["closed under inverses"] = inv_ok
    elif k.dim == 1 and clauses["contains 1"]:
        clauses["closed under inverses"] = True
    else:
        clauses["closed under inverses"] = None
        notes.append("inversion closure undecided for dim k > 1 over an infinite field")
    clauses["k ∩ m = 0"] = (k & m).dim == 0
    clauses["k + m = R"] = (k + m).dim == R.dim
    Q, pi = quotient(R, m)
    images = [pi.matrix.apply(v) for v in k.basis]
    iso = Subspace(F, Q.dim, images).dim == Q.dim == k.dim
    iso = iso and all(
        pi.matrix.apply(R.mul_coords(a, b)) == Q.mul_coords(pa, pb)
        for a, pa in zip(k.basis, images)
        for b, pb in zip(k.basis, images)
    )
    clauses["k -> R/m isomorphism"] = iso
    report = CohenReport(clauses, None, notes)
    if report.ok:
        report.retagged = _retag(R, k, m)
    return report


def _retag(R: Algebra, k: Subspace, m: Subspace) -> Algebra | None:
    K, _ = subalgebra(R, k)
    M, _ = subalgebra(R, m)
    if K.dim != 1:
        return None
    act = scalar_action(K, M) if K.basis_product(0, 0) == (R.field.one,) else None
    if act is None:
        return None
    L = triangular(K, M, act, kind="LocalSum")
    L.tag.subspaces["maximal_ideal"] = L.tag.subspaces["ideal_M"]
    L.tag.subspaces["split"] = L.tag.subspaces["R_part"]
    return L


# -- annihilator criterion -------------------------------------------------------------


@dataclass
class AsmReport:
    m_dim: int
    ann_dim: int
    m2_dim: int
    m2_plus_ann_dim: int
    codim_in_m: int
    criterion: bool
    connectedness: str = "unverified"


def _m_algebra(R: Algebra) -> Algebra:
    if R.tag is not None and R.tag.kind == "LocalSum":
        return R.tag.parts["M"]
    if R.tag is not None and "maximal_ideal" in R.tag.subspaces:
        return subalgebra(R, R.tag.subspaces["maximal_ideal"])[0]
    raise AlgebraError("expected a local ring tagged with its maximal ideal")


def asm_criterion(R: Algebra) -> AsmReport:
    """Whether ``m = ann(m)``, with the sizes of ``m²``, ``ann(m)`` and ``m² + ann(m)``."""
    m = _m_algebra(R)
    ann = annihilator(m)
    m2 = power_ideal(m, 2)
    both = m2 + ann
    return AsmReport(m.dim, ann.dim, m2.dim, both.dim, m.dim - both.dim, ann.dim == m.dim)


# -- interpreted field on ann(m) ---------------------------------------------------------


@dataclass
class InterpFieldReport:
    q: int
    well_defined: bool
    field_axioms: dict[str, bool]
    isomorphic: bool
    multiplicative_order: int | None
    cyclic: bool
    table: dict = dc_field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.well_defined and all(self.field_axioms.values()) and self.isomorphic and self.cyclic


def interp_field(R: Algebra) -> InterpFieldReport:
    """``a ⊙ b = a'·b'`` on ``ann(m)``, where ``h(a') = a`` for ``h`` = multiplication by ``x``."""
    if R.tag is None or "base_field" not in R.tag.parts:
        raise AlgebraError("expected the ring built from the maximal ideal of F[x]/(x^3)")
    F: FiniteField = R.tag.parts["base_field"]
    m = _m_algebra(R)
    P = m.field
    x_idx = m.basis_names.index("x")
    h = m.left_matrix(m.unit_vector(x_idx))
    ann = annihilator(m)
    image = Subspace(P, m.dim, h.columns())
    ker = kernel(h)
    if image != ann or ker != ann:
        raise AlgebraError("shape violation: h must map m onto ann(m) with kernel ann(m)")
    ann_elems = [tuple(v) for v in ann.elements()]
    # all preimages of each a
    pre: dict[tuple, list[tuple]] = {a: [] for a in ann_elems}
    for v in itertools.product(list(P.elements()), repeat=m.dim):
        img = h.apply(v)
        if img in pre:
            pre[img].append(tuple(v))
    well = True
    table: dict[tuple[tuple, tuple], tuple] = {}
    for a in ann_elems:
        for b in ann_elems:
            prods = {m.mul_coords(ap, bp) for ap in pre[a] for bp in pre[b]}
            if len(prods) != 1:
                well = False
            table[(a, b)] = next(iter(prods))

    def add(a, b):
        return tuple(s + t for s, t in zip(a, b))

    def odot(a, b):
        return table[(a, b)]

    zero = tuple(P.zero for _ in range(m.dim))
    nonzero = [a for a in ann_elems if a != zero]
    ones = [u for u in nonzero if all(odot(u, a) == a for a in ann_elems)]
    one = ones[0] if ones else None
    axioms = {
        "commutative": all(odot(a, b) == odot(b, a) for a in ann_elems for b in ann_elems),
        "associative": all(odot(odot(a, b), c) == odot(a, odot(b, c)) for a in ann_elems for b in ann_elems for c in ann_elems),
        "distributive": all(
            odot(a, add(b, c)) == add(odot(a, b), odot(a, c)) for a in ann_elems for b in ann_elems for c in ann_elems
        ),
        "unit": one is not None,
        "inverses": one is not None and all(any(odot(a, b) == one for b in nonzero) for a in nonzero),
    }
    # isomorphism alpha -> alpha x^2 written in the restricted basis
    x2 = [i for i, nme in enumerate(m.basis_names) if nme.endswith("x^2")]
    x2.sort(key=lambda i: _gpower(m.basis_names[i]))

    def phi(alpha) -> tuple:
        digits = alpha.c if isinstance(alpha.c, tuple) else (alpha.c,)
        out = list(zero)
        for a, d in enumerate(digits):
            out[x2[a]] = P(d)
        return tuple(out)

    felems = list(F.elements())
    iso = len({phi(a) for a in felems}) == len(ann_elems) == F.order and all(
        phi(a * b) == odot(phi(a), phi(b)) and phi(a + b) == add(phi(a), phi(b)) for a in felems for b in felems
    )
    order = None
    if axioms["unit"]:
        best = 0
        for a in nonzero:
            acc, e = a, 1
            while acc != one:
                acc = odot(acc, a)
                e += 1
            best = max(best, e)
        order = best
    cyclic = order == len(nonzero)
    return InterpFieldReport(F.order, well, axioms, iso, order, cyclic, table)


def _gpower(name: str) -> int:
    if name.startswith("g^"):
        return int(name[2:].split("*")[0])
    if name.startswith("g*"):
        return 1
    return 0


__all__ = [
    "FiniteRing", "IntegersMod", "AlgebraRing", "SubsetRing", "as_finite_ring", "characteristic",
    "LocalReport", "is_local", "nonunits", "RepresentativesReport", "mult_representatives",
    "Decomposition", "idempotent_decomposition", "CohenReport", "cohen_split_check", "AsmReport",
    "asm_criterion", "InterpFieldReport", "interp_field",
]
