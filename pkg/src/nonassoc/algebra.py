"""Finite-dimensional non-associative algebras given by structure constants.

An :class:`Algebra` over a field ``F`` has a named basis ``b_0..b_{n-1}`` and a
sparse tensor of entries ``(i, j, k, c)`` meaning ``b_i * b_j`` contains
``c * b_k``.  Multiplication is bilinear by construction, so every axiom check
below quantifies over basis tuples only.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field as dc_field
from typing import Any, Iterable, Iterator, Sequence

from .exactmath import Field, Matrix, Subspace, field_from_json, inverse, parse_field, solve
from .exactmath.parsing import ScalarParseError


class AlgebraError(ValueError):
    pass


class AlgebraParseError(AlgebraError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)
        self.line = line
        self.column = column


class Algebra:
    """Structure-constant algebra.  Treat instances as immutable.

    ``tag`` carries construction metadata (see :mod:`nonassoc.constructions`);
    ``embedding`` optionally lists a square matrix for each basis vector, for
    linear Lie algebras.  Neither participates in equality.
    """

    def __init__(
        self,
        field: Field,
        basis_names: Sequence[str],
        entries: Iterable[tuple[int, int, int, Any]] = (),
        *,
        tag=None,
        embedding: Sequence[Matrix] | None = None,
    ):
        self.field = field
        self.basis_names = tuple(str(n) for n in basis_names)
        self.dim = len(self.basis_names)
        if len(set(self.basis_names)) != self.dim:
            raise AlgebraError(f"duplicate basis names in {self.basis_names}")
        n = self.dim
        seen: dict[tuple[int, int, int], Any] = {}
        for entry in entries:
            i, j, k, c = entry
            if not all(isinstance(x, int) and 0 <= x < n for x in (i, j, k)):
                raise AlgebraError(f"tensor entry {(i, j, k)} has an index outside 0..{n - 1}")
            if (i, j, k) in seen:
                raise AlgebraError(f"duplicate tensor entry {(i, j, k)}")
            seen[(i, j, k)] = field(c) if not _is_elem(field, c) else c
        table: dict[tuple[int, int], list[tuple[int, Any]]] = {}
        for (i, j, k), c in sorted(seen.items()):
            if c:
                table.setdefault((i, j), []).append((k, c))
        self.table = {key: tuple(v) for key, v in table.items()}
        self.tag = tag
        self.embedding = tuple(embedding) if embedding is not None else None
        if self.embedding is not None and len(self.embedding) != n:
            raise AlgebraError("embedding must give one matrix per basis vector")
        self._report = None

    # -- structure --------------------------------------------------------
    def entries(self) -> list[tuple[int, int, int, Any]]:
        return [(i, j, k, c) for (i, j), lst in sorted(self.table.items()) for k, c in lst]

    def structure_constant(self, i: int, j: int, k: int) -> Any:
        for kk, c in self.table.get((i, j), ()):
            if kk == k:
                return c
        return self.field.zero

    def zero_vector(self) -> tuple:
        return (self.field.zero,) * self.dim

    def unit_vector(self, i: int) -> tuple:
        z, o = self.field.zero, self.field.one
        return tuple(o if j == i else z for j in range(self.dim))

    def mul_coords(self, x: Sequence[Any], y: Sequence[Any]) -> tuple:
        out = list(self.zero_vector())
        ny = [(j, b) for j, b in enumerate(y) if b]
        if not ny:
            return tuple(out)
        table = self.table
        for i, a in enumerate(x):
            if not a:
                continue
            for j, b in ny:
                lst = table.get((i, j))
                if lst:
                    ab = a * b
                    for k, c in lst:
                        out[k] = out[k] + ab * c
        return tuple(out)

    def basis_product(self, i: int, j: int) -> tuple:
        out = list(self.zero_vector())
        for k, c in self.table.get((i, j), ()):
            out[k] = c
        return tuple(out)

    # -- elements ---------------------------------------------------------
    def element(self, coords: Sequence[Any]) -> "Element":
        coords = tuple(c if _is_elem(self.field, c) else self.field(c) for c in coords)
        if len(coords) != self.dim:
            raise AlgebraError(f"expected {self.dim} coordinates, got {len(coords)}")
        return Element(self, coords)

    def basis(self) -> list["Element"]:
        return [Element(self, self.unit_vector(i)) for i in range(self.dim)]

    def gen(self, name: str) -> "Element":
        try:
            return Element(self, self.unit_vector(self.basis_names.index(name)))
        except ValueError:
            raise AlgebraError(f"no basis element named {name!r}") from None

    def zero(self) -> "Element":
        return Element(self, self.zero_vector())

    def random_element(self, rng) -> "Element":
        return Element(self, tuple(self.field.random(rng) for _ in range(self.dim)))

    def elements(self) -> Iterator["Element"]:
        scalars = list(self.field.elements())
        for coords in itertools.product(scalars, repeat=self.dim):
            yield Element(self, coords)

    def size(self) -> int | None:
        if self.field.order is None:
            return None
        return self.field.order**self.dim

    def full(self) -> Subspace:
        return Subspace.full(self.field, self.dim)

    def span(self, elements: Iterable["Element | Sequence[Any]"]) -> Subspace:
        return Subspace(self.field, self.dim, [_coords(e) for e in elements])

    # -- multiplication operators ------------------------------------------
    def left_matrix(self, a: "Element | Sequence[Any]") -> Matrix:
        """Matrix of ``x -> a x``."""
        a = _coords(a)
        cols = [self.mul_coords(a, self.unit_vector(j)) for j in range(self.dim)]
        return Matrix.from_columns(self.field, cols, self.dim)

    def right_matrix(self, a: "Element | Sequence[Any]") -> Matrix:
        """Matrix of ``x -> x a``."""
        a = _coords(a)
        cols = [self.mul_coords(self.unit_vector(j), a) for j in range(self.dim)]
        return Matrix.from_columns(self.field, cols, self.dim)

    # -- equality / repr ----------------------------------------------------
    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Algebra)
            and self.field == other.field
            and self.basis_names == other.basis_names
            and self.table == other.table
        )

    def __hash__(self) -> int:
        return hash((self.field, self.basis_names, tuple(sorted(self.table.items()))))

    def same_structure(self, other: "Algebra") -> bool:
        """Equal structure constants, ignoring basis names."""
        return self.field == other.field and self.dim == other.dim and self.table == other.table

    def __repr__(self) -> str:
        kind = f" {self.tag.kind}" if self.tag is not None else ""
        return f"<Algebra{kind} dim={self.dim} over {self.field!r}>"

    def describe(self) -> str:
        lines = [repr(self)]
        fmt = self.field.format
        for (i, j), lst in sorted(self.table.items()):
            rhs = " + ".join(f"{fmt(c)}*{self.basis_names[k]}" for k, c in lst)
            lines.append(f"  {self.basis_names[i]} . {self.basis_names[j]} = {rhs}")
        return "\n".join(lines)

    def report(self) -> "AxiomReport":
        if self._report is None:
            self._report = check_axioms(self)
        return self._report


def _is_elem(field: Field, c: Any) -> bool:
    from fractions import Fraction

    from .exactmath import FFElement, RatFunc

    if isinstance(c, Fraction):
        return field.characteristic == 0 and field.variable is None
    if isinstance(c, FFElement):
        return c.field == field
    if isinstance(c, RatFunc):
        return c.field == field
    return False


def _coords(e) -> tuple:
    return e.coords if isinstance(e, Element) else tuple(e)


class Element:
    """Coordinate vector in a specific algebra's basis."""

    __slots__ = ("algebra", "coords")

    def __init__(self, algebra: Algebra, coords: tuple):
        self.algebra = algebra
        self.coords = coords

    def _same(self, other: "Element") -> None:
        if other.algebra is not self.algebra and other.algebra != self.algebra:
            raise AlgebraError("elements belong to different algebras")

    def __add__(self, other: "Element") -> "Element":
        self._same(other)
        return Element(self.algebra, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Element") -> "Element":
        self._same(other)
        return Element(self.algebra, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "Element":
        return Element(self.algebra, tuple(-a for a in self.coords))

    def scale(self, c: Any) -> "Element":
        c = self.algebra.field(c) if isinstance(c, int) else c
        return Element(self.algebra, tuple(c * a for a in self.coords))

    def __mul__(self, other):
        if isinstance(other, Element):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, c):
        return self.scale(c)

    def __bool__(self) -> bool:
        return any(self.coords)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Element) and self.coords == other.coords and self.algebra == other.algebra

    def __hash__(self) -> int:
        return hash(self.coords)

    def __repr__(self) -> str:
        fmt = self.algebra.field.format
        terms = []
        for c, name in zip(self.coords, self.algebra.basis_names):
            if c:
                s = fmt(c)
                terms.append(name if s == "1" else f"({s})*{name}")
        return " + ".join(terms) or "0"


def multiply(a: Element, b: Element) -> Element:
    """``(a b)_k = sum_ij a_i b_j c_ijk``."""
    if a.algebra is not b.algebra and a.algebra != b.algebra:
        raise AlgebraError("cannot multiply elements of different algebras")
    return Element(a.algebra, a.algebra.mul_coords(a.coords, b.coords))


# -- additive maps ------------------------------------------------------------


class AdditiveMap:
    """Additive map ``x -> L x + D dx`` between algebras over the same field.

    ``L`` is the linear part; ``D`` (optional) multiplies the coordinatewise
    derivative ``dx`` taken with the field's built-in derivation.  With
    ``D = None`` the map is linear over the field.  Columns index the domain
    basis.
    """

    def __init__(self, domain: Algebra, codomain: Algebra, matrix: Matrix, dmatrix: Matrix | None = None):
        if domain.field != codomain.field:
            raise AlgebraError("domain and codomain are over different fields")
        if matrix.shape != (codomain.dim, domain.dim):
            raise AlgebraError(f"matrix shape {matrix.shape} does not match ({codomain.dim}, {domain.dim})")
        if dmatrix is not None:
            if not domain.field.has_derivation:
                raise AlgebraError("a derivative part needs a field with a derivation")
            if dmatrix.shape != matrix.shape:
                raise AlgebraError("derivative part has the wrong shape")
            if dmatrix.is_zero():
                dmatrix = None
        self.domain = domain
        self.codomain = codomain
        self.matrix = matrix
        self.dmatrix = dmatrix

    @classmethod
    def identity(cls, algebra: Algebra) -> "AdditiveMap":
        return cls(algebra, algebra, Matrix.identity(algebra.field, algebra.dim))

    @classmethod
    def zero(cls, domain: Algebra, codomain: Algebra) -> "AdditiveMap":
        return cls(domain, codomain, Matrix.zeros(domain.field, codomain.dim, domain.dim))

    @classmethod
    def from_images(cls, domain: Algebra, codomain: Algebra, images: Sequence["Element | Sequence[Any]"]) -> "AdditiveMap":
        """Linear map sending basis vector ``i`` of the domain to ``images[i]``."""
        cols = [_coords(e) for e in images]
        return cls(domain, codomain, Matrix.from_columns(domain.field, cols, codomain.dim))

    @property
    def is_linear(self) -> bool:
        return self.dmatrix is None

    def apply_coords(self, x: Sequence[Any]) -> tuple:
        out = self.matrix.apply(x)
        if self.dmatrix is not None:
            d = self.domain.field.derive
            dx = self.dmatrix.apply(tuple(d(c) for c in x))
            out = tuple(a + b for a, b in zip(out, dx))
        return out

    def __call__(self, x: Element) -> Element:
        if x.algebra != self.domain:
            raise AlgebraError("element is not in the domain")
        return Element(self.codomain, self.apply_coords(x.coords))

    def image_columns(self) -> list[tuple]:
        cols = self.matrix.columns()
        if self.dmatrix is not None:
            cols += self.dmatrix.columns()
        return cols

    def compose(self, other: "AdditiveMap") -> "AdditiveMap":
        """``self o other``; the derivative parts must not stack into a second derivative."""
        if other.codomain != self.domain:
            raise AlgebraError("composition of incompatible maps")
        L1, D1 = self.matrix, self.dmatrix
        L2, D2 = other.matrix, other.dmatrix
        d = self.domain.field.derive
        lin = L1 @ L2
        der = None
        if D2 is not None:
            der = L1 @ D2
        if D1 is not None:
            lin = lin + D1 @ L2.map(d)
            der = D1 @ L2 if der is None else der + D1 @ L2
            if D2 is not None:
                if not (D1 @ D2).is_zero():
                    raise AlgebraError("composition would involve a second derivative")
                der = der + D1 @ D2.map(d)
        return AdditiveMap(other.domain, self.codomain, lin, der)

    __matmul__ = compose

    def __add__(self, other: "AdditiveMap") -> "AdditiveMap":
        if (self.domain, self.codomain) != (other.domain, other.codomain):
            raise AlgebraError("sum of maps with different domains")
        d = _add_opt(self.dmatrix, other.dmatrix)
        return AdditiveMap(self.domain, self.codomain, self.matrix + other.matrix, d)

    def __sub__(self, other: "AdditiveMap") -> "AdditiveMap":
        return self + other.scale(-1)

    def scale(self, c: Any) -> "AdditiveMap":
        c = self.domain.field(c) if isinstance(c, int) else c
        d = self.dmatrix.scale(c) if self.dmatrix is not None else None
        if d is not None and self.domain.field.derive(c):
            raise AlgebraError("scaling a derivative part by a non-constant")
        return AdditiveMap(self.domain, self.codomain, self.matrix.scale(c), d)

    def power(self, n: int) -> "AdditiveMap":
        result = AdditiveMap.identity(self.domain)
        for _ in range(n):
            result = self.compose(result)
        return result

    def is_invertible(self) -> bool:
        return self.inverse() is not None

    def inverse(self) -> "AdditiveMap | None":
        """Inverse additive map, or None.

        Linear maps: matrix inverse.  Maps with a derivative part are decided
        only in the unipotent case ``(f - id)^2 = 0``, where ``f^-1 = 2 id - f``;
        otherwise None is returned (bijectivity undetermined).
        """
        if self.dmatrix is None:
            inv = inverse(self.matrix)
            return None if inv is None else AdditiveMap(self.codomain, self.domain, inv)
        if self.domain != self.codomain:
            return None
        ident = AdditiveMap.identity(self.domain)
        nil = self - ident
        try:
            sq = nil.compose(nil)
        except AlgebraError:
            return None
        if not sq.matrix.is_zero() or sq.dmatrix is not None:
            return None
        return ident - nil

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, AdditiveMap)
            and self.domain == other.domain
            and self.codomain == other.codomain
            and self.matrix == other.matrix
            and self.dmatrix == other.dmatrix
        )

    def __hash__(self) -> int:
        return hash((self.matrix, self.dmatrix))

    def __repr__(self) -> str:
        d = "" if self.dmatrix is None else f" + {self.dmatrix!r}*d"
        return f"AdditiveMap({self.matrix!r}{d})"


def _add_opt(a: Matrix | None, b: Matrix | None) -> Matrix | None:
    if a is None:
        return b
    if b is None:
        return a
    return a + b


def homomorphism_failures(f: AdditiveMap) -> list[tuple[str, int, int]]:
    """Basis pairs at which ``f`` fails to be multiplicative.

    For a linear ``f`` this is ``f(b_i b_j) = f(b_i) f(b_j)``.  With a
    derivative part ``D`` the map is multiplicative on all elements iff also
    ``D(b_i b_j) = (D b_i) f(b_j) = f(b_i) (D b_j)`` and ``(D b_i)(D b_j) = 0``
    (expand ``f((c b_i)(e b_j))`` in ``ce, c'e, ce', c'e'``).
    """
    A, B = f.domain, f.codomain
    n = A.dim
    fb = [f.apply_coords(A.unit_vector(i)) for i in range(n)]
    Db = [f.dmatrix.column(i) for i in range(n)] if f.dmatrix is not None else None
    out = []
    for i in range(n):
        for j in range(n):
            prod = A.basis_product(i, j)
            if f.apply_coords(prod) != B.mul_coords(fb[i], fb[j]):
                out.append(("product", i, j))
                continue
            if Db is not None:
                dprod = f.dmatrix.apply(prod)
                if dprod != B.mul_coords(Db[i], fb[j]) or dprod != B.mul_coords(fb[i], Db[j]):
                    out.append(("derivative-product", i, j))
                elif any(B.mul_coords(Db[i], Db[j])):
                    out.append(("derivative-square", i, j))
    return out


def verify_homomorphism(f: AdditiveMap) -> bool:
    return not homomorphism_failures(f)


def verify_automorphism(f: AdditiveMap) -> bool:
    if f.domain != f.codomain:
        return False
    return f.is_invertible() and verify_homomorphism(f)


# -- axioms -------------------------------------------------------------------


@dataclass
class AxiomReport:
    commutative: bool
    associative: bool
    lie: bool
    two_step_nilpotent: bool
    unit: Element | None
    nilpotency_index: int | None
    violations: dict[str, tuple] = dc_field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "commutative": self.commutative,
            "associative": self.associative,
            "lie": self.lie,
            "two_step_nilpotent": self.two_step_nilpotent,
            "unit": None if self.unit is None else repr(self.unit),
            "nilpotency_index": self.nilpotency_index,
            "violations": {k: list(v) for k, v in self.violations.items()},
        }


def _add(x, y):
    return tuple(a + b for a, b in zip(x, y))


def check_axioms(A: Algebra) -> AxiomReport:
    """Exhaustive check over basis tuples; bilinearity makes this complete."""
    n = A.dim
    bp = [[A.basis_product(i, j) for j in range(n)] for i in range(n)]
    viol: dict[str, tuple] = {}

    commutative = True
    anti = True
    for i in range(n):
        if any(bp[i][i]):
            if anti:
                viol["alternating"] = (i, i)
            anti = False
        for j in range(i + 1, n):
            if bp[i][j] != bp[j][i]:
                if commutative:
                    viol["commutative"] = (i, j)
                commutative = False
            if any(_add(bp[i][j], bp[j][i])):
                if anti:
                    viol["alternating"] = (i, j)
                anti = False

    associative = True
    jacobi = True
    two_step = True
    for i, j, k in itertools.product(range(n), repeat=3):
        left = A.mul_coords(bp[i][j], A.unit_vector(k))
        right = A.mul_coords(A.unit_vector(i), bp[j][k])
        if associative and left != right:
            associative = False
            viol["associative"] = (i, j, k)
        if two_step and (any(left) or any(right)):
            two_step = False
            viol["two_step_nilpotent"] = (i, j, k)
        if jacobi and i <= j <= k:
            # [x,[y,z]] + [y,[z,x]] + [z,[x,y]]
            t1 = A.mul_coords(A.unit_vector(i), bp[j][k])
            t2 = A.mul_coords(A.unit_vector(j), bp[k][i])
            t3 = A.mul_coords(A.unit_vector(k), bp[i][j])
            if any(_add(_add(t1, t2), t3)):
                jacobi = False
                viol["jacobi"] = (i, j, k)

    return AxiomReport(
        commutative=commutative,
        associative=associative,
        lie=anti and jacobi,
        two_step_nilpotent=two_step,
        unit=find_unit(A),
        nilpotency_index=nilpotency_index(A),
        violations=viol,
    )


def find_unit(A: Algebra) -> Element | None:
    """Solve ``u b_i = b_i = b_i u`` for all i."""
    n = A.dim
    if n == 0:
        return None
    rows = []
    rhs = []
    # unknown u = sum_k u_k b_k; (u b_i)_l = sum_k u_k c_{k i l}
    for i in range(n):
        target = A.unit_vector(i)
        left_cols = [A.basis_product(k, i) for k in range(n)]
        right_cols = [A.basis_product(i, k) for k in range(n)]
        for l in range(n):
            rows.append([left_cols[k][l] for k in range(n)])
            rhs.append(target[l])
            rows.append([right_cols[k][l] for k in range(n)])
            rhs.append(target[l])
    sol = solve(Matrix(A.field, rows, n), rhs)
    return None if sol is None else Element(A, sol)


def power_ideal(A: Algebra, k: int, S: Subspace | None = None) -> Subspace:
    """Left-normed k-th power: ``S^1 = S``, ``S^(j+1) = span(x s : x in S^j, s in S)``."""
    if k < 1:
        raise ValueError("power index must be >= 1")
    base = S if S is not None else A.full()
    cur = base
    for _ in range(k - 1):
        if cur.dim == 0:
            break
        cur = Subspace(A.field, A.dim, [A.mul_coords(x, s) for x in cur.basis for s in base.basis])
    return cur


def nilpotency_index(A: Algebra, S: Subspace | None = None) -> int | None:
    """Least k with (left-normed) ``S^k = 0``, searched up to ``dim + 1``."""
    base = S if S is not None else A.full()
    if base.dim == 0:
        return 1
    cur = base
    for k in range(2, A.dim + 2):
        cur = Subspace(A.field, A.dim, [A.mul_coords(x, s) for x in cur.basis for s in base.basis])
        if cur.dim == 0:
            return k
    return None


def is_ideal(A: Algebra, S: Subspace) -> bool:
    if S.ambient_dim != A.dim:
        raise AlgebraError("subspace ambient dimension does not match the algebra")
    for s in S.basis:
        for j in range(A.dim):
            e = A.unit_vector(j)
            if not S.contains(A.mul_coords(s, e)) or not S.contains(A.mul_coords(e, s)):
                return False
    return True


def is_subalgebra(A: Algebra, S: Subspace) -> bool:
    return all(S.contains(A.mul_coords(x, y)) for x in S.basis for y in S.basis)


def quotient(A: Algebra, I: Subspace) -> tuple[Algebra, AdditiveMap]:
    """``A/I`` on the non-pivot coordinates of ``I``'s RREF, with the projection."""
    if not is_ideal(A, I):
        raise AlgebraError("quotient by a subspace that is not a two-sided ideal")
    keep = I.complement_coords()
    pos = {c: a for a, c in enumerate(keep)}

    def project(v):
        r = I.reduce(v)
        return tuple(r[c] for c in keep)

    entries = []
    for a, i in enumerate(keep):
        for b, j in enumerate(keep):
            prod = project(A.basis_product(i, j))
            for k, c in enumerate(prod):
                if c:
                    entries.append((a, b, k, c))
    Q = Algebra(A.field, [A.basis_names[c] for c in keep], entries)
    proj = AdditiveMap.from_images(A, Q, [project(A.unit_vector(j)) for j in range(A.dim)])
    del pos
    return Q, proj


def subalgebra(A: Algebra, S: Subspace, names: Sequence[str] | None = None) -> tuple[Algebra, AdditiveMap]:
    """Algebra structure on the RREF basis of a multiplicatively closed ``S``, with the inclusion."""
    if not is_subalgebra(A, S):
        raise AlgebraError("subspace is not closed under multiplication")
    if names is None:
        names = [_vector_name(A, v, idx) for idx, v in enumerate(S.basis)]
    entries = []
    for a, x in enumerate(S.basis):
        for b, y in enumerate(S.basis):
            coords = S.coordinates(A.mul_coords(x, y))
            for k, c in enumerate(coords):
                if c:
                    entries.append((a, b, k, c))
    B = Algebra(A.field, names, entries)
    inc = AdditiveMap.from_images(B, A, list(S.basis))
    return B, inc


def _vector_name(A: Algebra, v, idx: int) -> str:
    support = [i for i, c in enumerate(v) if c]
    if len(support) == 1 and v[support[0]] == A.field.one:
        return A.basis_names[support[0]]
    return f"v{idx}"


def _pair_names(a: Sequence[str], b: Sequence[str], suffixes=("_1", "_2")) -> tuple[list[str], list[str]]:
    if set(a).isdisjoint(b):
        return list(a), list(b)
    return [x + suffixes[0] for x in a], [x + suffixes[1] for x in b]


def direct_product(A: Algebra, B: Algebra) -> Algebra:
    if A.field != B.field:
        raise AlgebraError("direct product of algebras over different fields")
    na, nb = _pair_names(A.basis_names, B.basis_names)
    n = A.dim
    entries = [(i, j, k, c) for i, j, k, c in A.entries()]
    entries += [(i + n, j + n, k + n, c) for i, j, k, c in B.entries()]
    from .constructions import ConstructionTag

    tag = ConstructionTag("DirectProduct", {"factors": (A, B)}, {})
    return Algebra(A.field, na + nb, entries, tag=tag)


def restrict_scalars(A: Algebra) -> Algebra:
    """View an algebra over ``GF(p^k)`` as an algebra over ``GF(p)``.

    Basis ``g^a * b_j`` with index ``j*k + a``.
    """
    from .exactmath import FiniteField

    F = A.field
    if not isinstance(F, FiniteField) or F.k == 1:
        raise AlgebraError("restriction of scalars needs a proper extension GF(p^k)")
    k = F.k
    P = FiniteField(F.p)
    g = F.generator
    powers = [F.one]
    for _ in range(2 * k):
        powers.append(powers[-1] * g)
    names = []
    for name in A.basis_names:
        for a in range(k):
            names.append(name if a == 0 else (f"g*{name}" if a == 1 else f"g^{a}*{name}"))
    entries = {}
    for (i, j), lst in A.table.items():
        for a in range(k):
            for b in range(k):
                for l, c in lst:
                    coeff = c * powers[a + b]
                    for e, digit in enumerate(coeff.c):
                        if digit:
                            key = (i * k + a, j * k + b, l * k + e)
                            entries[key] = entries.get(key, 0) + digit
    return Algebra(P, names, [(i, j, kk, P(c)) for (i, j, kk), c in sorted(entries.items())])


# -- serialization ------------------------------------------------------------


def to_json(A: Algebra) -> dict:
    fmt = A.field.format
    return {
        "field": A.field.to_json(),
        "dim": A.dim,
        "basis": list(A.basis_names),
        "mult": [[i, j, k, fmt(c)] for i, j, k, c in A.entries()],
    }


def dumps(A: Algebra) -> str:
    obj = to_json(A)
    mult = ",\n    ".join(json.dumps(e) for e in obj["mult"])
    return (
        "{\n"
        f'  "field": {json.dumps(obj["field"])},\n'
        f'  "dim": {obj["dim"]},\n'
        f'  "basis": {json.dumps(obj["basis"])},\n'
        f'  "mult": [' + (f"\n    {mult}\n  " if mult else "") + "]\n"
        "}\n"
    )


def from_json(obj: dict) -> Algebra:
    try:
        raw = obj["field"]
        # short names such as "GF(3)" are accepted alongside the object form
        field = parse_field(raw) if isinstance(raw, str) else field_from_json(raw)
        dim = int(obj["dim"])
        basis = obj.get("basis") or [f"e{i}" for i in range(dim)]
        mult = obj.get("mult", [])
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise AlgebraParseError(f"malformed algebra object: {exc}") from exc
    if len(basis) != dim:
        raise AlgebraParseError(f"basis has {len(basis)} names but dim is {dim}")
    entries = []
    seen = set()
    for idx, entry in enumerate(mult):
        if not (isinstance(entry, list) and len(entry) == 4):
            raise AlgebraParseError(f"mult entry #{idx} must be [i, j, k, scalar]: {entry!r}")
        i, j, k, c = entry
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in (i, j, k)):
            raise AlgebraParseError(f"mult entry #{idx} has non-integer indices: {entry!r}")
        if not all(0 <= x < dim for x in (i, j, k)):
            raise AlgebraParseError(f"mult entry #{idx} index out of range 0..{dim - 1}: {entry!r}")
        if (i, j, k) in seen:
            raise AlgebraParseError(f"duplicate mult entry for triple {(i, j, k)}")
        seen.add((i, j, k))
        try:
            value = field.parse(str(c))
        except (ScalarParseError, ZeroDivisionError, ValueError) as exc:
            raise AlgebraParseError(f"mult entry #{idx}: bad scalar {c!r}: {exc}") from exc
        entries.append((i, j, k, value))
    return Algebra(field, basis, entries, tag=_tag_from_json(obj.get("tags"), field, dim))


def _tag_from_json(tags, field, dim):
    """Rebuild named subspaces written by ``construct``; ingredient parts are not serialized."""
    if not tags:
        return None
    from .constructions import ConstructionTag

    try:
        subspaces = {
            name: Subspace(field, dim, [tuple(field.parse(str(c)) for c in v) for v in vecs])
            for name, vecs in tags.get("subspaces", {}).items()
        }
    except (ScalarParseError, ValueError, TypeError, AttributeError) as exc:
        raise AlgebraParseError(f"malformed tags: {exc}") from exc
    return ConstructionTag("Loaded", {"kind": tags.get("kind")}, subspaces)


def loads(text: str) -> Algebra:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise AlgebraParseError(exc.msg, exc.lineno, exc.colno) from exc
    if not isinstance(obj, dict):
        raise AlgebraParseError("top-level value must be an object", 1, 1)
    return from_json(obj)


def load(path) -> Algebra:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def save(A: Algebra, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(A))
