"""Exact dense linear algebra: matrices, row reduction, kernels, subspaces.

Vectors are tuples of field elements.  Matrices act on column vectors;
``Matrix.rows`` is row-major.
"""

from __future__ import annotations

from typing import Any, Iterable, Sequence

from .fields import Field

Vector = tuple


class DimensionError(ValueError):
    pass


class Matrix:
    """Immutable dense matrix over one field."""

    __slots__ = ("field", "rows", "nrows", "ncols")

    def __init__(self, field: Field, rows: Iterable[Sequence[Any]], ncols: int | None = None):
        self.field = field
        self.rows = tuple(tuple(r) for r in rows)
        self.nrows = len(self.rows)
        if ncols is None:
            if not self.rows:
                raise DimensionError("ncols is required for a matrix with no rows")
            ncols = len(self.rows[0])
        self.ncols = ncols
        if any(len(r) != ncols for r in self.rows):
            raise DimensionError("ragged matrix rows")

    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int) -> "Matrix":
        z = field.zero
        return cls(field, [[z] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        z, o = field.zero, field.one
        return cls(field, [[o if i == j else z for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_columns(cls, field: Field, columns: Sequence[Sequence[Any]], nrows: int) -> "Matrix":
        return cls(field, [[col[i] for col in columns] for i in range(nrows)], len(columns))

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.ncols)]

    @property
    def T(self) -> "Matrix":
        return Matrix(self.field, [self.column(j) for j in range(self.ncols)], self.nrows)

    def apply(self, v: Sequence[Any]) -> Vector:
        if len(v) != self.ncols:
            raise DimensionError(f"vector of length {len(v)} for {self.nrows}x{self.ncols} matrix")
        z = self.field.zero
        nz = [(j, x) for j, x in enumerate(v) if x]
        out = []
        for r in self.rows:
            acc = z
            for j, x in nz:
                a = r[j]
                if a:
                    acc = acc + a * x
            out.append(acc)
        return tuple(out)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        cols = [other.column(j) for j in range(other.ncols)]
        return Matrix.from_columns(self.field, [self.apply(c) for c in cols], self.nrows)

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise DimensionError("shape mismatch")
        return Matrix(self.field, [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise DimensionError("shape mismatch")
        return Matrix(self.field, [[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols)

    def __neg__(self) -> "Matrix":
        return Matrix(self.field, [[-a for a in r] for r in self.rows], self.ncols)

    def scale(self, c: Any) -> "Matrix":
        return Matrix(self.field, [[c * a for a in r] for r in self.rows], self.ncols)

    def map(self, fn) -> "Matrix":
        return Matrix(self.field, [[fn(a) for a in r] for r in self.rows], self.ncols)

    def is_zero(self) -> bool:
        return not any(a for r in self.rows for a in r)

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.nrows != other.nrows:
            raise DimensionError("row count mismatch")
        return Matrix(self.field, [r + s for r, s in zip(self.rows, other.rows)], self.ncols + other.ncols)

    def vstack(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.ncols:
            raise DimensionError("column count mismatch")
        return Matrix(self.field, self.rows + other.rows, self.ncols)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Matrix) and self.shape == other.shape and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.shape, self.rows))

    def __repr__(self) -> str:
        f = self.field.format
        body = "; ".join(", ".join(f(a) for a in r) for r in self.rows)
        return f"Matrix[{self.nrows}x{self.ncols}]({body})"


def _reduce_rows(field: Field, rows: Iterable[Sequence[Any]], ncols: int) -> tuple[list[list[Any]], list[int]]:
    """Online Gauss-Jordan: reduced nonzero rows sorted by pivot, and pivots."""
    one = field.one
    piv_rows: dict[int, list[Any]] = {}
    for src in rows:
        row = list(src)
        for pc, prow in piv_rows.items():
            c = row[pc]
            if c:
                for j in range(ncols):
                    b = prow[j]
                    if b:
                        row[j] = row[j] - c * b
        lead = next((j for j in range(ncols) if row[j]), None)
        if lead is None:
            continue
        inv = one / row[lead]
        if inv != one:
            row = [x * inv if x else x for x in row]
        for pc, prow in piv_rows.items():
            c = prow[lead]
            if c:
                for j in range(ncols):
                    b = row[j]
                    if b:
                        prow[j] = prow[j] - c * b
        piv_rows[lead] = row
    pivots = sorted(piv_rows)
    return [piv_rows[p] for p in pivots], pivots


def rref(m: Matrix) -> tuple[Matrix, list[int], int]:
    """Reduced row-echelon form, pivot columns and rank."""
    reduced, pivots = _reduce_rows(m.field, m.rows, m.ncols)
    z = m.field.zero
    padded = reduced + [[z] * m.ncols for _ in range(m.nrows - len(reduced))]
    return Matrix(m.field, padded, m.ncols), pivots, len(pivots)


def rank(m: Matrix) -> int:
    return len(_reduce_rows(m.field, m.rows, m.ncols)[1])


def _nullspace_vectors(field: Field, reduced: list[list[Any]], pivots: list[int], ncols: int) -> list[Vector]:
    free = [j for j in range(ncols) if j not in set(pivots)]
    z, one = field.zero, field.one
    out = []
    for f in free:
        v = [z] * ncols
        v[f] = one
        for row, pc in zip(reduced, pivots):
            if row[f]:
                v[pc] = -row[f]
        out.append(tuple(v))
    return out


def kernel(m: Matrix) -> "Subspace":
    """``{v : m v = 0}`` as a canonical subspace."""
    reduced, pivots = _reduce_rows(m.field, m.rows, m.ncols)
    return Subspace(m.field, m.ncols, _nullspace_vectors(m.field, reduced, pivots, m.ncols))


def kernel_of_rows(field: Field, rows: Iterable[Sequence[Any]], ncols: int) -> "Subspace":
    """Kernel of the linear system whose equations are ``rows``; avoids building a Matrix."""
    reduced, pivots = _reduce_rows(field, rows, ncols)
    return Subspace(field, ncols, _nullspace_vectors(field, reduced, pivots, ncols))


def solve(m: Matrix, b: Sequence[Any]) -> Vector | None:
    """One solution of ``m x = b`` (free variables set to zero), or None."""
    if len(b) != m.nrows:
        raise DimensionError("right-hand side length does not match row count")
    aug = [list(r) + [bi] for r, bi in zip(m.rows, b)]
    reduced, pivots = _reduce_rows(m.field, aug, m.ncols + 1)
    if pivots and pivots[-1] == m.ncols:
        return None
    x = [m.field.zero] * m.ncols
    for row, pc in zip(reduced, pivots):
        x[pc] = row[m.ncols]
    return tuple(x)


def inverse(m: Matrix) -> Matrix | None:
    if m.nrows != m.ncols:
        raise DimensionError("inverse of a non-square matrix")
    n = m.nrows
    ident = Matrix.identity(m.field, n)
    aug = [list(r) + list(e) for r, e in zip(m.rows, ident.rows)]
    reduced, pivots = _reduce_rows(m.field, aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(pivots) != n:
        return None
    return Matrix(m.field, [row[n:] for row in reduced], n)


class Subspace:
    """Linear subspace of ``field^ambient_dim`` held as an RREF basis.

    The canonical basis makes ``==`` a test of equality of spans.
    """

    __slots__ = ("field", "ambient_dim", "basis", "pivots")

    def __init__(self, field: Field, ambient_dim: int, vectors: Iterable[Sequence[Any]] = ()):
        self.field = field
        self.ambient_dim = ambient_dim
        vecs = [tuple(v) for v in vectors]
        for v in vecs:
            if len(v) != ambient_dim:
                raise DimensionError(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
        reduced, pivots = _reduce_rows(field, vecs, ambient_dim)
        self.basis = tuple(tuple(r) for r in reduced)
        self.pivots = tuple(pivots)

    @classmethod
    def zero(cls, field: Field, n: int) -> "Subspace":
        return cls(field, n)

    @classmethod
    def full(cls, field: Field, n: int) -> "Subspace":
        return cls(field, n, Matrix.identity(field, n).rows)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def codim(self) -> int:
        return self.ambient_dim - self.dim

    def _check(self, other: "Subspace") -> None:
        if self.ambient_dim != other.ambient_dim or self.field != other.field:
            raise DimensionError(
                f"ambient mismatch: {self.ambient_dim} over {self.field} vs {other.ambient_dim} over {other.field}"
            )

    def reduce(self, v: Sequence[Any]) -> Vector:
        """Canonical representative of ``v`` modulo this subspace (zero on pivot columns)."""
        if len(v) != self.ambient_dim:
            raise DimensionError("vector length does not match ambient dimension")
        out = list(v)
        for row, pc in zip(self.basis, self.pivots):
            c = out[pc]
            if c:
                for j in range(pc, self.ambient_dim):
                    b = row[j]
                    if b:
                        out[j] = out[j] - c * b
        return tuple(out)

    def contains(self, v: "Sequence[Any] | Subspace") -> bool:
        if isinstance(v, Subspace):
            self._check(v)
            return all(self.contains(w) for w in v.basis)
        return not any(self.reduce(v))

    __contains__ = contains

    def coordinates(self, v: Sequence[Any]) -> Vector:
        """Coefficients of ``v`` in the RREF basis; ``v`` must lie in the subspace."""
        if not self.contains(v):
            raise ValueError("vector is not in the subspace")
        return tuple(v[pc] for pc in self.pivots)

    def complement_coords(self) -> list[int]:
        piv = set(self.pivots)
        return [j for j in range(self.ambient_dim) if j not in piv]

    def sum(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace(self.field, self.ambient_dim, self.basis + other.basis)

    __add__ = sum

    def intersect(self, other: "Subspace") -> "Subspace":
        """Solve ``a U = b V`` via the kernel of the stacked system."""
        self._check(other)
        if not self.basis or not other.basis:
            return Subspace.zero(self.field, self.ambient_dim)
        r = self.dim
        stacked = [list(self.basis[i]) for i in range(r)] + [[-x for x in w] for w in other.basis]
        # columns of the system are the stacked basis vectors
        system = Matrix(self.field, stacked, self.ambient_dim).T
        null = kernel(system)
        z = self.field.zero
        vecs = []
        for coeffs in null.basis:
            v = [z] * self.ambient_dim
            for i in range(r):
                c = coeffs[i]
                if c:
                    for j, b in enumerate(self.basis[i]):
                        if b:
                            v[j] = v[j] + c * b
            vecs.append(v)
        return Subspace(self.field, self.ambient_dim, vecs)

    __and__ = intersect

    def __le__(self, other: "Subspace") -> bool:
        return other.contains(self)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Subspace)
            and self.ambient_dim == other.ambient_dim
            and self.basis == other.basis
        )

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.basis))

    def matrix(self) -> Matrix:
        return Matrix(self.field, self.basis, self.ambient_dim)

    def image(self, m: Matrix) -> "Subspace":
        return Subspace(self.field, m.nrows, [m.apply(v) for v in self.basis])

    def elements(self):
        """Enumerate all vectors (finite fields only)."""
        import itertools

        scalars = list(self.field.elements())
        z = self.field.zero
        for coeffs in itertools.product(scalars, repeat=self.dim):
            v = [z] * self.ambient_dim
            for c, b in zip(coeffs, self.basis):
                if c:
                    v = [x + c * y for x, y in zip(v, b)]
            yield tuple(v)

    def __repr__(self) -> str:
        f = self.field.format
        rows = ", ".join("(" + ", ".join(f(a) for a in r) + ")" for r in self.basis)
        return f"Subspace(dim={self.dim}/{self.ambient_dim}: {rows})"


def subspace_sum(u: Subspace, v: Subspace) -> Subspace:
    return u.sum(v)


def subspace_intersect(u: Subspace, v: Subspace) -> Subspace:
    return u.intersect(v)


def subspace_contains(u: Subspace, v) -> bool:
    return u.contains(v)
