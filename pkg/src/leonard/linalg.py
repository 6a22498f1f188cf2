"""Dense exact linear algebra: polynomials, matrices, canonical subspaces.

Dimensions here are tiny (a Leonard system of diameter d lives in
dimension d+1, with d rarely above 10), so everything is written for
clarity and exactness rather than asymptotics: dense coefficient lists,
Gauss-Jordan elimination, Lagrange products.

Subspaces are stored in a reduced column-echelon canonical form, so two
subspaces are equal as sets exactly when their stored bases are equal
entry by entry.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .fields import Field, FieldError, Scalar


class SingularMatrixError(FieldError):
    """Inversion was requested for a singular matrix."""


class DegreeError(ValueError):
    """A polynomial had the wrong degree for the requested operation."""


class Poly:
    """Univariate polynomial, dense ascending coefficients, exact scalars.

    The zero polynomial has an empty coefficient tuple and ``degree``
    None -- a sentinel, deliberately not a number.
    """

    __slots__ = ("coeffs", "field")

    def __init__(self, coeffs: tuple, field: Field):
        self.coeffs = coeffs
        self.field = field

    @classmethod
    def of(cls, field: Field, coeffs: Iterable) -> "Poly":
        cs = [field(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        return cls(tuple(cs), field)

    @classmethod
    def zero(cls, field: Field) -> "Poly":
        return cls((), field)

    @classmethod
    def one(cls, field: Field) -> "Poly":
        return cls((field.one,), field)

    @classmethod
    def constant(cls, field: Field, c) -> "Poly":
        return cls.of(field, [c])

    @classmethod
    def x(cls, field: Field) -> "Poly":
        return cls((field.zero, field.one), field)

    @property
    def degree(self) -> int | None:
        return len(self.coeffs) - 1 if self.coeffs else None

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.field.one

    def leading(self) -> Scalar:
        if not self.coeffs:
            raise DegreeError("the zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def monic(self) -> "Poly":
        lead = self.leading()
        if lead == self.field.one:
            return self
        return self.scale(self.field.one / lead)

    def scale(self, c) -> "Poly":
        c = self.field(c)
        if not c:
            return Poly((), self.field)
        return Poly(tuple(c * a for a in self.coeffs), self.field)

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        while out and not out[-1]:
            out.pop()
        return Poly(tuple(out), self.field)

    def __neg__(self) -> "Poly":
        return Poly(tuple(-c for c in self.coeffs), self.field)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        if self.is_zero or other.is_zero:
            return Poly((), self.field)
        zero = self.field.zero
        out = [zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(tuple(out), self.field)

    def __call__(self, x) -> Scalar:
        x = self.field(x)
        acc = self.field.zero
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        return (isinstance(other, Poly)
                and self.field == other.field
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __repr__(self):
        if not self.coeffs:
            return "Poly(0)"
        terms = " + ".join(f"({c})*x^{i}" for i, c in enumerate(self.coeffs) if c)
        return f"Poly({terms})"


def tau_eta_polys(field: Field, eigs: Sequence, i: int) -> tuple[Poly, Poly]:
    """The degree-i monic products built from an eigenvalue ordering.

    The first polynomial accumulates factors (x - e_0)...(x - e_{i-1})
    from the front of the ordering, the second accumulates
    (x - e_d)...(x - e_{d-i+1}) from the back.  Both are monic of
    degree i; for i = 0 both are 1.
    """
    eigs = [field(e) for e in eigs]
    if len(set(eigs)) != len(eigs):
        raise ValueError("eigenvalues must be mutually distinct")
    if not 0 <= i <= len(eigs) - 1:
        raise IndexError(f"index {i} out of range for {len(eigs)} eigenvalues")
    return (_product_ladder(field, eigs)[i],
            _product_ladder(field, list(reversed(eigs)))[i])


def _product_ladder(field: Field, eigs: Sequence) -> list[Poly]:
    """[1, (x-e_0), (x-e_0)(x-e_1), ...] -- all d+1 prefixes."""
    out = [Poly.one(field)]
    for e in eigs[:-1]:
        factor = Poly.of(field, [-field(e), field.one])
        out.append(out[-1] * factor)
    return out


def tau_ladder(field: Field, eigs: Sequence) -> list[Poly]:
    return _product_ladder(field, [field(e) for e in eigs])


def eta_ladder(field: Field, eigs: Sequence) -> list[Poly]:
    return _product_ladder(field, [field(e) for e in reversed(eigs)])


class Matrix:
    """Immutable dense matrix over an exact field."""

    __slots__ = ("rows", "field")

    def __init__(self, rows: tuple, field: Field):
        self.rows = rows
        self.field = field

    @classmethod
    def build(cls, field: Field, rows: Iterable[Iterable]) -> "Matrix":
        data = tuple(tuple(field(e) for e in row) for row in rows)
        if data and any(len(r) != len(data[0]) for r in data):
            raise ValueError("ragged rows")
        return cls(data, field)

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        one, zero = field.one, field.zero
        return cls(tuple(tuple(one if i == j else zero for j in range(n))
                         for i in range(n)), field)

    @classmethod
    def zero(cls, field: Field, nrows: int, ncols: int | None = None) -> "Matrix":
        ncols = nrows if ncols is None else ncols
        z = field.zero
        return cls(tuple(tuple(z for _ in range(ncols))
                         for _ in range(nrows)), field)

    @classmethod
    def from_columns(cls, field: Field, cols: Sequence[Sequence]) -> "Matrix":
        return cls.build(field, zip(*cols)) if cols else cls((), field)

    @classmethod
    def diagonal(cls, field: Field, entries: Sequence) -> "Matrix":
        n = len(entries)
        z = field.zero
        return cls(tuple(tuple(field(entries[i]) if i == j else z
                               for j in range(n)) for i in range(n)), field)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def entry(self, i: int, j: int) -> Scalar:
        return self.rows[i][j]

    def column(self, j: int) -> tuple:
        return tuple(row[j] for row in self.rows)

    def columns(self) -> tuple:
        return tuple(zip(*self.rows)) if self.rows else ()

    def transpose(self) -> "Matrix":
        return Matrix(self.columns(), self.field)

    def __add__(self, other: "Matrix") -> "Matrix":
        return Matrix(tuple(tuple(a + b for a, b in zip(ra, rb))
                            for ra, rb in zip(self.rows, other.rows)),
                      self.field)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return Matrix(tuple(tuple(a - b for a, b in zip(ra, rb))
                            for ra, rb in zip(self.rows, other.rows)),
                      self.field)

    def __neg__(self) -> "Matrix":
        return Matrix(tuple(tuple(-a for a in r) for r in self.rows),
                      self.field)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError("dimension mismatch in matrix product")
        cols = other.columns()
        dot = self.field.dot
        return Matrix(tuple(tuple(dot(row, col) for col in cols)
                            for row in self.rows), self.field)

    def scale(self, c) -> "Matrix":
        c = self.field(c)
        return Matrix(tuple(tuple(c * a for a in r) for r in self.rows),
                      self.field)

    def apply(self, vec: Sequence) -> tuple:
        dot = self.field.dot
        return tuple(dot(row, vec) for row in self.rows)

    def trace(self) -> Scalar:
        if not self.is_square:
            raise ValueError("trace of a non-square matrix")
        acc = self.field.zero
        for i, row in enumerate(self.rows):
            acc = acc + row[i]
        return acc

    @property
    def is_zero(self) -> bool:
        return all(not e for row in self.rows for e in row)

    def __eq__(self, other):
        return (isinstance(other, Matrix)
                and self.field == other.field
                and self.rows == other.rows)

    def __hash__(self):
        return hash((self.field, self.rows))

    def __repr__(self):
        body = "; ".join(", ".join(str(e) for e in row) for row in self.rows)
        return f"Matrix[{body}]"


def trace_product(x: Matrix, y: Matrix) -> Scalar:
    """tr(X Y) without forming the product."""
    acc = x.field.zero
    ycols = y.columns()
    for row, col in zip(x.rows, ycols):
        acc = acc + x.field.dot(row, col)
    return acc


def mat_inv(m: Matrix) -> Matrix:
    """Exact inverse by Gauss-Jordan elimination."""
    if not m.is_square:
        raise SingularMatrixError("only square matrices can be inverted")
    n = m.nrows
    field = m.field
    one = field.one
    work = [list(row) for row in m.rows]
    inv = [list(row) for row in Matrix.identity(field, n).rows]
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if work[r][col]), None)
        if pivot_row is None:
            raise SingularMatrixError("matrix is singular")
        if pivot_row != col:
            work[col], work[pivot_row] = work[pivot_row], work[col]
            inv[col], inv[pivot_row] = inv[pivot_row], inv[col]
        scale = one / work[col][col]
        work[col] = [scale * e for e in work[col]]
        inv[col] = [scale * e for e in inv[col]]
        for r in range(n):
            if r == col or not work[r][col]:
                continue
            factor = work[r][col]
            work[r] = [a - factor * b for a, b in zip(work[r], work[col])]
            inv[r] = [a - factor * b for a, b in zip(inv[r], inv[col])]
    return Matrix(tuple(tuple(row) for row in inv), field)


def poly_apply(p: Poly, m: Matrix) -> Matrix:
    """Evaluate a polynomial at a square matrix by Horner's scheme."""
    if not m.is_square:
        raise ValueError("polynomial evaluation needs a square matrix")
    if p.is_zero:
        return Matrix.zero(m.field, m.nrows)
    ident = Matrix.identity(m.field, m.nrows)
    acc = ident.scale(p.coeffs[-1])
    for c in reversed(p.coeffs[:-1]):
        acc = acc @ m
        if c:
            acc = acc + ident.scale(c)
    return acc


def expand_in_poly_basis(target: Poly, basis: Sequence[Poly]) -> list:
    """Coordinates of ``target`` in a degree-graded polynomial basis.

    The basis must have degrees exactly 0, 1, ..., k in order, which
    makes the change of basis triangular; coefficients come out by back
    substitution from the top degree.
    """
    field = target.field
    for k, b in enumerate(basis):
        if b.degree != k:
            raise DegreeError(
                f"basis polynomial {k} has degree {b.degree}, expected {k}")
    k_max = len(basis) - 1
    if not target.is_zero and target.degree > k_max:
        raise DegreeError(
            f"target degree {target.degree} exceeds basis degree {k_max}")
    residue = list(target.coeffs) + [field.zero] * (k_max + 1 - len(target.coeffs))
    out = [field.zero] * len(basis)
    for k in range(k_max, -1, -1):
        c = residue[k] / basis[k].coeffs[k]
        out[k] = c
        if c:
            for i, b in enumerate(basis[k].coeffs):
                residue[i] = residue[i] - c * b
    if any(residue):
        raise ArithmeticError("expansion left a nonzero residue")
    return out


def _rref(rows: list[list], field: Field) -> tuple[list[list], list[int]]:
    """Reduced row echelon form in place; returns (nonzero rows, pivot cols)."""
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots: list[int] = []
    rank = 0
    for col in range(ncols):
        pivot_row = next((r for r in range(rank, len(rows)) if rows[r][col]),
                         None)
        if pivot_row is None:
            continue
        rows[rank], rows[pivot_row] = rows[pivot_row], rows[rank]
        scale = field.one / rows[rank][col]
        rows[rank] = [scale * e for e in rows[rank]]
        for r in range(len(rows)):
            if r == rank or not rows[r][col]:
                continue
            factor = rows[r][col]
            rows[r] = [a - factor * b for a, b in zip(rows[r], rows[rank])]
        pivots.append(col)
        rank += 1
        if rank == len(rows):
            break
    return rows[:rank], pivots


class Subspace:
    """A subspace of K^n in reduced column-echelon canonical form.

    The stored basis columns have their first nonzero entries (the
    pivots) equal to 1, at strictly increasing row indices, and each
    pivot row is zero in every other basis column.  This form is unique
    for the subspace, so set equality is entry-wise equality.
    """

    __slots__ = ("ambient", "cols", "field")

    def __init__(self, ambient: int, cols: tuple, field: Field):
        self.ambient = ambient
        self.cols = cols
        self.field = field

    @classmethod
    def span(cls, field: Field, ambient: int, vectors: Iterable[Sequence]) -> "Subspace":
        rows = [[field(e) for e in v] for v in vectors]
        for row in rows:
            if len(row) != ambient:
                raise ValueError("vector length differs from ambient dimension")
        reduced, _ = _rref(rows, field)
        return cls(ambient, tuple(tuple(r) for r in reduced), field)

    @classmethod
    def zero(cls, field: Field, ambient: int) -> "Subspace":
        return cls(ambient, (), field)

    @classmethod
    def full(cls, field: Field, ambient: int) -> "Subspace":
        return cls.span(field, ambient,
                        Matrix.identity(field, ambient).rows)

    @property
    def dim(self) -> int:
        return len(self.cols)

    @property
    def is_zero(self) -> bool:
        return not self.cols

    def basis_matrix(self) -> Matrix:
        """Ambient x dim matrix whose columns are the canonical basis."""
        return Matrix.from_columns(self.field, self.cols)

    def contains(self, vector: Sequence) -> bool:
        vec = [self.field(e) for e in vector]
        for col in self.cols:
            pivot = next(i for i, e in enumerate(col) if e)
            c = vec[pivot]
            if c:
                vec = [a - c * b for a, b in zip(vec, col)]
        return not any(vec)

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(c) for c in other.cols)

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check_ambient(other)
        return Subspace.span(self.field, self.ambient,
                             list(self.cols) + list(other.cols))

    def intersect(self, other: "Subspace") -> "Subspace":
        """Canonical intersection, via the kernel of the stacked basis."""
        self._check_ambient(other)
        if self.is_zero or other.is_zero:
            return Subspace.zero(self.field, self.ambient)
        stacked = Matrix.from_columns(self.field,
                                      list(self.cols) + list(other.cols))
        ker = kernel(stacked)
        a = self.dim
        vectors = []
        for kvec in ker.cols:
            coeffs = kvec[:a]
            vec = [self.field.zero] * self.ambient
            for c, col in zip(coeffs, self.cols):
                if c:
                    vec = [v + c * e for v, e in zip(vec, col)]
            vectors.append(vec)
        return Subspace.span(self.field, self.ambient, vectors)

    def image(self, m: Matrix) -> "Subspace":
        """The image of this subspace under a linear map."""
        return Subspace.span(self.field, m.nrows,
                             [m.apply(c) for c in self.cols])

    def _check_ambient(self, other: "Subspace") -> None:
        if self.ambient != other.ambient or self.field != other.field:
            raise ValueError("subspaces live in different ambient spaces")

    def __eq__(self, other):
        return (isinstance(other, Subspace)
                and self.ambient == other.ambient
                and self.field == other.field
                and self.cols == other.cols)

    def __hash__(self):
        return hash((self.ambient, self.field, self.cols))

    def __repr__(self):
        return f"Subspace(dim={self.dim} of {self.ambient})"


def subspace_intersect(u: Subspace, w: Subspace) -> Subspace:
    return u.intersect(w)


def kernel(m: Matrix) -> Subspace:
    """The null space of a matrix, as a canonical subspace of K^ncols."""
    field = m.field
    rows = [list(r) for r in m.rows]
    reduced, pivots = _rref(rows, field)
    n = m.ncols
    free_cols = [j for j in range(n) if j not in pivots]
    vectors = []
    for f in free_cols:
        vec = [field.zero] * n
        vec[f] = field.one
        for r, p in enumerate(pivots):
            vec[p] = -reduced[r][f]
        vectors.append(vec)
    return Subspace.span(field, n, vectors)


def column_space(m: Matrix) -> Subspace:
    return Subspace.span(m.field, m.nrows, m.columns())
