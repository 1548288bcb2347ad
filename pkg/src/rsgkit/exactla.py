"""Exact linear algebra over the rationals.

Dense matrices with ``fractions.Fraction`` entries and subspaces of Q^n kept
in reduced row echelon form.  The RREF basis is the canonical representative
of a subspace, so subspace equality is plain structural equality and every
value is hashable.  No floating point anywhere; all predicates downstream
(isotropy, coisotropy, Lagrangianity) are exact equalities of subspaces and
depend on that.

All values are immutable and all operations are pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

Q = Fraction

Vector = tuple[Q, ...]


class ExactLinalgError(ValueError):
    """Base class for errors raised by this module."""


class DimensionMismatch(ExactLinalgError):
    """Operands live in incompatible spaces."""


class NotContained(ExactLinalgError):
    """A subspace expected to contain another does not."""


class SingularMatrix(ExactLinalgError):
    """Attempt to invert a singular matrix."""


def as_q(x) -> Q:
    """Coerce ints, strings like ``"3/4"`` and Fractions to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


def vec(*xs) -> Vector:
    return tuple(as_q(x) for x in xs)


@dataclass(frozen=True)
class Matrix:
    """Immutable dense matrix over Q (row-major)."""

    rows: int
    cols: int
    entries: tuple[tuple[Q, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows:
            raise DimensionMismatch("row count does not match entries")
        for r in self.entries:
            if len(r) != self.cols:
                raise DimensionMismatch("ragged matrix rows")

    @staticmethod
    def from_rows(rows: Sequence[Sequence]) -> "Matrix":
        ent = tuple(tuple(as_q(x) for x in r) for r in rows)
        n_rows = len(ent)
        n_cols = len(ent[0]) if ent else 0
        return Matrix(n_rows, n_cols, ent)

    @staticmethod
    def zero(rows: int, cols: int) -> "Matrix":
        z = Q(0)
        return Matrix(rows, cols, tuple(tuple(z for _ in range(cols)) for _ in range(rows)))

    @staticmethod
    def identity(n: int) -> "Matrix":
        return Matrix(n, n, tuple(tuple(Q(1 if i == j else 0) for j in range(n)) for i in range(n)))

    @staticmethod
    def diag(values: Sequence) -> "Matrix":
        vals = [as_q(v) for v in values]
        n = len(vals)
        return Matrix(n, n, tuple(tuple(vals[i] if i == j else Q(0) for j in range(n)) for i in range(n)))

    def __getitem__(self, ij: tuple[int, int]) -> Q:
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> Vector:
        return self.entries[i]

    def col(self, j: int) -> Vector:
        return tuple(r[j] for r in self.entries)

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows, tuple(zip(*self.entries)) if self.entries else ())

    def __add__(self, other: "Matrix") -> "Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("matrix addition shape mismatch")
        return Matrix(self.rows, self.cols, tuple(
            tuple(a + b for a, b in zip(ra, rb)) for ra, rb in zip(self.entries, other.entries)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + other.scale(Q(-1))

    def scale(self, c) -> "Matrix":
        c = as_q(c)
        return Matrix(self.rows, self.cols, tuple(tuple(c * x for x in r) for r in self.entries))

    def __neg__(self) -> "Matrix":
        return self.scale(Q(-1))

    def __mul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise DimensionMismatch("matrix product shape mismatch")
        ot = other.transpose().entries
        return Matrix(self.rows, other.cols, tuple(
            tuple(sum((a * b for a, b in zip(row, col)), Q(0)) for col in ot)
            for row in self.entries))

    def apply(self, v: Sequence) -> Vector:
        """Matrix-vector product (v as a column)."""
        v = tuple(as_q(x) for x in v)
        if len(v) != self.cols:
            raise DimensionMismatch("vector length does not match columns")
        return tuple(sum((a * b for a, b in zip(row, v)), Q(0)) for row in self.entries)

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.entries for x in r)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.rows != other.rows:
            raise DimensionMismatch("hstack row mismatch")
        return Matrix(self.rows, self.cols + other.cols,
                      tuple(ra + rb for ra, rb in zip(self.entries, other.entries)))

    def vstack(self, other: "Matrix") -> "Matrix":
        if self.cols != other.cols:
            raise DimensionMismatch("vstack column mismatch")
        return Matrix(self.rows + other.rows, self.cols, self.entries + other.entries)

    def take_cols(self, idx: Sequence[int]) -> "Matrix":
        return Matrix(self.rows, len(idx), tuple(tuple(r[j] for j in idx) for r in self.entries))

    def permute_cols(self, perm: Sequence[int]) -> "Matrix":
        """Column j of the result is column perm[j] of self."""
        return self.take_cols(perm)

    def inverse(self) -> "Matrix":
        if not self.is_square():
            raise DimensionMismatch("only square matrices invert")
        n = self.rows
        aug = [list(r) + [Q(1 if i == j else 0) for j in range(n)]
               for i, r in enumerate(self.entries)]
        red, rank = _rref_rows(aug)
        if rank < n:
            raise SingularMatrix("matrix is singular")
        return Matrix.from_rows([r[n:] for r in red])

    def rank(self) -> int:
        return rref(self)[1]

    def to_json(self) -> list[list[str]]:
        return [[str(x) for x in r] for r in self.entries]

    @staticmethod
    def from_json(data: Sequence[Sequence]) -> "Matrix":
        return Matrix.from_rows([[as_q(x) for x in r] for r in data])

    @staticmethod
    def block_diag(blocks: Sequence["Matrix"]) -> "Matrix":
        rows = sum(b.rows for b in blocks)
        cols = sum(b.cols for b in blocks)
        out = [[Q(0)] * cols for _ in range(rows)]
        r0 = c0 = 0
        for b in blocks:
            for i in range(b.rows):
                for j in range(b.cols):
                    out[r0 + i][c0 + j] = b.entries[i][j]
            r0 += b.rows
            c0 += b.cols
        return Matrix.from_rows(out)

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in r) for r in self.entries)
        return f"Matrix({self.rows}x{self.cols}: {body})"


def _rref_rows(rows: list[list[Q]]) -> tuple[list[list[Q]], int]:
    """In-place RREF of a list-of-lists; returns (rows, rank)."""
    n_rows = len(rows)
    n_cols = len(rows[0]) if rows else 0
    piv_r = 0
    for c in range(n_cols):
        pivot = None
        for r in range(piv_r, n_rows):
            if rows[r][c] != 0:
                pivot = r
                break
        if pivot is None:
            continue
        rows[piv_r], rows[pivot] = rows[pivot], rows[piv_r]
        inv = Q(1) / rows[piv_r][c]
        if inv != 1:
            rows[piv_r] = [x * inv for x in rows[piv_r]]
        for r in range(n_rows):
            if r != piv_r and rows[r][c] != 0:
                f = rows[r][c]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[piv_r])]
        piv_r += 1
        if piv_r == n_rows:
            break
    return rows, piv_r


def rref(m: Matrix) -> tuple[Matrix, int]:
    """Reduced row echelon form of m and its rank (same shape as m)."""
    rows = [list(r) for r in m.entries]
    red, rank = _rref_rows(rows)
    return Matrix.from_rows(red) if red else m, rank


def pivot_columns(rref_matrix: Matrix, rank: int) -> list[int]:
    pivs = []
    col = 0
    for r in range(rank):
        while rref_matrix.entries[r][col] == 0:
            col += 1
        pivs.append(col)
        col += 1
    return pivs


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^ambient_dim, basis rows in RREF with no zero rows.

    Two subspaces are equal exactly when their canonical bases coincide.
    """

    ambient_dim: int
    basis: Matrix

    def __post_init__(self):
        if self.basis.cols != self.ambient_dim:
            raise DimensionMismatch("basis width differs from ambient dimension")

    @staticmethod
    def from_rows(ambient_dim: int, rows: Sequence[Sequence]) -> "Subspace":
        if not rows:
            return Subspace.zero(ambient_dim)
        m = Matrix.from_rows(rows)
        if m.cols != ambient_dim:
            raise DimensionMismatch("vector length differs from ambient dimension")
        red, rank = rref(m)
        return Subspace(ambient_dim, Matrix.from_rows(red.entries[:rank]) if rank
                        else Matrix(0, ambient_dim, ()))

    @staticmethod
    def from_matrix(m: Matrix) -> "Subspace":
        return Subspace.from_rows(m.cols, m.entries)

    @staticmethod
    def zero(ambient_dim: int) -> "Subspace":
        return Subspace(ambient_dim, Matrix(0, ambient_dim, ()))

    @staticmethod
    def full(ambient_dim: int) -> "Subspace":
        return Subspace(ambient_dim, Matrix.identity(ambient_dim))

    @property
    def dim(self) -> int:
        return self.basis.rows

    def basis_rows(self) -> tuple[Vector, ...]:
        return self.basis.entries

    def pivots(self) -> list[int]:
        return pivot_columns(self.basis, self.dim)

    def contains(self, v: Sequence) -> bool:
        """Membership test by reduction against the RREF basis."""
        v = [as_q(x) for x in v]
        if len(v) != self.ambient_dim:
            raise DimensionMismatch("vector length differs from ambient dimension")
        for row, p in zip(self.basis.entries, self.pivots()):
            if v[p] != 0:
                f = v[p]
                v = [x - f * y for x, y in zip(v, row)]
        return all(x == 0 for x in v)

    def coords_of(self, v: Sequence) -> Vector:
        """Coefficients of v in the RREF basis (requires membership).

        For an RREF basis the coefficient of row i is just the entry of v at
        the i-th pivot column.
        """
        v = tuple(as_q(x) for x in v)
        if not self.contains(v):
            raise NotContained("vector not in subspace")
        return tuple(v[p] for p in self.pivots())

    def contains_subspace(self, other: "Subspace") -> bool:
        if other.ambient_dim != self.ambient_dim:
            raise DimensionMismatch("ambient dimensions differ")
        return all(self.contains(r) for r in other.basis.entries)

    def linear_image(self, m: Matrix) -> "Subspace":
        """Image of the subspace under the linear map given by m."""
        if m.cols != self.ambient_dim:
            raise DimensionMismatch("map domain differs from ambient dimension")
        return Subspace.from_rows(m.rows, [m.apply(r) for r in self.basis.entries])

    def to_json(self) -> dict:
        return {"ambient_dim": self.ambient_dim, "basis": self.basis.to_json()}

    def __repr__(self) -> str:
        return f"Subspace(dim {self.dim} of Q^{self.ambient_dim})"


def kernel(m: Matrix) -> Subspace:
    """Null space of m as a subspace of Q^cols."""
    red, rank = rref(m)
    pivs = pivot_columns(red, rank)
    piv_set = set(pivs)
    free = [c for c in range(m.cols) if c not in piv_set]
    rows = []
    for f in free:
        v = [Q(0)] * m.cols
        v[f] = Q(1)
        for r, p in enumerate(pivs):
            v[p] = -red.entries[r][f]
        rows.append(v)
    return Subspace.from_rows(m.cols, rows)


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch("ambient dimensions differ")
    return Subspace.from_rows(a.ambient_dim, a.basis.entries + b.basis.entries)


def intersect(a: Subspace, b: Subspace) -> Subspace:
    """A cap B via the kernel of the concatenated coefficient map."""
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch("ambient dimensions differ")
    if a.dim == 0 or b.dim == 0:
        return Subspace.zero(a.ambient_dim)
    # Solve u*A.basis - v*B.basis = 0 in the coefficients (u, v).
    m = a.basis.transpose().hstack(b.basis.transpose().scale(Q(-1)))
    k = kernel(m)
    rows = []
    for coeffs in k.basis.entries:
        u = coeffs[: a.dim]
        rows.append(tuple(
            sum((ui * x for ui, x in zip(u, (row[j] for row in a.basis.entries))), Q(0))
            for j in range(a.ambient_dim)))
    return Subspace.from_rows(a.ambient_dim, rows)


@dataclass(frozen=True)
class QuotientSpace:
    """Coordinate space ambient/sub with a deterministic section.

    ``section`` maps quotient coordinates back to representatives inside the
    ambient subspace (columns are representative vectors); it is a right
    inverse of the projection returned alongside.
    """

    dim: int
    section: Matrix  # (ambient space dim) x (quotient dim)


def quotient(ambient: Subspace, sub: Subspace) -> tuple[QuotientSpace, Matrix]:
    """Quotient ambient/sub with a surjective projection matrix.

    The projection P is defined on all of Q^n; restricted to ``ambient`` its
    kernel is exactly ``sub``.  Representatives are fixed by the non-pivot
    coordinates of sub written in ambient's RREF coordinates, so the output
    is deterministic.
    """
    if ambient.ambient_dim != sub.ambient_dim:
        raise DimensionMismatch("ambient dimensions differ")
    if not ambient.contains_subspace(sub):
        raise NotContained("sub is not contained in ambient")
    n = ambient.ambient_dim
    m_dim = ambient.dim
    # Coordinates of any v in `ambient` are its entries at ambient's pivots.
    amb_pivots = ambient.pivots()
    ext_rows = []
    for p in amb_pivots:
        row = [Q(0)] * n
        row[p] = Q(1)
        ext_rows.append(row)
    ext = Matrix.from_rows(ext_rows) if ext_rows else Matrix(0, n, ())
    # sub in ambient coordinates, RREF'd there.
    sub_coords = Subspace.from_rows(m_dim, [ambient.coords_of(r) for r in sub.basis.entries])
    sub_pivots = sub_coords.pivots()
    non_piv = [j for j in range(m_dim) if j not in set(sub_pivots)]
    k = len(non_piv)
    # reduce: c |-> c - sum_r c[piv_r] * sub_row_r;  reduce(c)_j = c_j - sum_r c[piv_r]*S[r][j]
    red_rows = []
    for j in range(m_dim):
        row = [Q(0)] * m_dim
        row[j] = Q(1)
        for r, p in enumerate(sub_pivots):
            row[p] -= sub_coords.basis.entries[r][j]
        red_rows.append(row)
    reducer = Matrix.from_rows(red_rows) if red_rows else Matrix(0, 0, ())
    if k == 0:
        proj = Matrix(0, n, ())
        return QuotientSpace(0, Matrix(n, 0, tuple(() for _ in range(n)))), proj
    select = Matrix.from_rows([[Q(1 if j == non_piv[i] else 0) for j in range(m_dim)]
                               for i in range(k)])
    proj = select * reducer * ext if m_dim else Matrix(0, n, ())
    # Section: quotient basis vector i represents ambient basis row non_piv[i].
    section_cols = [ambient.basis.entries[j] for j in non_piv]
    section = Matrix.from_rows(section_cols).transpose()
    return QuotientSpace(k, section), proj


def solve(m: Matrix, rhs: Sequence) -> Vector | None:
    """One solution x of m x = rhs, or None if inconsistent.

    Free variables are set to zero, so the solution is deterministic.
    """
    rhs = [as_q(x) for x in rhs]
    if len(rhs) != m.rows:
        raise DimensionMismatch("rhs length differs from row count")
    if m.rows == 0:
        return tuple(Q(0) for _ in range(m.cols))
    aug = [list(r) + [b] for r, b in zip(m.entries, rhs)]
    red, _ = _rref_rows(aug)
    x = [Q(0)] * m.cols
    for r in red:
        lead = next((j for j, v in enumerate(r[:-1]) if v != 0), None)
        if lead is None:
            if r[-1] != 0:
                return None
            continue
        x[lead] = r[-1]
    return tuple(x)
