"""Exact linear algebra over Q and over prime fields.

Everything here is exact: rationals are stdlib Fractions, GF(p) elements are
ints in [0, p).  No floats anywhere.

Conventions
-----------
A Matrix with r rows and c cols represents a linear map K^r -> K^c acting on
row vectors, v |-> v @ M.  kernel(M) lives in K^r, image(M) (the row space)
lives in K^c.  Composition reads left to right: the matrix of f then g is
M_f @ M_g.  This matches right-module actions, which is what the rest of the
library computes with.

Subspaces are stored as reduced row echelon bases, so two equal subspaces are
structurally equal (same tuple of rows).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import LabelError, ShapeError


class Field:
    """Common interface for the two scalar domains."""

    def zero(self):
        raise NotImplementedError

    def one(self):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def from_int(self, n):
        raise NotImplementedError


class RationalField(Field):
    name = "Q"

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return 1 / Fraction(a)

    def from_int(self, n):
        return Fraction(n)

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")


class PrimeField(Field):
    """GF(p) for prime p; elements are ints reduced into [0, p)."""

    def __init__(self, p):
        if p < 2:
            raise ValueError(f"not a prime: {p}")
        k = 2
        while k * k <= p:
            if p % k == 0:
                raise ValueError(f"not a prime: {p}")
            k += 1
        self.p = p
        self.name = f"GF({p})"

    def zero(self):
        return 0

    def one(self):
        return 1

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(a, self.p - 2, self.p)

    def from_int(self, n):
        return n % self.p

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


QQ = RationalField()


_PRIME_FIELDS = {}


def GF(p):
    field = _PRIME_FIELDS.get(p)
    if field is None:
        field = _PRIME_FIELDS[p] = PrimeField(p)
    return field


class Matrix:
    """Dense exact matrix; entries is a tuple of row tuples."""

    __slots__ = ("field", "rows", "cols", "entries")

    def __init__(self, field, rows, cols, entries):
        entries = tuple(tuple(r) for r in entries)
        if len(entries) != rows or any(len(r) != cols for r in entries):
            raise ShapeError(f"expected {rows}x{cols} entries")
        self.field = field
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def zero(cls, field, rows, cols):
        z = field.zero()
        return cls(field, rows, cols, [[z] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, field, n):
        z, o = field.zero(), field.one()
        return cls(field, n, n, [[o if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def from_rows(cls, field, rows, cols=None):
        rows = [list(r) for r in rows]
        if cols is None:
            if not rows:
                raise ShapeError("cannot infer cols from an empty row list")
            cols = len(rows[0])
        return cls(field, len(rows), cols, rows)

    def row(self, i):
        return self.entries[i]

    def transpose(self):
        return Matrix(self.field, self.cols, self.rows,
                      [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def __matmul__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.field != other.field:
            raise ShapeError("field mismatch in matrix product")
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        F = self.field
        z = F.zero()
        out = []
        ot = other.entries
        for arow in self.entries:
            acc = [z] * other.cols
            for k, a in enumerate(arow):
                if a == z:
                    continue
                brow = ot[k]
                acc = [F.add(acc[j], F.mul(a, brow[j])) for j in range(other.cols)]
            out.append(acc)
        return Matrix(F, self.rows, other.cols, out)

    def __add__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if (self.rows, self.cols) != (other.rows, other.cols) or self.field != other.field:
            raise ShapeError("shape or field mismatch in matrix sum")
        F = self.field
        return Matrix(F, self.rows, self.cols,
                      [[F.add(a, b) for a, b in zip(ra, rb)]
                       for ra, rb in zip(self.entries, other.entries)])

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.field == other.field
                and self.rows == other.rows and self.cols == other.cols
                and self.entries == other.entries)

    def __hash__(self):
        return hash((self.field, self.rows, self.cols, self.entries))

    def is_zero(self):
        z = self.field.zero()
        return all(e == z for row in self.entries for e in row)

    def __repr__(self):
        return f"Matrix({self.field!r}, {self.rows}x{self.cols})"


def apply_row(field, vec, matrix):
    """vec @ matrix for a plain sequence vec of length matrix.rows."""
    if len(vec) != matrix.rows:
        raise ShapeError(f"vector length {len(vec)} vs {matrix.rows} rows")
    z = field.zero()
    acc = [z] * matrix.cols
    for k, a in enumerate(vec):
        if a == z:
            continue
        row = matrix.entries[k]
        acc = [field.add(acc[j], field.mul(a, row[j])) for j in range(matrix.cols)]
    return acc


def rref(field, rows):
    """Reduced row echelon form.

    Returns (reduced_nonzero_rows, pivot_columns), both tuples.  Rows come out
    sorted by pivot column with pivots equal to 1 and cleared columns, so the
    result is the canonical basis of the row space.
    """
    work = [list(r) for r in rows]
    z = field.zero()
    ncols = len(work[0]) if work else 0
    pivots = []
    rank = 0
    for col in range(ncols):
        sel = None
        for i in range(rank, len(work)):
            if work[i][col] != z:
                sel = i
                break
        if sel is None:
            continue
        work[rank], work[sel] = work[sel], work[rank]
        inv = field.inv(work[rank][col])
        if inv != field.one():
            work[rank] = [field.mul(inv, e) for e in work[rank]]
        prow = work[rank]
        for i in range(len(work)):
            if i == rank:
                continue
            f = work[i][col]
            if f != z:
                wrow = work[i]
                work[i] = [field.sub(wrow[j], field.mul(f, prow[j])) for j in range(ncols)]
        pivots.append(col)
        rank += 1
        if rank == len(work):
            break
    return tuple(tuple(r) for r in work[:rank]), tuple(pivots)


@dataclass(frozen=True)
class Subspace:
    """A subspace of K^ambient with canonical RREF basis rows.

    Structural equality coincides with subspace equality because the basis is
    canonical.
    """

    field: Field
    ambient: int
    rows: tuple
    pivots: tuple

    @classmethod
    def from_vectors(cls, field, ambient, vectors):
        vectors = [tuple(v) for v in vectors]
        for v in vectors:
            if len(v) != ambient:
                raise ShapeError(f"vector length {len(v)} vs ambient {ambient}")
        r, p = rref(field, vectors)
        return cls(field, ambient, r, p)

    @classmethod
    def zero(cls, field, ambient):
        return cls(field, ambient, (), ())

    @classmethod
    def full(cls, field, ambient):
        z, o = field.zero(), field.one()
        rows = tuple(tuple(o if j == i else z for j in range(ambient)) for i in range(ambient))
        return cls(field, ambient, rows, tuple(range(ambient)))

    @property
    def dim(self):
        return len(self.rows)

    def reduce(self, vec):
        """Reduce vec modulo this subspace; 0 iff vec is a member."""
        F = self.field
        z = F.zero()
        v = list(vec)
        for row, p in zip(self.rows, self.pivots):
            c = v[p]
            if c != z:
                v = [F.sub(a, F.mul(c, b)) for a, b in zip(v, row)]
        return v

    def contains_vector(self, vec):
        z = self.field.zero()
        return all(e == z for e in self.reduce(vec))

    def coordinates(self, vec):
        """Coefficients of vec in the RREF basis; None if vec is outside."""
        F = self.field
        z = F.zero()
        v = list(vec)
        coeffs = []
        for row, p in zip(self.rows, self.pivots):
            c = v[p]
            coeffs.append(c)
            if c != z:
                v = [F.sub(a, F.mul(c, b)) for a, b in zip(v, row)]
        if any(e != z for e in v):
            return None
        return coeffs


def kernel(m: Matrix) -> Subspace:
    """{v in K^rows : v @ m = 0}."""
    F = m.field
    z, o = F.zero(), F.one()
    if m.rows == 0:
        return Subspace.zero(F, 0)
    # Row reduce [m | I]; rows whose m-part vanished span the kernel.
    aug = [list(m.entries[i]) + [o if j == i else z for j in range(m.rows)]
           for i in range(m.rows)]
    red, _ = rref(F, aug)
    basis = []
    for row in red:
        if all(e == z for e in row[:m.cols]):
            basis.append(row[m.cols:])
    # rref again for canonical form (rows already independent).
    return Subspace.from_vectors(F, m.rows, basis)


def image(m: Matrix) -> Subspace:
    """Row space of m, i.e. the image of v |-> v @ m."""
    return Subspace.from_vectors(m.field, m.cols, m.entries)


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    if a.ambient != b.ambient or a.field != b.field:
        raise ShapeError("subspace sum needs a common ambient space")
    return Subspace.from_vectors(a.field, a.ambient, list(a.rows) + list(b.rows))


def subspace_intersect(a: Subspace, b: Subspace) -> Subspace:
    """Zassenhaus: reduce [[A|A],[B|0]]; null left blocks carry the intersection."""
    if a.ambient != b.ambient or a.field != b.field:
        raise ShapeError("subspace intersection needs a common ambient space")
    F = a.field
    z = F.zero()
    n = a.ambient
    block = [list(r) + list(r) for r in a.rows]
    block += [list(r) + [z] * n for r in b.rows]
    if not block:
        return Subspace.zero(F, n)
    red, _ = rref(F, block)
    basis = [row[n:] for row in red if all(e == z for e in row[:n])]
    return Subspace.from_vectors(F, n, basis)


def subspace_contains(outer: Subspace, inner: Subspace) -> bool:
    """True iff inner is a subspace of outer."""
    if outer.ambient != inner.ambient or outer.field != inner.field:
        raise ShapeError("containment needs a common ambient space")
    return all(outer.contains_vector(r) for r in inner.rows)


def solve(m: Matrix, b) -> list | None:
    """Some v with v @ m = b, or None if b is outside image(m)."""
    b = tuple(b)
    if len(b) != m.cols:
        raise ShapeError(f"rhs length {len(b)} vs {m.cols} cols")
    F = m.field
    z, o = F.zero(), F.one()
    if m.rows == 0:
        return [] if all(e == z for e in b) else None
    aug = [list(m.entries[i]) + [o if j == i else z for j in range(m.rows)]
           for i in range(m.rows)]
    red, pivots = rref(F, aug)
    v = list(b)
    combo = [z] * m.rows
    for row, p in zip(red, pivots):
        if p >= m.cols:
            break
        c = v[p]
        if c != z:
            v = [F.sub(x, F.mul(c, y)) for x, y in zip(v, row[:m.cols])]
            combo = [F.add(x, F.mul(c, y)) for x, y in zip(combo, row[m.cols:])]
    if any(e != z for e in v):
        return None
    return combo


def apply_subspace(m: Matrix, v: Subspace) -> Subspace:
    """Image {x @ m : x in v}."""
    if v.ambient != m.rows or v.field != m.field:
        raise ShapeError("subspace/matrix mismatch in apply")
    return Subspace.from_vectors(m.field, m.cols, [apply_row(m.field, r, m) for r in v.rows])


@dataclass(frozen=True)
class LabeledSpace:
    """A based space whose basis vectors carry idempotent tags on both sides.

    For a component of a graded algebra, basis vector x with tags (i, j)
    satisfies e_i x e_j = x.  Module components only use the right tags; by
    convention their left tags mirror the right ones.
    """

    dim: int
    left_tags: tuple
    right_tags: tuple

    def __post_init__(self):
        if len(self.left_tags) != self.dim or len(self.right_tags) != self.dim:
            raise LabelError(f"need {self.dim} tags on each side")
        if any(t < 0 for t in self.left_tags + self.right_tags):
            raise LabelError("tags must be nonnegative idempotent indices")

    @classmethod
    def untagged(cls, dim):
        return cls(dim, (0,) * dim, (0,) * dim)

    @classmethod
    def module_component(cls, tags):
        tags = tuple(tags)
        return cls(len(tags), tags, tags)

    def check_tags(self, k):
        if any(t >= k for t in self.left_tags + self.right_tags):
            raise LabelError(f"tag out of range for {k} idempotents")


ZERO_SPACE = LabeledSpace(0, (), ())


def matched_pairs(x: LabeledSpace, y: LabeledSpace):
    """Basis pairs (i, j) with right tag of x_i equal to left tag of y_j.

    The order is lexicographic in (i, j) and is the basis order of the
    matched tensor product everywhere in this library.
    """
    return [(i, j) for i in range(x.dim) for j in range(y.dim)
            if x.right_tags[i] == y.left_tags[j]]


def matched_tensor(x: LabeledSpace, y: LabeledSpace, k=None):
    """Tensor over the split degree-0 part: keep only tag-matched pairs.

    Returns (space, pairs) where pairs fixes the basis order.
    """
    if k is not None:
        x.check_tags(k)
        y.check_tags(k)
    pairs = matched_pairs(x, y)
    space = LabeledSpace(len(pairs),
                         tuple(x.left_tags[i] for i, _ in pairs),
                         tuple(y.right_tags[j] for _, j in pairs))
    return space, pairs
