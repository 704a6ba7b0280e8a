"""Dense exact matrices over a runtime-chosen ring.

Provides products, three determinant algorithms (fraction-free Bareiss for
integral domains, a division-free scheme for rings with zero divisors, and
cofactor expansion as an oracle), minors, column span normal forms and span
comparison.  Matrices are immutable; all operations are pure.
"""

from __future__ import annotations

from grembed import kernels
from grembed.rings import Ring, RingError, RingMismatchError, ring_from_json


class LinalgError(ValueError):
    """Base class for matrix errors."""


class ShapeError(LinalgError):
    """Dimensions do not match the operation."""


class SpanNotFreeError(LinalgError):
    """The column span is not free of full rank (no unit maximal minor)."""


class Matrix:
    """Immutable dense matrix; entries are canonical ring payloads, row-major."""

    __slots__ = ("ring", "rows", "cols", "entries")

    def __init__(self, ring: Ring, rows: int, cols: int, entries: tuple):
        if rows < 1 or cols < 1:
            raise ShapeError(f"matrix dimensions must be positive, got {rows}x{cols}")
        if len(entries) != rows * cols:
            raise ShapeError(
                f"expected {rows * cols} entries for a {rows}x{cols} matrix, "
                f"got {len(entries)}"
            )
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", tuple(entries))

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def from_rows(cls, ring: Ring, rows) -> "Matrix":
        """Build a matrix from nested row data, canonicalizing every entry."""
        rows = [list(r) for r in rows]
        if not rows or not rows[0]:
            raise ShapeError("matrix needs at least one row and one column")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ShapeError("ragged rows")
        entries = tuple(ring.canon(x) for r in rows for x in r)
        return cls(ring, len(rows), width, entries)

    @classmethod
    def identity(cls, ring: Ring, n: int) -> "Matrix":
        entries = tuple(
            ring.one if i == j else ring.zero for i in range(n) for j in range(n)
        )
        return cls(ring, n, n, entries)

    @classmethod
    def zero(cls, ring: Ring, rows: int, cols: int) -> "Matrix":
        return cls(ring, rows, cols, (ring.zero,) * (rows * cols))

    def entry(self, i: int, j: int):
        return self.entries[i * self.cols + j]

    def row_list(self, i: int) -> list:
        return list(self.entries[i * self.cols : (i + 1) * self.cols])

    def col_list(self, j: int) -> list:
        return [self.entries[i * self.cols + j] for i in range(self.rows)]

    def transpose(self) -> "Matrix":
        entries = tuple(
            self.entries[i * self.cols + j]
            for j in range(self.cols)
            for i in range(self.rows)
        )
        return Matrix(self.ring, self.cols, self.rows, entries)

    def submatrix(self, rows, cols) -> "Matrix":
        rows = list(rows)
        cols = list(cols)
        entries = tuple(self.entries[i * self.cols + j] for i in rows for j in cols)
        return Matrix(self.ring, len(rows), len(cols), entries)

    def __mul__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return matmul(self, other)

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.ring == other.ring
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.ring, self.rows, self.cols, self.entries))

    def pretty(self) -> str:
        fmt = self.ring.format_value
        rows = [
            "[" + ", ".join(fmt(self.entry(i, j)) for j in range(self.cols)) + "]"
            for i in range(self.rows)
        ]
        return "[" + "; ".join(rows) + "]"

    def __repr__(self):
        return f"Matrix({self.ring}, {self.pretty()})"

    def to_json(self) -> dict:
        fmt = self.ring.value_to_json
        return {
            "ring": self.ring.to_json(),
            "rows": self.rows,
            "cols": self.cols,
            "entries": [
                [fmt(self.entry(i, j)) for j in range(self.cols)]
                for i in range(self.rows)
            ],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Matrix":
        try:
            ring = ring_from_json(obj["ring"])
            rows, cols = obj["rows"], obj["cols"]
            data = obj["entries"]
        except (KeyError, TypeError) as exc:
            raise LinalgError(f"bad matrix JSON: {obj!r}") from exc
        if len(data) != rows or any(len(r) != cols for r in data):
            raise ShapeError("matrix JSON entries do not match rows/cols")
        entries = tuple(ring.value_from_json(x) for r in data for x in r)
        return cls(ring, rows, cols, entries)


def _require_same_ring(a: Matrix, b: Matrix):
    if a.ring != b.ring:
        raise RingMismatchError(f"matrices over different rings: {a.ring} vs {b.ring}")


def _require_square(m: Matrix):
    if m.rows != m.cols:
        raise ShapeError(f"expected a square matrix, got {m.rows}x{m.cols}")


def matmul(a: Matrix, b: Matrix) -> Matrix:
    """Exact matrix product."""
    _require_same_ring(a, b)
    if a.cols != b.rows:
        raise ShapeError(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    ring = a.ring
    kern = kernels.prime_field_kernel(ring)
    if kern is not None:
        out = kern.matmul(
            list(a.entries), a.rows, a.cols, list(b.entries), b.rows, b.cols, ring.p
        )
        return Matrix(ring, a.rows, b.cols, tuple(out))
    add, mul, zero = ring.add, ring.mul, ring.zero
    entries = []
    for i in range(a.rows):
        arow = a.entries[i * a.cols : (i + 1) * a.cols]
        for j in range(b.cols):
            acc = zero
            for k in range(a.cols):
                acc = add(acc, mul(arow[k], b.entries[k * b.cols + j]))
            entries.append(acc)
    return Matrix(ring, a.rows, b.cols, tuple(entries))


def det_bareiss(m: Matrix):
    """Fraction-free Bareiss determinant; needs an integral domain.

    Every division is by a previous pivot and is exact, so intermediate
    values stay in the ring and never grow past (sums of) minors of m.
    """
    _require_square(m)
    ring = m.ring
    if not ring.is_integral_domain:
        raise LinalgError(f"Bareiss requires an integral domain, not {ring}")
    n = m.rows
    a = [m.row_list(i) for i in range(n)]
    sign = 1
    prev = ring.one
    for k in range(n - 1):
        if ring.is_zero(a[k][k]):
            for i in range(k + 1, n):
                if not ring.is_zero(a[i][k]):
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return ring.zero
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = ring.sub(ring.mul(pivot, a[i][j]), ring.mul(a[i][k], a[k][j]))
                a[i][j] = ring.exact_div(num, prev)
        prev = pivot
    result = a[n - 1][n - 1]
    return result if sign == 1 else ring.neg(result)


def det_division_free(m: Matrix):
    """Division-free determinant (Bird's iteration), any commutative ring.

    Iterates X -> mu(X) * A where mu keeps the strict upper triangle and
    replaces each diagonal entry by minus the sum of the diagonal below it;
    after n-1 steps the (0,0) entry is (-1)^(n-1) det(A).  O(n^4) products.
    """
    _require_square(m)
    ring = m.ring
    n = m.rows
    if n == 1:
        return m.entry(0, 0)
    a = [m.row_list(i) for i in range(n)]
    x = a
    for _ in range(n - 1):
        # mu(x)
        mu = [[ring.zero] * n for _ in range(n)]
        tail = ring.zero
        for i in range(n - 1, -1, -1):
            mu[i][i] = ring.neg(tail)
            tail = ring.add(tail, x[i][i])
            for j in range(i + 1, n):
                mu[i][j] = x[i][j]
        # x = mu(x) * a
        nxt = [[ring.zero] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                acc = ring.zero
                for k in range(i, n):
                    acc = ring.add(acc, ring.mul(mu[i][k], a[k][j]))
                nxt[i][j] = acc
        x = nxt
    value = x[0][0]
    return value if (n - 1) % 2 == 0 else ring.neg(value)


def det_cofactor(m: Matrix):
    """Laplace expansion along the first row; exponential, kept as an oracle."""
    _require_square(m)
    ring = m.ring

    def rec(rows, cols):
        if len(rows) == 1:
            return m.entry(rows[0], cols[0])
        total = ring.zero
        rest = rows[1:]
        for pos, j in enumerate(cols):
            sub = rec(rest, cols[:pos] + cols[pos + 1 :])
            term = ring.mul(m.entry(rows[0], j), sub)
            total = ring.add(total, term if pos % 2 == 0 else ring.neg(term))
        return total

    return rec(tuple(range(m.rows)), tuple(range(m.cols)))


def determinant(m: Matrix):
    """Exact determinant over any supported commutative ring."""
    _require_square(m)
    ring = m.ring
    kern = kernels.prime_field_kernel(ring)
    if kern is not None:
        return kern.det(list(m.entries), m.rows, ring.p)
    if ring.is_integral_domain:
        return det_bareiss(m)
    return det_division_free(m)


def minor(m: Matrix, rows, cols):
    """Determinant of the submatrix on the given row and column index sets."""
    rows = sorted(rows)
    cols = sorted(cols)
    if len(rows) != len(cols):
        raise ShapeError(f"minor needs equal selections, got {len(rows)} rows, {len(cols)} cols")
    if len(set(rows)) != len(rows) or len(set(cols)) != len(cols):
        raise ShapeError("minor selections must not repeat indices")
    if not rows:
        return m.ring.one
    if rows[0] < 0 or rows[-1] >= m.rows or cols[0] < 0 or cols[-1] >= m.cols:
        raise ShapeError("minor selection out of range")
    return determinant(m.submatrix(rows, cols))


def is_invertible(m: Matrix) -> bool:
    """True iff m is square with unit determinant."""
    _require_square(m)
    return m.ring.is_unit(determinant(m))


def column_span_normal_form(m: Matrix) -> Matrix:
    """Canonical basis of the column span of m.

    The result has the same span and carries the identity on the
    lexicographically first row set whose maximal minor is a unit; over a
    field this is the reduced column echelon form.  Requires the span to be
    free of rank cols (some unit maximal minor), and a field or dual-number
    coefficient ring where unit tests decide pivoting.
    """
    ring = m.ring
    if not ring.is_local:
        raise LinalgError(f"span normal form needs a field or dual numbers, not {ring}")
    kern = kernels.prime_field_kernel(ring)
    if kern is not None:
        res = kern.rcef(list(m.entries), m.rows, m.cols, ring.p)
        if res is None:
            raise SpanNotFreeError(
                f"columns do not span freely with rank {m.cols} over {ring}"
            )
        return Matrix(ring, m.rows, m.cols, tuple(res[0]))
    cols = [m.col_list(j) for j in range(m.cols)]
    n, k = m.rows, m.cols
    placed = 0
    for row in range(n):
        if placed == k:
            break
        pick = None
        for j in range(placed, k):
            if ring.is_unit(cols[j][row]):
                pick = j
                break
        if pick is None:
            continue
        cols[placed], cols[pick] = cols[pick], cols[placed]
        inv = ring.inverse(cols[placed][row])
        cols[placed] = [ring.mul(inv, v) for v in cols[placed]]
        base = cols[placed]
        for j in range(k):
            if j == placed:
                continue
            f = cols[j][row]
            if ring.is_zero(f):
                continue
            cols[j] = [ring.sub(cols[j][i], ring.mul(f, base[i])) for i in range(n)]
        placed += 1
    if placed < k:
        raise SpanNotFreeError(f"columns do not span freely with rank {k} over {ring}")
    entries = tuple(cols[j][i] for i in range(n) for j in range(k))
    return Matrix(ring, n, k, entries)


def spans_equal(a: Matrix, b: Matrix) -> bool:
    """Decide equality of column spans by comparing normal forms."""
    _require_same_ring(a, b)
    if a.rows != b.rows:
        raise ShapeError(f"spans live in different ambient dims: {a.rows} vs {b.rows}")
    if a.cols != b.cols:
        return False
    return column_span_normal_form(a) == column_span_normal_form(b)
