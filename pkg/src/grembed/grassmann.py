"""Grassmannian points over a ring and the induced embeddings.

A point of Gr(n, m) is a free rank-m column span in R^n, stored through its
canonical basis matrix (identity on the lexicographically first row set
with a unit maximal minor), so point equality is plain structural equality.
The four embeddings push a point forward along the Kronecker, exterior and
symmetric powers of its basis.
"""

from __future__ import annotations

import math

from grembed.linalg import (
    Matrix,
    ShapeError,
    SpanNotFreeError,
    column_span_normal_form,
)
from grembed.multilinear import compound, kronecker, sym_power, wedge_indices
from grembed.rings import RingMismatchError


class DegenerateImageError(Exception):
    """The embedded span is not a free direct summand of the target.

    Only conceivable for the symmetric power over a non-reduced ring in the
    rank-1, characteristic-divides-degree regime; carries the offending
    image matrix so callers can report instead of crashing.
    """

    def __init__(self, message, image: Matrix):
        super().__init__(message)
        self.image = image


class GrassmannPoint:
    """A rank-m free column span in R^n with canonical basis matrix."""

    __slots__ = ("ring", "ambient_dim", "rank", "basis")

    def __init__(self, basis: Matrix):
        # callers go through point_from_matrix; basis must already be canonical
        object.__setattr__(self, "ring", basis.ring)
        object.__setattr__(self, "ambient_dim", basis.rows)
        object.__setattr__(self, "rank", basis.cols)
        object.__setattr__(self, "basis", basis)

    def __setattr__(self, name, value):
        raise AttributeError("GrassmannPoint is immutable")

    def __eq__(self, other):
        return isinstance(other, GrassmannPoint) and self.basis == other.basis

    def __hash__(self):
        return hash(self.basis)

    def __repr__(self):
        return (
            f"GrassmannPoint(Gr({self.ambient_dim}, {self.rank}) over "
            f"{self.ring}, basis={self.basis.pretty()})"
        )

    def to_json(self) -> dict:
        return {
            "ring": self.ring.to_json(),
            "n": self.ambient_dim,
            "m": self.rank,
            "basis": self.basis.to_json(),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "GrassmannPoint":
        try:
            basis = Matrix.from_json(obj["basis"])
            n, m = obj["n"], obj["m"]
        except (KeyError, TypeError) as exc:
            raise ShapeError(f"bad point JSON: {obj!r}") from exc
        if basis.rows != n or basis.cols != m:
            raise ShapeError(
                f"point JSON says Gr({n}, {m}) but basis is {basis.rows}x{basis.cols}"
            )
        return point_from_matrix(basis)


def point_from_matrix(columns: Matrix) -> GrassmannPoint:
    """Canonicalize a basis matrix into a point; equal spans give equal points."""
    return GrassmannPoint(column_span_normal_form(columns))


def points_equal(a: GrassmannPoint, b: GrassmannPoint) -> bool:
    """Normal-form equality of two points of the same Grassmannian."""
    if a.ring != b.ring:
        raise RingMismatchError(f"points over different rings: {a.ring} vs {b.ring}")
    if a.ambient_dim != b.ambient_dim or a.rank != b.rank:
        raise ShapeError("points of different Grassmannians")
    return a == b


def _expect_rank(point: GrassmannPoint, expected: int, label: str):
    if point.rank != expected:
        raise AssertionError(
            f"{label} produced rank {point.rank}, expected {expected}"
        )


def tensor_embed(points) -> GrassmannPoint:
    """Product-of-spans embedding: the span of the Kronecker basis.

    Sends points of Gr(n_i, m_i) to a point of Gr(prod n_i, prod m_i); the
    two-factor rank-1 case is the Segre embedding.
    """
    points = list(points)
    if not points:
        raise ValueError("tensor_embed needs at least one point")
    ring = points[0].ring
    for p in points[1:]:
        if p.ring != ring:
            raise RingMismatchError("points over different rings")
    image = point_from_matrix(kronecker([p.basis for p in points]))
    _expect_rank(image, math.prod(p.rank for p in points), "tensor_embed")
    return image


def tensor_power_embed(point: GrassmannPoint, r: int) -> GrassmannPoint:
    """Tensor power embedding: tensor_embed of r copies of the point."""
    if r < 1:
        raise ShapeError(f"tensor power order must be >= 1, got r={r}")
    return tensor_embed([point] * r)


def wedge_embed(point: GrassmannPoint, r: int) -> GrassmannPoint:
    """Exterior power embedding via the compound of the basis.

    Sends Gr(n, m) to Gr(C(n, r), C(m, r)); with r = m the single image
    column lists the classical Pluecker coordinates.
    """
    if r < 1 or r > point.rank:
        raise ShapeError(f"wedge order must satisfy 1 <= r <= rank, got r={r}")
    image = point_from_matrix(compound(point.basis, r))
    _expect_rank(image, math.comb(point.rank, r), "wedge_embed")
    return image


def sym_embed(point: GrassmannPoint, r: int) -> GrassmannPoint:
    """Symmetric power embedding via the monomial-basis power of the basis.

    Sends Gr(n, m) to Gr(C(n+r-1, r), C(m+r-1, r)).  Injective whenever the
    rank is at least 2 or r is invertible; outside that regime collisions
    exist over non-reduced rings, and a non-free image is reported through
    DegenerateImageError rather than a wrong answer.
    """
    if r < 1:
        raise ShapeError(f"symmetric power order must be >= 1, got r={r}")
    raw = sym_power(point.basis, r)
    try:
        image = point_from_matrix(raw)
    except SpanNotFreeError as exc:
        raise DegenerateImageError(
            f"symmetric power image of a rank-{point.rank} span over {point.ring} "
            f"is not a free direct summand (rank 1 with non-invertible degree "
            f"{r} is the degenerate regime)",
            raw,
        ) from exc
    _expect_rank(image, math.comb(point.rank + r - 1, r), "sym_embed")
    return image


def pluecker_coordinates(point: GrassmannPoint) -> list:
    """Pluecker coordinates: labeled entries of the top wedge image column.

    Returns (wedge index, value) pairs in ascending lex order of the
    strictly increasing m-tuples indexing the coordinates.
    """
    image = wedge_embed(point, point.rank)
    labels = wedge_indices(point.ambient_dim, point.rank)
    return [(label, image.basis.entry(i, 0)) for i, label in enumerate(labels)]
