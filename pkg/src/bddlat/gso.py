"""Lattice bases, Gram-Schmidt orthogonalization and derived quantities."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import numerics as nm
from .errors import RankError, ShapeError


@dataclass(frozen=True)
class Basis:
    """Ordered lattice basis; ``columns[i]`` is the basis vector b_{i+1}.

    Linear independence is not checked on construction (it costs a
    Gram-Schmidt pass); operations that need it raise :class:`RankError`.
    """

    columns: tuple

    def __post_init__(self):
        cols = tuple(nm.vector(c) for c in self.columns)
        if not cols:
            raise ShapeError("a basis needs at least one vector")
        dim = len(cols[0])
        if dim == 0:
            raise ShapeError("basis vectors must be non-empty")
        for i, c in enumerate(cols):
            if len(c) != dim:
                raise ShapeError(f"column {i} has dimension {len(c)}, expected {dim}")
        object.__setattr__(self, "columns", cols)

    @classmethod
    def from_columns(cls, cols: Iterable[Iterable]) -> "Basis":
        return cls(tuple(tuple(c) for c in cols))

    @classmethod
    def from_matrix(cls, rows: Sequence[Sequence]) -> "Basis":
        """Build from a row-major matrix whose *columns* are the basis vectors."""
        return cls(nm.transpose(nm.matrix(rows)))

    @classmethod
    def identity(cls, n: int) -> "Basis":
        return cls(nm.identity(n))

    @property
    def rank(self) -> int:
        return len(self.columns)

    @property
    def ambient_dim(self) -> int:
        return len(self.columns[0])

    def matrix(self) -> nm.Matrix:
        """Row-major matrix with the basis vectors as columns."""
        return nm.transpose(self.columns)

    def combine(self, coeffs: Sequence) -> nm.Vector:
        """The lattice vector sum_i coeffs[i] * b_i."""
        if len(coeffs) != self.rank:
            raise ShapeError(f"{len(coeffs)} coefficients for a rank-{self.rank} basis")
        out = [Fraction(0)] * self.ambient_dim
        for c, col in zip(coeffs, self.columns):
            if c:
                for k, x in enumerate(col):
                    out[k] += c * x
        return tuple(out)

    def is_integral(self) -> bool:
        return all(nm.is_integral_vector(c) for c in self.columns)

    def transform(self, u: nm.Matrix) -> "Basis":
        """The basis B*U (column operations given by the matrix U)."""
        return Basis.from_matrix(nm.mat_mul(self.matrix(), u))


def as_basis(b) -> Basis:
    return b if isinstance(b, Basis) else Basis.from_columns(b)


@dataclass(frozen=True)
class GsoDecomposition:
    """``mu[i][j]`` holds mu_{i,j} = <b_i, b*_j>/<b*_j, b*_j> for j < i (row i has i entries)."""

    star_vectors: tuple
    mu: tuple
    star_norms_sq: tuple

    @property
    def n(self) -> int:
        return len(self.star_vectors)


def gram_schmidt(b) -> GsoDecomposition:
    """Classical Gram-Schmidt by sequential projection."""
    b = as_basis(b)
    stars: list = []
    norms: list = []
    mu: list = []
    for i, bi in enumerate(b.columns):
        v = list(bi)
        row = []
        for j in range(i):
            m = nm.inner_product(bi, stars[j]) / norms[j]
            row.append(m)
            if m:
                for k, x in enumerate(stars[j]):
                    v[k] -= m * x
        ns = nm.norm_sq(v)
        if ns == 0:
            raise RankError(f"basis vector {i} lies in the span of the previous ones", index=i)
        stars.append(tuple(v))
        norms.append(ns)
        mu.append(tuple(row))
    return GsoDecomposition(tuple(stars), tuple(mu), tuple(norms))


def gram_matrix(b) -> nm.Matrix:
    b = as_basis(b)
    cols = b.columns
    return tuple(tuple(nm.inner_product(u, v) for v in cols) for u in cols)


def det_sq(b) -> Fraction:
    """det(B^T B), the squared covolume of the lattice."""
    return nm.determinant(gram_matrix(b))


def potential_sq(b) -> Fraction:
    """Square of the potential prod_i ||b*_i||^(n-i+1) (1-based i)."""
    norms = gram_schmidt(b).star_norms_sq
    n = len(norms)
    out = Fraction(1)
    for i, ns in enumerate(norms):
        out *= ns ** (n - i)
    return out


@dataclass(frozen=True)
class LogProfile:
    ells: tuple

    def __len__(self):
        return len(self.ells)

    def min(self) -> float:
        return min(self.ells)


def log_ratio(x: Fraction) -> float:
    """ln of a positive rational without overflowing on huge numerators."""
    return math.log(x.numerator) - math.log(x.denominator)


def log_profile(g: GsoDecomposition) -> LogProfile:
    """ell_i = ln ||b*_i||, the float boundary for every log-scale bound."""
    return LogProfile(tuple(0.5 * log_ratio(Fraction(ns)) for ns in g.star_norms_sq))
