"""Dual bases, unimodular triangularization, short bases from short sets, lattice equality."""

from __future__ import annotations

from dataclasses import dataclass

from . import numerics as nm
from .errors import MembershipError, RankError, ShapeError
from .gso import Basis, as_basis, gram_matrix


def dual_basis(b) -> Basis:
    """D = B G^{-1} with G = B^T B, so that B^T D = I."""
    b = as_basis(b)
    g = gram_matrix(b)
    if nm.determinant(g) == 0:
        raise RankError("basis vectors are linearly dependent")
    return Basis.from_matrix(nm.mat_mul(b.matrix(), nm.inverse(g)))


@dataclass(frozen=True)
class TriangularizationResult:
    u: tuple
    t: tuple


def triangularize_rows(rows: list[list[int]], track: list[list[int]] | None = None) -> None:
    """Upper-triangularize integer rows in place with unimodular row operations.

    Column by column: flip signs so the active entries are non-negative,
    take the smallest positive entry as pivot (lowest row on ties), reduce
    every other active row modulo it, and repeat until one nonzero entry is
    left, which is then swapped into the diagonal position.  The pivot value
    strictly decreases each round, so the loop terminates.  ``track``
    receives the same row operations (it starts as the identity to yield U).
    """
    nrows, ncols = len(rows), len(rows[0])

    def negate(i):
        rows[i] = [-x for x in rows[i]]
        if track is not None:
            track[i] = [-x for x in track[i]]

    def axpy(i, f, j):
        rows[i] = [x - f * y for x, y in zip(rows[i], rows[j])]
        if track is not None:
            track[i] = [x - f * y for x, y in zip(track[i], track[j])]

    def swap(i, j):
        rows[i], rows[j] = rows[j], rows[i]
        if track is not None:
            track[i], track[j] = track[j], track[i]

    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        while True:
            for i in range(r, nrows):
                if rows[i][c] < 0:
                    negate(i)
            active = [i for i in range(r, nrows) if rows[i][c]]
            if not active:
                break
            piv = min(active, key=lambda i: (rows[i][c], i))
            if len(active) == 1:
                swap(r, piv)
                r += 1
                break
            for i in active:
                if i != piv:
                    axpy(i, rows[i][c] // rows[piv][c], piv)


def unimodular_triangularize(q) -> TriangularizationResult:
    """Unimodular U with T = U Q upper triangular (Q square, integer)."""
    q = nm.int_matrix(q)
    n, c = nm.shape(q)
    if n != c:
        raise ShapeError(f"expected a square matrix, got {n}x{c}")
    rows = [list(r) for r in q]
    u = [list(r) for r in nm.identity(n)]
    triangularize_rows(rows, u)
    return TriangularizationResult(tuple(map(tuple, u)), tuple(map(tuple, rows)))


@dataclass(frozen=True)
class ShortBasisResult:
    """Output basis plus the certificate S = B' Q, T = U Q, S = B T."""

    basis: Basis
    q: tuple
    u: tuple
    t: tuple


def short_basis_with_certificate(b_prime, s) -> ShortBasisResult:
    """Turn a full-rank set of lattice vectors S into a basis with ||b*_i|| <= max ||s_j||.

    ``s`` is a row-major matrix whose columns are the vectors.
    """
    b_prime = as_basis(b_prime)
    s = nm.matrix(s)
    if nm.shape(s)[0] != b_prime.ambient_dim:
        raise ShapeError("vectors of S do not match the ambient dimension")
    if nm.shape(s)[1] != b_prime.rank:
        raise ShapeError(f"S needs exactly {b_prime.rank} vectors")
    coeff = nm.solve(b_prime.matrix(), s)
    if coeff is None or not nm.is_integral_matrix(coeff):
        raise MembershipError("some vector of S is not in the lattice spanned by B'")
    q = nm.int_matrix(coeff)
    if nm.determinant(q) == 0:
        raise RankError("the vectors of S are not of full rank")
    tri = unimodular_triangularize(q)
    u_inv = nm.inverse(tri.u)
    basis = Basis.from_matrix(nm.mat_mul(b_prime.matrix(), u_inv))
    return ShortBasisResult(basis, q, tri.u, tri.t)


def short_basis_from_set(b_prime, s) -> Basis:
    return short_basis_with_certificate(b_prime, s).basis


def change_of_basis(b1, b2) -> nm.Matrix | None:
    """X with B1 X = B2, or None when B2's vectors are outside span(B1)."""
    b1, b2 = as_basis(b1), as_basis(b2)
    if b1.ambient_dim != b2.ambient_dim or b1.rank != b2.rank:
        raise ShapeError("bases differ in ambient dimension or rank")
    return nm.solve(b1.matrix(), b2.matrix())


def lattice_equal(b1, b2) -> bool:
    """True iff the two bases generate the same lattice."""
    x = change_of_basis(b1, b2)
    return x is not None and nm.is_unimodular(x)
