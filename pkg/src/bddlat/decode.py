"""Babai nearest-plane decoding, an exact CVP oracle, and the BDD pipeline."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import numerics as nm
from .errors import OracleCapError, ShapeError
from .gso import Basis, GsoDecomposition, as_basis, gram_schmidt
from .qary import BOUND_TOL, BoundReport, QarySpec, bound_report, qary_basis
from .reduction import DEFAULT_SVP_CAP, LllParams, enumerate_points, lll_reduce, svp_enumerate

DEFAULT_CVP_CAP = 8


@dataclass
class DecodeReport:
    """Decoder output.

    ``radius_guarantee`` is the radius inside which the decoder provably
    returns the planted point; ``box_bound_sq`` = (1/4) sum ||b*_i||^2 bounds
    ``residual_sq`` unconditionally.
    """

    decoded_vector: tuple
    coefficients: tuple
    residual_sq: Fraction
    used_basis: Basis
    radius_guarantee: float
    within_guarantee: bool
    box_bound_sq: Fraction
    half_min_gs: float
    radius_fallback: bool = False


def _nearest_plane(b: Basis, g: GsoDecomposition, t) -> tuple[tuple, tuple]:
    cur = list(t)
    n = b.rank
    coeffs = [0] * n
    for i in range(n - 1, -1, -1):
        c = nm.round_half_up(nm.inner_product(g.star_vectors[i], cur) / g.star_norms_sq[i])
        coeffs[i] = c
        if c:
            cur = [x - c * y for x, y in zip(cur, b.columns[i])]
    return tuple(coeffs), b.combine(coeffs)


def babai_nearest_plane(b, t, g: GsoDecomposition | None = None,
                        radius_guarantee: float | None = None) -> DecodeReport:
    """Nearest-plane rounding from the last Gram-Schmidt direction to the first.

    Without an explicit ``radius_guarantee`` the basis' own guarantee
    (1/2) min_i ||b*_i|| is reported.  Rounding ties go toward +infinity.
    """
    b = as_basis(b)
    t = nm.vector(t)
    if len(t) != b.ambient_dim:
        raise ShapeError(f"target has dimension {len(t)}, basis lives in dimension {b.ambient_dim}")
    g = g or gram_schmidt(b)
    coeffs, v = _nearest_plane(b, g, t)
    res = nm.norm_sq(nm.vec_sub(t, v))
    half_min = 0.5 * math.sqrt(min(g.star_norms_sq))
    radius = half_min if radius_guarantee is None else radius_guarantee
    return DecodeReport(
        decoded_vector=v,
        coefficients=coeffs,
        residual_sq=res,
        used_basis=b,
        radius_guarantee=radius,
        within_guarantee=float(res) <= radius * radius + BOUND_TOL,
        box_bound_sq=sum(g.star_norms_sq, Fraction(0)) / 4,
        half_min_gs=half_min,
    )


def cvp_enumerate(b, t, cap: int = DEFAULT_CVP_CAP) -> tuple:
    """Exact closest lattice vector to ``t``.

    Ties are broken by the lexicographically smallest coefficient vector with
    respect to the input basis.  The search runs on an LLL-reduced copy with
    the Babai distance as the starting radius, shrinking as better points
    appear.
    """
    b = as_basis(b)
    t = nm.vector(t)
    if b.ambient_dim > cap:
        raise OracleCapError(f"cvp_enumerate refuses dimension {b.ambient_dim} > cap {cap}")
    if len(t) != b.ambient_dim:
        raise ShapeError(f"target has dimension {len(t)}, basis lives in dimension {b.ambient_dim}")
    red, _ = lll_reduce(b, LllParams(Fraction(99, 100)))
    g = gram_schmidt(red)
    tau = [nm.inner_product(t, s) / ns for s, ns in zip(g.star_vectors, g.star_norms_sq)]
    # component of t orthogonal to the lattice span contributes a constant
    perp = list(t)
    for s, c in zip(g.star_vectors, tau):
        perp = [x - c * y for x, y in zip(perp, s)]
    offset = nm.norm_sq(perp)
    _, start = _nearest_plane(red, g, t)
    best: dict = {"d": nm.norm_sq(nm.vec_sub(t, start)) - offset, "xs": []}

    def on_leaf(x, dist_sq):
        if dist_sq < best["d"]:
            best["d"] = dist_sq
            best["xs"] = [x]
        elif dist_sq == best["d"]:
            best["xs"].append(x)
        return best["d"]

    enumerate_points(g.star_norms_sq, g.mu, tau, best["d"], on_leaf)
    points = {red.combine(x) for x in best["xs"]}
    coeffs = []
    for v in points:
        sol = nm.solve(b.matrix(), tuple((a,) for a in v))
        coeffs.append((tuple(int(r[0]) for r in sol), v))
    return min(coeffs)[1]


@dataclass
class PreparedLattice:
    """Reduced basis and bounds for one spec, shareable across many decodes."""

    spec: QarySpec
    params: LllParams
    basis: Basis
    reduced: Basis
    gso: GsoDecomposition
    lambda1_sq: Fraction | None
    bounds: BoundReport


def prepare(spec: QarySpec, p: LllParams | None = None, svp_cap: int = DEFAULT_SVP_CAP,
            mode: str = "plain") -> PreparedLattice:
    """qary_basis -> LLL, plus exact lambda_1 when n <= svp_cap (min-GS fallback above)."""
    p = p or LllParams()
    basis = qary_basis(spec)
    reduced, _ = lll_reduce(basis, p)
    g = gram_schmidt(reduced)
    lam = None
    if spec.n <= svp_cap:
        lam = nm.norm_sq(svp_enumerate(reduced, cap=svp_cap))
    bounds = bound_report(spec, p, lam, reduced_basis=reduced, mode=mode)
    return PreparedLattice(spec, p, basis, reduced, g, lam, bounds)


def decode_prepared(lat: PreparedLattice, t) -> DecodeReport:
    rep = babai_nearest_plane(lat.reduced, t, g=lat.gso, radius_guarantee=lat.bounds.radius)
    rep.radius_fallback = lat.bounds.lambda1_fallback
    return rep


def bdd_solve(spec: QarySpec, t, p: LllParams | None = None, svp_cap: int = DEFAULT_SVP_CAP,
              mode: str = "plain") -> DecodeReport:
    """qary_basis -> lll_reduce -> babai_nearest_plane, with the decoding radius attached."""
    t = nm.vector(t)
    if len(t) != spec.n:
        raise ShapeError(f"target has dimension {len(t)}, expected n = {spec.n}")
    return decode_prepared(prepare(spec, p, svp_cap, mode), t)
