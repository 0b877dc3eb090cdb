"""Seeded generation of q-ary specs, random bases and planted BDD instances."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .. import numerics as nm
from ..decode import PreparedLattice, prepare
from ..errors import RadiusPolicyError
from ..gso import Basis
from ..qary import QarySpec, qary_basis
from ..reduction import DEFAULT_SVP_CAP, LllParams
from .rng import SplitMix64

POLICY_KINDS = ("theorem_radius_fraction", "absolute", "half_min_gs_fraction")
ERROR_DIRECTION_RANGE = 1000
SCALE_BITS = 48


@dataclass(frozen=True)
class RadiusPolicy:
    """How large the planted error may be.

    theorem_radius_fraction
        ``value`` times the decoding radius (1/2) lambda_1 exp(-sqrt(2k ln q ln delta')).
    half_min_gs_fraction
        ``value`` times (1/2) min_i ||b*_i|| of the reduced basis.
    absolute
        ``value`` itself.
    """

    kind: str
    value: Fraction

    def __post_init__(self):
        if self.kind not in POLICY_KINDS:
            raise ValueError(f"unknown radius policy {self.kind!r}")
        v = nm.to_rational(self.value)
        if self.kind == "absolute":
            if v < 0:
                raise ValueError("absolute radius must be non-negative")
        elif not 0 < v <= 1:
            raise ValueError(f"{self.kind} must lie in (0, 1], got {v}")
        object.__setattr__(self, "value", v)

    def radius_sq(self, lat: PreparedLattice) -> Fraction:
        if self.kind == "absolute":
            return self.value ** 2
        if self.kind == "half_min_gs_fraction":
            return self.value ** 2 * min(lat.gso.star_norms_sq) / 4
        return (self.value * Fraction(lat.bounds.radius)) ** 2


@dataclass(frozen=True)
class Planted:
    coefficients: tuple
    error: tuple


@dataclass(frozen=True)
class BddInstance:
    """Target t = qary_basis(spec) * planted.coefficients + planted.error."""

    spec: QarySpec
    target: tuple
    planted: Planted | None
    seed: int

    def planted_vector(self, basis: Basis | None = None) -> tuple | None:
        """The planted lattice point; pass the spec's qary_basis to skip recomputing it."""
        if self.planted is None:
            return None
        basis = basis or qary_basis(self.spec)
        return basis.combine(self.planted.coefficients)


def _scale_below(radius_sq: Fraction, u_norm_sq: int) -> Fraction:
    """Largest s = m / 2^SCALE_BITS with s^2 ||u||^2 < radius^2 (0 when the radius is 0)."""
    x = radius_sq * 4 ** SCALE_BITS / u_norm_sq
    m = math.isqrt(math.floor(x))
    if m * m >= x:
        m -= 1
    return Fraction(max(m, 0), 1 << SCALE_BITS)


def gen_instance(spec: QarySpec, policy: RadiusPolicy, seed: int,
                 p: LllParams | None = None, svp_cap: int = DEFAULT_SVP_CAP,
                 lattice: PreparedLattice | None = None) -> BddInstance:
    """Plant a lattice point plus an error of norm strictly below the policy radius.

    Raises :class:`RadiusPolicyError` when the radius exceeds lambda_1/2
    (only checkable when lambda_1 is known, i.e. n <= svp_cap).
    """
    lat = lattice or prepare(spec, p, svp_cap)
    rho_sq = policy.radius_sq(lat)
    if lat.lambda1_sq is not None and rho_sq > lat.lambda1_sq / 4:
        raise RadiusPolicyError(
            f"radius^2 = {float(rho_sq):.6g} exceeds lambda_1^2/4 = {float(lat.lambda1_sq / 4):.6g}")
    rng = SplitMix64(seed)
    coeffs = tuple(rng.below(spec.q) for _ in range(spec.n))
    while True:
        u = tuple(rng.randint(-ERROR_DIRECTION_RANGE, ERROR_DIRECTION_RANGE) for _ in range(spec.n))
        if any(u):
            break
    s = _scale_below(rho_sq, sum(x * x for x in u))
    error = tuple(Fraction(s * x) for x in u)
    v = lat.basis.combine(coeffs)
    target = nm.vec_add(v, error)
    if lat.lambda1_sq is not None:
        assert nm.norm_sq(error) < lat.lambda1_sq / 4
    return BddInstance(spec, target, Planted(coeffs, error), seed)


def random_spec(rng: SplitMix64, n: int, k: int, q: int) -> QarySpec:
    a = tuple(tuple(rng.below(q) for _ in range(k)) for _ in range(n))
    return QarySpec(n, q, k, a)


def random_basis(rng: SplitMix64, n: int, bound: int, dim: int | None = None) -> Basis:
    """Random integer basis with entries in [-bound, bound], resampled until independent."""
    dim = dim or n
    while True:
        cols = [tuple(rng.randint(-bound, bound) for _ in range(dim)) for _ in range(n)]
        if nm.rank(nm.transpose(cols)) == n:
            return Basis.from_columns(cols)


def random_unimodular(rng: SplitMix64, n: int, steps: int = 20, bound: int = 3) -> tuple:
    """Product of random elementary integer column operations and swaps."""
    u = [list(r) for r in nm.identity(n)]
    for _ in range(steps):
        i, j = rng.below(n), rng.below(n)
        if i == j:
            continue
        if rng.below(4) == 0:
            for row in u:
                row[i], row[j] = row[j], row[i]
        else:
            f = rng.randint(-bound, bound)
            for row in u:
                row[i] += f * row[j]
    return tuple(map(tuple, u))
