"""Size reduction, LLL with a potential trace, reducedness checks, and exact SVP."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from . import numerics as nm
from .errors import OracleCapError, RankError
from .gso import Basis, as_basis, gram_schmidt

DEFAULT_SVP_CAP = 10


@dataclass(frozen=True)
class LllParams:
    delta: Fraction = Fraction(3, 4)

    def __post_init__(self):
        d = nm.to_rational(self.delta)
        if not Fraction(1, 4) < d < 1:
            raise ValueError(f"delta must lie in (1/4, 1), got {d}")
        object.__setattr__(self, "delta", d)


@dataclass
class ReductionTrace:
    """Bookkeeping from one LLL run.

    ``potential_sq_history[0]`` is the squared potential of the input; one
    entry is appended after every swap, so its length is ``swap_count + 1``.
    """

    swap_count: int = 0
    size_reduction_count: int = 0
    potential_sq_history: list = field(default_factory=list)


def size_reduce(b) -> Basis:
    """Make every |mu_{i,j}| <= 1/2 using integer column operations.

    Gram-Schmidt vectors are unchanged.  For each i the reduction runs over
    j = i-1 down to 0, rounding mu to the nearest integer with ties up.
    """
    b = as_basis(b)
    g = gram_schmidt(b)
    cols = [list(c) for c in b.columns]
    mu = [list(row) for row in g.mu]
    for i in range(1, len(cols)):
        for j in range(i - 1, -1, -1):
            m = nm.round_half_up(mu[i][j])
            if m:
                cols[i] = [x - m * y for x, y in zip(cols[i], cols[j])]
                for k in range(j):
                    mu[i][k] -= m * mu[j][k]
                mu[i][j] -= m
    return Basis.from_columns(cols)


def _round_div(num: int, den: int) -> int:
    """round_half_up(num/den) for integers, den > 0."""
    return (2 * num + den) // (2 * den)


def lll_reduce(b, p: LllParams | None = None) -> tuple[Basis, ReductionTrace]:
    """delta-LLL reduction.

    Working-index form on exact integers (Cohen's integral LLL): the basis
    is scaled to integers by its common denominator, the Gram-Schmidt data
    is held as d_i = prod_{j<=i} ||b*_j||^2 and lambda_{i,j} = d_j mu_{i,j},
    and a swap steps the index back by one instead of restarting.
    """
    p = p or LllParams()
    b = as_basis(b)
    scale = nm.common_denominator(x for c in b.columns for x in c)
    cols = [[int(x * scale) for x in c] for c in b.columns]
    n = len(cols)
    num, den = p.delta.numerator, p.delta.denominator

    # d[0] = 1 and d[i+1] belongs to column i; lam[i][j] for j < i.
    d = [1] * (n + 1)
    lam = [[0] * n for _ in range(n)]
    for k in range(n):
        for j in range(k + 1):
            u = sum(x * y for x, y in zip(cols[k], cols[j]))
            for i in range(j):
                u = (d[i + 1] * u - lam[k][i] * lam[j][i]) // d[i]
            if j < k:
                lam[k][j] = u
            else:
                if u == 0:
                    raise RankError(f"basis vector {k} lies in the span of the previous ones", index=k)
                d[k + 1] = u
    trace = ReductionTrace()
    pot_scale = Fraction(1, scale ** (n * (n + 1)))

    def potential():
        return math.prod(d[1:]) * pot_scale

    trace.potential_sq_history.append(potential())

    def red(k, l):
        q = _round_div(lam[k][l], d[l + 1])
        if q:
            cols[k] = [x - q * y for x, y in zip(cols[k], cols[l])]
            lam[k][l] -= q * d[l + 1]
            for i in range(l):
                lam[k][i] -= q * lam[l][i]
            trace.size_reduction_count += 1

    def swap(k):
        cols[k], cols[k - 1] = cols[k - 1], cols[k]
        for j in range(k - 1):
            lam[k][j], lam[k - 1][j] = lam[k - 1][j], lam[k][j]
        lk = lam[k][k - 1]
        bb = (d[k - 1] * d[k + 1] + lk * lk) // d[k]
        for i in range(k + 1, n):
            t = lam[i][k]
            lam[i][k] = (d[k + 1] * lam[i][k - 1] - lk * t) // d[k]
            lam[i][k - 1] = (bb * t + lk * lam[i][k]) // d[k + 1]
        d[k] = bb
        trace.swap_count += 1
        trace.potential_sq_history.append(potential())

    k = 1
    while k < n:
        red(k, k - 1)
        lk = lam[k][k - 1]
        # ||b*_k||^2 < (delta - mu^2) ||b*_{k-1}||^2, cleared of denominators
        if den * (d[k + 1] * d[k - 1] + lk * lk) < num * d[k] * d[k]:
            swap(k)
            k = max(k - 1, 1)
        else:
            for l in range(k - 2, -1, -1):
                red(k, l)
            k += 1
    out = Basis.from_columns([[Fraction(x, scale) for x in c] for c in cols])
    return out, trace


@dataclass
class ReducednessReport:
    """Per-index outcome of the two LLL conditions.

    ``size`` holds (i, j, mu_ij, ok) for every j < i and ``lovasz`` holds
    (i, lhs, rhs, ok) comparing ||b*_{i+1}||^2 against
    (delta - mu_{i+1,i}^2) ||b*_i||^2 (0-based i).
    """

    size: list
    lovasz: list

    @property
    def size_reduced(self) -> bool:
        return all(ok for *_, ok in self.size)

    @property
    def lovasz_ok(self) -> bool:
        return all(ok for *_, ok in self.lovasz)

    @property
    def ok(self) -> bool:
        return self.size_reduced and self.lovasz_ok

    def first_lovasz_failure(self):
        return next((i for i, _, _, ok in self.lovasz if not ok), None)


def is_lll_reduced(b, p: LllParams | None = None) -> ReducednessReport:
    p = p or LllParams()
    g = gram_schmidt(b)
    half = Fraction(1, 2)
    size = [(i, j, m, abs(m) <= half) for i, row in enumerate(g.mu) for j, m in enumerate(row)]
    lovasz = []
    for i in range(g.n - 1):
        m = g.mu[i + 1][i]
        lhs = g.star_norms_sq[i + 1]
        rhs = (p.delta - m * m) * g.star_norms_sq[i]
        lovasz.append((i, lhs, rhs, lhs >= rhs))
    return ReducednessReport(size, lovasz)


# -- enumeration --------------------------------------------------------------

def enumerate_points(
    norms: Sequence[Fraction],
    mu: Sequence[Sequence[Fraction]],
    tau: Sequence[Fraction],
    bound_sq: Fraction,
    on_leaf: Callable[[tuple, Fraction], Fraction],
    skip_zero: bool = False,
) -> None:
    """Depth-first enumeration of integer x with sum_i (x_i - c_i)^2 ||b*_i||^2 <= bound.

    The centre at level i is c_i = tau_i - sum_{j>i} x_j mu_{j,i}; with tau the
    Gram-Schmidt coordinates of a target (zero for SVP).  ``on_leaf(x, dist_sq)``
    is called on every point inside the current bound and returns the new
    bound, letting callers shrink the radius as candidates improve.  All
    pruning comparisons are exact; floats only size the candidate interval,
    which is widened and then filtered exactly.
    """
    n = len(norms)
    x = [0] * n
    bound = [Fraction(bound_sq)]

    def level(i, partial):
        c = tau[i] - sum((x[j] * mu[j][i] for j in range(i + 1, n)), Fraction(0))
        rem = bound[0] - partial
        if rem < 0:
            return
        r = math.sqrt(float(rem / norms[i]))
        cf = float(c)
        lo, hi = math.floor(cf - r) - 2, math.ceil(cf + r) + 2
        # visit candidates nearest the centre first so the bound tightens early
        order = sorted(range(lo, hi + 1), key=lambda v: (abs(v - c), v))
        for v in order:
            diff = v - c
            step = partial + diff * diff * norms[i]
            if step > bound[0]:
                continue
            x[i] = v
            if i == 0:
                if skip_zero and not any(x):
                    continue
                bound[0] = on_leaf(tuple(x), step)
            else:
                level(i - 1, step)
        x[i] = 0

    level(n - 1, Fraction(0))


def _canonical_sign(v: tuple) -> tuple:
    for a in v:
        if a:
            return v if a > 0 else tuple(-y for y in v)
    return v


def _shortest_key(v: tuple):
    first = next(i for i, a in enumerate(v) if a)
    return first, v


def svp_enumerate(b, cap: int = DEFAULT_SVP_CAP) -> nm.Vector:
    """Exact shortest nonzero vector.

    Among several shortest vectors the result is sign-normalized (first
    nonzero coordinate positive) and then the one whose first nonzero
    coordinate comes earliest, lexicographically smallest after that.
    """
    b = as_basis(b)
    if b.ambient_dim > cap:
        raise OracleCapError(f"svp_enumerate refuses dimension {b.ambient_dim} > cap {cap}")
    red, _ = lll_reduce(b, LllParams(Fraction(99, 100)))
    g = gram_schmidt(red)
    zero = (Fraction(0),) * g.n
    best: dict = {}

    def on_leaf(x, dist_sq):
        v = _canonical_sign(red.combine(x))
        cur = best.get("d")
        if cur is None or dist_sq < cur:
            best["d"] = dist_sq
            best["vs"] = {v}
        elif dist_sq == cur:
            best["vs"].add(v)
        return best["d"]

    enumerate_points(g.star_norms_sq, g.mu, zero, g.star_norms_sq[0], on_leaf, skip_zero=True)
    return min(best["vs"], key=_shortest_key)


def svp_approx(b, p: LllParams | None = None) -> nm.Vector:
    """First vector of the LLL-reduced basis; ||b_1||^2 <= 2^(n-1) lambda_1^2."""
    red, _ = lll_reduce(b, p)
    return red.columns[0]
