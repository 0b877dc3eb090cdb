"""q-ary lattices L_A = qZ^n + A Z^k and the quantitative decoding bounds.

Everything up to the log profile is exact.  The bound formulas need
logarithms and are evaluated in doubles; comparisons against them carry
``BOUND_TOL``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import numerics as nm
from .duality import triangularize_rows
from .errors import ShapeError, SpecError
from .gso import Basis, as_basis, gram_schmidt, log_ratio
from .reduction import LllParams

BOUND_TOL = 1e-9

DELTA_PRIME_MODES = ("plain", "safe")


@dataclass(frozen=True)
class QarySpec:
    """``a`` is the n x k matrix A as a tuple of n rows."""

    n: int
    q: int
    k: int
    a: tuple

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(tuple(int(x) for x in row) for row in self.a))

    def reduced(self) -> "QarySpec":
        return QarySpec(self.n, self.q, self.k, tuple(tuple(x % self.q for x in r) for r in self.a))


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


@dataclass
class ValidationReport:
    """``group_rank`` is the number of cyclic factors of L mod q (via Smith form).

    ``rank_mod_q`` is only filled in when q is prime.
    """

    valid: bool
    errors: list = field(default_factory=list)
    warnings: list = field(default_factory=list)
    rank_over_q: int | None = None
    rank_mod_q: int | None = None
    group_rank: int | None = None
    q_is_prime: bool = False
    lambda1_at_most_q: bool = True


def _check_shape(spec: QarySpec) -> None:
    if len(spec.a) != spec.n:
        raise ShapeError(f"A has {len(spec.a)} rows, expected n = {spec.n}")
    for i, row in enumerate(spec.a):
        if len(row) != spec.k:
            raise ShapeError(f"row {i} of A has {len(row)} entries, expected k = {spec.k}")


def validate_spec(spec: QarySpec) -> ValidationReport:
    rep = ValidationReport(valid=True)
    if spec.n < 1:
        rep.errors.append(f"n must be positive, got {spec.n}")
    if spec.q < 2:
        rep.errors.append(f"q must be at least 2, got {spec.q}")
    if spec.k < 1:
        rep.errors.append(f"k must be at least 1, got {spec.k}")
    if spec.k > spec.n:
        rep.errors.append(f"k = {spec.k} exceeds n = {spec.n}")
    if rep.errors:
        rep.valid = False
        return rep
    _check_shape(spec)
    if any(not 0 <= x < spec.q for row in spec.a for x in row):
        rep.warnings.append("entries of A outside [0, q) were reduced mod q")
    a = spec.reduced().a
    rep.q_is_prime = _is_prime(spec.q)
    rep.rank_over_q = nm.rank(a)
    if rep.q_is_prime:
        rep.rank_mod_q = nm.rank_mod_p(a, spec.q)
        if rep.rank_mod_q < spec.k:
            rep.warnings.append(f"rank of A mod q is {rep.rank_mod_q} < k = {spec.k}")
    factors = nm.invariant_factors(qary_basis(spec).matrix())
    rep.group_rank = sum(1 for h in factors if h != spec.q)
    if rep.group_rank < spec.k and not (rep.q_is_prime and rep.rank_mod_q < spec.k):
        rep.warnings.append(f"group rank of L mod q is {rep.group_rank} < k = {spec.k}")
    if rep.rank_over_q < spec.k:
        rep.warnings.append(f"columns of A are dependent over Q (rank {rep.rank_over_q})")
    return rep


def _require_valid(spec: QarySpec) -> QarySpec:
    errs = []
    if spec.n < 1 or spec.q < 2 or spec.k < 1 or spec.k > spec.n:
        errs.append(f"invalid parameters n={spec.n}, q={spec.q}, k={spec.k}")
    if errs:
        raise SpecError("; ".join(errs))
    _check_shape(spec)
    return spec.reduced()


def qary_basis(spec: QarySpec) -> Basis:
    """Canonical basis of L_A from the generators [A | qI].

    The returned matrix (basis vectors as columns) is lower triangular with
    positive diagonal and every entry left of the diagonal in row i reduced
    into [0, H[i][i]).
    """
    spec = _require_valid(spec)
    n, q = spec.n, spec.q
    gens = [list(col) for col in zip(*spec.a)]
    gens += [[q if i == j else 0 for i in range(n)] for j in range(n)]
    triangularize_rows(gens)
    h = gens[:n]
    for i in range(n):
        for j in range(i):
            f = h[j][i] // h[i][i]
            if f:
                h[j] = [x - f * y for x, y in zip(h[j], h[i])]
    return Basis.from_columns(h)


@dataclass
class SuffixReport:
    """Checks prod_{j>i} ||b*_j||^2 <= q^(2(n-i)) for i = 0..n-1.

    ``ratios[i]`` is bound/product (exact, >= 1 when it holds) and
    ``log_margins[i]`` the same margin as (n-i) ln q - sum_{j>i} ell_j.
    """

    products: list
    bounds: list
    passed: list
    ratios: list
    log_margins: list

    @property
    def ok(self) -> bool:
        return all(self.passed)

    @property
    def min_log_margin(self) -> float:
        return min(self.log_margins)


def suffix_bound_check(b, q: int) -> SuffixReport:
    b = as_basis(b)
    n = b.rank
    for i in range(b.ambient_dim):
        e = tuple([0] * i + [q] + [0] * (b.ambient_dim - i - 1))
        x = nm.solve(b.matrix(), tuple((v,) for v in e))
        if x is None or not nm.is_integral_matrix(x):
            raise ValueError(f"q*e_{i} is not in the lattice; qZ^n must be contained in L")
    norms = gram_schmidt(b).star_norms_sq
    products, bounds, passed, ratios, margins = [], [], [], [], []
    for i in range(n):
        prod = Fraction(1)
        for ns in norms[i:]:
            prod *= ns
        bound = Fraction(q) ** (2 * (n - i))
        products.append(prod)
        bounds.append(bound)
        passed.append(prod <= bound)
        ratios.append(bound / prod)
        margins.append(0.5 * log_ratio(bound / prod))
    return SuffixReport(products, bounds, passed, ratios, margins)


def delta_prime_log(p: LllParams, mode: str = "plain") -> float:
    """ln delta' with delta' = 1/sqrt(delta) ("plain") or 1/sqrt(delta - 1/4) ("safe")."""
    if mode == "plain":
        return 0.5 * log_ratio(1 / p.delta)
    if mode == "safe":
        return 0.5 * log_ratio(1 / (p.delta - Fraction(1, 4)))
    raise ValueError(f"unknown delta' mode {mode!r}; expected one of {DELTA_PRIME_MODES}")


def _exponent(k: int, q: int, ldp: float) -> float:
    return math.sqrt(2 * k * math.log(q) * ldp)


def block_size(k: int, q: int, p: LllParams, mode: str = "plain") -> int:
    """d = ceil(sqrt(2k ln q / ln delta'))."""
    return max(1, math.ceil(math.sqrt(2 * k * math.log(q) / delta_prime_log(p, mode))))


def profile_floor(spec: QarySpec, p: LllParams, lambda1_sq, mode: str = "plain") -> float:
    """ln lambda_1 - sqrt(2k ln delta' ln q): lower bound on min_i ell_i after LLL."""
    l1 = nm.to_rational(lambda1_sq)
    return 0.5 * log_ratio(l1) - _exponent(spec.k, spec.q, delta_prime_log(p, mode))


def decoding_radius(spec: QarySpec, p: LllParams, lambda1_sq, mode: str = "plain") -> float:
    """(1/2) lambda_1 exp(-sqrt(2k ln q ln delta'))."""
    l1 = nm.to_rational(lambda1_sq)
    return 0.5 * math.sqrt(l1) * math.exp(-_exponent(spec.k, spec.q, delta_prime_log(p, mode)))


@dataclass
class BoundReport:
    delta: Fraction
    delta_prime_log: float
    d: int
    profile_floor: float
    radius: float
    lambda1_sq: Fraction | None
    lambda1_fallback: bool
    mode: str = "plain"
    min_gs_sq: Fraction | None = None
    half_min_gs: float | None = None


def bound_report(spec: QarySpec, p: LllParams | None = None, lambda1_sq=None,
                 reduced_basis=None, mode: str = "plain") -> BoundReport:
    """Collect every bound for one spec.

    Without an exact ``lambda1_sq`` the certified lower bound
    lambda_1 >= min_i ||b*_i|| of ``reduced_basis`` is used and flagged.
    """
    p = p or LllParams()
    min_gs = None
    if reduced_basis is not None:
        min_gs = min(gram_schmidt(reduced_basis).star_norms_sq)
    fallback = lambda1_sq is None
    if fallback:
        if min_gs is None:
            raise ValueError("need either lambda1_sq or a reduced basis for the fallback")
        l1 = min_gs
    else:
        l1 = nm.to_rational(lambda1_sq)
    return BoundReport(
        delta=p.delta,
        delta_prime_log=delta_prime_log(p, mode),
        d=block_size(spec.k, spec.q, p, mode),
        profile_floor=profile_floor(spec, p, l1, mode),
        radius=decoding_radius(spec, p, l1, mode),
        lambda1_sq=None if fallback else l1,
        lambda1_fallback=fallback,
        mode=mode,
        min_gs_sq=min_gs,
        half_min_gs=None if min_gs is None else 0.5 * math.sqrt(min_gs),
    )
