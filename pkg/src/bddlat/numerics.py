"""Exact rational scalars, vectors and matrices.

Scalars are :class:`fractions.Fraction` (always in lowest terms with a
positive denominator, zero as ``0/1``).  Vectors are tuples of Fractions and
matrices are row-major tuples of row tuples.  Integer matrices are the same
shape with ``int`` entries.  Nothing here mutates its arguments.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import ShapeError

Vector = tuple  # tuple[Fraction, ...]
Matrix = tuple  # tuple[tuple[Fraction, ...], ...]

_RATIONAL_RE = re.compile(r"^(-?)(\d+)(?:/(\d+))?$")


def to_rational(x) -> Fraction:
    """Coerce ``x`` to a Fraction.

    Floats go through their shortest decimal repr, so ``0.3`` becomes 3/10
    rather than the nearest binary fraction.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise ValueError(f"non-finite value {x!r}")
        return Fraction(repr(x))
    if isinstance(x, str):
        return parse_rational(x)[0]
    return Fraction(x)


def vector(xs: Iterable) -> Vector:
    return tuple(to_rational(x) for x in xs)


def matrix(rows: Iterable[Iterable]) -> Matrix:
    m = tuple(vector(r) for r in rows)
    _check_rect(m)
    return m


def int_matrix(rows: Iterable[Iterable[int]]) -> Matrix:
    m = tuple(tuple(int(x) for x in r) for r in rows)
    _check_rect(m)
    return m


def _check_rect(m: Matrix) -> None:
    if not m or not m[0]:
        raise ShapeError("matrix must have at least one row and one column")
    width = len(m[0])
    for i, r in enumerate(m):
        if len(r) != width:
            raise ShapeError(f"row {i} has length {len(r)}, expected {width}")


def shape(m: Matrix) -> tuple[int, int]:
    return len(m), len(m[0])


# -- rational text format ---------------------------------------------------

def format_rational(x) -> str:
    x = to_rational(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(s: str) -> tuple[Fraction, bool]:
    """Parse ``[-]digits[/digits]``.

    Returns the value and a flag that is True when the text was not already
    in canonical form (e.g. ``"3/6"``, ``"4/1"``, ``"-0"``, ``"007"``).
    """
    m = _RATIONAL_RE.match(s)
    if m is None:
        raise ValueError(f"not a rational literal: {s!r}")
    sign, num, den = m.groups()
    if den is not None and int(den) == 0:
        raise ValueError(f"zero denominator in {s!r}")
    value = Fraction(int(sign + num), int(den) if den is not None else 1)
    return value, format_rational(value) != s


def round_half_up(x: Fraction) -> int:
    """Nearest integer, ties toward +infinity: floor(x + 1/2)."""
    return math.floor(x + Fraction(1, 2))


def is_integral_vector(v: Sequence) -> bool:
    return all(Fraction(x).denominator == 1 for x in v)


def is_integral_matrix(m: Matrix) -> bool:
    return all(is_integral_vector(r) for r in m)


def common_denominator(values: Iterable) -> int:
    den = 1
    for x in values:
        d = Fraction(x).denominator
        den = den * d // math.gcd(den, d)
    return den


# -- vectors ----------------------------------------------------------------

def inner_product(u: Sequence, v: Sequence) -> Fraction:
    if len(u) != len(v):
        raise ShapeError(f"dimension mismatch: {len(u)} vs {len(v)}")
    return Fraction(sum(a * b for a, b in zip(u, v)))


def norm_sq(v: Sequence) -> Fraction:
    return Fraction(sum(a * a for a in v))


def vec_add(u: Sequence, v: Sequence) -> Vector:
    if len(u) != len(v):
        raise ShapeError(f"dimension mismatch: {len(u)} vs {len(v)}")
    return tuple(Fraction(a + b) for a, b in zip(u, v))


def vec_sub(u: Sequence, v: Sequence) -> Vector:
    if len(u) != len(v):
        raise ShapeError(f"dimension mismatch: {len(u)} vs {len(v)}")
    return tuple(Fraction(a - b) for a, b in zip(u, v))


def vec_scale(c, v: Sequence) -> Vector:
    return tuple(Fraction(c * a) for a in v)


# -- matrices ---------------------------------------------------------------

def transpose(m: Matrix) -> Matrix:
    return tuple(zip(*m))


def identity(n: int, one=1) -> Matrix:
    return tuple(tuple(one if i == j else 0 * one for j in range(n)) for i in range(n))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    ra, ca = shape(a)
    rb, cb = shape(b)
    if ca != rb:
        raise ShapeError(f"cannot multiply {ra}x{ca} by {rb}x{cb}")
    bt = transpose(b)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def mat_vec(a: Matrix, v: Sequence) -> Vector:
    if len(a[0]) != len(v):
        raise ShapeError(f"cannot multiply {len(a)}x{len(a[0])} by vector of length {len(v)}")
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def from_columns(cols: Sequence[Sequence]) -> Matrix:
    return transpose(tuple(tuple(c) for c in cols))


def columns(m: Matrix) -> tuple:
    return transpose(m)


def _integer_rows(m: Matrix) -> list[list[int]]:
    """Scale each row by its common denominator so elimination stays in Z."""
    out = []
    for row in m:
        den = common_denominator(row)
        out.append([int(Fraction(x) * den) for x in row])
    return out


def determinant(m: Matrix) -> Fraction:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n, c = shape(m)
    if n != c:
        raise ShapeError(f"determinant of non-square {n}x{c} matrix")
    scale = Fraction(1)
    for row in m:
        scale *= common_denominator(row)
    a = _integer_rows(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return Fraction(sign * a[n - 1][n - 1]) / scale


def is_unimodular(u: Matrix) -> bool:
    n, c = shape(u)
    if n != c:
        raise ShapeError(f"unimodularity of non-square {n}x{c} matrix")
    if not is_integral_matrix(u):
        return False
    return determinant(u) in (1, -1)


def rank(m: Matrix) -> int:
    """Rank over the rationals (fraction-free elimination)."""
    a = _integer_rows(m)
    rows, cols = len(a), len(a[0])
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, rows):
            if a[i][c]:
                f, g = a[i][c], a[r][c]
                a[i] = [x * g - y * f for x, y in zip(a[i], a[r])]
        r += 1
        if r == rows:
            break
    return r


def rank_mod_p(m: Matrix, p: int) -> int:
    """Rank over GF(p); ``p`` must be prime."""
    a = [[int(x) % p for x in row] for row in m]
    rows, cols = len(a), len(a[0])
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][c], -1, p)
        a[r] = [x * inv % p for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[r])]
        r += 1
        if r == rows:
            break
    return r


def solve(a: Matrix, b: Matrix) -> Matrix | None:
    """Exact solution X of ``a X = b`` for ``a`` of full column rank.

    ``a`` may be tall (more rows than columns); returns None when the system
    is inconsistent.  Forward elimination is fraction-free on the
    row-scaled integer augmented matrix; back substitution is rational.
    """
    ra, ca = shape(a)
    rb, cb = shape(b)
    if ra != rb:
        raise ShapeError(f"row mismatch: {ra} vs {rb}")
    aug = _integer_rows(tuple(tuple(ar) + tuple(br) for ar, br in zip(a, b)))
    width = ca + cb
    r = 0
    pivots = []
    for c in range(ca):
        piv = next((i for i in range(r, ra) if aug[i][c] != 0), None)
        if piv is None:
            raise ShapeError("coefficient matrix is not of full column rank")
        aug[r], aug[piv] = aug[piv], aug[r]
        g = aug[r][c]
        for i in range(r + 1, ra):
            f = aug[i][c]
            if f:
                row = [x * g - y * f for x, y in zip(aug[i], aug[r])]
                d = math.gcd(*row)
                aug[i] = [x // d for x in row] if d > 1 else row
        pivots.append(c)
        r += 1
    for i in range(r, ra):
        if any(aug[i][ca:width]):
            return None
    x = [[Fraction(0)] * cb for _ in range(ca)]
    for i in reversed(range(ca)):
        piv = aug[i][i]
        for j in range(cb):
            s = Fraction(aug[i][ca + j])
            for k in range(i + 1, ca):
                s -= aug[i][k] * x[k][j]
            x[i][j] = s / piv
    return tuple(tuple(row) for row in x)


def inverse(a: Matrix) -> Matrix:
    n, c = shape(a)
    if n != c:
        raise ShapeError(f"inverse of non-square {n}x{c} matrix")
    x = solve(a, identity(n))
    assert x is not None
    return x


def invariant_factors(m: Matrix) -> tuple[int, ...]:
    """Smith normal form diagonal of an integer matrix (nonzero entries, non-negative)."""
    a = [[int(x) for x in row] for row in m]
    rows, cols = len(a), len(a[0])
    out = []
    t = 0
    while t < min(rows, cols):
        nz = [(abs(a[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if a[i][j]]
        if not nz:
            break
        _, pi, pj = min(nz)
        a[t], a[pi] = a[pi], a[t]
        for row in a:
            row[t], row[pj] = row[pj], row[t]
        while True:
            done = True
            p = a[t][t]
            for i in range(t + 1, rows):
                if a[i][t]:
                    f = a[i][t] // p
                    a[i] = [x - f * y for x, y in zip(a[i], a[t])]
                    if a[i][t]:
                        done = False
            for j in range(t + 1, cols):
                if a[t][j]:
                    f = a[t][j] // p
                    for row in a:
                        row[j] -= f * row[t]
                    if a[t][j]:
                        done = False
            if done:
                # Divisibility: fold any entry not divisible by the pivot back in.
                bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                            if a[i][j] % p), None)
                if bad is None:
                    break
                a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
                continue
            nz = [(abs(a[i][t]), i, t) for i in range(t, rows) if a[i][t]]
            nz += [(abs(a[t][j]), t, j) for j in range(t, cols) if a[t][j]]
            _, pi, pj = min(nz)
            a[t], a[pi] = a[pi], a[t]
            for row in a:
                row[t], row[pj] = row[pj], row[t]
        out.append(abs(a[t][t]))
        t += 1
    return tuple(out)
