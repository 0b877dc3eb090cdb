"""JSON encoding of specs, bases, instances, reports, configs and summaries.

Rationals are strings in lowest terms (``"-7/2"``, ``"5"``); matrices are
row-major arrays of such strings, and a basis matrix holds its vectors as
columns.  Parsing is strict by default: unknown fields raise
:class:`ParseError` with a JSON path.  Non-canonical rationals such as
``"3/6"`` are accepted, normalized, and reported via
:class:`NormalizationWarning`.
"""

from __future__ import annotations

import json
import warnings
from fractions import Fraction
from typing import Any

from .. import numerics as nm
from ..decode import DecodeReport
from ..errors import ParseError
from ..gso import Basis
from ..qary import BoundReport, QarySpec
from ..reduction import ReductionTrace
from .instances import BddInstance, Planted, RadiusPolicy


class NormalizationWarning(UserWarning):
    """A rational on input was rewritten into canonical form."""


# -- encoders ------------------------------------------------------------------

def rational_to_json(x) -> str:
    return nm.format_rational(x)


def vector_to_json(v) -> list:
    return [nm.format_rational(x) for x in v]


def matrix_to_json(m) -> list:
    return [vector_to_json(r) for r in m]


def basis_to_json(b: Basis) -> list:
    return matrix_to_json(b.matrix())


def spec_to_json(s: QarySpec) -> dict:
    return {"n": s.n, "q": s.q, "k": s.k, "A": [list(r) for r in s.a]}


def policy_to_json(p: RadiusPolicy) -> dict:
    return {"kind": p.kind, "value": rational_to_json(p.value)}


def instance_to_json(inst: BddInstance) -> dict:
    planted = None
    if inst.planted is not None:
        planted = {"coefficients": list(inst.planted.coefficients),
                   "error": vector_to_json(inst.planted.error)}
    return {"spec": spec_to_json(inst.spec), "target": vector_to_json(inst.target),
            "planted": planted, "seed": inst.seed}


def report_to_json(r: DecodeReport) -> dict:
    return {
        "decoded_vector": vector_to_json(r.decoded_vector),
        "coefficients": list(r.coefficients),
        "residual_sq": rational_to_json(r.residual_sq),
        "used_basis": basis_to_json(r.used_basis),
        "radius_guarantee": r.radius_guarantee,
        "within_guarantee": r.within_guarantee,
        "box_bound_sq": rational_to_json(r.box_bound_sq),
        "half_min_gs": r.half_min_gs,
        "radius_fallback": r.radius_fallback,
    }


def trace_to_json(t: ReductionTrace) -> dict:
    return {"swap_count": t.swap_count, "size_reduction_count": t.size_reduction_count,
            "potential_sq_history": [rational_to_json(x) for x in t.potential_sq_history]}


def bounds_to_json(b: BoundReport) -> dict:
    opt = lambda x: None if x is None else rational_to_json(x)  # noqa: E731
    return {
        "delta": rational_to_json(b.delta),
        "delta_prime_log": b.delta_prime_log,
        "d": b.d,
        "profile_floor": b.profile_floor,
        "radius": b.radius,
        "lambda1_sq": opt(b.lambda1_sq),
        "lambda1_fallback": b.lambda1_fallback,
        "mode": b.mode,
        "min_gs_sq": opt(b.min_gs_sq),
        "half_min_gs": b.half_min_gs,
    }


def dumps(obj: Any) -> str:
    """Canonical text form: two-space indent, trailing newline."""
    return json.dumps(obj, indent=2) + "\n"


# -- decoders ------------------------------------------------------------------

def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, location=f"line {e.lineno} col {e.colno}") from None


def _expect(cond: bool, msg: str, path: str) -> None:
    if not cond:
        raise ParseError(msg, location=path)


def _fields(obj, path: str, required: tuple, optional: tuple = (), strict: bool = True) -> None:
    _expect(isinstance(obj, dict), "expected an object", path)
    for key in required:
        _expect(key in obj, f"missing field {key!r}", path)
    if strict:
        extra = sorted(set(obj) - set(required) - set(optional))
        _expect(not extra, f"unknown field(s) {', '.join(map(repr, extra))}", path)


def parse_int(x, path: str) -> int:
    _expect(isinstance(x, int) and not isinstance(x, bool), "expected an integer", path)
    return x


def parse_bool(x, path: str) -> bool:
    _expect(isinstance(x, bool), "expected a boolean", path)
    return x


def parse_float(x, path: str) -> float:
    _expect(isinstance(x, (int, float)) and not isinstance(x, bool), "expected a number", path)
    return float(x)


def rational_from_json(x, path: str = "$") -> Fraction:
    if isinstance(x, int) and not isinstance(x, bool):
        return Fraction(x)
    _expect(isinstance(x, str), "expected a rational string", path)
    try:
        value, changed = nm.parse_rational(x)
    except ValueError as e:
        raise ParseError(str(e), location=path) from None
    if changed:
        warnings.warn(f"{path}: {x!r} normalized to {nm.format_rational(value)!r}",
                      NormalizationWarning, stacklevel=2)
    return value


def vector_from_json(x, path: str = "$") -> tuple:
    _expect(isinstance(x, list) and len(x) > 0, "expected a non-empty array", path)
    return tuple(rational_from_json(v, f"{path}[{i}]") for i, v in enumerate(x))


def matrix_from_json(x, path: str = "$") -> tuple:
    _expect(isinstance(x, list) and len(x) > 0, "expected a non-empty array of rows", path)
    rows = tuple(vector_from_json(r, f"{path}[{i}]") for i, r in enumerate(x))
    _expect(len({len(r) for r in rows}) == 1, "rows differ in length", path)
    return rows


def basis_from_json(x, path: str = "$", strict: bool = True) -> Basis:
    if isinstance(x, dict):
        _fields(x, path, ("basis",), strict=strict)
        x, path = x["basis"], f"{path}.basis"
    return Basis.from_matrix(matrix_from_json(x, path))


def spec_from_json(x, path: str = "$", strict: bool = True) -> QarySpec:
    _fields(x, path, ("n", "q", "k", "A"), strict=strict)
    a = x["A"]
    _expect(isinstance(a, list), "expected an array of rows", f"{path}.A")
    rows = []
    for i, r in enumerate(a):
        _expect(isinstance(r, list), "expected a row array", f"{path}.A[{i}]")
        rows.append(tuple(parse_int(v, f"{path}.A[{i}][{j}]") for j, v in enumerate(r)))
    return QarySpec(parse_int(x["n"], f"{path}.n"), parse_int(x["q"], f"{path}.q"),
                    parse_int(x["k"], f"{path}.k"), tuple(rows))


def policy_from_json(x, path: str = "$", strict: bool = True) -> RadiusPolicy:
    _fields(x, path, ("kind", "value"), strict=strict)
    try:
        return RadiusPolicy(x["kind"], rational_from_json(x["value"], f"{path}.value"))
    except ValueError as e:
        if isinstance(e, ParseError):
            raise
        raise ParseError(str(e), location=path) from None


def instance_from_json(x, path: str = "$", strict: bool = True) -> BddInstance:
    _fields(x, path, ("spec", "target"), ("planted", "seed"), strict=strict)
    spec = spec_from_json(x["spec"], f"{path}.spec", strict)
    target = vector_from_json(x["target"], f"{path}.target")
    planted = None
    if x.get("planted") is not None:
        pp = f"{path}.planted"
        p = x["planted"]
        _fields(p, pp, ("coefficients", "error"), strict=strict)
        _expect(isinstance(p["coefficients"], list), "expected an array", f"{pp}.coefficients")
        coeffs = tuple(parse_int(c, f"{pp}.coefficients[{i}]") for i, c in enumerate(p["coefficients"]))
        planted = Planted(coeffs, vector_from_json(p["error"], f"{pp}.error"))
    seed = parse_int(x.get("seed", 0), f"{path}.seed")
    return BddInstance(spec, target, planted, seed)


def report_from_json(x, path: str = "$", strict: bool = True) -> DecodeReport:
    keys = ("decoded_vector", "coefficients", "residual_sq", "used_basis", "radius_guarantee",
            "within_guarantee", "box_bound_sq", "half_min_gs")
    _fields(x, path, keys, ("radius_fallback",), strict=strict)
    return DecodeReport(
        decoded_vector=vector_from_json(x["decoded_vector"], f"{path}.decoded_vector"),
        coefficients=tuple(parse_int(c, f"{path}.coefficients[{i}]")
                           for i, c in enumerate(x["coefficients"])),
        residual_sq=rational_from_json(x["residual_sq"], f"{path}.residual_sq"),
        used_basis=basis_from_json(x["used_basis"], f"{path}.used_basis"),
        radius_guarantee=parse_float(x["radius_guarantee"], f"{path}.radius_guarantee"),
        within_guarantee=parse_bool(x["within_guarantee"], f"{path}.within_guarantee"),
        box_bound_sq=rational_from_json(x["box_bound_sq"], f"{path}.box_bound_sq"),
        half_min_gs=parse_float(x["half_min_gs"], f"{path}.half_min_gs"),
        radius_fallback=parse_bool(x.get("radius_fallback", False), f"{path}.radius_fallback"),
    )
