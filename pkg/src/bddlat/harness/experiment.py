"""Batch runs: generate planted instances, decode them, tally recovery and bound margins."""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .. import numerics as nm
from ..decode import DEFAULT_CVP_CAP, cvp_enumerate, decode_prepared, prepare
from ..errors import ConfigError, LatticeError, RadiusPolicyError
from ..gso import log_profile
from ..qary import QarySpec, suffix_bound_check, validate_spec
from ..reduction import DEFAULT_SVP_CAP, LllParams, is_lll_reduced
from . import serialize as ser
from .instances import RadiusPolicy, gen_instance, random_spec
from .rng import MASK64, SplitMix64, derive_seed

SPEC_TAG = MASK64


@dataclass(frozen=True)
class ExperimentConfig:
    """Every (n, k, q) in the product of the three lists with k <= n is one spec."""

    ns: tuple
    ks: tuple
    qs: tuple
    radius_policy: RadiusPolicy
    trials: int = 1
    seed: int = 0
    delta: Fraction = Fraction(3, 4)
    svp_cap: int = DEFAULT_SVP_CAP
    cvp_cap: int = DEFAULT_CVP_CAP

    def __post_init__(self):
        if self.trials < 1:
            raise ConfigError(f"trials must be at least 1, got {self.trials}")
        if not (self.ns and self.ks and self.qs):
            raise ConfigError("n, k and q lists must be non-empty")
        if any(n < 1 for n in self.ns) or any(k < 1 for k in self.ks) or any(q < 2 for q in self.qs):
            raise ConfigError("need n >= 1, k >= 1, q >= 2")
        if not 0 <= self.seed <= MASK64:
            raise ConfigError("seed must be a 64-bit unsigned integer")
        try:
            LllParams(self.delta)
        except ValueError as e:
            raise ConfigError(str(e)) from None
        object.__setattr__(self, "ns", tuple(self.ns))
        object.__setattr__(self, "ks", tuple(self.ks))
        object.__setattr__(self, "qs", tuple(self.qs))
        object.__setattr__(self, "delta", nm.to_rational(self.delta))

    def specs(self) -> list[tuple[int, int, int]]:
        return [(n, k, q) for n, k, q in itertools.product(self.ns, self.ks, self.qs) if k <= n]


@dataclass
class SpecResult:
    spec: QarySpec
    trials: int
    decoded: int = 0
    recovered: int = 0
    rejected: int = 0
    errors: list = field(default_factory=list)
    within_guarantee: int = 0
    cvp_checked: int = 0
    cvp_agree: int = 0
    residual_sum: Fraction = Fraction(0)
    lambda1_sq: Fraction | None = None
    lambda1_fallback: bool = False
    radius: float | None = None
    lll_reduced: bool | None = None
    suffix_bound_ok: bool | None = None
    suffix_min_log_margin: float | None = None
    profile_slack: float | None = None
    wall_clock: float = 0.0

    @property
    def recovery_rate(self) -> Fraction | None:
        return Fraction(self.recovered, self.decoded) if self.decoded else None

    @property
    def mean_residual_sq(self) -> Fraction | None:
        return self.residual_sum / self.decoded if self.decoded else None


@dataclass
class ExperimentSummary:
    config: ExperimentConfig
    results: list
    wall_clock: float = 0.0

    @property
    def recovery_rate(self) -> Fraction | None:
        dec = sum(r.decoded for r in self.results)
        return Fraction(sum(r.recovered for r in self.results), dec) if dec else None


def _run_spec(config: ExperimentConfig, idx: int, n: int, k: int, q: int) -> SpecResult:
    start = time.perf_counter()
    spec = random_spec(SplitMix64(derive_seed(config.seed, idx, SPEC_TAG)), n, k, q)
    res = SpecResult(spec, config.trials)
    p = LllParams(config.delta)
    try:
        for w in validate_spec(spec).warnings:
            res.errors.append(f"warning: {w}")
        lat = prepare(spec, p, config.svp_cap)
    except LatticeError as e:
        res.errors.append(f"prepare: {e}")
        res.wall_clock = time.perf_counter() - start
        return res
    res.lambda1_sq = lat.lambda1_sq
    res.lambda1_fallback = lat.bounds.lambda1_fallback
    res.radius = lat.bounds.radius
    res.lll_reduced = is_lll_reduced(lat.reduced, p).ok
    sfx = suffix_bound_check(lat.reduced, q)
    res.suffix_bound_ok = sfx.ok
    res.suffix_min_log_margin = sfx.min_log_margin
    res.profile_slack = log_profile(lat.gso).min() - lat.bounds.profile_floor
    for trial in range(config.trials):
        seed = derive_seed(config.seed, idx, trial)
        try:
            inst = gen_instance(spec, config.radius_policy, seed, p, config.svp_cap, lattice=lat)
        except RadiusPolicyError as e:
            res.rejected += 1
            if trial == 0:
                res.errors.append(f"rejected: {e}")
            continue
        try:
            rep = decode_prepared(lat, inst.target)
        except LatticeError as e:
            res.errors.append(f"trial {trial}: {e}")
            continue
        res.decoded += 1
        res.residual_sum += rep.residual_sq
        res.within_guarantee += rep.within_guarantee
        if rep.decoded_vector == inst.planted_vector(lat.basis):
            res.recovered += 1
        if n <= config.cvp_cap:
            res.cvp_checked += 1
            res.cvp_agree += cvp_enumerate(lat.reduced, inst.target, cap=config.cvp_cap) == rep.decoded_vector
    res.wall_clock = time.perf_counter() - start
    return res


def run_experiment(config: ExperimentConfig) -> ExperimentSummary:
    start = time.perf_counter()
    results = [_run_spec(config, i, n, k, q) for i, (n, k, q) in enumerate(config.specs())]
    return ExperimentSummary(config, results, time.perf_counter() - start)


# -- JSON ------------------------------------------------------------------------

def config_to_json(c: ExperimentConfig) -> dict:
    return {"n": list(c.ns), "k": list(c.ks), "q": list(c.qs),
            "delta": ser.rational_to_json(c.delta),
            "radius_policy": ser.policy_to_json(c.radius_policy),
            "trials": c.trials, "seed": c.seed, "svp_cap": c.svp_cap, "cvp_cap": c.cvp_cap}


def config_from_json(x, path: str = "$", strict: bool = True) -> ExperimentConfig:
    ser._fields(x, path, ("n", "k", "q", "radius_policy", "trials", "seed"),
                ("delta", "svp_cap", "cvp_cap"), strict=strict)

    def ints(key):
        v = x[key]
        ser._expect(isinstance(v, list) and v, "expected a non-empty array", f"{path}.{key}")
        return tuple(ser.parse_int(e, f"{path}.{key}[{i}]") for i, e in enumerate(v))

    kwargs = dict(
        ns=ints("n"), ks=ints("k"), qs=ints("q"),
        radius_policy=ser.policy_from_json(x["radius_policy"], f"{path}.radius_policy", strict),
        trials=ser.parse_int(x["trials"], f"{path}.trials"),
        seed=ser.parse_int(x["seed"], f"{path}.seed"),
    )
    if "delta" in x:
        kwargs["delta"] = ser.rational_from_json(x["delta"], f"{path}.delta")
    for key in ("svp_cap", "cvp_cap"):
        if key in x:
            kwargs[key] = ser.parse_int(x[key], f"{path}.{key}")
    return ExperimentConfig(**kwargs)


def _opt_rational(x):
    return None if x is None else ser.rational_to_json(x)


def result_to_json(r: SpecResult, include_timing: bool = False) -> dict:
    out = {
        "spec": ser.spec_to_json(r.spec),
        "trials": r.trials,
        "decoded": r.decoded,
        "recovered": r.recovered,
        "rejected": r.rejected,
        "recovery_rate": _opt_rational(r.recovery_rate),
        "within_guarantee": r.within_guarantee,
        "cvp_checked": r.cvp_checked,
        "cvp_agree": r.cvp_agree,
        "mean_residual_sq": _opt_rational(r.mean_residual_sq),
        "lambda1_sq": _opt_rational(r.lambda1_sq),
        "lambda1_fallback": r.lambda1_fallback,
        "radius": r.radius,
        "lll_reduced": r.lll_reduced,
        "suffix_bound_ok": r.suffix_bound_ok,
        "suffix_min_log_margin": r.suffix_min_log_margin,
        "profile_slack": r.profile_slack,
        "errors": list(r.errors),
    }
    if include_timing:
        out["wall_clock"] = r.wall_clock
    return out


def summary_to_json(s: ExperimentSummary, include_timing: bool = False) -> dict:
    """Wall-clock fields are left out unless asked for, so identical configs give identical bytes."""
    out = {"config": config_to_json(s.config),
           "recovery_rate": _opt_rational(s.recovery_rate),
           "results": [result_to_json(r, include_timing) for r in s.results]}
    if include_timing:
        out["wall_clock"] = s.wall_clock
    return out
