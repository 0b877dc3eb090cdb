"""Command-line entry point: ``bddlat <command> [options]``.

Exit codes: 0 success, 2 validation error, 3 oracle-cap refusal, 4 parse error.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import numerics as nm
from .decode import bdd_solve, prepare
from .duality import dual_basis
from .errors import LatticeError, OracleCapError, ParseError
from .gso import det_sq, gram_matrix, gram_schmidt, log_profile
from .harness import serialize as ser
from .harness.experiment import config_from_json, run_experiment, summary_to_json
from .harness.instances import POLICY_KINDS, RadiusPolicy, gen_instance
from .qary import bound_report, suffix_bound_check, validate_spec
from .reduction import DEFAULT_SVP_CAP, LllParams, is_lll_reduced, lll_reduce, svp_enumerate

EXIT_OK, EXIT_VALIDATION, EXIT_CAP, EXIT_PARSE = 0, 2, 3, 4


def _read(path: str):
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path) as fh:
                text = fh.read()
    except OSError as e:
        raise ParseError(str(e), location=path) from None
    return ser.loads(text)


def _rational_arg(s: str) -> Fraction:
    try:
        return nm.parse_rational(s)[0]
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _table(rows) -> str:
    rows = [(str(k), "-" if v is None else str(v)) for k, v in rows]
    width = max(len(k) for k, _ in rows)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows) + "\n"


def _fmt_vec(v) -> str:
    return "(" + ", ".join(nm.format_rational(x) for x in v) + ")"


# -- commands -----------------------------------------------------------------------

def cmd_gen(args):
    spec = ser.spec_from_json(_read(args.inp))
    rep = validate_spec(spec)
    if not rep.valid:
        raise LatticeError("; ".join(rep.errors))
    policy = RadiusPolicy(args.policy, args.radius)
    inst = gen_instance(spec, policy, args.seed, LllParams(args.delta), args.svp_cap)
    data = ser.instance_to_json(inst)
    text = _table([("target", _fmt_vec(inst.target)),
                   ("planted coefficients", inst.planted.coefficients),
                   ("error", _fmt_vec(inst.planted.error)),
                   ("error norm^2", float(nm.norm_sq(inst.planted.error))),
                   ("seed", inst.seed)])
    return data, text


def cmd_reduce(args):
    b = ser.basis_from_json(_read(args.inp))
    red, trace = lll_reduce(b, LllParams(args.delta))
    data = {"basis": ser.basis_to_json(red), "trace": ser.trace_to_json(trace)}
    rows = [(f"b{i + 1}", _fmt_vec(c)) for i, c in enumerate(red.columns)]
    rows += [("swaps", trace.swap_count), ("size reductions", trace.size_reduction_count),
             ("log profile", " ".join(f"{x:.6f}" for x in log_profile(gram_schmidt(red)).ells))]
    return data, _table(rows)


def cmd_decode(args):
    inst = ser.instance_from_json(_read(args.inp))
    rep = bdd_solve(inst.spec, inst.target, LllParams(args.delta), args.svp_cap)
    data = ser.report_to_json(rep)
    rows = [("decoded", _fmt_vec(rep.decoded_vector)), ("coefficients", rep.coefficients),
            ("residual^2", nm.format_rational(rep.residual_sq)),
            ("radius guarantee", rep.radius_guarantee), ("within guarantee", rep.within_guarantee),
            ("radius from fallback", rep.radius_fallback)]
    if inst.planted is not None:
        rows.append(("planted recovered", rep.decoded_vector == inst.planted_vector()))
    return data, _table(rows)


def cmd_svp(args):
    b = ser.basis_from_json(_read(args.inp))
    v = svp_enumerate(b, cap=args.svp_cap)
    data = {"vector": ser.vector_to_json(v), "norm_sq": ser.rational_to_json(nm.norm_sq(v))}
    return data, _table([("shortest", _fmt_vec(v)), ("norm^2", data["norm_sq"])])


def cmd_dual(args):
    d = dual_basis(ser.basis_from_json(_read(args.inp)))
    rows = [(f"d{i + 1}", _fmt_vec(c)) for i, c in enumerate(d.columns)]
    return {"basis": ser.basis_to_json(d)}, _table(rows)


def cmd_bounds(args):
    spec = ser.spec_from_json(_read(args.inp))
    rep = validate_spec(spec)
    if not rep.valid:
        raise LatticeError("; ".join(rep.errors))
    p = LllParams(args.delta)
    if args.lambda1_sq is not None:
        lat = prepare(spec, p, svp_cap=0)
        br = bound_report(spec, p, args.lambda1_sq, reduced_basis=lat.reduced, mode=args.mode)
    else:
        br = prepare(spec, p, args.svp_cap, mode=args.mode).bounds
    data = ser.bounds_to_json(br)
    data["warnings"] = list(rep.warnings)
    return data, _table([(k, v) for k, v in data.items()])


def cmd_verify(args):
    b = ser.basis_from_json(_read(args.inp))
    p = LllParams(args.delta)
    red = is_lll_reduced(b, p)
    d = dual_basis(b)
    eye = nm.identity(b.rank)
    gb, gd = gram_matrix(b), gram_matrix(d)
    data = {
        "lll_reduced": red.ok,
        "size_reduced": red.size_reduced,
        "lovasz_failures": [i for i, _, _, ok in red.lovasz if not ok],
        "dual": {
            "bt_d_is_identity": nm.mat_mul(nm.transpose(b.matrix()), d.matrix()) == eye,
            "gram_product_is_identity": nm.mat_mul(gb, gd) == eye,
            "det_reciprocity": det_sq(b) * det_sq(d) == 1,
            "double_dual": dual_basis(d) == b,
        },
        "suffix_bound": None,
    }
    if args.q is not None:
        f = suffix_bound_check(b, args.q)
        data["suffix_bound"] = {"ok": f.ok, "min_log_margin": f.min_log_margin,
                          "ratios": [ser.rational_to_json(r) for r in f.ratios]}
    rows = [("lll reduced", red.ok), ("size reduced", red.size_reduced),
            ("lovasz failures", data["lovasz_failures"])]
    rows += [(f"dual: {k}", v) for k, v in data["dual"].items()]
    if data["suffix_bound"] is not None:
        rows += [("suffix bound ok", data["suffix_bound"]["ok"]), ("suffix bound min margin", data["suffix_bound"]["min_log_margin"])]
    return data, _table(rows)


def cmd_experiment(args):
    raw = _read(args.inp)
    if args.trials is not None:
        raw["trials"] = args.trials
    if args.seed is not None:
        raw["seed"] = args.seed
    if args.svp_cap is not None:
        raw["svp_cap"] = args.svp_cap
    if args.cvp_cap is not None:
        raw["cvp_cap"] = args.cvp_cap
    if args.delta is not None:
        raw["delta"] = nm.format_rational(args.delta)
    summary = run_experiment(config_from_json(raw))
    data = summary_to_json(summary, include_timing=args.timing)
    lines = [f"{'n':>3} {'k':>2} {'q':>6} {'trials':>6} {'recovered':>9} {'rejected':>8} "
             f"{'suffix margin':>13} {'profile slack':>12}"]
    for r in summary.results:
        sfx = "-" if r.suffix_min_log_margin is None else f"{r.suffix_min_log_margin:.4f}"
        p25 = "-" if r.profile_slack is None else f"{r.profile_slack:.4f}"
        lines.append(f"{r.spec.n:>3} {r.spec.k:>2} {r.spec.q:>6} {r.trials:>6} {r.recovered:>9} "
                     f"{r.rejected:>8} {sfx:>13} {p25:>12}")
    return data, "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bddlat", description="Exact lattice toolkit for bounded distance decoding")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_, delta_default=Fraction(3, 4)):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--in", dest="inp", default="-", help="input JSON file (default stdin)")
        sp.add_argument("--out", default=None, help="output file (default stdout)")
        sp.add_argument("--format", choices=("json", "text"), default="json")
        sp.add_argument("--delta", type=_rational_arg, default=delta_default, help="LLL delta as P/Q")
        sp.set_defaults(func=func)
        return sp

    sp = add("gen", cmd_gen, "plant a BDD instance in the lattice of a q-ary spec")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--policy", choices=POLICY_KINDS, default="theorem_radius_fraction")
    sp.add_argument("--radius", type=_rational_arg, default=Fraction(1), help="policy value as P/Q")
    sp.add_argument("--svp-cap", type=int, default=DEFAULT_SVP_CAP)

    add("reduce", cmd_reduce, "LLL-reduce a basis")

    sp = add("decode", cmd_decode, "solve a BDD instance (spec + target)")
    sp.add_argument("--svp-cap", type=int, default=DEFAULT_SVP_CAP)

    sp = add("svp", cmd_svp, "exact shortest vector by enumeration")
    sp.add_argument("--svp-cap", type=int, default=DEFAULT_SVP_CAP)

    add("dual", cmd_dual, "dual basis B (B^T B)^-1")

    sp = add("bounds", cmd_bounds, "decoding radius and profile bounds for a q-ary spec")
    sp.add_argument("--svp-cap", type=int, default=DEFAULT_SVP_CAP)
    sp.add_argument("--lambda1-sq", type=_rational_arg, default=None,
                    help="use this lambda_1^2 instead of enumerating it")
    sp.add_argument("--mode", choices=("plain", "safe"), default="plain",
                    help="delta' = 1/sqrt(delta) (plain) or 1/sqrt(delta - 1/4) (safe)")

    sp = add("verify", cmd_verify, "check LLL-reducedness, dual identities and the suffix bound")
    sp.add_argument("--q", type=int, default=None, help="check the q-ary suffix bound for this q")

    sp = add("experiment", cmd_experiment, "run a seeded batch experiment", delta_default=None)
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--trials", type=int, default=None)
    sp.add_argument("--svp-cap", type=int, default=None)
    sp.add_argument("--cvp-cap", type=int, default=None)
    sp.add_argument("--timing", action="store_true", help="include wall-clock fields in JSON")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        data, text = args.func(args)
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except OracleCapError as e:
        print(f"refused: {e}", file=sys.stderr)
        return EXIT_CAP
    except (LatticeError, ValueError) as e:
        print(f"validation error: {e}", file=sys.stderr)
        return EXIT_VALIDATION
    out = ser.dumps(data) if args.format == "json" else text
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
