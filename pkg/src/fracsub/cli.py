"""Command line entry point.

    fracsub certify  INSTANCE [--tolerance T] [--delta D] [--output FILE]
    fracsub solve    INSTANCE [--method greedy|brute|both] [--seed S] [--output FILE]
    fracsub generate KIND --n N [--m M] [--p P] [--seed S] [--preset NAME] [--output FILE]
    fracsub batch    KIND --count C --n N [...] --output DIR

Exit codes: 0 certified submodular (or success for generate/solve/batch),
1 input error, 2 not submodular, 3 inconclusive.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional

from . import instance_io
from .assortment import (
    MMNLInstance,
    check_cardinality_ratio_condition,
    check_revenue_spread,
    revenue_ordered_baseline,
    to_multiratio,
)
from .certification import MAX_EXHAUSTIVE, certify_instance
from .errors import FracSubError, GroundSetTooLarge
from .facility import (
    PChoiceInstance,
    check_pchoice_monotone,
    check_pchoice_sufficient,
    homogenize,
    pchoice_sufficient_sides,
    solve_pchoice,
)
from .generate import (
    MMNL_PRESETS,
    PCHOICE_PRESETS,
    RNG_NAME,
    random_mmnl,
    random_multiratio,
    random_pchoice,
    rng_for,
)
from .ratio import MultiRatioInstance, evaluate_objective
from .regions import Cardinality
from .reports import DEFAULT_TOL, Bound, Verdict
from .solvers import GREEDY_CARDINALITY, brute_force_maximize, greedy_maximize, guarantee_for
from .subsets import MAX_ENUMERATION

EXIT_OK, EXIT_INPUT, EXIT_NOT_SUBMODULAR, EXIT_INCONCLUSIVE = 0, 1, 2, 3

_EXIT_FOR_VERDICT = {
    Verdict.SUBMODULAR: EXIT_OK,
    Verdict.MONOTONE_SUBMODULAR: EXIT_OK,
    Verdict.NOT_SUBMODULAR: EXIT_NOT_SUBMODULAR,
    Verdict.INCONCLUSIVE: EXIT_INCONCLUSIVE,
}


def _with_delta(inst, delta: Optional[float]):
    if delta is not None and isinstance(inst, PChoiceInstance):
        return inst.with_delta(delta)
    return inst


def certify_report(inst, tol: float = DEFAULT_TOL) -> tuple[dict, Verdict]:
    """Structured certification report for any instance kind, plus its verdict."""
    if isinstance(inst, MultiRatioInstance):
        cert = certify_instance(inst, tol)
        return {"kind": "multiratio", "certification": cert.to_dict()}, cert.verdict
    if isinstance(inst, MMNLInstance):
        cert = certify_instance(to_multiratio(inst), tol)
        report = {
            "kind": "mmnl",
            "certification": cert.to_dict(),
            "revenue_spread": [check_revenue_spread(inst, k, tol)._asdict() for k in range(inst.m)],
        }
        if isinstance(inst.region, Cardinality):
            report["cardinality_ratio_condition"] = check_cardinality_ratio_condition(inst, tol=tol)._asdict()
        return report, cert.verdict
    cert = certify_instance(homogenize(inst), tol)
    report = {
        "kind": "pchoice",
        "delta": inst.delta,
        "certification": cert.to_dict(),
        "monotone_checks": [check_pchoice_monotone(inst, k, tol)._asdict() for k in range(inst.m)],
        "sufficient_checks": [
            {"holds": check_pchoice_sufficient(inst, k, tol), "sides": list(pchoice_sufficient_sides(inst, k))}
            for k in range(inst.m)
        ],
    }
    return report, cert.verdict


def _greedy_section(mr: MultiRatioInstance, cert, extra_bound: Optional[Bound] = None) -> dict:
    trace = greedy_maximize(mr)
    bound = guarantee_for(mr, cert) or extra_bound
    return {
        "set": list(trace.best_prefix_set),
        "value": evaluate_objective(mr, trace.best_prefix_set),
        "selection": "best_prefix",
        "note": "best prefix of the greedy trace; the plain algorithm returns final_set",
        "bound": bound.to_dict() if bound else None,
        "trace": trace.to_dict(),
    }


def solve_report(inst, method: str = "both", tol: float = DEFAULT_TOL) -> dict:
    if isinstance(inst, PChoiceInstance):
        rep = solve_pchoice(inst, tol, brute_limit=MAX_ENUMERATION if method != "greedy" else -1)
        out = {"kind": "pchoice", "method": method}
        out.update(rep.to_dict())
        return out

    if isinstance(inst, MMNLInstance):
        mr = to_multiratio(inst)
        kind = "mmnl"
    else:
        mr, kind = inst, "multiratio"
    if method in ("brute", "both") and mr.n > MAX_ENUMERATION:
        raise GroundSetTooLarge(f"brute force needs n <= {MAX_ENUMERATION}, got n={mr.n}")

    out: dict = {"kind": kind, "method": method}
    cert = certify_instance(mr, tol) if mr.n <= MAX_EXHAUSTIVE else None
    out["certification"] = {"verdict": cert.verdict.value, "summary": cert.summary()} if cert else None
    extra = None
    if kind == "mmnl":
        base = revenue_ordered_baseline(inst)
        out["revenue_ordered"] = base.to_dict()
        if isinstance(inst.region, Cardinality):
            cond = check_cardinality_ratio_condition(inst, tol=tol)
            out["cardinality_ratio_condition"] = cond._asdict()
            if cond.holds:
                extra = Bound(GREEDY_CARDINALITY, "greedy under the MMNL revenue-ratio condition")
    if method in ("greedy", "both"):
        out["greedy"] = _greedy_section(mr, cert, extra)
    if method in ("brute", "both"):
        out["brute"] = brute_force_maximize(mr).to_dict()
    if method == "both":
        opt = out["brute"]["value"]
        out["empirical_ratio"] = out["greedy"]["value"] / opt if opt > 0 else None
    return out


def _parse_range(text: str) -> tuple[float, float]:
    try:
        lo, hi = (float(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO,HI, got {text!r}") from None
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return lo, hi


def generate_instance(args, seed: Optional[int]) -> instance_io.InstanceFile:
    rng = rng_for(seed)
    meta = {"rng": RNG_NAME, "seed": seed, "n": args.n, "m": args.m, "preset": args.preset,
            "region": args.region, "p": args.p}
    if args.kind == "multiratio":
        kw = {}
        if args.homogeneous:
            kw["homogeneous"] = True
        if args.ratio_spread is not None:
            kw["ratio_spread"] = args.ratio_spread
        inst = random_multiratio(rng, args.n, args.m, args.region, args.p, **kw)
        meta.update(kw)
    elif args.kind == "mmnl":
        inst = random_mmnl(rng, args.n, args.m, preset=args.preset or "uniform", region=args.region,
                           p=args.p, v_range=args.v_range, v0_range=args.v0_range, r_range=args.r_range)
    else:
        if args.p is None:
            raise FracSubError("pchoice instances need --p")
        inst = random_pchoice(rng, args.n, args.m, args.p, delta=args.delta if args.delta is not None else 0.5,
                              preset=args.preset or "uniform", v_range=args.v_range,
                              w_range=args.w_range, d_range=args.d_range)
    return instance_io.InstanceFile(args.kind, inst, {k: v for k, v in meta.items() if v is not None})


def _emit(text: str, output: Optional[str]) -> None:
    if output:
        instance_io.write_atomic(output, text)
    else:
        sys.stdout.write(text)


def cmd_certify(args) -> int:
    inst = _with_delta(instance_io.load(args.instance).instance, args.delta)
    report, verdict = certify_report(inst, args.tolerance)
    report["tolerance"] = args.tolerance
    _emit(instance_io.dumps(report), args.output)
    return _EXIT_FOR_VERDICT[verdict]


def cmd_solve(args) -> int:
    inst = _with_delta(instance_io.load(args.instance).instance, args.delta)
    report = solve_report(inst, args.method, args.tolerance)
    report["seed"] = args.seed
    _emit(instance_io.dumps(report), args.output)
    return EXIT_OK


def cmd_generate(args) -> int:
    _emit(instance_io.dumps(generate_instance(args, args.seed)), args.output)
    return EXIT_OK


def cmd_batch(args) -> int:
    if not args.output:
        raise FracSubError("batch needs --output DIR")
    out_dir = Path(args.output)
    base = args.seed if args.seed is not None else 0
    rows = []
    for t in range(args.count):
        seed = base + t
        doc = generate_instance(args, seed)
        stem = f"{args.kind}-{seed:06d}"
        instance_io.write_atomic(out_dir / f"{stem}.json", instance_io.dumps(doc))
        cert, verdict = certify_report(doc.instance, args.tolerance)
        solved = solve_report(doc.instance, args.method, args.tolerance)
        instance_io.write_atomic(out_dir / f"{stem}.result.json",
                                 instance_io.dumps({"certify": cert, "solve": solved}))
        rows.append({
            "seed": seed,
            "verdict": verdict.value,
            "exit_code": _EXIT_FOR_VERDICT[verdict],
            "empirical_ratio": solved.get("empirical_ratio"),
        })
    instance_io.write_atomic(out_dir / "summary.json", instance_io.dumps({"kind": args.kind, "runs": rows}))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fracsub", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--tolerance", type=float, default=DEFAULT_TOL)
        p.add_argument("--output", "-o")
        p.add_argument("--delta", type=float, help="homogenisation parameter for p-choice instances")

    def gen_flags(p):
        p.add_argument("kind", choices=instance_io.KINDS)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--m", type=int, default=1)
        p.add_argument("--p", type=int)
        p.add_argument("--seed", type=int)
        p.add_argument("--preset", choices=sorted(set(MMNL_PRESETS) | set(PCHOICE_PRESETS) | {"value_conscious"}))
        p.add_argument("--region", choices=("unconstrained", "cardinality", "knapsack"), default="unconstrained")
        p.add_argument("--homogeneous", action="store_true")
        p.add_argument("--ratio-spread", type=float)
        for name in ("v", "v0", "r", "w", "d"):
            p.add_argument(f"--{name}-range", type=_parse_range, metavar="LO,HI")

    p = sub.add_parser("certify", help="certify submodularity / monotonicity")
    p.add_argument("instance")
    common(p)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("solve", help="run greedy and/or brute force")
    p.add_argument("instance")
    p.add_argument("--method", choices=("greedy", "brute", "both"), default="both")
    p.add_argument("--seed", type=int, help="recorded in the report; the solvers are deterministic")
    common(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("generate", help="write a seeded random instance")
    gen_flags(p)
    common(p)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("batch", help="generate, certify and solve a run of seeds")
    gen_flags(p)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--method", choices=("greedy", "brute", "both"), default="both")
    common(p)
    p.set_defaults(func=cmd_batch)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (FracSubError, ValueError) as exc:
        print(f"fracsub {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
