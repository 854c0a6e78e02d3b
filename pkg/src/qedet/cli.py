"""Command-line front end.

    qed enum <code> [--json]
    qed pue <code> (--p P | --sweep a:b:step) [--mode s|n|c] [--csv]
    qed verify <code> [--max-n N] [--tol T] [--samples N] [--seed S]
    qed simulate <code> --p P [--trials N] [--seed S] [--protocol ...]

<code> is a catalog name (see qedet.catalog) or a path to a code file.
Exit codes: 0 success, 1 validation or check failure, 2 input error.
All stdout output is CSV or JSON; diagnostics go to stderr.
The environment variable QED_ORACLE_CAP overrides the default dense-oracle
cap of 6 qubits.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import chansim, oracle, pue
from .catalog import CATALOG
from .enumerators import (check_enum_properties, macwilliams, min_distance,
                          stabilizer_enumerators)
from .gf4 import AdditiveCode, CodeFormatError, GF4Vector, all_vectors, parse_code

_MODE_NAMES = {"s": "stabilizer", "n": "nonstabilizer", "c": "composite"}


def _oracle_cap(override: int | None = None) -> int:
    if override is not None:
        return override
    return int(os.environ.get("QED_ORACLE_CAP", oracle.DEFAULT_ORACLE_CAP))


def _load_code(ref: str) -> AdditiveCode:
    if ref in CATALOG:
        return parse_code(CATALOG[ref])
    path = Path(ref)
    if not path.exists():
        raise CodeFormatError(f"no catalog entry or file named {ref!r}")
    return parse_code(path.read_text())


def _parse_sweep(text: str) -> list[float]:
    try:
        start, stop, step = (float(t) for t in text.split(":"))
    except ValueError:
        raise CodeFormatError(f"malformed sweep {text!r}; expected a:b:step") from None
    if step <= 0:
        raise CodeFormatError("sweep step must be positive")
    grid = []
    x = start
    while x <= stop + 1e-12:
        grid.append(round(x, 12))
        x += step
    return grid


def cmd_enum(args) -> int:
    code = _load_code(args.code)
    pair = stabilizer_enumerators(code)
    report = check_enum_properties(pair)
    if not report.ok:
        print("enumerator property violation: " + ", ".join(report.failures),
              file=sys.stderr)
        return 1
    doc = pair.to_json_dict()
    print(json.dumps(doc) if args.json else json.dumps(doc, indent=2))
    return 0


def cmd_pue(args) -> int:
    code = _load_code(args.code)
    pair = stabilizer_enumerators(code)
    grid = _parse_sweep(args.sweep) if args.sweep else [args.p]
    mode = _MODE_NAMES[args.mode]
    rows = pue.sweep(pair, grid, [mode], code=args.code)
    sys.stdout.write(pue.sweep_csv(rows))
    return 0


def cmd_simulate(args) -> int:
    code = _load_code(args.code)
    report = chansim.simulate(code, args.p, args.trials, protocol=args.protocol,
                              seed=args.seed, shards=args.shards,
                              cap=_oracle_cap())
    print(report.to_json())
    analytic = pue.pue_stabilizer(stabilizer_enumerators(code), args.p)
    if args.protocol == "nonstabilizer":
        analytic *= code.dim / (code.dim + 1)
    if report.stderr > 0:
        sigmas = abs(report.estimate - analytic) / report.stderr
        print(f"analytic {analytic!r}, distance {sigmas:.2f} stderr",
              file=sys.stderr)
    return 0


def _verify_checks(code: AdditiveCode, cap: int, tol: float, samples: int,
                   seed: int):
    """Yield (name, status, detail) rows for the verification battery."""
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))
    grid = [i * 0.75 / 19 for i in range(20)]

    yield ("self_orthogonal", code.is_self_orthogonal, "")
    if not code.is_self_orthogonal:
        return
    pair = stabilizer_enumerators(code)

    report = check_enum_properties(pair)
    yield ("enum_properties", report.ok, ",".join(report.failures))
    yield ("min_distance", True, f"d={min_distance(pair)}")

    forward = macwilliams(pair.weights, pair.n, pair.dim, "code_to_dual")
    yield ("macwilliams_forward", forward == pair.dual_weights, "")
    back = macwilliams(forward, pair.n, pair.dim, "dual_to_code")
    yield ("macwilliams_roundtrip", back == pair.weights, "")

    def rel_err(a: float, b: float) -> float:
        return abs(a - b) / max(abs(b), 1e-300) if (a or b) else 0.0

    worst = max(rel_err(pue.pue_stabilizer_direct(code, p),
                        pue.pue_stabilizer(pair, p)) for p in grid)
    yield ("coset_sum_vs_polynomial", worst <= max(tol, 1e-12),
           f"rel_err={worst:.2e}")

    worst = max(rel_err(pue.pue_via_moments(pair, p),
                        pue.pue_stabilizer(pair, p)) for p in grid)
    yield ("moments_form", worst <= max(tol, 1e-12), f"rel_err={worst:.2e}")

    p_op = oracle.code_projector(code, cap)
    yield ("projector_valid", True, f"trace={np.trace(p_op).real:.6g}")

    brute = oracle.enumerators_bruteforce(p_op, pair.dim, cap)
    yield ("oracle_enumerators",
           brute.weights == pair.weights and brute.dual_weights == pair.dual_weights,
           "")

    if code.n <= 4:
        errors = list(all_vectors(code.n))
    else:
        picks = rng.integers(0, 1 << code.n, size=(256, 2))
        errors = [GF4Vector(code.n, int(a), int(b)) for a, b in picks]
    agree = all(oracle.classify_error(code, e)
                == oracle.classify_error_dense(p_op, e, cap=cap) for e in errors)
    yield ("classification_agreement", agree, f"errors={len(errors)}")

    mc = oracle.pue_nonstab_mc(p_op, pair.dim, 0.1, samples, seed=seed, cap=cap)
    target = pue.pue_nonstabilizer(pair, 0.1)
    diff = abs(mc.estimate - target)
    if diff <= 1e-10:
        # Degenerate cases (e.g. one-dimensional codes) are zero up to
        # rounding noise, where a stderr band is meaningless.
        yield ("uniform_functional_mc", True, f"abs_err={diff:.2e}")
    else:
        sigmas = diff / mc.stderr if mc.stderr else float("inf")
        yield ("uniform_functional_mc", sigmas <= 4, f"{sigmas:.2f} stderr")

    if code.n <= oracle.COMPOSITE_CAP:
        worst_abs = max(abs(oracle.pue_composite_exact(p_op, pair.dim, p)
                            - pue.pue_composite(pair, p))
                        for p in (0.05, 0.3))
        yield ("composite_functional", worst_abs <= 1e-10, f"abs_err={worst_abs:.2e}")
    else:
        yield ("composite_functional", None, "skipped (beyond composite cap)")

    lem5 = oracle.verify_mean_projector(p_op, pair.dim, samples, rng)
    yield ("mean_projector_identity", lem5.within(4.0),
           f"dev={lem5.deviation:.2e} sigma={lem5.sigma:.2e}")
    if pair.dim == 1:
        lem6 = oracle.verify_fourth_moment(1, min(samples, 1000), rng)
        yield ("fourth_moment_identity", lem6.deviation <= 1e-10,
               f"dev={lem6.deviation:.2e}")
    else:
        lem6 = oracle.verify_fourth_moment(pair.dim, samples, rng)
        yield ("fourth_moment_identity", lem6.within(4.0),
               f"dev={lem6.deviation:.2e} sigma={lem6.sigma:.2e}")


def cmd_verify(args) -> int:
    code = _load_code(args.code)
    cap = _oracle_cap(args.max_n)
    if code.n > cap:
        print(f"error: code length n={code.n} exceeds the oracle cap of "
              f"{cap} qubits (raise with --max-n or QED_ORACLE_CAP)",
              file=sys.stderr)
        return 1
    print("check,status,detail")
    failed = 0
    for name, status, detail in _verify_checks(code, cap, args.tol,
                                               args.samples, args.seed):
        word = "SKIP" if status is None else ("PASS" if status else "FAIL")
        if status is False:
            failed += 1
        print(f"{name},{word},{detail}")
    print(f"{failed} failing check(s)" if failed else "all checks passed",
          file=sys.stderr)
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qed")
    sub = parser.add_subparsers(dest="command", required=True)

    p_enum = sub.add_parser("enum", help="weight enumerators and min distance")
    p_enum.add_argument("code")
    p_enum.add_argument("--json", action="store_true", help="compact JSON")
    p_enum.set_defaults(func=cmd_enum)

    p_pue = sub.add_parser("pue", help="undetected-error probability")
    p_pue.add_argument("code")
    group = p_pue.add_mutually_exclusive_group(required=True)
    group.add_argument("--p", type=float)
    group.add_argument("--sweep", metavar="a:b:step")
    p_pue.add_argument("--mode", choices=sorted(_MODE_NAMES), default="s")
    p_pue.add_argument("--csv", action="store_true",
                       help="CSV output (the default; kept for explicitness)")
    p_pue.set_defaults(func=cmd_pue)

    p_ver = sub.add_parser("verify", help="cross-check against the dense oracle")
    p_ver.add_argument("code")
    p_ver.add_argument("--max-n", type=int, default=None)
    p_ver.add_argument("--tol", type=float, default=1e-10)
    p_ver.add_argument("--samples", type=int, default=20000)
    p_ver.add_argument("--seed", type=int, default=0)
    p_ver.set_defaults(func=cmd_verify)

    p_sim = sub.add_parser("simulate", help="Monte Carlo protocol simulation")
    p_sim.add_argument("code")
    p_sim.add_argument("--p", type=float, required=True)
    p_sim.add_argument("--trials", type=int, default=100000)
    p_sim.add_argument("--seed", type=int, default=0)
    p_sim.add_argument("--shards", type=int, default=1)
    p_sim.add_argument("--protocol", choices=chansim.PROTOCOLS,
                       default="stabilizer")
    p_sim.set_defaults(func=cmd_simulate)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CodeFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
