"""Command-line entry point.

    qrdet eval --p 7 --d 1 --m 4 --what decompose
    qrdet sweep --tier 1 --seed 42
    qrdet identities --trials 1000 --seed 42

stdout carries JSON lines only; progress and timing go to stderr.
Exit codes: 0 all checks passed, 1 a counterexample was found, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from contextlib import nullcontext
from typing import Sequence

from . import closed_forms as cf
from .fp_arith import MAX_MODULUS, is_prime, legendre
from .qr_determinants import DeterminantFamilyParams, compute_sm
from .reports import CHECK_IDS
from .verification import SweepConfig, SweepSummary, run_randomized_identities, run_sweep, tier_config

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _check_list(text: str) -> tuple[str, ...]:
    if text.strip().lower() == "all":
        return CHECK_IDS
    items = tuple(c.strip().upper() for c in text.split(",") if c.strip())
    bad = [c for c in items if c not in CHECK_IDS]
    if bad or not items:
        raise argparse.ArgumentTypeError(f"unknown checks {bad}; valid: {', '.join(CHECK_IDS)}")
    return items


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qrdet", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("eval", help="evaluate one determinant and its predictions")
    ev.add_argument("--p", type=int, required=True)
    ev.add_argument("--d", type=int, required=True)
    ev.add_argument("--m", type=int)
    ev.add_argument("--what", choices=("det", "closed-form", "decompose", "symbol"), default="det")
    ev.add_argument("--output", "-o")

    sw = sub.add_parser("sweep", help="run checks over a range of primes")
    sw.add_argument("--tier", type=int, choices=(1, 2, 3))
    sw.add_argument("--p-min", type=int)
    sw.add_argument("--p-max", type=int)
    sw.add_argument("--d-mode", choices=("all", "sampled", "explicit"))
    sw.add_argument("--d-count", type=int, help="per symbol class, for --d-mode sampled")
    sw.add_argument("--d-list", type=_int_list, help="for --d-mode explicit")
    sw.add_argument("--m-mode", choices=("tail", "full", "explicit"))
    sw.add_argument("--m-list", type=_int_list, help="for --m-mode explicit")
    sw.add_argument("--checks", type=_check_list)
    sw.add_argument("--seed", type=int, default=0)
    sw.add_argument("--emit-skipped", action="store_true", help="report out-of-hypothesis tuples")
    sw.add_argument("--jobs", type=int, default=1)
    _add_stream_flags(sw)

    ids = sub.add_parser("identities", help="randomized determinant identity checks")
    ids.add_argument("--trials", type=int, default=1000)
    ids.add_argument("--seed", type=int, default=0)
    ids.add_argument("--p-list", type=_int_list, default=(7, 13, 101))
    _add_stream_flags(ids)
    return parser


def _add_stream_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--quiet", action="store_true", help="emit only the summary line")
    p.add_argument("--fail-fast", action="store_true")
    p.add_argument("--timing", action="store_true", help="put wall_seconds in the summary (breaks byte-identical output)")
    p.add_argument("--output", "-o")


def _emit(out, obj) -> None:
    out.write(json.dumps(obj, separators=(",", ":")) + "\n")


def _finish(out, args, summary_obj: dict, elapsed: float, failed: bool) -> int:
    if args.timing:
        summary_obj["wall_seconds"] = round(elapsed, 3)
    _emit(out, summary_obj)
    print(f"wall_seconds={elapsed:.3f}", file=sys.stderr)
    return EXIT_FAIL if failed else EXIT_OK


def _validate_p(p: int) -> None:
    if p < 3 or p >= MAX_MODULUS or not is_prime(p):
        raise UsageError("p must be an odd prime")


def _eval_record(args) -> dict:
    p, d, m = args.p, args.d, args.m
    _validate_p(p)
    if p < 5:
        raise UsageError("p must be at least 5")
    if d % p == 0:
        raise UsageError("d must not be divisible by p")
    if m is None:
        m = p - 2
    if m < 0:
        raise UsageError("m must be non-negative")
    params = DeterminantFamilyParams(p, d, m)
    dr = params.d
    rec: dict = {"p": p, "d": dr, "m": m, "what": args.what, "in_defined_range": params.in_defined_range}

    if args.what == "decompose":
        try:
            dec = cf.theorem22_decompose(p, dr, m)
        except cf.HypothesisError as e:
            raise UsageError(str(e))
        det = compute_sm(params)
        rec.update(a=dec.a.value, b=dec.b.value, product=dec.product.value, det=det.value,
                   match=dec.product == det)
        return rec

    det = compute_sm(params)
    rec["det"] = det.value
    preds = _predictions(p, dr, m)
    if args.what == "closed-form":
        if not preds:
            raise UsageError(f"no closed form applies to p={p}, d={dr}, m={m}")
        rec["predictions"] = preds
        rec["match"] = all(v == det.value for v in preds.values())
    elif args.what == "symbol":
        rec["symbol"] = legendre(det.value, p)
        rec["symbol_predictions"] = _symbol_predictions(p, dr, m, det)
    else:
        rec["predictions"] = preds
    return rec


def _predictions(p: int, d: int, m: int) -> dict[str, int]:
    preds: dict[str, int] = {}
    n = (p - 1) // 2
    if p > 5 and n < m < p - 1:
        preds["THM2.2"] = cf.theorem22_decompose(p, d, m).product.value
    if m == p - 2:
        if legendre(-d, p) == 1:
            preds["T-C"] = cf.tC_sp2_closed_form(p, d).value
        else:
            preds["SUN-PRIOR"] = cf.sun_prior_sp2(p, d).value
        if p % 4 == 1 and legendre(d, p) == 1:
            ts = cf.two_squares(p)
            preds["REMARK"] = (-2 * ts.y * pow(d, (p - 1) // 4, p)) % p
    if m == p - 3 and legendre(-d, p) == -1:
        preds["SUN-PRIOR"] = cf.sun_prior_sp3(p, d).value
    if p > 5 and legendre(d, p) == -1 and n < m < p - 1 and (m - n) % 2 == 0:
        preds["T-A"] = 0
    return preds


def _symbol_predictions(p: int, d: int, m: int, det) -> list[dict]:
    out = []
    n = (p - 1) // 2
    if p % 4 == 1 and legendre(d, p) == 1 and n < m < p - 1 and m % 2:
        out.append({"check": "T-B", "claim": "symbol != -1", "holds": legendre(det.value, p) != -1})
    if m == p - 3 and p % 4 == 1:
        out += [r.to_json() for r in cf.tD_sp3_symbol_check(p, d, det)]
    if m == p - 4 and p > 4 and legendre(d, p) == 1:
        out.append(cf.tE_sp4_symbol_check(p, d, det).to_json())
    return out


def cmd_eval(args, out) -> int:
    _emit(out, _eval_record(args))
    return EXIT_OK


def _sweep_config(args) -> SweepConfig:
    base = tier_config(args.tier, args.seed) if args.tier else SweepConfig(rng_seed=args.seed)
    fields = {
        "p_min": args.p_min,
        "p_max": args.p_max,
        "d_mode": args.d_mode,
        "d_count": args.d_count,
        "d_values": args.d_list,
        "m_mode": args.m_mode,
        "m_values": args.m_list,
        "checks": args.checks,
    }
    merged = {k: v for k, v in vars(base).items()}
    merged.update({k: v for k, v in fields.items() if v is not None})
    if args.d_list and args.d_mode is None:
        merged["d_mode"] = "explicit"
    if args.m_list and args.m_mode is None:
        merged["m_mode"] = "explicit"
    merged["rng_seed"] = args.seed
    merged["emit_skipped"] = args.emit_skipped
    if args.p_min is not None and args.p_max is None and merged["p_max"] < args.p_min:
        merged["p_max"] = args.p_min
    try:
        return SweepConfig(**merged)
    except ValueError as e:
        raise UsageError(str(e))


def cmd_sweep(args, out) -> int:
    if args.jobs < 1:
        raise UsageError("--jobs must be >= 1")
    config = _sweep_config(args)
    start = time.perf_counter()
    summary = SweepSummary()
    stream = run_sweep(config, jobs=args.jobs)
    for report in stream:
        summary.add(report)
        if not args.quiet:
            _emit(out, report.to_json())
        if report.failed and args.fail_fast:
            stream.close()
            break
    elapsed = time.perf_counter() - start
    return _finish(out, args, summary.to_json(None), elapsed, summary.total("fail") > 0)


def cmd_identities(args, out) -> int:
    if args.trials < 1:
        raise UsageError("--trials must be >= 1")
    for p in args.p_list:
        _validate_p(p)
    start = time.perf_counter()
    summary = run_randomized_identities(args.p_list, args.trials, args.seed)
    elapsed = time.perf_counter() - start
    if not args.quiet:
        for f in summary.polynomial_failures:
            _emit(out, {"check": "AUX", "claim": "polynomial-det", "status": "fail", **f})
        for f in summary.oracle_failures:
            _emit(out, {"check": "AUX", "claim": "oracle-equivalence", "status": "fail", **f})
    return _finish(out, args, summary.to_json(None), elapsed, summary.failures > 0)


COMMANDS = {"eval": cmd_eval, "sweep": cmd_sweep, "identities": cmd_identities}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    target = open(args.output, "w") if args.output else nullcontext(sys.stdout)
    try:
        with target as out:
            return COMMANDS[args.command](args, out)
    except UsageError as e:
        print(f"qrdet: error: {e}", file=sys.stderr)
        return EXIT_USAGE


def entry() -> None:
    sys.exit(main())
