"""Command-line front end: ``slackprime <command> ...``.

Exit codes: 0 success, 2 usage, 3 invalid input, 4 capacity,
5 discrepancies found, 6 checkpoint or I/O failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys

from . import gaps, harness, nextprime, oracle, twins
from .errors import CapacityError, CheckpointError, DomainError, IntegerOverflow

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_CAPACITY, EXIT_DISCREPANCY, EXIT_IO = 0, 2, 3, 4, 5, 6


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _require_prime(p: int) -> None:
    if not oracle.is_prime_trial(p):
        raise DomainError(f"{p} is not prime")


def cmd_next(args) -> int:
    _require_prime(args.p)
    r = nextprime.next_prime_slack(args.p, mode=args.mode)
    if args.format == "json":
        text = _json({"p": r.p, "e": r.e, "successor": r.successor,
                      "used_beyond_range": r.used_beyond_range})
    elif args.format == "csv":
        text = f"p,e,successor,used_beyond_range\n{r.p},{r.e},{r.successor},{int(r.used_beyond_range)}\n"
    else:
        flag = " (beyond range)" if r.used_beyond_range else ""
        text = f"{r.p} -> {r.successor}  E={r.e}{flag}\n"
    _emit(text, args.out)
    return EXIT_OK


def cmd_slacks(args) -> int:
    _require_prime(args.p)
    sl = nextprime.build_slack_list(args.p)
    e, beyond = nextprime.first_missing_even(sl)
    rows = list(sl.as_dict().items())
    if args.format == "json":
        text = _json({"p": sl.p, "entries": [{"d": d, "s": s} for d, s in rows],
                      "first_missing_even": e, "used_beyond_range": beyond})
    elif args.format == "csv":
        text = "d,s\n" + "".join(f"{d},{s}\n" for d, s in rows)
    else:
        lines = [f"Slack list for P = {sl.p}", f"{'divisor':>8} {'slack':>8}"]
        lines += [f"{d:>8} {s:>8}" for d, s in rows]
        lines.append(f"first missing even: {e}" + (" (beyond range)" if beyond else ""))
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return EXIT_OK


def cmd_twins(args) -> int:
    if args.check is not None:
        _require_prime(args.check)
        rep = twins.is_twin_leader(args.check, full=True)
        if args.format == "json":
            text = _json(rep.to_json_dict())
        else:
            verdict = f"twin leader, companion {rep.companion}" if rep.verdict else "not a twin leader"
            text = f"{rep.p}: {verdict}; violations {list(rep.violations)}\n"
        _emit(text, args.out)
        return EXIT_OK
    if args.upto is None:
        raise DomainError("twins needs --upto U or --check P")
    pairs = twins.twin_pairs_upto(args.upto, include_3_5=args.include_3_5)
    if args.format == "json":
        text = _json({"upto": args.upto, "pairs": [list(x) for x in pairs]})
    elif args.format == "csv":
        buf = io.StringIO()
        twins.write_twin_csv(pairs, buf)
        text = buf.getvalue()
    else:
        text = "".join(f"({a}, {b})\n" for a, b in pairs)
    _emit(text, args.out)
    return EXIT_OK


def _gap_rows(upto: int) -> list[gaps.GapRecord]:
    primes = oracle.segmented_sieve(2, upto)
    return gaps.maximal_gaps(gaps.gap_records(primes))


def cmd_gaps(args) -> int:
    if args.upto < 3:
        raise DomainError("gaps needs --upto >= 3")
    recs = _gap_rows(args.upto)
    if args.format == "csv":
        buf = io.StringIO()
        gaps.write_gap_csv(recs, buf)
        text = buf.getvalue()
    elif args.format == "json":
        out = []
        for r in recs:
            est = gaps.estimates(r.p_i, r.i)
            out.append({
                "i": r.i, "p_i": r.p_i, "p_next": r.p_next, "gap": r.gap,
                "merit": float(gaps.fmt_real(r.merit)), "bound_paper": r.bound_paper,
                "within_paper_bound": r.within_paper_bound, "is_maximal": r.is_maximal,
                "cramer": float(gaps.fmt_real(est.cramer)), "wolf": float(gaps.fmt_real(est.wolf)),
                "gauss_pi": float(gaps.fmt_real(est.gauss_pi)),
            })
        text = _json(out)
    else:
        lines = [f"{'p_i':>10} {'p_next':>10} {'gap':>5} {'merit':>8} {'bound':>10}"]
        for r in recs:
            if r.is_maximal:
                lines.append(f"{r.p_i:>10} {r.p_next:>10} {r.gap:>5} {r.merit:8.4f} {r.bound_paper:>10}")
        violations = sum(not r.within_paper_bound for r in recs)
        lines.append(f"{len(recs)} gaps, {violations} above floor((p+1)/2); maximal gaps listed")
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return EXIT_OK


def cmd_estimate(args) -> int:
    _require_prime(args.p)
    pi_p = oracle.prime_count(args.p)
    est = gaps.estimates(args.p, pi_p)
    vals = {"p": args.p, "pi": pi_p, "cramer": est.cramer, "shanks": est.shanks,
            "wolf": est.wolf, "gauss_pi": est.gauss_pi}
    if args.format == "json":
        text = _json({k: (float(gaps.fmt_real(v)) if isinstance(v, float) else v)
                      for k, v in vals.items()})
    elif args.format == "csv":
        text = ",".join(vals) + "\n" + ",".join(
            gaps.fmt_real(v) if isinstance(v, float) else str(v) for v in vals.values()) + "\n"
    else:
        text = "".join(f"{k:>9}: {gaps.fmt_real(v) if isinstance(v, float) else v}\n"
                       for k, v in vals.items())
    _emit(text, args.out)
    return EXIT_OK


def _summary(rep: harness.CampaignReport) -> str:
    cfg = rep.config
    lines = [
        f"{cfg['kind']}: {rep.primes_checked} primes checked from index {cfg['start_index']}",
        f"discrepancies: {len(rep.discrepancies)}",
        f"max observed gap: {rep.max_observed_gap}",
    ]
    if cfg["kind"] == "next-prime":
        lines.append(f"max observed E: {rep.max_observed_E}; beyond-range uses: {rep.beyond_range_uses}")
    if cfg["kind"] == "twin":
        lines.append(f"twin leaders: {rep.twin_pairs}")
    lines.append(f"wall time: {rep.wall_time:.2f} s")
    return "\n".join(lines) + "\n"


def cmd_verify(args) -> int:
    start, count = args.start, args.count
    if args.limit is not None:
        first = args.start if args.start is not None else (1 if args.kind == "gap-bound" else 3)
        start, count = harness.index_range_for_limit(args.limit, first)
    cfg = harness.CampaignConfig(
        kind=args.kind,
        start_index=start if start is not None else (1 if args.kind == "gap-bound" else 3),
        count=count if count is not None else 10_000,
        worker_count=args.workers,
        checkpoint_every=args.checkpoint_every,
        output_path=args.out or f"results/{args.kind}",
        mode=args.mode,
        chain=args.chain,
    )
    rep = harness.run_campaign(cfg, resume=not args.no_resume)
    if args.format == "json":
        sys.stdout.write(_json(rep.to_json_dict()))
    else:
        sys.stdout.write(_summary(rep))
    return EXIT_OK if rep.clean else EXIT_DISCREPANCY


def cmd_bench(args) -> int:
    cfg = harness.CampaignConfig(kind="bench", count=args.count, output_path=args.out, mode=args.mode)
    scales = tuple(int(x) for x in args.scales.split(","))
    rep = harness.run_bench(cfg, scales=scales, reps=args.reps)
    if args.format == "json":
        sys.stdout.write(_json(rep.to_json_dict()))
    elif args.format == "csv":
        cols = ["scale", "primes_timed", "slack_seconds_per_prime", "sieve_seconds_per_prime",
                "slack_growth", "sieve_growth"]
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        for r in rep.bench:
            w.writerow([gaps.fmt_real(r[c]) if isinstance(r.get(c), float) else r.get(c, "")
                        for c in cols])
        sys.stdout.write(buf.getvalue())
    else:
        sys.stdout.write(harness.format_bench_table(rep.bench) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="slackprime", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, formats=("text", "json", "csv")):
        p.add_argument("--format", choices=formats, default="text")
        p.add_argument("--out", default=None)

    p = sub.add_parser("next", help="successor of a prime by the slack method")
    p.add_argument("p", type=int)
    p.add_argument("--mode", choices=("faithful", "fast"), default="faithful")
    common(p)
    p.set_defaults(func=cmd_next)

    p = sub.add_parser("slacks", help="print the slack list of a prime")
    p.add_argument("p", type=int)
    common(p)
    p.set_defaults(func=cmd_slacks)

    p = sub.add_parser("twins", help="twin pairs up to a bound, or one prime's R-constraints")
    p.add_argument("--upto", type=int)
    p.add_argument("--check", type=int, metavar="P")
    p.add_argument("--include-3-5", action="store_true", help="prepend the classical (3, 5) pair")
    common(p)
    p.set_defaults(func=cmd_twins)

    p = sub.add_parser("gaps", help="gap records with maximal flags and bound checks")
    p.add_argument("--upto", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_gaps)

    p = sub.add_parser("estimate", help="Cramér/Shanks/Wolf gap estimates and N/ln N")
    p.add_argument("p", type=int)
    common(p)
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("verify", help="run a verification campaign")
    p.add_argument("kind", choices=("next-prime", "gap-bound", "twin"))
    p.add_argument("--start", type=int, help="first prime index (P_1 = 2)")
    p.add_argument("--count", type=int, help="number of primes (default 10000)")
    p.add_argument("--limit", type=int, help="cover every prime below this value instead of --count")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--checkpoint-every", type=int, default=1000)
    p.add_argument("--mode", choices=("faithful", "fast"), default="faithful")
    p.add_argument("--chain", action="store_true", help="feed each successor into the next step")
    p.add_argument("--no-resume", action="store_true")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out", default=None, help="output directory (default results/<kind>)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="time the slack method against the sieve")
    p.add_argument("--count", type=int, default=5, help="primes timed per scale")
    p.add_argument("--scales", default="1000,10000,100000,1000000")
    p.add_argument("--reps", type=int, default=3)
    p.add_argument("--mode", choices=("faithful", "fast"), default="faithful")
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--out", default=None, help="output directory for report.json")
    p.set_defaults(func=cmd_bench)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (DomainError, IntegerOverflow) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (CheckpointError, OSError) as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
