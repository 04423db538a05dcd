"""Verification campaigns: next-prime agreement, gap bound, twin verdicts, bench.

A campaign covers prime indices ``[start_index, start_index + count)`` split
into contiguous blocks of ``checkpoint_every`` indices.  Blocks are processed
independently (optionally in a process pool), merged in index order, and
appended to a line-oriented JSON checkpoint as they finish.  A mismatch never
aborts a run; it becomes a :class:`DiscrepancyRecord`.
"""
from __future__ import annotations

import hashlib
import json
import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path

import numpy as np

from . import oracle
from .errors import CheckpointError, DomainError
from .gaps import paper_gap_bound
from .nextprime import next_prime_slack, successor_upper_bound
from .twins import is_twin_leader

log = logging.getLogger(__name__)

KINDS = ("next-prime", "gap-bound", "twin", "bench")
CLAIM_KINDS = ("next-prime", "gap-bound", "twin-verdict", "eq5-bound")
CHECKPOINT_NAME = "checkpoint.jsonl"
REPORT_NAME = "report.json"
DISCREPANCY_NAME = "discrepancies.jsonl"
BENCH_SCALES = (10**3, 10**4, 10**5, 10**6)


@dataclass(frozen=True)
class CampaignConfig:
    kind: str
    start_index: int = 3
    count: int = 10_000
    worker_count: int = 1
    checkpoint_every: int = 1_000
    output_path: str | None = None
    mode: str = "faithful"
    chain: bool = False

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"unknown campaign kind {self.kind!r}")
        # the gap bound is stated from P_1 = 2 on; the slack method starts at P_3 = 5
        min_start = 1 if self.kind == "gap-bound" else 3
        if self.start_index < min_start:
            raise DomainError(f"{self.kind} campaigns start at index >= {min_start}")
        if self.count < 1 or self.worker_count < 1 or self.checkpoint_every < 1:
            raise DomainError("count, worker_count and checkpoint_every must be >= 1")
        if self.mode not in ("faithful", "fast"):
            raise DomainError(f"unknown mode {self.mode!r}")

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class DiscrepancyRecord:
    i: int
    p_i: int
    claimed: int
    oracle: int
    claim_kind: str

    def __post_init__(self):
        if self.claim_kind not in CLAIM_KINDS:
            raise DomainError(f"unknown claim kind {self.claim_kind!r}")


@dataclass
class BlockResult:
    start: int
    end: int
    primes_checked: int = 0
    discrepancies: list = field(default_factory=list)
    beyond_range_uses: int = 0
    max_observed_gap: int = 0
    max_observed_E: int = 0
    twin_pairs: int = 0
    seconds: float = 0.0
    worker: int = 0

    def to_json_dict(self) -> dict:
        d = asdict(self)
        d["discrepancies"] = [asdict(x) for x in self.discrepancies]
        return d

    @classmethod
    def from_json_dict(cls, d: dict) -> "BlockResult":
        d = dict(d)
        d["discrepancies"] = [DiscrepancyRecord(**x) for x in d["discrepancies"]]
        return cls(**d)


@dataclass
class CampaignReport:
    config: dict
    primes_checked: int
    discrepancies: list
    beyond_range_uses: int
    max_observed_gap: int
    max_observed_E: int
    twin_pairs: int
    wall_time: float
    worker_timings: list
    bench: list | None = None

    TIMING_FIELDS = ("wall_time", "worker_timings", "bench")

    @property
    def clean(self) -> bool:
        return not self.discrepancies

    def to_json_dict(self) -> dict:
        d = {f.name: getattr(self, f.name) for f in fields(self)}
        d["discrepancies"] = [asdict(x) for x in self.discrepancies]
        d["clean"] = self.clean
        return d

    def comparable(self) -> dict:
        """Report content with timing fields and run-local paths removed."""
        d = self.to_json_dict()
        for k in self.TIMING_FIELDS:
            d.pop(k, None)
        cfg = dict(d["config"])
        for k in ("worker_count", "output_path", "checkpoint_every"):
            cfg.pop(k, None)
        d["config"] = cfg
        return d


# -- per-block work ---------------------------------------------------------

def _next_prime_block(start: int, primes: list, mode: str, chain: bool) -> BlockResult:
    # primes[k] is P_{start+k}; the final element is only the oracle successor
    res = BlockResult(start=start, end=start + len(primes) - 1, worker=os.getpid())
    t0 = time.perf_counter()
    p = primes[0]
    for k in range(len(primes) - 1):
        i = start + k
        truth = primes[k + 1]
        if not chain:
            p = primes[k]
        r = next_prime_slack(p, mode=mode)
        res.primes_checked += 1
        res.beyond_range_uses += r.used_beyond_range
        res.max_observed_E = max(res.max_observed_E, r.e)
        res.max_observed_gap = max(res.max_observed_gap, truth - primes[k])
        if r.successor != truth:
            res.discrepancies.append(DiscrepancyRecord(i, p, r.successor, truth, "next-prime"))
        bound = successor_upper_bound(p)
        if r.successor > bound:
            res.discrepancies.append(DiscrepancyRecord(i, p, r.successor, bound, "eq5-bound"))
        # chain mode resynchronises to the oracle stream after a mismatch
        p = r.successor if r.successor == truth else truth
    res.seconds = time.perf_counter() - t0
    return res


def _gap_block(start: int, primes: list, mode: str, chain: bool) -> BlockResult:
    res = BlockResult(start=start, end=start + len(primes) - 1, worker=os.getpid())
    t0 = time.perf_counter()
    ps = np.asarray(primes, dtype=np.int64)
    g = np.diff(ps)
    bound = (ps[:-1] + 1) // 2
    res.primes_checked = int(g.size)
    res.max_observed_gap = int(g.max())
    for k in np.flatnonzero((g > bound) | (g < 1)).tolist():
        p = int(ps[k])
        res.discrepancies.append(
            DiscrepancyRecord(start + k, p, paper_gap_bound(p), int(g[k]), "gap-bound"))
    res.seconds = time.perf_counter() - t0
    return res


def _twin_block(start: int, primes: list, mode: str, chain: bool) -> BlockResult:
    res = BlockResult(start=start, end=start + len(primes) - 1, worker=os.getpid())
    t0 = time.perf_counter()
    for k in range(len(primes) - 1):
        p = primes[k]
        verdict = is_twin_leader(p).verdict
        truth = oracle.is_prime_trial(p + 2)
        res.primes_checked += 1
        res.twin_pairs += truth
        res.max_observed_gap = max(res.max_observed_gap, primes[k + 1] - p)
        if verdict != truth:
            res.discrepancies.append(
                DiscrepancyRecord(start + k, p, int(verdict), int(truth), "twin-verdict"))
    res.seconds = time.perf_counter() - t0
    return res


_BLOCK_FUNCS = {"next-prime": _next_prime_block, "gap-bound": _gap_block, "twin": _twin_block}


def partition(start: int, count: int, block: int) -> list[tuple[int, int]]:
    """Contiguous ``[lo, hi)`` index blocks covering ``[start, start + count)``."""
    return [(lo, min(lo + block, start + count)) for lo in range(start, start + count, block)]


# -- checkpoints ------------------------------------------------------------

def _digest(prev: str, lines: list[str]) -> str:
    h = hashlib.sha256(prev.encode())
    for line in lines:
        h.update(line.encode())
        h.update(b"\n")
    return h.hexdigest()


class Checkpoint:
    """Append-only JSONL log; every flush ends with a chained sha256 line."""

    def __init__(self, path: str | os.PathLike):
        self.path = Path(path)
        self._last = ""

    def write(self, records: list[dict]) -> None:
        lines = [json.dumps(r, sort_keys=True) for r in records]
        self._last = _digest(self._last, lines)
        lines.append(json.dumps({"type": "checksum", "sha256": self._last}))
        with open(self.path, "a", encoding="utf-8", newline="\n") as fh:
            fh.write("\n".join(lines) + "\n")
            fh.flush()
            os.fsync(fh.fileno())

    def read(self) -> list[dict]:
        """All records from verified flushes; raises on any damage."""
        if not self.path.exists():
            return []
        text = self.path.read_text(encoding="utf-8")
        if not text:
            return []
        if not text.endswith("\n"):
            raise CheckpointError(f"{self.path}: truncated final line")
        out, pending, prev = [], [], ""
        for n, line in enumerate(text.split("\n")[:-1], 1):
            try:
                rec = json.loads(line)
            except json.JSONDecodeError:
                raise CheckpointError(f"{self.path}:{n}: not valid JSON")
            if rec.get("type") == "checksum":
                want = _digest(prev, pending)
                if rec.get("sha256") != want:
                    raise CheckpointError(f"{self.path}:{n}: checksum mismatch")
                out.extend(json.loads(x) for x in pending)
                pending, prev = [], want
            else:
                pending.append(line)
        if pending:
            raise CheckpointError(f"{self.path}: {len(pending)} record(s) after last checksum")
        self._last = prev
        return out


def checkpoint_write(path, records: list[dict]) -> None:
    ckpt = Checkpoint(path)
    ckpt.read()
    ckpt.write(records)


def checkpoint_resume(path, cfg: CampaignConfig) -> dict[int, BlockResult]:
    """Completed blocks from ``path`` keyed by start index; empty if no file."""
    recs = Checkpoint(path).read()
    if not recs:
        return {}
    head = recs[0]
    if head.get("type") != "config":
        raise CheckpointError(f"{path}: first record is not a campaign config")
    saved = {k: v for k, v in head["config"].items() if k not in ("worker_count", "output_path")}
    mine = {k: v for k, v in cfg.to_dict().items() if k not in ("worker_count", "output_path")}
    if saved != mine:
        raise CheckpointError(f"{path}: checkpoint belongs to a different campaign")
    done = {}
    for r in recs[1:]:
        if r.get("type") != "block":
            raise CheckpointError(f"{path}: unexpected record type {r.get('type')!r}")
        b = BlockResult.from_json_dict(r["block"])
        done[b.start] = b
    return done


# -- drivers ----------------------------------------------------------------

def _merge(cfg: CampaignConfig, blocks: list[BlockResult], wall: float) -> CampaignReport:
    blocks = sorted(blocks, key=lambda b: b.start)
    per_worker: dict[int, dict] = {}
    for b in blocks:
        w = per_worker.setdefault(b.worker, {"blocks": 0, "primes": 0, "seconds": 0.0})
        w["blocks"] += 1
        w["primes"] += b.primes_checked
        w["seconds"] += b.seconds
    timings = [{"worker": n, **v} for n, (_, v) in enumerate(sorted(per_worker.items()))]
    return CampaignReport(
        config=cfg.to_dict(),
        primes_checked=sum(b.primes_checked for b in blocks),
        discrepancies=[d for b in blocks for d in b.discrepancies],
        beyond_range_uses=sum(b.beyond_range_uses for b in blocks),
        max_observed_gap=max((b.max_observed_gap for b in blocks), default=0),
        max_observed_E=max((b.max_observed_E for b in blocks), default=0),
        twin_pairs=sum(b.twin_pairs for b in blocks),
        wall_time=wall,
        worker_timings=timings,
    )


def run_campaign(cfg: CampaignConfig, resume: bool = True) -> CampaignReport:
    """Run a next-prime, gap-bound or twin campaign described by ``cfg``.

    With ``output_path`` set, progress is checkpointed there and, when
    ``resume`` is true, finished blocks from an earlier run are reused.
    report.json and discrepancies.jsonl are written on completion.
    """
    if cfg.kind == "bench":
        return run_bench(cfg)
    t0 = time.perf_counter()
    func = _BLOCK_FUNCS[cfg.kind]
    primes = oracle.primes_by_index(cfg.start_index, cfg.count + 1).tolist()
    blocks = partition(cfg.start_index, cfg.count, cfg.checkpoint_every)

    ckpt = None
    done: dict[int, BlockResult] = {}
    if cfg.output_path:
        out = Path(cfg.output_path)
        out.mkdir(parents=True, exist_ok=True)
        ckpt = Checkpoint(out / CHECKPOINT_NAME)
        if resume:
            done = checkpoint_resume(ckpt.path, cfg)
            ckpt.read()
        elif ckpt.path.exists():
            ckpt.path.unlink()
        if not done and not ckpt.read():
            ckpt.write([{"type": "config", "config": cfg.to_dict()}])
    todo = [(lo, hi) for lo, hi in blocks if lo not in done]
    if done:
        log.info("resuming %s: %d of %d blocks already done", cfg.kind, len(done), len(blocks))

    def args(lo, hi):
        k = lo - cfg.start_index
        return lo, primes[k : k + (hi - lo) + 1], cfg.mode, cfg.chain

    results = list(done.values())

    def record(b: BlockResult):
        results.append(b)
        if ckpt is not None:
            ckpt.write([{"type": "block", "block": b.to_json_dict()}])

    if cfg.worker_count == 1 or len(todo) <= 1:
        for lo, hi in todo:
            record(func(*args(lo, hi)))
    else:
        with ProcessPoolExecutor(max_workers=cfg.worker_count) as pool:
            futs = [pool.submit(func, *args(lo, hi)) for lo, hi in todo]
            # single writer, index order
            for f in futs:
                record(f.result())

    report = _merge(cfg, results, time.perf_counter() - t0)
    if cfg.output_path:
        write_report(report, cfg.output_path)
    return report


def run_next_prime_campaign(cfg: CampaignConfig, **kw) -> CampaignReport:
    _expect(cfg, "next-prime")
    return run_campaign(cfg, **kw)


def run_gap_bound_campaign(cfg: CampaignConfig, **kw) -> CampaignReport:
    _expect(cfg, "gap-bound")
    return run_campaign(cfg, **kw)


def run_twin_campaign(cfg: CampaignConfig, **kw) -> CampaignReport:
    _expect(cfg, "twin")
    return run_campaign(cfg, **kw)


def _expect(cfg: CampaignConfig, kind: str) -> None:
    if cfg.kind != kind:
        raise DomainError(f"expected a {kind} config, got {cfg.kind}")


def write_report(report: CampaignReport, out_dir) -> None:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    with open(out / REPORT_NAME, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(report.to_json_dict(), fh, indent=2)
        fh.write("\n")
    with open(out / DISCREPANCY_NAME, "w", encoding="utf-8", newline="\n") as fh:
        for d in report.discrepancies:
            fh.write(json.dumps(asdict(d)) + "\n")


def index_range_for_limit(limit: int, first_index: int = 3) -> tuple[int, int]:
    """(start_index, count) covering every P_i >= P_first_index with P_i < limit."""
    n = oracle.prime_count(limit - 1)
    return first_index, n - first_index + 1


# -- benchmark --------------------------------------------------------------

def _time_call(fn, reps: int) -> float:
    best = float("inf")
    for _ in range(reps):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def run_bench(cfg: CampaignConfig, scales=BENCH_SCALES, reps: int = 3) -> CampaignReport:
    """Per-prime cost of the slack method against the sieve's amortised cost.

    For each scale N the first ``cfg.count`` primes above N are timed (best of
    ``reps``), and a fresh sieve to N is timed and divided by pi(N).
    """
    _expect(cfg, "bench")
    t0 = time.perf_counter()
    next_prime_slack(5)  # compile outside the timed region
    sieve = oracle.sieve_upto.__wrapped__
    rows = []
    checked = 0
    max_e = beyond = 0
    for n in scales:
        ps = oracle.segmented_sieve(n + 1, n + 200 * max(cfg.count, 1))[: cfg.count].tolist()
        per = []
        for p in ps:
            per.append(_time_call(lambda: next_prime_slack(p, mode=cfg.mode), reps))
            r = next_prime_slack(p, mode=cfg.mode)
            max_e = max(max_e, r.e)
            beyond += r.used_beyond_range
        checked += len(ps)
        sieve_s = _time_call(lambda: sieve(n), reps)
        rows.append({
            "scale": n,
            "primes_timed": len(ps),
            "slack_seconds_per_prime": float(np.median(per)),
            "sieve_seconds_per_prime": sieve_s / oracle.prime_count(n),
        })
    for prev, row in zip(rows, rows[1:]):
        row["slack_growth"] = row["slack_seconds_per_prime"] / prev["slack_seconds_per_prime"]
        row["sieve_growth"] = row["sieve_seconds_per_prime"] / prev["sieve_seconds_per_prime"]
    rep = CampaignReport(
        config=cfg.to_dict(), primes_checked=checked, discrepancies=[],
        beyond_range_uses=beyond, max_observed_gap=0, max_observed_E=max_e, twin_pairs=0,
        wall_time=time.perf_counter() - t0,
        worker_timings=[{"worker": 0, "blocks": len(rows), "primes": checked,
                         "seconds": time.perf_counter() - t0}],
        bench=rows,
    )
    if cfg.output_path:
        write_report(rep, cfg.output_path)
    return rep


def format_bench_table(rows: list[dict]) -> str:
    head = f"{'scale':>10} {'slack s/prime':>14} {'growth':>7} {'sieve s/prime':>14} {'growth':>7}"
    lines = [head]
    for r in rows:
        sg = f"{r['slack_growth']:7.2f}" if "slack_growth" in r else f"{'-':>7}"
        vg = f"{r['sieve_growth']:7.2f}" if "sieve_growth" in r else f"{'-':>7}"
        lines.append(f"{r['scale']:>10} {r['slack_seconds_per_prime']:14.3e} {sg} "
                     f"{r['sieve_seconds_per_prime']:14.3e} {vg}")
    return "\n".join(lines)
