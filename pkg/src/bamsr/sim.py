"""Deterministic repair simulator.

One stripe is stored on ``n`` nodes. Each event fails a uniformly chosen
node, draws how many other nodes are reachable, picks ``d`` by policy,
repairs from the first ``d`` reachable nodes and checks the result against
the lost share. Repairs are instantaneous; only bandwidth is accounted.

Randomness comes from :class:`XorShift64Star` so traces are reproducible
from the seed alone. Two streams are used so that availability draws stay
paired across runs that differ only in the availability range:

* event stream: seed ``seed`` (failed node, helper order, source data);
* availability stream: seed ``seed ^ 0xD1B54A32D192ED03``.

The availability model (uniform integer range) is a stand-in; the code
construction does not prescribe one.
"""

from __future__ import annotations

import csv
import io
import json
import logging
from dataclasses import dataclass, field
from typing import Optional

from .encoder import encode_source
from .gf import FieldSpec
from .params import CodeParams, ParameterError, derive_params
from .repair import make_repair_symbols, repair_decode

log = logging.getLogger(__name__)

MASK64 = (1 << 64) - 1
AVAIL_STREAM_XOR = 0xD1B54A32D192ED03
POLICIES = ("max-d", "min-d", "fixed")


class XorShift64Star:
    """xorshift64* generator: shifts (12, 25, 27), multiplier 0x2545F4914F6CDD1D.

    A zero seed is replaced by 0x9E3779B97F4A7C15 since zero is a fixed point.
    """

    MULT = 0x2545F4914F6CDD1D

    def __init__(self, seed: int):
        self.state = (seed & MASK64) or 0x9E3779B97F4A7C15

    def next_u64(self) -> int:
        x = self.state
        x ^= x >> 12
        x ^= (x << 25) & MASK64
        x ^= x >> 27
        self.state = x
        return (x * self.MULT) & MASK64

    def below(self, bound: int) -> int:
        """Uniform integer in ``[0, bound)`` by rejection (no modulo bias)."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        limit = (1 << 64) - (1 << 64) % bound
        while True:
            x = self.next_u64()
            if x < limit:
                return x % bound


@dataclass(frozen=True)
class SimConfig:
    params: CodeParams
    events: int
    seed: int
    avail_lo: int
    avail_hi: int
    policy: str = "max-d"
    fixed_d: Optional[int] = None

    def validate(self) -> None:
        p = self.params
        if self.events < 0:
            raise ParameterError("events must be >= 0")
        if not p.k <= self.avail_lo <= self.avail_hi <= p.n - 1:
            raise ParameterError(
                f"availability range [{self.avail_lo}, {self.avail_hi}] must lie in [k, n-1] = [{p.k}, {p.n - 1}]")
        if self.policy not in POLICIES:
            raise ParameterError(f"policy must be one of {POLICIES}, got {self.policy!r}")
        if self.policy == "fixed":
            if self.fixed_d is None:
                raise ParameterError("fixed policy needs fixed_d")
            p.check_d(self.fixed_d)
        if self.avail_lo < min(p.D):
            log.warning("availability can drop below d_1=%d; some events will be unrepairable", min(p.D))

    @classmethod
    def from_dict(cls, cfg: dict) -> "SimConfig":
        field_spec = FieldSpec.parse(cfg.get("field", "gf256"))
        params = derive_params(int(cfg["mu"]), int(cfg["delta"]), int(cfg["n"]), field_spec)
        lo, hi = cfg["availability"]
        return cls(params, int(cfg.get("events", 100)), int(cfg.get("seed", 1)), int(lo), int(hi),
                   cfg.get("policy", "max-d"), cfg.get("fixed_d"))


@dataclass(frozen=True)
class EventRecord:
    event_id: int
    failed: int
    available: int
    chosen_d: int
    beta: int
    gamma: int
    ok: bool


@dataclass
class SimTrace:
    records: list[EventRecord] = field(default_factory=list)

    @property
    def total_bandwidth(self) -> int:
        return sum(r.gamma for r in self.records)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["event_id", "failed", "available", "chosen_d", "beta", "gamma", "ok"])
        for r in self.records:
            w.writerow([r.event_id, r.failed, r.available, r.chosen_d, r.beta, r.gamma, int(r.ok)])
        return buf.getvalue()


def choose_d(policy: str, D: tuple[int, ...], available: int, fixed_d: Optional[int] = None) -> Optional[int]:
    """Helper count for ``available`` reachable nodes, or ``None`` if repair is impossible."""
    if policy == "max-d":
        fits = [d for d in D if d <= available]
        return max(fits) if fits else None
    if policy == "min-d":
        return D[0] if D[0] <= available else None
    if policy == "fixed":
        return fixed_d if fixed_d is not None and fixed_d <= available else None
    raise ValueError(f"unknown policy {policy!r}")


def run_sim(config: SimConfig) -> SimTrace:
    config.validate()
    p = config.params
    rng = XorShift64Star(config.seed)
    avail_rng = XorShift64Star(config.seed ^ AVAIL_STREAM_XOR)

    source = [rng.below(p.gf.q) for _ in range(p.file_size)]
    shares = {s.node: s for s in encode_source(source, p)}
    trace = SimTrace()
    width = config.avail_hi - config.avail_lo + 1
    for ev in range(config.events):
        failed = 1 + rng.below(p.n)
        available = config.avail_lo + avail_rng.below(width)
        pool = [j for j in range(1, p.n + 1) if j != failed]
        for t in range(available):                  # partial Fisher-Yates
            s = t + rng.below(len(pool) - t)
            pool[t], pool[s] = pool[s], pool[t]
        reachable = pool[:available]

        d = choose_d(config.policy, p.D, available, config.fixed_d)
        if d is None:
            trace.records.append(EventRecord(ev, failed, available, 0, 0, 0, False))
            continue
        packets = [make_repair_symbols(shares[h], failed, d, p) for h in reachable[:d]]
        downloaded = sum(len(pk.symbols) for pk in packets)
        rebuilt = repair_decode(failed, packets, p)
        ok = rebuilt == shares[failed]
        if ok:
            shares[failed] = rebuilt
        trace.records.append(EventRecord(ev, failed, available, d, p.beta[d], downloaded, ok))
    return trace


def summarize(trace: SimTrace) -> dict:
    recs = trace.records
    repaired = [r for r in recs if r.chosen_d]
    hist: dict[str, int] = {}
    for r in repaired:
        hist[str(r.chosen_d)] = hist.get(str(r.chosen_d), 0) + 1
    return {
        "events": len(recs),
        "repaired": len(repaired),
        "unrepairable": len(recs) - len(repaired),
        "verified_ok": sum(r.ok for r in repaired),
        "total_bandwidth": trace.total_bandwidth,
        "mean_gamma": trace.total_bandwidth / len(repaired) if repaired else 0.0,
        "d_histogram": dict(sorted(hist.items(), key=lambda kv: int(kv[0]))),
        "availability_model": "uniform integer range (stand-in)",
    }


def summary_json(trace: SimTrace) -> str:
    return json.dumps(summarize(trace), indent=2, sort_keys=True) + "\n"
