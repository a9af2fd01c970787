"""Experiment sweeps and CSV emission.

Three sweep modes mirror the measurement series (all admissible keys for
one base; one random admissible key per order over hill-climbed bases;
repeated runs per key for one base) plus the inverse-test sampling study.
Run records serialize to CSV with the fixed header

    order_base,order_result,key,status,solve_ms,decisions,backtracks,starter_digest,seed

Durations are integer wall-clock milliseconds and are the only column that
may differ between reruns with the same seed.
"""

from __future__ import annotations

import csv
import hashlib
import io
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence, Union

from . import _kernels
from .assembly import TriplicationResult, triplicate
from .errors import RefusedError, TristarterError
from .inverse import INCONCLUSIVE, inverse_test
from .solver import BUDGET_EXHAUSTED, SolverConfig
from .starters import Pairing, hill_climb, normalize, verify_pairing
from .triplication import admissible_keys

CSV_HEADER = "order_base,order_result,key,status,solve_ms,decisions,backtracks,starter_digest,seed"

_STATUS_SHORT = {BUDGET_EXHAUSTED: "BUDGET"}


@dataclass(frozen=True)
class RunRecord:
    order_base: int
    order_result: int
    key: int
    status: str           # SAT | UNSAT | BUDGET
    solve_ms: int
    decisions: int
    backtracks: int
    starter_digest: str   # empty unless SAT
    seed: Optional[int]   # empty column when not applicable

    def row(self) -> list:
        return [
            self.order_base, self.order_result, self.key, self.status,
            self.solve_ms, self.decisions, self.backtracks,
            self.starter_digest, "" if self.seed is None else self.seed,
        ]


@dataclass(frozen=True)
class OrderSweepResult:
    records: tuple[RunRecord, ...]
    failures: tuple[tuple[int, str], ...]   # (order, message)


@dataclass(frozen=True)
class RepeatResult:
    records: tuple[RunRecord, ...]
    key_means: tuple[tuple[int, float], ...]   # (key, mean solve_ms)


@dataclass(frozen=True)
class SamplingSummary:
    order: int
    samples: int
    inconclusive: int
    fraction: float
    generation_failures: int


@dataclass(frozen=True)
class SeriesSpec:
    """Complete description of one sweep; `run_series` derives the run list."""

    mode: str                                  # key-sweep | order-sweep | repeat | inverse-sampling
    base: Optional[Pairing] = None
    orders: tuple[int, ...] = ()
    repeats: int = 0
    samples: int = 0
    seed: int = 0

    def __post_init__(self):
        modes = ("key-sweep", "order-sweep", "repeat", "inverse-sampling")
        if self.mode not in modes:
            raise RefusedError(f"mode must be one of {modes}, got {self.mode!r}")


def run_series(spec: SeriesSpec, config: SolverConfig = SolverConfig()):
    """Dispatch a spec to its sweep; the (spec, seed) pair fixes everything
    in the output except durations."""
    if spec.mode == "key-sweep":
        if spec.base is None:
            raise RefusedError("key-sweep needs a base")
        return run_key_sweep(spec.base, config=config)
    if spec.mode == "order-sweep":
        return run_order_sweep(spec.orders, seed=spec.seed, config=config)
    if spec.mode == "repeat":
        if spec.base is None:
            raise RefusedError("repeat needs a base")
        return run_repeat_subseries(spec.base, spec.repeats, config=config)
    return run_inverse_sampling(spec.orders[0], spec.samples, seed=spec.seed)


def starter_digest(pairing: Pairing) -> str:
    """Stable hash of the normalized pairing (order- and orientation-free)."""
    canon = normalize(pairing)
    text = f"{canon.modulus}|" + ";".join(f"{a},{b}" for a, b in canon.pairs)
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def derive_seed(master: int, index: int) -> int:
    """Deterministic per-task child seed."""
    return _kernels.splitmix64((master & ((1 << 64) - 1)) ^ (index * 0x9E3779B97F4A7C15))


def _record_for(base: Pairing, key: int, config: SolverConfig,
                seed: Optional[int]) -> RunRecord:
    result = triplicate(base, key, config=config)
    status = _STATUS_SHORT.get(result.status, result.status)
    digest = ""
    if isinstance(result, TriplicationResult):
        if not verify_pairing(result.starter_a).is_strong:
            raise TristarterError(
                f"key {key}: merged starter failed re-verification")
        digest = starter_digest(result.starter_a)
    return RunRecord(
        order_base=base.modulus,
        order_result=3 * base.modulus,
        key=key,
        status=status,
        solve_ms=result.stats.duration_ms,
        decisions=result.stats.decisions,
        backtracks=result.stats.backtracks,
        starter_digest=digest,
        seed=seed,
    )


def run_key_sweep(
    base: Pairing,
    config: SolverConfig = SolverConfig(),
    workers: int = 1,
) -> list[RunRecord]:
    """One record per admissible key, ascending; every SAT starter re-verified."""
    if not verify_pairing(base).is_strong:
        raise RefusedError("key sweep requires a strong base")
    keys = admissible_keys(base)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_record_for, base, t, config, None) for t in keys]
            return [f.result() for f in futures]
    return [_record_for(base, t, config, None) for t in keys]


def run_order_sweep(
    orders: Sequence[int],
    seed: int = 0,
    config: SolverConfig = SolverConfig(),
) -> OrderSweepResult:
    """Per order: hill-climb a base, pick a seeded random admissible key, run."""
    records = []
    failures = []
    for idx, order in enumerate(orders):
        child = derive_seed(seed, idx)
        try:
            base = hill_climb(order, seed=child)
            keys = admissible_keys(base)
            key = keys[derive_seed(child, 1) % len(keys)]
            records.append(_record_for(base, key, config, child))
        except TristarterError as exc:
            failures.append((order, str(exc)))
    return OrderSweepResult(tuple(records), tuple(failures))


def run_repeat_subseries(
    base: Pairing,
    repeats: int,
    config: SolverConfig = SolverConfig(),
) -> RepeatResult:
    """``repeats`` passes over all admissible keys; per-key mean durations."""
    if repeats < 1:
        raise RefusedError(f"repeats must be >= 1, got {repeats}")
    if not verify_pairing(base).is_strong:
        raise RefusedError("repeat subseries requires a strong base")
    keys = admissible_keys(base)
    records: list[RunRecord] = []
    for _ in range(repeats):
        for t in keys:
            records.append(_record_for(base, t, config, None))
    means = []
    for t in keys:
        times = [r.solve_ms for r in records if r.key == t]
        means.append((t, sum(times) / len(times)))
    return RepeatResult(tuple(records), tuple(means))


def run_inverse_sampling(order: int, samples: int, seed: int = 0) -> SamplingSummary:
    """Hill-climb ``samples`` starters of ``order`` and inverse-test each.

    Repetitions are allowed (independent seeds per sample).  Generation
    failures are counted, not fatal.
    """
    if samples < 1:
        raise RefusedError(f"samples must be >= 1, got {samples}")
    inconclusive = 0
    failures = 0
    for i in range(samples):
        try:
            starter = hill_climb(order, seed=derive_seed(seed, i))
        except TristarterError:
            failures += 1
            continue
        if inverse_test(starter).status == INCONCLUSIVE:
            inconclusive += 1
    tested = samples - failures
    return SamplingSummary(
        order=order,
        samples=samples,
        inconclusive=inconclusive,
        fraction=inconclusive / tested if tested else 0.0,
        generation_failures=failures,
    )


def write_records_csv(records: Sequence[RunRecord], path: Union[str, Path, None]) -> str:
    """Serialize records under the fixed header; returns the CSV text."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER.split(","))
    for record in records:
        writer.writerow(record.row())
    text = buf.getvalue()
    if path is not None:
        Path(path).write_text(text)
    return text


def write_key_means_csv(
    means: Sequence[tuple[int, float]], repeats: int, path: Union[str, Path, None]
) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["key", "runs", "mean_solve_ms"])
    for key, mean in means:
        writer.writerow([key, repeats, f"{mean:.3f}"])
    text = buf.getvalue()
    if path is not None:
        Path(path).write_text(text)
    return text
