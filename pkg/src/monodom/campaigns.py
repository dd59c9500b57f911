"""Verification campaigns: batched scans with mergeable, deterministic results.

A campaign walks one EnumerationSpec shard, evaluates a property on every
instance, and produces a CampaignResult whose JSON form is byte-deterministic
for a fixed spec (seed and shard layout included).  Shard results merge into
exactly the result of the unsharded run: counts add, violator lists interleave
by global index, extremal witnesses keep the lowest-index representative.

Heavy scans run on the vectorized kernel; canonical mode (small orders only)
walks instances one at a time on the pure engine.  Expected violator counts
are zero throughout, so violator storage is capped (the count is exact).
"""

from __future__ import annotations

import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .auditor import audit
from .core import ColouredTournament, canonical_json, serialize
from .domination import (
    dominating_vertices,
    domination_relation,
    find_rainbow_triangle,
    min_cover,
)
from .enumeration import (
    EnumerationSpec,
    enumerate_instances,
    matches_filter,
)
from . import kernel

BATCH_ROWS = 1 << 20
VIOLATOR_CAP = 100


@dataclass
class CampaignResult:
    """Outcome of one campaign shard (or a merge of shards)."""

    spec: EnumerationSpec
    counts: dict[str, int]
    violators: list[dict] = field(default_factory=list)
    extremal: dict = field(default_factory=dict)
    check_failures: dict[str, int] = field(default_factory=dict)
    elapsed: float = 0.0  # telemetry; excluded from serialized form

    @property
    def violations(self) -> int:
        return self.counts.get("violations", 0) + self.counts.get("alarms", 0)

    @property
    def rate(self) -> float:
        done = self.counts.get("enumerated", 0)
        return done / self.elapsed if self.elapsed > 0 else 0.0

    @property
    def max_cover_order(self) -> int:
        orders = [int(k) for k in self.extremal.get("min_cover", {}) if k.isdigit()]
        return max(orders, default=0)

    def to_dict(self) -> dict:
        extremal = {}
        for stat, witnesses in self.extremal.items():
            entry: dict = {"witnesses": witnesses}
            if stat == "min_cover":
                entry["max_order"] = self.max_cover_order
            extremal[stat] = entry
        return {
            "spec": self.spec.to_dict(),
            "counts": dict(sorted(self.counts.items())),
            "violators": self.violators,
            "extremal": extremal,
            "check_failures": dict(sorted(self.check_failures.items())),
            "seed": self.spec.seed if self.spec.mode == "sampled" else None,
        }

    def to_json(self) -> str:
        return canonical_json(self.to_dict())


def merge_results(
    results: list[CampaignResult], spec: EnumerationSpec | None = None
) -> CampaignResult:
    """Combine shard results into the result of the covering run.

    Violator lists are exact as long as no input was truncated at the storage
    cap; counts are always exact.
    """
    if not results:
        raise ValueError("nothing to merge")
    spec = spec or results[0].spec.unsharded()
    counts: dict[str, int] = {}
    failures: dict[str, int] = {}
    violators: list[dict] = []
    extremal: dict = {}
    for r in results:
        for key, v in r.counts.items():
            counts[key] = counts.get(key, 0) + v
        for key, v in r.check_failures.items():
            failures[key] = failures.get(key, 0) + v
        violators.extend(r.violators)
        for stat, per_value in r.extremal.items():
            slot = extremal.setdefault(stat, {})
            for value, witness in per_value.items():
                if value not in slot or witness["index"] < slot[value]["index"]:
                    slot[value] = witness
    violators.sort(key=lambda v: v["index"])
    return CampaignResult(
        spec=spec,
        counts=counts,
        violators=violators[:VIOLATOR_CAP],
        extremal=extremal,
        check_failures=failures,
        elapsed=sum(r.elapsed for r in results),
    )


# -- shared scan plumbing --------------------------------------------------------


def _record(violators: list[dict], index: int, t: ColouredTournament) -> None:
    if len(violators) < VIOLATOR_CAP:
        violators.append({"index": index, "instance": serialize(t)})


def _instance(spec: EnumerationSpec, codes_row: np.ndarray) -> ColouredTournament:
    return ColouredTournament.from_codes(
        spec.n, [int(c) for c in codes_row], colours=spec.colours
    )


class _Progress:
    def __init__(self, spec: EnumerationSpec, every: int):
        self.every = every
        self.prefix = f"shard {spec.shard[0]}/{spec.shard[1]}"
        self.total = spec.shard_size()
        self.next_mark = every

    def step(self, done: int) -> None:
        if self.every and done >= self.next_mark:
            print(f"{self.prefix}: {done} of {self.total}", file=sys.stderr)
            while self.next_mark <= done:
                self.next_mark += self.every


def _batches(spec: EnumerationSpec, batch_rows: int):
    """Yield (start position, codes array) covering this shard."""
    total = spec.shard_size()
    for start in range(0, total, batch_rows):
        size = min(batch_rows, total - start)
        yield start, kernel.batch_codes(spec, start, size)


def _global_indices(spec: EnumerationSpec, start: int, size: int) -> np.ndarray:
    k, m = spec.shard
    return k + (np.arange(start, start + size, dtype=np.int64)) * m


# -- campaigns ---------------------------------------------------------------------


def verify_conjecture(
    spec: EnumerationSpec,
    require_cyclic: bool = True,
    progress: int = 0,
    batch_rows: int = BATCH_ROWS,
) -> CampaignResult:
    """Check every instance for a cyclic rainbow triangle or a dominating
    vertex; instances with neither are collected as violators."""
    if spec.colours != 3:
        raise ValueError("the conjecture concerns 3-coloured tournaments")
    t0 = time.time()
    if spec.mode == "canonical":
        return _verify_conjecture_pure(spec, require_cyclic, t0)
    prog = _Progress(spec, progress)
    enumerated = examined = violations = 0
    violators: list[dict] = []
    for start, codes in _batches(spec, batch_rows):
        size = codes.shape[0]
        enumerated += size
        keep = _filter_mask(spec, codes)
        examined += int(keep.sum())
        t3 = kernel.rainbow_triangle_mask(codes, spec.n, require_cyclic=require_cyclic)
        bad = keep & ~t3
        if bad.any():
            reach = kernel.any_reach(codes[bad], spec.n)
            dom = kernel.dominating_vertex_mask(reach, spec.n)
            rows = np.flatnonzero(bad)[~dom]
            violations += len(rows)
            for b in rows:
                _record(violators, int(_global_indices(spec, start, size)[b]),
                        _instance(spec, codes[b]))
        prog.step(start + size)
    counts = {"enumerated": enumerated, "examined": examined, "violations": violations}
    return CampaignResult(spec, counts, violators, elapsed=time.time() - t0)


def _verify_conjecture_pure(
    spec: EnumerationSpec, require_cyclic: bool, t0: float
) -> CampaignResult:
    enumerated = examined = violations = 0
    violators: list[dict] = []
    for index, t in enumerate_instances(spec):
        enumerated += 1
        if not matches_filter(spec, t):
            continue
        examined += 1
        if find_rainbow_triangle(t, require_cyclic=require_cyclic) is not None:
            continue
        if dominating_vertices(t):
            continue
        violations += 1
        _record(violators, index, t)
    counts = {"enumerated": enumerated, "examined": examined, "violations": violations}
    return CampaignResult(spec, counts, violators, elapsed=time.time() - t0)


def _filter_mask(spec: EnumerationSpec, codes: np.ndarray) -> np.ndarray:
    if spec.filter == "two-colour-vertices":
        return kernel.two_colour_vertices_mask(codes, spec.n, spec.colours)
    return np.ones(codes.shape[0], dtype=bool)


def verify_ssw2(
    spec: EnumerationSpec, progress: int = 0, batch_rows: int = BATCH_ROWS
) -> CampaignResult:
    """Check every 2-coloured instance for a dominating vertex."""
    if spec.colours != 2:
        raise ValueError("this campaign concerns 2-coloured tournaments")
    t0 = time.time()
    enumerated = examined = violations = 0
    violators: list[dict] = []
    if spec.mode == "canonical":
        for index, t in enumerate_instances(spec):
            enumerated += 1
            if not matches_filter(spec, t):
                continue
            examined += 1
            if not dominating_vertices(t):
                violations += 1
                _record(violators, index, t)
        counts = {
            "enumerated": enumerated, "examined": examined, "violations": violations,
        }
        return CampaignResult(spec, counts, violators, elapsed=time.time() - t0)
    prog = _Progress(spec, progress)
    for start, codes in _batches(spec, batch_rows):
        size = codes.shape[0]
        enumerated += size
        keep = _filter_mask(spec, codes)
        examined += int(keep.sum())
        reach = kernel.any_reach(codes, spec.n, colours=2)
        dom = kernel.dominating_vertex_mask(reach, spec.n)
        rows = np.flatnonzero(keep & ~dom)
        violations += len(rows)
        for b in rows:
            _record(violators, int(_global_indices(spec, start, size)[b]),
                    _instance(spec, codes[b]))
        prog.step(start + size)
    counts = {"enumerated": enumerated, "examined": examined, "violations": violations}
    return CampaignResult(spec, counts, violators, elapsed=time.time() - t0)


def estimate_f(
    spec: EnumerationSpec,
    k_max: int = 4,
    progress: int = 0,
    batch_rows: int = BATCH_ROWS,
) -> CampaignResult:
    """Maximum minimum-cover order over the enumerated instances.

    Keeps one lowest-index witness per achieved order.  Instances that no set
    of order <= k_max covers are counted as uncovered and witnessed too.
    """
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    t0 = time.time()
    enumerated = examined = uncovered = 0
    witnesses: dict[str, dict] = {}

    def note(value: str, index: int, t: ColouredTournament):
        if value not in witnesses or index < witnesses[value]["index"]:
            witnesses[value] = {"index": index, "instance": serialize(t)}

    if spec.mode == "canonical":
        for index, t in enumerate_instances(spec):
            enumerated += 1
            if not matches_filter(spec, t):
                continue
            examined += 1
            cover = min_cover(t, k_max=k_max)
            if cover is None:
                uncovered += 1
                note("uncovered", index, t)
            else:
                note(str(cover.order), index, t)
    else:
        prog = _Progress(spec, progress)
        for start, codes in _batches(spec, batch_rows):
            size = codes.shape[0]
            enumerated += size
            keep = _filter_mask(spec, codes)
            examined += int(keep.sum())
            reach = kernel.any_reach(codes, spec.n, colours=spec.colours)
            tiers = kernel.cover_order_tiers(reach, spec.n, k_max=k_max)
            tiers[~keep] = 255
            gidx = _global_indices(spec, start, size)
            for order in (1, 2, 3):
                rows = np.flatnonzero(tiers == order)
                if len(rows):
                    b = int(rows[0])
                    note(str(order), int(gidx[b]), _instance(spec, codes[b]))
            for b in np.flatnonzero(tiers == 0):
                t = _instance(spec, codes[b])
                cover = min_cover(t, k_max=k_max)
                if cover is None:
                    uncovered += 1
                    note("uncovered", int(gidx[b]), t)
                else:
                    note(str(cover.order), int(gidx[b]), t)
            prog.step(start + size)
    counts = {
        "enumerated": enumerated,
        "examined": examined,
        "violations": 0,
        "uncovered": uncovered,
    }
    extremal = {"min_cover": {k: witnesses[k] for k in sorted(witnesses)}}
    return CampaignResult(spec, counts, extremal=extremal, elapsed=time.time() - t0)


def search_pattern(
    order: int,
    pattern: tuple,
    mode: str = "exhaustive",
    samples: int = 0,
    seed: int = 0,
    shard: tuple[int, int] = (0, 1),
    budget: int | None = None,
    progress: int = 0,
    batch_rows: int = BATCH_ROWS,
) -> CampaignResult:
    """Scan all completions of a colour-patterned Hamilton cycle.

    The cycle 0 -> 1 -> ... -> order-1 -> 0 is pinned with the repeating
    pattern; the remaining pairs are enumerated (or sampled).  Reports
    instances passing the weak test (qualifying cycle, no cyclic rainbow
    triangle, no dominating vertex) as violators, and runs the full audit on
    each of them; audits reaching the all-conditions-pass verdict are counted
    as alarms.  check_failures histograms the failed checks seen.
    """
    kwargs = dict(
        n=order, colours=3, mode=mode, pattern=tuple(pattern), shard=shard,
        samples=samples, seed=seed,
    )
    if budget is not None:
        kwargs["budget"] = budget
    spec = EnumerationSpec(**kwargs)
    if mode == "canonical":
        raise ValueError("pattern searches run exhaustive or sampled")
    t0 = time.time()
    prog = _Progress(spec, progress)
    enumerated = weak = alarms = 0
    failures = {"t3": 0, "dominating_vertex": 0, "genhamilton": 0}
    violators: list[dict] = []
    alarm_list: list[dict] = []
    for start, codes in _batches(spec, batch_rows):
        size = codes.shape[0]
        enumerated += size
        reach = kernel.any_reach(codes, spec.n)
        qual = kernel.qualifying_cycle_mask(reach, spec.n)
        t3 = kernel.rainbow_triangle_mask(codes, spec.n)
        dom = kernel.dominating_vertex_mask(reach, spec.n)
        failures["t3"] += int(t3.sum())
        failures["dominating_vertex"] += int(dom.sum())
        failures["genhamilton"] += int((~qual).sum())
        weak_mask = qual & ~t3 & ~dom
        if weak_mask.any():
            gidx = _global_indices(spec, start, size)
            for b in np.flatnonzero(weak_mask):
                weak += 1
                t = _instance(spec, codes[b])
                _record(violators, int(gidx[b]), t)
                report = audit(t)
                for f in report.findings:
                    if not f.holds:
                        failures[f.check] = failures.get(f.check, 0) + 1
                if report.alarm:
                    alarms += 1
                    if len(alarm_list) < VIOLATOR_CAP:
                        alarm_list.append(
                            {"index": int(gidx[b]), "report": report.to_dict()}
                        )
        prog.step(start + size)
    counts = {
        "enumerated": enumerated,
        "examined": enumerated,
        "violations": weak,
        "alarms": alarms,
    }
    extremal = (
        {"alarms": {str(a["index"]): a for a in alarm_list}} if alarm_list else {}
    )
    return CampaignResult(
        spec, counts, violators, extremal=extremal, check_failures=failures,
        elapsed=time.time() - t0,
    )


# -- parallel driver -----------------------------------------------------------------


_CAMPAIGNS = {
    "conjecture": verify_conjecture,
    "ssw2": verify_ssw2,
    "estimate_f": estimate_f,
}


def _run_subshard(args) -> CampaignResult:
    name, spec, kwargs = args
    return _CAMPAIGNS[name](spec, **kwargs)


def run_parallel(
    name: str, spec: EnumerationSpec, workers: int = 1, **kwargs
) -> CampaignResult:
    """Run a named campaign over `workers` disjoint sub-shards and merge.

    Sub-shard j of the spec's shard (k, m) is (k + j*m, m*workers); their
    union is exactly the original shard, so the merged result equals the
    single-process run.
    """
    if workers <= 1:
        return _CAMPAIGNS[name](spec, **kwargs)
    k, m = spec.shard
    subs = [replace(spec, shard=(k + j * m, m * workers)) for j in range(workers)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(_run_subshard, [(name, s, kwargs) for s in subs]))
    return merge_results(parts, spec=spec)
