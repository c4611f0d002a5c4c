"""Exhaustive certification of Exp_h(n) for small n.

The upper half of a certificate is the family graph with one witness per
non-edge.  The lower half is an exhaustive sweep over all labeled graphs with
``exp_h(n) - 1`` edges showing none is expandable.  Because adding an edge
keeps every Hamiltonian path, non-existence at ``m`` implies non-existence
at every smaller edge count, so one sweep suffices.

Edge subsets are ranked in colexicographic order over the lexicographically
sorted vertex pairs, which lets the rank range be cut into independent shards.
"""

from __future__ import annotations

import json
import logging
import math
import os
import platform
import sys
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Iterator

import numpy as np

from hamexp import _kernels
from hamexp.canonical import canonical_key
from hamexp.constructions import build_minimum, exp_h
from hamexp.filters import Reason, apply_filters, connectivity_filter
from hamexp.formats import graph_from_json, graph_to_json
from hamexp.graph import Graph, GraphError, NonEdge, make_graph, non_edges
from hamexp.oracle import CycleWitness, expandability_report, is_expandable, validate_witness

log = logging.getLogger(__name__)

MAX_ENUM_N = 10
MAX_PLAIN_N = 8
CHUNK = 1 << 21

# kernel classification code -> filter reason
CODE_REASONS = {
    _kernels.PENDANT: Reason.PENDANT,
    _kernels.DEG2_OPEN: Reason.DEG2_OPEN,
    _kernels.DEG2_DEG3_DISTINCT: Reason.DEG2_DEG3_DISTINCT,
    _kernels.DEG2_DEG3_SHARED: Reason.DEG2_DEG3_SHARED,
    _kernels.SHARED_NEIGHBOR: Reason.SHARED_NEIGHBOR,
    _kernels.DISCONNECTED: Reason.DISCONNECTED,
}
FILTER_REASONS = [r.value for r in CODE_REASONS.values()]


class CertificationError(ValueError):
    pass


@dataclass(frozen=True)
class EnumerationCursor:
    """Position in the colex sweep of m-edge graphs on n vertices."""

    n: int
    m: int
    rank: int = 0

    @property
    def total(self) -> int:
        return math.comb(math.comb(self.n, 2), self.m)

    @property
    def done(self) -> bool:
        return self.rank >= self.total


@dataclass
class EnumerationSummary:
    total: int = 0
    visited: int = 0
    filtered: Counter = field(default_factory=Counter)

    def __add__(self, other: "EnumerationSummary") -> "EnumerationSummary":
        return EnumerationSummary(self.total + other.total, self.visited + other.visited,
                                  self.filtered + other.filtered)


def pair_list(n: int) -> list[tuple[int, int]]:
    return [(u, v) for u in range(n) for v in range(u + 1, n)]


def unrank_colex(rank: int, m: int) -> list[int]:
    out = [0] * m
    for i in range(m, 0, -1):
        c = i - 1
        while math.comb(c + 1, i) <= rank:
            c += 1
        out[i - 1] = c
        rank -= math.comb(c, i)
    return out


def rank_colex(comb: list[int]) -> int:
    return sum(math.comb(c, i + 1) for i, c in enumerate(comb))


def iter_colex(size: int, m: int, start: int = 0, stop: int | None = None) -> Iterator[tuple[int, ...]]:
    """m-subsets of ``range(size)`` in colex order, ranks ``[start, stop)``."""
    total = math.comb(size, m)
    stop = total if stop is None else min(stop, total)
    if start >= stop:
        return
    comb = unrank_colex(start, m)
    for rank in range(start, stop):
        yield tuple(comb)
        if rank + 1 == stop:
            break
        i = 0
        while i < m - 1 and comb[i] + 1 == comb[i + 1]:
            i += 1
        comb[i] += 1
        comb[:i] = range(i)


def graph_at(n: int, m: int, rank: int) -> Graph:
    pairs = pair_list(n)
    return make_graph(n, [pairs[k] for k in unrank_colex(rank, m)])


def enumerate_graphs(
    n: int,
    m: int,
    visitor: Callable[[Graph], Any] | None = None,
    use_filters: bool = False,
    dedup: str = "labeled",
    start: int = 0,
    stop: int | None = None,
) -> EnumerationSummary:
    """Visit the m-edge graphs on n vertices in colex order.

    With ``dedup="canonical"`` only the first graph of each isomorphism class
    counts.  With ``use_filters`` the structural filters and the connectivity
    check run first and rejected graphs are tallied rather than visited.
    """
    if n > MAX_ENUM_N:
        raise CertificationError(
            f"n={n} exceeds the in-process limit of {MAX_ENUM_N}; shard the rank range externally")
    pairs = pair_list(n)
    if not 0 <= m <= len(pairs):
        raise CertificationError(f"m={m} out of range for n={n}")
    if dedup not in ("labeled", "canonical"):
        raise CertificationError(f"unknown dedup mode {dedup!r}")
    summary = EnumerationSummary()
    seen: set[bytes] = set()
    for comb in iter_colex(len(pairs), m, start, stop):
        g = make_graph(n, [pairs[k] for k in comb])
        if dedup == "canonical":
            key = canonical_key(g)
            if key in seen:
                continue
            seen.add(key)
        summary.total += 1
        if use_filters:
            verdict = apply_filters(g, m)
            if not verdict.rejected:
                verdict = connectivity_filter(g)
            if verdict.rejected:
                summary.filtered[verdict.reason.value] += 1
                continue
        summary.visited += 1
        if visitor is not None:
            visitor(g)
    return summary


@dataclass
class LowerBound:
    m: int
    total: int
    filtered: dict[str, int]
    oracle_rejected: int
    survivors: int
    spot_checked: int = 0
    spot_disagreements: int = 0

    def to_json(self) -> dict:
        return {
            "m": self.m, "total": self.total, "filtered": dict(self.filtered),
            "oracle_rejected": self.oracle_rejected, "survivors": self.survivors,
            "spot_checked": self.spot_checked, "spot_disagreements": self.spot_disagreements,
        }


@dataclass
class Certificate:
    n: int
    claimed_m: int
    graph: Graph
    witnesses: list[CycleWitness]
    lower: LowerBound
    dedup: str = "labeled"
    runtime_seconds: float = 0.0
    toolchain: dict = field(default_factory=dict)
    counterexample: Graph | None = None

    @property
    def valid(self) -> bool:
        return self.lower.survivors == 0

    def to_json(self) -> dict:
        out = {
            "n": self.n,
            "claimed_m": self.claimed_m,
            "upper": {"graph": graph_to_json(self.graph),
                      "witnesses": [w.to_json() for w in self.witnesses]},
            "lower": self.lower.to_json(),
            "dedup": self.dedup,
            "runtime_seconds": round(self.runtime_seconds, 3),
            "status": "VALID" if self.valid else "FAILED",
            "toolchain": self.toolchain,
        }
        if self.counterexample is not None:
            out["counterexample"] = graph_to_json(self.counterexample)
        return out


def toolchain() -> dict:
    import numba

    from hamexp import __version__
    return {"hamexp": __version__, "python": platform.python_version(),
            "numpy": np.__version__, "numba": numba.__version__, "platform": sys.platform}


# -- lower-bound sweep --------------------------------------------------------

def _scan_chunk(args: tuple) -> tuple[int, np.ndarray, np.ndarray, int]:
    idx, n, m, start, stop, use_filters, shared_ok, spot_mod, seed = args
    counts, spot, first = _kernels.scan_range(n, m, start, stop, use_filters, shared_ok,
                                              spot_mod, seed)
    return idx, counts, spot, int(first)


def _load_checkpoint(path: Path, key: dict) -> dict | None:
    if not path.exists():
        return None
    state = json.loads(path.read_text())
    if state.get("key") != key:
        raise CertificationError(f"checkpoint {path} belongs to a different run: {state.get('key')}")
    return state


def _save_checkpoint(path: Path, state: dict) -> None:
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(json.dumps(state))
    os.replace(tmp, path)


def sweep_kernel(
    n: int, m: int, use_filters: bool, jobs: int = 1, spot_rate: int = 100, seed: int = 0,
    checkpoint: Path | None = None, chunk: int = CHUNK,
) -> tuple[np.ndarray, np.ndarray, int]:
    """Compiled labeled sweep; returns (code counts, spot counts, first survivor rank)."""
    total = math.comb(math.comb(n, 2), m)
    shared_ok = use_filters and n >= 7 and m < math.ceil(3 * n / 2)
    bounds = list(range(0, total, chunk)) + [total]
    tasks = [(k, n, m, bounds[k], bounds[k + 1], use_filters, shared_ok, spot_rate, seed)
             for k in range(len(bounds) - 1)]
    key = {"n": n, "m": m, "use_filters": use_filters, "chunk": chunk,
           "spot_rate": spot_rate, "seed": seed}
    counts = np.zeros(_kernels.N_CODES, dtype=np.int64)
    spot = np.zeros(2, dtype=np.int64)
    first = -1
    done: set[int] = set()
    if checkpoint is not None:
        state = _load_checkpoint(checkpoint, key)
        if state:
            counts += np.array(state["counts"], dtype=np.int64)
            spot += np.array(state["spot"], dtype=np.int64)
            first = state["first_survivor"]
            done = set(state["done"])
            log.info("resuming from %s: %d/%d chunks done", checkpoint, len(done), len(tasks))
    pending = [t for t in tasks if t[0] not in done]

    def absorb(result: tuple) -> None:
        nonlocal counts, spot, first
        idx, c, s, f = result
        counts += c
        spot += s
        if f >= 0 and (first < 0 or f < first):
            first = f
        done.add(idx)
        log.info("n=%d m=%d: %d/%d chunks", n, m, len(done), len(tasks))
        if checkpoint is not None:
            _save_checkpoint(checkpoint, {"key": key, "counts": counts.tolist(),
                                          "spot": spot.tolist(), "first_survivor": first,
                                          "done": sorted(done)})

    if jobs > 1 and len(pending) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for result in pool.map(_scan_chunk, pending):
                absorb(result)
    else:
        for task in pending:
            absorb(_scan_chunk(task))
    return counts, spot, first


def _lower_kernel(n: int, m: int, use_filters: bool, **kw) -> tuple[LowerBound, Graph | None]:
    counts, spot, first = sweep_kernel(n, m, use_filters, **kw)
    filtered = {CODE_REASONS[c].value: int(counts[c]) for c in CODE_REASONS}
    lower = LowerBound(m=m, total=int(counts.sum()), filtered=filtered,
                       oracle_rejected=int(counts[_kernels.ORACLE_REJECTED]),
                       survivors=int(counts[_kernels.SURVIVOR]),
                       spot_checked=int(spot[0]), spot_disagreements=int(spot[1]))
    return lower, (graph_at(n, m, first) if first >= 0 else None)


def _lower_python(n: int, m: int, use_filters: bool, dedup: str) -> tuple[LowerBound, Graph | None]:
    tally = Counter()
    survivors: list[Graph] = []

    def visit(g: Graph) -> None:
        if is_expandable(g):
            tally["survivors"] += 1
            if not survivors:
                survivors.append(g)
        else:
            tally["oracle_rejected"] += 1

    summary = enumerate_graphs(n, m, visit, use_filters=use_filters, dedup=dedup)
    filtered = {r: summary.filtered.get(r, 0) for r in FILTER_REASONS}
    lower = LowerBound(m=m, total=summary.total, filtered=filtered,
                       oracle_rejected=tally["oracle_rejected"], survivors=tally["survivors"])
    return lower, (survivors[0] if survivors else None)


def certify(
    n: int,
    jobs: int = 1,
    dedup: str = "labeled",
    engine: str = "kernel",
    long_run: bool = False,
    seed: int = 0,
    spot_rate: int = 100,
    checkpoint: Path | str | None = None,
) -> Certificate:
    """Certify ``Exp_h(n) = exp_h(n)``: witnesses above, exhaustion one edge below.

    Filters and the connectivity pre-check are engaged for ``n >= 7`` only.
    ``engine="python"`` runs the pure-Python reference sweep (required for
    canonical dedup); ``"kernel"`` runs the compiled sweep in ``jobs`` shards.
    """
    if n < 3:
        raise CertificationError(f"certification needs n >= 3, got {n}")
    if n > MAX_ENUM_N:
        raise CertificationError(f"certification is limited to n <= {MAX_ENUM_N}, got {n}")
    if n > MAX_PLAIN_N and not long_run:
        raise CertificationError(f"n={n} is an overnight-scale run; pass long_run=True")
    if jobs < 1:
        raise CertificationError("jobs must be >= 1")
    if dedup == "canonical":
        engine = "python"
    t0 = time.perf_counter()
    claimed = exp_h(n)
    g, _ = build_minimum(n)
    report = expandability_report(g)
    if not report.expandable:
        raise CertificationError(f"construction for n={n} is not expandable: {report.failures}")
    witnesses = list(report.entries.values())

    m = claimed - 1
    use_filters = n >= 7
    if engine == "kernel":
        lower, counterexample = _lower_kernel(
            n, m, use_filters, jobs=jobs, spot_rate=spot_rate, seed=seed,
            checkpoint=Path(checkpoint) if checkpoint else None)
    elif engine == "python":
        lower, counterexample = _lower_python(n, m, use_filters, dedup)
    else:
        raise CertificationError(f"unknown engine {engine!r}")
    if counterexample is not None:
        log.error("survivor found at n=%d m=%d: %s", n, m, counterexample)
    return Certificate(n=n, claimed_m=claimed, graph=g, witnesses=witnesses, lower=lower,
                       dedup=dedup, runtime_seconds=time.perf_counter() - t0,
                       toolchain=toolchain(), counterexample=counterexample)


# -- independent re-check ------------------------------------------------------

def certificate_problems(data: Any) -> list[str]:
    """Reasons a certificate JSON object is invalid; empty means valid.

    Re-validates every witness and the counter arithmetic; never searches.
    """
    problems: list[str] = []
    try:
        n = data["n"]
        claimed = data["claimed_m"]
        upper = data["upper"]
        lower = data["lower"]
        dedup = data["dedup"]
    except (TypeError, KeyError) as exc:
        return [f"missing field: {exc}"]
    if not _count(n) or not 3 <= n <= MAX_ENUM_N:
        return [f"bad n: {n!r}"]
    if not _count(claimed):
        return [f"bad claimed_m: {claimed!r}"]
    if not isinstance(upper, dict) or not isinstance(upper.get("witnesses"), list):
        return ["upper section needs a graph and a witness list"]
    if claimed != exp_h(n):
        problems.append(f"claimed_m={claimed} but exp_h({n})={exp_h(n)}")
    try:
        g = graph_from_json(upper["graph"])
    except (GraphError, TypeError, KeyError, OverflowError) as exc:
        return problems + [f"bad upper graph: {exc}"]
    if g.n != n:
        problems.append(f"upper graph has {g.n} vertices, expected {n}")
    if g.m != claimed:
        problems.append(f"upper graph has {g.m} edges, expected {claimed}")

    expected = set(non_edges(g))
    covered = set()
    for k, item in enumerate(upper["witnesses"]):
        try:
            x, y = item["through"]
            w = CycleWitness(tuple(item["order"]), NonEdge.of(x, y))
        except (TypeError, KeyError, ValueError) as exc:
            problems.append(f"witness {k} malformed: {exc}")
            continue
        if not validate_witness(g, w):
            problems.append(f"witness {k} through {tuple(w.through)} does not validate")
        covered.add(w.through)
    if covered != expected:
        problems.append(f"witnesses cover {len(covered & expected)} of {len(expected)} non-edges"
                        + (f" plus {len(covered - expected)} extra" if covered - expected else ""))

    try:
        m, total = lower["m"], lower["total"]
        filtered = lower["filtered"]
        oracle_rejected, survivors = lower["oracle_rejected"], lower["survivors"]
        spot = [lower[k] for k in ("spot_checked", "spot_disagreements") if k in lower]
        counters = [m, total, oracle_rejected, survivors, *filtered.values(), *spot]
    except (TypeError, KeyError, AttributeError) as exc:
        return problems + [f"bad lower section: {exc}"]
    if not all(map(_count, counters)):
        return problems + ["lower-bound counters must be non-negative integers"]
    unknown = set(filtered) - set(FILTER_REASONS) - {Reason.DISCONNECTED.value}
    if unknown:
        problems.append(f"unknown filter reasons {sorted(unknown)}")
    runtime = data.get("runtime_seconds")
    if not isinstance(runtime, (int, float)) or isinstance(runtime, bool) or not runtime >= 0:
        problems.append(f"bad runtime_seconds: {runtime!r}")
    if m != claimed - 1:
        problems.append(f"lower search at m={m}, expected {claimed - 1}")
    if survivors != 0:
        problems.append(f"{survivors} survivor(s) at m={m}")
    if sum(filtered.values()) + oracle_rejected + survivors != total:
        problems.append("filtered + oracle_rejected + survivors != total")
    if dedup == "labeled":
        if total != math.comb(math.comb(n, 2), m):
            problems.append(f"labeled total {total} != C(C({n},2),{m})")
    elif dedup != "canonical":
        problems.append(f"unknown dedup mode {dedup!r}")
    if lower.get("spot_disagreements", 0) != 0:
        problems.append("filter spot check found expandable graphs among rejected ones")
    if data.get("status", "VALID") != "VALID":
        problems.append(f"status is {data.get('status')!r}")
    return problems


def _count(x: Any) -> bool:
    return isinstance(x, int) and not isinstance(x, bool) and x >= 0


def verify_certificate(c: Certificate | dict) -> bool:
    data = c.to_json() if isinstance(c, Certificate) else c
    return not certificate_problems(data)
