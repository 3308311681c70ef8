"""Seeded random-permutation experiments and reproduction of the small-n table."""
from __future__ import annotations

import json
import os
import random
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

from .core import Permutation
from .foolingset import build_fanning, certify, verify_fooling_set
from .solver import BudgetExceeded, SearchBudget, global_min

#: Published minima for small grids.
KNOWN_MINIMA = {2: 2, 3: 4, 4: 5, 5: 7, 6: 8, 7: 10, 8: 11}

_MASK64 = (1 << 64) - 1


def splitmix64(x: int) -> int:
    """SplitMix64 finaliser (Steele, Lea & Flood 2014)."""
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def trial_seed(master_seed: int, trial: int) -> int:
    """Seed for trial ``trial``: SplitMix64 of the 64-bit word ``master:32 | trial:32``."""
    return splitmix64(((master_seed & 0xFFFFFFFF) << 32) | (trial & 0xFFFFFFFF))


def random_perm(n: int, seed: int) -> Permutation:
    """Uniform permutation from a Fisher-Yates shuffle driven by ``random.Random(seed)``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    values = list(range(1, n + 1))
    random.Random(seed).shuffle(values)
    return Permutation(n, tuple(values))


@dataclass(frozen=True)
class Trial:
    seed: int
    valid: bool  # the fanning set was a fooling set before any repair
    size: int  # certificate size after repair


@dataclass
class ExperimentReport:
    n: int
    trials: int
    seed: int
    validity_rate: float
    size_min: int
    size_mean: float
    size_max: int
    per_trial: list[Trial] = field(default_factory=list)

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def summary(self) -> str:
        return (f"n={self.n} trials={self.trials} seed={self.seed} "
                f"validity={self.validity_rate:.2%} "
                f"size min/mean/max={self.size_min}/{self.size_mean:.2f}/{self.size_max}")


def run_trial(n: int, seed: int) -> Trial:
    perm = random_perm(n, seed)
    valid = verify_fooling_set(perm, build_fanning(perm)).valid
    return Trial(seed, valid, certify(perm).size)


def _worker_count(workers):
    if workers is None:
        workers = int(os.environ.get("MATILDA_THREADS", "1") or 1)
    if workers == 0:
        workers = os.cpu_count() or 1
    return max(1, workers)


def run_experiment(n: int, trials: int, master_seed: int, *, workers: int | None = None,
                   keep_trials: bool = True) -> ExperimentReport:
    """Certify ``trials`` random permutations of size ``n``.

    Trial ``i`` uses :func:`trial_seed` ``(master_seed, i)``, so reports are
    identical for any worker count.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    seeds = [trial_seed(master_seed, i) for i in range(trials)]
    workers = _worker_count(workers)
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            results = list(pool.map(run_trial, [n] * trials, seeds))
    else:
        results = [run_trial(n, s) for s in seeds]
    sizes = [t.size for t in results]
    valid = sum(t.valid for t in results)
    return ExperimentReport(
        n=n,
        trials=trials,
        seed=master_seed,
        validity_rate=valid / trials,
        size_min=min(sizes),
        size_mean=statistics.fmean(sizes),
        size_max=max(sizes),
        per_trial=results if keep_trials else [],
    )


@dataclass(frozen=True)
class TableRow:
    n: int
    expected: int
    computed: int | None
    status: str  # "pass" | "fail" | "skipped"
    best_perm: tuple[int, ...] | None = None
    elapsed: float = 0.0


def reproduce_table(budget: SearchBudget | None = None, ns=range(2, 8),
                    budgets: dict[int, SearchBudget] | None = None) -> list[TableRow]:
    """Recompute the minimum for each ``n`` and compare with :data:`KNOWN_MINIMA`.

    A row that runs out of budget is reported as ``skipped``.
    """
    rows = []
    for n in ns:
        b = (budgets or {}).get(n, budget)
        try:
            res = global_min(n, b)
        except BudgetExceeded:
            rows.append(TableRow(n, KNOWN_MINIMA[n], None, "skipped"))
            continue
        status = "pass" if res.min_count == KNOWN_MINIMA[n] else "fail"
        rows.append(TableRow(n, KNOWN_MINIMA[n], res.min_count, status, res.best_perm.map, res.elapsed))
    return rows


def table_passed(rows) -> bool:
    return all(r.status != "fail" for r in rows)


def format_table(rows) -> str:
    lines = ["  n  known  computed  status   best permutation"]
    for r in rows:
        computed = "-" if r.computed is None else str(r.computed)
        perm = "" if r.best_perm is None else ",".join(map(str, r.best_perm))
        lines.append(f"{r.n:>3}  {r.expected:>5}  {computed:>8}  {r.status:<7}  {perm}")
    return "\n".join(lines)
