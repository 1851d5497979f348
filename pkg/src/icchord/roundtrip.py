"""SAT verdict versus rooted IC spanning tree verdict on generated instances."""
from __future__ import annotations

import itertools
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from typing import Iterable, Iterator, Optional

from .cnf import CnfInstance, all_clauses, brute_force_sat
from .reduction import build_gamma
from .search import DEFAULT_TREE_BUDGET, SearchBudgetExceeded, SearchStats, find_ic_rooted_spanning_tree


@dataclass(frozen=True)
class RoundtripRecord:
    index: int
    digest: str
    instance: str
    sat: bool
    ic_tree: Optional[bool]   # None: budget exhausted
    expansions: int
    seconds: float

    @property
    def agree(self) -> Optional[bool]:
        return None if self.ic_tree is None else self.sat == self.ic_tree

    def as_dict(self) -> dict:
        out = asdict(self)
        out["agree"] = self.agree
        return out


@dataclass(frozen=True)
class RoundtripReport:
    records: tuple[RoundtripRecord, ...]

    @property
    def disagreements(self) -> list[RoundtripRecord]:
        return [r for r in self.records if r.agree is False]

    @property
    def unknown(self) -> list[RoundtripRecord]:
        return [r for r in self.records if r.agree is None]

    @property
    def all_agree(self) -> bool:
        return not self.disagreements and not self.unknown

    def summary(self) -> str:
        n = len(self.records)
        agree = sum(1 for r in self.records if r.agree)
        return f"{agree}/{n} agree, {len(self.disagreements)} disagree, {len(self.unknown)} unknown"


def exhaustive_instances(alpha_max: int, beta_max: int) -> Iterator[CnfInstance]:
    for alpha in range(1, alpha_max + 1):
        clauses = all_clauses(alpha)
        for beta in range(beta_max + 1):
            for combo in itertools.product(clauses, repeat=beta):
                yield CnfInstance(alpha, combo)


def sampled_instances(alpha: int, beta: int, samples: int, seed: int) -> list[CnfInstance]:
    rng = random.Random(seed)
    clauses = all_clauses(alpha)
    return [CnfInstance(alpha, tuple(rng.choice(clauses) for _ in range(beta))) for _ in range(samples)]


def evaluate(index: int, instance: CnfInstance, budget: Optional[int] = DEFAULT_TREE_BUDGET) -> RoundtripRecord:
    start = time.perf_counter()
    gamma, _ = build_gamma(instance)
    stats = SearchStats()
    try:
        tree = find_ic_rooted_spanning_tree(gamma, gamma.vertex("root"), budget=budget, stats=stats)
        verdict: Optional[bool] = tree is not None
    except SearchBudgetExceeded:
        verdict = None
    sat = brute_force_sat(instance) is not None
    return RoundtripRecord(
        index, instance.digest(), str(instance), sat, verdict, stats.expansions, time.perf_counter() - start
    )


def _evaluate_args(args):
    return evaluate(*args)


def run(instances: Iterable[CnfInstance], budget: Optional[int] = DEFAULT_TREE_BUDGET, workers: int = 1) -> RoundtripReport:
    jobs = [(i, inst, budget) for i, inst in enumerate(instances)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_evaluate_args, jobs, chunksize=8))
    else:
        records = [evaluate(*job) for job in jobs]
    records.sort(key=lambda r: r.index)
    return RoundtripReport(tuple(records))


def roundtrip(
    alpha_max: int,
    beta_max: int,
    samples: Optional[int] = None,
    seed: int = 0,
    budget: Optional[int] = DEFAULT_TREE_BUDGET,
    workers: int = 1,
) -> RoundtripReport:
    """Exhaustive over alpha <= alpha_max, beta <= beta_max, or ``samples`` seeded
    instances with exactly ``alpha_max`` variables and ``beta_max`` clauses."""
    if samples is None:
        instances = list(exhaustive_instances(alpha_max, beta_max))
    else:
        instances = sampled_instances(alpha_max, beta_max, samples, seed)
    return run(instances, budget, workers)
