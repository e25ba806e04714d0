"""Named solver registry and the oracle-ratio benchmark harness."""

from __future__ import annotations

import csv
import time
from dataclasses import asdict, dataclass, fields
from fractions import Fraction
from typing import Callable, Iterable

from .core import Instance, Schedule, Variant, classify_thirds, format_rational, total_fullness, verify
from .errors import BudgetExceeded
from .exact import OracleLimits, brute_force, dp_large
from .generate import generate
from .greedy import combined, first_fit, schedule_medium, schedule_small
from .ptas import ptas

__all__ = ["ALGORITHMS", "SUITES", "BenchRecord", "run_algorithm", "parse_seeds", "run_suite", "write_csv"]

ALGORITHMS = ("exact", "dp-large", "medium", "small", "combined", "first-fit", "ptas")


def run_algorithm(
    name: str,
    instance: Instance,
    *,
    eps_prime=Fraction(1, 2),
    budget: int | None = None,
    internal_eps=None,
    sink_capacity_no_eps: bool = False,
    limits: OracleLimits = OracleLimits(),
) -> tuple[Schedule, dict]:
    """Run one named solver on a whole instance.

    The class-restricted solvers (dp-large, medium, small) only see the ads
    of their own size class.  Returns the schedule and solver-specific
    details (empty for most).
    """
    K = instance.K
    if name == "exact":
        return brute_force(instance, limits)[0], {}
    if name == "first-fit":
        sched, complete = first_fit(instance)
        return sched, {"complete": complete}
    if name == "combined":
        return combined(instance), {}
    large, medium, small = classify_thirds(instance.ads)
    if name == "dp-large":
        return dp_large(large, K)[0], {}
    if name == "medium":
        sched, trace = schedule_medium(medium, K)
        return sched, {"discarded": sorted(trace.discarded)}
    if name == "small":
        sched, trace = schedule_small(small, K)
        return sched, {"discarded": sorted(trace.discarded), "moves": len(trace.moves)}
    if name == "ptas":
        res = ptas(instance, eps_prime, budget, epsilon=internal_eps, sink_capacity_no_eps=sink_capacity_no_eps)
        return res.schedule, {
            "epsilon": res.epsilon,
            "first_fit_complete": res.first_fit_complete,
            "guarantee_void": res.guarantee_void,
            "budget_exceeded": res.budget_exceeded,
            "configurations": res.configurations,
            "vectors": res.vectors,
            "message": res.message,
        }
    raise ValueError(f"unknown algorithm {name!r}; choose from {', '.join(ALGORITHMS)}")


@dataclass
class BenchRecord:
    instance_id: str
    seed: int
    n: int
    K: int
    variant: str
    algorithm: str
    value: str
    value_decimal: str
    oracle: str
    ratio: str
    runtime_ms: str
    feasible: bool


def _ratios_instance(seed: int) -> Instance:
    return generate(5 + seed % 4, 2 + seed % 3, Variant.MAXSPACE_R, "thirds-mix", seed)


def _ptas_instance(seed: int) -> Instance:
    return generate(4 + seed % 3, 2, Variant.MAXSPACE_RD, "uniform", seed)


# suite -> (instance factory, algorithms, solver options)
SUITES: dict[str, tuple[Callable[[int], Instance], tuple[str, ...], dict]] = {
    "ratios": (_ratios_instance, ("exact", "dp-large", "medium", "small", "combined", "first-fit"), {}),
    "ptas": (_ptas_instance, ("exact", "first-fit", "ptas"), {"internal_eps": Fraction(1, 2)}),
}


def parse_seeds(text: str) -> list[int]:
    """``"1..200"`` (inclusive), ``"3,5,8"`` or a mix of both."""
    seeds: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            lo, hi = part.split("..", 1)
            seeds.extend(range(int(lo), int(hi) + 1))
        elif part:
            seeds.append(int(part))
    return seeds


def run_suite(suite: str, seeds: Iterable[int], budget: int | None = None) -> list[BenchRecord]:
    try:
        factory, algorithms, options = SUITES[suite]
    except KeyError:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}") from None
    records = []
    for seed in seeds:
        instance = factory(seed)
        try:
            oracle = brute_force(instance)[1]
        except BudgetExceeded:
            oracle = None
        for name in algorithms:
            start = time.perf_counter()
            sched, _ = run_algorithm(name, instance, budget=budget, **options)
            elapsed = (time.perf_counter() - start) * 1000
            value = total_fullness(instance, sched)
            if oracle is None:
                oracle_text, ratio_text = "n/a", "n/a"
            else:
                ratio = value / oracle if oracle else Fraction(1)
                oracle_text, ratio_text = format_rational(oracle), f"{float(ratio):.6f}"
            records.append(
                BenchRecord(
                    instance_id=f"{suite}-{seed}",
                    seed=seed,
                    n=instance.n,
                    K=instance.K,
                    variant=instance.variant.value,
                    algorithm=name,
                    value=format_rational(value),
                    value_decimal=f"{float(value):.6f}",
                    oracle=oracle_text,
                    ratio=ratio_text,
                    runtime_ms=f"{elapsed:.3f}",
                    feasible=verify(instance, sched).feasible,
                )
            )
    return records


def write_csv(records: list[BenchRecord], stream) -> None:
    writer = csv.DictWriter(stream, fieldnames=[f.name for f in fields(BenchRecord)])
    writer.writeheader()
    for rec in records:
        writer.writerow(asdict(rec))
