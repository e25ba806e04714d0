"""Exact solvers: the exhaustive oracle and the knapsack DP for large ads."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .core import HALF, Ad, Instance, Schedule
from .errors import BudgetExceeded, ClassViolation

__all__ = [
    "OracleLimits",
    "DpTable",
    "brute_force",
    "brute_force_small",
    "build_dp_table",
    "dp_large",
]


@dataclass(frozen=True)
class OracleLimits:
    max_ads: int = 9
    max_states: int = 10**8

    def __post_init__(self):
        if self.max_ads < 1 or self.max_states < 1:
            raise ValueError("oracle limits must be positive")


def brute_force(instance: Instance, limits: OracleLimits = OracleLimits()) -> tuple[Schedule, Fraction]:
    """Maximum-fullness schedule by exhaustive search.

    Each ad is either placed on one w-subset of its window (lexicographic
    order) or discarded.  Branches that overflow a slot are cut, and so are
    branches whose value plus all remaining volume cannot beat the best
    schedule found so far; the latter never changes the optimum value and
    keeps the first optimum in enumeration order.
    """
    ads = instance.ads
    n, K = len(ads), instance.K
    if n > limits.max_ads:
        raise BudgetExceeded(f"oracle limited to {limits.max_ads} ads, instance has {n}")

    choices = [list(combinations(ad.window(), ad.frequency)) for ad in ads]
    remaining = [Fraction(0)] * (n + 1)
    for i in range(n - 1, -1, -1):
        remaining[i] = remaining[i + 1] + ads[i].volume

    loads = [Fraction(0)] * (K + 1)
    placed: list = [None] * n
    best_value = Fraction(0)
    best: list = [None] * n
    states = 0

    def search(i, value):
        nonlocal states, best_value, best
        states += 1
        if states > limits.max_states:
            raise BudgetExceeded(f"oracle explored more than {limits.max_states} states")
        if i == n:
            if value > best_value:
                best_value = value
                best = list(placed)
            return
        # value == total load, so K - value bounds what any completion can add
        if min(value + remaining[i], K) <= best_value:
            return
        ad = ads[i]
        s = ad.size
        for slots in choices[i]:
            if all(loads[j] + s <= 1 for j in slots):
                for j in slots:
                    loads[j] += s
                placed[i] = slots
                search(i + 1, value + ad.volume)
                for j in slots:
                    loads[j] -= s
        placed[i] = None
        search(i + 1, value)

    search(0, Fraction(0))
    contents: list[list[int]] = [[] for _ in range(K)]
    for i, slots in enumerate(best):
        if slots is not None:
            for j in slots:
                contents[j - 1].append(i)
    return Schedule(tuple(tuple(c) for c in contents)), best_value


def brute_force_small(P: Sequence[Ad], c, epsilon, K: int, max_states: int = 10**7) -> Fraction:
    """Optimum of the typed small-ad subproblem by exhaustive assignment.

    Every ad goes to one compatible type (a w-subset of its window) or is
    dropped; type t may hold total size at most ``c[t] * epsilon``.  Types
    are slot bitmasks (bit j-1 <-> slot j) and ``c`` is indexed by mask.
    Returns the optimal fullness, sum of w*s over assigned ads.
    """
    epsilon = Fraction(epsilon)
    P = list(P)
    options = []
    for ad in P:
        masks = []
        for slots in combinations(ad.window(), ad.frequency):
            masks.append(sum(1 << (j - 1) for j in slots))
        options.append(masks)
    room = {t: c[t] * epsilon for t in range(2**K)}
    best = Fraction(0)
    states = 0

    def search(i, value):
        nonlocal best, states
        states += 1
        if states > max_states:
            raise BudgetExceeded("small-ad oracle budget exhausted")
        if i == len(P):
            best = max(best, value)
            return
        ad = P[i]
        for t in options[i]:
            if ad.size <= room[t]:
                room[t] -= ad.size
                search(i + 1, value + ad.volume)
                room[t] += ad.size
        search(i + 1, value)

    search(0, Fraction(0))
    return best


@dataclass
class DpTable:
    """``m[i][j]``: best value from the first i release-ordered ads in slots 1..j."""

    order: list[Ad]
    m: list[list[Fraction]]
    choice: list[list[bool]]


def build_dp_table(G: Sequence[Ad], K: int, allow_deadlines: bool = False) -> DpTable:
    for ad in G:
        if ad.size <= HALF:
            raise ClassViolation(f"ad {ad.id} has size {ad.size} <= 1/2")
        if ad.deadline < K and not allow_deadlines:
            raise ClassViolation(f"ad {ad.id} has deadline {ad.deadline} < K={K}")
    if allow_deadlines:
        order = sorted(G, key=lambda a: (a.release, a.deadline, a.id))
    else:
        order = sorted(G, key=lambda a: (a.release, a.id))
    n = len(order)
    m = [[Fraction(0)] * (K + 1) for _ in range(n + 1)]
    choice = [[False] * (K + 1) for _ in range(n + 1)]
    for i, ad in enumerate(order, start=1):
        w = ad.frequency
        first_end = ad.release + w - 1
        last_end = ad.deadline if allow_deadlines else K
        prev, row = m[i - 1], m[i]
        for j in range(1, K + 1):
            row[j] = prev[j]
            if first_end <= j <= last_end:
                take = prev[j - w] + ad.volume
                # ties keep the skip branch
                if take > row[j]:
                    row[j] = take
                    choice[i][j] = True
            # only binds past a deadline; keeps m[i] non-decreasing in j
            if row[j - 1] > row[j]:
                row[j] = row[j - 1]
                choice[i][j] = False
    return DpTable(order, m, choice)


def dp_large(G: Sequence[Ad], K: int, allow_deadlines: bool = False) -> tuple[Schedule, Fraction]:
    """Optimal schedule for ads larger than half a slot (release dates, d = K).

    Ads are taken in release order and packed as consecutive blocks, one
    ad per slot.  With ``allow_deadlines`` each ad must also end by its
    deadline; that extension is a heuristic, not an exact method.
    """
    table = build_dp_table(G, K, allow_deadlines)
    m, choice, order = table.m, table.choice, table.order
    contents: list[list[int]] = [[] for _ in range(K)]
    i, j = len(order), K
    while i > 0 and j > 0:
        # shift left to the earliest column with the same value
        while j > 0 and m[i][j - 1] == m[i][j]:
            j -= 1
        if j == 0:
            break
        if choice[i][j]:
            ad = order[i - 1]
            for slot in range(j - ad.frequency + 1, j + 1):
                contents[slot - 1].append(ad.id)
            j -= ad.frequency
        i -= 1
    return Schedule(tuple(tuple(c) for c in contents)), m[len(order)][K]
