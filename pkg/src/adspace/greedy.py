"""Greedy schedulers: the 1/4-approximations for medium and small ads,
first-fit, and the best-of-three 1/9-approximation for release dates."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Collection, Sequence

from .core import HALF, QUARTER, Ad, Instance, Schedule, classify_thirds, total_fullness
from .errors import ClassViolation, InternalError
from .exact import dp_large

__all__ = [
    "Move",
    "GreedyTrace",
    "schedule_medium",
    "schedule_small",
    "extract_move_set",
    "first_fit",
    "combined",
]

THREE_QUARTERS = Fraction(3, 4)


@dataclass(frozen=True)
class Move:
    iteration: int  # position of the ad being processed in release order
    source: int
    target: int
    moved: tuple[int, ...]


@dataclass
class GreedyTrace:
    discarded: set[int] = field(default_factory=set)
    moves: list[Move] = field(default_factory=list)


class _Slots:
    """Mutable 1-based slot contents with cached fullness."""

    def __init__(self, K: int, sizes: dict[int, Fraction]):
        self.K = K
        self.sizes = sizes
        self.items: list[list[int]] = [[] for _ in range(K + 1)]
        self.load: list[Fraction] = [Fraction(0)] * (K + 1)

    def add(self, j: int, ad_id: int) -> None:
        self.items[j].append(ad_id)
        self.load[j] += self.sizes[ad_id]

    def remove(self, j: int, ad_id: int) -> None:
        self.items[j].remove(ad_id)
        self.load[j] -= self.sizes[ad_id]

    def freeze(self) -> Schedule:
        return Schedule(tuple(tuple(c) for c in self.items[1:]))


def _check_class(ads, K, lo, hi, name):
    for ad in ads:
        if not lo < ad.size <= hi:
            raise ClassViolation(f"ad {ad.id} with size {ad.size} is not {name}")
        if ad.deadline != K:
            raise ClassViolation(f"ad {ad.id} has deadline {ad.deadline} < K={K}; release dates only")


def _least_full(slots: _Slots, candidates: list[int]) -> int:
    return min(candidates, key=lambda j: (slots.load[j], j))


def schedule_medium(M: Sequence[Ad], K: int) -> tuple[Schedule, GreedyTrace]:
    """Place medium ads (1/4 < s <= 1/2) in release order, all copies or none.

    A copy goes to the first open slot still under 1/4 full; failing that,
    to the least full open slot if the ad fits there.
    """
    _check_class(M, K, QUARTER, HALF, "medium")
    slots = _Slots(K, {ad.id: ad.size for ad in M})
    trace = GreedyTrace()
    for ad in sorted(M, key=lambda a: (a.release, a.id)):
        chosen: list[int] = []
        for _ in range(ad.frequency):
            open_ = [j for j in range(ad.release, K + 1) if j not in chosen]
            light = [j for j in open_ if slots.load[j] < QUARTER]
            if light:
                chosen.append(light[0])
                continue
            j = _least_full(slots, open_)
            if slots.load[j] <= 1 - ad.size:
                chosen.append(j)
                continue
            trace.discarded.add(ad.id)
            break
        else:
            for j in chosen:
                slots.add(j, ad.id)
    return slots.freeze(), trace


def extract_move_set(source: Sequence[int], forbidden: Collection[int], sizes) -> list[int]:
    """Ads of ``source`` not in ``forbidden`` whose sizes sum into [1/4, 1/2].

    ``sizes`` is an :class:`Instance` or a mapping from ad id to size.
    Scans ``source`` in order and stops as soon as the running sum reaches
    1/4; since every ad is at most 1/4 the sum then stays at most 1/2.
    """
    if isinstance(sizes, Instance):
        sizes = {ad.id: ad.size for ad in sizes.ads}
    taken: list[int] = []
    total = Fraction(0)
    for i in source:
        if i in forbidden:
            continue
        taken.append(i)
        total += sizes[i]
        if total >= QUARTER:
            if total > HALF:
                raise InternalError(f"move set reached {total} > 1/2; source holds a non-small ad")
            return taken
    raise InternalError(f"cannot collect 1/4 from slot contents {list(source)} avoiding {sorted(forbidden)}")


def schedule_small(P: Sequence[Ad], K: int) -> tuple[Schedule, GreedyTrace]:
    """Place small ads (s <= 1/4) in release order, all copies or none.

    Per copy: (a) first open slot under 1/4; (b) otherwise, if a reserved
    slot j1 is under 1/4 and an open slot j2 is at least 3/4, move a block
    of 1/4..1/2 from j2 to j1 and reserve j2; (c) otherwise the least full
    open slot if the ad fits.  Moves made for an ad that is later dropped
    stay in place; every slot remains within capacity either way.
    """
    _check_class(P, K, Fraction(0), QUARTER, "small")
    sizes = {ad.id: ad.size for ad in P}
    slots = _Slots(K, sizes)
    trace = GreedyTrace()
    for step, ad in enumerate(sorted(P, key=lambda a: (a.release, a.id))):
        chosen: list[int] = []
        for _ in range(ad.frequency):
            window = range(ad.release, K + 1)
            open_ = [j for j in window if j not in chosen]
            light = [j for j in open_ if slots.load[j] < QUARTER]
            if light:
                chosen.append(light[0])
                continue
            light_reserved = [j for j in chosen if slots.load[j] < QUARTER]
            heavy_open = [j for j in open_ if slots.load[j] >= THREE_QUARTERS]
            if light_reserved and heavy_open:
                j1, j2 = min(light_reserved), heavy_open[0]
                block = extract_move_set(slots.items[j2], set(slots.items[j1]), sizes)
                for i in block:
                    slots.remove(j2, i)
                    slots.add(j1, i)
                trace.moves.append(Move(step, j2, j1, tuple(block)))
                chosen.append(j2)
                continue
            j = _least_full(slots, open_)
            if slots.load[j] <= 1 - ad.size:
                chosen.append(j)
                continue
            trace.discarded.add(ad.id)
            break
        else:
            for j in chosen:
                slots.add(j, ad.id)
    return slots.freeze(), trace


def first_fit(instance: Instance) -> tuple[Schedule, bool]:
    """Each copy into the earliest compatible slot with room; stop at the first ad that fails.

    The failing ad's partial copies are withdrawn.  Returns the schedule
    and whether every ad was scheduled.
    """
    K = instance.K
    slots = _Slots(K, {ad.id: ad.size for ad in instance.ads})
    for ad in sorted(instance.ads, key=lambda a: (a.release, a.deadline, a.id)):
        chosen = []
        for j in ad.window():
            if len(chosen) == ad.frequency:
                break
            if slots.load[j] + ad.size <= 1:
                chosen.append(j)
        if len(chosen) < ad.frequency:
            return slots.freeze(), False
        for j in chosen:
            slots.add(j, ad.id)
    return slots.freeze(), True


def combined(instance: Instance) -> Schedule:
    """Best of the exact large-ad DP, the medium greedy and the small greedy."""
    K = instance.K
    large, medium, small = classify_thirds(instance.ads)
    candidates = [
        dp_large(large, K)[0],
        schedule_medium(medium, K)[0],
        schedule_small(small, K)[0],
    ]
    best, best_value = candidates[0], total_fullness(instance, candidates[0])
    for sched in candidates[1:]:
        value = total_fullness(instance, sched)
        if value > best_value:
            best, best_value = sched, value
    return best
