"""Problem data model, exact fullness accounting and the feasibility verifier.

All sizes are :class:`fractions.Fraction` values normalized so that a slot
holds exactly 1.  Slots are numbered 1..K everywhere in the public API.
"""

from __future__ import annotations

import enum
import os
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import OverflowGuard, UnknownAd, ValidationError

__all__ = [
    "Variant",
    "Ad",
    "Instance",
    "Schedule",
    "Violation",
    "FeasibilityReport",
    "parse_rational",
    "format_rational",
    "slot_fullness",
    "total_fullness",
    "verify",
    "classify_thirds",
    "classify_ptas",
    "ptas_threshold",
    "default_budget",
]

QUARTER = Fraction(1, 4)
HALF = Fraction(1, 2)

DEFAULT_BUDGET = 10**6

_RATIONAL_RE = re.compile(r"^([+-]?\d+)(?:/(\d+))?$")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or a bare integer.  Decimal notation is rejected."""
    m = _RATIONAL_RE.match(text.strip())
    if m is None:
        raise ValueError(f"not an exact rational: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator: {text!r}")
    return Fraction(num, den)


def format_rational(q) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def default_budget() -> int:
    """Enumeration budget, overridable through ``ADSPACE_BUDGET``."""
    raw = os.environ.get("ADSPACE_BUDGET")
    if raw:
        return int(raw)
    return DEFAULT_BUDGET


class Variant(str, enum.Enum):
    MAXSPACE = "maxspace"
    MAXSPACE_R = "maxspace-r"
    MAXSPACE_RD = "maxspace-rd"


@dataclass(frozen=True)
class Ad:
    id: int
    size: Fraction
    frequency: int
    release: int
    deadline: int

    def window(self) -> range:
        return range(self.release, self.deadline + 1)

    @property
    def volume(self) -> Fraction:
        """Space the ad fills when scheduled: size times frequency."""
        return self.size * self.frequency


@dataclass(frozen=True)
class Instance:
    K: int
    ads: tuple[Ad, ...]
    L: Fraction = Fraction(1)
    variant: Variant = Variant.MAXSPACE_RD

    def __post_init__(self):
        object.__setattr__(self, "ads", tuple(self.ads))
        object.__setattr__(self, "L", Fraction(self.L))
        object.__setattr__(self, "variant", Variant(self.variant))
        if self.K < 1:
            raise ValueError(f"K must be >= 1, got {self.K}")
        if self.L <= 0:
            raise ValueError(f"L must be positive, got {self.L}")
        for pos, ad in enumerate(self.ads):
            _check_ad(ad, pos, self.K, self.variant)

    @property
    def n(self) -> int:
        return len(self.ads)

    @classmethod
    def build(cls, K, rows, variant=Variant.MAXSPACE_RD, L=1):
        """Build from ``(size, w, r, d)`` tuples; sizes are raw and get divided by L.

        ``r``/``d`` may be omitted (``(size, w)`` or ``(size, w, r)``) and
        then default to 1 and K.
        """
        L = Fraction(L)
        ads = []
        for i, row in enumerate(rows):
            size, w, *rest = row
            r = rest[0] if len(rest) > 0 else 1
            d = rest[1] if len(rest) > 1 else K
            ads.append(Ad(i, Fraction(size) / L, int(w), int(r), int(d)))
        return cls(K=K, ads=tuple(ads), L=L, variant=Variant(variant))


def _check_ad(ad: Ad, pos: int, K: int, variant: Variant) -> None:
    if ad.id != pos:
        raise ValidationError(ad.id, "id-order", f"expected id {pos}")
    if not isinstance(ad.size, Fraction):
        raise ValidationError(ad.id, "exact-size", f"size must be a Fraction, got {type(ad.size).__name__}")
    if not 0 < ad.size <= 1:
        raise ValidationError(ad.id, "0 < s <= L", f"normalized size {ad.size}")
    if ad.frequency < 1:
        raise ValidationError(ad.id, "w >= 1")
    if not 1 <= ad.release <= ad.deadline <= K:
        raise ValidationError(ad.id, "1 <= r <= d <= K", f"r={ad.release} d={ad.deadline} K={K}")
    if ad.frequency > ad.deadline - ad.release + 1:
        raise ValidationError(ad.id, "w <= d - r + 1", f"w={ad.frequency} r={ad.release} d={ad.deadline}")
    if variant is Variant.MAXSPACE and ad.release != 1:
        raise ValidationError(ad.id, "maxspace: r = 1")
    if variant in (Variant.MAXSPACE, Variant.MAXSPACE_R) and ad.deadline != K:
        raise ValidationError(ad.id, f"{variant.value}: d = K")


@dataclass(frozen=True)
class Schedule:
    """Slot contents B_1..B_K as tuples of ad ids, in insertion order."""

    slots: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "slots", tuple(tuple(s) for s in self.slots))

    @classmethod
    def empty(cls, K: int) -> "Schedule":
        return cls(tuple(() for _ in range(K)))

    @property
    def K(self) -> int:
        return len(self.slots)

    def slot(self, j: int) -> tuple[int, ...]:
        if not 1 <= j <= self.K:
            raise IndexError(f"slot {j} outside 1..{self.K}")
        return self.slots[j - 1]

    def placements(self) -> dict[int, list[int]]:
        """Map ad id -> sorted list of slots holding a copy of it."""
        out: dict[int, list[int]] = {}
        for j, contents in enumerate(self.slots, start=1):
            for i in contents:
                out.setdefault(i, []).append(j)
        return out

    def scheduled(self) -> set[int]:
        return {i for contents in self.slots for i in contents}

    def merge(self, other: "Schedule") -> "Schedule":
        if other.K != self.K:
            raise ValueError("cannot merge schedules with different slot counts")
        return Schedule(tuple(a + b for a, b in zip(self.slots, other.slots)))


def _size_of(instance: Instance, ad_id) -> Fraction:
    if not isinstance(ad_id, int) or not 0 <= ad_id < len(instance.ads):
        raise UnknownAd(ad_id)
    return instance.ads[ad_id].size


def slot_fullness(instance: Instance, schedule: Schedule, j: int) -> Fraction:
    return sum((_size_of(instance, i) for i in schedule.slot(j)), Fraction(0))


def total_fullness(instance: Instance, schedule: Schedule) -> Fraction:
    return sum((slot_fullness(instance, schedule, j) for j in range(1, schedule.K + 1)), Fraction(0))


@dataclass(frozen=True)
class Violation:
    kind: str  # CAPACITY, FREQUENCY, RELEASE, DEADLINE, DUPLICATE, UNKNOWN_AD, SLOT_COUNT
    where: int  # slot index or ad id, depending on kind
    detail: str = ""


@dataclass(frozen=True)
class FeasibilityReport:
    violations: tuple[Violation, ...] = field(default_factory=tuple)

    @property
    def feasible(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.feasible

    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}

    def __str__(self):
        if self.feasible:
            return "feasible"
        lines = ["infeasible:"]
        lines += [f"  {v.kind} @ {v.where}: {v.detail}" for v in self.violations]
        return "\n".join(lines)


def verify(instance: Instance, schedule: Schedule) -> FeasibilityReport:
    """Check every feasibility rule and collect all violations."""
    out: list[Violation] = []
    if schedule.K != instance.K:
        out.append(Violation("SLOT_COUNT", schedule.K, f"schedule has {schedule.K} slots, instance has K={instance.K}"))
    n = len(instance.ads)
    copies: dict[int, list[int]] = {}
    for j, contents in enumerate(schedule.slots, start=1):
        load = Fraction(0)
        seen: set = set()
        for i in contents:
            if not isinstance(i, int) or not 0 <= i < n:
                out.append(Violation("UNKNOWN_AD", j, f"id {i!r} in slot {j}"))
                continue
            if i in seen:
                out.append(Violation("DUPLICATE", i, f"two copies in slot {j}"))
                continue
            seen.add(i)
            load += instance.ads[i].size
            copies.setdefault(i, []).append(j)
        if load > 1:
            out.append(Violation("CAPACITY", j, f"fullness {format_rational(load)} > 1"))
    for i in sorted(copies):
        ad = instance.ads[i]
        slots = copies[i]
        if len(slots) != ad.frequency:
            out.append(Violation("FREQUENCY", i, f"{len(slots)} copies, w={ad.frequency}"))
        for j in slots:
            if j < ad.release:
                out.append(Violation("RELEASE", i, f"copy in slot {j} < r={ad.release}"))
            if j > ad.deadline:
                out.append(Violation("DEADLINE", i, f"copy in slot {j} > d={ad.deadline}"))
    return FeasibilityReport(tuple(out))


def classify_thirds(ads: Iterable[Ad]) -> tuple[list[Ad], list[Ad], list[Ad]]:
    """Split into large (s > 1/2), medium (1/4 < s <= 1/2) and small (s <= 1/4)."""
    large, medium, small = [], [], []
    for ad in ads:
        if ad.size > HALF:
            large.append(ad)
        elif ad.size > QUARTER:
            medium.append(ad)
        else:
            small.append(ad)
    return large, medium, small


def ptas_threshold(epsilon, K: int, budget: int | None = None) -> Fraction:
    """Large/small cut eps / (2^(2^K) * 2^K * K), refusing K beyond the budget."""
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    if budget is None:
        budget = default_budget()
    # 2^(2^K) > budget  <=>  2^K >= bit_length(budget)
    if 2**K >= max(budget, 1).bit_length():
        raise OverflowGuard(f"2^(2^{K}) exceeds the work budget {budget}")
    return epsilon / (2 ** (2**K) * 2**K * K)


def classify_ptas(ads: Sequence[Ad], epsilon, K: int, budget: int | None = None) -> tuple[list[Ad], list[Ad]]:
    threshold = ptas_threshold(epsilon, K, budget)
    large = [ad for ad in ads if ad.size >= threshold]
    small = [ad for ad in ads if ad.size < threshold]
    return large, small
