"""Approximation scheme for release dates and deadlines with a constant number of slots.

Large ads are placed by enumerating every feasible configuration.  For each
configuration the space left over is split among slot-subset "types" by a
guessed capacity vector; small ads are then assigned to types by a
fractional max-flow that is rounded to an integral assignment.

Types are slot bitmasks: bit j-1 set means slot j belongs to the type.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .core import Ad, Instance, Schedule, classify_ptas, default_budget, ptas_threshold, total_fullness
from .errors import BudgetExceeded, ClassViolation
from .flow import INF, FlowNetwork, max_flow_edges
from .greedy import first_fit

__all__ = [
    "popcount",
    "mask_slots",
    "slots_mask",
    "is_compatible",
    "compatible_masks",
    "Configuration",
    "CapacityVector",
    "FlowAssignment",
    "SmallSolution",
    "PtasResult",
    "configuration_cap",
    "enumerate_configurations",
    "residual_capacities",
    "enumerate_capacity_vectors",
    "build_flow_network",
    "max_flow",
    "support_groups",
    "rounding",
    "solve_small",
    "solve_small_detailed",
    "internal_epsilon",
    "ptas",
]

SOURCE, SINK = "x", "y"


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def mask_slots(mask: int) -> tuple[int, ...]:
    return tuple(j + 1 for j in range(mask.bit_length()) if mask >> j & 1)


def slots_mask(slots: Iterable[int]) -> int:
    return sum(1 << (j - 1) for j in set(slots))


def is_compatible(ad: Ad, mask: int) -> bool:
    slots = mask_slots(mask)
    return len(slots) == ad.frequency and all(ad.release <= j <= ad.deadline for j in slots)


def compatible_masks(ad: Ad, K: int) -> list[int]:
    return [t for t in range(1, 2**K) if is_compatible(ad, t)]


def _unit_inverse(epsilon: Fraction) -> int:
    inv = 1 / Fraction(epsilon)
    if inv.denominator != 1 or inv < 1:
        raise ValueError(f"1/epsilon must be a positive integer, epsilon={epsilon}")
    return inv.numerator


# -- large ads -----------------------------------------------------------------


@dataclass(frozen=True)
class Configuration:
    """Feasible placement of some large ads, one type per placed ad."""

    assignment: tuple[tuple[int, int], ...]  # (ad id, mask), ordered by id
    loads: tuple[Fraction, ...]  # fullness of slots 1..K

    @property
    def K(self) -> int:
        return len(self.loads)

    @property
    def value(self) -> Fraction:
        return sum(self.loads, Fraction(0))

    def schedule(self) -> Schedule:
        contents: list[list[int]] = [[] for _ in range(self.K)]
        for ad_id, mask in self.assignment:
            for j in mask_slots(mask):
                contents[j - 1].append(ad_id)
        return Schedule(tuple(tuple(c) for c in contents))


def configuration_cap(epsilon, K: int) -> int:
    """Most large ads a feasible configuration can hold: K * 2^(2^K) * 2^K * K / eps."""
    return math.floor(K * 2 ** (2**K) * 2**K * K / Fraction(epsilon))


def enumerate_configurations(
    G: Sequence[Ad], K: int, epsilon, budget: int | None = None
) -> Iterator[Configuration]:
    """Yield every feasible configuration of subsets of ``G`` exactly once.

    Depth-first over ads by id; each ad is either left out (tried first) or
    given one compatible mask, in increasing mask order.
    """
    epsilon = Fraction(epsilon)
    if budget is None:
        budget = default_budget()
    threshold = ptas_threshold(epsilon, K)
    for ad in G:
        if ad.size < threshold:
            raise ClassViolation(f"ad {ad.id} is small for eps={epsilon}, K={K}")
    ads = sorted(G, key=lambda a: a.id)
    options = [compatible_masks(ad, K) for ad in ads]
    cap = configuration_cap(epsilon, K)
    loads = [Fraction(0)] * (K + 1)
    chosen: list[tuple[int, int]] = []
    emitted = 0

    def walk(i):
        nonlocal emitted
        if i == len(ads):
            emitted += 1
            if emitted > budget:
                raise BudgetExceeded(f"more than {budget} configurations")
            yield Configuration(tuple(chosen), tuple(loads[1:]))
            return
        yield from walk(i + 1)
        if len(chosen) >= cap:
            return
        ad = ads[i]
        for mask in options[i]:
            slots = mask_slots(mask)
            if any(loads[j] + ad.size > 1 for j in slots):
                continue
            for j in slots:
                loads[j] += ad.size
            chosen.append((ad.id, mask))
            yield from walk(i + 1)
            chosen.pop()
            for j in slots:
                loads[j] -= ad.size

    yield from walk(0)


def residual_capacities(config: Configuration) -> list[Fraction]:
    return [1 - load for load in config.loads]


# -- capacity vectors ------------------------------------------------------------


@dataclass(frozen=True)
class CapacityVector:
    """Integer multiples of eps reserved for each type, indexed by mask."""

    c: tuple[int, ...]

    def __getitem__(self, mask: int) -> int:
        return self.c[mask]

    @property
    def K(self) -> int:
        return len(self.c).bit_length() - 1

    @classmethod
    def from_dict(cls, K: int, values: dict[int, int]) -> "CapacityVector":
        c = [0] * 2**K
        for mask, v in values.items():
            c[mask] = v
        return cls(tuple(c))

    def is_compatible(self, u: Sequence[Fraction], epsilon) -> bool:
        epsilon = Fraction(epsilon)
        for j in range(1, len(u) + 1):
            used = sum(self.c[t] for t in range(len(self.c)) if t >> (j - 1) & 1)
            if used * epsilon > u[j - 1]:
                return False
        return True


def enumerate_capacity_vectors(
    u: Sequence[Fraction],
    epsilon,
    K: int,
    budget: int | None = None,
    active: Iterable[int] | None = None,
) -> Iterator[CapacityVector]:
    """Yield every c with entries in 0..1/eps and sum_{t containing j} c_t*eps <= u_j.

    When ``active`` is given, types outside it are pinned to 0; the PTAS
    passes the types some small ad can use, since no flow reaches the rest.
    """
    epsilon = Fraction(epsilon)
    q = _unit_inverse(epsilon)
    if budget is None:
        budget = default_budget()
    if len(u) != K:
        raise ValueError(f"expected {K} residuals, got {len(u)}")
    free = set(range(2**K)) if active is None else set(active)
    # per-slot room in units of eps
    room = [None] + [math.floor(Fraction(x) / epsilon) for x in u]
    c = [0] * 2**K
    emitted = 0

    def walk(t):
        nonlocal emitted
        if t == 2**K:
            emitted += 1
            if emitted > budget:
                raise BudgetExceeded(f"more than {budget} capacity vectors")
            yield CapacityVector(tuple(c))
            return
        if t not in free:
            yield from walk(t + 1)
            return
        slots = mask_slots(t)
        top = min([q] + [room[j] for j in slots])
        for value in range(0, max(top, -1) + 1):
            c[t] = value
            for j in slots:
                room[j] -= value
            yield from walk(t + 1)
            for j in slots:
                room[j] += value
        c[t] = 0

    yield from walk(0)


# -- small ads -------------------------------------------------------------------


def build_flow_network(
    P: Sequence[Ad], c: CapacityVector, epsilon, K: int, sink_capacity_no_eps: bool = False
) -> FlowNetwork:
    """Source -> ad (w*s) -> compatible type (unbounded) -> sink (|t|*c_t*eps).

    ``sink_capacity_no_eps`` drops the eps factor from the sink edges, which
    over-reserves space and can yield schedules that overflow a slot.
    """
    epsilon = Fraction(epsilon)
    net = FlowNetwork(SOURCE, SINK)
    net.add_node(SOURCE)
    for ad in sorted(P, key=lambda a: a.id):
        net.add_edge(SOURCE, ("ad", ad.id), ad.volume)
    for t in range(2**K):
        net.add_node(("type", t))
    for ad in sorted(P, key=lambda a: a.id):
        for t in compatible_masks(ad, K):
            net.add_edge(("ad", ad.id), ("type", t), INF)
    for t in range(2**K):
        scale = 1 if sink_capacity_no_eps else epsilon
        net.add_edge(("type", t), SINK, popcount(t) * c[t] * scale)
    net.add_node(SINK)
    return net


@dataclass(frozen=True)
class FlowAssignment:
    """Flow from ads to types; only positive entries are stored."""

    flow: dict  # (ad id, mask) -> Fraction
    edge_flows: dict = field(default_factory=dict, compare=False)

    @property
    def value(self) -> Fraction:
        return sum(self.flow.values(), Fraction(0))

    def support(self, ad_id: int) -> frozenset[int]:
        return frozenset(t for (i, t), f in self.flow.items() if i == ad_id and f > 0)

    def is_integral(self, ads: Sequence[Ad]) -> bool:
        for ad in ads:
            entries = [f for (i, _), f in self.flow.items() if i == ad.id]
            if len(entries) > 1 or (entries and entries[0] != ad.volume):
                return False
        return True


def max_flow(network: FlowNetwork) -> FlowAssignment:
    _, edges = max_flow_edges(network)
    flow = {}
    for (u, v), f in edges.items():
        if f > 0 and isinstance(u, tuple) and u[0] == "ad" and isinstance(v, tuple):
            flow[(u[1], v[1])] = f
    return FlowAssignment(flow, edges)


def _group_key(W: frozenset[int]) -> int:
    return sum(1 << t for t in W)


def support_groups(F: FlowAssignment, P: Sequence[Ad]) -> list[tuple[frozenset[int], list[Ad]]]:
    """Ads grouped by support, groups in increasing bitmask order, ads by id."""
    groups: dict[frozenset[int], list[Ad]] = {}
    for ad in sorted(P, key=lambda a: a.id):
        groups.setdefault(F.support(ad.id), []).append(ad)
    return sorted(groups.items(), key=lambda kv: _group_key(kv[0]))


def rounding(F: FlowAssignment, P: Sequence[Ad], epsilon=None, K: int | None = None) -> FlowAssignment:
    """Turn a fractional ad->type flow into an integral one.

    Within each support group W, type t may absorb whole ads as long as
    their total w*s stays within z_t, the flow t received from the group.
    Ads that fit nowhere in their own support are dropped.  ``epsilon`` and
    ``K`` are accepted for signature symmetry; the procedure needs neither.
    """
    out: dict = {}
    for W, group in support_groups(F, P):
        if not W:
            continue
        remaining = list(group)
        for t in sorted(W):
            z = sum((F.flow.get((ad.id, t), Fraction(0)) for ad in group), Fraction(0))
            used = Fraction(0)
            kept = []
            for ad in remaining:
                if used + ad.volume <= z:
                    used += ad.volume
                    out[(ad.id, t)] = ad.volume
                else:
                    kept.append(ad)
            remaining = kept
    return FlowAssignment(out)


@dataclass(frozen=True)
class SmallSolution:
    schedule: Schedule
    fractional: FlowAssignment
    integral: FlowAssignment

    @property
    def value(self) -> Fraction:
        return self.integral.value


def solve_small_detailed(
    P: Sequence[Ad], c: CapacityVector, epsilon, K: int, sink_capacity_no_eps: bool = False
) -> SmallSolution:
    epsilon = Fraction(epsilon)
    _unit_inverse(epsilon)
    net = build_flow_network(P, c, epsilon, K, sink_capacity_no_eps)
    F = max_flow(net)
    F_int = rounding(F, P, epsilon, K)
    contents: list[list[int]] = [[] for _ in range(K)]
    for (ad_id, t) in sorted(F_int.flow):
        for j in mask_slots(t):
            contents[j - 1].append(ad_id)
    return SmallSolution(Schedule(tuple(tuple(x) for x in contents)), F, F_int)


def solve_small(P: Sequence[Ad], c: CapacityVector, epsilon, K: int, sink_capacity_no_eps: bool = False) -> Schedule:
    """Schedule small ads into types: max-flow, rounding, then one copy per slot of the type."""
    return solve_small_detailed(P, c, epsilon, K, sink_capacity_no_eps).schedule


# -- driver ----------------------------------------------------------------------


def internal_epsilon(epsilon_prime, K: int) -> Fraction:
    """eps'/(6 * 2^K * K), rounded down to a unit fraction."""
    eps = Fraction(epsilon_prime) / (6 * 2**K * K)
    if eps <= 0:
        raise ValueError("epsilon_prime must be positive")
    return Fraction(1, math.ceil(1 / eps))


@dataclass
class PtasResult:
    schedule: Schedule
    value: Fraction
    epsilon: Fraction
    first_fit_complete: bool
    budget_exceeded: bool = False
    epsilon_overridden: bool = False
    configurations: int = 0
    vectors: int = 0
    rejected: int = 0  # candidates dropped for overflowing a slot
    message: str = ""

    @property
    def guarantee_void(self) -> bool:
        return self.budget_exceeded or self.epsilon_overridden


def ptas(
    instance: Instance,
    epsilon_prime,
    budget: int | None = None,
    *,
    epsilon=None,
    sink_capacity_no_eps: bool = False,
) -> PtasResult:
    """(1 - eps')-approximate schedule when K is a small constant.

    ``epsilon`` overrides the internal accuracy eps'/(6*2^K*K); the
    guarantee is then reported void.  Exhausting ``budget`` in either
    enumeration returns the best schedule found so far, also flagged void.
    """
    K = instance.K
    if budget is None:
        budget = default_budget()
    ff, complete = first_fit(instance)
    if complete:
        eps = Fraction(epsilon) if epsilon is not None else internal_epsilon(epsilon_prime, K)
        return PtasResult(ff, total_fullness(instance, ff), eps, True, epsilon_overridden=epsilon is not None)

    if epsilon is not None:
        eps = Fraction(epsilon)
        _unit_inverse(eps)
    else:
        eps = internal_epsilon(epsilon_prime, K)
    result = PtasResult(ff, total_fullness(instance, ff), eps, False, epsilon_overridden=epsilon is not None)

    large, small = classify_ptas(instance.ads, eps, K, budget)
    active = sorted({t for ad in small for t in compatible_masks(ad, K)})
    cache: dict[CapacityVector, tuple[Schedule, Fraction]] = {}
    try:
        for config in enumerate_configurations(large, K, eps, budget):
            result.configurations += 1
            base = config.schedule()
            u = residual_capacities(config)
            for c in enumerate_capacity_vectors(u, eps, K, budget, active):
                result.vectors += 1
                if c not in cache:
                    sol = solve_small_detailed(small, c, eps, K, sink_capacity_no_eps)
                    cache[c] = (sol.schedule, sol.value)
                fragment, small_value = cache[c]
                value = config.value + small_value
                if value <= result.value:
                    continue
                candidate = base.merge(fragment)
                if sink_capacity_no_eps and not _fits(instance, candidate):
                    result.rejected += 1
                    continue
                result.schedule, result.value = candidate, value
    except BudgetExceeded as exc:
        result.budget_exceeded = True
        result.message = (
            f"{exc}; stopped after {result.configurations} configurations "
            f"and {result.vectors} capacity vectors"
        )
    return result


def _fits(instance: Instance, schedule: Schedule) -> bool:
    for contents in schedule.slots:
        if sum((instance.ads[i].size for i in contents), Fraction(0)) > 1:
            return False
    return True
