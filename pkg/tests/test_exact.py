import random
from fractions import Fraction as F
from itertools import combinations, product

import pytest

from adspace.core import Ad, Instance, Schedule, verify
from adspace.errors import BudgetExceeded, ClassViolation
from adspace.exact import OracleLimits, brute_force, build_dp_table, dp_large

from conftest import make, random_instance


def naive_optimum(instance):
    """Unpruned enumeration of every placement; only usable for a handful of ads."""
    options = [[None] + list(combinations(ad.window(), ad.frequency)) for ad in instance.ads]
    best = F(0)
    for pick in product(*options):
        loads = [F(0)] * (instance.K + 1)
        for ad, slots in zip(instance.ads, pick):
            for j in slots or ():
                loads[j] += ad.size
        if all(x <= 1 for x in loads):
            best = max(best, sum(loads))
    return best


# brute_force: hand-enumerated micro cases


def test_oracle_no_ads():
    sched, value = brute_force(make(3, []))
    assert value == 0 and sched == Schedule.empty(3)


def test_oracle_single_full_ad():
    assert brute_force(make(1, [(F(1), 1, 1, 1)]))[1] == 1


def test_oracle_two_ads_conflict():
    inst = make(2, [(F(3, 5), 1, 1, 2), (F(3, 5), 2, 1, 2)])
    sched, value = brute_force(inst)
    assert value == F(6, 5)
    assert sched.scheduled() == {1}


def test_oracle_packs_exact_fit():
    # 1/2 + 1/3 + 1/6 fills the slot; the 2/3 ad cannot join either pair
    inst = make(1, [(F(2, 3), 1), (F(1, 2), 1), (F(1, 3), 1), (F(1, 6), 1)])
    assert brute_force(inst)[1] == 1


def test_oracle_respects_windows():
    inst = make(3, [(F(1), 1, 1, 1), (F(1), 1, 1, 1), (F(1, 2), 2, 2, 3)])
    assert brute_force(inst)[1] == 2


def test_oracle_ad_limit():
    inst = make(1, [(F(1, 20), 1)] * 10)
    with pytest.raises(BudgetExceeded):
        brute_force(inst)
    assert brute_force(inst, OracleLimits(max_ads=10))[1] == F(1, 2)


def test_oracle_state_budget():
    inst = make(3, [(F(1, 3), 2)] * 6)
    with pytest.raises(BudgetExceeded):
        brute_force(inst, OracleLimits(max_states=5))


@pytest.mark.parametrize("seed", range(60))
def test_oracle_matches_unpruned_enumeration(seed):
    rng = random.Random(seed)
    inst = random_instance(rng, rng.randint(1, 5), rng.randint(1, 4), "maxspace-rd")
    sched, value = brute_force(inst)
    assert verify(inst, sched).feasible
    assert value == naive_optimum(inst)
    assert value == sum(inst.ads[i].volume for i in sched.scheduled())


@pytest.mark.parametrize("seed", range(30))
def test_oracle_monotone_under_removal_and_growth(seed):
    rng = random.Random(1000 + seed)
    K = rng.randint(1, 3)
    inst = random_instance(rng, rng.randint(2, 6), K, "maxspace-r")
    full = brute_force(inst)[1]
    drop = rng.randrange(inst.n)
    kept = [a for a in inst.ads if a.id != drop]
    smaller = Instance(K, tuple(Ad(i, a.size, a.frequency, a.release, a.deadline) for i, a in enumerate(kept)))
    assert brute_force(smaller)[1] <= full
    grown = Instance(K + 1, tuple(Ad(a.id, a.size, a.frequency, a.release, K + 1) for a in inst.ads))
    assert brute_force(grown)[1] >= full


# dp_large


def test_dp_empty():
    assert dp_large([], 3)[1] == 0


def test_dp_single_ad_placed_first():
    inst = make(3, [(F(3, 5), 2, 1, 3)])
    sched, value = dp_large(inst.ads, 3)
    assert value == F(6, 5)
    assert sched == Schedule(((0,), (0,), ()))


def test_dp_three_ads():
    inst = make(3, [(F(3, 5), 2, 2, 3), (F(7, 10), 2, 1, 3), (F(9, 10), 1, 3, 3)])
    sched, value = dp_large(inst.ads, 3)
    assert value == F(23, 10)
    assert sched.slot(1) == (1,) and sched.slot(2) == (1,) and sched.slot(3) == (2,)
    assert brute_force(inst)[1] == F(23, 10)


def test_dp_class_violation():
    inst = make(2, [(F(1, 2), 1, 1, 2)])
    with pytest.raises(ClassViolation):
        dp_large(inst.ads, 2)
    inst = make(2, [(F(3, 4), 1, 1, 1)])
    with pytest.raises(ClassViolation):
        dp_large(inst.ads, 2)
    assert dp_large(inst.ads, 2, allow_deadlines=True)[1] == F(3, 4)


def test_dp_table_invariants():
    rng = random.Random(7)
    inst = random_instance(rng, 6, 5, "maxspace-r", lo=F(501, 1000))
    table = build_dp_table(inst.ads, 5)
    m = table.m
    assert all(x == 0 for x in m[0]) and all(row[0] == 0 for row in m)
    for i in range(len(m)):
        for j in range(len(m[0])):
            if i:
                assert m[i][j] >= m[i - 1][j]
            if j:
                assert m[i][j] >= m[i][j - 1]


@pytest.mark.parametrize("seed", range(100))
def test_dp_equals_oracle(seed):
    rng = random.Random(seed)
    inst = random_instance(rng, rng.randint(1, 8), rng.randint(1, 6), "maxspace-r", lo=F(501, 1000))
    sched, value = dp_large(inst.ads, inst.K)
    assert verify(inst, sched).feasible
    assert value == brute_force(inst)[1]
    for ad_id in sched.scheduled():
        ad = inst.ads[ad_id]
        slots = [j for j in range(1, inst.K + 1) if ad_id in sched.slot(j)]
        assert slots == list(range(slots[0], slots[0] + ad.frequency))
        assert slots[-1] >= ad.release + ad.frequency - 1


@pytest.mark.parametrize("seed", range(40))
def test_dp_monotone_in_ads(seed):
    rng = random.Random(500 + seed)
    inst = random_instance(rng, rng.randint(2, 8), rng.randint(1, 6), "maxspace-r", lo=F(501, 1000))
    assert dp_large(inst.ads[:-1], inst.K)[1] <= dp_large(inst.ads, inst.K)[1]


@pytest.mark.parametrize("seed", range(100))
def test_dp_deadline_extension_feasible_and_bounded(seed):
    rng = random.Random(2000 + seed)
    inst = random_instance(rng, rng.randint(1, 7), rng.randint(1, 5), "maxspace-rd", lo=F(501, 1000))
    sched, value = dp_large(inst.ads, inst.K, allow_deadlines=True)
    assert verify(inst, sched).feasible
    assert value <= brute_force(inst)[1]


def test_dp_deadline_extension_not_exact():
    # the optimum splits ad 0 around ad 1, which block packing cannot express
    inst = make(3, [(F(3, 5), 2, 1, 3), (F(4, 5), 1, 2, 2)])
    assert brute_force(inst)[1] == 2
    assert dp_large(inst.ads, 3, allow_deadlines=True)[1] == F(6, 5)
