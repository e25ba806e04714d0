from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from adspace.core import (
    Ad,
    Instance,
    Schedule,
    classify_ptas,
    classify_thirds,
    format_rational,
    parse_rational,
    ptas_threshold,
    slot_fullness,
    total_fullness,
    verify,
)
from adspace.errors import OverflowGuard, UnknownAd, ValidationError

from conftest import make


def test_slot_fullness_examples():
    inst = make(1, [(F(1, 2), 1), (F(1, 4), 1), (F(3, 7), 1), (F(2, 7), 1), (F(2, 7), 1)])
    assert slot_fullness(inst, Schedule(((),)), 1) == 0
    assert slot_fullness(inst, Schedule(((0, 1),)), 1) == F(3, 4)
    assert slot_fullness(inst, Schedule(((2, 3, 4),)), 1) == 1


def test_slot_fullness_unknown_ad():
    inst = make(1, [(F(1, 2), 1)])
    with pytest.raises(UnknownAd):
        slot_fullness(inst, Schedule(((0, 7),)), 1)


def test_total_fullness_examples():
    assert total_fullness(make(2, []), Schedule.empty(2)) == 0
    inst = make(2, [(F(1, 3), 2)])
    assert total_fullness(inst, Schedule(((0,), (0,)))) == F(2, 3)
    inst = make(3, [(F(3, 5), 2), (F(9, 10), 1)])
    assert total_fullness(inst, Schedule(((0,), (0,), (1,)))) == F(21, 10)


def test_verify_empty_schedule_feasible():
    inst = make(3, [(F(1, 2), 2)])
    assert verify(inst, Schedule.empty(3)).feasible


def test_verify_frequency_violation():
    inst = make(2, [(F(1, 2), 2)])
    report = verify(inst, Schedule(((0,), ())))
    assert not report.feasible
    assert report.violations[0].kind == "FREQUENCY"
    assert report.violations[0].where == 0


def test_verify_release_violation():
    inst = make(3, [(F(1, 2), 1, 3, 3)])
    report = verify(inst, Schedule(((), (0,), ())))
    assert report.kinds() == {"RELEASE"}


def test_verify_reports_every_violation():
    inst = make(3, [(F(3, 5), 1, 2, 2), (F(3, 5), 2, 1, 3)])
    sched = Schedule(((0, 0), (1,), (0, 1, 9)))
    report = verify(inst, sched)
    assert {"DUPLICATE", "UNKNOWN_AD", "CAPACITY", "FREQUENCY", "RELEASE", "DEADLINE"} <= report.kinds()
    assert not report


def test_verify_slot_count():
    inst = make(2, [])
    assert verify(inst, Schedule.empty(3)).kinds() == {"SLOT_COUNT"}


def test_classify_thirds_boundaries():
    inst = make(1, [(F(1, 2), 1), (F(1, 4), 1), (F(51, 100), 1)])
    G, M, P = classify_thirds(inst.ads)
    assert [a.id for a in G] == [2]
    assert [a.id for a in M] == [0]
    assert [a.id for a in P] == [1]


@given(st.lists(st.fractions(min_value=F(1, 10**6), max_value=1), max_size=30))
def test_classify_thirds_partitions(sizes):
    ads = [Ad(i, s, 1, 1, 1) for i, s in enumerate(sizes)]
    G, M, P = classify_thirds(ads)
    assert len(G) + len(M) + len(P) == len(ads)
    assert {a.id for a in G} | {a.id for a in M} | {a.id for a in P} == set(range(len(ads)))
    assert not ({a.id for a in G} & {a.id for a in M} or {a.id for a in M} & {a.id for a in P})


def test_classify_ptas_threshold_examples():
    assert ptas_threshold(F(1, 2), 2) == F(1, 256)
    assert ptas_threshold(F(1), 1) == F(1, 8)
    inst = make(1, [(F(1, 256), 1), (F(1, 300), 1)])
    G, P = classify_ptas(inst.ads, F(1, 2), 2)
    assert [a.id for a in G] == [0] and [a.id for a in P] == [1]
    inst = make(1, [(F(1, 4), 1)])
    G, P = classify_ptas(inst.ads, F(1), 1)
    assert len(G) == 1 and not P


def test_classify_ptas_overflow_guard():
    with pytest.raises(OverflowGuard):
        ptas_threshold(F(1, 2), 5, budget=10**6)
    assert ptas_threshold(F(1, 2), 4, budget=2**16) > 0
    with pytest.raises(OverflowGuard):
        ptas_threshold(F(1, 2), 4, budget=2**16 - 1)


@pytest.mark.parametrize(
    "fields, constraint",
    [
        ((F(0), 1, 1, 1), "0 < s <= L"),
        ((F(3, 2), 1, 1, 1), "0 < s <= L"),
        ((F(1, 2), 3, 2, 3), "w <= d - r + 1"),
        ((F(1, 2), 1, 2, 1), "1 <= r <= d <= K"),
    ],
)
def test_instance_rejects_bad_ads(fields, constraint):
    with pytest.raises(ValidationError) as info:
        make(3, [fields])
    assert info.value.constraint == constraint


def test_variant_constraints():
    with pytest.raises(ValidationError):
        make(3, [(F(1, 2), 1, 1, 2)], variant="maxspace-r")
    with pytest.raises(ValidationError):
        make(3, [(F(1, 2), 1, 2, 3)], variant="maxspace")
    make(3, [(F(1, 2), 1, 2, 3)], variant="maxspace-r")


def test_normalization_by_L():
    inst = Instance.build(2, [(F(3, 2), 1)], L=F(3))
    assert inst.ads[0].size == F(1, 2)


def test_float_sizes_rejected():
    with pytest.raises(ValidationError):
        Instance(K=1, ads=(Ad(0, 0.5, 1, 1, 1),))


@given(st.fractions())
def test_rational_round_trip(q):
    assert parse_rational(format_rational(q)) == q


@pytest.mark.parametrize("text", ["0.5", "1e3", "1/0", "abc", ""])
def test_parse_rational_rejects(text):
    with pytest.raises(ValueError):
        parse_rational(text)
