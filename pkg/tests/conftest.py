import random
from fractions import Fraction as F

import pytest

from adspace.core import Ad, Instance, Variant


def make(K, specs, variant="maxspace-rd"):
    """Instance from (size, w, r, d) tuples with normalized sizes (L = 1)."""
    return Instance.build(K, specs, variant=variant)


def random_instance(rng, n, K, variant, lo=F(1, 1000), hi=F(1)):
    """Ads with sizes drawn from [lo, hi] on a 1/1000 grid (or finer when lo is tiny)."""
    ads = []
    for i in range(n):
        if variant == "maxspace":
            r, d = 1, K
        elif variant == "maxspace-r":
            r, d = rng.randint(1, K), K
        else:
            r = rng.randint(1, K)
            d = rng.randint(r, K)
        w = rng.randint(1, d - r + 1)
        den = max(1000, lo.denominator * 8)
        size = F(rng.randint(max(1, int(lo * den)), int(hi * den)), den)
        size = min(max(size, lo), hi)
        ads.append(Ad(i, size, w, r, d))
    return Instance(K=K, ads=tuple(ads), variant=Variant(variant))


@pytest.fixture
def rng():
    return random.Random(12345)


# criterion number -> (passed, summary line), filled in by test_acceptance.py
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        ok, line = ACCEPTANCE[num]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {num:>2}. {line}")
