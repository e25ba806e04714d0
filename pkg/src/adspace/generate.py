"""Seeded random instances."""

from __future__ import annotations

import random
from fractions import Fraction

from .core import Ad, Instance, Variant, classify_thirds, ptas_threshold

__all__ = ["DISTRIBUTIONS", "generate", "generate_below_half"]

DISTRIBUTIONS = ("uniform", "thirds-mix", "ptas-small", "large", "medium", "small")

DENOMINATOR = 1000

# size ranges in thousandths, bounds inclusive
_CLASS_RANGES = {
    "large": (501, 1000),
    "medium": (251, 500),
    "small": (1, 250),
}


def _window(rng, K, variant):
    if variant is Variant.MAXSPACE:
        r, d = 1, K
    elif variant is Variant.MAXSPACE_R:
        r, d = rng.randint(1, K), K
    else:
        r = rng.randint(1, K)
        d = rng.randint(r, K)
    w = rng.randint(1, d - r + 1)
    return w, r, d


def _size(rng, distribution, threshold=None):
    if distribution == "uniform":
        return Fraction(rng.randint(1, DENOMINATOR), DENOMINATOR)
    if distribution in _CLASS_RANGES:
        lo, hi = _CLASS_RANGES[distribution]
        return Fraction(rng.randint(lo, hi), DENOMINATOR)
    if distribution == "ptas-small":
        # strictly below the threshold; denominators grow with the threshold's
        return threshold * Fraction(rng.randint(1, DENOMINATOR - 1), DENOMINATOR)
    raise ValueError(f"unknown size distribution {distribution!r}")


def generate(
    n: int,
    K: int,
    variant="maxspace-rd",
    distribution: str = "uniform",
    seed: int = 0,
    epsilon=None,
) -> Instance:
    """Deterministic random instance for a given seed.

    ``thirds-mix`` draws each size from the large/medium/small bands and,
    for n >= 6, redraws until every band is represented.  ``ptas-small``
    draws every size below the large/small cut for ``epsilon`` and K.
    """
    if n < 0 or K < 1:
        raise ValueError("need n >= 0 and K >= 1")
    variant = Variant(variant)
    rng = random.Random(seed)
    threshold = None
    if distribution == "ptas-small":
        if epsilon is None:
            raise ValueError("ptas-small needs epsilon")
        threshold = ptas_threshold(epsilon, K)

    while True:
        ads = []
        for i in range(n):
            if distribution == "thirds-mix":
                size = _size(rng, rng.choice(("large", "medium", "small")))
            else:
                size = _size(rng, distribution, threshold)
            w, r, d = _window(rng, K, variant)
            ads.append(Ad(i, size, w, r, d))
        if distribution != "thirds-mix" or n < 6 or all(classify_thirds(ads)):
            return Instance(K=K, ads=tuple(ads), variant=variant)


def generate_below_half(n: int, K: int, variant="maxspace-rd", seed: int = 0) -> Instance:
    """Random instance whose total volume sum(w*s) is below 1/2."""
    variant = Variant(variant)
    rng = random.Random(seed)
    windows = [_window(rng, K, variant) for _ in range(n)]
    weights = [rng.randint(1, DENOMINATOR) for _ in range(n)]
    target = Fraction(rng.randint(1, DENOMINATOR - 1), 2 * DENOMINATOR)
    # scale so that sum(w * s) == target < 1/2
    scale = target / max(sum(w * x for (w, _, _), x in zip(windows, weights)), 1)
    ads = [Ad(i, x * scale, w, r, d) for i, ((w, r, d), x) in enumerate(zip(windows, weights))]
    return Instance(K=K, ads=tuple(ads), variant=variant)
