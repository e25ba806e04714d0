# # Medium and small ads, and the best-of-three combination
#
# Medium ads (1/4, 1/2] and small ads (0, 1/4] are placed greedily in release
# order: top up slots that are under a quarter full first, otherwise use the
# emptiest slot.  Each greedy keeps at least a quarter of the optimum, and
# taking the best of the DP and the two greedy schedules keeps a ninth.

import random
from fractions import Fraction as F

from adspace import Instance, brute_force, combined, schedule_medium, schedule_small, total_fullness
from adspace.generate import generate

# Three half-slot ads that each want both slots: only two fit.

inst = Instance.build(2, [(F(1, 2), 2)] * 3, variant="maxspace-r")
sched, trace = schedule_medium(inst.ads, 2)
print(sched, "discarded:", trace.discarded)

# Small ads fill slots a quarter at a time.

inst = Instance.build(2, [(F(1, 4), 1)] * 4 + [(F(1, 4), 2)], variant="maxspace-r")
sched, trace = schedule_small(inst.ads, 2)
print(sched, "value:", total_fullness(inst, sched))

# Ratios against the exhaustive optimum on random mixed instances.

rng = random.Random(0)
worst = {"medium": F(1), "small": F(1), "combined": F(1)}
for seed in range(200):
    K = rng.randint(1, 4)
    inst = generate(rng.randint(1, 8), K, "maxspace-r", "thirds-mix", seed)
    opt = brute_force(inst)[1]
    if opt:
        worst["combined"] = min(worst["combined"], total_fullness(inst, combined(inst)) / opt)
    for klass, solver in (("medium", schedule_medium), ("small", schedule_small)):
        sub = generate(rng.randint(1, 8), K, "maxspace-r", klass, seed)
        sub_opt = brute_force(sub)[1]
        value = total_fullness(sub, solver(sub.ads, K)[0])
        worst[klass] = min(worst[klass], value / sub_opt)

for name, ratio in worst.items():
    print(f"{name:9s} worst ratio {float(ratio):.3f}")
