# # Large ads: the knapsack DP against exhaustive search
#
# An ad is "large" when it takes more than half a slot, so no two copies of
# large ads share a slot.  With release dates only, ordering ads by release
# and packing each as a block of consecutive slots loses nothing, which turns
# the problem into a knapsack over slot positions.

from fractions import Fraction as F

from adspace import Instance, brute_force, dp_large, verify
from adspace.exact import build_dp_table
from adspace.generate import generate

# A three-slot banner and three large ads, written as (size, copies, release).

inst = Instance.build(3, [(F(3, 5), 2, 2), (F(7, 10), 2, 1), (F(9, 10), 1, 3)], variant="maxspace-r")
sched, value = dp_large(inst.ads, inst.K)
print("schedule:", sched)
print("value   :", value)

# The table behind it: row i covers the first i ads in release order,
# column j the first j slots.

table = build_dp_table(inst.ads, inst.K)
for i, row in enumerate(table.m):
    print(i, [str(x) for x in row])

# The exhaustive oracle agrees.

print("oracle  :", brute_force(inst)[1])

# Same check over a batch of random large-only instances.

mismatches = 0
for seed in range(100):
    inst = generate(1 + seed % 8, 1 + seed % 6, "maxspace-r", "large", seed)
    sched, value = dp_large(inst.ads, inst.K)
    assert verify(inst, sched).feasible
    mismatches += value != brute_force(inst)[1]
print("mismatches over 100 instances:", mismatches)

# With deadlines the block-packing shortcut is no longer safe.  Here the best
# schedule puts ad 0 in slots 1 and 3 around ad 1, which no block can express.

inst = Instance.build(3, [(F(3, 5), 2, 1, 3), (F(4, 5), 1, 2, 2)])
print("deadline DP:", dp_large(inst.ads, 3, allow_deadlines=True)[1], " oracle:", brute_force(inst)[1])
