# # The approximation scheme for release dates and deadlines
#
# With K slots fixed, large ads are placed by trying every feasible
# configuration.  For each one, the space left is split among slot subsets
# ("types") by a guessed capacity vector.  Small ads then go to types through
# a fractional max-flow that is rounded to whole ads.

from fractions import Fraction as F

from adspace import Instance, ptas, total_fullness
from adspace.ptas import (
    CapacityVector,
    build_flow_network,
    enumerate_capacity_vectors,
    enumerate_configurations,
    internal_epsilon,
    max_flow,
    rounding,
)

eps = F(1, 2)

# Configurations: one ad that fits either of two slots gives three of them.

inst = Instance.build(2, [(F(1), 1, 1, 2)])
for config in enumerate_configurations(inst.ads, 2, eps):
    print("configuration", config.assignment, "loads", [str(x) for x in config.loads])

# Capacity vectors for one empty slot: c for the empty type and for {1},
# each in 0..1/eps.

print(len(list(enumerate_capacity_vectors([F(1)], eps, 1))), "capacity vectors")

# Flow for small ads: two ads of volume 3/10 compete for one type whose
# sink edge carries 1/2.

small = Instance.build(1, [(F(3, 10), 1, 1, 1)] * 2)
net = build_flow_network(small.ads, CapacityVector.from_dict(1, {1: 1}), eps, 1)
flow = max_flow(net)
print("fractional flow", flow.value, flow.flow)
print("rounded flow   ", rounding(flow, small.ads).value)

# The true accuracy parameter is tiny even for generous targets, which is why
# the full scheme is out of reach beyond toy sizes.

print("internal eps for eps'=1/2, K=2:", internal_epsilon(F(1, 2), 2))

# So the driver accepts an override (the guarantee is then reported void) and
# a work budget; running out of budget returns the best schedule so far.

inst = Instance.build(2, [(F(3, 5), 2, 1, 2), (F(3, 5), 1, 1, 2), (F(1, 1000), 1, 1, 1), (F(1, 1000), 2, 1, 2)])
res = ptas(inst, F(1, 2), epsilon=F(1, 2))
print("ptas value", res.value, "guarantee void:", res.guarantee_void)

# Four ads that each fit either slot have 21 configurations; a budget of 20
# stops the search early.

crowded = Instance.build(2, [(F(3, 5), 1, 1, 2)] * 4 + [(F(1, 1000), 1, 1, 1)])
res = ptas(crowded, F(1, 2), budget=20, epsilon=F(1, 2))
print("budget exceeded:", res.budget_exceeded, "| value", res.value, "=", total_fullness(crowded, res.schedule))
print(res.message)
