"""Flow network description and an exact max-flow over rational capacities.

The solver is networkx's Edmonds-Karp.  Shortest augmenting paths finish
after O(VE) augmentations whatever the capacities are, and networkx does
plain arithmetic on them, so Fractions stay exact end to end.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable

import networkx as nx
from networkx.algorithms.flow import edmonds_karp

__all__ = ["FlowNetwork", "max_flow_edges"]

INF = None  # marker for an unbounded edge


@dataclass
class FlowNetwork:
    source: Hashable
    sink: Hashable
    nodes: list = field(default_factory=list)
    # (u, v) -> capacity, None meaning unbounded
    capacity: dict = field(default_factory=dict)

    def add_node(self, u) -> None:
        if u not in self.nodes:
            self.nodes.append(u)

    def add_edge(self, u, v, cap) -> None:
        self.add_node(u)
        self.add_node(v)
        if cap is not INF:
            cap = Fraction(cap)
            if cap < 0:
                raise ValueError(f"negative capacity on {u!r}->{v!r}")
        if (u, v) in self.capacity:
            raise ValueError(f"duplicate edge {u!r}->{v!r}")
        self.capacity[(u, v)] = cap


def max_flow_edges(net: FlowNetwork) -> tuple[Fraction, dict]:
    """Return (value, flow per edge) of a maximum source-sink flow."""
    flow = {e: Fraction(0) for e in net.capacity}
    if net.source not in net.nodes or net.sink not in net.nodes:
        return Fraction(0), flow
    graph = nx.DiGraph()
    graph.add_nodes_from(net.nodes)
    for (u, v), cap in net.capacity.items():
        if cap is INF:
            graph.add_edge(u, v)  # no capacity attribute means unbounded
        else:
            graph.add_edge(u, v, capacity=cap)
    try:
        residual = edmonds_karp(graph, net.source, net.sink)
    except nx.NetworkXUnbounded:
        raise ValueError("unbounded source-sink path") from None
    for (u, v) in net.capacity:
        # networkx leaves zero-capacity edges out of the residual graph
        arc = residual[u].get(v)
        if arc is not None:
            flow[(u, v)] = Fraction(arc["flow"])
    return Fraction(residual.graph["flow_value"]), flow
