"""Integral max-flow and min-cost flow with arc lower bounds.

Graphs here are tiny (Monroe assignments, PER partitions), so both
kernels favour the textbook formulation: Edmonds-Karp for max-flow,
successive shortest paths with Johnson potentials for min-cost flow.
"""
import heapq
from collections import deque
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from utils.errors import InfeasibleFlowError, InputError
from utils.logger import get_logger

logger = get_logger(__name__)

INF = float("inf")


@dataclass(frozen=True)
class Arc:
    """Directed arc with integral bounds and cost."""
    tail: int
    head: int
    capacity: int
    lower: int = 0
    cost: int = 0


@dataclass
class FlowNetwork:
    """Nodes 0..num_nodes-1 with a designated source and sink."""
    num_nodes: int
    source: int
    sink: int
    arcs: List[Arc] = field(default_factory=list)

    def add_arc(self, tail: int, head: int, capacity: int, lower: int = 0, cost: int = 0) -> int:
        """Append an arc and return its index."""
        self.arcs.append(Arc(tail=tail, head=head, capacity=capacity, lower=lower, cost=cost))
        return len(self.arcs) - 1

    def validate(self) -> None:
        if self.num_nodes < 2:
            raise InputError("a flow network needs at least two nodes")
        for name, node in (("source", self.source), ("sink", self.sink)):
            if not 0 <= node < self.num_nodes:
                raise InputError(f"{name} {node} is not a node")
        if self.source == self.sink:
            raise InputError("source and sink must differ")
        for i, arc in enumerate(self.arcs):
            if not (0 <= arc.tail < self.num_nodes and 0 <= arc.head < self.num_nodes):
                raise InputError(f"arc {i} has an endpoint outside the network")
            if not all(isinstance(x, int) for x in (arc.capacity, arc.lower, arc.cost)):
                raise InputError(f"arc {i} has non-integral bounds or cost")
            if not 0 <= arc.lower <= arc.capacity:
                raise InputError(f"arc {i} violates 0 <= lower <= capacity")


@dataclass(frozen=True)
class FlowResult:
    """Flow value, its total cost and the flow on every arc (insertion order)."""
    value: int
    cost: int
    flows: Tuple[int, ...]


class _Residual:
    """Paired-edge residual graph: edge e and e ^ 1 are mutual reverses."""

    def __init__(self, num_nodes: int):
        self.adj: List[List[int]] = [[] for _ in range(num_nodes)]
        self.to: List[int] = []
        self.cap: List[int] = []
        self.cost: List[int] = []

    def add(self, tail: int, head: int, capacity: int, cost: int) -> int:
        edge = len(self.to)
        self.to += [head, tail]
        self.cap += [capacity, 0]
        self.cost += [cost, -cost]
        self.adj[tail].append(edge)
        self.adj[head].append(edge + 1)
        return edge

    def flow_on(self, edge: int) -> int:
        return self.cap[edge ^ 1]

    def augment(self, path: List[int], amount: int) -> None:
        for edge in path:
            self.cap[edge] -= amount
            self.cap[edge ^ 1] += amount


def _path_to(parent: List[Optional[int]], to: List[int], source: int, sink: int) -> List[int]:
    path = []
    node = sink
    while node != source:
        edge = parent[node]
        path.append(edge)
        node = to[edge ^ 1]
    path.reverse()
    return path


def max_flow(network: FlowNetwork) -> FlowResult:
    """Maximum s-t flow (Edmonds-Karp); integral on integral capacities."""
    network.validate()
    if any(arc.lower for arc in network.arcs):
        raise InputError("max_flow does not accept arc lower bounds")

    residual = _Residual(network.num_nodes)
    edge_ids = [residual.add(a.tail, a.head, a.capacity, a.cost) for a in network.arcs]

    value = 0
    while True:
        parent: List[Optional[int]] = [None] * network.num_nodes
        seen = [False] * network.num_nodes
        seen[network.source] = True
        queue = deque([network.source])
        while queue and not seen[network.sink]:
            node = queue.popleft()
            for edge in residual.adj[node]:
                head = residual.to[edge]
                if residual.cap[edge] > 0 and not seen[head]:
                    seen[head] = True
                    parent[head] = edge
                    queue.append(head)
        if not seen[network.sink]:
            break

        path = _path_to(parent, residual.to, network.source, network.sink)
        bottleneck = min(residual.cap[e] for e in path)
        residual.augment(path, bottleneck)
        value += bottleneck

    flows = tuple(residual.flow_on(e) for e in edge_ids)
    cost = sum(f * a.cost for f, a in zip(flows, network.arcs))
    logger.debug(f"max_flow: value={value} over {len(network.arcs)} arcs")
    return FlowResult(value=value, cost=cost, flows=flows)


def _bellman_ford(residual: _Residual, source: int) -> List[int]:
    """Initial potentials; costs may be negative but cycles may not."""
    num_nodes = len(residual.adj)
    dist = [INF] * num_nodes
    dist[source] = 0
    for round_no in range(num_nodes):
        changed = False
        for node in range(num_nodes):
            if dist[node] == INF:
                continue
            for edge in residual.adj[node]:
                if residual.cap[edge] <= 0:
                    continue
                head = residual.to[edge]
                candidate = dist[node] + residual.cost[edge]
                if candidate < dist[head]:
                    dist[head] = candidate
                    changed = True
        if not changed:
            break
        if round_no == num_nodes - 1:
            raise InputError("flow network contains a negative-cost cycle")
    return [0 if d == INF else d for d in dist]


def _successive_shortest_paths(residual: _Residual, source: int, sink: int, limit: int) -> Tuple[int, int]:
    """Send up to ``limit`` units along cheapest paths; returns (flow, cost)."""
    num_nodes = len(residual.adj)
    potential = _bellman_ford(residual, source)
    sent, total_cost = 0, 0

    while sent < limit:
        dist = [INF] * num_nodes
        parent: List[Optional[int]] = [None] * num_nodes
        dist[source] = 0
        heap = [(0, source)]
        while heap:
            d, node = heapq.heappop(heap)
            if d > dist[node]:
                continue
            for edge in residual.adj[node]:
                if residual.cap[edge] <= 0:
                    continue
                head = residual.to[edge]
                reduced = residual.cost[edge] + potential[node] - potential[head]
                if d + reduced < dist[head]:
                    dist[head] = d + reduced
                    parent[head] = edge
                    heapq.heappush(heap, (dist[head], head))
        if dist[sink] == INF:
            break
        for node in range(num_nodes):
            if dist[node] < INF:
                potential[node] += dist[node]

        path = _path_to(parent, residual.to, source, sink)
        amount = min([limit - sent] + [residual.cap[e] for e in path])
        residual.augment(path, amount)
        sent += amount
        total_cost += amount * sum(residual.cost[e] for e in path)

    return sent, total_cost


def min_cost_flow_with_bounds(network: FlowNetwork, required_value: int) -> FlowResult:
    """Cheapest s-t flow of exactly ``required_value`` respecting lower bounds.

    Each lower bound becomes node excess (deficit at the tail, surplus at
    the head), and ``required_value`` is added as surplus at s and deficit
    at t. A super source feeds every surplus node, every deficit node
    drains into a super sink, and the bounds fit iff the shortest-path
    flow between them saturates all of those arcs.

    Raises:
        InfeasibleFlowError: no flow of that value fits the bounds.
    """
    network.validate()
    if required_value < 0:
        raise InputError("required flow value must be nonnegative")

    n = network.num_nodes
    super_source, super_sink = n, n + 1
    residual = _Residual(n + 2)
    excess = [0] * n

    edge_ids = []
    for arc in network.arcs:
        edge_ids.append(residual.add(arc.tail, arc.head, arc.capacity - arc.lower, arc.cost))
        excess[arc.head] += arc.lower
        excess[arc.tail] -= arc.lower
    excess[network.source] += required_value
    excess[network.sink] -= required_value

    demand = 0
    for node, amount in enumerate(excess):
        if amount > 0:
            residual.add(super_source, node, amount, 0)
            demand += amount
        elif amount < 0:
            residual.add(node, super_sink, -amount, 0)

    sent, _ = _successive_shortest_paths(residual, super_source, super_sink, demand)
    if sent < demand:
        raise InfeasibleFlowError(
            f"no feasible flow of value {required_value}: saturated {sent} of {demand} excess units"
        )

    flows = tuple(arc.lower + residual.flow_on(e) for arc, e in zip(network.arcs, edge_ids))
    cost = sum(f * a.cost for f, a in zip(flows, network.arcs))
    logger.debug(f"min_cost_flow_with_bounds: value={required_value} cost={cost}")
    return FlowResult(value=required_value, cost=cost, flows=flows)
