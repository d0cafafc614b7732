"""Bipartite graphs, their edge-list format, and a brute-force biclique search."""
from dataclasses import dataclass
from itertools import combinations, product
from pathlib import Path
from typing import FrozenSet, Iterator, Optional, Tuple, Union

from election.models import to_mask
from formats.election_file import read_ascii
from utils.errors import ElectionFileError, InputError


@dataclass(frozen=True)
class BipartiteGraph:
    """Left vertices 0..left_size-1, right vertices 0..right_size-1."""
    left_size: int
    right_size: int
    edges: FrozenSet[Tuple[int, int]]

    def __post_init__(self):
        object.__setattr__(self, "edges", frozenset(self.edges))
        if self.left_size < 1 or self.right_size < 1:
            raise InputError("both sides of a bipartite graph need at least one vertex")
        for u, v in self.edges:
            if not (0 <= u < self.left_size and 0 <= v < self.right_size):
                raise InputError(f"edge ({u}, {v}) leaves the {self.left_size}x{self.right_size} graph")

    def left_neighbors(self, u: int) -> int:
        """Right neighbours of left vertex ``u`` as a bitset."""
        return to_mask(v for a, v in self.edges if a == u)

    def right_neighbors(self, v: int) -> FrozenSet[int]:
        """Left neighbours of right vertex ``v``."""
        return frozenset(u for u, b in self.edges if b == v)

    @classmethod
    def all_graphs(cls, left_size: int, right_size: int) -> Iterator["BipartiteGraph"]:
        """Every edge subset of K_{left,right}, in a fixed order."""
        slots = list(product(range(left_size), range(right_size)))
        for pattern in range(1 << len(slots)):
            yield cls(left_size, right_size, frozenset(s for i, s in enumerate(slots) if pattern >> i & 1))

    @classmethod
    def random(cls, left_size: int, right_size: int, density: float, rng) -> "BipartiteGraph":
        """Each edge present independently with probability ``density`` (numpy Generator)."""
        if not 0 <= density <= 1:
            raise InputError(f"edge density {density} outside [0, 1]")
        edges = frozenset(
            (u, v)
            for u in range(left_size)
            for v in range(right_size)
            if rng.random() < density
        )
        return cls(left_size, right_size, edges)

    def to_text(self) -> str:
        lines = [f"{self.left_size} {self.right_size}"]
        lines += [f"{u} {v}" for u, v in sorted(self.edges)]
        return "\n".join(lines) + "\n"


def parse_graph(text: str, source: str = "<string>") -> BipartiteGraph:
    """Read the edge-list format: ``|L| |R|`` then one ``u v`` pair per line."""
    header = None
    edges = set()
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != 2 or not all(f.isascii() and f.isdigit() for f in fields):
            raise ElectionFileError("expected two nonnegative integers", line_no, source=source)
        a, b = int(fields[0]), int(fields[1])
        if header is None:
            if a < 1 or b < 1:
                raise ElectionFileError("both sides need at least one vertex", line_no, source=source)
            header = (a, b)
            continue
        if not (a < header[0] and b < header[1]):
            raise ElectionFileError(f"edge ({a}, {b}) is out of range", line_no, source=source)
        if (a, b) in edges:
            raise ElectionFileError(f"duplicate edge ({a}, {b})", line_no, source=source)
        edges.add((a, b))
    if header is None:
        raise ElectionFileError("missing '|L| |R|' header", 1, source=source)
    return BipartiteGraph(header[0], header[1], frozenset(edges))


def read_graph(path: Union[str, Path]) -> BipartiteGraph:
    return parse_graph(read_ascii(path), source=str(path))


def biclique_exists(graph: BipartiteGraph, ell: int) -> Optional[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """An ell x ell biclique (L', R') found by intersecting left neighbourhoods, or None."""
    if ell < 1:
        raise InputError(f"biclique size must be positive, got {ell}")
    if ell > graph.left_size or ell > graph.right_size:
        return None
    neighbors = [graph.left_neighbors(u) for u in range(graph.left_size)]
    for left in combinations(range(graph.left_size), ell):
        common = (1 << graph.right_size) - 1
        for u in left:
            common &= neighbors[u]
        if common.bit_count() >= ell:
            right = tuple(v for v in range(graph.right_size) if common >> v & 1)[:ell]
            return left, right
    return None
