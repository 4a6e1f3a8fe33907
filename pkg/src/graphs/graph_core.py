"""
Immutable graph representation with bitset adjacency rows, BFS all-pairs
distances and the x/y vertex-id convention used by every bipartite family.

Vertex ids are dense 0..N-1. For a bipartite family with n vertices per
side, Side X holds ids 0..n-1 (x_i -> i-1) and Side Y holds n..2n-1
(y_i -> n+i-1).
"""
import re
from dataclasses import dataclass
from enum import IntEnum
from typing import Iterable, Iterator, Optional, Sequence, Tuple

import numpy as np

from src.errors import (
    DisconnectedGraphError,
    DuplicateEdgeError,
    EdgeWithinOnePartError,
    GraphError,
    OutOfRangeError,
    SelfLoopError,
)

INF = 255  # uint8 sentinel for unreachable pairs


class Side(IntEnum):
    """Side of the bipartition; X is Side1, Y is Side2."""
    X = 0
    Y = 1


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Graph:
    num_vertices: int
    adjacency: Tuple[int, ...]
    part_of: Optional[Tuple[Side, ...]] = None

    def neighbors(self, v: int) -> list:
        return list(iter_bits(self.adjacency[v]))

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adjacency[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.adjacency[v].bit_count()

    def edges(self) -> Iterator[Tuple[int, int]]:
        for u in range(self.num_vertices):
            for v in iter_bits(self.adjacency[u] >> (u + 1)):
                yield u, u + 1 + v

    @property
    def num_edges(self) -> int:
        return sum(row.bit_count() for row in self.adjacency) // 2

    def side(self, v: int) -> Side:
        if self.part_of is None:
            raise GraphError("graph carries no bipartition")
        return self.part_of[v]


@dataclass(frozen=True)
class DistanceMatrix:
    """All-pairs distances; ``source`` records how they were obtained."""
    dist: np.ndarray
    source: str = "bfs"

    @property
    def num_vertices(self) -> int:
        return self.dist.shape[0]

    @property
    def is_connected(self) -> bool:
        return not bool((self.dist == INF).any())

    @property
    def diameter(self) -> int:
        return int(self.dist.max()) if self.num_vertices else 0

    def d(self, u: int, v: int) -> int:
        return int(self.dist[u, v])

    def require_connected(self) -> None:
        if not self.is_connected:
            raise DisconnectedGraphError("distance matrix has unreachable pairs")


def freeze_matrix(dist: np.ndarray, source: str) -> DistanceMatrix:
    dist = np.ascontiguousarray(dist, dtype=np.uint8)
    dist.setflags(write=False)
    return DistanceMatrix(dist=dist, source=source)


def _normalize_parts(num_vertices, parts) -> Optional[Tuple[Side, ...]]:
    if parts is None:
        return None
    parts = list(parts)
    # Two id lists, as in the JSON edge-list format.
    if len(parts) == 2 and all(isinstance(p, (list, tuple, set, frozenset)) for p in parts):
        sides = [None] * num_vertices
        for side, ids in zip((Side.X, Side.Y), parts):
            for v in ids:
                if not 0 <= v < num_vertices:
                    raise OutOfRangeError(f"part member {v} outside 0..{num_vertices - 1}")
                if sides[v] is not None:
                    raise GraphError(f"vertex {v} appears in both parts")
                sides[v] = side
        missing = [v for v, s in enumerate(sides) if s is None]
        if missing:
            raise GraphError(f"vertices {missing} are in neither part")
        return tuple(sides)
    if len(parts) != num_vertices:
        raise GraphError(f"expected {num_vertices} side labels, got {len(parts)}")
    return tuple(Side(int(s)) for s in parts)


def build_graph(num_vertices: int, edges: Iterable[Sequence[int]], parts=None) -> Graph:
    """
    Validate an edge list and build an immutable Graph.

    Args:
        num_vertices: vertex count; ids are 0..num_vertices-1
        edges: iterable of (u, v) pairs
        parts: optional bipartition, either one side label per vertex or
            two id lists ``[[side1 ids], [side2 ids]]``

    Raises:
        OutOfRangeError, SelfLoopError, DuplicateEdgeError, EdgeWithinOnePartError
    """
    if num_vertices < 0:
        raise OutOfRangeError("num_vertices must be non-negative")
    part_of = _normalize_parts(num_vertices, parts)
    rows = [0] * num_vertices
    for edge in edges:
        u, v = (int(e) for e in edge)
        for w in (u, v):
            if not 0 <= w < num_vertices:
                raise OutOfRangeError(f"vertex {w} outside 0..{num_vertices - 1}")
        if u == v:
            raise SelfLoopError(f"self-loop at vertex {u}")
        if rows[u] >> v & 1:
            raise DuplicateEdgeError(f"edge ({u}, {v}) given twice")
        if part_of is not None and part_of[u] == part_of[v]:
            raise EdgeWithinOnePartError(f"edge ({u}, {v}) stays inside side {part_of[u].name}")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(num_vertices=num_vertices, adjacency=tuple(rows), part_of=part_of)


def _bfs_row(adjacency: Tuple[int, ...], source: int) -> np.ndarray:
    row = np.full(len(adjacency), INF, dtype=np.uint8)
    row[source] = 0
    seen = frontier = 1 << source
    depth = 0
    while frontier:
        depth += 1
        reached = 0
        for v in iter_bits(frontier):
            reached |= adjacency[v]
        reached &= ~seen
        if not reached:
            break
        if depth >= INF:
            raise GraphError("distance exceeds the uint8 range")
        seen |= reached
        row[list(iter_bits(reached))] = depth
        frontier = reached
    return row


def all_pairs_distances(g: Graph) -> DistanceMatrix:
    """Exact BFS distances, one independent row per source vertex."""
    n = g.num_vertices
    dist = np.empty((n, n), dtype=np.uint8)
    for s in range(n):
        dist[s] = _bfs_row(g.adjacency, s)
    return freeze_matrix(dist, "bfs")


def is_connected(g: Graph) -> bool:
    n = g.num_vertices
    if n <= 1:
        return True
    everything = (1 << n) - 1
    seen = frontier = 1
    while frontier:
        reached = 0
        for v in iter_bits(frontier):
            reached |= g.adjacency[v]
        frontier = reached & ~seen
        seen |= frontier
    return seen == everything


# --- x/y notation -------------------------------------------------------------

_XY = re.compile(r"^\s*([xXyY])\s*(\d+)\s*$")


def vertex_label(v: int, n: int) -> str:
    """Pretty-print a vertex id in x/y notation for a G(n,n) layout."""
    return f"x{v + 1}" if v < n else f"y{v - n + 1}"


def parse_vertex(token: str, n: Optional[int]) -> int:
    """Accept either a raw id ("7") or x/y notation ("x3", "y1")."""
    token = token.strip()
    if token.lstrip("-").isdigit():
        return int(token)
    match = _XY.match(token)
    if not match or n is None:
        raise GraphError(f"cannot read vertex {token!r}")
    letter, index = match.group(1).lower(), int(match.group(2))
    if not 1 <= index <= n:
        raise OutOfRangeError(f"{token} outside 1..{n}")
    return index - 1 if letter == "x" else n + index - 1


def parse_landmarks(text: str, n: Optional[int]) -> list:
    if not text.strip():
        return []
    return [parse_vertex(tok, n) for tok in text.split(",") if tok.strip()]


def format_landmarks(ids: Iterable[int], n: int) -> str:
    return "{" + ", ".join(vertex_label(v, n) for v in sorted(ids)) + "}"
