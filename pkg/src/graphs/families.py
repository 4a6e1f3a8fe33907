"""
Generators for the three regular bipartite families and a closed-form
distance rule that avoids BFS on them.

  crown:n=N         K_{n,n} minus a perfect matching, (n-1)-regular
  hamcomp:m=M       K_{m,m} minus a Hamiltonian cycle, (m-2)-regular
  multi:m=M1,M2,..  K_{n,n} minus disjoint even cycles of half-lengths m_i

Cycle i uses x and y indices offset by the sum of the earlier m_j and is
walked as x_{o+1} y_{o+1} x_{o+2} ... x_{o+m} y_{o+m} x_{o+1}.
"""
import re
import bisect
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from src.errors import (
    BadPartitionError,
    DisconnectedFamilyError,
    MTooSmallError,
    NTooSmallError,
    SpecOutOfClosedFormRangeError,
    SpecParseError,
)
from src.graphs.graph_core import (
    DistanceMatrix,
    Graph,
    Side,
    all_pairs_distances,
    freeze_matrix,
)

CROWN, HAMCOMP, MULTI = "crown", "hamcomp", "multi"

_SPEC_RE = re.compile(r"^\s*(crown|hamcomp|multi)\s*:\s*([nm])\s*=\s*([\d,\s]+)$")


@dataclass(frozen=True)
class CycleLayout:
    """One removed cycle as global ids; position 0 is an x vertex and sides alternate."""
    vertices: Tuple[int, ...]
    _index: dict = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {v: p for p, v in enumerate(self.vertices)})

    def __len__(self):
        return len(self.vertices)

    def __contains__(self, v):
        return v in self._index

    @property
    def half_length(self) -> int:
        return len(self.vertices) // 2

    def position(self, v: int) -> int:
        return self._index[v]

    def at(self, pos: int) -> int:
        return self.vertices[pos % len(self.vertices)]

    @staticmethod
    def side_at(pos: int) -> Side:
        return Side(pos % 2)

    def pairs(self):
        """Consecutive (removed) pairs, including the wrap-around pair."""
        k = len(self.vertices)
        return [(self.vertices[p], self.vertices[(p + 1) % k]) for p in range(k)]


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    params: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "params", tuple(int(p) for p in self.params))
        self.validate()

    @classmethod
    def crown(cls, n: int) -> "FamilySpec":
        return cls(CROWN, (n,))

    @classmethod
    def hamcomp(cls, m: int) -> "FamilySpec":
        return cls(HAMCOMP, (m,))

    @classmethod
    def multi(cls, partition) -> "FamilySpec":
        return cls(MULTI, tuple(partition))

    @classmethod
    def parse(cls, text: str) -> "FamilySpec":
        """Read "crown:n=5", "hamcomp:m=7" or "multi:m=2,3,5"."""
        match = _SPEC_RE.match(text or "")
        if not match:
            raise SpecParseError(f"cannot parse family spec {text!r}")
        kind, letter, values = match.groups()
        expected = "n" if kind == CROWN else "m"
        if letter != expected:
            raise SpecParseError(f"{kind} takes '{expected}=', got '{letter}='")
        try:
            numbers = tuple(int(v) for v in values.split(",") if v.strip())
        except ValueError:
            raise SpecParseError(f"bad numbers in {text!r}")
        if not numbers or (kind != MULTI and len(numbers) != 1):
            raise SpecParseError(f"wrong number of parameters in {text!r}")
        return cls(kind, numbers)

    def __str__(self):
        letter = "n" if self.kind == CROWN else "m"
        return f"{self.kind}:{letter}=" + ",".join(str(p) for p in self.params)

    def validate(self) -> None:
        if self.kind == CROWN:
            if self.params[0] < 3:
                raise NTooSmallError(f"crown needs n >= 3, got {self.params[0]}")
        elif self.kind == HAMCOMP:
            if self.params[0] < 4:
                raise MTooSmallError(f"hamcomp needs m >= 4, got {self.params[0]}")
        elif self.kind == MULTI:
            parts = self.params
            if not parts or any(m < 2 for m in parts):
                raise BadPartitionError(f"every cycle needs m_i >= 2, got {list(parts)}")
            n = sum(parts)
            if 2 in parts and (len(parts) < 2 or n < 5):
                raise DisconnectedFamilyError(f"partition {list(parts)} leaves a 2-block isolated")
            if n < 4:
                raise DisconnectedFamilyError(f"n = {n} < 4 gives a disconnected host")
        else:
            raise SpecParseError(f"unknown family kind {self.kind!r}")

    @property
    def n(self) -> int:
        """Vertices per side."""
        return sum(self.params)

    @property
    def num_vertices(self) -> int:
        return 2 * self.n

    @property
    def partition(self) -> Optional[Tuple[int, ...]]:
        return None if self.kind == CROWN else self.params

    @property
    def is_complement(self) -> bool:
        return self.kind != CROWN

    @property
    def in_closed_form_range(self) -> bool:
        if self.kind == CROWN:
            return True
        if self.kind == HAMCOMP:
            return self.params[0] >= 5
        return self.n >= 5


@dataclass(frozen=True)
class FamilyInstance:
    spec: FamilySpec
    graph: Graph
    layouts: Tuple[CycleLayout, ...] = ()
    matching: Tuple[Tuple[int, int], ...] = ()


def _block_offsets(partition):
    offsets, total = [], 0
    for m in partition:
        offsets.append(total)
        total += m
    return offsets


def _cycle_layout(n: int, offset: int, m: int) -> CycleLayout:
    order = []
    for t in range(m):
        order.append(offset + t)
        order.append(n + offset + t)
    return CycleLayout(tuple(order))


def cycle_layouts(spec: FamilySpec) -> Tuple[CycleLayout, ...]:
    if spec.kind == CROWN:
        return ()
    n = spec.n
    return tuple(_cycle_layout(n, o, m) for o, m in zip(_block_offsets(spec.params), spec.params))


def _complement_graph(n: int, removed) -> Graph:
    """K_{n,n} minus the given cross pairs, built straight into bitset rows."""
    full_y = ((1 << n) - 1) << n
    full_x = (1 << n) - 1
    rows = [full_y] * n + [full_x] * n
    for x, y in removed:
        rows[x] &= ~(1 << y)
        rows[y] &= ~(1 << x)
    part_of = tuple([Side.X] * n + [Side.Y] * n)
    return Graph(num_vertices=2 * n, adjacency=tuple(rows), part_of=part_of)


def _as_cross_pair(u, v, n):
    return (u, v) if u < n else (v, u)


def gen_crown(n: int):
    """Crown graph: x_i y_j is an edge iff i != j. Returns (graph, removed matching)."""
    spec = FamilySpec.crown(n)
    matching = tuple((i, n + i) for i in range(spec.n))
    return _complement_graph(n, matching), matching


def gen_hamcomp(m: int):
    """K_{m,m} minus the cycle x_1 y_1 x_2 ... x_m y_m x_1. Returns (graph, layout)."""
    spec = FamilySpec.hamcomp(m)
    layout = cycle_layouts(spec)[0]
    removed = [_as_cross_pair(u, v, m) for u, v in layout.pairs()]
    return _complement_graph(m, set(removed)), layout


def gen_multicycle(partition):
    """K_{n,n} minus disjoint cycles on consecutive index blocks. Returns (graph, layouts)."""
    spec = FamilySpec.multi(partition)
    n = spec.n
    layouts = cycle_layouts(spec)
    removed = set()
    for layout in layouts:
        removed.update(_as_cross_pair(u, v, n) for u, v in layout.pairs())
    return _complement_graph(n, removed), list(layouts)


def generate(spec: FamilySpec) -> FamilyInstance:
    if spec.kind == CROWN:
        graph, matching = gen_crown(spec.n)
        return FamilyInstance(spec, graph, (), matching)
    if spec.kind == HAMCOMP:
        graph, layout = gen_hamcomp(spec.n)
        return FamilyInstance(spec, graph, (layout,))
    graph, layouts = gen_multicycle(spec.params)
    return FamilyInstance(spec, graph, tuple(layouts))


# --- distances without BFS ----------------------------------------------------

def removed_partners(spec: FamilySpec, v: int) -> Tuple[int, ...]:
    """Opposite-side vertices whose edge to ``v`` was removed."""
    n = spec.n
    is_x = v < n
    index = v if is_x else v - n
    if spec.kind == CROWN:
        return (index + n,) if is_x else (index,)
    offsets = _block_offsets(spec.params)
    block = bisect.bisect_right(offsets, index) - 1
    o, m = offsets[block], spec.params[block]
    t = index - o
    if is_x:
        return tuple(sorted({n + o + t, n + o + (t - 1) % m}))
    return tuple(sorted({o + t, o + (t + 1) % m}))


def _check_closed_form(spec: FamilySpec) -> None:
    if not spec.in_closed_form_range:
        raise SpecOutOfClosedFormRangeError(
            f"{spec} has diameter above 3; use BFS distances instead")


def closed_form_distance(spec: FamilySpec, u: int, v: int) -> int:
    """0 if equal, 2 on the same side, 3 for a removed pair, else 1."""
    _check_closed_form(spec)
    if u == v:
        return 0
    n = spec.n
    if (u < n) == (v < n):
        return 2
    return 3 if v in removed_partners(spec, u) else 1


def closed_form_matrix(spec: FamilySpec) -> DistanceMatrix:
    """Whole closed-form DistanceMatrix, vectorised; no Graph is built."""
    _check_closed_form(spec)
    n = spec.n
    dist = np.full((2 * n, 2 * n), 2, dtype=np.uint8)
    dist[:n, n:] = 1
    dist[n:, :n] = 1
    if spec.kind == CROWN:
        xs = np.arange(n)
        dist[xs, xs + n] = 3
        dist[xs + n, xs] = 3
    else:
        for o, m in zip(_block_offsets(spec.params), spec.params):
            t = np.arange(m)
            xs = o + t
            for ys in (n + o + t, n + o + (t - 1) % m):
                dist[xs, ys] = 3
                dist[ys, xs] = 3
    np.fill_diagonal(dist, 0)
    return freeze_matrix(dist, "closed-form")


def family_distances(spec: FamilySpec, instance: FamilyInstance = None) -> DistanceMatrix:
    """Closed form when it applies, BFS on the generated graph otherwise."""
    if spec.in_closed_form_range:
        return closed_form_matrix(spec)
    instance = instance or generate(spec)
    return all_pairs_distances(instance.graph)


def component_matrix(m: int, host_n: int) -> DistanceMatrix:
    """
    Distances inside one cycle-complement component of half-length m,
    numbered x_i -> i-1, y_i -> m+i-1.

    Inside a host with host_n >= 5 the component metric holds (1 adjacent,
    2 same side, 3 removed pair); the lone complement of K_{4,4} is C8 and
    takes BFS distances.
    """
    if m < 2 or host_n < m:
        raise BadPartitionError(f"no component of half-length {m} in a host with n = {host_n}")
    if m == 4 and host_n == 4:
        graph, _ = gen_hamcomp(4)
        return all_pairs_distances(graph)
    dist = np.full((2 * m, 2 * m), 2, dtype=np.uint8)
    dist[:m, m:] = 1
    dist[m:, :m] = 1
    t = np.arange(m)
    for ys in (m + t, m + (t - 1) % m):
        dist[t, ys] = 3
        dist[ys, t] = 3
    np.fill_diagonal(dist, 0)
    return freeze_matrix(dist, "component")
