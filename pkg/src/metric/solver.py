"""
Greedy upper bound and exact metric dimension.

The exact solver works on the pair-resolver table: W resolves G iff W
hits every row. Search deepens the target size k from a disjoint-row
lower bound up to the greedy size; at each level vertices are branched in
ascending id order, so the first hitting set found is the
lexicographically smallest basis.
"""
import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Optional, Tuple

import numpy as np

from src.errors import BudgetExceededError
from src.graphs.graph_core import DistanceMatrix
from src.metric.resolving import PairResolverTable, build_pair_table

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 10**8
_INFEASIBLE = 1 << 30


@dataclass(frozen=True)
class ExactResult:
    beta: int
    basis: Tuple[int, ...]
    nodes: int
    lower_bound: int
    upper_bound: int


def greedy_resolving(dm: DistanceMatrix) -> list:
    """Add the vertex that resolves the most still-unresolved pairs until none remain."""
    dm.require_connected()
    n = dm.num_vertices
    dist = dm.dist.astype(np.int64)
    labels = np.zeros(n, dtype=np.int64)
    unresolved = n * (n - 1) // 2
    chosen = []
    while unresolved:
        best_w, best_left, best_labels = None, None, None
        for w in range(n):
            if w in chosen:
                continue
            _, inverse, counts = np.unique(labels * 256 + dist[:, w],
                                           return_inverse=True, return_counts=True)
            left = int((counts * (counts - 1) // 2).sum())
            if best_left is None or left < best_left:
                best_w, best_left, best_labels = w, left, inverse.reshape(-1)
        chosen.append(best_w)
        labels = best_labels.astype(np.int64)
        unresolved = best_left
    return sorted(chosen)


def disjoint_row_bound(rows, lowest: int = 0) -> int:
    """Number of pairwise disjoint rows among vertices >= ``lowest``; a hitting-set lower bound."""
    candidates = ~((1 << lowest) - 1)
    used = count = 0
    for row in rows:
        row &= candidates
        if not row:
            return _INFEASIBLE
        if not row & used:
            count += 1
            used |= row
    return count


class HittingSetSearch:
    """Depth-first search for hitting sets of a fixed size, in lexicographic order."""

    def __init__(self, table: PairResolverTable, budget: int = DEFAULT_BUDGET):
        self.n = table.num_vertices
        self.rows = sorted(table.rows, key=lambda r: (r.bit_count(), r))
        self.ending = [[] for _ in range(self.n)]
        for row in self.rows:
            self.ending[row.bit_length() - 1].append(row)
        self.budget = budget
        self.nodes = 0

    def _tick(self):
        self.nodes += 1
        if self.nodes > self.budget:
            log.warning("exact search stopped after %d nodes", self.nodes - 1)
            raise BudgetExceededError(self.nodes - 1, self.budget)

    def search(self, size: int) -> Iterator[Tuple[int, ...]]:
        if not self.rows:
            if size == 0:
                yield ()
            return
        if size == 0:
            return
        yield from self._extend(0, (), 0, self.rows, size)

    def _extend(self, chosen_mask, chosen, start, unhit, left):
        for v in range(start, self.n):
            self._tick()
            bit = 1 << v
            rest = [r for r in unhit if not r & bit]
            if not rest:
                yield chosen + (v,)
            elif left > 1 and disjoint_row_bound(rest, v + 1) <= left - 1:
                yield from self._extend(chosen_mask | bit, chosen + (v,), v + 1, rest, left - 1)
            # skipping v: rows whose last vertex is v must already be hit
            if any(not r & chosen_mask for r in self.ending[v]):
                return


def solve_exact(dm: DistanceMatrix, budget: Optional[int] = None) -> ExactResult:
    dm.require_connected()
    budget = budget or DEFAULT_BUDGET
    table = build_pair_table(dm)
    search = HittingSetSearch(table, budget)
    if not search.rows:
        return ExactResult(0, (), 0, 0, 0)

    upper = len(greedy_resolving(dm))
    lower = min(disjoint_row_bound(search.rows), upper)
    log.debug("exact search on %d vertices: bounds [%d, %d]", dm.num_vertices, lower, upper)
    for size in range(lower, upper + 1):
        for basis in search.search(size):
            log.debug("found basis of size %d after %d nodes", size, search.nodes)
            return ExactResult(size, basis, search.nodes, lower, upper)
        log.debug("no hitting set of size %d (%d nodes so far)", size, search.nodes)
    raise AssertionError("greedy set is a hitting set, the search cannot come back empty")


def exact_metric_dimension(dm: DistanceMatrix, budget: Optional[int] = None):
    """Return (beta, basis) with the lexicographically smallest minimum basis."""
    result = solve_exact(dm, budget)
    return result.beta, result.basis


def enumerate_bases(dm: DistanceMatrix, budget: Optional[int] = None,
                    limit: Optional[int] = None) -> Iterator[Tuple[int, ...]]:
    """Yield every minimum basis in lexicographic order."""
    beta = solve_exact(dm, budget).beta
    search = HittingSetSearch(build_pair_table(dm), budget or DEFAULT_BUDGET)
    for count, basis in enumerate(search.search(beta)):
        if limit is not None and count >= limit:
            return
        yield basis


def naive_metric_dimension(dm: DistanceMatrix):
    """Reference answer: try subsets by increasing size, comparing raw representations."""
    dm.require_connected()
    n = dm.num_vertices
    for size in range(n + 1):
        for subset in combinations(range(n), size):
            cols = dm.dist[:, list(subset)]
            if len({row.tobytes() for row in cols}) == n:
                return size, subset
    raise AssertionError("V(G) always resolves G")
