"""
Representations r(v|W), resolving-set verification and the pair-resolver
table that turns the resolving condition into a hitting-set problem.
"""
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Tuple

import numpy as np

from src.errors import DisconnectedGraphError, OutOfRangeError
from src.graphs.graph_core import INF, DistanceMatrix, iter_bits


@dataclass(frozen=True)
class ResolvingReport:
    resolving: bool
    landmarks: Tuple[int, ...]
    witness: Optional[Tuple[int, int]] = None

    def to_dict(self) -> dict:
        out = {"resolving": self.resolving}
        if self.witness is not None:
            out["witness"] = list(self.witness)
        out["landmarks"] = list(self.landmarks)
        return out


@dataclass(frozen=True)
class PairResolverTable:
    """For each pair u < v, the bitset of vertices w with d(w,u) != d(w,v)."""
    num_vertices: int
    pairs: Tuple[Tuple[int, int], ...]
    rows: Tuple[int, ...]

    def is_hit_by(self, landmarks: Iterable[int]) -> bool:
        mask = 0
        for w in landmarks:
            mask |= 1 << w
        return all(row & mask for row in self.rows)

    def resolvers(self, u: int, v: int) -> list:
        if u > v:
            u, v = v, u
        return list(iter_bits(self.rows[self.pairs.index((u, v))]))


def _check_landmarks(dm: DistanceMatrix, landmarks: Sequence[int]) -> Tuple[int, ...]:
    n = dm.num_vertices
    out = []
    for w in landmarks:
        w = int(w)
        if not 0 <= w < n:
            raise OutOfRangeError(f"landmark {w} outside 0..{n - 1}")
        if w not in out:
            out.append(w)
    return tuple(out)


def representation(dm: DistanceMatrix, v: int, landmarks: Sequence[int]) -> Tuple[int, ...]:
    """The tuple (d(v,w_1), ..., d(v,w_k)) in landmark order."""
    landmarks = _check_landmarks(dm, landmarks)
    if not 0 <= v < dm.num_vertices:
        raise OutOfRangeError(f"vertex {v} outside 0..{dm.num_vertices - 1}")
    rep = tuple(int(dm.dist[v, w]) for w in landmarks)
    if INF in rep:
        raise DisconnectedGraphError(f"vertex {v} cannot reach every landmark")
    return rep


def verify_resolving(dm: DistanceMatrix, landmarks: Sequence[int]) -> ResolvingReport:
    """
    Check that every vertex gets a distinct representation.

    On failure the witness is the lexicographically smallest pair (u, v)
    with r(u|W) = r(v|W).
    """
    dm.require_connected()
    landmarks = _check_landmarks(dm, landmarks)
    n = dm.num_vertices
    if n <= 1:
        return ResolvingReport(True, landmarks)
    if not landmarks:
        return ResolvingReport(False, landmarks, (0, 1))

    cols = np.ascontiguousarray(dm.dist[:, list(landmarks)])
    first_seen = {}
    paired = set()
    witness = None
    for v in range(n):
        key = cols[v].tobytes()
        u = first_seen.get(key)
        if u is None:
            first_seen[key] = v
        elif key not in paired:
            paired.add(key)
            if witness is None or u < witness[0]:
                witness = (u, v)
    if witness is None:
        return ResolvingReport(True, landmarks)
    return ResolvingReport(False, landmarks, witness)


def build_pair_table(dm: DistanceMatrix) -> PairResolverTable:
    dm.require_connected()
    n = dm.num_vertices
    dist = dm.dist
    pairs, rows = [], []
    for u in range(n - 1):
        # column u vs every later column, one bitset per pair
        differs = dist[:, u:u + 1] != dist[:, u + 1:]
        packed = np.packbits(differs.T, axis=1, bitorder="little")
        for offset, chunk in enumerate(packed):
            pairs.append((u, u + 1 + offset))
            rows.append(int.from_bytes(chunk.tobytes(), "little"))
    return PairResolverTable(num_vertices=n, pairs=tuple(pairs), rows=tuple(rows))
