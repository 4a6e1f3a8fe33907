"""
Gap calculus on the removed cycle(s) of a cycle-complement host.

Landmarks that are consecutive along a removed cycle bound a gap: the
cycle vertices strictly between them. Facts (i)-(v) are checked per
cycle; conditions (a)-(c) repeat (ii), (iv) and (v) across all cycles of
a multi-cycle host.
"""
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, Iterable, Optional, Sequence, Tuple, Union

from src.errors import MTooSmallError, TooFewLandmarksOnCycleError
from src.graphs.families import CycleLayout
from src.graphs.graph_core import Side

FACTS = ("i", "ii", "iii", "iv", "v")


@dataclass(frozen=True)
class Gap:
    start: int
    end: int
    interior: Tuple[int, ...]
    start_side: Side
    end_side: Side

    @property
    def size(self) -> int:
        return len(self.interior)

    def deep(self) -> Tuple[int, ...]:
        """Interior vertices whose two cycle neighbours are both non-landmarks."""
        return self.interior[1:-1]


@dataclass(frozen=True)
class GapStructure:
    layout: CycleLayout
    landmarks: Tuple[int, ...]
    gaps: Tuple[Gap, ...]

    @property
    def sizes(self) -> Tuple[int, ...]:
        return tuple(g.size for g in self.gaps)

    def neighboring(self, j: int) -> Tuple[Gap, Gap]:
        k = len(self.gaps)
        return self.gaps[(j - 1) % k], self.gaps[(j + 1) % k]

    def deep_vertices(self) -> Tuple[Tuple[int, Side], ...]:
        out = []
        for gap in self.gaps:
            for v in gap.deep():
                out.append((v, self.layout.side_at(self.layout.position(v))))
        return tuple(out)


@dataclass(frozen=True)
class GapAudit:
    facts: Dict[str, bool]
    conditions: Optional[Dict[str, bool]] = None
    histogram: Dict[int, int] = field(default_factory=dict)
    violations: Tuple[str, ...] = ()
    records: Tuple[Tuple[int, Gap], ...] = ()

    @property
    def facts_hold(self) -> bool:
        return all(self.facts.values())

    @property
    def conditions_hold(self) -> bool:
        return self.conditions is not None and all(self.conditions.values())

    @property
    def num_cycles(self) -> int:
        return len({c for c, _ in self.records})

    def to_dict(self) -> dict:
        out = {"facts": dict(self.facts)}
        if self.conditions is not None:
            out["conditions"] = dict(self.conditions)
        out["histogram"] = {str(k): v for k, v in sorted(self.histogram.items())}
        out["violations"] = list(self.violations)
        return out


def gap_decompose(layout: CycleLayout, landmarks: Iterable[int]) -> GapStructure:
    """Split the cycle at the landmarks lying on it, in cyclic order from position 0."""
    positions = sorted({layout.position(v) for v in landmarks if v in layout})
    if len(positions) < 2:
        raise TooFewLandmarksOnCycleError(
            f"cycle through {layout.vertices[0]} carries {len(positions)} landmark(s), need 2")
    k, length = len(positions), len(layout)
    gaps = []
    for i, p in enumerate(positions):
        q = positions[(i + 1) % k] + (length if i == k - 1 else 0)
        gaps.append(Gap(
            start=layout.at(p),
            end=layout.at(q),
            interior=tuple(layout.at(t) for t in range(p + 1, q)),
            start_side=layout.side_at(p),
            end_side=layout.side_at(q),
        ))
    return GapStructure(layout, tuple(layout.at(p) for p in positions), tuple(gaps))


def _describe(cycle: int, gap: Gap) -> str:
    return f"cycle {cycle} gap {gap.start}->{gap.end} ({gap.size} vertices)"


def _large_gap_rules(records):
    """(ii)/(a), (iv)/(b), (v)/(c) over a collection of (cycle, gap) records."""
    fours = [(c, g) for c, g in records if g.size == 4]
    threes = [(c, g) for c, g in records if g.size == 3]
    sides = [g.start_side for _, g in threes]
    problems = []
    at_most_one_four = len(fours) <= 1
    if not at_most_one_four:
        problems.append("more than one 4-gap: " + "; ".join(_describe(c, g) for c, g in fours))
    threes_split = len(sides) == len(set(sides))
    if not threes_split:
        problems.append("3-gaps share an end-point side: "
                        + "; ".join(_describe(c, g) for c, g in threes))
    exclusive = not (threes and fours)
    if not exclusive:
        problems.append("3-gap and 4-gap coexist")
    return at_most_one_four, threes_split, exclusive, problems


def _audit_cycle(cycle: int, gs: GapStructure):
    records = [(cycle, g) for g in gs.gaps]
    problems = []

    small = all(g.size <= 4 for g in gs.gaps)
    for g in gs.gaps:
        if g.size > 4:
            problems.append(f"(i) {_describe(cycle, g)}")

    isolated = True
    for j, g in enumerate(gs.gaps):
        if g.size >= 2 and any(nb.size > 1 for nb in gs.neighboring(j)):
            isolated = False
            problems.append(f"(iii) {_describe(cycle, g)} has a neighbouring gap above 1")

    four, three, excl, extra = _large_gap_rules(records)
    problems.extend(extra)
    facts = {"i": small, "ii": four, "iii": isolated, "iv": three, "v": excl}
    return facts, records, problems


def check_facts(structures: Union[GapStructure, Sequence[GapStructure]]) -> GapAudit:
    """Evaluate facts (i)-(v) on each cycle; a fact holds when it holds on every cycle."""
    if isinstance(structures, GapStructure):
        structures = [structures]
    facts = {name: True for name in FACTS}
    records, violations = [], []
    for cycle, gs in enumerate(structures):
        cycle_facts, cycle_records, problems = _audit_cycle(cycle, gs)
        for name in FACTS:
            facts[name] = facts[name] and cycle_facts[name]
        records.extend(cycle_records)
        violations.extend(problems)
    histogram = dict(sorted(Counter(g.size for _, g in records).items()))
    return GapAudit(facts=facts, histogram=histogram,
                    violations=tuple(violations), records=tuple(records))


def check_multicycle_conditions(audits: Sequence[GapAudit]) -> GapAudit:
    """Global (a)-(c) over every cycle's gaps, alongside the per-cycle facts."""
    facts = {name: all(a.facts[name] for a in audits) for name in FACTS}
    records, violations, offset = [], [], 0
    for audit in audits:
        records.extend((offset + c, g) for c, g in audit.records)
        violations.extend(audit.violations)
        offset += max(audit.num_cycles, 1)

    four, three, excl, problems = _large_gap_rules(records)
    conditions = {"a": four, "b": three, "c": excl}
    violations.extend(f"global {p}" for p in problems)
    histogram = dict(sorted(Counter(g.size for _, g in records).items()))
    return GapAudit(facts=facts, conditions=conditions, histogram=histogram,
                    violations=tuple(violations), records=tuple(records))


def counting_lower_bound(m: int) -> int:
    """
    Smallest landmark count s whose gaps can hold the other 2m - s cycle vertices.

    With s = 2l, at most l gaps exceed one vertex, giving room for 3l + 2;
    with s = 2l + 1 the extra one-vertex gap gives room for 3l + 3.
    """
    if m < 5:
        raise MTooSmallError(f"gap counting needs m >= 5, got {m}")
    s = 1
    while True:
        l, odd = divmod(s, 2)
        room = 3 * l + (3 if odd else 2)
        if 2 * m - s <= room:
            return s
        s += 1
