"""
Explicit bases for the three families.

Component builders return ids in the component's own numbering
(x_i -> i-1, y_i -> m+i-1). multicycle_basis places each component on
its removed cycle, trades deep-vertex slots between components, and
verifies the assembled set against closed-form distances before
returning it.
"""
import logging
from typing import List

from src.errors import AssemblyFailedError, InvalidCombinationError, MTooSmallError
from src.graphs.families import (
    CROWN,
    HAMCOMP,
    FamilySpec,
    closed_form_matrix,
    cycle_layouts,
)
from src.metric.resolving import verify_resolving
from src.theory.formulas import component_beta, theorem3_beta
from src.theory.gaps import check_facts, check_multicycle_conditions, gap_decompose

log = logging.getLogger(__name__)


def crown_basis(n: int) -> List[int]:
    """{x_1, ..., x_{n-1}}."""
    spec = FamilySpec.crown(n)
    return list(range(spec.n - 1))


def hamcomp_basis(m: int) -> List[int]:
    """
    Blocks of five cycle steps carry y_{5j+1}, y_{5j+2}, x_{5j+4}, x_{5j+5};
    the residue of m mod 5 decides the tail. m = 4 falls back to a C8 basis.
    """
    if m < 4:
        raise MTooSmallError(f"hamcomp needs m >= 4, got {m}")

    def x(i):
        return i - 1

    def y(i):
        return m + i - 1

    if m == 4:
        return [x(1), y(1)]
    k, r = divmod(m, 5)
    ids = []
    for j in range(k):
        ids += [y(5 * j + 1), y(5 * j + 2), x(5 * j + 4), x(5 * j + 5)]
    if r == 2:
        ids.append(x(5 * k + 1))
    elif r == 3:
        ids += [y(5 * k + 1), y(5 * k + 2)]
    elif r == 4:
        ids += [y(5 * k + 1), y(5 * k + 2), y(5 * k + 3)]
    return sorted(ids)


def small_component_basis(m: int, host_n: int) -> List[int]:
    """Bases of the m = 2, 3, 4 components under the component metric."""
    if m not in (2, 3, 4):
        raise InvalidCombinationError(f"small components have m in 2..4, got {m}")
    component_beta(m, host_n)
    if m == 2:
        return [0, 2]                  # {x1, y1}
    if m == 3:
        return [3, 4]                  # {y1, y2}
    if host_n == 4:
        return [0, 4]                  # {x1, y1} on C8
    return [4, 5, 6]                   # {y1, y2, y3}


def place_component(layout, local_ids) -> List[int]:
    """Map component ids onto the global ids of ``layout`` (x_i at 2(i-1), y_i at 2i-1)."""
    m = layout.half_length
    return [layout.at(2 * v if v < m else 2 * (v - m) + 1) for v in local_ids]


def _component_basis(m: int, host_n: int) -> List[int]:
    return small_component_basis(m, host_n) if m <= 4 else hamcomp_basis(m)


def mirror(layout, landmarks):
    """Shift every landmark one step along its cycle; the x and y roles swap."""
    return [layout.at(layout.position(v) + 1) for v in landmarks]


def augment(layout, landmarks):
    """Add the second interior vertex of every gap holding three or more vertices."""
    structure = gap_decompose(layout, landmarks)
    extra = [g.interior[1] for g in structure.gaps if g.size >= 3]
    return list(landmarks) + extra


def _plan_slots(demands, deep_sides):
    """
    Decide which components keep their deep vertices.

    Returns (keep, flip): component indices that keep their basis as is,
    and those kept but mirrored so two single-slot components use
    different sides. Every other component with demand is augmented.
    """
    ones = [i for i, d in enumerate(demands) if d == 1]
    twos = [i for i, d in enumerate(demands) if d == 2]
    keep, flip = set(), set()
    if len(ones) >= 2:
        first, second = ones[0], ones[1]
        keep.update((first, second))
        if deep_sides[first] == deep_sides[second]:
            flip.add(second)
    elif ones:
        keep.add(ones[0])
    elif twos:
        keep.add(twos[0])
    return keep, flip


def multicycle_basis(partition, verify: bool = True) -> List[int]:
    spec = FamilySpec.multi(partition)
    n = spec.n
    if n == 4:
        return [0, 4]
    layouts = cycle_layouts(spec)

    placed, demands, deep_sides = [], [], []
    for layout, m in zip(layouts, spec.params):
        ids = place_component(layout, _component_basis(m, n))
        deep = gap_decompose(layout, ids).deep_vertices()
        placed.append(ids)
        demands.append(len(deep))
        deep_sides.append(deep[0][1] if deep else None)

    keep, flip = _plan_slots(demands, deep_sides)
    landmarks = []
    for i, (layout, ids) in enumerate(zip(layouts, placed)):
        if i in flip:
            ids = mirror(layout, ids)
        elif demands[i] and i not in keep:
            ids = augment(layout, ids)
        landmarks.extend(ids)
    landmarks.sort()

    expected = theorem3_beta(spec.params).constructed_size
    if len(landmarks) != expected:
        raise AssemblyFailedError(
            f"{spec}: assembled {len(landmarks)} landmarks, slot accounting gives {expected}")
    if verify:
        _post_verify(spec, layouts, landmarks)
    log.debug("%s: assembled %d landmarks (kept %s, mirrored %s)",
              spec, len(landmarks), sorted(keep), sorted(flip))
    return landmarks


def _post_verify(spec, layouts, landmarks):
    audits = [check_facts(gap_decompose(layout, landmarks)) for layout in layouts]
    audit = check_multicycle_conditions(audits)
    if not (audit.facts_hold and audit.conditions_hold):
        raise AssemblyFailedError(f"{spec}: gap audit failed: {'; '.join(audit.violations)}")
    report = verify_resolving(closed_form_matrix(spec), landmarks)
    if not report.resolving:
        raise AssemblyFailedError(f"{spec}: vertices {report.witness} share a representation")


def construct_basis(spec: FamilySpec) -> List[int]:
    """Theorem-backed landmark set for any family spec, as sorted global ids."""
    if spec.kind == CROWN:
        return crown_basis(spec.n)
    if spec.kind == HAMCOMP:
        return hamcomp_basis(spec.n)
    return multicycle_basis(spec.params)
