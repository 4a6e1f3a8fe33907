"""
Constructions and formulas: explicit bases, component values, the
four-branch multi-cycle formula, and exact-solver agreement.
"""
import time

import pytest

from src.errors import (
    BadPartitionError,
    FamilyError,
    InvalidCombinationError,
    MTooSmallError,
    NTooSmallError,
)
from src.graphs.families import (
    FamilySpec,
    closed_form_matrix,
    component_matrix,
    cycle_layouts,
    family_distances,
    generate,
)
from src.graphs.graph_core import Side, all_pairs_distances
from src.metric.resolving import verify_resolving
from src.metric.solver import exact_metric_dimension
from src.theory.constructions import (
    construct_basis,
    crown_basis,
    hamcomp_basis,
    mirror,
    multicycle_basis,
    place_component,
    small_component_basis,
)
from src.theory.formulas import (
    classify,
    component_beta,
    formula_beta,
    slot_demand,
    theorem3_beta,
)


def partitions(n, smallest=2):
    if n == 0:
        yield ()
        return
    for first in range(smallest, n + 1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def valid_partitions(n):
    out = []
    for p in partitions(n):
        try:
            FamilySpec.multi(p)
        except FamilyError:
            continue
        out.append(p)
    return out


# --- crown and hamcomp ---------------------------------------------------------

def test_crown_basis(distances):
    assert crown_basis(3) == [0, 1]
    assert crown_basis(4) == [0, 1, 2]
    assert verify_resolving(distances("crown:n=4"), crown_basis(4)).resolving
    with pytest.raises(NTooSmallError):
        crown_basis(2)


def test_crown6_minimal(distances):
    assert len(crown_basis(6)) == exact_metric_dimension(distances("crown:n=6"))[0] == 5


def test_hamcomp_basis_examples():
    # m=5: {y1, y2, x4, x5}
    assert hamcomp_basis(5) == [3, 4, 5, 6]
    # m=7: {x4, x5, x6, y1, y2}
    assert hamcomp_basis(7) == [3, 4, 5, 7, 8]
    # m=4: {x1, y1} on C8
    assert hamcomp_basis(4) == [0, 4]
    with pytest.raises(MTooSmallError):
        hamcomp_basis(3)


def test_hamcomp_basis_sizes_and_validity(distances):
    for m in range(4, 61):
        basis = hamcomp_basis(m)
        assert len(basis) == formula_beta(FamilySpec.hamcomp(m)).beta
        assert verify_resolving(distances(f"hamcomp:m={m}"), basis).resolving, m


def test_hamcomp9_verified_by_bfs():
    dm = all_pairs_distances(generate(FamilySpec.hamcomp(9)).graph)
    basis = hamcomp_basis(9)
    assert len(basis) == 7
    assert verify_resolving(dm, basis).resolving


# --- components ------------------------------------------------------------------

def test_component_beta_values():
    assert component_beta(4, 5) == 3
    assert component_beta(3, 6) == 2
    assert component_beta(10, 12) == 8
    assert component_beta(4, 4) == 2
    assert component_beta(2, 5) == 2
    for m, n in ((2, 2), (3, 3), (3, 4), (6, 5), (1, 6)):
        with pytest.raises(InvalidCombinationError):
            component_beta(m, n)


def test_small_component_bases():
    assert small_component_basis(2, 5) == [0, 2]
    assert small_component_basis(3, 5) == [3, 4]
    assert small_component_basis(4, 4) == [0, 4]
    assert small_component_basis(4, 6) == [4, 5, 6]
    with pytest.raises(InvalidCombinationError):
        small_component_basis(3, 3)
    with pytest.raises(InvalidCombinationError):
        small_component_basis(5, 6)
    for m, n in ((2, 5), (3, 5), (4, 4), (4, 6)):
        basis = small_component_basis(m, n)
        assert len(basis) == component_beta(m, n)
        assert verify_resolving(component_matrix(m, n), basis).resolving


def test_small_components_are_minimal():
    for m, n in ((2, 5), (3, 5), (4, 4), (4, 6), (6, 8)):
        assert exact_metric_dimension(component_matrix(m, n))[0] == component_beta(m, n)


def test_mirror_swaps_sides():
    layout = cycle_layouts(FamilySpec.hamcomp(5))[0]
    basis = hamcomp_basis(5)
    flipped = mirror(layout, basis)
    sides = [layout.side_at(layout.position(v)) for v in basis]
    flipped_sides = [layout.side_at(layout.position(v)) for v in flipped]
    assert all(a != b for a, b in zip(sides, flipped_sides))
    assert verify_resolving(closed_form_matrix(FamilySpec.hamcomp(5)), flipped).resolving


# --- the multi-cycle formula ---------------------------------------------------------

def test_classification():
    assert [classify(m) for m in (2, 5, 10, 6, 11, 3, 4, 7, 8, 9)] == \
        ["k1", "k1", "k1", "k2", "k2", "k3", "k3", "k3", "k3", "k3"]
    assert [slot_demand(m, 20) for m in (2, 3, 4, 5, 6, 7, 8, 9, 10)] == [0, 1, 1, 0, 2, 2, 1, 1, 0]


def test_theorem3_examples():
    r = theorem3_beta((4,))
    assert (r.beta, r.case_tag) == (2, "Thm3 case 1 of 4 (n=4)")

    r = theorem3_beta((2, 3))
    assert (r.beta, r.components, r.k1, r.k3) == (4, (2, 2), 1, 1)
    assert r.case_tag == "Thm3 case 2 of 4"

    r = theorem3_beta((3, 4))
    assert (r.beta, r.case_tag) == (5, "Thm3 case 3 of 4")

    r = theorem3_beta((2, 3, 4))
    assert (r.beta, r.case_tag) == (7, "Thm3 case 3 of 4")

    r = theorem3_beta((6, 3))
    assert (r.beta, r.case_tag, r.k2, r.k3) == (7, "Thm3 case 4 of 4", 1, 1)

    with pytest.raises(BadPartitionError):
        theorem3_beta((1, 5))


def test_k_counts_sum_to_r():
    for n in range(4, 16):
        for p in valid_partitions(n):
            r = theorem3_beta(p)
            assert r.k1 + r.k2 + r.k3 == len(p)


def test_slot_accounting_matches_formula_for_small_hosts():
    for n in range(4, 10):
        for p in valid_partitions(n):
            assert theorem3_beta(p).agrees, p


def test_slot_accounting_on_seven_three():
    r = theorem3_beta((7, 3))
    assert r.beta == 7
    assert r.assembled_beta == 8
    assert not r.agrees
    assert r.to_dict()["assembled_beta"] == 8


def test_formula_dispatch():
    assert formula_beta(FamilySpec.crown(5)).to_dict() == {"beta": 4, "case_tag": "Thm1"}
    assert formula_beta(FamilySpec.hamcomp(8)).beta == 6
    assert formula_beta(FamilySpec.hamcomp(4)).beta == 2
    assert formula_beta(FamilySpec.multi((2, 3))).beta == 4


# --- multi-cycle assembly ------------------------------------------------------------

def test_multicycle_examples(distances):
    assert multicycle_basis((2, 3)) == [0, 5, 7, 8]
    assert len(multicycle_basis((5, 5))) == 8
    assert len(multicycle_basis((3, 3))) == 4
    assert multicycle_basis((4,)) == [0, 4]
    assert verify_resolving(distances("multi:m=4"), [0, 4]).resolving


def test_three_three_uses_both_sides():
    spec = FamilySpec.multi((3, 3))
    basis = multicycle_basis((3, 3))
    sides = set()
    for layout in cycle_layouts(spec):
        for v in layout.vertices:
            pos = layout.position(v)
            if v not in basis and layout.at(pos - 1) not in basis and layout.at(pos + 1) not in basis:
                sides.add(layout.side_at(pos))
    assert sides == {Side.X, Side.Y}


BRANCH_SPOT_CHECKS = [(3, 3), (3, 4), (2, 3, 4), (6, 3)]


def test_exact_matches_theorem3():
    """All partitions of 4..8 into parts >= 2, plus spot checks; all four branches fire."""
    branches = {}
    instances = [p for n in range(4, 9) for p in valid_partitions(n)] + BRANCH_SPOT_CHECKS
    start = time.perf_counter()
    for p in instances:
        spec = FamilySpec.multi(p)
        result = theorem3_beta(p)
        beta, _ = exact_metric_dimension(family_distances(spec))
        assert beta == result.beta, p
        basis = multicycle_basis(p)
        assert len(basis) == beta
        branches.setdefault(result.case_tag.split(" of")[0], []).append(p)
    assert sorted(branches) == ["Thm3 case 1", "Thm3 case 2", "Thm3 case 3", "Thm3 case 4"]
    for tag, hits in sorted(branches.items()):
        print(f"{tag}: {hits}")
    print(f"✅ {len(instances)} multi-cycle instances in {time.perf_counter() - start:.1f}s")


def _local_ids(spec, block, basis):
    """Landmarks of one removed cycle, renumbered into that component's own ids."""
    layout = cycle_layouts(spec)[block]
    m = layout.half_length
    out = []
    for v in basis:
        if v in layout:
            pos = layout.position(v)
            out.append(pos // 2 if pos % 2 == 0 else m + pos // 2)
    return out


def test_component_restriction_resolves_component():
    """A host basis restricted to one cycle still resolves that component on its own."""
    for n in range(5, 9):
        for p in valid_partitions(n):
            spec = FamilySpec.multi(p)
            _, basis = exact_metric_dimension(family_distances(spec))
            for block, m in enumerate(p):
                local = _local_ids(spec, block, basis)
                assert len(local) >= component_beta(m, n), (p, block)
                assert verify_resolving(component_matrix(m, n), local).resolving, (p, block)


def test_place_component_round_trip():
    spec = FamilySpec.multi((2, 3, 5))
    layout = cycle_layouts(spec)[2]
    placed = place_component(layout, hamcomp_basis(5))
    assert sorted(_local_ids(spec, 2, placed)) == hamcomp_basis(5)


@pytest.mark.slow
def test_seven_three_needs_eight():
    dm = family_distances(FamilySpec.multi((7, 3)))
    beta, _ = exact_metric_dimension(dm)
    assert beta == 8
    basis = multicycle_basis((7, 3))
    assert len(basis) == 8
    assert verify_resolving(dm, basis).resolving


@pytest.mark.slow
def test_hamcomp10_minimal(distances):
    assert exact_metric_dimension(distances("hamcomp:m=10"))[0] == 8


# --- scale -----------------------------------------------------------------------------

def _scale_grid(rng, max_n, samples):
    specs = [FamilySpec.crown(n) for n in (3, 10, 57, 333, max_n)]
    # every residue of m mod 5, near the bottom and near the top
    for r in range(5):
        specs.append(FamilySpec.hamcomp(5 + r))
        specs.append(FamilySpec.hamcomp(max_n - 4 + r))
    ms = rng.integers(5, max_n + 1, size=samples // 3)
    specs += [FamilySpec.hamcomp(int(m)) for m in ms]
    while len(specs) < samples:
        n = int(rng.integers(5, max_n + 1))
        parts = []
        while sum(parts) < n:
            parts.append(int(rng.integers(2, 40)))
        parts[-1] -= sum(parts) - n
        if parts[-1] < 2:
            last = parts.pop()
            parts[-1] += last
        assert sum(parts) == n
        specs.append(FamilySpec.multi(parts))
    return specs


def test_scale_grid_partitions_sum_to_n(rng):
    """Every sampled multi-cycle host splits its drawn n into cycles of length >= 2."""
    specs = _scale_grid(rng, 200, 120)
    multis = [s for s in specs if s.kind == "multi"]
    assert multis
    for spec in multis:
        assert sum(spec.params) == spec.n
        assert min(spec.params) >= 2


def _check_scale(specs):
    for spec in specs:
        basis = construct_basis(spec)
        report = verify_resolving(closed_form_matrix(spec), basis)
        assert report.resolving, str(spec)
        expected = formula_beta(spec)
        assert len(basis) == expected.constructed_size, str(spec)


def test_constructions_at_moderate_scale(rng):
    _check_scale(_scale_grid(rng, 60, 50))


@pytest.mark.slow
def test_constructions_at_full_scale(rng, cfg):
    checks = cfg["checks"]
    specs = _scale_grid(rng, checks["scale_max_n"], checks["scale_samples"])
    assert len(specs) >= 50
    assert {s.n % 5 for s in specs if s.kind == "hamcomp"} == set(range(5))
    start = time.perf_counter()
    _check_scale(specs)
    assert time.perf_counter() - start < 60
    print(f"✅ {len(specs)} constructions verified up to n = {checks['scale_max_n']}")
