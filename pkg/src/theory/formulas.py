"""
Closed-form metric dimension for crown graphs, Hamiltonian-cycle
complements and multi-cycle complements. Pure arithmetic: no graph is
ever built here, so m in the thousands costs nothing.
"""
from dataclasses import dataclass
from typing import Optional, Tuple

from src.errors import InvalidCombinationError
from src.graphs.families import CROWN, HAMCOMP, FamilySpec


@dataclass(frozen=True)
class DimensionFormulaResult:
    beta: int
    case_tag: str
    components: Tuple[int, ...] = ()
    k1: int = 0
    k2: int = 0
    k3: int = 0
    slot_demands: Tuple[int, ...] = ()
    assembled_beta: Optional[int] = None

    @property
    def constructed_size(self) -> int:
        """Size of the landmark set the construction actually assembles."""
        return self.beta if self.assembled_beta is None else self.assembled_beta

    @property
    def agrees(self) -> bool:
        return self.constructed_size == self.beta

    def to_dict(self) -> dict:
        out = {"beta": self.beta, "case_tag": self.case_tag}
        if self.components:
            out.update({
                "components": list(self.components),
                "k1": self.k1, "k2": self.k2, "k3": self.k3,
                "slot_demands": list(self.slot_demands),
                "assembled_beta": self.constructed_size,
            })
        return out


def classify(m: int) -> str:
    """'k1' for m = 2 or m = 0 mod 5, 'k2' for m = 1 mod 5, 'k3' otherwise."""
    if m == 2 or m % 5 == 0:
        return "k1"
    if m % 5 == 1:
        return "k2"
    return "k3"


def component_beta(m: int, host_n: int) -> int:
    """Metric dimension of one cycle-complement component under the component metric."""
    if m < 2 or host_n < m:
        raise InvalidCombinationError(f"component m = {m} cannot sit in a host with n = {host_n}")
    if m in (2, 3):
        if host_n < 5:
            raise InvalidCombinationError(f"m = {m} with n = {host_n} gives a disconnected host")
        return 2
    if m == 4:
        return 2 if host_n == 4 else 3
    return 4 * m // 5


def slot_demand(m: int, host_n: int) -> int:
    """
    Deep vertices (one per side at most, host-wide) that a component's
    cheapest basis leaves behind: 0, 1 or 2.
    """
    if m == 2 or m % 5 == 0 or host_n == 4:
        return 0
    if m in (3, 4) or m % 5 in (3, 4):
        return 1
    return 2


def _assembly_surcharge(demands) -> int:
    ones = sum(1 for d in demands if d == 1)
    twos = sum(1 for d in demands if d == 2)
    if ones >= 2:
        return ones + twos - 2
    if ones + twos >= 1:
        return ones + twos - 1
    return 0


def theorem3_beta(partition) -> DimensionFormulaResult:
    """Four-branch formula for K_{n,n} minus disjoint cycles of half-lengths m_i."""
    spec = FamilySpec.multi(partition)
    parts = spec.params
    n, r = spec.n, len(parts)
    kinds = [classify(m) for m in parts]
    k1, k2, k3 = (kinds.count(k) for k in ("k1", "k2", "k3"))

    if n == 4:
        return DimensionFormulaResult(
            beta=2, case_tag="Thm3 case 1 of 4 (n=4)", components=(2,),
            k1=k1, k2=k2, k3=k3, slot_demands=(0,), assembled_beta=2)

    components = tuple(component_beta(m, n) for m in parts)
    demands = tuple(slot_demand(m, n) for m in parts)
    total = sum(components)
    if k1 in (r - 1, r) or r == 1:
        beta, case = total, 2
    elif k3 >= 2:
        beta, case = total + k2 + k3 - 2, 3
    else:
        beta, case = total + k2 + k3 - 1, 4
    return DimensionFormulaResult(
        beta=beta,
        case_tag=f"Thm3 case {case} of 4",
        components=components,
        k1=k1, k2=k2, k3=k3,
        slot_demands=demands,
        assembled_beta=total + _assembly_surcharge(demands),
    )


def formula_beta(spec: FamilySpec) -> DimensionFormulaResult:
    if spec.kind == CROWN:
        return DimensionFormulaResult(beta=spec.n - 1, case_tag="Thm1")
    if spec.kind == HAMCOMP:
        m = spec.n
        if m == 4:
            return DimensionFormulaResult(beta=2, case_tag="C8 (even cycle)")
        return DimensionFormulaResult(beta=4 * m // 5, case_tag=f"Thm2 (m mod 5 = {m % 5})")
    return theorem3_beta(spec.params)
