"""End-to-end homology: complex, specialization, Smith normal forms.

Divisors of Laurent homology are reported modulo units of the Laurent ring:
powers of t are stripped and the result is made monic, so (t^3 - t^2) prints
as (t - 1).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .coefficients import (
    CoefficientSystem,
    cyclotomic_factorization,
    format_cyclotomic,
    specialize,
)
from .gaussian import AtomOrdering, GaussianStructure
from .linalg import HomologyGroup, homology_at
from .resolution import CellComplex, build_complex
from .rings import poly_monic, poly_str, poly_valuation


def default_max_dim(struct: GaussianStructure) -> int:
    """Number of atoms at the busiest object, capped at 8."""
    busiest = max((len(t) for t in struct.atoms_by_target), default=0)
    return min(busiest, 8)


def laurent_normalize(group: HomologyGroup) -> HomologyGroup:
    """Normalize polynomial divisors by the units of the Laurent ring."""
    field = group.domain.field
    torsion = []
    for d in group.torsion:
        v = poly_valuation(d)
        stripped = poly_monic(field, d[v:])[1]
        if len(stripped) > 1:
            torsion.append(stripped)
    return HomologyGroup(group.free_rank, torsion, group.domain, group.notes)


@dataclass
class HomologyResult:
    structure: GaussianStructure
    system: CoefficientSystem
    cell_complex: CellComplex
    groups: list[HomologyGroup]  # degrees 0..max_dim


def compute_homology(
    struct: GaussianStructure,
    system: CoefficientSystem,
    ordering: Optional[AtomOrdering] = None,
    max_dim: Optional[int] = None,
    memo: bool = True,
    clearing: str = "column",
) -> HomologyResult:
    """Homology of the structure's group(oid) in degrees 0..max_dim.

    Cells are enumerated one dimension beyond max_dim so that the incoming
    boundary at the top degree is present.  In degree 0 the outgoing map is
    absent (the resolution continues by the augmentation, which imposes no
    relations on homology), so H_0 is the cokernel of the first boundary.
    """
    if max_dim is None:
        max_dim = default_max_dim(struct)
    cx = build_complex(struct, ordering, max_dim + 1, memo=memo)
    mats = specialize(cx, system, clearing=clearing)
    domain = system.domain()
    groups = []
    for n in range(max_dim + 1):
        b_out = mats[n] if 1 <= n < len(mats) else None
        b_in = mats[n + 1] if n + 1 < len(mats) else None
        group = homology_at(b_in, b_out, len(cx.cells[n]), domain)
        if system.kind == "laurent":
            group = laurent_normalize(group)
        groups.append(group)
    return HomologyResult(struct, system, cx, groups)


# -- formatting -------------------------------------------------------------------


def format_group(group: HomologyGroup, system: CoefficientSystem) -> str:
    if system.kind == "laurent":
        return _format_laurent(group, system)
    parts = []
    if group.free_rank == 1:
        parts.append("Z")
    elif group.free_rank > 1:
        parts.append(f"Z^{group.free_rank}")
    parts.extend(f"Z_{d}" for d in group.torsion)
    return " x ".join(parts) if parts else "0"


def _format_laurent(group: HomologyGroup, system: CoefficientSystem) -> str:
    field = system.field
    ring = f"{field.name}[t,t^-1]"
    parts = []
    if group.free_rank == 1:
        parts.append(ring)
    elif group.free_rank > 1:
        parts.append(f"{ring}^{group.free_rank}")
    for d in group.torsion:
        factors = cyclotomic_factorization(d, field)
        shown = poly_str(field, d)
        if factors:
            shown += f" = {format_cyclotomic(factors)}"
        parts.append(f"{ring}/({shown})")
    return " (+) ".join(parts) if parts else "0"


def torsion_csv(group: HomologyGroup, system: CoefficientSystem) -> str:
    if system.kind == "laurent":
        return "|".join(poly_str(system.field, d) for d in group.torsion)
    return "|".join(str(d) for d in group.torsion)


def cyclotomic_csv(group: HomologyGroup, system: CoefficientSystem) -> str:
    if system.kind != "laurent":
        return ""
    cols = []
    for d in group.torsion:
        factors = cyclotomic_factorization(d, system.field)
        cols.append(format_cyclotomic(factors) if factors else "-")
    return "|".join(cols)
