"""Assemble KO-groups (and the matching Grothendieck-Witt / Witt groups).

For a complex with even cells only, the free ranks of KO^{2i} come from cell
counts by degree mod 4, every odd group is an F_2-vector space, and
KO^{2i} = free part + KO^{2i+1}. When the Atiyah-Hirzebruch spectral sequence
collapses after d_2 = Sq^2 (+ c_1 of the twist), the odd group KO^{2i-1} is the
sum of H^{2i+8k}(X, Sq^2 + c_1) over k >= 0.

Bookkeeping used throughout: s_j is the total dimension of the twisted DGA
cohomology in degrees congruent to 2j mod 8, and

    KO^7 = (Z/2)^s0 = W^0     KO^6 = Z^t1 + (Z/2)^s0 = GW^3
    KO^1 = (Z/2)^s1 = W^1     KO^0 = Z^t0 + (Z/2)^s1 = GW^0
    KO^3 = (Z/2)^s2 = W^2     KO^2 = Z^t1 + (Z/2)^s2 = GW^1
    KO^5 = (Z/2)^s3 = W^3     KO^4 = Z^t0 + (Z/2)^s3 = GW^2
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING

from .dga_cohomology import cohomology_dims
from .graded_algebra import Presentation, poincare_dims
from .steenrod import Differential

if TYPE_CHECKING:
    from .catalog import SpaceData

CONDITIONAL = "conditional on E3-degeneration of the Atiyah-Hirzebruch spectral sequence (not verified)"


@dataclass(frozen=True)
class KOTable:
    t0: int
    t1: int
    s: tuple[int, int, int, int]
    twist_label: str = "O"
    space: str = field(default="", compare=False)
    degeneration_assumed: bool = field(default=True, compare=False)
    citation: str = field(default=CONDITIONAL, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "s", tuple(int(x) for x in self.s))
        if len(self.s) != 4:
            raise ValueError("need exactly four torsion exponents s0..s3")

    def numbers(self) -> tuple[int, int, int, int, int, int]:
        return (self.t0, self.t1, *self.s)


def group(free: int, torsion: int) -> str:
    """Format Z^free + (Z/2)^torsion, e.g. ``Z^2 ⊕ Z/2``; ``0`` for the trivial group."""
    parts = []
    if free:
        parts.append("Z" if free == 1 else f"Z^{free}")
    if torsion:
        parts.append("Z/2" if torsion == 1 else f"(Z/2)^{torsion}")
    return " ⊕ ".join(parts) or "0"


def ko_groups(table: KOTable) -> dict[str, str]:
    t0, t1 = table.t0, table.t1
    s0, s1, s2, s3 = table.s
    return {
        "KO0": group(t0, s1), "KO1": group(0, s1),
        "KO2": group(t1, s2), "KO3": group(0, s2),
        "KO4": group(t0, s3), "KO5": group(0, s3),
        "KO6": group(t1, s0), "KO7": group(0, s0),
    }


def gw_w_groups(table: KOTable) -> dict[str, str]:
    ko = ko_groups(table)
    return {
        "GW0": ko["KO0"], "GW1": ko["KO2"], "GW2": ko["KO4"], "GW3": ko["KO6"],
        "W0": ko["KO7"], "W1": ko["KO1"], "W2": ko["KO3"], "W3": ko["KO5"],
    }


def render(table: KOTable, convention: str = "KO") -> list[tuple[str, str]]:
    """Labelled group descriptors, KO^0..KO^7 or GW^0..GW^3 followed by W^0..W^3."""
    if convention == "KO":
        groups = ko_groups(table)
    elif convention in ("GW_W", "GW/W", "GW"):
        groups = gw_w_groups(table)
    else:
        raise ValueError(f"unknown convention {convention!r}")
    return [(f"{key[:-1]}^{key[-1]}", g) for key, g in groups.items()]


def betti_mod4_split(p: Presentation) -> tuple[int, int]:
    t0 = t1 = 0
    for d, n in poincare_dims(p):
        if d % 4 == 0:
            t0 += n
        else:
            t1 += n
    return t0, t1


def torsion_exponents(dims: dict[int, int]) -> tuple[int, int, int, int]:
    s = [0, 0, 0, 0]
    for d, n in dims.items():
        s[(d % 8) // 2] += n
    return tuple(s)


def ko_table(space: "SpaceData", twist: str | None = None) -> KOTable:
    """KO-table of ``space`` twisted by the named line bundle (trivial when ``None``)."""
    label, c = space.twist(twist)
    p = space.presentation
    t0, t1 = betti_mod4_split(p)
    dims = cohomology_dims(p, Differential(space.sq2, c))
    return KOTable(t0, t1, torsion_exponents(dims.dims), label, space.space_id,
                   True, space.degeneration_citation)
