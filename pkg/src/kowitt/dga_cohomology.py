"""Cohomology of (H*(X; Z/2), Sq^2 + c), degree by degree."""

from __future__ import annotations

from dataclasses import dataclass, field

from .f2linalg import F2Matrix, echelon_rows, kernel_basis, rank, span_reduce
from .graded_algebra import Element, Presentation
from .steenrod import Differential, differential_matrix


@dataclass(frozen=True)
class CohomologyDims:
    dims: dict[int, int]
    representatives: dict[int, list[Element]] | None = field(default=None, compare=False)

    def __getitem__(self, degree: int) -> int:
        return self.dims.get(degree, 0)

    def total(self) -> int:
        return sum(self.dims.values())

    def nonzero(self) -> dict[int, int]:
        return {d: n for d, n in self.dims.items() if n}


def _maps(p: Presentation, d: Differential, degree: int) -> tuple[F2Matrix, F2Matrix]:
    """(incoming map into ``degree``, outgoing map out of ``degree``)."""
    dim = p.dim(degree)
    incoming = differential_matrix(d, degree - 2) if degree > 0 else F2Matrix.zeros(dim, 0)
    outgoing = differential_matrix(d, degree) if degree < p.top_degree else F2Matrix.zeros(0, dim)
    return incoming, outgoing


def cohomology_representatives(p: Presentation, d: Differential, degree: int) -> list[Element]:
    """Cocycles whose classes form a basis of H^degree.

    The image is put in echelon form, then kernel basis vectors (themselves in
    echelon order) are reduced against it one at a time and kept when they are
    new; the reduced vector is what is returned.
    """
    if degree < 0 or degree > p.top_degree or degree % 2:
        return []
    incoming, outgoing = _maps(p, d, degree)
    echelon, pivots = echelon_rows(incoming.transpose().bits)
    reps = []
    for v in kernel_basis(outgoing):
        r = span_reduce(v, echelon, pivots)
        if not r:
            continue
        reps.append(Element(degree, r))
        echelon, pivots = echelon_rows(echelon + [r])
    return reps


def cohomology_dims(p: Presentation, d: Differential, representatives: bool = False) -> CohomologyDims:
    dims = {}
    for k in range(0, p.top_degree + 1, 2):
        incoming, outgoing = _maps(p, d, k)
        dims[k] = p.dim(k) - rank(outgoing) - rank(incoming)
    reps = None
    if representatives:
        reps = {k: cohomology_representatives(p, d, k) for k in dims if dims[k]}
    return CohomologyDims(dims, reps)
