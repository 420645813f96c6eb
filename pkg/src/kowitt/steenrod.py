"""Sq^2 as a derivation on a presented algebra, and the twisted differential Sq^2 + c.

On a space whose mod-2 cohomology sits in even degrees Sq^1 vanishes, so the
Cartan formula for Sq^2 collapses to the Leibniz rule and Sq^2 is determined by
its values on generators.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .f2linalg import F2Matrix
from .graded_algebra import (
    Element,
    Poly,
    Presentation,
    basis_of_degree,
    multiply,
    normal_form,
    poly_degree,
)


class SteenrodError(ValueError):
    """Generator data that does not define a valid Sq^2."""


def wu_sq2(i: int, prefix: str, rank: int) -> str:
    """Sq^2 of the i-th Chern class of a rank-``rank`` bundle, as text.

    Wu formula mod 2: Sq^2(c_i) = c_1 c_i + (i - 1) c_{i+1}, with c_{rank+1} = 0.
    """
    terms = [f"{prefix}1*{prefix}{i}"]
    if (i - 1) % 2 and i + 1 <= rank:
        terms.append(f"{prefix}{i + 1}")
    return " + ".join(terms)


def derivation_poly(values: tuple[Poly, ...], poly: Poly) -> Poly:
    """Apply the derivation with generator images ``values`` to a polynomial."""
    out: set = set()
    for m in poly:
        for i, e in enumerate(m):
            if e % 2 == 0:
                continue
            rest = tuple(x - (j == i) for j, x in enumerate(m))
            for t in values[i]:
                out ^= {tuple(a + b for a, b in zip(rest, t))}
    return frozenset(out)


@dataclass(frozen=True)
class SqAction:
    """Sq^2 on a presentation, given by its value on every generator.

    Validated on construction: the values have the right degrees, a degree-2
    generator squares to itself squared, every relation is mapped into the
    ideal, and Sq^2 Sq^2 = 0.
    """

    presentation: Presentation
    values: tuple[Poly, ...]
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        p = self.presentation
        if len(self.values) != len(p.generators):
            raise SteenrodError("need exactly one Sq^2 value per generator")
        # store the reduced representatives so that lifting is canonical
        reduced = []
        for (name, deg), v in zip(p.generators, self.values):
            v = frozenset(v)
            try:
                elt = normal_form(p, v, deg + 2)
            except ValueError as exc:
                raise SteenrodError(f"Sq^2({name}): {exc}") from None
            reduced.append(p.lift(elt) if deg + 2 <= p.top_degree else frozenset())
            square = frozenset({tuple(2 * e for e in p.generator_monomial(name))})
            if deg == 2 and elt != normal_form(p, square, 4):
                raise SteenrodError(
                    f"Sq^2({name}) must equal {name}^2 for a degree-2 generator")
        object.__setattr__(self, "values", tuple(reduced))
        for r in p.relations:
            d = poly_degree(r, p.degrees)
            if d is None:
                continue
            image = normal_form(p, derivation_poly(self.values, r), d + 2)
            if not image.is_zero():
                raise SteenrodError(
                    f"Sq^2 does not preserve the relation {p.format(r)} "
                    f"(image {p.format_element(image)})")
        report = verify_d_squared_zero(Differential(self))
        if not report.ok:
            raise SteenrodError(f"Sq^2 Sq^2 != 0: {report.message}")

    @classmethod
    def from_strings(cls, presentation: Presentation, values: Mapping[str, str]) -> "SqAction":
        missing = [n for n in presentation.names if n not in values]
        if missing:
            raise SteenrodError(f"no Sq^2 value for generator(s) {', '.join(missing)}")
        extra = [n for n in values if n not in presentation.names]
        if extra:
            raise SteenrodError(f"Sq^2 given for unknown generator(s) {', '.join(extra)}")
        return cls(presentation, tuple(presentation.poly(values[n]) for n in presentation.names))

    def value(self, name: str) -> Element:
        p = self.presentation
        i = p.generator_index(name)
        return normal_form(p, self.values[i], p.degrees[i] + 2)

    def matrix(self, degree: int) -> F2Matrix:
        """Matrix of Sq^2 from degree ``degree`` to ``degree + 2``."""
        key = ("sq2", degree)
        m = self._cache.get(key)
        if m is None:
            p = self.presentation
            columns = [
                normal_form(p, derivation_poly(self.values, frozenset({b})), degree + 2).coords
                for b in basis_of_degree(p, degree)
            ]
            m = self._cache.setdefault(key, F2Matrix.from_columns(columns, p.dim(degree + 2)))
        return m


def sq2(action: SqAction, u: Element) -> Element:
    p = action.presentation
    return normal_form(p, derivation_poly(action.values, p.lift(u)), u.degree + 2)


@dataclass(frozen=True)
class Differential:
    """d'(u) = Sq^2(u) + twist * u for a degree-2 class ``twist``."""

    base: SqAction
    twist: Element | None = None

    def __post_init__(self):
        if self.twist is not None and self.twist.degree != 2:
            raise ValueError(f"twist must have degree 2, got degree {self.twist.degree}")

    @property
    def presentation(self) -> Presentation:
        return self.base.presentation

    def __call__(self, u: Element) -> Element:
        out = sq2(self.base, u)
        if self.twist is not None:
            out = out + multiply(self.presentation, self.twist, u)
        return out


def _multiplication_matrix(p: Presentation, c: Element, degree: int) -> F2Matrix:
    columns = []
    for b in basis_of_degree(p, degree):
        u = normal_form(p, frozenset({b}), degree)
        columns.append(multiply(p, c, u).coords)
    return F2Matrix.from_columns(columns, p.dim(degree + c.degree))


def differential_matrix(d: Differential, degree: int) -> F2Matrix:
    """Matrix of d' from ``basis_of_degree(degree)`` to ``basis_of_degree(degree + 2)``.

    Columns are indexed by the source basis.
    """
    m = d.base.matrix(degree)
    if d.twist is not None and not d.twist.is_zero():
        m = m + _multiplication_matrix(d.presentation, d.twist, degree)
    return m


@dataclass(frozen=True)
class DSquaredReport:
    ok: bool
    degree: int | None = None
    basis_index: int | None = None
    message: str = ""


def verify_d_squared_zero(d: Differential) -> DSquaredReport:
    """Check d' d' = 0 degree by degree; report the first offending basis element."""
    p = d.presentation
    for k in range(0, p.top_degree - 3, 2):
        comp = differential_matrix(d, k + 2) @ differential_matrix(d, k)
        if comp.is_zero():
            continue
        j = next(j for j in range(comp.cols) if comp.column(j))
        mono = basis_of_degree(p, k)[j]
        return DSquaredReport(
            False, k, j,
            f"d'd' is nonzero on basis element {p.format([mono])} in degree {k}")
    return DSquaredReport(True)
