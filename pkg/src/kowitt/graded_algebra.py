"""Finitely presented graded-commutative GF(2)-algebras on even-degree generators.

A polynomial is a frozenset of exponent tuples (coefficients live in GF(2), so
a monomial is either present or not and addition is symmetric difference).
Within a degree, monomials are ordered lexicographically on exponent vectors,
largest first, following the declared generator order. That order is a
monomial order, so the classes of the *standard* monomials (those that are not
leading monomials of anything in the relation ideal) form a basis of the
quotient in every degree.

Leading monomials of the ideal are found with a homogeneous Buchberger run
truncated at the degrees actually requested. The resulting basis is exactly the
set of non-pivot columns one gets by echelonizing the full degree slice of the
ideal, but much cheaper once there are more than a handful of generators.
"""

from __future__ import annotations

import re
import threading
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

Monomial = tuple[int, ...]
Poly = frozenset  # frozenset[Monomial]

ZERO: Poly = frozenset()


# -- polynomial arithmetic ---------------------------------------------------

def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_degree(m: Monomial, degrees: Sequence[int]) -> int:
    return sum(e * d for e, d in zip(m, degrees))


def poly_mul(p: Iterable[Monomial], q: Iterable[Monomial]) -> Poly:
    out: set = set()
    q = list(q)
    for a in p:
        for b in q:
            out ^= {mono_mul(a, b)}
    return frozenset(out)


def poly_degree(p: Poly, degrees: Sequence[int]) -> int | None:
    """Common degree of all terms; ``None`` for the zero polynomial.

    Raises ``ValueError`` on inhomogeneous input.
    """
    found = {mono_degree(m, degrees) for m in p}
    if len(found) > 1:
        raise ValueError(f"polynomial is not homogeneous (degrees {sorted(found)})")
    return found.pop() if found else None


@lru_cache(maxsize=None)
def _monomials(degrees: tuple[int, ...], d: int) -> tuple[Monomial, ...]:
    if not degrees:
        return ((),) if d == 0 else ()
    head, rest = degrees[0], degrees[1:]
    out = []
    for e in range(d // head, -1, -1):
        for tail in _monomials(rest, d - e * head):
            out.append((e,) + tail)
    return tuple(out)


def monomials_of_degree(gen_degrees: Sequence[int], d: int) -> list[Monomial]:
    """All exponent vectors of weighted degree ``d``, largest (lex) first."""
    if d < 0:
        return []
    return list(_monomials(tuple(gen_degrees), d))


# -- text form of polynomials ------------------------------------------------

_FACTOR = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)(?:\^(\d+))?$")


def parse_poly(text: str, names: Sequence[str]) -> Poly:
    """Parse ``"a1^2*a2 + b + 1"`` style input. ``0`` is the zero polynomial."""
    index = {name: i for i, name in enumerate(names)}
    out: set = set()
    text = text.strip()
    if not text:
        raise ValueError("empty polynomial")
    for term in text.split("+"):
        term = term.strip()
        if term == "0":
            continue
        exps = [0] * len(names)
        if term != "1":
            for factor in term.split("*"):
                factor = factor.strip()
                match = _FACTOR.match(factor)
                if not match:
                    raise ValueError(f"malformed factor {factor!r}")
                name, power = match.group(1), match.group(2)
                if name not in index:
                    raise ValueError(f"unknown generator {name!r}")
                exps[index[name]] += int(power) if power else 1
        out ^= {tuple(exps)}
    return frozenset(out)


def format_monomial(m: Monomial, names: Sequence[str]) -> str:
    parts = []
    for name, e in zip(names, m):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts) or "1"


def format_poly(p: Iterable[Monomial], names: Sequence[str]) -> str:
    terms = sorted(p, reverse=True)
    return " + ".join(format_monomial(m, names) for m in terms) or "0"


# -- Groebner machinery ------------------------------------------------------

class _GroebnerState:
    """Homogeneous Buchberger run, completed degree by degree on demand."""

    def __init__(self, degrees: Sequence[int], relations: Iterable[Poly]):
        self.degrees = tuple(degrees)
        self.basis: list[tuple[Monomial, int, Poly]] = []  # (leading monomial, degree, poly)
        self.pending: dict[int, list] = {}
        self.done = -1
        self._memo: dict = {}
        for r in relations:
            if r:
                self._push(mono_degree(next(iter(r)), self.degrees), r)

    def _push(self, degree: int, item) -> None:
        self.pending.setdefault(degree, []).append(item)

    def _divisor(self, m: Monomial, degree: int):
        # the basis is append-only, so a scan can resume where the last one stopped
        hit, start = self._memo.get(m, (None, 0))
        if hit is not None:
            return hit
        basis = self.basis
        for idx in range(start, len(basis)):
            lm, d, g = basis[idx]
            if d <= degree and mono_divides(lm, m):
                hit = lm, g
                break
        self._memo[m] = (hit, len(basis))
        return hit

    def reduce(self, poly: Iterable[Monomial]) -> Poly:
        """Full normal form modulo the current basis."""
        todo = set(poly)
        out = set()
        while todo:
            m = max(todo)
            hit = self._divisor(m, mono_degree(m, self.degrees))
            if hit is None:
                todo.remove(m)
                out.add(m)
                continue
            lm, g = hit
            q = tuple(x - y for x, y in zip(m, lm))
            for t in g:
                todo ^= {mono_mul(q, t)}
        return frozenset(out)

    def _spoly(self, i: int, j: int) -> Poly:
        lm_i, _, g_i = self.basis[i]
        lm_j, _, g_j = self.basis[j]
        lcm = tuple(max(x, y) for x, y in zip(lm_i, lm_j))
        qi = tuple(x - y for x, y in zip(lcm, lm_i))
        qj = tuple(x - y for x, y in zip(lcm, lm_j))
        out = set()
        for t in g_i:
            out ^= {mono_mul(qi, t)}
        for t in g_j:
            out ^= {mono_mul(qj, t)}
        return frozenset(out)

    def extend(self, degree: int) -> None:
        while self.done < degree:
            d = self.done + 1
            for item in self.pending.pop(d, []):
                poly = self._spoly(*item) if isinstance(item, tuple) else item
                r = self.reduce(poly)
                if r:
                    self._add(r, d)
            self.done = d

    def _add(self, poly: Poly, degree: int) -> None:
        lm = max(poly)
        k = len(self.basis)
        self.basis.append((lm, degree, poly))
        for i, (other, _, _) in enumerate(self.basis[:-1]):
            if all(x == 0 or y == 0 for x, y in zip(lm, other)):
                continue  # coprime leading monomials: S-polynomial reduces to zero
            lcm = tuple(max(x, y) for x, y in zip(lm, other))
            self._push(mono_degree(lcm, self.degrees), (i, k))

    def is_standard(self, m: Monomial, degree: int) -> bool:
        return self._divisor(m, degree) is None


# -- presentations and elements ----------------------------------------------

@dataclass(frozen=True)
class Element:
    """A class in one degree: ``coords`` is a bitset over ``basis_of_degree``."""

    degree: int
    coords: int = 0

    def __add__(self, other: "Element") -> "Element":
        if self.degree != other.degree:
            raise ValueError(f"cannot add degree {self.degree} to degree {other.degree}")
        return Element(self.degree, self.coords ^ other.coords)

    def is_zero(self) -> bool:
        return self.coords == 0


@dataclass(frozen=True)
class _DegreeData:
    basis: tuple[Monomial, ...]
    index: Mapping[Monomial, int]


@dataclass(frozen=True)
class Presentation:
    """Generators with even positive degrees, homogeneous relations, top degree.

    ``top_degree`` is twice the complex dimension; everything above it is zero.
    """

    generators: tuple[tuple[str, int], ...]
    relations: tuple[Poly, ...]
    top_degree: int
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, init=False, repr=False,
                                  compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple((str(n), int(d)) for n, d in self.generators))
        object.__setattr__(self, "relations", tuple(frozenset(r) for r in self.relations))
        names = self.names
        if len(set(names)) != len(names):
            raise ValueError("generator names must be unique")
        for name, d in self.generators:
            if d <= 0 or d % 2:
                raise ValueError(f"generator {name} has degree {d}: even degrees only")
        if self.top_degree < 0 or self.top_degree % 2:
            raise ValueError("top degree must be even and non-negative")
        bound = self.top_degree + max(self.degrees, default=0)
        for r in self.relations:
            for m in r:
                if len(m) != len(names):
                    raise ValueError("relation exponent vector has the wrong length")
            d = poly_degree(r, self.degrees)
            if d is not None and d > bound:
                raise ValueError(f"relation of degree {d} exceeds top degree + generator degree ({bound})")

    @classmethod
    def from_strings(cls, generators: Sequence[tuple[str, int]], relations: Sequence[str],
                     top_degree: int) -> "Presentation":
        names = [n for n, _ in generators]
        return cls(tuple(generators), tuple(parse_poly(r, names) for r in relations), top_degree)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.generators)

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(d for _, d in self.generators)

    def generator_index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown generator {name!r}") from None

    def generator_monomial(self, name: str) -> Monomial:
        i = self.generator_index(name)
        return tuple(int(j == i) for j in range(len(self.generators)))

    def poly(self, text: str) -> Poly:
        return parse_poly(text, self.names)

    def format(self, p: Iterable[Monomial]) -> str:
        return format_poly(p, self.names)

    # groebner state and per-degree data are memoized; fills are idempotent
    def _groebner(self, degree: int) -> _GroebnerState:
        with self._lock:
            state = self._cache.get("gb")
            if state is None:
                state = self._cache["gb"] = _GroebnerState(self.degrees, self.relations)
            state.extend(degree)
            return state

    def standard_monomials(self, d: int) -> list[Monomial]:
        """Standard monomials of degree ``d`` with no truncation at the top degree."""
        if d < 0 or d % 2:
            return []
        state = self._groebner(d)
        return [m for m in monomials_of_degree(self.degrees, d) if state.is_standard(m, d)]

    def _degree_data(self, d: int) -> _DegreeData:
        key = ("deg", d)
        data = self._cache.get(key)
        if data is None:
            basis = tuple(self.standard_monomials(d)) if 0 <= d <= self.top_degree else ()
            data = _DegreeData(basis, {m: i for i, m in enumerate(basis)})
            self._cache.setdefault(key, data)
            data = self._cache[key]
        return data

    def dim(self, d: int) -> int:
        return len(self._degree_data(d).basis)

    def zero(self, d: int) -> Element:
        return Element(d, 0)

    def one(self) -> Element:
        return normal_form(self, frozenset({(0,) * len(self.generators)}), 0)

    def gen(self, name: str) -> Element:
        m = self.generator_monomial(name)
        return normal_form(self, frozenset({m}), mono_degree(m, self.degrees))

    def element(self, text: str, degree: int | None = None) -> Element:
        return normal_form(self, self.poly(text), degree)

    def lift(self, u: Element) -> Poly:
        """The polynomial of standard monomials representing ``u``."""
        basis = self._degree_data(u.degree).basis
        out = []
        c = u.coords
        while c:
            low = c & -c
            out.append(basis[low.bit_length() - 1])
            c ^= low
        return frozenset(out)

    def format_element(self, u: Element) -> str:
        return self.format(self.lift(u))


def basis_of_degree(p: Presentation, d: int) -> list[Monomial]:
    """Ordered standard monomials of degree ``d`` (empty outside ``[0, top_degree]``)."""
    return list(p._degree_data(d).basis)


def normal_form(p: Presentation, poly: Iterable[Monomial], degree: int | None = None) -> Element:
    """Coordinates of the class of a homogeneous polynomial.

    ``degree`` is needed only for the zero polynomial.
    """
    poly = frozenset(poly)
    d = poly_degree(poly, p.degrees)
    if d is None:
        if degree is None:
            raise ValueError("degree of the zero polynomial must be given")
        d = degree
    elif degree is not None and degree != d:
        raise ValueError(f"polynomial has degree {d}, expected {degree}")
    if d > p.top_degree or not poly:
        return Element(d, 0)
    reduced = p._groebner(d).reduce(poly)
    index = p._degree_data(d).index
    coords = 0
    for m in reduced:
        coords |= 1 << index[m]
    return Element(d, coords)


def multiply(p: Presentation, u: Element, v: Element) -> Element:
    d = u.degree + v.degree
    if d > p.top_degree or u.is_zero() or v.is_zero():
        return Element(d, 0)
    return normal_form(p, poly_mul(p.lift(u), p.lift(v)), d)


def poincare_dims(p: Presentation) -> list[tuple[int, int]]:
    return [(d, p.dim(d)) for d in range(0, p.top_degree + 1, 2)]
