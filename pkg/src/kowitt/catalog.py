"""Hermitian symmetric spaces: presentations, Sq^2 data, twists, and closed-form answers.

Twist classes are stored mod 2 only: a line bundle and its dual have the same
first Chern class mod 2, so one representative per Picard generator suffices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Callable, Mapping

from .graded_algebra import Element, Poly, Presentation, poly_mul
from .ko import KOTable
from .steenrod import SqAction, wu_sq2

TRIVIAL = "O"

_CITATIONS = {
    "point": "single cell: the spectral sequence has nothing to collapse",
    "cp": "untwisted: Fujii's computation of KO*(CP^n); twisted: Thom(O(1)) over CP^n is CP^{n+1}",
    "gr": ("untwisted: Kono-Hara 1991, Prop. 4; twisted: the Thom spaces of the universal "
           "bundles inject on E3 into Gr_{m,n+1} resp. Gr_{m+1,n} and share one spectral sequence"),
    "lg": ("untwisted: Kono-Hara 1992, Thm 2.1; twisted: Thom(U^perp + O) over X_n injects on E3 "
           "into X_{n+1}"),
    "quadric": ("untwisted: Kono-Hara 1992; twisted: Thom(O(1)) is a hyperplane section cone inside "
                "Q^{n+2}, which carries the surviving classes"),
    "spinor": "untwisted: Kono-Hara 1992; twisted: the E3 page is zero",
    "eiii": ("untwisted: Kono-Hara 1992; twisted: E3 classes sit in degrees 8, 16, 24 and the first "
             "possible higher differential d_r has r = 2 mod 8"),
    "evii": "untwisted: Kono-Hara 1992; twisted: the E3 page is zero",
}


def _canon(name: str) -> str:
    key = name.strip().lower().replace("(", "").replace(")", "").replace(" ", "")
    return "o" if key in ("", "o", "trivial", "none", "0") else key


@dataclass(frozen=True)
class SpaceData:
    name: str
    space_id: str
    presentation: Presentation
    sq2: SqAction
    twists: Mapping[str, Element | None]
    complex_dimension: int
    degeneration_citation: str
    family: str = ""
    params: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if self.presentation.top_degree != 2 * self.complex_dimension:
            raise ValueError("top degree must be twice the complex dimension")
        for label, c in self.twists.items():
            if c is not None and c.degree != 2:
                raise ValueError(f"twist {label} is not a degree-2 class")

    def twist(self, name: str | None) -> tuple[str, Element | None]:
        """Resolve a twist name (or a degree-2 generator name) to (label, class)."""
        if name is None:
            name = TRIVIAL
        key = _canon(name)
        for label, c in self.twists.items():
            if _canon(label) == key:
                return label, c
        if key == "o":
            return TRIVIAL, None
        p = self.presentation
        if name in p.names and p.degrees[p.generator_index(name)] == 2:
            c = p.gen(name)
            for label, other in self.twists.items():
                if other == c:
                    return label, c
            return name, c
        known = ", ".join(self.twists) or TRIVIAL
        raise KeyError(f"unknown twist {name!r} for {self.name} (known: {known})")

    def nontrivial_twists(self) -> list[str]:
        return [label for label, c in self.twists.items() if c is not None]


def _space(name, space_id, family, params, p, sq2_text, twist_gen, twist_label, dimc) -> SpaceData:
    action = SqAction.from_strings(p, sq2_text)
    twists: dict[str, Element | None] = {TRIVIAL: None}
    if twist_gen is not None:
        twists[twist_label] = p.gen(twist_gen)
    return SpaceData(name, space_id, p, action, twists, dimc, _CITATIONS[family], family, params)


def point() -> SpaceData:
    p = Presentation((), (), 0)
    return SpaceData("point", "point", p, SqAction(p, ()), {TRIVIAL: None}, 0,
                     _CITATIONS["point"], "point", ())


def projective_space(n: int) -> SpaceData:
    if n < 1:
        raise ValueError(f"projective space needs n >= 1, got {n}")
    p = Presentation.from_strings([("x", 2)], [f"x^{n + 1}"], 2 * n)
    return _space(f"CP^{n}", f"cp:{n}", "cp", (n,), p, {"x": "x^2"}, "x", "O(1)", n)


def grassmannian_relations(m: int, n: int) -> tuple[list[str], list[Poly], list[Poly]]:
    """Generators a1..am of A_{m,n} and the dual classes b_0..b_{n+m} as polynomials.

    The total classes satisfy a * b = 1, so mod 2 b_j = sum_{i=1..min(m,j)} a_i b_{j-i}.
    The relations of A_{m,n} are b_{n+1}, ..., b_{n+m}.
    """
    names = [f"a{i}" for i in range(1, m + 1)]
    unit = lambda i: tuple(int(j == i) for j in range(m))  # noqa: E731
    b: list[Poly] = [frozenset({(0,) * m})]
    for j in range(1, n + m + 1):
        acc: set = set()
        for i in range(1, min(m, j) + 1):
            acc ^= poly_mul([unit(i - 1)], b[j - i])
        b.append(frozenset(acc))
    return names, b, b[n + 1:n + m + 1]


def grassmannian_presentation(m: int, n: int) -> Presentation:
    """A_{m,n} on the a-generators; m = 0 or n = 0 gives a point."""
    names, _, rels = grassmannian_relations(m, n)
    return Presentation(tuple((a, 2 * i) for i, a in enumerate(names, 1)), tuple(rels), 2 * m * n)


def grassmannian(m: int, n: int) -> SpaceData:
    if m < 1 or n < 1:
        raise ValueError(f"Grassmannian needs m, n >= 1, got ({m}, {n})")
    p = grassmannian_presentation(m, n)
    sq = {f"a{i}": wu_sq2(i, "a", m) for i in range(1, m + 1)}
    return _space(f"Gr_{{{m},{n}}}", f"gr:{m},{n}", "gr", (m, n), p, sq, "a1", "O(1)", m * n)


def symplectic_grassmannian(n: int) -> SpaceData:
    """The Lagrangian Grassmannian X_n = Sp(n)/U(n): exterior algebra on c_1..c_n."""
    if n < 1:
        raise ValueError(f"symplectic Grassmannian needs n >= 1, got {n}")
    gens = [(f"c{i}", 2 * i) for i in range(1, n + 1)]
    p = Presentation.from_strings(gens, [f"c{i}^2" for i in range(1, n + 1)], n * (n + 1))
    sq = {f"c{i}": wu_sq2(i, "c", n) for i in range(1, n + 1)}
    return _space(f"X_{n}", f"lg:{n}", "lg", (n,), p, sq, "c1", "O(1)", n * (n + 1) // 2)


def quadric(n: int) -> SpaceData:
    if n < 3:
        raise ValueError(f"quadric needs n >= 3 (Picard group free of rank one), got {n}")
    m = n // 2
    sq_a = "a*x" if n % 4 in (0, 3) else "0"
    if n % 2 == 0:
        gens = [("x", 2), ("a", n), ("b", n)]
        top = f" + a*x^{m}"
        rels = [f"x^{m} + a + b", f"x^{m + 1}",
                "a*b" + (top if n % 4 == 2 else ""),
                "a^2" + (top if n % 4 == 0 else ""),
                "b^2" + (top if n % 4 == 0 else "")]
        sq = {"x": "x^2", "a": sq_a, "b": sq_a}
    else:
        gens = [("x", 2), ("a", n + 1)]
        rels = [f"x^{m + 1}", "a^2"]
        sq = {"x": "x^2", "a": sq_a}
    p = Presentation.from_strings(gens, rels, 2 * n)
    return _space(f"Q^{n}", f"quadric:{n}", "quadric", (n,), p, sq, "x", "O(1)", n)


def spinor(n: int) -> SpaceData:
    """Spinor variety S_n: simple generators e_2, e_4, ..., e_{2n-2}."""
    if n < 2:
        raise ValueError(f"spinor variety needs n >= 2, got {n}")
    gens = [(f"e{2 * i}", 2 * i) for i in range(1, n)]
    rels, sq = [], {}
    for i in range(1, n):
        rels.append(f"e{2 * i}^2" + (f" + e{4 * i}" if 2 * i < n else ""))
        sq[f"e{2 * i}"] = f"e{2 * i + 2}" if i % 2 and i + 1 < n else "0"
    p = Presentation.from_strings(gens, rels, n * (n - 1))
    return _space(f"S_{n}", f"spinor:{n}", "spinor", (n,), p, sq, "e2", "S", n * (n - 1) // 2)


def exceptional(which: str) -> SpaceData:
    which = which.lower()
    if which == "eiii":
        p = Presentation.from_strings([("t", 2), ("u", 8)], ["u^2*t", "u^3 + t^12"], 32)
        sq = {"t": "t^2", "u": "u*t"}
        return _space("EIII", "eiii", "eiii", (), p, sq, "t", "O(1)", 16)
    if which == "evii":
        p = Presentation.from_strings([("t", 2), ("v", 10), ("w", 18)], ["t^14", "v^2", "w^2"], 54)
        sq = {"t": "t^2", "v": "0", "w": "0"}
        return _space("EVII", "evii", "evii", (), p, sq, "t", "O(1)", 27)
    raise ValueError(f"unknown exceptional space {which!r} (expected EIII or EVII)")


FAMILIES: dict[str, tuple[int, Callable[..., SpaceData]]] = {
    "point": (0, point),
    "cp": (1, projective_space),
    "gr": (2, grassmannian),
    "lg": (1, symplectic_grassmannian),
    "quadric": (1, quadric),
    "spinor": (1, spinor),
    "eiii": (0, lambda: exceptional("eiii")),
    "evii": (0, lambda: exceptional("evii")),
}


def build(family: str, params: tuple[int, ...] = ()) -> SpaceData:
    try:
        arity, ctor = FAMILIES[family]
    except KeyError:
        raise ValueError(f"unknown family {family!r}") from None
    if len(params) != arity:
        raise ValueError(f"family {family!r} takes {arity} parameter(s), got {len(params)}")
    return ctor(*params)


def split_space_id(space_id: str) -> tuple[str, tuple[int, ...]]:
    family, _, rest = space_id.strip().lower().partition(":")
    params = tuple(int(x) for x in rest.split(",")) if rest else ()
    return family, params


# -- closed forms ------------------------------------------------------------

def rho(n: int, i: int) -> int:
    """Sum of binomial(n, d) over d congruent to i mod 4."""
    if n < 0:
        raise ValueError("rho needs n >= 0")
    return sum(comb(n, d) for d in range(n + 1) if (d - i) % 4 == 0)


def _rho_pattern(n: int, shift: int, sign: int = 1) -> tuple[int, ...]:
    return tuple(rho(n, shift + sign * i) for i in range(4))


_CP = {  # n mod 4 -> (untwisted s, twisted s)
    0: ((1, 0, 0, 0), (1, 0, 0, 0)),
    1: ((1, 1, 0, 0), (0, 0, 0, 0)),
    2: ((1, 0, 0, 0), (0, 0, 1, 0)),
    3: ((1, 0, 0, 1), (0, 0, 0, 0)),
}

_QUADRIC = {  # n mod 8 -> (untwisted s, twisted s)
    0: ((2, 0, 0, 0), (2, 0, 0, 0)),
    1: ((1, 1, 0, 0), (1, 1, 0, 0)),
    2: ((1, 2, 1, 0), (0, 0, 0, 0)),
    3: ((1, 1, 0, 0), (0, 0, 1, 1)),
    4: ((2, 0, 0, 0), (0, 0, 2, 0)),
    5: ((1, 0, 0, 1), (0, 1, 1, 0)),
    6: ((1, 0, 1, 2), (0, 0, 0, 0)),
    7: ((1, 0, 0, 1), (1, 0, 0, 1)),
}


def _expected_gr(m: int, n: int) -> tuple[int, int, tuple, tuple]:
    k, l = m // 2, n // 2
    a = comb(m + n, m)
    b = comb(k + l, k)
    b1 = comb(k + l - 1, k) if k + l >= 1 else 0
    b2 = comb(k + l - 1, k - 1) if k >= 1 else 0
    zero = (0, 0, 0, 0)
    if m % 2 and n % 2:
        untwisted = (b, b, 0, 0) if m % 4 == n % 4 else (b, 0, 0, b)
        return a // 2, a // 2, untwisted, zero
    t0, t1 = (a + b) // 2, (a - b) // 2
    untwisted = (b, 0, 0, 0)
    mm, nn = m % 4, n % 4
    if (mm, nn) == (0, 2):
        twisted = (b1, 0, b2, 0)
    elif (mm, nn) == (2, 0):
        twisted = (b2, 0, b1, 0)
    elif mm == 0 or nn == 0:  # 0/0, or 0 and odd
        twisted = (b, 0, 0, 0)
    else:  # 2/2, or 2 and odd
        twisted = (0, 0, b, 0)
    return t0, t1, untwisted, twisted


def expected_table(space_id: str, twist: str | None = None) -> KOTable:
    """The tabulated KO-table for a catalog space, from the closed forms."""
    family, params = split_space_id(space_id)
    twisted = twist is not None and _canon(twist) != "o"
    label = TRIVIAL
    if family == "point":
        if twisted:
            raise ValueError("the point has no nontrivial twist")
        t0, t1, s = 1, 0, (1, 0, 0, 0)
    elif family == "cp":
        (n,) = params
        if n < 1:
            raise ValueError("projective space needs n >= 1")
        t0, t1 = (n // 2 + 1, n // 2) if n % 2 == 0 else ((n + 1) // 2, (n + 1) // 2)
        s = _CP[n % 4][twisted]
    elif family == "gr":
        m, n = params
        if m < 1 or n < 1:
            raise ValueError("Grassmannian needs m, n >= 1")
        t0, t1, su, st = _expected_gr(m, n)
        s = st if twisted else su
    elif family == "lg":
        (n,) = params
        if n < 1:
            raise ValueError("symplectic Grassmannian needs n >= 1")
        t0 = t1 = 2 ** (n - 1)
        if n % 2 == 0:
            s = _rho_pattern(n // 2, -n) if twisted else _rho_pattern(n // 2, 0)
        else:
            s = (0, 0, 0, 0) if twisted else _rho_pattern((n + 1) // 2, 0)
    elif family == "quadric":
        (n,) = params
        if n < 3:
            raise ValueError("quadrics are tabulated for n >= 3 only")
        if n % 2:
            t0 = t1 = (n + 1) // 2
        elif n % 4 == 0:
            t0, t1 = n // 2 + 2, n // 2
        else:
            t0 = t1 = n // 2 + 1
        s = _QUADRIC[n % 8][twisted]
    elif family == "spinor":
        (n,) = params
        if n < 2:
            raise ValueError("spinor varieties need n >= 2")
        t0 = t1 = 2 ** (n - 2)
        if twisted:
            s = (0, 0, 0, 0)
        elif n % 4 == 2:
            s = _rho_pattern(n // 2, 1, -1)
        else:
            s = _rho_pattern(n // 2, 0, -1)
    elif family == "eiii":
        t0, t1, s = 15, 12, (3, 0, 0, 0)
    elif family == "evii":
        t0, t1 = 28, 28
        s = (0, 0, 0, 0) if twisted else (1, 3, 3, 1)
    else:
        raise ValueError(f"no tabulated values for {space_id!r}")
    if twisted:
        label = "S" if family == "spinor" else "O(1)"
    return KOTable(t0, t1, s, label, space_id, True, "closed form")


__all__ = [
    "SpaceData", "point", "projective_space", "grassmannian", "grassmannian_presentation",
    "symplectic_grassmannian", "quadric", "spinor", "exceptional", "build", "rho",
    "expected_table", "FAMILIES",
]
