"""Acceptance criteria, one check per criterion.

Run under pytest (a PASS/FAIL line per criterion appears in the terminal
summary) or directly with ``python tests/test_acceptance.py``.

The closed-form tables are encoded here a second time, independently of
``catalog.expected_table``, and every check also confirms the two encodings agree.
"""

from __future__ import annotations

import sys
import time
from math import comb
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from kowitt import catalog  # noqa: E402
from kowitt.dga_cohomology import cohomology_dims  # noqa: E402
from kowitt.formats import parse_presentation_file, write_presentation_file  # noqa: E402
from kowitt.graded_algebra import normal_form, poincare_dims  # noqa: E402
from kowitt.ko import ko_table  # noqa: E402
from kowitt.steenrod import Differential, derivation_poly, verify_d_squared_zero  # noqa: E402

Row = tuple[int, int, tuple[int, int, int, int]]


def rho(n: int, i: int) -> int:
    return sum(comb(n, d) for d in range(n + 1) if (d - i) % 4 == 0)


def cp_row(n: int, twisted: bool) -> Row:
    even = (n // 2 + 1, n // 2)
    odd = ((n + 1) // 2, (n + 1) // 2)
    rows = {
        0: (even, (1, 0, 0, 0), (1, 0, 0, 0)),
        1: (odd, (1, 1, 0, 0), (0, 0, 0, 0)),
        2: (even, (1, 0, 0, 0), (0, 0, 1, 0)),
        3: (odd, (1, 0, 0, 1), (0, 0, 0, 0)),
    }
    t, su, st = rows[n % 4]
    return (*t, st if twisted else su)


def gr_row(m: int, n: int, twisted: bool) -> Row:
    k, l = m // 2, n // 2
    a, b = comb(m + n, m), comb(k + l, k)
    b1 = comb(k + l - 1, k) if k + l >= 1 else 0
    b2 = comb(k + l - 1, k - 1) if k >= 1 else 0
    mm, nn = m % 4, n % 4
    if m % 2 and n % 2:
        s = (b, b, 0, 0) if mm == nn else (b, 0, 0, b)
        return a // 2, a // 2, (0, 0, 0, 0) if twisted else s
    t0, t1 = (a + b) // 2, (a - b) // 2
    if not twisted:
        return t0, t1, (b, 0, 0, 0)
    if (mm, nn) == (0, 2):
        return t0, t1, (b1, 0, b2, 0)
    if (mm, nn) == (2, 0):
        return t0, t1, (b2, 0, b1, 0)
    if 0 in (mm, nn):
        return t0, t1, (b, 0, 0, 0)
    return t0, t1, (0, 0, b, 0)


def lg_row(n: int, twisted: bool) -> Row:
    t = 2 ** (n - 1)
    if n % 2 == 0:
        s = tuple(rho(n // 2, i - n) if twisted else rho(n // 2, i) for i in range(4))
    else:
        s = (0, 0, 0, 0) if twisted else tuple(rho((n + 1) // 2, i) for i in range(4))
    return t, t, s


def quadric_row(n: int, twisted: bool) -> Row:
    half, odd = n // 2, (n + 1) // 2
    rows = {
        0: ((half + 2, half), (2, 0, 0, 0), (2, 0, 0, 0)),
        1: ((odd, odd), (1, 1, 0, 0), (1, 1, 0, 0)),
        2: ((half + 1, half + 1), (1, 2, 1, 0), (0, 0, 0, 0)),
        3: ((odd, odd), (1, 1, 0, 0), (0, 0, 1, 1)),
        4: ((half + 2, half), (2, 0, 0, 0), (0, 0, 2, 0)),
        5: ((odd, odd), (1, 0, 0, 1), (0, 1, 1, 0)),
        6: ((half + 1, half + 1), (1, 0, 1, 2), (0, 0, 0, 0)),
        7: ((odd, odd), (1, 0, 0, 1), (1, 0, 0, 1)),
    }
    t, su, st = rows[n % 8]
    return (*t, st if twisted else su)


def spinor_row(n: int, twisted: bool) -> Row:
    t = 2 ** (n - 2)
    if twisted:
        return t, t, (0, 0, 0, 0)
    if n % 4 == 2:
        return t, t, tuple(rho(n // 2, 1 - i) for i in range(4))
    return t, t, tuple(rho(n // 2, -i) for i in range(4))


EXCEPTIONAL = {
    ("eiii", False): (15, 12, (3, 0, 0, 0)),
    ("eiii", True): (15, 12, (3, 0, 0, 0)),
    ("evii", False): (28, 28, (1, 3, 3, 1)),
    ("evii", True): (28, 28, (0, 0, 0, 0)),
}

CATALOG = (
    [("cp", (n,)) for n in range(1, 17)]
    + [("gr", (m, n)) for n in range(1, 10) for m in range(1, n + 1) if m + n <= 10]
    + [("lg", (n,)) for n in range(1, 9)]
    + [("quadric", (n,)) for n in range(3, 13)]
    + [("spinor", (n,)) for n in range(2, 10)]
    + [("eiii", ()), ("evii", ()), ("point", ())]
)


def _compare(family: str, params_list, row) -> list[str]:
    problems = []
    for params in params_list:
        space = catalog.build(family, params)
        twists = space.nontrivial_twists()
        for twisted, label in [(False, None)] + [(True, t) for t in twists]:
            got = ko_table(space, label)
            want = row(*params, twisted)
            numbers = (want[0], want[1], *want[2])
            if got.numbers() != numbers:
                problems.append(f"{space.space_id} {got.twist_label}: got {got.numbers()}, table {numbers}")
            if catalog.expected_table(space.space_id, got.twist_label).numbers() != numbers:
                problems.append(f"{space.space_id} {got.twist_label}: expected_table disagrees")
    return problems


def _timed(fn, limit: float) -> list[str]:
    start = time.perf_counter()
    problems = fn()
    elapsed = time.perf_counter() - start
    if elapsed > limit:
        problems.append(f"took {elapsed:.2f}s, limit {limit:.0f}s")
    return problems


# -- the criteria -------------------------------------------------------------

def check_projective_spaces():
    return _timed(lambda: _compare("cp", [(n,) for n in range(1, 17)], cp_row), 1.0)


def check_grassmannians():
    pairs = [(m, n) for n in range(1, 10) for m in range(1, n + 1) if m + n <= 10]
    return _timed(lambda: _compare("gr", pairs, gr_row), 60.0)


def check_symplectic():
    return _timed(lambda: _compare("lg", [(n,) for n in range(1, 9)], lg_row), 30.0)


def check_quadrics():
    return _timed(lambda: _compare("quadric", [(n,) for n in range(3, 13)], quadric_row), 5.0)


def check_spinor():
    return _timed(lambda: _compare("spinor", [(n,) for n in range(2, 10)], spinor_row), 30.0)


def check_exceptional():
    def run():
        problems = []
        for which in ("eiii", "evii"):
            problems += _compare(which, [()], lambda twisted, w=which: EXCEPTIONAL[w, twisted])
        return problems
    return _timed(run, 10.0)


def check_point():
    t = ko_table(catalog.point())
    from kowitt.ko import ko_groups
    groups = list(ko_groups(t).values())
    table1 = ["Z", "0", "0", "0", "Z", "0", "Z/2", "Z/2"]
    return [] if groups == table1 else [f"point: got {groups}, table {table1}"]


def _betti(m: int, n: int) -> dict[int, int]:
    return dict(poincare_dims(catalog.grassmannian_presentation(m, n)))


def _shifted(dims: dict[int, int], scale: int, shift: int) -> dict[int, int]:
    return {scale * d + shift: n for d, n in dims.items() if n}


def _add(*parts: dict[int, int]) -> dict[int, int]:
    out: dict[int, int] = {}
    for part in parts:
        for d, n in part.items():
            out[d] = out.get(d, 0) + n
    return out


def check_structural():
    problems = []
    for m in range(1, 8):
        for n in range(1, 9 - m):
            k, l = m // 2, n // 2
            space = catalog.grassmannian(m, n)
            p = space.presentation
            untwisted = cohomology_dims(p, Differential(space.sq2)).nonzero()
            twisted = cohomology_dims(p, Differential(space.sq2, p.gen("a1"))).nonzero()
            base = _shifted(_betti(k, l), 4, 0)
            if m % 2 and n % 2:
                want_u = _add(base, _shifted(_betti(k, l), 4, 2 * (m + n - 1)))
                want_t = {}
            else:
                want_u = base
                if m % 2 == 0 and n % 2 == 0:
                    want_t = _add(_shifted(_betti(k, l - 1), 4, 2 * m), _shifted(_betti(k - 1, l), 4, 2 * n))
                elif m % 2 == 0:
                    want_t = _shifted(_betti(k, l), 4, 2 * m)
                else:
                    want_t = _shifted(_betti(k, l), 4, 2 * n)
            if untwisted != want_u:
                problems.append(f"Gr_{m},{n} untwisted: {untwisted} vs {want_u}")
            if twisted != want_t:
                problems.append(f"Gr_{m},{n} twisted: {twisted} vs {want_t}")
    return problems


def check_properties():
    problems = []
    for family, params in CATALOG:
        space = catalog.build(family, params)
        p = space.presentation
        sid = space.space_id
        for r in p.relations:
            deg = sum(a * g for a, g in zip(next(iter(r)), p.degrees))
            if not normal_form(p, derivation_poly(space.sq2.values, r), deg + 2).is_zero():
                problems.append(f"{sid}: Sq^2 of relation {p.format(r)} is nonzero")
        dims = [n for _, n in poincare_dims(p)]
        if dims != dims[::-1]:
            problems.append(f"{sid}: Poincare duality fails {dims}")
        for label in [catalog.TRIVIAL] + space.nontrivial_twists():
            c = space.twist(label)[1]
            d = Differential(space.sq2, c)
            report = verify_d_squared_zero(d)
            if not report.ok:
                problems.append(f"{sid} {label}: {report.message}")
            t = ko_table(space, label)
            if t.t0 + t.t1 != sum(dims):
                problems.append(f"{sid}: t0 + t1 != Euler characteristic")
            if sum(t.s) != cohomology_dims(p, d).total():
                problems.append(f"{sid} {label}: sum of s_j != total cohomology")
    for m in range(1, 10):
        for n in range(m + 1, 11 - m):
            a, b = catalog.grassmannian(m, n), catalog.grassmannian(n, m)
            for twist in (None, "O(1)"):
                if ko_table(a, twist).numbers() != ko_table(b, twist).numbers():
                    problems.append(f"Gr_{m},{n} and Gr_{n},{m} differ ({twist})")
            # the b1/b2 rows are mirror images of each other
            if m % 4 == 0 and n % 4 == 2 or m % 4 == 2 and n % 4 == 0:
                s_a, s_b = gr_row(m, n, True)[2], gr_row(n, m, True)[2]
                if (s_a[0], s_a[2]) != (s_b[0], s_b[2]):
                    problems.append(f"Gr_{m},{n}: b1/b2 swap inconsistent")
    for n in range(1, 17):
        for twist in (None, "O(1)"):
            if ko_table(catalog.grassmannian(1, n), twist) != ko_table(catalog.projective_space(n), twist):
                problems.append(f"Gr_1,{n} != CP^{n} ({twist})")
    s2, cp1 = catalog.spinor(2), catalog.projective_space(1)
    if ko_table(s2).numbers() != ko_table(cp1).numbers() or \
            ko_table(s2, "S").numbers() != ko_table(cp1, "O(1)").numbers():
        problems.append("spinor(2) != CP^1")
    return problems


def check_round_trip():
    problems = []
    for family, params in CATALOG:
        space = catalog.build(family, params)
        again = parse_presentation_file(write_presentation_file(space), space.space_id)
        for label in [catalog.TRIVIAL] + space.nontrivial_twists():
            if ko_table(space, label) != ko_table(again, label):
                problems.append(f"{space.space_id} {label}: round trip changed the table")
    return problems


CRITERIA = [
    (1, "projective spaces n = 1..16, both twists", check_projective_spaces),
    (2, "Grassmannians m <= n, m + n <= 10, both twists", check_grassmannians),
    (3, "symplectic Grassmannians n = 1..8, rho patterns", check_symplectic),
    (4, "quadrics n = 3..12, both twists", check_quadrics),
    (5, "spinor varieties n = 2..9, rho patterns, twisted zero", check_spinor),
    (6, "EIII and EVII", check_exceptional),
    (7, "point", check_point),
    (8, "Grassmannian Sq^2 cohomology vs dilated Betti numbers, m + n <= 8", check_structural),
    (9, "property suite over the catalog", check_properties),
    (10, "presentation-file round trip over the catalog", check_round_trip),
]


@pytest.mark.parametrize("number,title,check", [pytest.param(*c, marks=pytest.mark.criterion(*c[:2]),
                                                             id=f"criterion_{c[0]:02d}") for c in CRITERIA])
def test_criterion(number, title, check):
    problems = check()
    print(f"criterion {number}: {'PASS' if not problems else 'FAIL'}  {title}")
    assert not problems, "\n".join(problems)


if __name__ == "__main__":
    failed = 0
    for number, title, check in CRITERIA:
        start = time.perf_counter()
        problems = check()
        status = "PASS" if not problems else "FAIL"
        failed += bool(problems)
        print(f"criterion {number:>2}: {status}  {title}  ({time.perf_counter() - start:.2f}s)")
        for line in problems:
            print(f"    {line}")
    sys.exit(1 if failed else 0)
