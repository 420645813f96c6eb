"""Presentation files and table output (text, csv, json).

Presentation file grammar, one directive per line::

    space NAME
    dimc D
    gen NAME DEGREE
    rel POLY
    sq2 NAME = POLY
    twist NAME = POLY

POLY is a ``+``-separated sum of ``*``-separated ``gen^exp`` factors; ``1`` is
the empty product and ``0`` the empty sum. ``#`` starts a comment.
"""

from __future__ import annotations

import csv
import io
import json
from typing import Sequence

from .catalog import TRIVIAL, SpaceData
from .graded_algebra import Element, Presentation, normal_form, parse_poly, poly_degree
from .ko import CONDITIONAL, KOTable, gw_w_groups, ko_groups
from .steenrod import SqAction, SteenrodError

CSV_HEADER = ["space", "twist", "t0", "t1", "s0", "s1", "s2", "s3", "degeneration_assumed"]


class PresentationFileError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _split_assignment(rest: str, lineno: int) -> tuple[str, str]:
    name, eq, value = rest.partition("=")
    if not eq or not name.strip() or not value.strip():
        raise PresentationFileError("expected 'NAME = POLY'", lineno)
    return name.strip(), value.strip()


def parse_presentation_file(text: str, space_id: str | None = None) -> SpaceData:
    name = None
    dimc = None
    gens: list[tuple[str, int, int]] = []
    rels: list[tuple[str, int]] = []
    sq2: dict[str, tuple[str, int]] = {}
    twists: list[tuple[str, str, int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        keyword, _, rest = line.partition(" ")
        rest = rest.strip()
        if keyword == "space":
            if not rest:
                raise PresentationFileError("missing space name", lineno)
            name = rest
        elif keyword == "dimc":
            try:
                dimc = int(rest)
            except ValueError:
                raise PresentationFileError(f"malformed complex dimension {rest!r}", lineno) from None
            if dimc < 0:
                raise PresentationFileError("complex dimension must be non-negative", lineno)
        elif keyword == "gen":
            parts = rest.split()
            if len(parts) != 2:
                raise PresentationFileError("expected 'gen NAME DEGREE'", lineno)
            try:
                degree = int(parts[1])
            except ValueError:
                raise PresentationFileError(f"malformed degree {parts[1]!r}", lineno) from None
            if degree <= 0 or degree % 2:
                raise PresentationFileError(
                    f"generator {parts[0]} has degree {degree}: even degrees only", lineno)
            if any(g == parts[0] for g, _, _ in gens):
                raise PresentationFileError(f"duplicate generator {parts[0]}", lineno)
            gens.append((parts[0], degree, lineno))
        elif keyword == "rel":
            rels.append((rest, lineno))
        elif keyword == "sq2":
            g, value = _split_assignment(rest, lineno)
            if g in sq2:
                raise PresentationFileError(f"second sq2 line for {g}", lineno)
            sq2[g] = (value, lineno)
        elif keyword == "twist":
            t, value = _split_assignment(rest, lineno)
            twists.append((t, value, lineno))
        else:
            raise PresentationFileError(f"unknown directive {keyword!r}", lineno)
    if dimc is None:
        raise PresentationFileError("missing 'dimc' line")
    names = [g for g, _, _ in gens]
    degrees = [d for _, d, _ in gens]

    def poly(value: str, lineno: int):
        try:
            return parse_poly(value, names)
        except ValueError as exc:
            raise PresentationFileError(str(exc), lineno) from None

    relations = []
    for value, lineno in rels:
        r = poly(value, lineno)
        try:
            poly_degree(r, degrees)
        except ValueError as exc:
            raise PresentationFileError(f"relation {value!r}: {exc}", lineno) from None
        relations.append(r)
    try:
        p = Presentation(tuple((g, d) for g, d, _ in gens), tuple(relations), 2 * dimc)
    except ValueError as exc:
        raise PresentationFileError(str(exc)) from None
    # vanishing in top+2 .. top+maxdeg forces vanishing in every higher degree
    for d in range(p.top_degree + 2, p.top_degree + max(degrees, default=0) + 1, 2):
        if p.standard_monomials(d):
            raise PresentationFileError(
                f"the relations leave nonzero classes in degree {d} > 2*dimc = {p.top_degree}")

    for g in sq2:
        if g not in names:
            raise PresentationFileError(f"sq2 given for unknown generator {g}", sq2[g][1])
    values = []
    for g, degree, gen_line in gens:
        if g not in sq2:
            raise PresentationFileError(f"generator {g} has no sq2 line", gen_line)
        value, lineno = sq2[g]
        v = poly(value, lineno)
        try:
            elt = normal_form(p, v, degree + 2)
        except ValueError as exc:
            raise PresentationFileError(f"sq2 {g}: {exc}", lineno) from None
        if degree == 2 and elt != normal_form(p, poly(f"{g}^2", lineno), 4):
            raise PresentationFileError(f"Sq^2({g}) must equal {g}^2 for a degree-2 generator", lineno)
        values.append(v)
    try:
        action = SqAction(p, tuple(values))
    except SteenrodError as exc:
        raise PresentationFileError(str(exc)) from None

    named: dict[str, Element | None] = {TRIVIAL: None}
    for t, value, lineno in twists:
        v = poly(value, lineno)
        try:
            c = normal_form(p, v, 2)
        except ValueError as exc:
            raise PresentationFileError(f"twist {t}: {exc}", lineno) from None
        named[t] = c
    name = name or "custom"
    return SpaceData(name, space_id or name, p, action, named, dimc, CONDITIONAL, "file", ())


def write_presentation_file(space: SpaceData) -> str:
    """Canonical text form; ``parse_presentation_file`` reads it back."""
    p = space.presentation
    lines = [f"space {space.name}", f"dimc {space.complex_dimension}"]
    lines += [f"gen {g} {d}" for g, d in p.generators]
    lines += [f"rel {p.format(r)}" for r in p.relations if r]
    lines += [f"sq2 {g} = {p.format(v)}" for g, v in zip(p.names, space.sq2.values)]
    for label, c in space.twists.items():
        if c is not None:
            lines.append(f"twist {label} = {p.format_element(c)}")
    return "\n".join(lines) + "\n"


# -- tables ------------------------------------------------------------------

def table_record(table: KOTable) -> dict:
    return {
        "space": table.space,
        "twist": table.twist_label,
        "t0": table.t0,
        "t1": table.t1,
        "s": list(table.s),
        "groups": {**ko_groups(table), **gw_w_groups(table)},
        "degeneration_assumed": table.degeneration_assumed,
        "citation": table.citation,
    }


def emit_text(tables: Sequence[KOTable]) -> str:
    rows = [["space", "twist", "t0", "t1", "s0", "s1", "s2", "s3"]]
    for t in tables:
        rows.append([t.space, t.twist_label, *map(str, t.numbers())])
    out = [_grid(rows), ""]
    ko = [["space", "twist"] + [f"KO^{p}" for p in range(8)]]
    gw = [["space", "twist"] + [f"GW^{q}" for q in range(4)] + [f"W^{q}" for q in range(4)]]
    for t in tables:
        ko.append([t.space, t.twist_label, *ko_groups(t).values()])
        gw.append([t.space, t.twist_label, *gw_w_groups(t).values()])
    out += [_grid(ko), "", _grid(gw), ""]
    seen = []
    for t in tables:
        note = (t.space, t.citation)
        if note not in seen:
            seen.append(note)
            flag = "E3-degeneration assumed" if t.degeneration_assumed else "E3-degeneration not needed"
            out.append(f"# {t.space}: {flag}; {t.citation}")
    return "\n".join(out) + "\n"


def _grid(rows: list[list[str]]) -> str:
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    return "\n".join("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows)


def emit_csv(tables: Sequence[KOTable]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for t in tables:
        writer.writerow([t.space, t.twist_label, t.t0, t.t1, *t.s, str(t.degeneration_assumed).lower()])
    return buf.getvalue()


def emit_json(tables: Sequence[KOTable]) -> str:
    records = [table_record(t) for t in tables]
    return json.dumps(records[0] if len(records) == 1 else records, indent=2, ensure_ascii=False) + "\n"


def emit(tables: KOTable | Sequence[KOTable], fmt: str = "text") -> str:
    if isinstance(tables, KOTable):
        tables = [tables]
    if fmt == "text":
        return emit_text(tables)
    if fmt == "csv":
        return emit_csv(tables)
    if fmt == "json":
        return emit_json(tables)
    raise ValueError(f"unknown format {fmt!r}")
