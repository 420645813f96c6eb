"""Command-line front end.

    kowitt --space gr:2,3 --twist all
    kowitt --space cp --range 1..16 --format csv --check
    kowitt --space file:my_space.txt --representatives
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass
from pathlib import Path

from .catalog import FAMILIES, TRIVIAL, SpaceData, build, expected_table
from .dga_cohomology import cohomology_dims
from .formats import (PresentationFileError, emit, parse_presentation_file, table_record,
                      write_presentation_file)
from .graded_algebra import poincare_dims
from .ko import KOTable, ko_table
from .steenrod import Differential

# smallest allowed value of each parameter, with the reason shown on violation
_BOUNDS = {
    "cp": ((1, "n >= 1"),),
    "gr": ((1, "m >= 1"), (1, "n >= 1")),
    "lg": ((1, "n >= 1"),),
    "quadric": ((3, "n >= 3: Q^1 = CP^1 and Q^2 = CP^1 x CP^1 are outside the one-twist catalog"),),
    "spinor": ((2, "n >= 2"),),
}
_USAGE = "cp:n | gr:m,n | lg:n | quadric:n | spinor:n | eiii | evii | point | file:PATH"


class SpaceSpecError(ValueError):
    def __init__(self, message: str, text: str, position: int):
        self.position = position
        super().__init__(f"{message} (at position {position} in {text!r})")


@dataclass(frozen=True)
class SpaceSpec:
    family: str
    params: tuple[int, ...] = ()
    twist: str | None = None
    path: str | None = None

    @property
    def space_id(self) -> str:
        if self.family == "file":
            return f"file:{self.path}"
        if not self.params:
            return self.family
        return f"{self.family}:{','.join(map(str, self.params))}"


def parse_space_spec(text: str) -> SpaceSpec:
    """Parse ``family[:params] [--twist NAME]``; positions in errors are 0-based."""
    twist = None
    body = text
    m = re.search(r"\s--twist(?:\s+|=)(\S+)\s*$", text)
    if m:
        twist, body = m.group(1), text[:m.start()]
    elif "--twist" in text:
        raise SpaceSpecError("'--twist' needs a twist name", text, text.index("--twist"))
    lead = len(body) - len(body.lstrip())
    body = body.strip()
    family, colon, rest = body.partition(":")
    key = family.lower()
    if key == "file":
        if not rest:
            raise SpaceSpecError("file: needs a path", text, lead + len(body))
        return SpaceSpec("file", (), twist, rest)
    if key not in FAMILIES:
        raise SpaceSpecError(f"unknown family {family!r}; expected {_USAGE}", text, lead)
    arity = FAMILIES[key][0]
    params: list[int] = []
    pos = lead + len(family) + len(colon)
    tokens = rest.split(",") if colon else []
    if len(tokens) != arity:
        raise SpaceSpecError(f"{key} takes {arity} parameter(s), got {len(tokens)}", text, pos)
    for i, token in enumerate(tokens):
        if not re.fullmatch(r"\s*\d+\s*", token):
            raise SpaceSpecError(f"malformed integer {token!r}", text, pos)
        value = int(token)
        low, reason = _BOUNDS[key][i]
        if value < low:
            raise SpaceSpecError(f"{key}:{rest} out of range: {key} needs {reason}", text, pos)
        params.append(value)
        pos += len(token) + 1
    return SpaceSpec(key, tuple(params), twist)


def load_space(spec: SpaceSpec) -> SpaceData:
    if spec.family == "file":
        try:
            text = Path(spec.path).read_text()
        except OSError as exc:
            raise ValueError(f"cannot read {spec.path}: {exc.strerror}") from None
        return parse_presentation_file(text, spec.space_id)
    return build(spec.family, spec.params)


def expand_range(family: str, text: str) -> list[SpaceSpec]:
    """``gr`` ranges over m + n (with m <= n); other families over their parameter."""
    m = re.fullmatch(r"\s*(\d+)\s*\.\.\s*(\d+)\s*", text)
    if not m:
        raise ValueError(f"malformed range {text!r}; expected LO..HI")
    lo, hi = int(m.group(1)), int(m.group(2))
    key = family.lower()
    arity = FAMILIES.get(key, (None,))[0]
    if key == "gr":
        return [SpaceSpec("gr", (a, s - a)) for s in range(lo, hi + 1) for a in range(1, s // 2 + 1)]
    if arity != 1:
        raise ValueError(f"--range needs a one-parameter family or gr, got {family!r}")
    low = _BOUNDS[key][0][0]
    return [SpaceSpec(key, (n,)) for n in range(max(lo, low), hi + 1)]


def twists_for(space: SpaceData, selector: str | None) -> list[str]:
    if selector is not None and selector.lower() == "all":
        return [TRIVIAL] + space.nontrivial_twists()
    return [space.twist(selector)[0]]


def mismatches(computed: KOTable, expected: KOTable) -> list[str]:
    names = ("t0", "t1", "s0", "s1", "s2", "s3")
    return [f"{computed.space} twist {computed.twist_label}: {n} computed {a}, expected {b}"
            for n, a, b in zip(names, computed.numbers(), expected.numbers()) if a != b]


def _representatives(space: SpaceData, label: str) -> dict[int, list[str]]:
    _, c = space.twist(label)
    p = space.presentation
    dims = cohomology_dims(p, Differential(space.sq2, c), representatives=True)
    return {d: [p.format_element(u) for u in reps] for d, reps in sorted(dims.representatives.items())}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="kowitt", description=(
        "KO-, Grothendieck-Witt and Witt groups of even-cell varieties from mod-2 cohomology "
        "with Sq^2 data."))
    ap.add_argument("--space", action="append", required=True, metavar="SPEC",
                    help=f"{_USAGE}; may be repeated; a bare family name with --range")
    ap.add_argument("--twist", metavar="NAME", help="line-bundle twist (default trivial; 'all' for every twist)")
    ap.add_argument("--format", choices=("text", "csv", "json"), default="text")
    ap.add_argument("--range", metavar="LO..HI", help="expand a bare family over a parameter range")
    ap.add_argument("--check", action="store_true", help="compare against the closed-form tables")
    ap.add_argument("--representatives", action="store_true", help="print cohomology class representatives")
    ap.add_argument("--betti", action="store_true", help="print Poincare dimensions only")
    ap.add_argument("--export", action="store_true", help="print the presentation file of each space")
    return ap


def _specs(args) -> list[SpaceSpec]:
    if args.range is not None:
        return [s for family in args.space for s in expand_range(family, args.range)]
    return [parse_space_spec(text) for text in args.space]


def run(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    if args.representatives and args.format == "csv":
        print("kowitt: --representatives is available in text and json formats only", file=err)
        return 2
    try:
        specs = _specs(args)
        spaces = [(spec, load_space(spec)) for spec in specs]
    except (ValueError, PresentationFileError) as exc:
        print(f"kowitt: {exc}", file=err)
        return 2

    if args.export:
        out.write("\n".join(write_presentation_file(space) for _, space in spaces))
        return 0
    if args.betti:
        out.write(_emit_betti(spaces, args.format))
        return 0

    tables: list[KOTable] = []
    reps: list[dict[int, list[str]]] = []
    try:
        for spec, space in spaces:
            selector = args.twist if args.twist is not None else spec.twist
            for label in twists_for(space, selector):
                tables.append(ko_table(space, label))
                if args.representatives:
                    reps.append(_representatives(space, label))
    except (KeyError, ValueError) as exc:
        print(f"kowitt: {exc.args[0] if exc.args else exc}", file=err)
        return 2

    if args.representatives and args.format == "json":
        records = [dict(table_record(t), representatives={str(d): r for d, r in rs.items()})
                   for t, rs in zip(tables, reps)]
        out.write(json.dumps(records[0] if len(records) == 1 else records, indent=2, ensure_ascii=False) + "\n")
    else:
        out.write(emit(tables, args.format))
        if args.representatives:
            for t, rs in zip(tables, reps):
                out.write(f"\n# representatives for {t.space}, twist {t.twist_label}\n")
                for d, r in rs.items():
                    out.write(f"H^{d}: {', '.join(r)}\n")

    if args.check:
        problems = []
        for t in tables:
            try:
                problems += mismatches(t, expected_table(t.space, t.twist_label))
            except (ValueError, KeyError) as exc:
                problems.append(f"{t.space}: no closed form to check against ({exc})")
        for line in problems:
            print(f"mismatch: {line}", file=err)
        if problems:
            return 1
        print(f"check: {len(tables)} table(s) agree with the closed forms", file=err)
    return 0


def _emit_betti(spaces: list[tuple[SpaceSpec, SpaceData]], fmt: str) -> str:
    rows = [(space.space_id, d, n) for _, space in spaces for d, n in poincare_dims(space.presentation)]
    if fmt == "json":
        by_space: dict[str, dict[str, int]] = {}
        for sid, d, n in rows:
            by_space.setdefault(sid, {})[str(d)] = n
        return json.dumps(by_space, indent=2) + "\n"
    if fmt == "csv":
        return "space,degree,dim\n" + "".join(f"{sid},{d},{n}\n" for sid, d, n in rows)
    lines = []
    for _, space in spaces:
        dims = poincare_dims(space.presentation)
        lines.append(f"{space.space_id}: " + " ".join(f"{n}" for _, n in dims)
                     + f"  (degrees 0..{space.presentation.top_degree} step 2)")
    return "\n".join(lines) + "\n"


def main(argv: list[str] | None = None) -> None:
    sys.exit(run(argv))
