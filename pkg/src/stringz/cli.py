"""Command line front end: ``stringz <subcommand> <algebra> ...``.

Exit status is 0 on success, 1 on a domain error (for example a rank asked of a
non-domestic algebra) and 2 on usage or parse errors.  Errors go to stderr.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import TextIO

from .bands import NonDomesticError, analyse_bands
from .bridge import bridge_quiver
from .homoracle import build_module, graph_map_count, hom_dim_oracle
from .presentation import (PRESETS, Presentation, PresentationError, checked, load_preset,
                           opposite_presentation, parse_presentation, validate_string_algebra)
from .spectrum import (Bounds, InfString, PointError, RankReport, cb_rank, dual_point,
                       enumerate_points, format_point, in_basic_nbhd, kg_dimension, parse_point)
from .words import Word, WordError, parse_word


class UsageError(Exception):
    pass


class DomainError(Exception):
    pass


# -- helpers ----------------------------------------------------------------

def load_algebra(arg: str) -> Presentation:
    path = Path(arg)
    if path.is_file():
        try:
            text = path.read_text("utf-8")
        except OSError as e:
            raise UsageError(f"cannot read {arg}: {e}") from None
        return parse_presentation(text)
    stem = path.name[:-4] if path.name.endswith(".alg") else path.name
    if stem in PRESETS:
        return load_preset(stem)
    raise UsageError(f"no such algebra file or preset: {arg} (presets: {', '.join(PRESETS)})")


def _colour_enabled(stream: TextIO) -> bool:
    mode = os.environ.get("STRINGZ_COLOR", "auto").lower()
    if mode not in ("auto", "always", "never"):
        raise UsageError(f"STRINGZ_COLOR must be auto, always or never, not {mode!r}")
    if mode == "auto":
        return hasattr(stream, "isatty") and stream.isatty()
    return mode == "always"


class Out:
    def __init__(self, stream: TextIO):
        self.stream = stream
        self.colour = _colour_enabled(stream)

    def __call__(self, text: str = ""):
        print(text, file=self.stream)

    def mark(self, text: str, good: bool) -> str:
        if not self.colour:
            return text
        return f"\x1b[{32 if good else 31}m{text}\x1b[0m"


def point_kind(pt) -> str:
    if isinstance(pt, InfString):
        return pt.module_kind
    return pt.kind


def point_record(r: RankReport) -> dict:
    return {"expr": format_point(r.point), "kind": point_kind(r.point), "rank": r.rank,
            "trace": r.trace}


def report(p: Presentation, points: list[RankReport] | None = None) -> dict:
    """Machine-readable summary of an algebra."""
    census = analyse_bands(p)
    out = {"algebra": p.name, "domestic": census.domestic, "n_domestic": census.n_domestic,
           "bands": [], "bridge_quiver": None, "kg_dimension": kg_dimension(p),
           "points": [point_record(r) for r in points or []]}
    if census.domestic:
        out["bands"] = [{"repr": str(c), "inverse_of": str(census.inverse(c))}
                        for c in census.classes]
        q = bridge_quiver(p)
        out["bridge_quiver"] = {
            "vertices": [str(c) for c in census.classes],
            "edges": [{"src": str(census.classes[e.src]), "dst": str(census.classes[e.dst]),
                       "word": str(e.word), "flag": e.flag} for e in q.edges],
        }
    return out


def dump_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False)


def bridge_dot(p: Presentation) -> str:
    q = bridge_quiver(p)
    lines = [f'digraph "{p.name}" {{', "  rankdir=LR;"]
    for c in q.classes:
        lines.append(f'  b{c.id} [label="{c}"];')
    for e in q.edges:
        style = "solid" if e.flag == "ascending" else "dashed"
        lines.append(f'  b{e.src} -> b{e.dst} [label="{e.word} ({e.flag})", style={style}];')
    lines.append("}")
    return "\n".join(lines)


def _require_domestic(p: Presentation):
    census = analyse_bands(p)
    if not census.domestic:
        raise NonDomesticError(census.witness)


def _parse_bounds(text: str) -> Bounds:
    try:
        parts = [int(x) for x in text.split(",")]
    except ValueError:
        parts = []
    if len(parts) != 3 or min(parts) < 0:
        raise UsageError(f"--bounds expects L,K,P with non-negative integers, got {text!r}")
    return Bounds(*parts)


def _finite_word(p: Presentation, text: str) -> Word:
    w = parse_word(text, p)
    if not isinstance(w, Word):
        raise UsageError("hom takes finite words")
    return w


# -- subcommands ------------------------------------------------------------

def cmd_validate(p: Presentation, args, out: Out) -> int:
    res = validate_string_algebra(p)
    if res.valid:
        out(f"{p.name}: " + out.mark("valid string algebra", True))
        return 0
    out(f"{p.name}: " + out.mark("not a string algebra", False))
    for v in res.violations:
        out(f"  {v}")
    return 1


def cmd_info(p: Presentation, args, out: Out) -> int:
    if args.json:
        out(dump_json(report(p)))
        return 0
    census = analyse_bands(p)
    out(f"algebra {p.name}: {len(p.vertices)} vertices, {len(p.arrows)} arrows, "
        f"{len(p.relations)} relations")
    if not census.domestic:
        a, b = census.witness
        out(out.mark("non-domestic", False) + f": bands {a} and {b} share a first letter")
        return 0
    out(out.mark(f"{census.n_domestic}-domestic", True))
    for c in census.classes:
        out(f"  band {c}  (inverse {census.inverse(c)})")
    return 0


def cmd_bridge_quiver(p: Presentation, args, out: Out) -> int:
    _require_domestic(p)
    if args.dot:
        out(bridge_dot(p))
        return 0
    if args.json:
        out(dump_json(report(p)["bridge_quiver"]))
        return 0
    q = bridge_quiver(p)
    if not q.edges:
        out("no bridges")
    for e in q.edges:
        out(f"{q.classes[e.src]} -> {q.classes[e.dst]}  via {e.word}  ({e.flag})")
    return 0


def cmd_kg_dim(p: Presentation, args, out: Out) -> int:
    d = kg_dimension(p)
    if args.json:
        out(dump_json({"algebra": p.name, "kg_dimension": d}))
    else:
        out("undefined" if d is None else str(d))
    return 0


def cmd_rank(p: Presentation, args, out: Out) -> int:
    r = cb_rank(p, parse_point(p, args.point))
    if args.json:
        out(dump_json(point_record(r)))
    else:
        out(str(r.rank))
        out(f"trace: {r.trace}")
    return 0


def cmd_points(p: Presentation, args, out: Out) -> int:
    _require_domestic(p)
    pts = enumerate_points(p, _parse_bounds(args.bounds))
    if args.json:
        out(dump_json(report(p, pts)))
        return 0
    for r in pts:
        out(f"{r.rank}\t{point_kind(r.point)}\t{format_point(r.point)}\t{r.trace}")
    return 0


def cmd_hom(p: Presentation, args, out: Out) -> int:
    u, v = _finite_word(p, args.u), _finite_word(p, args.v)
    count, maps = graph_map_count(p, u, v)
    oracle = hom_dim_oracle(build_module(p, u), build_module(p, v))
    if args.json:
        out(dump_json({"graph_maps": count, "oracle": oracle,
                       "mediators": [{"word": str(m.mediator), "factor": list(m.factor),
                                      "image": list(m.image), "inverted": m.inverted}
                                     for m in maps]}))
    else:
        out(f"graph maps: {count}")
        for m in maps:
            inv = ", inverted" if m.inverted else ""
            out(f"  {m.mediator}  factor {m.factor[0]}..{m.factor[1]}  "
                f"image {m.image[0]}..{m.image[1]}{inv}")
        out(f"oracle dimension: {oracle}")
        out(out.mark("agree", True) if count == oracle else out.mark("DISAGREE", False))
    return 0 if count == oracle else 1


def cmd_nbhd(p: Presentation, args, out: Out) -> int:
    rest = args.rest
    if len(rest) == 2 and args.nbhd_index is not None:
        n, cand = args.nbhd_index, rest[1]
    elif len(rest) == 3:
        try:
            n = int(rest[1])
        except ValueError:
            raise UsageError(f"neighbourhood index must be an integer, got {rest[1]!r}") from None
        cand = rest[2]
    else:
        raise UsageError("usage: nbhd <center> <n> <candidate>  or  "
                         "nbhd <center> <candidate> --nbhd-index n")
    center = parse_point(p, rest[0])
    if n < 1:
        raise UsageError("neighbourhood index must be at least 1")
    res = in_basic_nbhd(p, center, n, parse_point(p, cand))
    text = str(res).lower() if isinstance(res, bool) else str(res)
    if args.json:
        out(dump_json({"center": format_point(center), "index": n, "result": text}))
    else:
        out(out.mark(text, res is True))
    return 0


def cmd_dual(p: Presentation, args, out: Out) -> int:
    _require_domestic(p)
    d = dual_point(p, parse_point(p, args.point))
    op = opposite_presentation(p)
    if args.json:
        out(dump_json({"dual": format_point(d), "opposite": op.to_text()}))
    else:
        out(format_point(d))
        out("")
        out(op.to_text().rstrip())
    return 0


COMMANDS = {
    "validate": cmd_validate,
    "info": cmd_info,
    "bridge-quiver": cmd_bridge_quiver,
    "kg-dim": cmd_kg_dim,
    "rank": cmd_rank,
    "points": cmd_points,
    "hom": cmd_hom,
    "nbhd": cmd_nbhd,
    "dual": cmd_dual,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="stringz", description="Ziegler spectra of domestic string algebras.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("algebra", help="algebra file, or a bundled preset name")
        sp.add_argument("--json", action="store_true", help="emit JSON")
        return sp

    add("validate", "check the string algebra axioms")
    add("info", "bands and domesticity")
    sp = add("bridge-quiver", "bridges between bands")
    sp.add_argument("--dot", action="store_true", help="emit Graphviz DOT")
    add("kg-dim", "Krull-Gabriel dimension")
    add("rank", "Cantor-Bendixson rank of a point").add_argument("point")
    add("points", "enumerate points with ranks").add_argument(
        "--bounds", default="4,2,2", help="L,K,P: word length, band size, core length")
    sp = add("hom", "graph maps between string modules, checked by linear algebra")
    sp.add_argument("u")
    sp.add_argument("v")
    sp = add("nbhd", "basic neighbourhood membership")
    sp.add_argument("rest", nargs="+", metavar="ARG", help="<center> <n> <candidate>")
    sp.add_argument("--nbhd-index", type=int, default=None)
    add("dual", "elementary dual of a point").add_argument("point")
    return parser


def execute(argv: list[str], stdout: TextIO = sys.stdout, stderr: TextIO = sys.stderr) -> int:
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "dot", False) and args.json:
            raise UsageError("--dot and --json are exclusive")
        out = Out(stdout)
        p = load_algebra(args.algebra)
        if args.command != "validate":
            try:
                checked(p)
            except PresentationError as e:
                raise DomainError(str(e)) from None
        return COMMANDS[args.command](p, args, out)
    except UsageError as e:
        print(f"stringz: error: {e}", file=stderr)
        return 2
    except (PresentationError, PointError, WordError) as e:
        print(f"stringz: error: {e}", file=stderr)
        return 2
    except (NonDomesticError, DomainError) as e:
        print(f"stringz: error: {e}", file=stderr)
        return 1


def main(argv: list[str] | None = None) -> int:
    return execute(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
