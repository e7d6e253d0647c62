"""Quiver-with-monomial-relations presentations of string algebras.

The text format is line oriented::

    algebra lam2
    vertices: 1 2 3 4
    arrows: a: 1 -> 2, b: 1 -> 2, g: 2 -> 3, d: 3 -> 4, e: 3 -> 4
    relations: g b, d g

A relation ``g b`` is a path in right-to-left composition order: first ``b``
then ``g``.  ``arrows:`` and ``relations:`` lines may be repeated.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from importlib import resources
from typing import Iterable, NamedTuple

PRESETS = ("kron", "lam2", "lam3", "x1", "x3", "x4", "x5", "gp23", "a2")

_IDENT = re.compile(r"[A-Za-z0-9_.']+")
_NAME = re.compile(r"[A-Za-z0-9_.'^]+")


class PresentationError(ValueError):
    """Syntax or structural error in a presentation source."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.message = message
        self.line = line
        self.column = column
        where = f"{line}:{column}: " if line else ""
        super().__init__(where + message)


class Arrow(NamedTuple):
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class Violation:
    axiom: str
    where: str
    detail: str

    def __str__(self):
        return f"{self.axiom} at {self.where}: {self.detail}"


@dataclass(frozen=True)
class Presentation:
    name: str
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]
    relations: tuple[tuple[str, ...], ...] = ()

    @cached_property
    def arrow(self) -> dict[str, Arrow]:
        return {a.name: a for a in self.arrows}

    @cached_property
    def max_relation_length(self) -> int:
        return max((len(r) for r in self.relations), default=2)

    def is_zero_path(self, names: Iterable[str]) -> bool:
        """True if the path (right-to-left names) lies in the relation ideal."""
        names = tuple(names)
        for r in self.relations:
            k = len(r)
            for i in range(len(names) - k + 1):
                if names[i:i + k] == r:
                    return True
        return False

    def to_text(self) -> str:
        lines = [f"algebra {self.name}", "vertices: " + " ".join(self.vertices)]
        lines.append("arrows: " + ", ".join(f"{a.name}: {a.source} -> {a.target}"
                                            for a in self.arrows))
        lines.append("relations: " + ", ".join(" ".join(r) for r in self.relations))
        return "\n".join(lines).rstrip() + "\n"


@dataclass(frozen=True)
class CheckedPresentation:
    """A presentation that passed :func:`validate_string_algebra`."""

    presentation: Presentation
    violations: tuple[Violation, ...] = field(default=())

    @property
    def valid(self) -> bool:
        return not self.violations


def parse_presentation(text: str) -> Presentation:
    name = None
    vertices: list[str] = []
    arrows: list[Arrow] = []
    arrow_pos: dict[str, tuple[int, int]] = {}
    raw_relations: list[tuple[list[str], int, int]] = []
    seen_vertices = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        indent = len(line) - len(line.lstrip())
        stripped = line.strip()
        if stripped.startswith("algebra"):
            rest = stripped[len("algebra"):].strip()
            if not rest or not _NAME.fullmatch(rest):
                raise PresentationError("expected 'algebra <name>'", lineno, indent + 1)
            name = rest
            continue
        key, sep, body = stripped.partition(":")
        if not sep:
            raise PresentationError(f"unrecognised line {stripped!r}", lineno, indent + 1)
        key = key.strip()
        col0 = indent + len(key) + 2
        if key == "vertices":
            seen_vertices = True
            for m in re.finditer(r"\S+", body):
                tok = m.group()
                if not _IDENT.fullmatch(tok):
                    raise PresentationError(f"bad vertex name {tok!r}", lineno, col0 + m.start())
                if tok in vertices:
                    raise PresentationError(f"duplicate vertex {tok!r}", lineno, col0 + m.start())
                vertices.append(tok)
        elif key == "arrows":
            offset = 0
            for chunk in body.split(","):
                col = col0 + offset
                offset += len(chunk) + 1
                if not chunk.strip():
                    continue
                m = re.fullmatch(r"\s*(\S+)\s*:\s*(\S+)\s*->\s*(\S+)\s*", chunk)
                if not m or not all(_IDENT.fullmatch(g) for g in m.groups()):
                    raise PresentationError(f"bad arrow declaration {chunk.strip()!r}", lineno, col)
                arrow = Arrow(*m.groups())
                if any(a.name == arrow.name for a in arrows):
                    raise PresentationError(f"duplicate arrow name {arrow.name!r}", lineno, col)
                arrows.append(arrow)
                arrow_pos[arrow.name] = (lineno, col)
        elif key == "relations":
            offset = 0
            for chunk in body.split(","):
                col = col0 + offset
                offset += len(chunk) + 1
                if chunk.strip():
                    raw_relations.append((chunk.split(), lineno, col))
        else:
            raise PresentationError(f"unknown section {key!r}", lineno, indent + 1)
    if name is None:
        raise PresentationError("missing 'algebra <name>' line", 1, 1)
    if not seen_vertices and arrows:
        raise PresentationError("missing 'vertices:' line", 1, 1)
    byname = {a.name: a for a in arrows}
    for a in arrows:
        for v in (a.source, a.target):
            if v not in vertices:
                raise PresentationError(f"arrow {a.name!r} uses unknown vertex {v!r}",
                                        *arrow_pos[a.name])
    relations = []
    for names, lineno, col in raw_relations:
        for n in names:
            if n not in byname:
                raise PresentationError(f"relation mentions unknown arrow {n!r}", lineno, col)
        if len(names) < 2:
            raise PresentationError(
                f"relation {' '.join(names)!r} has length < 2; remove the arrow instead",
                lineno, col)
        for left, right in zip(names, names[1:]):
            # right is applied first, so its target must be left's source
            if byname[right].target != byname[left].source:
                raise PresentationError(
                    f"relation {' '.join(names)!r} is not a composable path", lineno, col)
        relations.append(tuple(names))
    return Presentation(name, tuple(vertices), tuple(arrows), tuple(relations))


def load_preset(name: str) -> Presentation:
    stem = name[:-4] if name.endswith(".alg") else name
    if stem not in PRESETS:
        raise KeyError(f"no bundled preset {name!r}")
    text = resources.files("stringz.presets").joinpath(f"{stem}.alg").read_text("utf-8")
    return parse_presentation(text)


def _has_free_cycle(p: Presentation) -> bool:
    """Is there an infinite direct path avoiding the relations?"""
    k = max(1, p.max_relation_length - 1)
    # states: relation-free paths of k arrows, written right to left
    def extend(path):
        # arrows applied after the first-written arrow of path
        head = p.arrow[path[0]]
        return [(b.name,) + path for b in p.arrows if b.source == head.target
                and not p.is_zero_path((b.name,) + path[:k])]

    states = [(a.name,) for a in p.arrows]
    for _ in range(k - 1):
        states = [q for s in states for q in extend(s)]
    graph = {s: [q[:k] for q in extend(s)] for s in states}
    colour: dict = {}

    def dfs(s):
        colour[s] = 1
        for t in graph.get(s, ()):
            c = colour.get(t, 0)
            if c == 1 or (c == 0 and dfs(t)):
                return True
        colour[s] = 2
        return False

    import sys
    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 10 * len(graph) + 100))
    try:
        return any(colour.get(s, 0) == 0 and dfs(s) for s in graph)
    finally:
        sys.setrecursionlimit(limit)


def validate_string_algebra(p: Presentation) -> CheckedPresentation:
    out: list[Violation] = []
    for v in p.vertices:
        ins = [a.name for a in p.arrows if a.target == v]
        outs = [a.name for a in p.arrows if a.source == v]
        if len(ins) > 2:
            out.append(Violation("in-degree > 2", f"vertex {v}", ", ".join(ins)))
        if len(outs) > 2:
            out.append(Violation("out-degree > 2", f"vertex {v}", ", ".join(outs)))
    for a in p.arrows:
        after = [b.name for b in p.arrows
                 if b.source == a.target and not p.is_zero_path((b.name, a.name))]
        before = [c.name for c in p.arrows
                  if c.target == a.source and not p.is_zero_path((a.name, c.name))]
        if len(after) > 1:
            out.append(Violation("non-zero successors > 1", f"arrow {a.name}",
                                 ", ".join(after)))
        if len(before) > 1:
            out.append(Violation("non-zero predecessors > 1", f"arrow {a.name}",
                                 ", ".join(before)))
    if _has_free_cycle(p):
        out.append(Violation("infinite dimension", "quiver",
                             "an oriented cycle avoids the relations"))
    return CheckedPresentation(p, tuple(out))


def checked(p: Presentation) -> Presentation:
    """Return p, raising PresentationError if it is not a string algebra."""
    res = validate_string_algebra(p)
    if not res.valid:
        raise PresentationError("not a string algebra: " + "; ".join(map(str, res.violations)))
    return p


def opposite_presentation(p: Presentation) -> Presentation:
    name = p.name[:-3] if p.name.endswith("^op") else p.name + "^op"
    arrows = tuple(Arrow(a.name, a.target, a.source) for a in p.arrows)
    relations = tuple(tuple(reversed(r)) for r in p.relations)
    return Presentation(name, p.vertices, arrows, relations)
