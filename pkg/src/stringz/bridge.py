"""Band-free strings, bridges, the bridge quiver and band factorisations."""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property, lru_cache
import networkx as nx

from .bands import BandCensus, BandClass, NonDomesticError, analyse_bands, rotations
from .presentation import Presentation
from .words import (BandComparison, InfiniteWord, Letters, Word, WordError, all_letters,
                    can_append, compare_to_band_power, format_letters, h_assignment, head,
                    is_string, normalize)

ASCENDING = "ascending"
DESCENDING = "descending"


def _census(p: Presentation) -> BandCensus:
    census = analyse_bands(p)
    if not census.domestic:
        raise NonDomesticError(census.witness)
    return census


@lru_cache(maxsize=128)
def _band_rotations(p: Presentation) -> dict[Letters, int]:
    """Every rotation of every band, mapped to its class id."""
    return {r: c.id for c in _census(p).classes for r in rotations(c.rep)}


def _ends_with_band(p: Presentation, xs: Letters) -> bool:
    rots = _band_rotations(p)
    return any(xs[-n:] in rots for n in {len(r) for r in rots} if n <= len(xs))


def band_free_strings(p: Presentation) -> list[Word]:
    """All strings with no band rotation as a substring, empty words included."""
    _census(p)
    out = [Word((), (v, s)) for v in p.vertices for s in (1, -1)]
    stack: list[Letters] = [(l,) for l in all_letters(p)]
    while stack:
        xs = stack.pop()
        if _ends_with_band(p, xs):
            continue
        out.append(Word(xs))
        stack.extend(xs + (m,) for m in all_letters(p) if can_append(p, xs, m))
    return sorted(out, key=lambda w: (len(w), w))


def _power(xs: Letters, total: int) -> Letters:
    reps = total // len(xs) + 2
    return xs * reps


def _splits_around_band(p: Presentation, u: Letters, ends: set[int]) -> bool:
    # inserting a rotation of an end band only re-reads b u as a longer power
    for i in range(1, len(u)):
        for r, c in _band_rotations(p).items():
            if c not in ends and is_string(p, u[:i] + r + u[i:]):
                return True
    return False


def bridges(p: Presentation, b: BandClass, b2: BandClass) -> list[Word]:
    """All bridges from the band ``b`` to the band ``b2``."""
    if b.id == b2.id:
        raise WordError("bridges join two different bands")
    k = p.max_relation_length
    left = _power(b.rep, k)
    right = _power(b2.rep, k)
    H = h_assignment(p)
    out = []
    for w in band_free_strings(p):
        u = w.letters
        if not u:
            if w.basepoint != _empty_basepoint(p, H, b2):
                continue
        if not is_string(p, left + u + right):
            continue
        if _splits_around_band(p, u, {b.id, b2.id}):
            continue
        out.append(w)
    return out


def _empty_basepoint(p: Presentation, H, b: BandClass) -> tuple[str, int]:
    v = head(p, b.rep[0])
    return v, H.side(v, b.rep[0])


def bridge_flag(p: Presentation, b: BandClass, u: Letters, b2: BandClass) -> str:
    x = b.rep + tuple(u) + _power(b2.rep, len(b.rep) + len(u))
    res = compare_to_band_power(x, b.rep)
    if res is BandComparison.PERIODIC_PREFIX:
        raise AssertionError(f"bridge {format_letters(u)} never leaves {b}")
    return ASCENDING if res is BandComparison.ASCENDS else DESCENDING


@dataclass(frozen=True)
class BridgeEdge:
    src: int
    dst: int
    word: Word
    flag: str


@dataclass(frozen=True)
class BridgeQuiver:
    census: BandCensus
    edges: tuple[BridgeEdge, ...]

    @cached_property
    def graph(self) -> nx.MultiDiGraph:
        g = nx.MultiDiGraph()
        g.add_nodes_from(c.id for c in self.census.classes)
        for e in self.edges:
            g.add_edge(e.src, e.dst, word=e.word, flag=e.flag)
        return g

    @property
    def classes(self) -> tuple[BandClass, ...]:
        return self.census.classes

    def out_edges(self, v: int) -> list[BridgeEdge]:
        return [e for e in self.edges if e.src == v]

    @cached_property
    def _longest(self) -> dict[int, int]:
        g = self.graph
        if not nx.is_directed_acyclic_graph(g):
            raise AssertionError("bridge quiver has an oriented cycle")
        best: dict[int, int] = {}
        for v in reversed(list(nx.topological_sort(g))):
            best[v] = max((1 + best[w] for w in g.successors(v)), default=0)
        return best

    def longest_path_from(self, v: int) -> int:
        return self._longest[v]

    def max_path_length(self) -> int:
        return max(self._longest.values(), default=0)


@lru_cache(maxsize=64)
def bridge_quiver(p: Presentation) -> BridgeQuiver:
    census = _census(p)
    edges = []
    for b in census.classes:
        for b2 in census.classes:
            if b.id == b2.id:
                continue
            for u in bridges(p, b, b2):
                edges.append(BridgeEdge(b.id, b2.id, u, bridge_flag(p, b, u.letters, b2)))
    return BridgeQuiver(census, tuple(edges))


ALL = "all"


def indent(q: BridgeQuiver, v: int | BandClass, which: str = ALL) -> int:
    """Longest path from ``v``; with a flag, only paths whose first edge has it."""
    v = v.id if isinstance(v, BandClass) else v
    if which == ALL:
        return q.longest_path_from(v)
    if which not in (ASCENDING, DESCENDING):
        raise ValueError(f"unknown indent filter {which!r}")
    return max((1 + q.longest_path_from(e.dst) for e in q.out_edges(v) if e.flag == which),
               default=0)


# -- factorisation ----------------------------------------------------------

@dataclass(frozen=True)
class BandFactor:
    rotation: Letters
    band: int
    power: float  # an int, or math.inf for an infinite tail


@dataclass(frozen=True)
class BandFactorisation:
    connectors: tuple[Letters, ...]
    factors: tuple[BandFactor, ...]

    @property
    def band_length(self) -> int:
        return max(len(self.factors) - 1, 0)

    def letters(self) -> Letters:
        if any(f.power == math.inf for f in self.factors):
            raise ValueError("infinite factorisation")
        out: Letters = self.connectors[0]
        for f, c in zip(self.factors, self.connectors[1:]):
            out = out + f.rotation * int(f.power) + c
        return out

    def __str__(self):
        parts = []
        for i, f in enumerate(self.factors):
            if self.connectors[i]:
                parts.append(format_letters(self.connectors[i]))
            k = "inf" if f.power == math.inf else str(f.power)
            parts.append(f"({format_letters(f.rotation)})^{k}")
        if self.connectors[-1]:
            parts.append(format_letters(self.connectors[-1]))
        return " ".join(parts)


def _factorise_letters(p: Presentation, xs: Letters) -> BandFactorisation:
    rots = _band_rotations(p)
    lengths = sorted({len(r) for r in rots})
    connectors: list[Letters] = []
    factors: list[BandFactor] = []
    pos = start = 0
    while pos < len(xs):
        hit = next((xs[pos:pos + n] for n in lengths if xs[pos:pos + n] in rots), None)
        if hit is None:
            pos += 1
            continue
        n = len(hit)
        k = 1
        while xs[pos + k * n:pos + (k + 1) * n] == hit:
            k += 1
        connectors.append(xs[start:pos])
        factors.append(BandFactor(hit, rots[hit], k))
        pos = start = pos + k * n
    connectors.append(xs[start:])
    return BandFactorisation(tuple(connectors), tuple(factors))


def band_factorise(p: Presentation, w) -> BandFactorisation:
    """Split ``w`` into band-free connectors and maximal band powers."""
    _census(p)
    if isinstance(w, Word):
        return _factorise_letters(p, w.letters)
    w = normalize(p, w)
    left, right = w.left or (), w.right or ()
    f = _factorise_letters(p, left + w.core + right)
    facs = list(f.factors)
    cons = list(f.connectors)
    if w.left:
        if not facs or cons[0]:
            raise AssertionError("left tail is not a band power")
        k0 = facs[0]
        facs[0] = BandFactor(k0.rotation, k0.band, math.inf)
    if w.right:
        if cons[-1]:
            raise AssertionError("right tail is not a band power")
        kl = facs[-1]
        facs[-1] = BandFactor(kl.rotation, kl.band, math.inf)
    return BandFactorisation(tuple(cons), tuple(facs))

