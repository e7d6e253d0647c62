"""Bands up to rotation, domesticity and canonical representatives.

Bands are found as cycles in a window automaton: states are strings of
``K = max(1, longest relation - 1)`` letters and an edge appends one letter
when the longer word is still a string.  Since ``K`` letters of context decide
whether an appended letter is legal, closed walks here are exactly the cyclic
words all of whose powers are strings, and simple cycles are the primitive ones.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import islice
from typing import NamedTuple

import networkx as nx

from .presentation import Presentation
from .words import (Letter, Letters, Word, WordError, all_letters, can_append, format_letters,
                    primitive_root)


class NonDomesticError(ValueError):
    """Raised when an operation needs finitely many bands."""

    def __init__(self, witness):
        self.witness = witness
        a, b = witness
        super().__init__(f"not domestic: bands {a} and {b} share their first letter")


@dataclass(frozen=True)
class BandClass:
    """A band up to rotation.  ``b`` and ``b^-1`` are different classes."""

    id: int
    rep: Letters
    inverse_id: int

    @property
    def word(self) -> Word:
        return Word(self.rep)

    def __len__(self):
        return len(self.rep)

    def __str__(self):
        return format_letters(self.rep)


@dataclass(frozen=True)
class BandCensus:
    domestic: bool
    classes: tuple[BandClass, ...] = ()
    witness: tuple[Word, Word] | None = None

    @property
    def n_domestic(self) -> int | None:
        """Number of bands up to rotation and inversion."""
        if not self.domestic:
            return None
        return len({min(c.id, c.inverse_id) for c in self.classes})

    def by_id(self, i: int) -> BandClass:
        return self.classes[i]

    def inverse(self, c: BandClass) -> BandClass:
        return self.classes[c.inverse_id]


class BandMatch(NamedTuple):
    band: BandClass
    offset: int  # rotating the input left by offset gives band.rep

    @property
    def inverted(self) -> bool:
        """True when the input lies in the second class of its inverse pair."""
        return self.band.id > self.band.inverse_id


def rotations(xs: Letters):
    for k in range(len(xs)):
        yield xs[k:] + xs[:k]


def band_form_rotations(xs: Letters) -> list[Letters]:
    """Rotations that begin with a direct letter and end with an inverse one."""
    return sorted(r for r in rotations(tuple(xs)) if r[0].direct and r[-1].inverse)


def canonical_rotation(xs: Letters) -> Letters:
    forms = band_form_rotations(xs)
    if not forms:
        raise WordError(f"{format_letters(xs)} has no rotation of band form")
    return forms[0]


def letter_automaton(p: Presentation) -> nx.DiGraph:
    k = max(1, p.max_relation_length - 1)
    letters = all_letters(p)
    states = [(l,) for l in letters]
    for _ in range(k - 1):
        states = [s + (m,) for s in states for m in letters if can_append(p, s, m)]
    g = nx.DiGraph()
    g.add_nodes_from(states)
    for s in states:
        for m in letters:
            if can_append(p, s, m):
                g.add_edge(s, s[1:] + (m,), letter=m)
    return g


def _cycle_word(g: nx.DiGraph, cycle: list) -> Letters:
    return tuple(g.edges[u, v]["letter"] for u, v in zip(cycle, cycle[1:] + cycle[:1]))


def _inverse_cycle(xs: Letters) -> Letters:
    return tuple(l.inv() for l in reversed(xs))


def _witness(g: nx.DiGraph, scc) -> tuple[Word, Word]:
    """Two distinct bands through one strongly connected piece sharing a first letter."""
    sub = g.subgraph(scc)
    bound = 2
    while True:
        firsts: dict[Letter, set[Letters]] = {}
        for cyc in islice(nx.simple_cycles(sub, length_bound=bound), 20000):
            word = _cycle_word(sub, cyc)
            for r in band_form_rotations(word):
                firsts.setdefault(r[0], set()).add(r)
        pairs = []
        for first, ws in firsts.items():
            ws = sorted(ws, key=lambda w: (len(w), w))
            for i, a in enumerate(ws):
                for b in ws[i + 1:]:
                    if canonical_rotation(a) != canonical_rotation(b):
                        pairs.append((len(a) + len(b), a, b))
        if pairs:
            _, a, b = min(pairs)
            return Word(a), Word(b)
        bound += 1


@lru_cache(maxsize=128)
def analyse_bands(p: Presentation) -> BandCensus:
    g = letter_automaton(p)
    cycles: set[Letters] = set()
    for scc in nx.strongly_connected_components(g):
        sub = g.subgraph(scc)
        if sub.number_of_edges() == 0:
            continue
        if sub.number_of_edges() != sub.number_of_nodes():
            return BandCensus(False, (), _witness(g, scc))
        cyc = [u for u, _ in nx.find_cycle(sub)]
        cycles.add(canonical_rotation(_cycle_word(sub, cyc)))
    reps = sorted(cycles)
    index = {r: i for i, r in enumerate(reps)}
    classes = tuple(BandClass(i, r, index[canonical_rotation(_inverse_cycle(r))])
                    for i, r in enumerate(reps))
    return BandCensus(True, classes)


def is_domestic(p: Presentation) -> BandCensus:
    return analyse_bands(p)


def enumerate_bands(p: Presentation) -> list[BandClass]:
    census = analyse_bands(p)
    if not census.domestic:
        raise NonDomesticError(census.witness)
    return list(census.classes)


def canonical_band(p: Presentation, w) -> BandMatch:
    """Class of a band rotation and the offset taking it to the representative."""
    xs = tuple(w.letters if isinstance(w, Word) else w)
    for c in enumerate_bands(p):
        if len(c.rep) != len(xs):
            continue
        for k, r in enumerate(rotations(xs)):
            if r == c.rep:
                return BandMatch(c, k)
    raise WordError(f"{format_letters(xs)} is not a band rotation")


def band_class_of(p: Presentation, w) -> BandClass:
    """Class of ``w``, allowing a proper power of a band rotation."""
    xs = tuple(w.letters if isinstance(w, Word) else w)
    return canonical_band(p, primitive_root(xs)).band
