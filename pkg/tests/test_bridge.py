import math

import networkx as nx
import pytest

from stringz.bands import NonDomesticError, analyse_bands, rotations
from stringz.bridge import (ALL, ASCENDING, DESCENDING, band_factorise, band_free_strings,
                            bridge_quiver, bridges, indent)
from stringz.presentation import load_preset
from stringz.words import Word, all_letters, can_append, invert, parse_word

from conftest import DOMESTIC


def cls(p, text):
    return next(c for c in analyse_bands(p).classes if str(c) == text)


def edge_set(p):
    q = bridge_quiver(p)
    return {(str(q.classes[e.src]), str(q.classes[e.dst]), str(e.word)) for e in q.edges}


def test_x1_bridges():
    p = load_preset("x1")
    found = {str(u) for u in bridges(p, cls(p, "a g a- b-"), cls(p, "b a g- a-"))}
    assert found == {"a g a-", "a g- a-"}


def test_lam2_bridges():
    p = load_preset("lam2")
    assert [str(u) for u in bridges(p, cls(p, "e d-"), cls(p, "a b-"))] == ["e g"]
    assert bridges(p, cls(p, "a b-"), cls(p, "e d-")) == []


def test_lam3_chain():
    assert edge_set(load_preset("lam3")) == {
        ("b1 a1-", "b2 a2-", "g1- a2-"), ("b2 a2-", "b3 a3-", "g2- a3-"),
        ("a3 b3-", "a2 b2-", "a3 g2"), ("a2 b2-", "a1 b1-", "a2 g1")}


def test_x4_chain():
    assert edge_set(load_preset("x4")) == {
        ("a1 b1-", "a2 b2-", "g1- b2-"), ("a2 b2-", "a3 b3-", "a2 g2"),
        ("b3 a3-", "b2 a2-", "g2- a2-"), ("b2 a2-", "b1 a1-", "b2 g1")}


def test_x5_shape():
    assert edge_set(load_preset("x5")) == {
        ("a2 b2-", "b1 a1-", "a2 g1"), ("b1 a1-", "b0 a0-", "b1 g0"),
        ("a2 b2-", "a3 b3-", "d- b3-"),
        ("a1 b1-", "b2 a2-", "g1- a2-"), ("a0 b0-", "a1 b1-", "g0- b1-"),
        ("b3 a3-", "b2 a2-", "b3 d")}


@pytest.mark.parametrize("name", DOMESTIC)
def test_quiver_is_acyclic_and_inversion_symmetric(name):
    p = load_preset(name)
    q = bridge_quiver(p)
    assert nx.is_directed_acyclic_graph(q.graph)
    census = q.census
    edges = {(e.src, e.dst, e.word.letters) for e in q.edges}
    mirrored = {(census.classes[d].inverse_id, census.classes[s].inverse_id, invert(u))
                for s, d, u in edges}
    assert edges == mirrored


@pytest.mark.parametrize("name", DOMESTIC)
def test_bridges_are_strings_between_powers(name):
    p = load_preset(name)
    q = bridge_quiver(p)
    from stringz.words import is_string
    for e in q.edges:
        b, b2 = q.classes[e.src].rep, q.classes[e.dst].rep
        assert is_string(p, b * 3 + e.word.letters + b2 * 3)


def test_x1_indents():
    p = load_preset("x1")
    q = bridge_quiver(p)
    assert indent(q, cls(p, "a g a- b-")) == 1
    assert indent(q, cls(p, "b a g- a-")) == 0


def test_lam3_flagged_indents():
    p = load_preset("lam3")
    q = bridge_quiver(p)
    assert indent(q, cls(p, "a2 b2-"), ASCENDING) == 1
    assert indent(q, cls(p, "b1 a1-"), DESCENDING) == 2


@pytest.mark.parametrize("name", DOMESTIC)
def test_indent_bounds(name):
    p = load_preset(name)
    q = bridge_quiver(p)
    for c in q.classes:
        full = indent(q, c, ALL)
        assert full == max((1 + q.longest_path_from(e.dst) for e in q.out_edges(c.id)), default=0)
        assert indent(q, c, ASCENDING) <= full and indent(q, c, DESCENDING) <= full
        assert full == max(indent(q, c, ASCENDING), indent(q, c, DESCENDING))


def test_band_free_strings_kron():
    p = load_preset("kron")
    words = {str(w) for w in band_free_strings(p) if w.letters}
    # every two-letter string over the Kronecker quiver is already a band rotation
    assert words == {"a", "a-", "b", "b-"}


def test_band_free_strings_a2_are_all_strings():
    p = load_preset("a2")
    assert {str(w) for w in band_free_strings(p) if w.letters} == {"a", "a-"}


@pytest.mark.parametrize("name", DOMESTIC)
def test_band_free_strings_exhaustive(name):
    p = load_preset(name)
    rots = {r for c in analyse_bands(p).classes for r in rotations(c.rep)}
    got = {w.letters for w in band_free_strings(p) if w.letters}
    expected = set()
    layer = [(l,) for l in all_letters(p)]
    while layer:
        layer = [xs for xs in layer
                 if not any(xs[i:i + len(r)] == r for r in rots for i in range(len(xs)))]
        expected.update(layer)
        layer = [xs + (m,) for xs in layer for m in all_letters(p) if can_append(p, xs, m)]
    assert got == expected


def test_band_free_needs_domestic():
    with pytest.raises(NonDomesticError):
        band_free_strings(load_preset("gp23"))


def test_factorise_band_free():
    p = load_preset("lam2")
    f = band_factorise(p, parse_word("e g"))
    assert f.factors == () and f.band_length == 0


def test_factorise_lam2():
    p = load_preset("lam2")
    u = parse_word("(e d-)^2 e g (a b-)^3")
    f = band_factorise(p, u)
    assert [(x.rotation, x.power) for x in f.factors] == [
        (parse_word("e d-").letters, 2), (parse_word("a b-").letters, 3)]
    assert f.band_length == 1 and f.letters() == u.letters


def test_factorise_infinite():
    p = load_preset("lam2")
    f = band_factorise(p, parse_word("inf^(e d-) e g (a b-)^inf"))
    assert [x.power for x in f.factors] == [math.inf, math.inf]
    assert f.band_length == 1


@pytest.mark.parametrize("name", ["x1", "lam2", "lam3", "x5"])
def test_factorise_matches_brute_force(name):
    p = load_preset(name)
    rots = {r for c in analyse_bands(p).classes for r in rotations(c.rep)}
    layer = [(l,) for l in all_letters(p)]
    for _ in range(8):
        for xs in layer:
            f = band_factorise(p, Word(xs))
            assert f.letters() == xs
            for c in f.connectors:
                assert not any(c[i:i + len(r)] == r for r in rots for i in range(len(c)))
            # refactorising the reassembled word changes nothing
            assert band_factorise(p, Word(f.letters())) == f
            has_band = any(xs[i:i + len(r)] == r for r in rots for i in range(len(xs)))
            assert bool(f.factors) == has_band
        layer = [xs + (m,) for xs in layer for m in all_letters(p) if can_append(p, xs, m)]
