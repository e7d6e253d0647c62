import pytest

from stringz.presentation import (PRESETS, PresentationError, load_preset, opposite_presentation,
                                  parse_presentation, validate_string_algebra)
from stringz.words import Letter, h_assignment, is_string

LAM2 = """
algebra lam2
vertices: 1 2 3 4
arrows: a: 1 -> 2, b: 1 -> 2, g: 2 -> 3
arrows: d: 3 -> 4, e: 3 -> 4   # second arrows line
relations: g b, d g
"""


def test_parse_lam2():
    p = parse_presentation(LAM2)
    assert p.name == "lam2"
    assert len(p.vertices) == 4 and len(p.arrows) == 5 and len(p.relations) == 2
    assert p.relations == (("g", "b"), ("d", "g"))


def test_parse_empty_quiver():
    p = parse_presentation("algebra empty\n")
    assert p.vertices == () and p.arrows == ()


def test_parse_x3():
    p = load_preset("x3")
    assert (len(p.vertices), len(p.arrows), len(p.relations)) == (1, 2, 3)


@pytest.mark.parametrize("text, fragment, line", [
    ("algebra q\nvertices: 1 2\narrows: a: 1 -> 2, a: 2 -> 1\n", "duplicate arrow", 3),
    ("algebra q\nvertices: 1 2\narrows: a: 1 -> 2\nrelations: a z\n", "unknown arrow", 4),
    ("algebra q\nvertices: 1 2\narrows: a: 1 -> 2\nrelations: a\n", "remove the arrow", 4),
    ("algebra q\nvertices: 1 2\narrows: a: 1 -> 2, b: 1 -> 2\nrelations: a b\n",
     "not a composable path", 4),
    ("algebra q\nvertices: 1\nbogus line\n", "unrecognised line", 3),
    ("algebra q\nvertices: 1\narrows: a 1 -> 1\n", "bad arrow", 3),
])
def test_parse_errors_carry_position(text, fragment, line):
    with pytest.raises(PresentationError) as e:
        parse_presentation(text)
    assert fragment in str(e.value)
    assert e.value.line == line and e.value.column >= 1


@pytest.mark.parametrize("name", PRESETS)
def test_presets_are_string_algebras(name):
    res = validate_string_algebra(load_preset(name))
    assert res.valid, res.violations


def test_out_degree_violation():
    p = parse_presentation("algebra q\nvertices: 1 2\narrows: a: 1 -> 2, b: 1 -> 2, c: 1 -> 2\n")
    axioms = {(v.axiom, v.where) for v in validate_string_algebra(p).violations}
    assert ("out-degree > 2", "vertex 1") in axioms
    assert ("in-degree > 2", "vertex 2") in axioms


def test_free_cycle_is_infinite_dimensional():
    p = parse_presentation("algebra loop\nvertices: 1\narrows: a: 1 -> 1\n")
    assert [v.axiom for v in validate_string_algebra(p).violations] == ["infinite dimension"]


def test_two_successors_violation():
    p = parse_presentation("algebra q\nvertices: 1 2 3\narrows: a: 1 -> 2, b: 2 -> 3, c: 2 -> 3\n")
    assert "non-zero successors > 1" in [v.axiom for v in validate_string_algebra(p).violations]


def test_opposite_of_kronecker():
    op = opposite_presentation(load_preset("kron"))
    assert {(a.source, a.target) for a in op.arrows} == {("2", "1")}


@pytest.mark.parametrize("name", PRESETS)
def test_opposite_is_involution_and_keeps_validity(name):
    p = load_preset(name)
    op = opposite_presentation(p)
    assert validate_string_algebra(op).valid
    assert opposite_presentation(op) == p


@pytest.mark.parametrize("name", PRESETS)
def test_text_round_trip(name):
    p = load_preset(name)
    assert parse_presentation(p.to_text()) == p


def test_h_assignment_kronecker_sink():
    H = h_assignment(load_preset("kron"))
    assert H.letters("2", 1) == [Letter("a")]
    assert H.letters("2", -1) == [Letter("b")]


def test_h_assignment_x3_partition():
    # the two sides separate the a-letters from the b-letters
    H = h_assignment(load_preset("x3"))
    sides = {frozenset(map(str, H.letters("1", s))) for s in (1, -1)}
    assert sides == {frozenset({"a", "a-"}), frozenset({"b", "b-"})}


def test_h_assignment_single_letter():
    H = h_assignment(load_preset("a2"))
    assert H.letters("2", 1) == [Letter("a")] and H.letters("2", -1) == []


@pytest.mark.parametrize("name", PRESETS)
def test_h_assignment_separates_conflicts(name):
    p = load_preset(name)
    H = h_assignment(p)
    for (v, l1), s1 in H.sides.items():
        for (w, l2), s2 in H.sides.items():
            if v == w and l1 != l2 and is_string(p, (l1.inv(), l2)):
                assert s1 != s2
    for v in p.vertices:
        for s in (1, -1):
            side = H.letters(v, s)
            assert sum(l.direct for l in side) <= 1 and sum(l.inverse for l in side) <= 1
