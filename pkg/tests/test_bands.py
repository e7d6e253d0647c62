import pytest

from stringz.bands import (NonDomesticError, analyse_bands, canonical_band, enumerate_bands,
                           is_domestic, letter_automaton, rotations)
from stringz.presentation import PRESETS, load_preset
from stringz.words import WordError, all_letters, can_append, is_string, parse_word

from conftest import DOMESTIC

EXPECTED_N = {"x1": 1, "x3": 1, "lam2": 2, "lam3": 3, "x4": 3, "x5": 4, "kron": 1}


def brute_force_bands(p, max_length):
    """Cyclic classes of primitive band-form words up to a length, by exhaustive walk."""
    found = set()
    layer = [(l,) for l in all_letters(p)]
    for _ in range(max_length):
        for xs in layer:
            if not (xs[0].direct and xs[-1].inverse):
                continue
            n = len(xs)
            if any(n % d == 0 and xs[:d] * (n // d) == xs for d in range(1, n)):
                continue
            if is_string(p, xs * 3):
                found.add(min(r for r in rotations(xs) if r[0].direct and r[-1].inverse))
        layer = [xs + (m,) for xs in layer for m in all_letters(p) if can_append(p, xs, m)]
    return found


@pytest.mark.parametrize("name", DOMESTIC)
def test_band_counts(name):
    census = is_domestic(load_preset(name))
    assert census.domestic and census.n_domestic == EXPECTED_N[name]


@pytest.mark.parametrize("name", DOMESTIC)
def test_bands_agree_with_exhaustive_search(name):
    p = load_preset(name)
    reps = {c.rep for c in enumerate_bands(p)}
    # twice the longest band is ample: no other primitive cycle fits in a domestic algebra
    bound = 2 * max(len(r) for r in reps) + 2
    assert brute_force_bands(p, bound) == reps


def test_x1_band():
    assert [str(c) for c in enumerate_bands(load_preset("x1"))] == ["a g a- b-", "b a g- a-"]


def test_lam2_bands():
    reps = {str(c) for c in enumerate_bands(load_preset("lam2"))}
    assert {"a b-", "e d-"} <= reps and len(reps) == 4


def test_a2_has_no_bands():
    assert enumerate_bands(load_preset("a2")) == []
    assert is_domestic(load_preset("a2")).n_domestic == 0


def test_gp23_is_not_domestic():
    census = is_domestic(load_preset("gp23"))
    assert not census.domestic
    a, b = census.witness
    assert {str(a), str(b)} == {"a b-", "a b- b-"}
    assert a.letters[0] == b.letters[0]
    with pytest.raises(NonDomesticError):
        enumerate_bands(load_preset("gp23"))


@pytest.mark.parametrize("name", DOMESTIC)
def test_representatives(name):
    p = load_preset(name)
    census = analyse_bands(p)
    for c in census.classes:
        assert c.rep[0].direct and c.rep[-1].inverse
        assert is_string(p, c.rep * 3)
        assert census.inverse(census.inverse(c)) == c
        assert c.inverse_id != c.id


@pytest.mark.parametrize("name", DOMESTIC)
def test_socle_and_top_pairs_are_not_shared(name):
    p = load_preset(name)
    census = analyse_bands(p)

    def pairs(rep, socle):
        cyc = rep + rep[:1]
        return {(x, y) for x, y in zip(cyc, cyc[1:])
                if (x.inverse and y.direct) == socle and x.direct != y.direct}

    for socle in (True, False):
        for c in census.classes:
            assert pairs(c.rep, socle)
            for d in census.classes:
                if d.id not in (c.id, c.inverse_id):
                    assert not pairs(c.rep, socle) & pairs(d.rep, socle)


@pytest.mark.parametrize("name", PRESETS)
def test_scc_criterion_matches_first_letter_search(name):
    p = load_preset(name)
    bands = brute_force_bands(p, 8)
    firsts = [b[0] for b in bands]
    shared = len(firsts) != len(set(firsts))
    assert analyse_bands(p).domestic == (not shared)
    g = letter_automaton(p)
    assert g.number_of_nodes() > 0 or not p.arrows


def test_canonical_band_offsets():
    p = load_preset("x1")
    m = canonical_band(p, parse_word("g a- b- a").letters)
    assert str(m.band) == "a g a- b-" and m.offset == 3
    assert canonical_band(p, m.band.rep).offset == 0


def test_canonical_band_of_inverse_rotation():
    p = load_preset("kron")
    m = canonical_band(p, parse_word("a- b").letters)
    assert str(m.band) == "b a-" and m.inverted
    assert str(analyse_bands(p).inverse(m.band)) == "a b-"


def test_canonical_band_rejects_non_bands():
    with pytest.raises(WordError):
        canonical_band(load_preset("kron"), parse_word("a").letters)
