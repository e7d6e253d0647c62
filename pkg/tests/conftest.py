import pytest
from hypothesis import strategies as st

from stringz.presentation import PRESETS, load_preset
from stringz.words import Word, all_letters, next_letters

DOMESTIC = ("kron", "lam2", "lam3", "x1", "x3", "x4", "x5")


@pytest.fixture(scope="session")
def presets():
    return {name: load_preset(name) for name in PRESETS}


@pytest.fixture(params=DOMESTIC)
def domestic(request):
    return load_preset(request.param)


@st.composite
def strings(draw, p, max_length=8, allow_empty=True):
    """Valid strings over ``p`` built as random walks."""
    n = draw(st.integers(0 if allow_empty else 1, max_length))
    if n == 0:
        return Word((), (draw(st.sampled_from(p.vertices)), draw(st.sampled_from((1, -1)))))
    xs = (draw(st.sampled_from(all_letters(p))),)
    while len(xs) < n:
        options = next_letters(p, xs)
        if not options:
            break
        xs += (draw(st.sampled_from(options)),)
    return Word(xs)
