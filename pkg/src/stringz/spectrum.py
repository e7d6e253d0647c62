"""Points of the Ziegler spectrum, their ranks, duals and basic neighbourhoods.

Every point is described combinatorially: a finite or almost periodic string,
or a band together with an opaque parameter label.  Ranks are read off the
bridge quiver through indents; neighbourhood membership is decided by subword
conditions on the candidate's string.
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Iterator, Union

from .bands import (BandClass, NonDomesticError, analyse_bands, band_form_rotations,
                    canonical_band, canonical_rotation, rotations)
from .bridge import ALL, ASCENDING, DESCENDING, bridge_quiver, indent
from .presentation import Presentation, opposite_presentation
from .words import (InfiniteWord, Letters, Word, WordError, all_letters, can_append,
                    check_infinite, check_string, classify_ends, flip_letters, format_letters,
                    image_occurrences, factor_occurrences, invert, is_string, normalize,
                    parse_word, primitive_root)


class PointError(ValueError):
    pass


@dataclass(frozen=True)
class FiniteString:
    word: Word

    kind = "finite-string"


@dataclass(frozen=True)
class FiniteBand:
    band: Letters
    label: str
    size: int

    kind = "finite-band"

    def __post_init__(self):
        if self.size < 1:
            raise PointError("band module size must be at least 1")


@dataclass(frozen=True)
class InfString:
    word: InfiniteWord

    kind = "infinite-string"

    @property
    def module_kind(self) -> str | None:
        return self.word.module_kind


@dataclass(frozen=True)
class Prufer:
    band: Letters
    label: str

    kind = "prufer"


@dataclass(frozen=True)
class Adic:
    band: Letters
    label: str

    kind = "adic"


@dataclass(frozen=True)
class Generic:
    band: Letters

    kind = "generic"


SpectrumPoint = Union[FiniteString, FiniteBand, InfString, Prufer, Adic, Generic]
BAND_POINTS = (FiniteBand, Prufer, Adic, Generic)


def format_point(pt: SpectrumPoint) -> str:
    if isinstance(pt, FiniteString):
        return f"string:[{pt.word}]"
    if isinstance(pt, InfString):
        return f"string:[{pt.word}]"
    b = format_letters(pt.band)
    if isinstance(pt, FiniteBand):
        return f"band:[{b}]@{pt.label}#{pt.size}"
    if isinstance(pt, Prufer):
        return f"prufer:[{b}]@{pt.label}"
    if isinstance(pt, Adic):
        return f"adic:[{b}]@{pt.label}"
    return f"generic:[{b}]"


# -- parsing ----------------------------------------------------------------

_POINT = re.compile(r"\s*(string|band|prufer|adic|generic)\s*:\s*\[(.*)\]\s*"
                    r"(?:@\s*([^\s#]+))?\s*(?:#\s*(\S+))?\s*$")


def band_rep(p: Presentation, letters: Letters) -> Letters:
    """Representative of the cyclic class of a band rotation."""
    try:
        return canonical_band(p, letters).band.rep
    except WordError:
        raise PointError(f"{format_letters(letters)} is not a band") from None


def string_point(p: Presentation, w) -> SpectrumPoint:
    if isinstance(w, InfiniteWord):
        for t in (w.left, w.right):
            if t is not None:
                band_rep(p, primitive_root(t))
        return InfString(classify_ends(p, w))
    return FiniteString(w)


def parse_point(p: Presentation, expr: str) -> SpectrumPoint:
    m = _POINT.match(expr)
    if not m:
        raise PointError(f"malformed point expression {expr!r}")
    kind, body, label, size = m.groups()
    try:
        w = parse_word(body, p)
    except WordError as e:
        raise PointError(f"invalid word in {expr!r}: {e}") from None
    if kind == "string":
        if label is not None or size is not None:
            raise PointError("string points take no label or size")
        return string_point(p, w)
    if not isinstance(w, Word) or not w.letters:
        raise PointError(f"{kind} points need a finite band word")
    b = band_rep(p, w.letters)
    if kind == "generic":
        if label is not None or size is not None:
            raise PointError("generic points take no label or size")
        return Generic(b)
    if label is None:
        raise PointError(f"{kind} points need a parameter label '@<label>'")
    if kind == "band":
        if size is None or not size.isdigit():
            raise PointError("band points need a size '#<n>'")
        return FiniteBand(b, label, int(size))
    if size is not None:
        raise PointError(f"{kind} points take no size")
    return Prufer(b, label) if kind == "prufer" else Adic(b, label)


# -- ranks ------------------------------------------------------------------

@dataclass(frozen=True)
class RankReport:
    point: SpectrumPoint
    rank: int | None
    trace: str


def _domestic(p: Presentation):
    census = analyse_bands(p)
    if not census.domestic:
        raise NonDomesticError(census.witness)
    return census


def _class(p: Presentation, letters: Letters) -> BandClass:
    return canonical_band(p, primitive_root(tuple(letters))).band


def _inverse(p: Presentation, c: BandClass) -> BandClass:
    return analyse_bands(p).inverse(c)


def cb_rank(p: Presentation, pt: SpectrumPoint) -> RankReport:
    _domestic(p)
    q = bridge_quiver(p)
    if isinstance(pt, (FiniteString, FiniteBand)):
        return RankReport(pt, 0, "isoldens: finite-dimensional points are isolated")
    if isinstance(pt, InfString):
        w = normalize(p, pt.word)
        if w.kind == "left-infinite":
            w = normalize(p, invert(w))
        if w.kind == "right-infinite":
            t = indent(q, _class(p, w.right))
            return RankReport(pt, t + 1, f"1stringrank: t={t}")
        s = indent(q, _class(p, invert(w.left)))
        t = indent(q, _class(p, w.right))
        wi = normalize(p, invert(w))
        s2 = indent(q, _class(p, invert(wi.left)))
        t2 = indent(q, _class(p, wi.right))
        assert s + t == s2 + t2, "two-sided rank depends on orientation"
        return RankReport(pt, s + t + 2, f"2stringrank: s={s},t={t}")
    b = _class(p, pt.band)
    bi = _inverse(p, b)
    if isinstance(pt, Prufer):
        s, t = indent(q, b, ASCENDING), indent(q, bi, ASCENDING)
        return RankReport(pt, s + t + 1, f"bandsprufer: s={s},t={t}")
    if isinstance(pt, Adic):
        s, t = indent(q, b, DESCENDING), indent(q, bi, DESCENDING)
        return RankReport(pt, s + t + 1, f"bandsadic: s={s},t={t}")
    s, t = indent(q, bi, ALL), indent(q, b, ALL)
    return RankReport(pt, s + t + 2, f"genc: s={s},t={t}")


def kg_dimension(p: Presentation) -> int | None:
    """Krull-Gabriel dimension; None when it is undefined (non-domestic)."""
    census = analyse_bands(p)
    if not census.domestic:
        return None
    if not census.classes:
        return 0
    return bridge_quiver(p).max_path_length() + 2


def mdim_string(p: Presentation, w) -> RankReport:
    """m-dimension of a finite or one-sided string, equal to its point's rank."""
    if isinstance(w, Word):
        return RankReport(FiniteString(w), 0, "finite: finite-length interval")
    if w.kind == "two-sided":
        raise PointError("m-dimension is computed for one-sided strings")
    r = cb_rank(p, string_point(p, w))
    return replace(r, trace=r.trace + " (m-dimension equals the rank of the point)")


# -- duality ----------------------------------------------------------------

def _dual_label(label: str) -> str:
    return label[:-1] if label.endswith("*") else label + "*"


def dual_band(letters: Letters) -> Letters:
    return canonical_rotation(flip_letters(letters))


def dual_point(p: Presentation, pt: SpectrumPoint) -> SpectrumPoint:
    """The elementary dual, a point over the opposite presentation."""
    op = opposite_presentation(p)
    if isinstance(pt, FiniteString):
        w = pt.word
        return FiniteString(Word(flip_letters(w.letters), w.basepoint))
    if isinstance(pt, InfString):
        w = pt.word
        flip = lambda xs: None if xs is None else flip_letters(xs)
        return InfString(classify_ends(op, InfiniteWord(flip(w.core), flip(w.right), flip(w.left))))
    b = dual_band(pt.band)
    if isinstance(pt, FiniteBand):
        return FiniteBand(b, _dual_label(pt.label), pt.size)
    if isinstance(pt, Prufer):
        return Adic(b, _dual_label(pt.label))
    if isinstance(pt, Adic):
        return Prufer(b, _dual_label(pt.label))
    return Generic(b)


# -- neighbourhoods ---------------------------------------------------------

class NotCovered(enum.Enum):
    NOT_COVERED = "not-covered"

    def __str__(self):
        return self.value


NOT_COVERED = NotCovered.NOT_COVERED


def band_form_tails(p: Presentation, w: InfiniteWord) -> InfiniteWord:
    """Rewrite ``w`` so each tail is the band-form representative of its class."""
    w = normalize(p, w)
    core, left, right = w.core, w.left, w.right
    if right:
        target = canonical_rotation(right)
        j = next(j for j in range(len(right)) if right[j:] + right[:j] == target)
        core, right = core + right[:j], target
    if left:
        target = canonical_rotation(left)
        n = len(left)
        i = next(i for i in range(n) if left[n - i:] + left[:n - i] == target)
        core, left = left[n - i:] + core, target
    return InfiniteWord(core, right, left, w.right_end, w.left_end)


def _image_in(p: Presentation, pattern: Letters, y) -> bool:
    return bool(image_occurrences(p, Word(pattern), y, periods=len(pattern) + 2))


def _initial_image(p: Presentation, pattern: Letters, y) -> bool:
    if isinstance(y, InfiniteWord):
        if y.kind == "two-sided":
            return False
        if y.kind == "left-infinite":
            y = invert(y)
        return any(o.start == 0 and not o.inverted
                   for o in image_occurrences(p, Word(pattern), y, periods=len(pattern) + 2))
    for host in (y, invert(y)):
        if any(o.start == 0 and not o.inverted for o in image_occurrences(p, Word(pattern), host)):
            return True
    return False


def _window(y, n: int) -> tuple[Letters, int, int]:
    """Letters of ``y`` long enough to hold n periods, with the usable range."""
    if isinstance(y, Word):
        return y.letters, 0, len(y.letters)
    lp, rp = len(y.left or ()), len(y.right or ())
    k = n + len(y.core) + 3
    left = (y.left or ()) * k
    letters = left + y.core + (y.right or ()) * k
    return letters, lp if y.left else 0, len(letters) - rp if y.right else len(letters)


def _periodic_position(s: Letters, c: Letters) -> int | None:
    """Phase k with ``s`` a substring of the bi-infinite power of ``c`` starting at k."""
    m = len(c)
    for k in range(m):
        if all(s[i] == c[(k + i) % m] for i in range(len(s))):
            return k
    return None


def _contains(s: Letters, pattern: Letters) -> bool:
    n = len(pattern)
    return any(s[i:i + n] == pattern for i in range(len(s) - n + 1))


def _sub_intervals(y, n: int, image: bool) -> Iterator[Letters]:
    """Substrings of y closed under successors (image) or predecessors (factor)."""
    letters, lo, hi = _window(y, n)
    for host in (letters, tuple(l.inv() for l in reversed(letters))):
        L = len(host)
        a, b = (lo, hi) if host is letters else (L - hi, L - lo)
        for i in range(a, b):
            for j in range(i + 1, b + 1):
                left = host[i - 1] if i > 0 else None
                right = host[j] if j < L else None
                if image:
                    ok = (left is None or left.inverse) and (right is None or right.direct)
                else:
                    ok = (left is None or left.direct) and (right is None or right.inverse)
                if ok:
                    yield host[i:j]


def _periodic_closed(s: Letters, c: Letters, image: bool) -> bool:
    k = _periodic_position(s, c)
    if k is None:
        return False
    m = len(c)
    left, right = c[(k - 1) % m], c[(k + len(s)) % m]
    if image:
        return left.inverse and right.direct
    return left.direct and right.inverse


def _same_pair(p: Presentation, b1: Letters, b2: Letters) -> bool:
    c1, c2 = _class(p, b1), _class(p, b2)
    return c1.id in (c2.id, c2.inverse_id)


def _candidate_word(pt: SpectrumPoint):
    if isinstance(pt, FiniteString):
        return pt.word
    if isinstance(pt, InfString):
        return pt.word
    return None


def in_basic_nbhd(p: Presentation, center: SpectrumPoint, n: int,
                  candidate: SpectrumPoint) -> Union[bool, NotCovered]:
    """Is ``candidate`` in the n-th basic open neighbourhood of ``center``?"""
    if n < 1:
        raise PointError("neighbourhood index must be at least 1")
    _domestic(p)
    y = _candidate_word(candidate)
    if isinstance(center, InfString):
        if isinstance(candidate, FiniteBand):
            return False
        if isinstance(candidate, BAND_POINTS):
            return NOT_COVERED
        w = band_form_tails(p, center.word)
        if w.kind == "left-infinite":
            w = band_form_tails(p, invert(w))
        if w.kind == "two-sided":
            return _image_in(p, w.left * n + w.core + w.right * n, y)
        return _initial_image(p, w.core + w.right * n, y)
    if isinstance(center, (Prufer, Adic)):
        b = center.band
        if isinstance(candidate, FiniteBand):
            return (_same_pair(p, b, candidate.band) and candidate.label == center.label
                    and candidate.size >= n)
        if isinstance(candidate, type(center)):
            return _same_pair(p, b, candidate.band) and candidate.label == center.label
        if isinstance(candidate, BAND_POINTS):
            return False
        if isinstance(center, Prufer):
            # rotation of b starting with an inverse letter and ending with a direct one
            c = next(r for r in rotations(b) if r[0].inverse and r[-1].direct)
            return any(_contains(s, c * n) and _periodic_closed(s, c, image=False)
                       for s in _sub_intervals(y, n * len(c), image=True))
        return any(_contains(s, b * n) and _periodic_closed(s, b, image=True)
                   for s in _sub_intervals(y, n * len(b), image=False))
    if isinstance(center, Generic):
        b = center.band
        if isinstance(candidate, BAND_POINTS):
            if not _same_pair(p, b, candidate.band):
                return False
            if isinstance(candidate, FiniteBand):
                return candidate.size >= n
            return True
        return _image_in(p, b * n, y)
    return NOT_COVERED


# -- enumeration ------------------------------------------------------------

@dataclass(frozen=True)
class Bounds:
    max_word_length: int = 4
    max_band_power: int = 2
    max_prefix_length: int = 2


def _strings_up_to(p: Presentation, n: int) -> list[Letters]:
    out: list[Letters] = []
    layer: list[Letters] = [()]
    for _ in range(n):
        layer = [xs + (m,) for xs in layer for m in all_letters(p) if can_append(p, xs, m)]
        out.extend(layer)
    return out


def _infinite_words(p: Presentation, cores: list[Letters]) -> Iterator[InfiniteWord]:
    census = analyse_bands(p)
    tails = sorted({r for c in census.classes for r in rotations(c.rep)})
    for r in tails:
        for c in cores:
            if not is_string(p, c + r * 2):
                continue
            w = InfiniteWord(c, r)
            if normalize(p, w) == w:
                yield w
    for l in tails:
        for r in tails:
            for c in cores:
                if not is_string(p, l * 2 + c + r * 2):
                    continue
                w = InfiniteWord(c, r, l)
                try:
                    nw = normalize(p, w)
                except WordError:
                    continue
                if nw != w:
                    continue
                wi = normalize(p, invert(w))
                if (str(wi), wi.core) < (str(w), w.core):
                    continue
                yield w


def enumerate_points(p: Presentation, bounds: Bounds = Bounds()) -> list[RankReport]:
    census = _domestic(p)
    points: list[SpectrumPoint] = []
    points += [FiniteString(Word((), (v, 1))) for v in p.vertices]
    for xs in _strings_up_to(p, bounds.max_word_length):
        if xs <= invert(xs):
            points.append(FiniteString(Word(xs)))
    pairs = [c for c in census.classes if c.id < c.inverse_id]
    for c in pairs:
        points += [FiniteBand(c.rep, "l", k) for k in range(1, bounds.max_band_power + 1)]
    cores = [()] + _strings_up_to(p, bounds.max_prefix_length)
    points += [InfString(classify_ends(p, w)) for w in _infinite_words(p, cores)]
    for c in pairs:
        points += [Prufer(c.rep, "s"), Adic(c.rep, "s"), Generic(c.rep)]
    return [cb_rank(p, pt) for pt in points]
