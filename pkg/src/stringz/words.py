"""Letters, finite strings and eventually periodic infinite strings.

A word ``l1 l2 ... lk`` walks through vertices ``v0 v1 ... vk``.  A direct
letter ``a`` at position i has ``source(a) = v_i`` and ``target(a) = v_{i-1}``;
an inverse letter ``a-`` has ``source(a) = v_{i-1}`` and ``target(a) = v_i``.
So maximal runs of direct letters read as paths in right-to-left composition
order, and runs of inverse letters as inverses of such paths.
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass, replace
from typing import Iterable, NamedTuple, Sequence, Union

from .presentation import Presentation, PresentationError


class WordError(ValueError):
    pass


class UnknownArrow(WordError, KeyError):
    pass


class Letter(NamedTuple):
    arrow: str
    inverse: bool = False

    @property
    def direct(self) -> bool:
        return not self.inverse

    def inv(self) -> "Letter":
        return Letter(self.arrow, not self.inverse)

    def __str__(self):
        return self.arrow + ("-" if self.inverse else "")


Letters = tuple[Letter, ...]


@dataclass(frozen=True, order=True)
class Word:
    """A finite string.  Empty words carry a basepoint ``(vertex, side)``."""

    letters: Letters = ()
    basepoint: tuple[str, int] | None = None

    def __post_init__(self):
        if not self.letters and self.basepoint is None:
            raise WordError("the empty word needs a basepoint")
        if self.letters and self.basepoint is not None:
            object.__setattr__(self, "basepoint", None)

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        if not self.letters:
            v, side = self.basepoint
            return f"1_{v}" + ("" if side > 0 else "-")
        return format_letters(self.letters)


@dataclass(frozen=True)
class InfiniteWord:
    """An almost periodic string ``inf^(left) core (right)^inf``.

    Tails are stored as the period that is repeated; ``right`` is read
    left-to-right starting right after the core, ``left`` ends right before it.
    """

    core: Letters = ()
    right: Letters | None = None
    left: Letters | None = None
    right_end: str | None = None
    left_end: str | None = None

    @property
    def kind(self) -> str:
        if self.right and self.left:
            return "two-sided"
        return "right-infinite" if self.right else "left-infinite"

    @property
    def module_kind(self) -> str | None:
        ends = [e for e in (self.left_end, self.right_end) if e is not None]
        if not ends or len(ends) != (2 if self.kind == "two-sided" else 1):
            return None
        if all(e == "contracting" for e in ends):
            return "direct-sum"
        if all(e == "expanding" for e in ends):
            return "direct-product"
        return "mixed"

    def __str__(self):
        parts = []
        if self.left:
            parts.append(f"inf^({format_letters(self.left)})")
        if self.core:
            parts.append(format_letters(self.core))
        if self.right:
            parts.append(f"({format_letters(self.right)})^inf")
        return " ".join(parts)


AnyWord = Union[Word, InfiniteWord]


def format_letters(letters: Iterable[Letter]) -> str:
    return " ".join(map(str, letters))


def letters_of(w) -> Letters:
    if isinstance(w, Word):
        return w.letters
    return tuple(w)


# -- walking ---------------------------------------------------------------

def _arrow(p: Presentation, name: str):
    try:
        return p.arrow[name]
    except KeyError:
        raise UnknownArrow(f"unknown arrow {name!r}") from None


def head(p: Presentation, l: Letter) -> str:
    """Vertex on the left of the letter."""
    a = _arrow(p, l.arrow)
    return a.source if l.inverse else a.target


def tail(p: Presentation, l: Letter) -> str:
    """Vertex on the right of the letter."""
    a = _arrow(p, l.arrow)
    return a.target if l.inverse else a.source


def vertex_trace(p: Presentation, w: AnyWord | Sequence[Letter]) -> list[str]:
    if isinstance(w, Word) and not w.letters:
        return [w.basepoint[0]]
    letters = letters_of(w)
    return [head(p, letters[0])] + [tail(p, l) for l in letters]


class StringViolation(NamedTuple):
    position: int
    rule: str

    def __str__(self):
        return f"letter {self.position + 1}: {self.rule}"


def _run_has_relation(p: Presentation, run: Sequence[Letter]) -> bool:
    names = [l.arrow for l in run]
    if run[0].inverse:
        names.reverse()
    return p.is_zero_path(names)


def check_string(p: Presentation, letters: Sequence[Letter]) -> StringViolation | None:
    """First violation of the string axioms, or None."""
    letters = letters_of(letters)
    for i, l in enumerate(letters):
        _arrow(p, l.arrow)
        if i == 0:
            continue
        prev = letters[i - 1]
        if tail(p, prev) != head(p, l):
            return StringViolation(i, "not composable")
        if l == prev.inv():
            return StringViolation(i, "backtrack")
    start = 0
    for i in range(1, len(letters) + 1):
        if i == len(letters) or letters[i].inverse != letters[start].inverse:
            run = letters[start:i]
            # find the earliest position at which the run first contains a relation
            for j in range(2, len(run) + 1):
                if _run_has_relation(p, run[:j]):
                    return StringViolation(start + j - 1, "zero relation")
            start = i
    return None


def is_string(p: Presentation, letters) -> bool:
    return check_string(p, letters) is None


def can_append(p: Presentation, letters: Sequence[Letter], m: Letter) -> bool:
    """Is ``letters + m`` a string, assuming ``letters`` is one?"""
    if not letters:
        return True
    last = letters[-1]
    if tail(p, last) != head(p, m) or m == last.inv():
        return False
    if last.inverse != m.inverse:
        return True
    k = p.max_relation_length
    run = [m]
    for l in reversed(letters[-(k - 1):] if k > 1 else ()):
        if l.inverse != m.inverse:
            break
        run.insert(0, l)
    names = [l.arrow for l in run]
    if m.inverse:
        names.reverse()
        return not any(tuple(names[:len(r)]) == r for r in p.relations)
    return not any(tuple(names[-len(r):]) == r for r in p.relations)


def all_letters(p: Presentation) -> list[Letter]:
    return sorted(Letter(a.name, inv) for a in p.arrows for inv in (False, True))


def next_letters(p: Presentation, letters: Sequence[Letter], start: str | None = None) -> list[Letter]:
    """Letters that extend ``letters`` (or begin a word at ``start``) to a string."""
    if not letters:
        return [l for l in all_letters(p) if start is None or head(p, l) == start]
    return [m for m in all_letters(p) if can_append(p, letters, m)]


def invert(w):
    if isinstance(w, Word):
        if not w.letters:
            v, side = w.basepoint
            return Word((), (v, -side))
        return Word(tuple(l.inv() for l in reversed(w.letters)))
    if isinstance(w, InfiniteWord):
        inv = lambda xs: None if xs is None else tuple(l.inv() for l in reversed(xs))
        return InfiniteWord(inv(w.core), inv(w.left), inv(w.right), w.left_end, w.right_end)
    return tuple(l.inv() for l in reversed(w))


def flip_letters(letters: Sequence[Letter]) -> Letters:
    """Same walk over the opposite quiver: every letter changes direction."""
    return tuple(l.inv() for l in letters)


# -- H-sets and the order on strings ---------------------------------------

class HAssignment:
    """Partition of the letters leaving each vertex into the sides +1 and -1."""

    def __init__(self, sides: dict[tuple[str, Letter], int]):
        self.sides = dict(sides)

    def side(self, vertex: str, l: Letter) -> int:
        return self.sides[(vertex, l)]

    def letters(self, vertex: str, side: int) -> list[Letter]:
        return sorted(l for (v, l), s in self.sides.items() if v == vertex and s == side)

    def word_side(self, p: Presentation, w: Word) -> tuple[str, int]:
        if not w.letters:
            return w.basepoint
        v = head(p, w.letters[0])
        return v, self.side(v, w.letters[0])


def h_assignment(p: Presentation) -> HAssignment:
    sides: dict[tuple[str, Letter], int] = {}
    for v in p.vertices:
        entering = [l for l in all_letters(p) if head(p, l) == v]

        def conflict(l1, l2):
            if l1.inverse == l2.inverse:
                return True
            return is_string(p, (l1.inv(), l2)) or is_string(p, (l2.inv(), l1))

        colour: dict[Letter, int] = {}
        for l in entering:
            if l in colour:
                continue
            colour[l] = 1
            stack = [l]
            while stack:
                x = stack.pop()
                for y in entering:
                    if y != x and conflict(x, y):
                        if y not in colour:
                            colour[y] = -colour[x]
                            stack.append(y)
                        elif colour[y] == colour[x]:
                            raise AssertionError(f"no legal H-assignment at vertex {v}")
        for l, c in colour.items():
            sides[(v, l)] = c
    return HAssignment(sides)


class Order(enum.IntEnum):
    LT = -1
    EQ = 0
    GT = 1


def _rank(l: Letter | None) -> int:
    if l is None:
        return 1
    return 0 if l.inverse else 2


def compare_letter_sequences(c: Sequence[Letter], d: Sequence[Letter]) -> Order:
    """Order two walks from the same vertex and side at their first divergence."""
    n = 0
    while n < len(c) and n < len(d) and c[n] == d[n]:
        n += 1
    lc = c[n] if n < len(c) else None
    ld = d[n] if n < len(d) else None
    if lc is None and ld is None:
        return Order.EQ
    rc, rd = _rank(lc), _rank(ld)
    if rc == rd:
        raise WordError(f"words diverge at {lc} / {ld}: not in one H-set")
    return Order.LT if rc < rd else Order.GT


def h_compare(p: Presentation, c: Word, d: Word, H: HAssignment | None = None) -> Order:
    H = H or h_assignment(p)
    if H.word_side(p, c) != H.word_side(p, d):
        raise WordError(f"{c} and {d} lie in different H-sets")
    return compare_letter_sequences(c.letters, d.letters)


class BandComparison(enum.Enum):
    ASCENDS = "ascends"
    DESCENDS = "descends"
    PERIODIC_PREFIX = "periodic-prefix"


def compare_to_band_power(x: Sequence[Letter], b: Sequence[Letter]) -> BandComparison:
    x, b = letters_of(x), letters_of(b)
    if tuple(x[:len(b)]) != tuple(b):
        raise WordError("word does not begin with the band")
    for i in range(len(b), len(x)):
        want = b[i % len(b)]
        if x[i] != want:
            if x[i].inverse == want.inverse:
                raise WordError("divergence between letters of one kind")
            return BandComparison.DESCENDS if x[i].inverse else BandComparison.ASCENDS
    return BandComparison.PERIODIC_PREFIX


# -- infinite words ---------------------------------------------------------

def expand(w: InfiniteWord, periods: int) -> tuple[Letters, int]:
    """Core with ``periods`` copies of each tail; returns (letters, core offset)."""
    left = (w.left or ()) * periods
    return left + w.core + (w.right or ()) * periods, len(left)


def _rotate(xs: Letters, k: int) -> Letters:
    k %= len(xs)
    return xs[k:] + xs[:k]


def primitive_root(xs: Letters) -> Letters:
    n = len(xs)
    for d in range(1, n + 1):
        if n % d == 0 and xs[:d] * (n // d) == xs:
            return xs[:d]
    return xs


def normalize(p: Presentation, w: InfiniteWord) -> InfiniteWord:
    """Shortest core: the tails absorb every letter that continues their period."""
    if not (w.left or w.right):
        raise WordError("an infinite word needs a tail")
    check_infinite(p, w)
    w = replace(w, left=w.left and primitive_root(w.left),
                right=w.right and primitive_root(w.right))
    lp, rp = len(w.left or ()), len(w.right or ())
    letters, off = expand(w, len(w.core) + lp + rp + 3)
    n = len(letters)
    q = n
    if w.right:
        q = off + len(w.core)
        while q > 0 and letters[q - 1] == letters[q - 1 + rp]:
            q -= 1
    if w.left and w.right and all(letters[i] == letters[i + rp] for i in range(n - rp)):
        raise WordError("completely periodic two-sided word")
    pl = 0
    if w.left:
        pl = min(off, q)
        while pl < min(q, n) and letters[pl] == letters[pl - lp]:
            pl += 1
    core = letters[pl:q]
    right = letters[q:q + rp] if w.right else None
    left = letters[pl - lp:pl] if w.left else None
    if left and right and not core and left == right:
        raise WordError("completely periodic two-sided word")
    return InfiniteWord(core, right, left)


def check_infinite(p: Presentation, w: InfiniteWord) -> None:
    """Raise WordError unless every finite piece of ``w`` is a string."""
    letters, _ = expand(w, 3)
    v = check_string(p, letters)
    if v is not None:
        raise WordError(f"not a string: {v}")
    for tail_ in (w.left, w.right):
        if tail_ is not None and not is_string(p, tail_ * 3):
            raise WordError(f"tail {format_letters(tail_)} is not periodic")


def _same_cycle(a: Letters, b: Letters) -> bool:
    return len(a) == len(b) and any(_rotate(a, k) == b for k in range(len(a)))


def _right_end(w: InfiniteWord) -> str:
    # the shift endomorphism moves the tail outwards exactly when the letter
    # closing each period (the one preceding the next period) is inverse
    return "expanding" if w.right[-1].inverse else "contracting"


def classify_ends(p: Presentation, w: InfiniteWord) -> InfiniteWord:
    n = normalize(p, w)
    right_end = _right_end(n) if n.right else None
    left_end = _right_end(invert(n)) if n.left else None
    return replace(n, right_end=right_end, left_end=left_end)


# -- occurrences ------------------------------------------------------------

class Occurrence(NamedTuple):
    start: int
    end: int
    inverted: bool = False


def _window(w, pattern_len: int, periods: int | None):
    """(letters, offset, lo, hi, left_open, right_open, period_info)."""
    if isinstance(w, InfiniteWord):
        per = max(len(w.left or ()), len(w.right or ()), 1)
        k = periods if periods is not None else pattern_len // per + 3
        letters, off = expand(w, k + 1)
        lp = len(w.left or ())
        rp = len(w.right or ())
        lo = lp if w.left else 0
        hi = len(letters) - rp if w.right else len(letters)
        return letters, off, lo, hi, bool(w.left), bool(w.right), (lp, rp)
    letters = letters_of(w)
    return letters, 0, 0, len(letters), False, False, (0, 0)


def _occurrences(p: Presentation, pattern: Word, host, periods, image: bool,
                 inverted: bool = True) -> list[Occurrence]:
    plen = len(pattern)
    letters, off, lo, hi, _, _, (lp, rp) = _window(host, plen, periods)
    n = len(letters)
    trace = vertex_trace(p, letters) if letters else (
        [host.basepoint[0]] if isinstance(host, Word) else [])
    if not letters and isinstance(host, Word):
        trace = [host.basepoint[0]]
    targets = [(pattern.letters, False)]
    if plen and inverted:
        targets.append((invert(pattern).letters, True))
    out = []
    for pat, inv in targets:
        for s in range(lo, hi - plen + 1):
            if tuple(letters[s:s + plen]) != pat:
                continue
            if not plen and trace[s] != pattern.basepoint[0]:
                continue
            e = s + plen
            left = letters[s - 1] if s > 0 else None
            right = letters[e] if e < n else None
            if image:
                ok = (left is None or left.inverse) and (right is None or right.direct)
            else:
                ok = (left is None or left.direct) and (right is None or right.inverse)
            if ok:
                out.append(Occurrence(s - off, e - off, inv))
    if isinstance(host, InfiniteWord):
        out = _canonical_mod_period(host, out, lp, rp)
    return sorted(set(out))


def _canonical_mod_period(host: InfiniteWord, occ, lp, rp):
    core_end = len(host.core)
    keep = set(occ)
    result = []
    for o in occ:
        if rp and o.start >= core_end and Occurrence(o.start - rp, o.end - rp, o.inverted) in keep \
                and o.start - rp >= core_end:
            continue
        if lp and o.end <= 0 and Occurrence(o.start + lp, o.end + lp, o.inverted) in keep \
                and o.end + lp <= 0:
            continue
        result.append(o)
    return result


def image_occurrences(p: Presentation, pattern: Word, host, periods: int | None = None,
                      inverted: bool = True) -> list[Occurrence]:
    """Occurrences of ``pattern`` closed under successors in ``host``."""
    return _occurrences(p, pattern, host, periods, image=True, inverted=inverted)


def factor_occurrences(p: Presentation, pattern: Word, host, periods: int | None = None,
                       inverted: bool = True) -> list[Occurrence]:
    """Occurrences of ``pattern`` closed under predecessors in ``host``."""
    return _occurrences(p, pattern, host, periods, image=False, inverted=inverted)


# -- word grammar -----------------------------------------------------------

_TOKEN = re.compile(r"\s*(inf\^\(|\)\^inf|\)\^\d+|\)|\(|1_[A-Za-z0-9_.']+-?|[A-Za-z0-9_.']+-?)")


def _tokens(text: str):
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise WordError(f"unexpected character {text[pos:].strip()[:1]!r} at column {pos + 1}")
        yield m.group(1), m.start(1) + 1
        pos = m.end()


def parse_word(text: str, p: Presentation | None = None) -> AnyWord:
    """Parse the word grammar, e.g. ``inf^(e d-) e g (a b-)^inf`` or ``(a b-)^2 a``."""
    toks = list(_tokens(text))
    left = right = None
    core: list[Letter] = []
    basepoint = None
    i = 0
    while i < len(toks):
        tok, col = toks[i]
        if tok == "inf^(":
            if i != 0:
                raise WordError(f"left tail only allowed at the start (column {col})")
            j, group = _group(toks, i + 1)
            if toks[j][0] != ")":
                raise WordError(f"left tail must be closed by ')' (column {toks[j][1]})")
            left = tuple(group)
            i = j + 1
            continue
        if tok == "(":
            j, group = _group(toks, i + 1)
            close, ccol = toks[j]
            if close == ")^inf":
                if j != len(toks) - 1:
                    raise WordError(f"right tail only allowed at the end (column {ccol})")
                right = tuple(group)
            elif close.startswith(")^"):
                core.extend(group * int(close[2:]))
            else:
                raise WordError(f"expected ')^n' or ')^inf' at column {ccol}")
            i = j + 1
            continue
        if tok.startswith("1_"):
            name = tok[2:]
            side = -1 if name.endswith("-") else 1
            basepoint = (name.rstrip("-"), side)
            i += 1
            continue
        if tok.startswith(")"):
            raise WordError(f"unbalanced ')' at column {col}")
        core.append(_letter(tok))
        i += 1
    if (left or right) and not all(x is None or len(x) for x in (left, right)):
        raise WordError("empty tail")
    if left is not None or right is not None:
        w = InfiniteWord(tuple(core), right, left)
        if p is not None:
            check_infinite(p, w)
        return w
    if not core:
        if basepoint is None:
            raise WordError("empty word without basepoint (write 1_<vertex>)")
        if p is not None and basepoint[0] not in p.vertices:
            raise WordError(f"unknown vertex {basepoint[0]!r}")
        return Word((), basepoint)
    w = Word(tuple(core))
    if p is not None:
        v = check_string(p, w.letters)
        if v is not None:
            raise WordError(f"not a string: {v}")
    return w


def _letter(tok: str) -> Letter:
    return Letter(tok[:-1], True) if tok.endswith("-") else Letter(tok, False)


def _group(toks, i):
    group = []
    while i < len(toks) and not toks[i][0].startswith(")"):
        tok, col = toks[i]
        if tok in ("(", "inf^(") or tok.startswith("1_"):
            raise WordError(f"nested group at column {col}")
        group.append(_letter(tok))
        i += 1
    if i >= len(toks):
        raise WordError("unclosed '('")
    return i, group


def random_string(p: Presentation, rng, max_length: int) -> Word:
    """A random walk of at most ``max_length`` letters; length 0 gives an empty word."""
    n = rng.randint(0, max_length)
    if n == 0:
        return Word((), (rng.choice(p.vertices), rng.choice((1, -1))))
    xs: Letters = (rng.choice(all_letters(p)),)
    while len(xs) < n:
        options = next_letters(p, xs)
        if not options:
            break
        xs += (rng.choice(options),)
    return Word(xs)
