"""Explicit string and band modules, graph maps, and exact Hom dimensions.

The graph-map count is purely combinatorial.  The oracle ignores words
altogether: it solves the intertwiner equations ``f_t A(a) = B(a) f_s`` for the
two explicit representations with exact rational elimination.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Sequence

from .bands import canonical_band
from .presentation import Presentation
from .words import Letters, Word, WordError, check_string, format_letters, vertex_trace

Matrix = list[list[Fraction]]


def _zeros(r: int, c: int) -> Matrix:
    return [[Fraction(0)] * c for _ in range(r)]


def matmul(a: Matrix, b: Matrix, inner: int) -> Matrix:
    rows = len(a)
    cols = len(b[0]) if b else 0
    out = _zeros(rows, cols)
    for i in range(rows):
        for m in range(inner):
            x = a[i][m]
            if x:
                bm = b[m]
                for j in range(cols):
                    out[i][j] += x * bm[j]
    return out


@dataclass
class ExplicitModule:
    """A representation: a basis per vertex and a matrix per arrow.

    ``matrices[a]`` has shape ``dims[target(a)] x dims[source(a)]``.
    """

    presentation: Presentation
    dims: dict[str, int]
    matrices: dict[str, Matrix]
    provenance: str = ""
    basis: list[tuple[str, int]] = field(default_factory=list)

    def total_dimension(self) -> int:
        return sum(self.dims.values())

    def path_matrix(self, names: Sequence[str]) -> Matrix:
        """Matrix of a path written right to left."""
        p = self.presentation
        first = p.arrow[names[-1]]
        out = self.matrices[names[-1]]
        inner = self.dims[first.target]
        for n in reversed(names[:-1]):
            a = p.arrow[n]
            out = matmul(self.matrices[n], out, inner)
            inner = self.dims[a.target]
        return out

    def satisfies_relations(self) -> bool:
        return all(all(x == 0 for row in self.path_matrix(r) for x in row)
                   for r in self.presentation.relations)


def _empty_module(p: Presentation, dims: dict[str, int], provenance: str) -> ExplicitModule:
    mats = {a.name: _zeros(dims[a.target], dims[a.source]) for a in p.arrows}
    return ExplicitModule(p, dims, mats, provenance)


def string_module(p: Presentation, w: Word) -> ExplicitModule:
    if w.letters:
        v = check_string(p, w.letters)
        if v is not None:
            raise WordError(f"not a string: {v}")
    trace = vertex_trace(p, w)
    dims = {v: 0 for v in p.vertices}
    index = []
    for v in trace:
        index.append(dims[v])
        dims[v] += 1
    m = _empty_module(p, dims, f"M({w})")
    m.basis = list(zip(trace, index))
    for i, l in enumerate(w.letters, start=1):
        a = p.arrow[l.arrow]
        # direct: e_i -> e_{i-1}; inverse: e_{i-1} -> e_i
        src, dst = (i, i - 1) if l.direct else (i - 1, i)
        m.matrices[a.name][index[dst]][index[src]] = Fraction(1)
    return m


def band_module(p: Presentation, b: Letters, lam, n: int = 1) -> ExplicitModule:
    """M(b, lam, n): identities along b, an n x n Jordan block on its last letter."""
    lam = Fraction(lam)
    if lam == 0:
        raise ValueError("band parameter must be nonzero")
    if n < 1:
        raise ValueError("band module size must be at least 1")
    canonical_band(p, b)
    k = len(b)
    trace = vertex_trace(p, b)[:k]
    dims = {v: 0 for v in p.vertices}
    offset = []
    for v in trace:
        offset.append(dims[v])
        dims[v] += n
    m = _empty_module(p, dims, f"M({format_letters(b)}, {lam}, {n})")
    m.basis = [(v, offset[i] + j) for i, v in enumerate(trace) for j in range(n)]
    for i, l in enumerate(b, start=1):
        a = p.arrow[l.arrow]
        prev, cur = i - 1, i % k
        src, dst = (cur, prev) if l.direct else (prev, cur)
        mat = m.matrices[a.name]
        for r in range(n):
            if i == k:
                mat[offset[dst] + r][offset[src] + r] = lam
                if r + 1 < n:
                    mat[offset[dst] + r][offset[src] + r + 1] = Fraction(1)
            else:
                mat[offset[dst] + r][offset[src] + r] = Fraction(1)
    return m


def build_module(p: Presentation, source) -> ExplicitModule:
    """``source`` is a Word, or a tuple ``(band letters, lam, n)``."""
    if isinstance(source, Word):
        return string_module(p, source)
    b, lam, n = source
    return band_module(p, tuple(b.letters if isinstance(b, Word) else b), lam, n)


# -- exact linear algebra ---------------------------------------------------

def _rank(rows: list[dict[int, Fraction]]) -> int:
    pivots: dict[int, dict[int, Fraction]] = {}
    for row in rows:
        row = {k: v for k, v in row.items() if v}
        while row:
            hit = [k for k in row if k in pivots]
            if not hit:
                break
            k = min(hit)
            prow = pivots[k]
            factor = row[k]
            for j, x in prow.items():
                y = row.get(j, 0) - factor * x
                if y:
                    row[j] = y
                else:
                    row.pop(j, None)
        if row:
            k = min(row)
            lead = row[k]
            pivots[k] = {j: x / lead for j, x in row.items()}
    return len(pivots)


def hom_dim_oracle(A: ExplicitModule, B: ExplicitModule) -> int:
    """dim Hom(A, B) as the nullity of the intertwiner equations."""
    p = A.presentation
    var: dict[tuple[str, int, int], int] = {}
    for v in p.vertices:
        for i in range(B.dims[v]):
            for j in range(A.dims[v]):
                var[(v, i, j)] = len(var)
    rows = []
    for a in p.arrows:
        s, t = a.source, a.target
        Am, Bm = A.matrices[a.name], B.matrices[a.name]
        # (f_t A_a - B_a f_s)[i][j] = 0
        for i in range(B.dims[t]):
            for j in range(A.dims[s]):
                row: dict[int, Fraction] = {}
                for m in range(A.dims[t]):
                    x = Am[m][j]
                    if x:
                        key = var[(t, i, m)]
                        row[key] = row.get(key, 0) + x
                for m in range(B.dims[s]):
                    x = Bm[i][m]
                    if x:
                        key = var[(s, m, j)]
                        row[key] = row.get(key, 0) - x
                if row:
                    rows.append(row)
    return len(var) - _rank(rows)


# -- graph maps -------------------------------------------------------------

class GraphMap(NamedTuple):
    mediator: Word
    factor: tuple[int, int]
    image: tuple[int, int]
    inverted: bool


def _closed(letters: Letters, i: int, j: int, image: bool) -> bool:
    left = letters[i - 1] if i > 0 else None
    right = letters[j] if j < len(letters) else None
    if image:
        return (left is None or left.inverse) and (right is None or right.direct)
    return (left is None or left.direct) and (right is None or right.inverse)


def graph_maps(p: Presentation, u: Word, v: Word) -> list[GraphMap]:
    """All graph maps M(u) -> M(v)."""
    tu, tv = vertex_trace(p, u), vertex_trace(p, v)
    U, V = u.letters, v.letters
    vi = tuple(l.inv() for l in reversed(V))
    out = []
    for i in range(len(U) + 1):
        for j in range(i, len(U) + 1):
            if not _closed(U, i, j, image=False):
                continue
            d = U[i:j]
            n = len(d)
            for k in range(len(V) - n + 1):
                if not d and tv[k] != tu[i]:
                    continue
                if V[k:k + n] == d and _closed(V, k, k + n, image=True):
                    med = Word(d) if d else Word((), (tu[i], 1))
                    out.append(GraphMap(med, (i, j), (k, k + n), False))
                if d and vi[k:k + n] == d and _closed(vi, k, k + n, image=True):
                    # position reported in v's own coordinates
                    m = len(V)
                    out.append(GraphMap(Word(d), (i, j), (m - k - n, m - k), True))
    return out


def graph_map_count(p: Presentation, u: Word, v: Word) -> tuple[int, list[GraphMap]]:
    maps = graph_maps(p, u, v)
    return len(maps), maps
