"""Exact walk counts, and rank/unrank in the enumerator's emission order.

Ranks are 0-based: ``rank(w)`` is the number of walks emitted before ``w``.
Both directions replay the enumerator's control flow through
:func:`open_frame`/:func:`advance`, so they agree with it by construction.
Whole branching vertices are skipped with one subtraction of counts.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence, Union

from .enumerator import Frame, advance, open_frame
from .graph import Graph
from .pca import Pca, PcaError
from .preprocess import Preprocessed


class RankError(ValueError):
    pass


class CountTable:
    """rows[l][q] = number of walks of length l starting at q."""

    def __init__(self, g: Graph, m: int = 0):
        self.g = g
        self.rows: list[list[int]] = [[1] * g.n]
        self.extend(m)

    @property
    def m(self) -> int:
        return len(self.rows) - 1

    def extend(self, m: int) -> None:
        if m < 0:
            raise ValueError("m must be >= 0")
        g = self.g
        dsts = [[g.edges[e].dst for e in g.out_adj[v]] for v in range(g.n)]
        while len(self.rows) <= m:
            prev = self.rows[-1]
            self.rows.append([sum(prev[u] for u in dsts[v]) for v in range(g.n)])

    def __call__(self, q: int, ell: int) -> int:
        if ell > self.m:
            self.extend(ell)
        return self.rows[ell][q]


def count_walks(g: Graph, m: int) -> CountTable:
    return CountTable(g, m)


def pca_counts(a: Pca, m: int) -> CountTable:
    """The automaton's cached table, grown to at least m."""
    with a._lock:
        if a._counts is None:
            a._counts = CountTable(a.graph, m)
        elif a._counts.m < m:
            a._counts.extend(m)
        return a._counts


# -- decomposition --------------------------------------------------------------------


class Segment(NamedTuple):
    start: int  # vertex
    length: int  # default edges


@dataclass
class DefaultDecomposition:
    """w = seg_0 e_0 seg_1 e_1 ... seg_t with every seg a default walk."""

    segments: list[Segment]
    edges: list[int]  # non-default edge ids between segments

    def concat(self, p: Preprocessed) -> list[int]:
        out: list[int] = []
        for i, seg in enumerate(self.segments):
            out.extend(p.default_walk(seg.start, seg.length))
            if i < len(self.edges):
                out.append(self.edges[i])
        return out


def decompose(p: Preprocessed, v0: int, walk: Sequence[int]) -> DefaultDecomposition:
    edges = p.graph.edges
    segs, nd = [], []
    start, run, v = v0, 0, v0
    for eid in walk:
        e = edges[eid]
        if e.src != v:
            raise RankError(f"edge {eid} does not leave vertex {v}")
        if eid == p.default_edge[v]:
            run += 1
        else:
            segs.append(Segment(start, run))
            nd.append(eid)
            start, run = e.dst, 0
        v = e.dst
    segs.append(Segment(start, run))
    return DefaultDecomposition(segs, nd)


# -- guided traversal --------------------------------------------------------------------


def _before(p: Preprocessed, N: CountTable, vp: int, upto: int, r: int) -> int:
    """Walks of length r + 1 from vp via the first ``upto`` entries of L_vp."""
    lst = p.branch_lists[vp]
    edges = p.graph.edges
    return sum(N(edges[lst[i].edge].dst, r) for i in range(upto))


def _aggregate(p: Preprocessed, N: CountTable, fr: Frame) -> int:
    """Walks produced by the rest of the current L_{v'} traversal, in one shot."""
    r = fr.ell - fr.base - 1
    return N(fr.vp, r + 1) - _before(p, N, fr.vp, fr.pos, r)


def rank_walk(p: Preprocessed, N: CountTable, v0: int, walk: Sequence[int]) -> int:
    m = len(walk)
    if m > p.pi[v0]:
        raise RankError("walk is longer than any walk from its start")
    dec = decompose(p, v0, walk)
    edges = p.graph.edges
    total = 0
    u, ell, pos = v0, m, 0
    for t, eid in enumerate(dec.edges):
        at = pos + dec.segments[t].length  # index of eid in the walk
        want = at - pos  # distance of its source from u
        fr = open_frame(p, 0, u, ell)
        if fr is None:
            raise RankError("walk leaves the default walk where no branch exists")
        found = False
        while not found and advance(p, fr):
            if fr.base != want:
                total += _aggregate(p, N, fr)
                continue
            r = ell - fr.base - 1
            for br in p.branch_lists[fr.vp][fr.pos:]:
                if br.edge == eid:
                    found = True
                    break
                total += N(edges[br.edge].dst, r)
        if not found:
            if fr.last_edge != eid or ell - fr.last_len - 1 != want:
                raise RankError(f"edge {eid} at position {at} is never taken")
        total += 1  # the walk emitted by the frame itself precedes its subtree
        u, ell, pos = edges[eid].dst, ell - want - 1, at + 1
    return total


def unrank_walk(p: Preprocessed, N: CountTable, v0: int, m: int, i: int) -> list[int]:
    size = N(v0, m) if m <= p.pi[v0] else 0
    if not 0 <= i < size:
        raise RankError(f"rank {i} out of range [0, {size})")
    edges = p.graph.edges
    walk: list[int] = []
    u, ell = v0, m
    while i > 0:
        i -= 1
        fr = open_frame(p, 0, u, ell)
        chosen: Optional[tuple[int, int]] = None  # (distance, edge id)
        while chosen is None and advance(p, fr):
            agg = _aggregate(p, N, fr)
            if i >= agg:
                i -= agg
                continue
            r = ell - fr.base - 1
            for br in p.branch_lists[fr.vp][fr.pos:]:
                c = N(edges[br.edge].dst, r)
                if i < c:
                    chosen = (fr.base, br.edge)
                    break
                i -= c
        if chosen is None:
            chosen = (ell - fr.last_len - 1, fr.last_edge)
        d, eid = chosen
        walk.extend(p.default_walk(u, d))
        walk.append(eid)
        u, ell = edges[eid].dst, ell - d - 1
    walk.extend(p.default_walk(u, ell))
    return walk


# -- strings ---------------------------------------------------------------------------------


def rank(a: Pca, word: Union[str, Sequence[int]]) -> int:
    if isinstance(word, str):
        word = a.parse_word(word)
    try:
        walk = a.word_to_walk(word)
    except PcaError:
        raise RankError(f"word {a.format(word)!r} is not in the language") from None
    return rank_walk(a.pre, pca_counts(a, len(word)), a.initial, walk)


def unrank(a: Pca, m: int, i: int) -> tuple[int, ...]:
    walk = unrank_walk(a.pre, pca_counts(a, m), a.initial, m, i)
    return a.walk_to_word(walk)


def count_strings(a: Pca, m: int) -> int:
    return pca_counts(a, m)(a.initial, m)
