"""Constant-delay enumeration of walks of a fixed length.

The recursion of the underlying procedure is run iteratively: ``S`` holds one
record per non-default edge of the current walk (plus the start record) and
``C`` holds one frame per recursive activation that was not a tail call.

Every emitted :class:`DeltaRecord` describes its walk relative to the walk of
its parent activation, which is the most recent record emitted at
``depth - 1``: copy ``shared_len`` edges of that walk, then ``edge``, then the
default walk of ``tail_len`` edges from ``tail_start``.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Optional

from .graph import Edge
from .preprocess import Preprocessed


@dataclass(frozen=True)
class DeltaRecord:
    shared_len: int
    edge: Optional[Edge]
    tail_start: int
    tail_len: int
    depth: int = 0

    @property
    def length(self) -> int:
        return self.shared_len + (self.edge is not None) + self.tail_len

    def line(self) -> str:
        """``shared src dst[:label] tail_start tail_len depth edge_id`` (``-`` for no edge)."""
        if self.edge is None:
            es, eid = "- -", "-"
        else:
            es, eid = f"{self.edge.src} {self.edge.dst}", str(self.edge.id)
            if self.edge.label is not None:
                es += f":{self.edge.label}"
        return f"{self.shared_len} {es} {self.tail_start} {self.tail_len} {self.depth} {eid}"


Sink = Callable[[DeltaRecord], None]


def parse_record(line: str, g) -> DeltaRecord:
    """Inverse of :meth:`DeltaRecord.line` against graph ``g``."""
    toks = line.split()
    if len(toks) != 7:
        raise ValueError(f"expected 7 fields, got {len(toks)}")
    shared, src, dst, start, tlen, depth, eid = toks
    edge = None
    if eid != "-":
        e = int(eid)
        if not 0 <= e < g.m:
            raise ValueError(f"edge id {e} out of range")
        edge = g.edges[e]
        label = None
        if ":" in dst:
            dst, lab = dst.split(":", 1)
            label = int(lab)
        if (int(src), int(dst), label) != (edge.src, edge.dst, edge.label):
            raise ValueError(f"edge {e} is {edge.src}->{edge.dst}, not {src}->{dst}")
    elif (src, dst) != ("-", "-"):
        raise ValueError("edge endpoints given without an edge id")
    rec = DeltaRecord(int(shared), edge, int(start), int(tlen), int(depth))
    if rec.shared_len < 0 or rec.tail_len < 0 or rec.depth < 0 or not 0 <= rec.tail_start < g.n:
        raise ValueError("negative field or vertex out of range")
    return rec


class DecodeError(ValueError):
    def __init__(self, index: int, reason: str):
        super().__init__(f"record {index}: {reason}")
        self.index = index


class Frame:
    """State of one non-tail activation: worklist U and the L_{v'} traversal cursor."""

    __slots__ = ("sidx", "u", "ell", "work", "vp", "base", "pos", "last_edge", "last_len")

    def __init__(self, sidx: int, u: int, ell: int, vertex: int, dist: int, last_edge: int):
        self.sidx = sidx
        self.u = u
        self.ell = ell
        # entries (s, j, h, is_first): default sub-walk (s, j) at distance h from u
        self.work = deque(((u, ell, 0, True),))
        self.vp = -1
        self.base = 0
        self.pos = 0
        self.last_edge = last_edge
        self.last_len = ell - dist - 1


def open_frame(p: Preprocessed, sidx: int, u: int, ell: int) -> Optional[Frame]:
    """Frame for a call reaching u with ell edges left, or None if no branch exists."""
    if ell == 0:
        return None
    r = p.queries.pmn(u, ell)
    if r is None or r.dist + p.w[r.vertex] < ell:
        return None
    return Frame(sidx, u, ell, r.vertex, r.dist, p.branch_lists[r.vertex][1].edge)


def advance(p: Preprocessed, fr: Frame) -> bool:
    """Take the next worklist entry; set the branching vertex and list cursor."""
    if not fr.work:
        return False
    q = p.queries
    w = p.w
    ell = fr.ell
    s, j, h, first = fr.work.popleft()
    vp, f = q.pmn(s, j)
    if f > 0:
        r = q.pmn(s, f)
        if r is not None and h + r.dist + w[r.vertex] >= ell:
            fr.work.append((s, f, h, False))
    rest = j - f - 1
    if rest > 0:
        nxt = q.walk_end(s, f + 1)
        r = q.pmn(nxt, rest)
        if r is not None and h + f + 1 + r.dist + w[r.vertex] >= ell:
            fr.work.append((nxt, rest, h + f + 1, False))
    fr.vp = vp
    fr.base = h + f
    fr.pos = 2 if first else 1
    return True


class Enumerator:
    """One enumeration run at a time; the Preprocessed value may be shared."""

    def __init__(self, p: Preprocessed, instrument: bool = False):
        self.p = p
        self.instrument = instrument
        self.S: list[DeltaRecord] = []
        self.top = -1
        self.steps = 0
        self.max_delay = 0
        self._last_emit = 0
        self._m = 0

    # -- instrumentation -------------------------------------------------------

    def _mark(self) -> None:
        gap = self.steps - self._last_emit
        if gap > self.max_delay:
            self.max_delay = gap
        self._last_emit = self.steps

    # -- core ----------------------------------------------------------------------

    def _call(self, edge: Optional[Edge], u: int, ell: int, C: list[Frame], sink: Sink) -> None:
        top = self.top + 1
        shared = self._m - ell - (edge is not None)
        rec = DeltaRecord(shared, edge, u, ell, top)
        if top < len(self.S):
            self.S[top] = rec
        else:
            self.S.append(rec)
        self.top = top
        self.steps += 4  # push S, build record, output
        if self.instrument:
            self._mark()
        sink(rec)
        fr = open_frame(self.p, top, u, ell)
        self.steps += 4  # pmn, comparison, list access, push C
        if fr is not None:
            C.append(fr)

    def run(self, v0: int, m: int, sink: Sink) -> int:
        """Emit one record per walk of length m from v0; return the count."""
        p = self.p
        if m < 0:
            raise ValueError("m must be >= 0")
        self.steps += 1
        if p.pi[v0] < m:
            return 0
        edges = p.graph.edges
        lists = p.branch_lists
        self._m = m
        self.top = -1
        count = 0

        def counted(rec: DeltaRecord) -> None:
            nonlocal count
            count += 1
            sink(rec)

        C: list[Frame] = []
        self._call(None, v0, m, C, counted)
        while C:
            fr = C[-1]
            self.top = fr.sidx
            self.steps += 2
            if fr.vp >= 0:
                lst = lists[fr.vp]
                pos = fr.pos
                self.steps += 2
                if pos < len(lst) and fr.base + lst[pos].walk_len >= fr.ell:
                    fr.pos = pos + 1
                    self._call(edges[lst[pos].edge], edges[lst[pos].edge].dst,
                               fr.ell - fr.base - 1, C, counted)
                    continue
                fr.vp = -1
            self.steps += 12  # worklist pop, three pmn, walk_end, comparisons, pushes
            if advance(p, fr):
                continue
            C.pop()
            self.steps += 2
            last = edges[fr.last_edge]
            self._call(last, last.dst, fr.last_len, C, counted)
        self.steps += 1
        return count

    def run_all(self, m: int, sink: Sink) -> int:
        total = 0
        for v in self.p.order:
            self.steps += 2
            if self.p.pi[v] < m:
                break
            total += self.run(v, m, sink)
        return total

    def run_range(self, lo: int, hi: int, sink: Sink) -> int:
        if not 0 <= lo <= hi:
            raise ValueError("need 0 <= lo <= hi")
        total = 0
        for i in range(lo, hi + 1):
            total += self.run_all(i, sink)
        return total

    def finish(self) -> None:
        """Account the trailing gap after the last emission."""
        if self.instrument:
            self._mark()

    def materialize_current(self) -> list[int]:
        if self.top < 0:
            raise RuntimeError("no active walk")
        return expand(self.p, self.S[: self.top + 1])


def expand(p: Preprocessed, stack: list[DeltaRecord]) -> list[int]:
    """Explicit edge ids of the walk spelled by a record stack (bottom first)."""
    walk: list[int] = []
    for i, rec in enumerate(stack):
        if rec.edge is not None:
            walk.append(rec.edge.id)
        if i + 1 < len(stack):
            length = stack[i + 1].shared_len - len(walk)
        else:
            length = rec.tail_len
        walk.extend(p.default_walk(rec.tail_start, length))
    return walk


# -- drivers ---------------------------------------------------------------------------

def enumerate_from(p: Preprocessed, v0: int, m: int, sink: Sink) -> int:
    return Enumerator(p).run(v0, m, sink)


def enumerate_all(p: Preprocessed, m: int, sink: Sink) -> int:
    return Enumerator(p).run_all(m, sink)


def enumerate_range(p: Preprocessed, lo: int, hi: int, sink: Sink) -> int:
    return Enumerator(p).run_range(lo, hi, sink)


def collect(p: Preprocessed, m: int, v0: Optional[int] = None,
            lo: Optional[int] = None) -> list[DeltaRecord]:
    """Convenience: records as a list (``lo`` given means the range lo..m)."""
    out: list[DeltaRecord] = []
    if lo is not None:
        enumerate_range(p, lo, m, out.append)
    elif v0 is None:
        enumerate_all(p, m, out.append)
    else:
        enumerate_from(p, v0, m, out.append)
    return out


def decode_stream(p: Preprocessed, records: Iterable[DeltaRecord]) -> Iterator[list[int]]:
    """Yield the explicit walk (edge ids) of every record."""
    stack: list[DeltaRecord] = []
    walks: list[list[int]] = []  # explicit walk per stack level
    edges = p.graph.edges
    for idx, rec in enumerate(records):
        if rec.edge is None:
            if rec.depth != 0 or rec.shared_len != 0:
                raise DecodeError(idx, "record without edge must start a run")
            prefix: list[int] = []
            stack.clear()
            walks.clear()
        else:
            if not 1 <= rec.depth <= len(stack):
                raise DecodeError(idx, f"depth {rec.depth} without a parent walk")
            parent = walks[rec.depth - 1]
            if rec.shared_len > len(parent) - 1 or rec.shared_len < 0:
                raise DecodeError(idx, f"shared_len {rec.shared_len} exceeds parent walk "
                                       f"of length {len(parent)}")
            prefix = parent[: rec.shared_len]
            at = edges[prefix[-1]].dst if prefix else stack[0].tail_start
            if rec.edge.src != at:
                raise DecodeError(idx, f"edge {rec.edge.src}->{rec.edge.dst} does not leave "
                                       f"vertex {at} at position {rec.shared_len}")
            if rec.edge.dst != rec.tail_start:
                raise DecodeError(idx, "tail_start differs from the edge target")
            prefix = prefix + [rec.edge.id]
            del stack[rec.depth:]
            del walks[rec.depth:]
        if rec.tail_len > p.pi[rec.tail_start]:
            raise DecodeError(idx, f"tail_len {rec.tail_len} > pi({rec.tail_start})")
        walk = prefix + p.default_walk(rec.tail_start, rec.tail_len)
        stack.append(rec)
        walks.append(walk)
        yield walk


def walk_vertices(p: Preprocessed, start: int, walk: list[int]) -> list[int]:
    return p.graph.walk_vertices(start, walk)
