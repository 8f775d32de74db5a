"""Directed multigraphs with stable edge ids and optional edge labels.

Text format (line oriented, ``#`` lines are comments)::

    n e [sigma]
    src dst [label]      # e lines, 0-based vertices, labels in [1, sigma]
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, TextIO


class GraphFormatError(ValueError):
    """Raised for malformed graph text; carries the 1-based line number."""

    def __init__(self, lineno: int, reason: str):
        super().__init__(f"line {lineno}: {reason}")
        self.lineno = lineno
        self.reason = reason


@dataclass(frozen=True)
class Edge:
    id: int
    src: int
    dst: int
    label: Optional[int] = None


@dataclass
class Graph:
    n: int
    edges: list[Edge]
    sigma: Optional[int] = None
    out_adj: list[list[int]] = field(default_factory=list)
    in_adj: list[list[int]] = field(default_factory=list)

    def __post_init__(self) -> None:
        if not self.out_adj and not self.in_adj:
            self.out_adj = [[] for _ in range(self.n)]
            self.in_adj = [[] for _ in range(self.n)]
            for e in self.edges:
                if 0 <= e.src < self.n:
                    self.out_adj[e.src].append(e.id)
                if 0 <= e.dst < self.n:
                    self.in_adj[e.dst].append(e.id)

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple], sigma: Optional[int] = None) -> "Graph":
        """Build from ``(src, dst)`` or ``(src, dst, label)`` tuples; ids follow input order."""
        edges = []
        for i, t in enumerate(pairs):
            edges.append(Edge(i, t[0], t[1], t[2] if len(t) > 2 else None))
        return cls(n, edges, sigma)

    @property
    def labelled(self) -> bool:
        return self.sigma is not None

    @property
    def m(self) -> int:
        return len(self.edges)

    def out_edges(self, v: int) -> list[Edge]:
        return [self.edges[i] for i in self.out_adj[v]]

    def out_degree(self, v: int) -> int:
        return len(self.out_adj[v])

    def walk_vertices(self, start: int, edge_ids: Iterable[int]) -> list[int]:
        verts = [start]
        for eid in edge_ids:
            verts.append(self.edges[eid].dst)
        return verts


def parse_graph(text: str | TextIO) -> Graph:
    if not isinstance(text, str):
        text = text.read()
    header = None
    rows: list[tuple[int, list[int]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            nums = [int(tok) for tok in line.split()]
        except ValueError:
            raise GraphFormatError(lineno, f"non-integer token in {line!r}") from None
        if header is None:
            if len(nums) not in (2, 3) or any(x < 0 for x in nums):
                raise GraphFormatError(lineno, "header must be 'n e' or 'n e sigma'")
            header = (lineno, nums)
        else:
            rows.append((lineno, nums))
    if header is None:
        raise GraphFormatError(1, "missing header")
    hline, hnums = header
    n, e = hnums[0], hnums[1]
    sigma = hnums[2] if len(hnums) == 3 else None
    if sigma is not None and sigma < 1:
        raise GraphFormatError(hline, "sigma must be >= 1")
    if len(rows) != e:
        last = rows[-1][0] if rows else hline
        raise GraphFormatError(last, f"header declares {e} edges, found {len(rows)}")

    width = 2 if sigma is None else 3
    edges: list[Edge] = []
    seen: dict[tuple[int, int], int] = {}
    for lineno, nums in rows:
        if len(nums) != width:
            raise GraphFormatError(lineno, f"expected {width} fields, got {len(nums)}")
        src, dst = nums[0], nums[1]
        for v in (src, dst):
            if not 0 <= v < n:
                raise GraphFormatError(lineno, f"vertex {v} out of range [0, {n})")
        label = None
        if sigma is not None:
            label = nums[2]
            if not 1 <= label <= sigma:
                raise GraphFormatError(lineno, f"label {label} out of range [1, {sigma}]")
            if (src, label) in seen:
                raise GraphFormatError(
                    lineno, f"nondeterministic label {label} at vertex {src} "
                    f"(also on line {seen[(src, label)]})")
            seen[(src, label)] = lineno
        edges.append(Edge(len(edges), src, dst, label))
    return Graph(n, edges, sigma)


def serialize(g: Graph) -> str:
    out = [f"{g.n} {g.m}" + ("" if g.sigma is None else f" {g.sigma}")]
    for e in g.edges:
        out.append(f"{e.src} {e.dst}" + ("" if e.label is None else f" {e.label}"))
    return "\n".join(out) + "\n"


def validate(g: Graph) -> list[str]:
    """Return one diagnostic string per violated structural invariant."""
    diags: list[str] = []
    ids = [e.id for e in g.edges]
    if ids != list(range(len(ids))):
        diags.append("edge ids are not dense 0..e-1 in list order")
    for e in g.edges:
        for name, v in (("src", e.src), ("dst", e.dst)):
            if not 0 <= v < g.n:
                diags.append(f"vertex out of range: edge {e.id} {name}={v} (n={g.n})")
    labels = [e.label is not None for e in g.edges]
    if any(labels) and not all(labels):
        diags.append("partially labelled graph: some edges lack labels")
    if g.sigma is not None:
        for e in g.edges:
            if e.label is not None and not 1 <= e.label <= g.sigma:
                diags.append(f"label out of range: edge {e.id} label={e.label} (sigma={g.sigma})")
    if any(labels):
        owner: dict[tuple[int, int], int] = {}
        for e in g.edges:
            key = (e.src, e.label)
            if key in owner:
                diags.append(f"nondeterministic label: vertex {e.src} label {e.label} "
                             f"on edges {owner[key]} and {e.id}")
            else:
                owner[key] = e.id

    if len(g.out_adj) != g.n or len(g.in_adj) != g.n:
        diags.append("adjacency lists do not have one entry per vertex")
        return diags
    out_count = [0] * len(g.edges)
    in_count = [0] * len(g.edges)
    for v in range(g.n):
        for eid in g.out_adj[v]:
            if not 0 <= eid < len(g.edges) or g.edges[eid].src != v:
                diags.append(f"out_adj[{v}] lists edge {eid} not leaving {v}")
            else:
                out_count[eid] += 1
        for eid in g.in_adj[v]:
            if not 0 <= eid < len(g.edges) or g.edges[eid].dst != v:
                diags.append(f"in_adj[{v}] lists edge {eid} not entering {v}")
            else:
                in_count[eid] += 1
    for e in g.edges:
        if 0 <= e.src < g.n and out_count[e.id] != 1:
            diags.append(f"edge {e.id} appears {out_count[e.id]} times in out_adj")
        if 0 <= e.dst < g.n and in_count[e.id] != 1:
            diags.append(f"edge {e.id} appears {in_count[e.id]} times in in_adj")
    return diags
