"""Longest-walk lengths, sorted branch lists and the default-graph decomposition.

Walk lengths are ints, with ``INFINITE`` (``math.inf``) for vertices that reach a
cycle. Branch weights use ``NEG_INFINITE`` when a vertex has no non-default edge.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import NamedTuple, Optional, Union

from .graph import Graph

INFINITE = math.inf
NEG_INFINITE = -math.inf

WalkLen = Union[int, float]


class Meter:
    """Primitive-operation counter used by the complexity checks."""

    __slots__ = ("steps",)

    def __init__(self) -> None:
        self.steps = 0

    def tick(self, k: int = 1) -> None:
        self.steps += k


class Branch(NamedTuple):
    edge: int
    walk_len: WalkLen  # longest walk starting with this edge, edge included


class Kind(Enum):
    CYCLE = "cycle"
    INDEP_TREE = "indep_tree"
    CYCLE_TREE = "cycle_tree"


@dataclass
class CycleRecord:
    length: int
    arr: list[int]  # the cycle written twice, starting at its lowest vertex id
    first_occ: dict[int, int]
    depth: list[int]  # d_c for every array position: 2*length - p (0-based p)


@dataclass
class ComponentInfo:
    kind: Kind
    component_id: int
    cycle: Optional[int] = None  # index into Preprocessed.cycles
    tree_root: Optional[int] = None


@dataclass
class Depths:
    d_t: Optional[int] = None
    d_c: Optional[int] = None


@dataclass
class Preprocessed:
    graph: Graph
    pi: list[WalkLen]
    branch_lists: list[list[Branch]]
    w: list[WalkLen]
    default_edge: list[Optional[int]]
    components: list[ComponentInfo]
    depths: list[Depths]
    cycles: list[CycleRecord]
    children: list[list[int]]  # tree children (reverse default edges, cycle edges excluded)
    level: list[int]  # d_t, or 0 for cycle vertices
    order: list[int] = field(default_factory=list)  # vertices by pi desc, id asc
    steps: int = 0
    queries: object = None  # DefaultQueries, attached by preprocess()

    @property
    def n(self) -> int:
        return self.graph.n

    def default_target(self, v: int) -> Optional[int]:
        e = self.default_edge[v]
        return None if e is None else self.graph.edges[e].dst

    def default_walk(self, v: int, length: int) -> list[int]:
        """Edge ids of the default walk (v, length), by following default edges."""
        if length > self.pi[v]:
            raise ValueError(f"default walk ({v}, {length}) exceeds pi={self.pi[v]}")
        out = []
        edges = self.graph.edges
        de = self.default_edge
        for _ in range(length):
            eid = de[v]
            out.append(eid)
            v = edges[eid].dst
        return out


# -- longest walks ----------------------------------------------------------

def _tarjan(g: Graph, meter: Meter) -> list[list[int]]:
    """Iterative Tarjan; SCCs come out sinks first (reverse topological order)."""
    n = g.n
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    sccs: list[list[int]] = []
    counter = 0
    out_adj, edges = g.out_adj, g.edges
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, i = work[-1]
            adj = out_adj[v]
            meter.steps += 1
            if i < len(adj):
                work[-1] = (v, i + 1)
                u = edges[adj[i]].dst
                if index[u] == -1:
                    index[u] = low[u] = counter
                    counter += 1
                    stack.append(u)
                    on_stack[u] = True
                    work.append((u, 0))
                elif on_stack[u] and index[u] < low[v]:
                    low[v] = index[u]
                continue
            work.pop()
            if work:
                p = work[-1][0]
                if low[v] < low[p]:
                    low[p] = low[v]
            if low[v] == index[v]:
                comp = []
                while True:
                    x = stack.pop()
                    on_stack[x] = False
                    comp.append(x)
                    meter.steps += 1
                    if x == v:
                        break
                sccs.append(comp)
    return sccs


def compute_pi(g: Graph, meter: Optional[Meter] = None) -> list[WalkLen]:
    meter = meter or Meter()
    n = g.n
    sccs = _tarjan(g, meter)
    edges = g.edges
    red = [False] * n
    queue: list[int] = []
    for comp in sccs:
        cyclic = len(comp) > 1 or any(edges[e].dst == comp[0] for e in g.out_adj[comp[0]])
        meter.steps += 1
        if cyclic:
            for v in comp:
                red[v] = True
                queue.append(v)
    head = 0
    while head < len(queue):
        p = queue[head]
        head += 1
        for eid in g.in_adj[p]:
            meter.steps += 1
            s = edges[eid].src
            if not red[s]:
                red[s] = True
                queue.append(s)

    pi: list[WalkLen] = [INFINITE] * n
    for comp in sccs:  # sinks first, so successors are final before v
        v = comp[0]
        if red[v]:
            continue
        best = -1
        for eid in g.out_adj[v]:
            meter.steps += 1
            pu = pi[edges[eid].dst]
            if pu > best:
                best = pu
        pi[v] = best + 1
    return pi


# -- branch lists -------------------------------------------------------------

def _counting_pass(items: list[int], key: list[int], buckets: int, meter: Meter) -> list[int]:
    slots: list[list[int]] = [[] for _ in range(buckets)]
    for it in items:
        slots[key[it]].append(it)
    meter.steps += len(items) + buckets
    return [it for slot in slots for it in slot]


def compute_branch_lists(g: Graph, pi: list[WalkLen],
                         meter: Optional[Meter] = None) -> list[list[Branch]]:
    """Sort every out-edge list by walk length (desc), then label, dst, edge id.

    One global LSD radix sort over all edges; the infinite bucket comes first.
    """
    meter = meter or Meter()
    n, edges = g.n, g.edges
    order = list(range(len(edges)))  # already sorted by edge id
    order = _counting_pass(order, [e.dst for e in edges], max(n, 1), meter)
    if g.labelled:
        order = _counting_pass(order, [e.label for e in edges], g.sigma + 1, meter)
    # walk_len = 1 + pi(dst) in [1, n] or INFINITE; bucket 0 holds INFINITE
    len_key = []
    for e in edges:
        pd = pi[e.dst]
        len_key.append(0 if pd == INFINITE else n + 1 - (pd + 1))
    order = _counting_pass(order, len_key, n + 2, meter)

    lists: list[list[Branch]] = [[] for _ in range(n)]
    for eid in order:
        e = edges[eid]
        lists[e.src].append(Branch(eid, pi[e.dst] + 1))
    meter.steps += len(order)
    return lists


def branch_sort_key(g: Graph, pi: list[WalkLen], eid: int) -> tuple:
    """Comparison-sort key equivalent to the radix order (used as an oracle)."""
    e = g.edges[eid]
    return (-(pi[e.dst] + 1), e.label or 0, e.dst, eid)


# -- default components --------------------------------------------------------

def decompose_components(g: Graph, pi: list[WalkLen], default_edge: list[Optional[int]],
                         meter: Optional[Meter] = None):
    """Split the default graph into cycles, trees hanging on cycles and independent trees.

    Returns ``(components, depths, cycles, children, level)``.
    """
    meter = meter or Meter()
    n, edges = g.n, g.edges
    parent = [None if default_edge[v] is None else edges[default_edge[v]].dst for v in range(n)]
    rev: list[list[int]] = [[] for _ in range(n)]
    for v in range(n):
        if parent[v] is not None:
            rev[parent[v]].append(v)
    meter.steps += n

    components: list[Optional[ComponentInfo]] = [None] * n
    depths = [Depths() for _ in range(n)]
    level = [0] * n
    children: list[list[int]] = [[] for _ in range(n)]
    cycles: list[CycleRecord] = []
    comp_id = 0

    def grow_tree(root: int, kind: Kind, cid: int, cyc: Optional[int], base_dc: Optional[int],
                  skip: set[int]) -> None:
        stack = [root]
        while stack:
            x = stack.pop()
            meter.steps += 1
            for c in rev[x]:
                if c in skip:
                    continue
                children[x].append(c)
                level[c] = level[x] + 1
                components[c] = ComponentInfo(kind, cid, cyc, root)
                depths[c].d_t = level[c]
                if base_dc is not None:
                    depths[c].d_c = level[c] + base_dc
                stack.append(c)

    for v in range(n):
        if pi[v] == 0:
            components[v] = ComponentInfo(Kind.INDEP_TREE, comp_id, None, v)
            depths[v].d_t = 0
            grow_tree(v, Kind.INDEP_TREE, comp_id, None, None, set())
            comp_id += 1

    stamp = [-1] * n
    for start in range(n):
        if components[start] is not None:
            continue
        # follow default edges until a vertex repeats; that closes a new cycle
        x = start
        while stamp[x] != start:
            stamp[x] = start
            x = parent[x]
            meter.steps += 1
        cyc_verts = [x]
        y = parent[x]
        while y != x:
            cyc_verts.append(y)
            y = parent[y]
            meter.steps += 1
        k = len(cyc_verts)
        rot = cyc_verts.index(min(cyc_verts))
        cyc_verts = cyc_verts[rot:] + cyc_verts[:rot]
        arr = cyc_verts + cyc_verts
        rec = CycleRecord(k, arr, {u: i for i, u in enumerate(cyc_verts)},
                          [2 * k - p for p in range(2 * k)])
        cid = len(cycles)
        cycles.append(rec)
        on_cycle = set(cyc_verts)
        for i, r in enumerate(cyc_verts):
            components[r] = ComponentInfo(Kind.CYCLE, comp_id, cid, None)
            depths[r].d_c = rec.depth[i]
        for r in cyc_verts:
            if any(c not in on_cycle for c in rev[r]):
                components[r].tree_root = r
                depths[r].d_t = 0
            grow_tree(r, Kind.CYCLE_TREE, comp_id, cid, depths[r].d_c, on_cycle)
        comp_id += 1

    return components, depths, cycles, children, level


def preprocess(g: Graph, meter: Optional[Meter] = None) -> Preprocessed:
    """Full preprocessing, including the constant-time query indexes."""
    from .queries import DefaultQueries

    meter = meter or Meter()
    pi = compute_pi(g, meter)
    lists = compute_branch_lists(g, pi, meter)
    default_edge = [lst[0].edge if lst else None for lst in lists]
    w = [lst[1].walk_len if len(lst) > 1 else NEG_INFINITE for lst in lists]
    comps, depths, cycles, children, level = decompose_components(g, pi, default_edge, meter)

    # Q order: pi descending (INFINITE first), ties by vertex id; bucket sort
    buckets: list[list[int]] = [[] for _ in range(g.n + 2)]
    for v in range(g.n):
        buckets[0 if pi[v] == INFINITE else g.n + 1 - pi[v]].append(v)
    order = [v for b in buckets for v in b]
    meter.steps += 2 * g.n + 2

    p = Preprocessed(g, pi, lists, w, default_edge, comps, depths, cycles, children, level, order)
    p.queries = DefaultQueries(p, meter)
    p.steps = meter.steps
    return p
