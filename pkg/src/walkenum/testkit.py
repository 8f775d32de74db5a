"""Reference oracles and seeded corpus generators.

Nothing here uses the constant-time query structures: PMN is a linear scan of
the default walk and the reference enumerator is a direct recursive
transcription of the enumeration procedure.
"""
from __future__ import annotations

import itertools
import random
from typing import Optional

from .enumerator import DeltaRecord
from .graph import Graph
from .preprocess import INFINITE, NEG_INFINITE, Kind, Preprocessed
from .queries import BIG, PmnResult, score

# -- fixtures ------------------------------------------------------------------


def g1() -> Graph:
    """Chain 0->1->2->3 with the shortcut 0->2."""
    return Graph.from_pairs(4, [(0, 1), (1, 2), (2, 3), (0, 2)])


def three_cycle() -> Graph:
    return Graph.from_pairs(3, [(0, 1), (1, 2), (2, 0)])


def cycle_with_tree() -> Graph:
    return Graph.from_pairs(3, [(0, 1), (1, 0), (2, 0)])


def cycle_tree_branch() -> Graph:
    return Graph.from_pairs(3, [(0, 1), (1, 0), (2, 0), (1, 2)])


def cycle_with_branches() -> Graph:
    """3-cycle whose vertices carry short dead-end branches."""
    return Graph.from_pairs(7, [(0, 1), (1, 2), (2, 0),
                                (0, 3), (1, 4), (4, 5), (2, 6), (1, 3)])


def fixtures() -> dict[str, Graph]:
    return {"g1": g1(), "three_cycle": three_cycle(), "cycle_with_tree": cycle_with_tree(),
            "cycle_tree_branch": cycle_tree_branch(), "cycle_with_branches": cycle_with_branches(),
            "single": Graph.from_pairs(1, []), "self_loop": Graph.from_pairs(1, [(0, 0)]),
            "two_loops": Graph.from_pairs(2, [(0, 0), (0, 1), (1, 1), (1, 0)]),
            "parallel": Graph.from_pairs(2, [(0, 1), (0, 1), (1, 0)])}


# -- generators --------------------------------------------------------------------


def random_graph(seed: int, n_max: int = 8, e_max: int = 16, max_out: Optional[int] = 3) -> Graph:
    """Random multigraph; edge density sweeps with the seed."""
    rng = random.Random(seed)
    n = rng.randint(1, n_max)
    density = (seed % 5 + 1) / 5
    e = min(e_max, max(0, round(density * 2 * n)))
    pairs = []
    out = [0] * n
    for _ in range(e):
        src = rng.randrange(n)
        if max_out is not None and out[src] >= max_out:
            continue
        out[src] += 1
        pairs.append((src, rng.randrange(n)))
    return Graph.from_pairs(n, pairs)


def random_labelled_graph(seed: int, n_max: int = 6, sigma_max: int = 3) -> Graph:
    """Random deterministic labelled graph (a PCA transition graph)."""
    rng = random.Random(seed)
    n = rng.randint(1, n_max)
    sigma = rng.randint(1, sigma_max)
    keep = rng.choice([0.4, 0.6, 0.8])
    pairs = [(q, rng.randrange(n), a) for q in range(n) for a in range(1, sigma + 1)
             if rng.random() < keep]
    return Graph.from_pairs(n, pairs, sigma)


def random_forbidden_set(seed: int, sigma_max: int = 3, len_max: int = 4,
                         size_max: int = 3) -> tuple[list[tuple[int, ...]], int]:
    rng = random.Random(seed)
    sigma = rng.randint(1, sigma_max)
    k = rng.randint(1, size_max)
    pats = []
    for _ in range(k):
        length = rng.randint(1 if sigma > 1 else 2, len_max)
        pats.append(tuple(rng.randint(1, sigma) for _ in range(length)))
    return pats, sigma


def big_random_graph(seed: int, e: int) -> Graph:
    rng = random.Random(seed)
    n = max(2, e // 4)
    return Graph.from_pairs(n, [(rng.randrange(n), rng.randrange(n)) for _ in range(e)])


# -- walk oracles ----------------------------------------------------------------------


def brute_walks(g: Graph, v0: int, m: int) -> list[tuple[int, ...]]:
    """All walks of length m from v0 as edge-id tuples, by DFS."""
    out: list[tuple[int, ...]] = []
    path: list[int] = []

    def dfs(v: int) -> None:
        if len(path) == m:
            out.append(tuple(path))
            return
        for eid in g.out_adj[v]:
            path.append(eid)
            dfs(g.edges[eid].dst)
            path.pop()

    dfs(v0)
    return out


def brute_pi(g: Graph) -> list:
    """Longest walk length by bounded search: more than n steps means INFINITE."""
    n = g.n
    res = []
    for v in range(n):
        frontier = {v}
        length = 0
        while frontier and length <= n:
            frontier = {g.edges[e].dst for x in frontier for e in g.out_adj[x]}
            if frontier:
                length += 1
        res.append(INFINITE if length > n else length)
    return res


def brute_branch_weight(g: Graph, pi: list, v: int, default_edge: Optional[int]):
    best = NEG_INFINITE
    for eid in g.out_adj[v]:
        if eid != default_edge:
            best = max(best, pi[g.edges[eid].dst] + 1)
    return best


def brute_components(p: Preprocessed) -> list[tuple]:
    """Per vertex ``(kind, anchor, tree_root, d_t, d_c)`` by following default edges.

    ``anchor`` names the component: the lowest cycle vertex, or the root of an
    independent tree.
    """
    n = p.n
    nxt = [p.default_target(v) for v in range(n)]

    def cycle_of(v):
        seen = []
        x = v
        for _ in range(n + 1):
            if x is None:
                return None
            seen.append(x)
            x = nxt[x]
        x = seen[-1]  # n + 1 steps in: certainly on the cycle
        cyc = [x]
        y = nxt[x]
        while y != x:
            cyc.append(y)
            y = nxt[y]
        return cyc

    out = []
    for v in range(n):
        cyc = cycle_of(v)
        if cyc is None:
            x, d = v, 0
            while nxt[x] is not None:
                x, d = nxt[x], d + 1
            out.append((Kind.INDEP_TREE, x, x, d, None))
            continue
        start = min(cyc)
        rot = cyc[cyc.index(start):] + cyc[:cyc.index(start)]
        k = len(rot)
        dc = {u: 2 * k - i for i, u in enumerate(rot)}
        if v in dc:
            has_tree = any(nxt[u] == v and u not in dc for u in range(n))
            out.append((Kind.CYCLE, start, v if has_tree else None, 0 if has_tree else None,
                        dc[v]))
            continue
        x, d = v, 0
        while x not in dc:
            x, d = nxt[x], d + 1
        out.append((Kind.CYCLE_TREE, start, x, d, d + dc[x]))
    return out


def default_walk_vertices(p: Preprocessed, s: int, length: int) -> list[int]:
    out = [s]
    for _ in range(length):
        s = p.graph.edges[p.default_edge[s]].dst
        out.append(s)
    return out


def brute_pmn(p: Preprocessed, s: int, length: int):
    """(max of d + w over d in [0, length), set of (vertex, d) attaining it), or None."""
    verts = default_walk_vertices(p, s, length)
    vals = [d + p.w[verts[d]] for d in range(length)]
    best = max(vals)
    if best == NEG_INFINITE:
        return None
    return best, {(verts[d], d) for d in range(length) if vals[d] == best}


def scan_pmn(p: Preprocessed, s: int, length: int) -> Optional[PmnResult]:
    """Linear-scan PMN with the canonical tie rule (INFINITE scored as a huge constant)."""
    verts = default_walk_vertices(p, s, length)
    best_d = max(range(length), key=lambda d: (d + score(p.w[verts[d]]), -d))
    if score(p.w[verts[best_d]]) == -BIG:
        return None
    return PmnResult(verts[best_d], best_d)


# -- reference enumeration ---------------------------------------------------------------


def reference_enumerate(p: Preprocessed, v0: int, m: int) -> list[DeltaRecord]:
    """Naive recursive transcription of the enumeration procedure."""
    g = p.graph
    if p.pi[v0] < m:
        return []
    out: list[DeltaRecord] = []
    S: list[DeltaRecord] = []
    C: list[int] = []

    def step(s: int, k: int) -> int:
        return default_walk_vertices(p, s, k)[-1]

    def enumerate_(edge, u: int, ell: int) -> None:
        rec = DeltaRecord(m - ell - (edge is not None), edge, u, ell, len(S))
        S.append(rec)
        C.append(len(S) - 1)
        out.append(rec)
        if ell == 0:
            C.pop()
            return
        r = scan_pmn(p, u, ell)
        if r is None or r.dist + p.w[r.vertex] < ell:
            C.pop()
            return
        vp, d = r
        last = (g.edges[p.branch_lists[vp][1].edge], ell - d - 1)
        work = [(u, ell, 0, True)]
        while work:
            s, j, h, first = work.pop(0)
            vp, f = scan_pmn(p, s, j)
            if f > 0:
                rr = scan_pmn(p, s, f)
                if rr is not None and h + rr.dist + p.w[rr.vertex] >= ell:
                    work.append((s, f, h, False))
            if j - f - 1 > 0:
                nxt = step(s, f + 1)
                rr = scan_pmn(p, nxt, j - f - 1)
                if rr is not None and h + f + 1 + rr.dist + p.w[rr.vertex] >= ell:
                    work.append((nxt, j - f - 1, h + f + 1, False))
            for br in p.branch_lists[vp][2 if first else 1:]:
                if h + f + br.walk_len < ell:
                    break
                e = g.edges[br.edge]
                enumerate_(e, e.dst, ell - h - f - 1)
                del S[C[-1] + 1:]
        C.pop()
        enumerate_(last[0], last[0].dst, last[1])

    enumerate_(None, v0, m)
    return out


def reference_all(p: Preprocessed, m: int) -> list[DeltaRecord]:
    out = []
    for v in p.order:
        if p.pi[v] < m:
            break
        out.extend(reference_enumerate(p, v, m))
    return out


# -- string oracles ---------------------------------------------------------------------------


def contains_factor(s: tuple[int, ...], pats) -> bool:
    for f in pats:
        k = len(f)
        for i in range(len(s) - k + 1):
            if s[i:i + k] == tuple(f):
                return True
    return False


def brute_avoiding(pats, sigma: int, m: int) -> list[tuple[int, ...]]:
    return [s for s in itertools.product(range(1, sigma + 1), repeat=m)
            if not contains_factor(s, pats)]


def brute_strings(delta: dict[tuple[int, int], int], initial: int, sigma: int,
                  m: int) -> list[tuple[int, ...]]:
    """Strings of length m accepted by a partial DFA with all states accepting."""
    out = []

    def dfs(q: int, acc: list[int]) -> None:
        if len(acc) == m:
            out.append(tuple(acc))
            return
        for a in range(1, sigma + 1):
            t = delta.get((q, a))
            if t is not None:
                acc.append(a)
                dfs(t, acc)
                acc.pop()

    dfs(initial, [])
    return out


# -- instrumentation helpers -----------------------------------------------------------------


class _Stop(Exception):
    pass


def branching_cycles() -> Graph:
    """Strongly connected, every vertex branching: walk counts grow exponentially in m."""
    return Graph.from_pairs(4, [(0, 1), (1, 2), (2, 0), (0, 0), (1, 3), (3, 1), (2, 2), (3, 0)])


def delay_probe(p: Preprocessed, m: int, limit: Optional[int] = None) -> tuple[int, int]:
    """(records emitted, max instrumented delay) of enumerate_all, stopping after ``limit``."""
    from .enumerator import Enumerator

    en = Enumerator(p, instrument=True)
    count = 0

    def sink(rec: DeltaRecord) -> None:
        nonlocal count
        count += 1
        if limit is not None and count >= limit:
            raise _Stop

    try:
        en.run_all(m, sink)
    except _Stop:
        pass
    else:
        en.finish()
    return count, en.max_delay
