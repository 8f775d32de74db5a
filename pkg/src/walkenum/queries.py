"""Constant-time queries over the default graph.

Level ancestors use jump pointers plus ladders (long-path decomposition), path
maxima in trees use doubling windows, cycles use a sparse table over the doubled
array. Construction is O(n log n); every query is O(1).

Scores: a branch weight ``w`` of INFINITE is scored as ``BIG`` so that the
maximiser of ``dist + w`` is well defined; ties go to the smaller distance.
"""
from __future__ import annotations

from typing import NamedTuple, Optional

from .preprocess import INFINITE, NEG_INFINITE, Kind, Meter, Preprocessed

BIG = 1 << 62


class PmnResult(NamedTuple):
    vertex: int
    dist: int


class PreconditionError(ValueError):
    pass


def score(w) -> int:
    if w == INFINITE:
        return BIG
    if w == NEG_INFINITE:
        return -BIG
    return int(w)


class LevelAncestor:
    """O(1) LA(v, j) on a forest given parent pointers and levels."""

    def __init__(self, parent: list[Optional[int]], level: list[int], children: list[list[int]],
                 meter: Meter):
        n = len(parent)
        self.level = level
        self.jump: list[list[int]] = []
        row = [(-1 if p is None else p) for p in parent]
        self.jump.append(row)
        k = 1
        while (1 << k) <= max(level, default=0):
            prev = self.jump[-1]
            self.jump.append([-1 if prev[v] < 0 else prev[prev[v]] for v in range(n)])
            meter.steps += n
            k += 1

        # heights, processed leaves-up by decreasing level
        by_level = sorted(range(n), key=level.__getitem__, reverse=True)
        height = [0] * n
        tall_child = [-1] * n
        for v in by_level:
            for c in children[v]:
                if height[c] + 1 > height[v] or tall_child[v] < 0:
                    height[v] = height[c] + 1
                    tall_child[v] = c
        meter.steps += 2 * n

        self.ladders: list[list[int]] = []
        self.ladder_of = [0] * n
        self.ladder_idx = [0] * n
        for v in range(n):
            p = parent[v]
            if p is not None and tall_child[p] == v:
                continue  # not the top of a long path
            path = [v]
            while tall_child[path[-1]] >= 0:
                path.append(tall_child[path[-1]])
            ext = []
            x = parent[v]
            while x is not None and len(ext) < len(path):
                ext.append(x)
                x = parent[x]
            ext.reverse()
            lid = len(self.ladders)
            self.ladders.append(ext + path)
            for i, u in enumerate(path):
                self.ladder_of[u] = lid
                self.ladder_idx[u] = len(ext) + i
            meter.steps += len(ext) + len(path)

    def __call__(self, v: int, j: int) -> int:
        delta = self.level[v] - j
        if delta < 0:
            raise PreconditionError(f"LA({v}, {j}): level {j} below vertex level {self.level[v]}")
        if delta == 0:
            return v
        k = delta.bit_length() - 1
        u = self.jump[k][v]
        rem = delta - (1 << k)
        return self.ladders[self.ladder_of[u]][self.ladder_idx[u] - rem]


class TreePathMax:
    """Max of f(v) = score(w_v) - d_t(v) over c consecutive vertices going up from s."""

    def __init__(self, la: LevelAncestor, keys: list[tuple[int, int]], meter: Meter):
        self.la = la
        self.keys = keys
        n = len(keys)
        jump = la.jump
        self.best: list[list[int]] = [list(range(n))]
        for k in range(1, len(jump)):
            prev = self.best[-1]
            half = jump[k - 1]
            row = [-1] * n
            for v in range(n):
                mid = half[v]
                if mid < 0 or prev[mid] < 0:
                    continue
                a, b = prev[v], prev[mid]
                row[v] = a if keys[a] >= keys[b] else b
            self.best.append(row)
            meter.steps += n

    def query(self, s: int, c: int) -> int:
        k = c.bit_length() - 1
        a = self.best[k][s]
        rest = c - (1 << k)
        if rest == 0:
            return a
        y = self.la(s, self.la.level[s] - rest)
        b = self.best[k][y]
        return a if self.keys[a] >= self.keys[b] else b


class SparseMax:
    """Index of the maximum key in a closed range; keys already encode tie-breaks."""

    def __init__(self, keys: list[tuple[int, int]], meter: Meter):
        self.keys = keys
        n = len(keys)
        self.table = [list(range(n))]
        k = 1
        while (1 << k) <= n:
            prev = self.table[-1]
            half = 1 << (k - 1)
            row = []
            for i in range(n - (1 << k) + 1):
                a, b = prev[i], prev[i + half]
                row.append(a if keys[a] >= keys[b] else b)
            self.table.append(row)
            meter.steps += n
            k += 1

    def query(self, lo: int, hi: int) -> int:
        k = (hi - lo + 1).bit_length() - 1
        a = self.table[k][lo]
        b = self.table[k][hi - (1 << k) + 1]
        return a if self.keys[a] >= self.keys[b] else b


class DefaultQueries:
    def __init__(self, p: Preprocessed, meter: Optional[Meter] = None):
        meter = meter or Meter()
        self.p = p
        n = p.n
        self.steps = 0  # incremented by queries, for the O(1) cost check
        self.W = [score(x) for x in p.w]
        parent: list[Optional[int]] = [None] * n
        for v in range(n):
            for c in p.children[v]:
                parent[c] = v
        self.tree_parent = parent
        self.la = LevelAncestor(parent, p.level, p.children, meter)
        lev = p.level
        self.tree_max = TreePathMax(self.la, [(self.W[v] - lev[v], lev[v]) for v in range(n)],
                                    meter)
        self.cycle_max = []
        for rec in p.cycles:
            keys = [(self.W[x] - rec.depth[i], -i) for i, x in enumerate(rec.arr)]
            self.cycle_max.append(SparseMax(keys, meter))
        self.root = [v if parent[v] is None else None for v in range(n)]
        for v in range(n):
            if parent[v] is not None:
                self.root[v] = p.components[v].tree_root
        self.cyc = [p.components[v].cycle for v in range(n)]
        self.on_cycle = [p.components[v].kind is Kind.CYCLE for v in range(n)]
        meter.steps += 4 * n

    # -- walk endpoints --------------------------------------------------------

    def walk_end(self, s: int, length: int) -> int:
        p = self.p
        if length < 0 or length > p.pi[s]:
            raise PreconditionError(f"default walk ({s}, {length}) exceeds pi={p.pi[s]}")
        self.steps += 1
        lev = p.level[s]
        if length <= lev:
            return self.la(s, lev - length)
        r = self.root[s]
        rec = p.cycles[self.cyc[r]]
        return rec.arr[(rec.first_occ[r] + length - lev) % rec.length]

    # -- PMN ---------------------------------------------------------------------

    def pmn(self, s: int, length: int) -> Optional[PmnResult]:
        """Vertex at distance d in [0, length) on the default walk (s, length) maximising d + w."""
        p = self.p
        if length < 1 or length > p.pi[s]:
            raise PreconditionError(f"pmn({s}, {length}) needs 1 <= length <= pi={p.pi[s]}")
        self.steps += 1
        W = self.W
        lev = p.level[s]
        best_v, best_d, best_val = -1, 0, None
        if lev > 0:
            c = length if length < lev else lev
            x = self.tree_max.query(s, c)
            best_v, best_d = x, lev - p.level[x]
            best_val = best_d + W[x]
        if length > lev:
            r = self.root[s]
            ci = self.cyc[r]
            rec = p.cycles[ci]
            k = rec.length
            rest = length - lev
            if rest < k:
                lo = rec.first_occ[r]
                pos = self.cycle_max[ci].query(lo, lo + rest - 1)
                d = lev + pos - lo
            else:
                end = rec.arr[(rec.first_occ[r] + rest) % k]
                lo = rec.first_occ[end]
                pos = self.cycle_max[ci].query(lo, lo + k - 1)
                d = lev + rest - k + pos - lo
            x = rec.arr[pos]
            val = d + W[x]
            if best_val is None or val > best_val:
                best_v, best_d, best_val = x, d, val
        if W[best_v] == -BIG:
            return None
        return PmnResult(best_v, best_d)

    def pmn_value(self, s: int, length: int):
        """``dist + w`` of the PMN answer (INFINITE-aware), or None."""
        r = self.pmn(s, length)
        return None if r is None else r.dist + self.p.w[r.vertex]
