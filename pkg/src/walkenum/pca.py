"""Prefix-closed automata: incomplete DFAs whose states are all accepting.

Letters are integers in [1, sigma]. An optional display alphabet maps letter
``a`` to ``alphabet[a - 1]`` for text I/O.
"""
from __future__ import annotations

import threading
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, TextIO

from .enumerator import DeltaRecord, Enumerator, Sink, decode_stream
from .graph import Graph
from .preprocess import Preprocessed, preprocess

DEFAULT_ALPHABET = "0123456789abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"


class PcaError(ValueError):
    pass


@dataclass
class Pca:
    n: int
    sigma: int
    initial: int
    delta: dict[tuple[int, int], int]
    # succinct single-factor form: unstored transitions go to state 0, except `blocked`
    implicit_to_initial: bool = False
    blocked: Optional[tuple[int, int]] = None
    alphabet: Optional[str] = None
    _graph: Optional[Graph] = field(default=None, repr=False, compare=False)
    _edge_of: Optional[dict] = field(default=None, repr=False, compare=False)
    _pre: Optional[Preprocessed] = field(default=None, repr=False, compare=False)
    _counts: object = field(default=None, repr=False, compare=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False, compare=False)

    def step(self, q: int, a: int) -> Optional[int]:
        if (q, a) == self.blocked:
            return None
        t = self.delta.get((q, a))
        if t is None and self.implicit_to_initial and 1 <= a <= self.sigma:
            return 0
        return t

    def run(self, word: Sequence[int]) -> Optional[int]:
        q = self.initial
        for a in word:
            q = self.step(q, a)
            if q is None:
                return None
        return q

    def accepts(self, word: Sequence[int]) -> bool:
        return self.run(word) is not None

    def transitions(self) -> list[tuple[int, int, int]]:
        """All defined transitions ``(q, a, q')`` in (q, a) order."""
        out = []
        for q in range(self.n):
            for a in range(1, self.sigma + 1):
                t = self.step(q, a)
                if t is not None:
                    out.append((q, a, t))
        return out

    @property
    def graph(self) -> Graph:
        if self._graph is None:
            trans = self.transitions()
            self._graph = Graph.from_pairs(self.n, trans and [(q, t, a) for q, a, t in trans],
                                           self.sigma)
            self._edge_of = {(q, a): i for i, (q, a, _) in enumerate(trans)}
        return self._graph

    @property
    def pre(self) -> Preprocessed:
        if self._pre is None:
            self._pre = preprocess(self.graph)
        return self._pre

    def word_to_walk(self, word: Sequence[int]) -> list[int]:
        self.graph
        q = self.initial
        walk = []
        for a in word:
            eid = self._edge_of.get((q, a))
            if eid is None:
                raise PcaError(f"word {self.format(word)!r} is not in the language")
            walk.append(eid)
            q = self._graph.edges[eid].dst
        return walk

    def walk_to_word(self, walk: Iterable[int]) -> tuple[int, ...]:
        edges = self.graph.edges
        return tuple(edges[e].label for e in walk)

    # -- text alphabet ---------------------------------------------------------

    @property
    def chars(self) -> str:
        return self.alphabet or DEFAULT_ALPHABET[: self.sigma]

    def format(self, word: Sequence[int]) -> str:
        chars = self.chars
        if len(chars) < self.sigma:
            return " ".join(str(a) for a in word)
        return "".join(chars[a - 1] for a in word)

    def parse_word(self, text: str) -> tuple[int, ...]:
        chars = self.chars
        try:
            return tuple(chars.index(c) + 1 for c in text)
        except ValueError:
            raise PcaError(f"word {text!r} uses letters outside the alphabet {chars!r}") from None


def map_patterns(patterns: Iterable[str], sigma: int, alphabet: Optional[str] = None):
    chars = alphabet or DEFAULT_ALPHABET[:sigma]
    if len(chars) != sigma or len(set(chars)) != sigma:
        raise PcaError(f"alphabet {chars!r} must list exactly {sigma} distinct characters")
    out = []
    for pat in patterns:
        if not pat:
            raise PcaError("empty forbidden pattern")
        try:
            out.append(tuple(chars.index(c) + 1 for c in pat))
        except ValueError:
            raise PcaError(f"pattern {pat!r} uses letters outside {chars!r}") from None
    return out


def _check_patterns(patterns, sigma: int) -> None:
    if sigma < 1:
        raise PcaError("sigma must be >= 1")
    for f in patterns:
        if len(f) == 0:
            raise PcaError("empty forbidden pattern")
        for a in f:
            if not 1 <= a <= sigma:
                raise PcaError(f"letter {a} outside [1, {sigma}]")


def pca_from_forbidden_set(patterns: Iterable[Sequence[int]], sigma: int,
                           alphabet: Optional[str] = None) -> Pca:
    """Aho-Corasick automaton with match states (and what they strand) removed."""
    patterns = [tuple(f) for f in patterns]
    _check_patterns(patterns, sigma)
    goto: list[dict[int, int]] = [{}]
    match = [False]
    for f in patterns:
        node = 0
        for a in f:
            nxt = goto[node].get(a)
            if nxt is None:
                nxt = len(goto)
                goto[node][a] = nxt
                goto.append({})
                match.append(False)
            node = nxt
        match[node] = True

    size = len(goto)
    fail = [0] * size
    delta = [[0] * (sigma + 1) for _ in range(size)]
    queue = deque()
    for a in range(1, sigma + 1):
        t = goto[0].get(a)
        if t is not None:
            delta[0][a] = t
            queue.append(t)
    while queue:
        x = queue.popleft()
        match[x] = match[x] or match[fail[x]]
        for a in range(1, sigma + 1):
            t = goto[x].get(a)
            if t is not None:
                fail[t] = delta[fail[x]][a]
                delta[x][a] = t
                queue.append(t)
            else:
                delta[x][a] = delta[fail[x]][a]

    # keep non-match states reachable from the root through non-match states
    keep = [False] * size
    keep[0] = True
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for a in range(1, sigma + 1):
            t = delta[x][a]
            if not match[t] and not keep[t]:
                keep[t] = True
                queue.append(t)
    new_id = {}
    for x in range(size):
        if keep[x]:
            new_id[x] = len(new_id)
    trans = {}
    for x in new_id:
        for a in range(1, sigma + 1):
            t = delta[x][a]
            if t in new_id:
                trans[(new_id[x], a)] = new_id[t]
    return Pca(len(new_id), sigma, 0, trans, alphabet=alphabet)


def pca_from_single_factor(f: Sequence[int], sigma: int, alphabet: Optional[str] = None) -> Pca:
    """KMP-based automaton avoiding one factor; stores only transitions not into state 0."""
    f = tuple(f)
    _check_patterns([f], sigma)
    k = len(f)
    fail = [0] * (k + 1)
    x = 0
    for i in range(1, k):
        while x and f[i] != f[x]:
            x = fail[x]
        if f[i] == f[x]:
            x += 1
        fail[i + 1] = x
    explicit: list[dict[int, int]] = [{} for _ in range(k)]
    with_forward: list[dict[int, int]] = [{} for _ in range(k)]
    for i in range(k):
        if i > 0:
            explicit[i] = dict(with_forward[fail[i]])
            explicit[i].pop(f[i], None)
        if i + 1 < k:
            with_forward[i] = dict(explicit[i])
            with_forward[i][f[i]] = i + 1
    delta = {}
    for i in range(k):
        for a, t in with_forward[i].items() if i + 1 < k else explicit[i].items():
            delta[(i, a)] = t
    return Pca(k, sigma, 0, delta, implicit_to_initial=True, blocked=(k - 1, f[k - 1]),
               alphabet=alphabet)


# -- file format --------------------------------------------------------------------

def parse_pca(text: str | TextIO) -> Pca:
    if not isinstance(text, str):
        text = text.read()
    header = None
    alphabet = None
    delta: dict[tuple[int, int], int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("alphabet:"):
                alphabet = body[len("alphabet:"):].strip()
            continue
        try:
            nums = [int(t) for t in line.split()]
        except ValueError:
            raise PcaError(f"line {lineno}: non-integer token") from None
        if len(nums) != 3:
            raise PcaError(f"line {lineno}: expected 3 fields")
        if header is None:
            header = nums
            n, sigma, initial = nums
            if n < 1 or sigma < 1 or not 0 <= initial < n:
                raise PcaError(f"line {lineno}: bad header")
            continue
        q, a, t = nums
        if not (0 <= q < n and 0 <= t < n and 1 <= a <= sigma):
            raise PcaError(f"line {lineno}: transition out of range")
        if (q, a) in delta:
            raise PcaError(f"line {lineno}: nondeterministic transition ({q}, {a})")
        delta[(q, a)] = t
    if header is None:
        raise PcaError("missing header")
    if alphabet is not None and len(alphabet) != header[1]:
        alphabet = None
    return Pca(header[0], header[1], header[2], delta, alphabet=alphabet)


def serialize_pca(a: Pca) -> str:
    lines = [f"# alphabet: {a.chars}"] if len(a.chars) == a.sigma else []
    lines.append(f"{a.n} {a.sigma} {a.initial}")
    lines += [f"{q} {x} {t}" for q, x, t in a.transitions()]
    return "\n".join(lines) + "\n"


# -- enumeration ------------------------------------------------------------------------

def enumerate_strings(a: Pca, m: int, sink: Sink) -> int:
    return Enumerator(a.pre).run(a.initial, m, sink)


def decode_strings(a: Pca, records: Iterable[DeltaRecord]):
    for walk in decode_stream(a.pre, records):
        yield a.walk_to_word(walk)
