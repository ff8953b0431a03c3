"""Heisenberg-Weyl diagrams: finite acyclic directed multigraphs whose edges
may leave one end (but never both) unattached.

A :class:`Diagram` is a concrete representative; everything that matters
algebraically is its isomorphism class, captured by :func:`canonical_form`.
Edge ends are vertex indices, with :data:`FREE` (``-1``) marking a free end.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, NamedTuple, Sequence, Union

from .config import check_size
from .errors import BothEndsFree, CycleDetected, IndexOutOfRange, IsolatedVertex

FREE = -1

End = Union[int, str, None]
Edge = tuple[int, int]


class LinePartition(NamedTuple):
    """Edge indices split by line type."""

    inner: tuple[int, ...]
    incoming: tuple[int, ...]
    outgoing: tuple[int, ...]

    def sizes(self) -> tuple[int, int, int]:
        return len(self.inner), len(self.incoming), len(self.outgoing)


class CanonicalKey(NamedTuple):
    """Isomorphism-invariant encoding of a diagram.

    ``tokens`` is the sorted edge list of the canonically relabelled
    diagram, so a key also *is* a representative of its class.
    """

    vertex_count: int
    tokens: tuple[Edge, ...]

    def __str__(self) -> str:
        def end(x):
            return "F" if x == FREE else str(x)

        return f"{self.vertex_count}|" + ",".join(f"{end(t)}>{end(h)}" for t, h in self.tokens)


class Diagram:
    """An immutable, validated Heisenberg-Weyl diagram representative.

    >>> d = Diagram(1, [("in", 0), (0, "out")])
    >>> d.line_counts()
    (0, 1, 1)
    """

    __slots__ = ("vertex_count", "edges", "_partition", "_hash")

    vertex_count: int
    edges: tuple[Edge, ...]

    def __init__(self, vertex_count: int, edges: Iterable[Sequence[End]] = ()):
        n, normalized = _normalize(vertex_count, edges)
        _check(n, normalized)
        self._init(n, normalized)

    def _init(self, n: int, edges: tuple[Edge, ...]) -> None:
        object.__setattr__(self, "vertex_count", n)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "_partition", None)
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _trusted(cls, n: int, edges: tuple[Edge, ...]) -> "Diagram":
        # Internal constructor for results that are valid by construction.
        self = object.__new__(cls)
        self._init(n, edges)
        return self

    def __setattr__(self, name, value):
        raise AttributeError("Diagram is immutable")

    def __reduce__(self):
        return (Diagram._trusted, (self.vertex_count, self.edges))

    def __eq__(self, other):
        # Representative equality; use is_isomorphic for class equality.
        if not isinstance(other, Diagram):
            return NotImplemented
        return self.vertex_count == other.vertex_count and self.edges == other.edges

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.vertex_count, self.edges)))
        return self._hash

    def __len__(self) -> int:
        return len(self.edges)

    def __repr__(self) -> str:
        def end(x, free):
            return repr(free) if x == FREE else str(x)

        body = ", ".join(f"({end(t, 'in')}, {end(h, 'out')})" for t, h in self.edges)
        return f"Diagram({self.vertex_count}, [{body}])"

    @property
    def is_empty(self) -> bool:
        return self.vertex_count == 0

    def line_partition(self) -> LinePartition:
        if self._partition is None:
            inner, incoming, outgoing = [], [], []
            for i, (t, h) in enumerate(self.edges):
                if t == FREE:
                    incoming.append(i)
                elif h == FREE:
                    outgoing.append(i)
                else:
                    inner.append(i)
            object.__setattr__(
                self, "_partition", LinePartition(tuple(inner), tuple(incoming), tuple(outgoing))
            )
        return self._partition

    def line_counts(self) -> tuple[int, int, int]:
        """``(|inner|, |incoming|, |outgoing|)``."""
        return self.line_partition().sizes()

    @property
    def incoming(self) -> tuple[int, ...]:
        return self.line_partition().incoming

    @property
    def outgoing(self) -> tuple[int, ...]:
        return self.line_partition().outgoing

    @property
    def inner(self) -> tuple[int, ...]:
        return self.line_partition().inner

    def relabel(self, perm: Sequence[int]) -> "Diagram":
        """Rename vertex ``v`` to ``perm[v]``; the result is isomorphic."""
        if sorted(perm) != list(range(self.vertex_count)):
            raise ValueError("perm must be a permutation of the vertices")
        edges = tuple(
            (FREE if t == FREE else perm[t], FREE if h == FREE else perm[h]) for t, h in self.edges
        )
        return Diagram._trusted(self.vertex_count, edges)

    def reorder_edges(self, order: Sequence[int]) -> "Diagram":
        return Diagram._trusted(self.vertex_count, tuple(self.edges[i] for i in order))


EMPTY = Diagram._trusted(0, ())


def _end(x: End, free_word: str) -> int:
    if x is None or x == FREE or (isinstance(x, str) and x == free_word):
        return FREE
    if isinstance(x, bool) or not isinstance(x, int):
        raise TypeError(f"edge end must be a vertex index, {free_word!r} or None, not {x!r}")
    return x


def _normalize(vertex_count, edges) -> tuple[int, tuple[Edge, ...]]:
    if isinstance(vertex_count, bool) or not isinstance(vertex_count, int) or vertex_count < 0:
        raise ValueError(f"vertex_count must be a natural number, got {vertex_count!r}")
    out = []
    for edge in edges:
        t, h = edge
        out.append((_end(t, "in"), _end(h, "out")))
    return vertex_count, tuple(out)


def _check(n: int, edges: tuple[Edge, ...]) -> None:
    touched = [False] * n
    for i, (t, h) in enumerate(edges):
        for x in (t, h):
            if x != FREE and not 0 <= x < n:
                raise IndexOutOfRange(i, x, n)
        if t == FREE and h == FREE:
            raise BothEndsFree(i)
        if t != FREE:
            touched[t] = True
        if h != FREE:
            touched[h] = True
    cycle = find_cycle(n, edges)
    if cycle is not None:
        raise CycleDetected(cycle)
    for v, seen in enumerate(touched):
        if not seen:
            raise IsolatedVertex(v)


def find_cycle(n: int, edges: Sequence[Edge]) -> list[int] | None:
    """Return edge indices of some directed cycle among the inner edges, or None."""
    out_edges: list[list[int]] = [[] for _ in range(n)]
    for i, (t, h) in enumerate(edges):
        if t != FREE and h != FREE:
            out_edges[t].append(i)
    state = [0] * n  # 0 new, 1 on stack, 2 done
    via: list[int] = [-1] * n  # edge used to enter a vertex on the current path
    for root in range(n):
        if state[root]:
            continue
        state[root] = 1
        stack = [(root, iter(out_edges[root]))]
        while stack:
            v, it = stack[-1]
            for e in it:
                w = edges[e][1]
                if state[w] == 1:
                    cycle = [e]
                    x = v
                    while x != w:
                        cycle.append(via[x])
                        x = edges[via[x]][0]
                    return cycle[::-1]
                if state[w] == 0:
                    state[w] = 1
                    via[w] = e
                    stack.append((w, iter(out_edges[w])))
                    break
            else:
                state[v] = 2
                stack.pop()
    return None


def validate(vertex_count: int, edges: Iterable[Sequence[End]] = ()) -> Diagram:
    """Build a :class:`Diagram`, raising a :class:`DiagramError` subclass on bad input."""
    return Diagram(vertex_count, edges)


def line_partition(d: Diagram) -> LinePartition:
    return d.line_partition()


def disjoint_union(d1: Diagram, d2: Diagram) -> Diagram:
    """Side-by-side placement; ``d2``'s vertices are shifted past ``d1``'s."""
    off = d1.vertex_count
    shifted = tuple(
        (FREE if t == FREE else t + off, FREE if h == FREE else h + off) for t, h in d2.edges
    )
    return Diagram._trusted(off + d2.vertex_count, d1.edges + shifted)


# -- canonical forms ---------------------------------------------------------


def canonical_form(d: Diagram) -> CanonicalKey:
    check_size("vertex count", d.vertex_count, "max_vertices")
    return _canonical(d)


def canonical_diagram(d: Diagram) -> Diagram:
    """The canonically labelled representative of ``d``'s class."""
    return key_diagram(canonical_form(d))


def key_diagram(key: CanonicalKey) -> Diagram:
    return Diagram._trusted(key.vertex_count, key.tokens)


def is_isomorphic(d1: Diagram, d2: Diagram) -> bool:
    if (d1.vertex_count, len(d1), d1.line_counts()) != (d2.vertex_count, len(d2), d2.line_counts()):
        return False
    return canonical_form(d1) == canonical_form(d2)


@lru_cache(maxsize=1 << 17)
def _canonical(d: Diagram) -> CanonicalKey:
    n = d.vertex_count
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for t, h in d.edges:
        if t != FREE and h != FREE:
            parent[find(t)] = find(h)

    members: dict[int, list[int]] = {}
    for v in range(n):
        members.setdefault(find(v), []).append(v)
    comp_edges: dict[int, list[Edge]] = {r: [] for r in members}
    for t, h in d.edges:
        comp_edges[find(t if t != FREE else h)].append((t, h))

    parts = []
    for root, verts in members.items():
        local = {v: i for i, v in enumerate(verts)}
        edges = [(local.get(t, FREE), local.get(h, FREE)) for t, h in comp_edges[root]]
        parts.append((len(verts), _component_tokens(len(verts), edges)))
    parts.sort()

    tokens: list[Edge] = []
    off = 0
    for k, toks in parts:
        tokens.extend((t if t == FREE else t + off, h if h == FREE else h + off) for t, h in toks)
        off += k
    tokens.sort()
    return CanonicalKey(n, tuple(tokens))


def _component_tokens(k: int, edges: list[Edge]) -> tuple[Edge, ...]:
    """Minimal sorted token list over labellings reached by colour refinement
    plus individualization (a pruned search over vertex bijections)."""
    preds: list[list[int]] = [[] for _ in range(k)]
    succs: list[list[int]] = [[] for _ in range(k)]
    free_in = [0] * k
    free_out = [0] * k
    for t, h in edges:
        if t == FREE:
            free_in[h] += 1
        elif h == FREE:
            free_out[t] += 1
        else:
            succs[t].append(h)
            preds[h].append(t)

    def refine(colors: list[int]) -> tuple[list[int], int]:
        ncls = len(set(colors))
        while True:
            sigs = [
                (
                    colors[v],
                    tuple(sorted(colors[u] for u in preds[v])),
                    tuple(sorted(colors[w] for w in succs[v])),
                )
                for v in range(k)
            ]
            distinct = sorted(set(sigs))
            rank = {s: i for i, s in enumerate(distinct)}
            colors = [rank[s] for s in sigs]
            if len(distinct) == ncls:
                return colors, ncls
            ncls = len(distinct)

    def tokens_for(labels: list[int]) -> tuple[Edge, ...]:
        return tuple(
            sorted((FREE if t == FREE else labels[t], FREE if h == FREE else labels[h]) for t, h in edges)
        )

    best: tuple[Edge, ...] | None = None
    initial = [(free_in[v], free_out[v]) for v in range(k)]
    distinct = sorted(set(initial))
    rank = {s: i for i, s in enumerate(distinct)}
    stack = [[rank[s] for s in initial]]
    while stack:
        colors, ncls = refine(stack.pop())
        if ncls == k:
            cand = tokens_for(colors)
            if best is None or cand < best:
                best = cand
            continue
        counts: dict[int, int] = {}
        for c in colors:
            counts[c] = counts.get(c, 0) + 1
        target = min(c for c, m in counts.items() if m > 1)
        for v in range(k):
            if colors[v] == target:
                split = [2 * c + 1 for c in colors]
                split[v] -= 1
                stack.append(split)
    assert best is not None
    return best
