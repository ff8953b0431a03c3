"""Matchings between free lines and the grafting of two diagrams along one."""

from __future__ import annotations

from itertools import combinations, permutations
from math import comb, factorial
from typing import NamedTuple, Optional, Sequence

from .diagram import FREE, Diagram
from .errors import InvalidMatching


class Matching(NamedTuple):
    """Pairs ``(incoming edge of upper, outgoing edge of lower)`` by edge index."""

    pairs: tuple[tuple[int, int], ...]

    def __len__(self) -> int:
        return len(self.pairs)

    @classmethod
    def of(cls, pairs: Sequence[Sequence[int]]) -> "Matching":
        return cls(tuple((int(u), int(l)) for u, l in pairs))


EMPTY_MATCHING = Matching(())


def matching_count(n_minus: int, n_plus: int, i: int) -> int:
    """Number of ways to join ``i`` of ``n_minus`` incoming lines to ``i`` of
    ``n_plus`` outgoing ones (zero when ``i`` exceeds either)."""
    if i < 0:
        return 0
    return comb(n_minus, i) * comb(n_plus, i) * factorial(i)


def enumerate_matchings(upper: Diagram, lower: Diagram, size: Optional[int] = None) -> list[Matching]:
    """All matchings between ``upper``'s incoming and ``lower``'s outgoing lines.

    Ordered by size, then lexicographically on the pair tuples.
    """
    ups = upper.incoming
    lows = lower.outgoing
    top = min(len(ups), len(lows))
    if size is None:
        sizes = range(top + 1)
    elif size < 0 or size > top:
        return []
    else:
        sizes = range(size, size + 1)
    out = []
    for i in sizes:
        level = [
            Matching(tuple(zip(chosen, image)))
            for chosen in combinations(ups, i)
            for image in permutations(lows, i)
        ]
        level.sort()
        out.extend(level)
    return out


def check_matching(upper: Diagram, m: Matching, lower: Diagram) -> None:
    ups = set(upper.incoming)
    lows = set(lower.outgoing)
    seen_u, seen_l = set(), set()
    for u, l in m.pairs:
        if u not in ups:
            raise InvalidMatching(f"edge {u} of the upper diagram is not an incoming line")
        if l not in lows:
            raise InvalidMatching(f"edge {l} of the lower diagram is not an outgoing line")
        if u in seen_u or l in seen_l:
            raise InvalidMatching(f"pair ({u}, {l}) reuses a line")
        seen_u.add(u)
        seen_l.add(l)


def compose(upper: Diagram, m: Matching, lower: Diagram, *, check: bool = True) -> Diagram:
    """Graft ``upper`` on top of ``lower``, fusing each matched pair into one inner line.

    The lower diagram keeps vertices ``0..n1-1``; upper's are shifted by ``n1``.
    Edge order: lower's edges (a matched one replaced by the fused line),
    then upper's unmatched edges.
    """
    if check:
        check_matching(upper, m, lower)
    off = lower.vertex_count
    head_for = {l: upper.edges[u][1] + off for u, l in m.pairs}
    consumed = {u for u, _ in m.pairs}
    edges = [
        (t, head_for[i]) if i in head_for else (t, h)
        for i, (t, h) in enumerate(lower.edges)
    ]
    for i, (t, h) in enumerate(upper.edges):
        if i not in consumed:
            edges.append((FREE if t == FREE else t + off, FREE if h == FREE else h + off))
    # New inner lines all run from lower to upper vertices, so no cycle can form.
    return Diagram._trusted(off + upper.vertex_count, tuple(edges))
