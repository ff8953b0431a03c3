"""Exhaustive enumeration of diagram classes by number of lines."""

from __future__ import annotations

from functools import lru_cache

from .diagram import EMPTY, FREE, CanonicalKey, Diagram, canonical_form, find_cycle, key_diagram


def _extensions(d: Diagram):
    n = d.vertex_count
    for h in range(n + 1):
        yield (FREE, h)
    for t in range(n + 1):
        yield (t, FREE)
    for t in range(n + 1):
        for h in range(n + 2):
            if t == h:
                continue
            fresh = [v for v in range(n, max(t, h) + 1)]
            if any(v not in (t, h) for v in fresh):
                continue
            yield (t, h)


@lru_cache(maxsize=None)
def _levels(max_edges: int) -> tuple[tuple[CanonicalKey, ...], ...]:
    if max_edges == 0:
        return ((canonical_form(EMPTY),),)
    previous = _levels(max_edges - 1)
    found: set[CanonicalKey] = set()
    for key in previous[-1]:
        d = key_diagram(key)
        for t, h in _extensions(d):
            n = max(d.vertex_count, t + 1, h + 1)
            edges = d.edges + ((t, h),)
            if t != FREE and h != FREE and t < d.vertex_count and h < d.vertex_count:
                if find_cycle(n, edges) is not None:
                    continue
            found.add(canonical_form(Diagram._trusted(n, edges)))
    return previous + (tuple(sorted(found)),)


def corpus(max_edges: int, min_edges: int = 0) -> list[Diagram]:
    """Canonical representatives of every diagram class with
    ``min_edges <= lines <= max_edges``, ordered by size then key."""
    if max_edges < 0:
        return []
    levels = _levels(max_edges)
    return [key_diagram(k) for level in levels[min_edges:] for k in level]


def corpus_level(edges: int) -> list[Diagram]:
    return corpus(edges, edges)
