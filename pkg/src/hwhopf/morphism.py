"""Forgetful maps from diagrams to operator polynomials: each diagram is
sent to the monomial counting its outgoing (``ad``), incoming (``a``) and
inner (``e``) lines."""

from __future__ import annotations

from fractions import Fraction

from .diagram import FREE, Diagram
from .envelope import HWPolynomial, PBWPolynomial, project_pi
from .galgebra import DiagramSum, as_sum


def phi(x: DiagramSum | Diagram) -> PBWPolynomial:
    out: dict[tuple[int, int, int], Fraction] = {}
    for key, c in as_sum(x).items():
        inner = incoming = outgoing = 0
        for t, h in key.tokens:
            if t == FREE:
                incoming += 1
            elif h == FREE:
                outgoing += 1
            else:
                inner += 1
        mono = (outgoing, incoming, inner)
        out[mono] = out.get(mono, 0) + c
    return PBWPolynomial(out)


def phi_bar(x: DiagramSum | Diagram) -> HWPolynomial:
    """Like :func:`phi` but blind to inner lines."""
    return project_pi(phi(x))


def preimage(k: int, l: int, m: int) -> Diagram:
    """A diagram mapped by :func:`phi` to ``ad^k a^l e^m``.

    One hub vertex carries the ``k`` outgoing and ``l`` incoming lines; each
    inner line gets its own pair of vertices since loops are not allowed.
    """
    edges: list[tuple[int, int]] = []
    n = 0
    if k or l:
        edges += [(0, FREE)] * k + [(FREE, 0)] * l
        n = 1
    for _ in range(m):
        edges.append((n, n + 1))
        n += 2
    return Diagram(n, edges)
