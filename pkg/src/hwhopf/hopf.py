"""Decomposition of diagrams into pairs of sub-diagrams and the resulting
coproduct, counit and antipode on :class:`DiagramSum`."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Callable, Iterator, Mapping, Sequence

from .config import check_size
from .diagram import FREE, CanonicalKey, Diagram, canonical_form, key_diagram
from .galgebra import DiagramSum, Scalar, as_fraction, as_sum, product, unit

LinearMap = Callable[[DiagramSum], DiagramSum]

_EMPTY_KEY = CanonicalKey(0, ())


def restrict(d: Diagram, lines: Sequence[int]) -> Diagram:
    """Sub-diagram on the chosen edges; keeps exactly the vertices they touch.

    Ends keep their kind, so each line keeps its type.
    """
    chosen = sorted(lines)
    used = sorted({x for i in chosen for x in d.edges[i] if x != FREE})
    relabel = {v: j for j, v in enumerate(used)}
    edges = tuple(
        (FREE if t == FREE else relabel[t], FREE if h == FREE else relabel[h])
        for t, h in (d.edges[i] for i in chosen)
    )
    return Diagram._trusted(len(used), edges)


def split_masks(edge_count: int) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All ordered pairs ``(L, R)`` with ``L + R`` the edge set, ``L`` as a binary counter."""
    for mask in range(1 << edge_count):
        left = tuple(i for i in range(edge_count) if mask >> i & 1)
        right = tuple(i for i in range(edge_count) if not mask >> i & 1)
        yield left, right


def decompositions(d: Diagram) -> list[tuple[Diagram, Diagram]]:
    """One pair ``(d|L, d|R)`` per subset ``L`` of the edges: ``2**len(d)`` pairs."""
    check_size("decomposed edge count", len(d), "decomposition_edge_limit")
    return [(restrict(d, left), restrict(d, right)) for left, right in split_masks(len(d))]


class TensorSum:
    """Finite linear combination of ordered pairs of diagram classes."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[tuple[CanonicalKey, CanonicalKey], Scalar] | None = None):
        self._terms: dict[tuple[CanonicalKey, CanonicalKey], Fraction] = {}
        for pair, c in (terms or {}).items():
            c = as_fraction(c)
            if c:
                self._terms[pair] = c

    @classmethod
    def _raw(cls, terms) -> "TensorSum":
        self = object.__new__(cls)
        self._terms = {k: c for k, c in terms.items() if c}
        return self

    @classmethod
    def of(cls, left: Diagram, right: Diagram, coeff: Scalar = 1) -> "TensorSum":
        return cls._raw({(canonical_form(left), canonical_form(right)): as_fraction(coeff)})

    @classmethod
    def tensor(cls, x: DiagramSum | Diagram, y: DiagramSum | Diagram) -> "TensorSum":
        x, y = as_sum(x), as_sum(y)
        return cls._raw({(kx, ky): cx * cy for kx, cx in x.items() for ky, cy in y.items()})

    def items(self):
        return sorted(self._terms.items())

    def terms(self) -> Iterator[tuple[Fraction, Diagram, Diagram]]:
        for (kl, kr), c in self.items():
            yield c, key_diagram(kl), key_diagram(kr)

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if not isinstance(other, TensorSum):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: "TensorSum") -> "TensorSum":
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return TensorSum._raw(out)

    def __neg__(self):
        return TensorSum._raw({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: Scalar) -> "TensorSum":
        c = as_fraction(c)
        return TensorSum._raw({k: c * v for k, v in self._terms.items()})

    def __mul__(self, other):
        """Componentwise product ``(a (x) b)(c (x) d) = ac (x) bd``."""
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        if not isinstance(other, TensorSum):
            return NotImplemented
        out: dict = {}
        for (a, b), c1 in self._terms.items():
            for (c, d), c2 in other._terms.items():
                left = product(DiagramSum._raw({a: Fraction(1)}), DiagramSum._raw({c: Fraction(1)}))
                right = product(DiagramSum._raw({b: Fraction(1)}), DiagramSum._raw({d: Fraction(1)}))
                coeff = c1 * c2
                for kl, cl in left.items():
                    for kr, cr in right.items():
                        out[(kl, kr)] = out.get((kl, kr), 0) + coeff * cl * cr
        return TensorSum._raw(out)

    def swap(self) -> "TensorSum":
        return TensorSum._raw({(r, l): c for (l, r), c in self._terms.items()})

    def map(self, f: LinearMap, g: LinearMap) -> "TensorSum":
        """``(f (x) g)`` applied termwise."""
        out: dict = {}
        for (kl, kr), c in self._terms.items():
            fl = f(DiagramSum._raw({kl: Fraction(1)}))
            gr = g(DiagramSum._raw({kr: Fraction(1)}))
            for a, ca in fl.items():
                for b, cb in gr.items():
                    out[(a, b)] = out.get((a, b), 0) + c * ca * cb
        return TensorSum._raw(out)

    def multiply(self) -> DiagramSum:
        """The multiplication map applied to each pair."""
        out: dict[CanonicalKey, Fraction] = {}
        for (kl, kr), c in self._terms.items():
            for k, m in product(DiagramSum._raw({kl: c}), DiagramSum._raw({kr: Fraction(1)})).items():
                out[k] = out.get(k, 0) + m
        return DiagramSum._raw(out)

    def counit_left(self) -> DiagramSum:
        return DiagramSum._raw({r: c for (l, r), c in self._terms.items() if l == _EMPTY_KEY})

    def counit_right(self) -> DiagramSum:
        return DiagramSum._raw({l: c for (l, r), c in self._terms.items() if r == _EMPTY_KEY})

    def __repr__(self) -> str:
        if not self._terms:
            return "TensorSum(0)"
        body = " + ".join(
            f"{c}*{key_diagram(l)!r}(x){key_diagram(r)!r}" for (l, r), c in self.items()
        )
        return f"TensorSum({body})"


@lru_cache(maxsize=1 << 15)
def _coproduct_key(key: CanonicalKey) -> dict[tuple[CanonicalKey, CanonicalKey], int]:
    d = key_diagram(key)
    out: dict = {}
    for left, right in decompositions(d):
        pair = (canonical_form(left), canonical_form(right))
        out[pair] = out.get(pair, 0) + 1
    return out


def coproduct(x: DiagramSum | Diagram) -> TensorSum:
    """``Delta(G) = sum over L + R = E_G of G|L (x) G|R``, extended linearly."""
    x = as_sum(x)
    out: dict = {}
    for key, c in x.items():
        check_size("decomposed edge count", len(key.tokens), "decomposition_edge_limit")
        for pair, mult in _coproduct_key(key).items():
            out[pair] = out.get(pair, 0) + c * mult
    return TensorSum._raw(out)


def counit(x: DiagramSum | Diagram) -> Fraction:
    """Coefficient of the empty diagram."""
    return as_sum(x).coefficient(_EMPTY_KEY)


def unit_projection(x: DiagramSum | Diagram) -> DiagramSum:
    return unit().scale(counit(x))


def ordered_partitions(size: int, n: int) -> list[tuple[tuple[int, ...], ...]]:
    """Sequences of ``n`` nonempty disjoint blocks covering ``range(size)``.

    There are ``n! * S(size, n)`` of them (Stirling numbers of the second kind).
    """
    if n < 1:
        raise ValueError("need at least one block")

    def blocks(remaining: tuple[int, ...], n: int):
        if n == 1:
            if remaining:
                yield (remaining,)
            return
        for r in range(1, len(remaining) - n + 2):
            for first in combinations(remaining, r):
                rest = tuple(i for i in remaining if i not in first)
                for tail in blocks(rest, n - 1):
                    yield (first,) + tail

    return list(blocks(tuple(range(size)), n))


def antipode(x: DiagramSum | Diagram) -> DiagramSum:
    """``S(G) = sum over ordered partitions A_n + ... + A_1 = E_G into nonempty
    blocks of (-1)**n G|A_n * ... * G|A_1``, with ``S(empty) = empty``.

    The sum is evaluated grouped by its leftmost block ``A``: the remaining
    blocks range over the ordered partitions of ``E_G - A``, which is the same
    sum for the restricted diagram, so
    ``S(G) = -sum over nonempty A of G|A * S(G|(E_G - A))``.
    """
    x = as_sum(x)
    out = DiagramSum.zero()
    for key, c in x.items():
        check_size("antipode edge count", len(key.tokens), "antipode_edge_limit")
        out = out + _antipode_key(key).scale(c)
    return out


@lru_cache(maxsize=1 << 14)
def _antipode_key(key: CanonicalKey) -> DiagramSum:
    if key == _EMPTY_KEY:
        return unit()
    d = key_diagram(key)
    total: dict[CanonicalKey, Fraction] = {}
    for left, right in split_masks(len(d)):
        if not left:
            continue
        rest = _antipode_key(canonical_form(restrict(d, right)))
        for k, c in product(restrict(d, left), rest).items():
            total[k] = total.get(k, 0) - c
    return DiagramSum._raw(total)


def convolve(f: LinearMap, g: LinearMap, x: DiagramSum | Diagram) -> DiagramSum:
    """The convolution ``mu o (f (x) g) o Delta`` evaluated at ``x``."""
    return coproduct(x).map(f, g).multiply()


def identity(x: DiagramSum) -> DiagramSum:
    return x
