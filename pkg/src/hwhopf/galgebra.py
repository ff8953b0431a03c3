"""The algebra of diagram classes with the composition product."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Iterator, Mapping, Union

from .composition import compose, enumerate_matchings
from .config import check_size
from .diagram import EMPTY, CanonicalKey, Diagram, canonical_form, key_diagram

Scalar = Union[int, Fraction, str]


def as_fraction(c: Scalar) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(c, (int, Rational, str)):
        return Fraction(c)
    raise TypeError(f"expected an exact rational coefficient, got {type(c).__name__}")


class DiagramSum:
    """A finite linear combination of diagram classes with rational coefficients.

    Terms are keyed by :class:`CanonicalKey`; a key doubles as the stored
    representative. Instances are immutable.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[CanonicalKey, Scalar] | None = None):
        clean = {}
        for key, c in (terms or {}).items():
            c = as_fraction(c)
            if c:
                clean[key] = c
        self._terms: dict[CanonicalKey, Fraction] = clean

    @classmethod
    def _raw(cls, terms: dict[CanonicalKey, Fraction]) -> "DiagramSum":
        self = object.__new__(cls)
        self._terms = {k: c for k, c in terms.items() if c}
        return self

    @classmethod
    def of(cls, d: Diagram, coeff: Scalar = 1) -> "DiagramSum":
        return cls._raw({canonical_form(d): as_fraction(coeff)})

    @classmethod
    def zero(cls) -> "DiagramSum":
        return cls._raw({})

    def items(self) -> list[tuple[CanonicalKey, Fraction]]:
        """Terms in canonical order."""
        return sorted(self._terms.items())

    def terms(self) -> Iterator[tuple[Fraction, Diagram]]:
        for key, c in self.items():
            yield c, key_diagram(key)

    def coefficient(self, d: Diagram | CanonicalKey) -> Fraction:
        key = d if isinstance(d, CanonicalKey) else canonical_form(d)
        return self._terms.get(key, Fraction(0))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __iter__(self):
        return iter(self.items())

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return DiagramSum._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "DiagramSum":
        return DiagramSum._raw({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def scale(self, c: Scalar) -> "DiagramSum":
        c = as_fraction(c)
        return DiagramSum._raw({k: c * v for k, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, str)) and not isinstance(other, bool):
            return self.scale(other)
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return product(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, str)) and not isinstance(other, bool):
            return self.scale(other)
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return product(other, self)

    def __repr__(self) -> str:
        if not self._terms:
            return "DiagramSum(0)"
        body = " + ".join(f"{c}*{key_diagram(k)!r}" for k, c in self.items())
        return f"DiagramSum({body})"


def _coerce(x) -> DiagramSum | None:
    if isinstance(x, DiagramSum):
        return x
    if isinstance(x, Diagram):
        return DiagramSum.of(x)
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return DiagramSum._raw({canonical_form(EMPTY): Fraction(x)})
    return None


def as_sum(x: DiagramSum | Diagram) -> DiagramSum:
    out = _coerce(x)
    if out is None:
        raise TypeError(f"cannot interpret {type(x).__name__} as a DiagramSum")
    return out


def linear_combine(parts: Iterable[tuple[Scalar, Diagram]]) -> DiagramSum:
    """Collect ``sum(c * d)`` by isomorphism class, dropping zero coefficients."""
    out: dict[CanonicalKey, Fraction] = {}
    for c, d in parts:
        key = canonical_form(d)
        out[key] = out.get(key, 0) + as_fraction(c)
    return DiagramSum._raw(out)


def unit() -> DiagramSum:
    """The empty diagram with coefficient one."""
    return DiagramSum.of(EMPTY)


def basis_product(upper: CanonicalKey, lower: CanonicalKey) -> dict[CanonicalKey, int]:
    """Structure constants of ``upper * lower``: class -> number of matchings producing it."""
    check_size("product edge count", len(upper.tokens) + len(lower.tokens), "max_edges")
    check_size("product vertex count", upper.vertex_count + lower.vertex_count, "max_vertices")
    return _basis_product(upper, lower)


@lru_cache(maxsize=1 << 16)
def _basis_product(upper: CanonicalKey, lower: CanonicalKey) -> dict[CanonicalKey, int]:
    u = key_diagram(upper)
    l = key_diagram(lower)
    out: dict[CanonicalKey, int] = {}
    for m in enumerate_matchings(u, l):
        key = canonical_form(compose(u, m, l, check=False))
        out[key] = out.get(key, 0) + 1
    return out


def product(x: DiagramSum | Diagram, y: DiagramSum | Diagram) -> DiagramSum:
    """Bilinear extension of ``G2 * G1 = sum over matchings m of G2 composed with G1 along m``."""
    x, y = as_sum(x), as_sum(y)
    out: dict[CanonicalKey, Fraction] = {}
    for kx, cx in x._terms.items():
        for ky, cy in y._terms.items():
            c = cx * cy
            for k, mult in basis_product(kx, ky).items():
                out[k] = out.get(k, 0) + c * mult
    return DiagramSum._raw(out)
