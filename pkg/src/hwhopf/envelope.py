"""Exact arithmetic in the enveloping algebra of the Heisenberg Lie algebra
(PBW basis ``ad^k a^l e^m``) and in the Heisenberg-Weyl algebra
(normally ordered basis ``ad^k a^l``).

``ad`` stands for the creation operator, ``a`` for annihilation and ``e``
for the central element with ``a ad = ad a + e``.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from math import comb, factorial
from typing import Iterable, Mapping, NamedTuple, Sequence

from .galgebra import Scalar, as_fraction


class Gen(enum.IntEnum):
    # Values give the PBW order ad < a < e.
    A_DAG = 0
    A = 1
    E = 2

    @property
    def token(self) -> str:
        return ("ad", "a", "e")[self]


Word = tuple[tuple[Gen, int], ...]
"""Generator runs ``((gen, exponent), ...)``; the empty word is the identity."""


class PBWMonomial(NamedTuple):
    k: int  # power of ad
    l: int  # power of a
    m: int  # power of e


class _Poly:
    """Finitely supported exponent-tuple -> rational map, no stored zeros."""

    __slots__ = ("_terms",)
    _arity = 0

    def __init__(self, terms: Mapping[Sequence[int], Scalar] | None = None):
        clean: dict = {}
        for mono, c in (terms or {}).items():
            mono = self._mono(mono)
            c = as_fraction(c)
            clean[mono] = clean.get(mono, 0) + c
        self._terms = {k: v for k, v in clean.items() if v}

    @classmethod
    def _mono(cls, mono):
        mono = tuple(mono)
        if len(mono) != cls._arity or any(not isinstance(e, int) or e < 0 for e in mono):
            raise ValueError(f"bad exponent tuple {mono!r}")
        return mono

    @classmethod
    def _raw(cls, terms: dict):
        self = object.__new__(cls)
        self._terms = {k: v for k, v in terms.items() if v}
        return self

    @classmethod
    def one(cls):
        return cls._raw({(0,) * cls._arity: Fraction(1)})

    @classmethod
    def zero(cls):
        return cls._raw({})

    def items(self) -> list[tuple[tuple[int, ...], Fraction]]:
        """Terms with exponents sorted in descending lexicographic order."""
        return sorted(self._terms.items(), reverse=True)

    def coefficient(self, mono: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(mono), Fraction(0))

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            other = self.one().scale(other)
        if type(other) is not type(self):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash((type(self).__name__, frozenset(self._terms.items())))

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return self._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return self._raw({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def scale(self, c: Scalar):
        c = as_fraction(c)
        return self._raw({k: c * v for k, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, str)) and not isinstance(other, bool):
            return self.scale(other)
        if type(other) is not type(self):
            return NotImplemented
        return self._product(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, str)) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not defined")
        out = self.one()
        for _ in range(n):
            out = out * self
        return out

    def _coerce(self, other):
        if type(other) is type(self):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.one().scale(other)
        return None

    def __str__(self) -> str:
        return render_polynomial(self)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({render_polynomial(self)!r})"


class PBWPolynomial(_Poly):
    """Element ``sum beta_klm ad^k a^l e^m`` of the enveloping algebra."""

    __slots__ = ()
    _arity = 3

    @classmethod
    def monomial(cls, k: int, l: int, m: int, coeff: Scalar = 1) -> "PBWPolynomial":
        return cls({(k, l, m): coeff})

    @staticmethod
    def _product(x, y):
        return pbw_product(x, y)


class HWPolynomial(_Poly):
    """Element ``sum alpha_kl ad^k a^l`` of the Heisenberg-Weyl algebra."""

    __slots__ = ()
    _arity = 2

    @classmethod
    def monomial(cls, k: int, l: int, coeff: Scalar = 1) -> "HWPolynomial":
        return cls({(k, l): coeff})

    @staticmethod
    def _product(x, y):
        return hw_product(x, y)


def _reorder_terms(q: int, k: int):
    # Pairs (contractions i, multiplicity C(q,i) C(k,i) i!) for a^q ad^k.
    return [(i, comb(q, i) * comb(k, i) * factorial(i)) for i in range(min(q, k) + 1)]


def pbw_product(x: PBWPolynomial, y: PBWPolynomial) -> PBWPolynomial:
    """``ad^p a^q e^r . ad^k a^l e^m = sum_i C(q,i) C(k,i) i! ad^(p+k-i) a^(q+l-i) e^(r+m+i)``."""
    out: dict = {}
    for (p, q, r), cx in x._terms.items():
        for (k, l, m), cy in y._terms.items():
            c = cx * cy
            for i, mult in _reorder_terms(q, k):
                mono = (p + k - i, q + l - i, r + m + i)
                out[mono] = out.get(mono, 0) + c * mult
    return PBWPolynomial._raw(out)


def hw_product(x: HWPolynomial, y: HWPolynomial) -> HWPolynomial:
    """``ad^p a^q . ad^k a^l = sum_i C(q,i) C(k,i) i! ad^(p+k-i) a^(q+l-i)``."""
    out: dict = {}
    for (p, q), cx in x._terms.items():
        for (k, l), cy in y._terms.items():
            c = cx * cy
            for i, mult in _reorder_terms(q, k):
                mono = (p + k - i, q + l - i)
                out[mono] = out.get(mono, 0) + c * mult
    return HWPolynomial._raw(out)


PBWTensor = dict[tuple[PBWMonomial, PBWMonomial], Fraction]


def pbw_coproduct(x: PBWPolynomial) -> PBWTensor:
    """Generators are primitive; on the PBW basis
    ``Delta(ad^p a^q e^r) = sum C(p,i) C(q,j) C(r,k) ad^i a^j e^k (x) ad^(p-i) a^(q-j) e^(r-k)``."""
    out: dict = {}
    for (p, q, r), c in x._terms.items():
        for i in range(p + 1):
            for j in range(q + 1):
                for k in range(r + 1):
                    pair = (PBWMonomial(i, j, k), PBWMonomial(p - i, q - j, r - k))
                    out[pair] = out.get(pair, 0) + c * comb(p, i) * comb(q, j) * comb(r, k)
    return {pair: c for pair, c in out.items() if c}


def pbw_antipode(x: PBWPolynomial) -> PBWPolynomial:
    """``S(ad^p a^q e^r) = (-1)^(p+q+r) e^r a^q ad^p``, brought back to PBW order."""
    out = PBWPolynomial.zero()
    for (p, q, r), c in x._terms.items():
        sign = -1 if (p + q + r) % 2 else 1
        reversed_word = pbw_product(PBWPolynomial.monomial(0, q, r), PBWPolynomial.monomial(p, 0, 0))
        out = out + reversed_word.scale(c * sign)
    return out


def pbw_counit(x: PBWPolynomial) -> Fraction:
    return x.coefficient((0, 0, 0))


def project_pi(x: PBWPolynomial) -> HWPolynomial:
    """Set ``e`` to the identity."""
    out: dict = {}
    for (k, l, _), c in x._terms.items():
        out[(k, l)] = out.get((k, l), 0) + c
    return HWPolynomial._raw(out)


def flatten(word: Word) -> tuple[Gen, ...]:
    return tuple(g for g, n in word for _ in range(n))


def compress(letters: Iterable[Gen]) -> Word:
    runs: list[list] = []
    for g in letters:
        if runs and runs[-1][0] == g:
            runs[-1][1] += 1
        else:
            runs.append([g, 1])
    return tuple((Gen(g), n) for g, n in runs)


def normal_order_word(word: Word | Sequence[Gen]) -> PBWPolynomial:
    """Rewrite a word to PBW order with ``a ad -> ad a + e``, ``e ad -> ad e``,
    ``e a -> a e``, always at the leftmost out-of-order pair."""
    letters = _letters(word)
    pending: dict[tuple[int, ...], Fraction] = {letters: Fraction(1)}
    done: dict = {}
    while pending:
        w, c = pending.popitem()
        for i in range(len(w) - 1):
            if w[i] > w[i + 1]:
                break
        else:
            mono = (w.count(0), w.count(1), w.count(2))
            done[mono] = done.get(mono, 0) + c
            continue
        head, tail = w[:i], w[i + 2:]
        swapped = head + (w[i + 1], w[i]) + tail
        pending[swapped] = pending.get(swapped, 0) + c
        if (w[i], w[i + 1]) == (Gen.A, Gen.A_DAG):
            contracted = head + (int(Gen.E),) + tail
            pending[contracted] = pending.get(contracted, 0) + c
    return PBWPolynomial._raw(done)


def _letters(word) -> tuple[int, ...]:
    word = tuple(word)
    if word and isinstance(word[0], tuple):
        word = flatten(word)
    return tuple(int(Gen(g)) for g in word)


def word_polynomial(word: Word | Sequence[Gen]) -> PBWPolynomial:
    """The same element computed by multiplying the letters with :func:`pbw_product`."""
    out = PBWPolynomial.one()
    unit_of = {0: (1, 0, 0), 1: (0, 1, 0), 2: (0, 0, 1)}
    for g in _letters(word):
        out = pbw_product(out, PBWPolynomial._raw({unit_of[g]: Fraction(1)}))
    return out


def render_polynomial(x: _Poly) -> str:
    """``ad^k a^l e^m`` terms, exponents descending, unit parts elided: ``ad^2 a^2 + 3 ad a + 1``."""
    names = ("ad", "a", "e")
    if not x:
        return "0"
    parts = []
    for i, (mono, c) in enumerate(x.items()):
        factors = []
        for name, e in zip(names, mono):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = " ".join(factors)
        else:
            body = f"{mag} " + " ".join(factors)
        if i == 0:
            parts.append(body if sign == "+" else f"-{body}")
        else:
            parts.append(f"{sign} {body}")
    return " ".join(parts)
