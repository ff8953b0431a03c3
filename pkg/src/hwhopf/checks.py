"""Executable property suites over the exhaustive diagram corpus.

Each check returns a :class:`CheckResult`; :func:`run_suite` groups them.
Used by the ``check`` subcommand and by the demo scripts.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as cartesian
from math import comb, factorial
from typing import Callable, Iterable, Optional

from . import envelope as env
from .composition import compose, enumerate_matchings, matching_count
from .config import get_limits, using_limits
from .corpus import corpus
from .diagram import Diagram, canonical_form
from .galgebra import DiagramSum, basis_product, product, unit
from .hopf import (
    antipode,
    convolve,
    coproduct,
    counit,
    decompositions,
    identity,
    ordered_partitions,
    unit_projection,
)
from .morphism import phi, phi_bar, preimage
from .textio import format_diagram

MAX_REPORTED = 5


@dataclass
class CheckResult:
    suite: str
    name: str
    cases: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, message: str) -> None:
        if len(self.failures) < MAX_REPORTED:
            self.failures.append(message)
        elif len(self.failures) == MAX_REPORTED:
            self.failures.append("... further failures suppressed")

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.suite}/{self.name} ({self.cases} cases)"


def show(*diagrams: Diagram) -> str:
    return "\n".join(format_diagram(d).rstrip() for d in diagrams).replace("\n", " | ")


def _basis(d: Diagram) -> DiagramSum:
    return DiagramSum.of(d)


def _pairs_up_to(diagrams: list[Diagram], total_edges: int):
    for x in diagrams:
        for y in diagrams:
            if len(x) + len(y) <= total_edges:
                yield x, y


def _room(edges: int) -> dict:
    # Generous limits for a product whose factors carry `edges` lines in total:
    # a line touches at most two vertices.
    limits = get_limits()
    return {
        "max_edges": max(limits.max_edges, edges),
        "max_vertices": max(limits.max_vertices, 2 * edges),
        "antipode_edge_limit": max(limits.antipode_edge_limit, edges),
    }


# -- algebra -------------------------------------------------------------------


def check_unit_laws(max_edges: int) -> CheckResult:
    r = CheckResult("algebra", "unit-laws")
    one = unit()
    for d in corpus(max_edges):
        r.cases += 1
        x = _basis(d)
        if one * x != x or x * one != x:
            r.fail(f"unit law fails for {show(d)}")
    return r


def check_associativity(max_edges: int, samples: int = 0, sample_edges: Optional[int] = None,
                        seed: int = 0) -> CheckResult:
    r = CheckResult("algebra", "associativity")
    small = [_basis(d) for d in corpus(max_edges)]
    with using_limits(**_room(3 * max(max_edges, sample_edges or 0))):
        for x in small:
            for y in small:
                xy = x * y
                for z in small:
                    r.cases += 1
                    if xy * z != x * (y * z):
                        r.fail(f"(xy)z != x(yz) for {x!r}, {y!r}, {z!r}")
        if samples and sample_edges:
            big = [_basis(d) for d in corpus(sample_edges)]
            rng = random.Random(seed)
            for _ in range(samples):
                x, y, z = (rng.choice(big) for _ in range(3))
                r.cases += 1
                if (x * y) * z != x * (y * z):
                    r.fail(f"(xy)z != x(yz) for {x!r}, {y!r}, {z!r}")
    return r


def check_structure_constants(max_edges: int) -> CheckResult:
    """Nonnegative integer constants; the coefficient mass joining ``i`` lines
    equals the number of size-``i`` matchings."""
    r = CheckResult("algebra", "structure-constants")
    diagrams = corpus(max_edges)
    with using_limits(**_room(2 * max_edges)):
        for upper, lower in cartesian(diagrams, diagrams):
            r.cases += 1
            consts = basis_product(canonical_form(upper), canonical_form(lower))
            if any(not isinstance(c, int) or c <= 0 for c in consts.values()):
                r.fail(f"bad structure constant in {show(upper)} * {show(lower)}")
                continue
            mass: dict[int, int] = {}
            for key, c in consts.items():
                joined = len(upper) + len(lower) - len(key.tokens)
                mass[joined] = mass.get(joined, 0) + c
            n_minus, n_plus = len(upper.incoming), len(lower.outgoing)
            expected = {i: matching_count(n_minus, n_plus, i) for i in range(min(n_minus, n_plus) + 1)}
            if mass != expected:
                r.fail(f"grading mass {mass} != {expected} for {show(upper)} * {show(lower)}")
    return r


# -- hopf ------------------------------------------------------------------------


def _delta_left(d: Diagram) -> dict:
    out: dict = {}
    for (kl, kr), c in coproduct(d).items():
        for (a, b), c2 in coproduct(DiagramSum._raw({kl: Fraction(1)})).items():
            key = (a, b, kr)
            out[key] = out.get(key, 0) + c * c2
    return out


def _delta_right(d: Diagram) -> dict:
    out: dict = {}
    for (kl, kr), c in coproduct(d).items():
        for (a, b), c2 in coproduct(DiagramSum._raw({kr: Fraction(1)})).items():
            key = (kl, a, b)
            out[key] = out.get(key, 0) + c * c2
    return out


def check_coassociativity(max_edges: int) -> CheckResult:
    r = CheckResult("hopf", "coassociativity")
    for d in corpus(max_edges):
        r.cases += 1
        if _delta_left(d) != _delta_right(d):
            r.fail(f"(D x Id)D != (Id x D)D for {show(d)}")
    return r


def check_counit(max_edges: int) -> CheckResult:
    r = CheckResult("hopf", "counit-laws")
    for d in corpus(max_edges):
        r.cases += 1
        t = coproduct(d)
        if t.counit_left() != _basis(d) or t.counit_right() != _basis(d):
            r.fail(f"counit law fails for {show(d)}")
    return r


def check_cocommutativity(max_edges: int) -> CheckResult:
    r = CheckResult("hopf", "cocommutativity")
    for d in corpus(max_edges):
        r.cases += 1
        t = coproduct(d)
        if t.swap() != t:
            r.fail(f"coproduct not symmetric for {show(d)}")
    return r


def check_bialgebra(max_edges: int, samples: int = 0, seed: int = 0) -> CheckResult:
    r = CheckResult("hopf", "bialgebra")
    diagrams = corpus(max_edges)
    pairs = list(_pairs_up_to(diagrams, max_edges))
    rng = random.Random(seed)
    pairs += [(rng.choice(diagrams), rng.choice(diagrams)) for _ in range(samples)]
    with using_limits(**_room(2 * max_edges)):
        for x, y in pairs:
            r.cases += 1
            xy = product(x, y)
            if coproduct(xy) != coproduct(x) * coproduct(y):
                r.fail(f"D(xy) != D(x)D(y) for {show(x)} ; {show(y)}")
            if counit(xy) != counit(x) * counit(y):
                r.fail(f"e(xy) != e(x)e(y) for {show(x)} ; {show(y)}")
    return r


def check_antipode(max_edges: int) -> CheckResult:
    r = CheckResult("hopf", "antipode-identities")
    with using_limits(**_room(max_edges)):
        for d in corpus(max_edges):
            r.cases += 1
            x = _basis(d)
            target = unit_projection(x)
            if convolve(identity, antipode, x) != target:
                r.fail(f"mu(Id x S)D != unit projection for {show(d)}")
            if convolve(antipode, identity, x) != target:
                r.fail(f"mu(S x Id)D != unit projection for {show(d)}")
    return r


def check_involution(max_edges: int) -> CheckResult:
    r = CheckResult("hopf", "antipode-involution")
    with using_limits(**_room(max_edges)):
        for d in corpus(max_edges):
            r.cases += 1
            x = _basis(d)
            if antipode(antipode(x)) != x:
                r.fail(f"S(S(x)) != x for {show(d)}")
    return r


def check_antimorphism(max_edges: int) -> CheckResult:
    r = CheckResult("hopf", "antipode-antimorphism")
    diagrams = corpus(max_edges)
    with using_limits(**_room(2 * max_edges)):
        for x, y in _pairs_up_to(diagrams, max_edges):
            r.cases += 1
            if antipode(product(x, y)) != antipode(y) * antipode(x):
                r.fail(f"S(xy) != S(y)S(x) for {show(x)} ; {show(y)}")
    return r


# -- morphism ---------------------------------------------------------------------


def check_phi_multiplicative(max_edges: int, samples: int = 0, seed: int = 0) -> CheckResult:
    r = CheckResult("morphism", "phi-multiplicative")
    diagrams = corpus(max_edges)
    pairs = list(_pairs_up_to(diagrams, max_edges))
    rng = random.Random(seed)
    pairs += [(rng.choice(diagrams), rng.choice(diagrams)) for _ in range(samples)]
    with using_limits(**_room(2 * max_edges)):
        for x, y in pairs:
            r.cases += 1
            if phi(product(x, y)) != phi(x) * phi(y):
                r.fail(f"phi(xy) != phi(x)phi(y) for {show(x)} ; {show(y)}")
            if phi_bar(product(x, y)) != phi_bar(x) * phi_bar(y):
                r.fail(f"phi_bar(xy) != phi_bar(x)phi_bar(y) for {show(x)} ; {show(y)}")
    return r


def check_phi_hopf(max_edges: int) -> CheckResult:
    r = CheckResult("morphism", "phi-hopf")
    with using_limits(**_room(max_edges)):
        for d in corpus(max_edges):
            r.cases += 1
            image: dict = {}
            for (kl, kr), c in coproduct(d).items():
                pl = phi(DiagramSum._raw({kl: Fraction(1)}))
                pr = phi(DiagramSum._raw({kr: Fraction(1)}))
                for ml, cl in pl.items():
                    for mr, cr in pr.items():
                        pair = (env.PBWMonomial(*ml), env.PBWMonomial(*mr))
                        image[pair] = image.get(pair, 0) + c * cl * cr
            if image != env.pbw_coproduct(phi(d)):
                r.fail(f"(phi x phi)D != D phi for {show(d)}")
            if counit(d) != env.pbw_counit(phi(d)):
                r.fail(f"counit not preserved for {show(d)}")
            if phi(antipode(d)) != env.pbw_antipode(phi(d)):
                r.fail(f"phi S != S phi for {show(d)}")
            if phi_bar(d) != env.project_pi(phi(d)):
                r.fail(f"phi_bar != pi phi for {show(d)}")
    return r


def check_surjectivity(total: int = 6) -> CheckResult:
    r = CheckResult("morphism", "surjectivity")
    for k in range(total + 1):
        for l in range(total + 1 - k):
            for m in range((total - k - l) // 2 + 1):
                r.cases += 1
                if phi(preimage(k, l, m)) != env.PBWPolynomial.monomial(k, l, m):
                    r.fail(f"no preimage found for ad^{k} a^{l} e^{m}")
    return r


# -- counting -----------------------------------------------------------------------


def check_matching_counts(max_lines: int = 4) -> CheckResult:
    """Every ordered corpus pair, every size up to one past the largest possible."""
    r = CheckResult("counting", "matching-counts")
    diagrams = corpus(max_lines)
    for upper in diagrams:
        n_minus = len(upper.incoming)
        for lower in diagrams:
            n_plus = len(lower.outgoing)
            for i in range(min(n_minus, n_plus) + 2):
                r.cases += 1
                got = len(enumerate_matchings(upper, lower, i))
                if got != matching_count(n_minus, n_plus, i):
                    r.fail(f"{got} matchings of size {i} for counts ({n_minus}, {n_plus})")
    return r


def check_line_counts_after_composition(max_edges: int) -> CheckResult:
    r = CheckResult("counting", "composite-line-counts")
    diagrams = corpus(max_edges)
    for upper, lower in cartesian(diagrams, diagrams):
        for m in enumerate_matchings(upper, lower):
            r.cases += 1
            g = compose(upper, m, lower)
            i = len(m)
            u0, um, up = upper.line_counts()
            l0, lm, lp = lower.line_counts()
            if g.line_counts() != (u0 + l0 + i, um + lm - i, up + lp - i):
                r.fail(f"line counts off after joining {i} lines: {show(upper)} ; {show(lower)}")
    return r


def check_decomposition_counts(max_edges: int) -> CheckResult:
    r = CheckResult("counting", "decomposition-counts")
    for d in corpus(max_edges):
        r.cases += 1
        parts = decompositions(d)
        if len(parts) != 2 ** len(d):
            r.fail(f"{len(parts)} decompositions for {show(d)}")
        n0, nm, np_ = d.line_counts()
        tally: dict[tuple[int, int, int], int] = {}
        for left, right in parts:
            k, j, i = left.line_counts()
            tally[(i, j, k)] = tally.get((i, j, k), 0) + 1
            if right.line_counts() != (n0 - k, nm - j, np_ - i):
                r.fail(f"complement counts off for {show(d)}")
        for i in range(np_ + 1):
            for j in range(nm + 1):
                for k in range(n0 + 1):
                    if tally.get((i, j, k), 0) != comb(np_, i) * comb(nm, j) * comb(n0, k):
                        r.fail(f"refined count ({i},{j},{k}) off for {show(d)}")
    return r


def _stirling2(n: int, k: int) -> int:
    return sum((-1) ** j * comb(k, j) * (k - j) ** n for j in range(k + 1)) // factorial(k)


def check_ordered_partition_counts(max_size: int = 6) -> CheckResult:
    r = CheckResult("counting", "ordered-partitions")
    for size in range(max_size + 1):
        for n in range(1, max_size + 2):
            r.cases += 1
            if len(ordered_partitions(size, n)) != factorial(n) * _stirling2(size, n):
                r.fail(f"ordered partitions of {size} into {n} blocks miscounted")
    return r


# -- envelope ----------------------------------------------------------------------


def _words(max_length: int) -> Iterable[tuple[env.Gen, ...]]:
    for n in range(max_length + 1):
        yield from cartesian(list(env.Gen), repeat=n)


def check_rewrite_oracle(max_length: int = 6) -> CheckResult:
    r = CheckResult("envelope", "rewrite-oracle")
    for w in _words(max_length):
        r.cases += 1
        if env.normal_order_word(w) != env.word_polynomial(w):
            r.fail(f"rewriting and structure constants disagree on {w}")
    return r


def check_hw_product(max_exp: int = 4) -> CheckResult:
    r = CheckResult("envelope", "hw-structure-constants")
    rng = range(max_exp + 1)
    for p, q, k, l in cartesian(rng, rng, rng, rng):
        r.cases += 1
        word = ((env.Gen.A_DAG, p), (env.Gen.A, q), (env.Gen.A_DAG, k), (env.Gen.A, l))
        oracle = env.project_pi(env.normal_order_word(word))
        got = env.HWPolynomial.monomial(p, q) * env.HWPolynomial.monomial(k, l)
        if got != oracle:
            r.fail(f"ad^{p} a^{q} * ad^{k} a^{l} disagrees with rewriting")
    return r


def check_envelope_hopf(max_degree: int = 4) -> CheckResult:
    r = CheckResult("envelope", "hopf-axioms")
    one = env.PBWPolynomial.one()
    monos = [(p, q, s) for p in range(max_degree + 1) for q in range(max_degree + 1)
             for s in range(max_degree + 1) if p + q + s <= max_degree]
    for p, q, s in monos:
        r.cases += 1
        x = env.PBWPolynomial.monomial(p, q, s)
        delta = env.pbw_coproduct(x)
        left: dict = {}
        right: dict = {}
        for (a, b), c in delta.items():
            for (a1, a2), c1 in env.pbw_coproduct(env.PBWPolynomial.monomial(*a)).items():
                left[(a1, a2, b)] = left.get((a1, a2, b), 0) + c * c1
            for (b1, b2), c2 in env.pbw_coproduct(env.PBWPolynomial.monomial(*b)).items():
                right[(a, b1, b2)] = right.get((a, b1, b2), 0) + c * c2
        if left != right:
            r.fail(f"coassociativity fails on {x}")
        eps_l = env.PBWPolynomial.zero()
        eps_r = env.PBWPolynomial.zero()
        s_l = env.PBWPolynomial.zero()
        s_r = env.PBWPolynomial.zero()
        for (a, b), c in delta.items():
            ma, mb = env.PBWPolynomial.monomial(*a), env.PBWPolynomial.monomial(*b)
            eps_l = eps_l + mb.scale(c * env.pbw_counit(ma))
            eps_r = eps_r + ma.scale(c * env.pbw_counit(mb))
            s_l = s_l + (ma * env.pbw_antipode(mb)).scale(c)
            s_r = s_r + (env.pbw_antipode(ma) * mb).scale(c)
        if eps_l != x or eps_r != x:
            r.fail(f"counit law fails on {x}")
        target = one.scale(env.pbw_counit(x))
        if s_l != target or s_r != target:
            r.fail(f"antipode identity fails on {x}")
    return r


# -- suites ---------------------------------------------------------------------------

SUITES = ("algebra", "hopf", "morphism", "counting", "envelope")
DEFAULT_EDGES = {"algebra": 2, "hopf": 4, "morphism": 4, "counting": 5, "envelope": 4}


def suite_checks(suite: str, max_edges: Optional[int] = None) -> list[Callable[[], CheckResult]]:
    if suite not in DEFAULT_EDGES:
        raise ValueError(f"unknown suite {suite!r}")
    n = max_edges if max_edges is not None else DEFAULT_EDGES[suite]
    if suite == "algebra":
        sampled = n + 1
        return [
            lambda: check_unit_laws(max(n, 3)),
            lambda: check_associativity(n, samples=500, sample_edges=sampled),
            lambda: check_structure_constants(min(n + 1, 3)),
        ]
    if suite == "hopf":
        return [
            lambda: check_coassociativity(n),
            lambda: check_counit(n),
            lambda: check_cocommutativity(n),
            lambda: check_bialgebra(n, samples=200),
            lambda: check_antipode(n),
            lambda: check_involution(n),
            lambda: check_antimorphism(n),
        ]
    if suite == "morphism":
        return [
            lambda: check_phi_multiplicative(n, samples=500),
            lambda: check_phi_hopf(n),
            lambda: check_surjectivity(6),
        ]
    if suite == "counting":
        return [
            lambda: check_matching_counts(min(n, 4)),
            lambda: check_line_counts_after_composition(min(n, 3)),
            lambda: check_decomposition_counts(n),
            lambda: check_ordered_partition_counts(6),
        ]
    if suite == "envelope":
        return [
            lambda: check_rewrite_oracle(6),
            lambda: check_hw_product(4),
            lambda: check_envelope_hopf(n),
        ]
    raise ValueError(f"unknown suite {suite!r}")


def run_suite(suite: str, max_edges: Optional[int] = None) -> list[CheckResult]:
    names = SUITES if suite == "all" else (suite,)
    results = []
    for name in names:
        for check in suite_checks(name, max_edges):
            results.append(check())
    return results
