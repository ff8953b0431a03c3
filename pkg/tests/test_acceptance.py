"""The twelve acceptance criteria, each timed against its budget.

Every criterion prints one ``PASS``/``FAIL`` line (shown even when pytest
captures output). Run directly with ``python tests/test_acceptance.py`` for
just the report.
"""

from __future__ import annotations

import random
import string
import subprocess
import sys
import time
from contextlib import contextmanager
from itertools import product as cartesian
from math import comb, factorial
from pathlib import Path

from hwhopf import (
    Diagram,
    DiagramError,
    Gen,
    HWPolynomial,
    ParseError,
    PBWPolynomial,
    canonical_form,
    corpus,
    decompositions,
    disjoint_union,
    enumerate_matchings,
    is_isomorphic,
    normal_order_word,
    parse_diagram,
    parse_word,
    phi,
    phi_bar,
    project_pi,
    render_dot,
    using_limits,
    antipode,
)
from hwhopf import checks
from hwhopf.envelope import word_polynomial
from hwhopf.galgebra import linear_combine
from hwhopf.textio import format_diagram

sys.path.insert(0, str(Path(__file__).resolve().parent))
from oracles import literal_antipode  # noqa: E402

ROOT = Path(__file__).resolve().parent.parent
AD, A, E = Gen.A_DAG, Gen.A, Gen.E

_report = []


def _say(line: str, capsys) -> None:
    _report.append(line)
    if capsys is None:
        print(line)
    else:
        with capsys.disabled():
            print("\n" + line, end="")


@contextmanager
def criterion(number: int, title: str, budget: float | None, capsys):
    start = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        elapsed = time.perf_counter() - start
        in_time = budget is None or elapsed < budget
        status = "PASS" if ok and in_time else "FAIL"
        limit = f" / {budget:g} s" if budget is not None else ""
        _say(f"{status} criterion {number:2d}: {title} ({elapsed:.2f} s{limit})", capsys)
    assert in_time, f"took {elapsed:.1f} s, budget {budget} s"


def _failures(results):
    return [f"{r.line()}: {r.failures}" for r in results if not r.passed]


def test_01_hw_structure_constants(capsys):
    with criterion(1, "normally ordered products agree with rewriting, exponents <= 4", 5, capsys):
        for p, q, k, l in cartesian(range(5), repeat=4):
            got = HWPolynomial.monomial(p, q) * HWPolynomial.monomial(k, l)
            oracle = project_pi(normal_order_word(((AD, p), (A, q), (AD, k), (A, l))))
            assert got == oracle, (p, q, k, l)


def test_02_pbw_structure_constants(capsys):
    with criterion(2, "PBW products agree with rewriting on all words of length <= 6", 30, capsys):
        count = 0
        for n in range(7):
            for w in cartesian(list(Gen), repeat=n):
                assert word_polynomial(w) == normal_order_word(w), w
                count += 1
        assert count == sum(3 ** n for n in range(7))


def test_03_worked_value(capsys):
    with criterion(3, "(a ad)^2 normal order and its projection", None, capsys):
        (c, word), = parse_word("(a ad)^2")
        x = normal_order_word(word).scale(c)
        expected = (PBWPolynomial.monomial(2, 2, 0) + PBWPolynomial.monomial(1, 1, 1, 3)
                    + PBWPolynomial.monomial(0, 0, 2))
        assert x == expected
        assert x == word_polynomial(word)
        assert project_pi(x) == HWPolynomial.monomial(2, 2) + HWPolynomial.monomial(1, 1, 3) + 1
        assert str(project_pi(x)) == "ad^2 a^2 + 3 ad a + 1"


def test_04_matching_counts(capsys):
    with criterion(4, "matching counts on all corpus pairs with <= 4 free lines, all sizes", 5, capsys):
        diagrams = corpus(4)
        cases = 0
        for upper in diagrams:
            n_minus = len(upper.incoming)
            for lower in diagrams:
                n_plus = len(lower.outgoing)
                for i in range(min(n_minus, n_plus) + 2):
                    expected = comb(n_minus, i) * comb(n_plus, i) * factorial(i)
                    assert len(enumerate_matchings(upper, lower, i)) == expected
                    cases += 1
        assert cases > 900_000


def test_05_associativity(capsys):
    with criterion(5, "associativity: all <= 2-line triples and 1000 sampled <= 3-line triples", 120, capsys):
        r = checks.check_associativity(2, samples=1000, sample_edges=3, seed=2024)
        assert r.passed, r.failures
        assert r.cases == 21 ** 3 + 1000


def test_06_decomposition_counts(capsys):
    with criterion(6, "2^|G| decompositions and refined (i,j,k) counts, <= 5 lines", 10, capsys):
        diagrams = corpus(5)
        for d in diagrams:
            parts = decompositions(d)
            assert len(parts) == 2 ** len(d)
            n0, nm, np_ = d.line_counts()
            tally = {}
            for left, _ in parts:
                k, j, i = left.line_counts()
                tally[(i, j, k)] = tally.get((i, j, k), 0) + 1
            for i, j, k in cartesian(range(np_ + 1), range(nm + 1), range(n0 + 1)):
                assert tally.get((i, j, k), 0) == comb(np_, i) * comb(nm, j) * comb(n0, k)
        assert len(diagrams) == 1 + 3 + 17 + 89 + 518 + 3113


def test_07_hopf_axioms(capsys):
    with criterion(7, "Hopf axioms on the <= 4-line corpus, 3000 extra sampled product pairs", 300, capsys):
        results = [
            checks.check_coassociativity(4),
            checks.check_counit(4),
            checks.check_cocommutativity(4),
            checks.check_bialgebra(4, samples=3000, seed=7),
            checks.check_antipode(4),
        ]
        assert not _failures(results), _failures(results)
        assert results[0].cases == 628


def test_08_antipode_value(capsys):
    with criterion(8, "S(D1) = -D1 + 2 (D_dn u D_up) + I2", None, capsys):
        d1 = Diagram(1, [("in", 0), (0, "out")])
        d_up, d_dn = Diagram(1, [(0, "out")]), Diagram(1, [("in", 0)])
        i2 = Diagram(2, [(0, 1)])
        expected = linear_combine([(-1, d1), (2, disjoint_union(d_dn, d_up)), (1, i2)])
        assert antipode(d1) == expected
        assert literal_antipode(d1) == expected


def test_09_morphism(capsys):
    with criterion(9, "phi is a Hopf algebra morphism on the <= 4-line corpus", 120, capsys):
        results = [checks.check_phi_multiplicative(4, samples=5000, seed=9), checks.check_phi_hopf(4)]
        assert not _failures(results), _failures(results)


def test_10_figure(capsys):
    with criterion(10, "figure diagram: counts (4,4,3), image ad^3 a^4 e^4", None, capsys):
        d = parse_diagram((ROOT / "demos" / "diagrams" / "fig1.hwd").read_text())
        assert d.line_counts() == (4, 4, 3)
        assert phi(d) == PBWPolynomial.monomial(3, 4, 4)
        assert phi_bar(d) == HWPolynomial.monomial(3, 4)


def test_11_envelope_hopf(capsys):
    with criterion(11, "enveloping algebra Hopf axioms, p+q+r <= 4", 10, capsys):
        r = checks.check_envelope_hopf(4)
        assert r.passed, r.failures
        assert r.cases == comb(4 + 3, 3)


def _random_text(rng: random.Random) -> str:
    kind = rng.random()
    if kind < 0.3:
        return "".join(rng.choice(string.printable) for _ in range(rng.randint(0, 40)))
    words = ["vertices", "edge", "in", "out", "#", "\n", " ", "a", "ad", "a+", "e", "^", "*", "+",
             "-", "/", "(", ")", "\t", "é", "\x00"] + [str(rng.randint(0, 12)) for _ in range(4)]
    return "".join(rng.choice(words) + rng.choice(["", " ", "\n"]) for _ in range(rng.randint(0, 25)))


def _mutated_file(rng: random.Random, seeds: list[str]) -> str:
    text = list(rng.choice(seeds))
    for _ in range(rng.randint(1, 4)):
        pos = rng.randrange(len(text) + 1)
        op = rng.random()
        if op < 0.4 and text:
            del text[min(pos, len(text) - 1)]
        elif op < 0.8:
            text.insert(pos, rng.choice("0123456789 \nabcdeinot#-"))
        elif text:
            text[min(pos, len(text) - 1)] = rng.choice("0123456789")
    return "".join(text)


def _parse_safely(parser, data) -> None:
    try:
        parser(data)
    except ParseError as exc:
        assert exc.line >= 1 and exc.column >= 1
    except DiagramError as exc:
        assert exc.diagnostic is not None and exc.diagnostic.line >= 1


def test_12_cli_contract(capsys):
    with criterion(12, "check all at default limits, corpus round trip, 10^5 fuzzed inputs", 600, capsys):
        done = subprocess.run([sys.executable, "-m", "hwhopf", "check", "all"],
                              capture_output=True, text=True, check=False)
        assert done.returncode == 0, done.stdout + done.stderr
        assert "FAIL" not in done.stdout

        with using_limits(max_vertices=10):
            for d in corpus(5):
                back = parse_diagram(format_diagram(d))
                assert back == d and is_isomorphic(back, d)
                assert canonical_form(back) == canonical_form(d)
                dot = render_dot(back)
                assert dot.count("->") == len(d)
                assert dot.count("[shape=point]") == len(d.incoming) + len(d.outgoing)

        rng = random.Random(12345)
        seeds = [format_diagram(d) for d in corpus(3)]
        for n in range(100_000):
            if n % 4 == 0:
                data = bytes(rng.randrange(256) for _ in range(rng.randint(0, 30)))
            elif n % 4 == 1:
                data = _mutated_file(rng, seeds)
            else:
                data = _random_text(rng)
            _parse_safely(parse_diagram, data)
            _parse_safely(parse_word, data)


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_") and callable(fn):
            try:
                fn(None)
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
