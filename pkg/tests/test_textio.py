import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hwhopf import (
    EMPTY,
    BothEndsFree,
    CycleDetected,
    Diagram,
    Gen,
    HWPolynomial,
    IndexOutOfRange,
    IsolatedVertex,
    ParseError,
    PBWPolynomial,
    TensorSum,
    coproduct,
    corpus,
    deserialize_sum,
    format_diagram,
    is_isomorphic,
    parse_diagram,
    parse_word,
    product,
    render_dot,
    serialize_sum,
    unit,
    using_limits,
)
from hwhopf.galgebra import linear_combine
from hwhopf.textio import diagram_from_json, diagram_to_json, format_sum_text

AD, A, E = Gen.A_DAG, Gen.A, Gen.E


def test_parse_examples(d1):
    assert parse_diagram("vertices 1\nedge in 0\nedge 0 out") == d1
    assert parse_diagram("vertices 0") == EMPTY
    with pytest.raises(BothEndsFree) as err:
        parse_diagram("vertices 1\nedge in out")
    assert err.value.diagnostic.line == 2


def test_comments_blank_lines_and_bytes(d1):
    text = b"# header\n\nvertices 1   # one\nedge in 0\n  edge 0 out  \n"
    assert parse_diagram(text) == d1


def test_figure_file(fig1):
    assert fig1.line_counts() == (4, 4, 3)


@pytest.mark.parametrize(
    "text, line, column",
    [
        ("edge in 0", 1, 1),
        ("vertices 1\nvertices 1", 2, 1),
        ("vertices x", 1, 10),
        ("vertices 1\nedge 0", 2, 1),
        ("vertices 1\nedge out 0", 2, 6),
        ("vertices 1\nedge 0 in", 2, 8),
        ("vertices 1\nnode 0", 2, 1),
        ("vertices 2\nedge in 0\n   bogus", 3, 4),
        ("", 1, 1),
    ],
)
def test_syntax_errors_have_positions(text, line, column):
    with pytest.raises(ParseError) as err:
        parse_diagram(text)
    assert (err.value.line, err.value.column) == (line, column)


def test_definition_errors_point_at_lines():
    with pytest.raises(CycleDetected) as err:
        parse_diagram("vertices 2\nedge 0 1\nedge 1 0\n")
    assert err.value.diagnostic.line in (2, 3)
    with pytest.raises(IsolatedVertex) as err:
        parse_diagram("vertices 2\nedge in 0\n")
    assert err.value.diagnostic.line == 1
    with pytest.raises(IndexOutOfRange) as err:
        parse_diagram("vertices 1\nedge in 5\n")
    assert err.value.diagnostic.line == 2


def test_invalid_utf8_is_a_positioned_error():
    with pytest.raises(ParseError) as err:
        parse_diagram(b"vertices 1\nedge \xff 0\n")
    assert (err.value.line, err.value.column) == (2, 6)


def test_round_trip_on_corpus():
    with using_limits(max_vertices=8):
        for d in corpus(4):
            back = parse_diagram(format_diagram(d))
            assert back == d
            assert is_isomorphic(back, d)


def _dot_counts(text):
    nodes = edges = points = 0
    for line in text.splitlines():
        line = line.strip().rstrip(";")
        if "->" in line:
            edges += 1
        elif "[shape=point]" in line:
            points += 1
        elif line.startswith("v") and line[1:].isdigit():
            nodes += 1
    return nodes, edges, points


def test_dot_examples(d1):
    empty = render_dot(EMPTY)
    assert empty.startswith("digraph {") and empty.rstrip().endswith("}")
    assert "->" not in empty
    assert _dot_counts(render_dot(d1)) == (1, 2, 2)


def test_dot_counts_follow_line_partition():
    with using_limits(max_vertices=8):
        for d in corpus(4):
            inner, incoming, outgoing = d.line_counts()
            assert _dot_counts(render_dot(d)) == (d.vertex_count, len(d), incoming + outgoing)


def test_dot_is_canonical(chain2):
    assert render_dot(chain2) == render_dot(chain2.relabel([1, 0]))


def test_word_examples():
    assert parse_word("a ad") == [(1, ((A, 1), (AD, 1)))]
    assert parse_word("(a ad)^2") == [(1, ((A, 1), (AD, 1), (A, 1), (AD, 1)))]
    assert parse_word("2 ad^2 a - 1/2 e") == [(2, ((AD, 2), (A, 1))), (Fraction(-1, 2), ((E, 1),))]
    assert parse_word("") == [(1, ())]


def test_word_grammar_details():
    assert parse_word("a+ a") == parse_word("ad a") == parse_word("ad*a")
    assert parse_word("a+a") == [(2, ((A, 1),))]  # a sum, not an alias
    assert parse_word("a ad - a ad") == []
    assert parse_word("-(a - e)") == [(-1, ((A, 1),)), (1, ((E, 1),))]
    assert parse_word("3/6") == [(Fraction(1, 2), ())]
    assert parse_word("a^0") == [(1, ())]


@pytest.mark.parametrize("text", ["a ++", "(a", "a)", "b", "a^", "1/0", "a^x", "3/", "^2"])
def test_word_errors_have_positions(text):
    with pytest.raises(ParseError) as err:
        parse_word(text)
    assert err.value.line == 1 and 1 <= err.value.column <= len(text) + 1


def test_json_examples():
    obj = json.loads(serialize_sum(unit()))
    assert obj["terms"] == [{"coeff": "1", "diagram": {"vertices": 0, "edges": []}}]


def test_json_uses_sentinels(d1):
    assert diagram_to_json(d1) == {"vertices": 1, "edges": [["in", 0], [0, "out"]]}
    assert diagram_from_json(diagram_to_json(d1)) == d1


def test_json_round_trip_on_corpus_sums():
    diagrams = corpus(3)
    rng = random.Random(5)
    for d in diagrams:
        x = linear_combine([(Fraction(rng.randint(-9, 9), rng.randint(1, 5)), d), (1, rng.choice(diagrams))])
        assert deserialize_sum(serialize_sum(x)) == x
        t = coproduct(d)
        assert deserialize_sum(serialize_sum(t)) == t


def test_json_round_trip_on_polynomials():
    p = PBWPolynomial({(2, 1, 0): Fraction(-3, 4), (0, 0, 1): 2})
    h = HWPolynomial({(1, 1): 5})
    assert deserialize_sum(serialize_sum(p)) == p
    assert deserialize_sum(serialize_sum(h)) == h
    assert deserialize_sum(serialize_sum(TensorSum())) == TensorSum()


def test_equal_values_serialize_identically(d1, chain2):
    a = linear_combine([(1, d1), (2, chain2)])
    b = linear_combine([(2, chain2.relabel([1, 0])), (1, d1)])
    assert serialize_sum(a) == serialize_sum(b)
    assert format_sum_text(a) == format_sum_text(b)


def test_text_blocks_parse_back(d1):
    x = product(d1, d1)
    blocks = format_sum_text(x).split("\n\n")
    assert len(blocks) == 2
    assert linear_combine(
        (Fraction(b.splitlines()[0].split()[-1]), parse_diagram(b)) for b in blocks
    ) == x


_alphabet = st.sampled_from(list("vertices edge in out 0123456789#\n\t-+*/^()ade\x00\xff é"))


@settings(max_examples=500, deadline=None)
@given(st.text(_alphabet, max_size=60))
def test_fuzz_diagram_parser(text):
    try:
        d = parse_diagram(text)
    except ParseError as exc:
        assert exc.line >= 1 and exc.column >= 1
    except (BothEndsFree, CycleDetected, IsolatedVertex) as exc:
        assert exc.diagnostic.line >= 1
    except ValueError as exc:
        assert getattr(exc, "diagnostic", None) is not None
    else:
        assert isinstance(d, Diagram)


@settings(max_examples=500, deadline=None)
@given(st.binary(max_size=40))
def test_fuzz_word_parser_bytes(data):
    try:
        terms = parse_word(data)
    except ParseError as exc:
        assert exc.line >= 1 and exc.column >= 1
    else:
        assert all(isinstance(c, Fraction) for c, _ in terms)
