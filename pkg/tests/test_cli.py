import json
import subprocess
import sys

import pytest

from hwhopf import cli, get_limits
from hwhopf.checks import CheckResult


def run(capsys, *argv, env=None):
    code = cli.main(list(map(str, argv)), environ=env or {})
    out, err = capsys.readouterr()
    return code, out, err


def test_normal_order_examples(capsys):
    assert run(capsys, "normal-order", "a ad") == (0, "ad a + e\n", "")
    assert run(capsys, "normal-order", "--project", "(a ad)^2")[1] == "ad^2 a^2 + 3 ad a + 1\n"
    assert run(capsys, "normal-order", "")[1] == "1\n"
    assert run(capsys, "normal-order", "--oracle", "(a ad)^3 - 2/3 e a+ a")[0] == 0


def test_normal_order_json(capsys):
    code, out, _ = run(capsys, "normal-order", "--output", "json", "a ad")
    assert json.loads(out)["terms"] == [
        {"coeff": "1", "monomial": [1, 1, 0]},
        {"coeff": "1", "monomial": [0, 0, 1]},
    ]


def test_parse_errors_exit_2(capsys, diagram_dir, tmp_path):
    code, _, err = run(capsys, "normal-order", "a ++")
    assert code == 2 and "1:4" in err
    bad = tmp_path / "bad.hwd"
    bad.write_text("vertices 1\nedge in out\n")
    code, _, err = run(capsys, "phi", bad)
    assert code == 2 and "line 2" in err
    assert run(capsys, "phi", tmp_path / "missing.hwd")[0] == 2


def test_oracle_mismatch_exits_3(capsys, monkeypatch):
    from hwhopf.envelope import PBWPolynomial

    monkeypatch.setattr(cli, "word_polynomial", lambda w: PBWPolynomial.zero())
    code, _, err = run(capsys, "normal-order", "--oracle", "a ad")
    assert code == 3 and "mismatch" in err


def test_product_examples(capsys, diagram_dir):
    code, out, _ = run(capsys, "product", diagram_dir / "d1.hwd", diagram_dir / "d1.hwd")
    assert code == 0
    assert [l for l in out.splitlines() if l.startswith("# coeff")] == ["# coeff 1", "# coeff 1"]
    code, out, _ = run(capsys, "product", diagram_dir / "d1.hwd", diagram_dir / "empty.hwd")
    assert out == "# coeff 1\nvertices 1\nedge in 0\nedge 0 out\n"


def test_product_of_stars_collects_seven_matchings(capsys, diagram_dir):
    code, out, _ = run(capsys, "product", "--output", "json", diagram_dir / "star_in2.hwd", diagram_dir / "star_out2.hwd")
    coeffs = sorted(int(t["coeff"]) for t in json.loads(out)["terms"])
    assert coeffs == [1, 2, 4] and sum(coeffs) == 7


def test_product_along_one_matching(capsys, diagram_dir):
    code, out, _ = run(capsys, "product", "--matching", "0:0", diagram_dir / "d1.hwd", diagram_dir / "d1.hwd")
    assert code == 0
    assert out == "# coeff 1\nvertices 2\nedge in 1\nedge 0 out\nedge 1 0\n"
    assert run(capsys, "product", "--matching", "0:1", diagram_dir / "d1.hwd", diagram_dir / "d1.hwd")[0] == 2
    assert run(capsys, "product", "--matching", "zero", diagram_dir / "d1.hwd", diagram_dir / "d1.hwd")[0] == 2


def test_dot_output_for_sums(capsys, diagram_dir):
    code, out, _ = run(capsys, "product", "--output", "dot", diagram_dir / "d1.hwd", diagram_dir / "d1.hwd")
    assert out.count("digraph t") == 2 and out.count("// coeff 1") == 2


def test_hopf_commands(capsys, diagram_dir):
    code, out, _ = run(capsys, "coproduct", "--output", "json", diagram_dir / "d_up.hwd")
    assert len(json.loads(out)["terms"]) == 2
    code, out, _ = run(capsys, "antipode", diagram_dir / "d1.hwd")
    coeffs = [l.split()[-1] for l in out.splitlines() if l.startswith("# coeff")]
    assert sorted(coeffs) == ["-1", "1", "2"]
    assert run(capsys, "counit", diagram_dir / "empty.hwd")[1] == "1\n"
    assert run(capsys, "counit", diagram_dir / "d1.hwd")[1] == "0\n"


def test_phi_commands(capsys, diagram_dir):
    assert run(capsys, "phi", diagram_dir / "fig1.hwd")[1] == "ad^3 a^4 e^4\n"
    assert run(capsys, "phi", "--bar", diagram_dir / "fig1.hwd")[1] == "ad^3 a^4\n"
    assert run(capsys, "phi", diagram_dir / "empty.hwd")[1] == "1\n"


def test_size_guard_exits_4(capsys, diagram_dir):
    code, _, err = run(capsys, "antipode", diagram_dir / "fig1.hwd")
    assert code == 4 and "antipode_edge_limit" in err
    code, *_ = run(capsys, "product", "--max-edges", "5", diagram_dir / "fig1.hwd", diagram_dir / "d1.hwd")
    assert code == 4


def test_dot_and_corpus_commands(capsys, diagram_dir):
    out = run(capsys, "dot", diagram_dir / "d1.hwd")[1]
    assert out.startswith("digraph {") and out.count("->") == 2
    code, out, _ = run(capsys, "corpus", "2", "--output", "json")
    assert len(json.loads(out)) == 1 + 3 + 17
    code, out, _ = run(capsys, "corpus", "1")
    assert out.count("vertices") == 4


def test_count_command(capsys, diagram_dir):
    code, out, _ = run(capsys, "count", "matchings", diagram_dir / "star_in2.hwd", diagram_dir / "star_out2.hwd")
    assert out.splitlines() == [
        "size=0 enumerated=1 formula=1",
        "size=1 enumerated=4 formula=4",
        "size=2 enumerated=2 formula=2",
    ]
    code, out, _ = run(capsys, "count", "decompositions", "--output", "json", diagram_dir / "fig1.hwd")
    rows = json.loads(out)
    assert rows[-1] == {"total": 2 ** 11}
    assert {"outgoing": 1, "incoming": 2, "inner": 0, "pairs": 18} in rows
    code, out, _ = run(capsys, "count", "classes", "3")
    assert out.splitlines()[-1] == "lines=3 classes=89"
    with pytest.raises(SystemExit) as exc:
        cli.main(["count", "classes"], environ={})
    assert exc.value.code == 2


def test_check_suites(capsys):
    code, out, _ = run(capsys, "check", "algebra", "--max-edges", "1")
    assert code == 0 and "PASS algebra/associativity" in out and out.rstrip().endswith("cases")
    code, out, _ = run(capsys, "check", "counting", "--max-edges", "3")
    assert code == 0 and "decomposition-counts" in out


def test_check_failure_exits_1(capsys, monkeypatch):
    def broken(suite, edges=None):
        r = CheckResult("algebra", "broken", cases=1)
        r.fail("vertices 1 | edge in 0")
        return [r]

    monkeypatch.setattr(cli.checks, "run_suite", broken)
    code, out, _ = run(capsys, "check", "algebra")
    assert code == 1 and "FAIL algebra/broken" in out and "vertices 1 | edge in 0" in out


def test_config_precedence(tmp_path):
    conf = tmp_path / "hw.conf"
    conf.write_text("# limits\nmax_edges = 20\nmax_vertices=15\noutput=json\n")
    parser = cli.build_parser()
    args = parser.parse_args(["phi", "x.hwd", "--config", str(conf)])
    c = cli.resolve_config(args, {})
    assert (c.limits.max_edges, c.limits.max_vertices, c.output) == (20, 15, "json")
    c = cli.resolve_config(args, {"HWHOPF_MAX_EDGES": "30", "HWHOPF_OUTPUT": "text"})
    assert (c.limits.max_edges, c.limits.max_vertices, c.output) == (30, 15, "text")
    args = parser.parse_args(["phi", "x.hwd", "--config", str(conf), "--max-edges", "40"])
    c = cli.resolve_config(args, {"HWHOPF_MAX_EDGES": "30"})
    assert c.limits.max_edges == 40
    args = parser.parse_args(["phi", "x.hwd"])
    c = cli.resolve_config(args, {"HWHOPF_CONFIG": str(conf)})
    assert c.limits.max_edges == 20


def test_defaults():
    c = cli.resolve_config(cli.build_parser().parse_args(["phi", "x.hwd"]), {})
    assert (c.limits.max_edges, c.limits.max_vertices, c.limits.antipode_edge_limit, c.output) == (12, 10, 8, "text")


def test_bad_configuration_exits_2(capsys, tmp_path, diagram_dir):
    conf = tmp_path / "bad.conf"
    conf.write_text("max_edges = -1\n")
    assert run(capsys, "phi", diagram_dir / "d1.hwd", "--config", conf)[0] == 2
    conf.write_text("colour = blue\n")
    assert run(capsys, "phi", diagram_dir / "d1.hwd", "--config", conf)[0] == 2
    assert run(capsys, "phi", diagram_dir / "d1.hwd", env={"HWHOPF_MAX_EDGES": "lots"})[0] == 2
    with pytest.raises(SystemExit) as exc:
        cli.main(["phi", "--max-edges", "0", "x.hwd"], environ={})
    assert exc.value.code == 2


def test_limits_are_restored_after_a_command(capsys, diagram_dir):
    before = get_limits()
    run(capsys, "phi", diagram_dir / "d1.hwd", "--max-vertices", "30")
    assert get_limits() == before


def test_outputs_are_byte_identical(capsys, diagram_dir):
    first = run(capsys, "antipode", "--output", "json", diagram_dir / "d1.hwd")[1]
    second = run(capsys, "antipode", "--output", "json", diagram_dir / "d1.hwd")[1]
    assert first == second


def test_module_entry_point(diagram_dir):
    done = subprocess.run(
        [sys.executable, "-m", "hwhopf", "phi", str(diagram_dir / "fig1.hwd")],
        capture_output=True, text=True, check=False,
    )
    assert done.returncode == 0 and done.stdout == "ad^3 a^4 e^4\n"
