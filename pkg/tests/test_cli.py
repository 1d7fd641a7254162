import io
import json
import re

import pytest

from mdse.cli import EXIT_INVALID, EXIT_NUMERIC, EXIT_OK, EXIT_ORACLE, EXIT_USAGE, run_cli
from mdse.document import load_graph


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run_cli([str(a) for a in argv], stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_infer_financial(fixtures):
    code, out, _ = run("infer", fixtures / "financial.mdse", "--event", 3)
    assert code == EXIT_OK
    assert out.splitlines()[0] == "0.570000000"
    assert "full-probability" in out


def test_infer_and_mode(fixtures):
    code, out, _ = run("infer", fixtures / "minimal.mdse", "--event", 3, "--mode", "and")
    assert code == EXIT_OK
    assert out.splitlines()[0] == f"{0.5 * 0.9 * 0.2:.9f}"


def test_infer_checked_overflow(tmp_path):
    doc = {
        "version": 1,
        "groups": [{"role": "prime", "priors": [1.0]}],
        "events": [{"kind": "star"}, {"kind": "prime"}],
        "edges": [{"src": 0, "dst": 1, "weight": 1.0}, {"src": 0, "dst": 2, "weight": 1.0},
                  {"src": 1, "dst": 2, "weight": 1.0}],
    }
    path = tmp_path / "over.mdse"
    path.write_text(json.dumps(doc))
    code, out, _ = run("infer", path, "--event", 2)
    assert code == EXIT_OK and out.startswith("2.000000000")
    code, _, err = run("infer", path, "--event", 2, "--checked")
    assert code == EXIT_NUMERIC and "ValueExceedsOne" in err


def test_validate(fixtures):
    code, out, _ = run("validate", fixtures / "minimal.mdse", "--strict")
    assert code == EXIT_OK and out.startswith("PASSED")
    code, out, _ = run("validate", fixtures / "loop.mdse")
    assert code == EXIT_INVALID
    assert re.search(r"^loop\t", out, re.M)
    code, out, _ = run("validate", fixtures / "edge_modeling.mdse", "--strict")
    assert code == EXIT_INVALID and "min-edges" in out


def test_loop_file_rejected_by_other_commands(fixtures):
    code, _, err = run("infer", fixtures / "loop.mdse", "--event", 3)
    assert code == EXIT_INVALID and "edges[3]" in err


def test_posterior(fixtures):
    code, out, _ = run("posterior", fixtures / "reweighting.mdse", "--group", 0, "--event", 2)
    assert code == EXIT_OK
    assert "0.857142857" in out and "0.142857143" in out


def test_posterior_zero_evidence(tmp_path):
    doc = {"version": 1, "groups": [{"role": "star", "priors": [0.5, 0.5]}], "events": [{"kind": "star"}],
           "edges": [{"src": 0, "dst": 2, "weight": 0.0}, {"src": 1, "dst": 2, "weight": 0.0}]}
    path = tmp_path / "zero.mdse"
    path.write_text(json.dumps(doc))
    code, _, err = run("posterior", path, "--group", 0, "--event", 2)
    assert code == EXIT_NUMERIC and "ZeroEvidence" in err


def test_update(fixtures, tmp_path):
    out_path = tmp_path / "updated.mdse"
    code, _, _ = run("update", fixtures / "reweighting.mdse", "--group", 0, "--event", 2, "--out", out_path)
    assert code == EXIT_OK
    assert load_graph(out_path).group(0).priors == pytest.approx((6 / 7, 1 / 7), abs=1e-12)


def test_generate(tmp_path, fixtures):
    path = tmp_path / "g.mdse"
    code, out, _ = run("generate", "--seed", 7, "--out", path)
    assert code == EXIT_OK and "wrote" in out
    assert path.read_text() == (fixtures / "random-seed7.mdse").read_text()
    code, out, _ = run("generate", "--seed", 7, "--out", "-")
    assert out == path.read_text()


def test_generate_infeasible():
    code, _, err = run("generate", "--seed", 0, "--n-star", 0, "--n-prime", 1, "--groups-prime", 0,
                       "--strict", "--out", "-")
    assert code == EXIT_USAGE and "Infeasible" in err


def test_oracle_check(fixtures):
    code, out, _ = run("oracle-check", fixtures / "random-seed7.mdse", "--all")
    assert code == EXIT_OK
    delta = float(re.search(r"max_delta\t(\S+)", out).group(1))
    assert delta <= 1e-12
    assert out.rstrip().endswith("AGREE")


def test_oracle_disagreement_exit_code(fixtures, monkeypatch):
    import mdse.oracle as oracle

    real = oracle._expanded_mixture
    monkeypatch.setattr(oracle, "_expanded_mixture", lambda g, t: real(g, t) + 1e-6)
    code, out, _ = run("oracle-check", fixtures / "minimal.mdse")
    assert code == EXIT_ORACLE and "DISAGREE" in out


def test_bench(tmp_path):
    csv_path = tmp_path / "b.csv"
    code, out, _ = run("bench", "--sizes", "10:4:1.0,20:4:1.0,30:4:1.0,40:4:1.0,50:4:1.0",
                       "--repetitions", 3, "--csv", csv_path)
    assert code == EXIT_OK
    assert "exponent" in out
    assert len(csv_path.read_text().splitlines()) == 6


@pytest.mark.parametrize("argv", [[], ["infer"], ["nope"], ["infer", "x.mdse", "--event", "abc"]])
def test_usage_errors(argv):
    assert run(*argv)[0] == EXIT_USAGE


def test_missing_file():
    code, _, err = run("infer", "/nonexistent/file.mdse", "--event", 0)
    assert code == EXIT_USAGE and err
