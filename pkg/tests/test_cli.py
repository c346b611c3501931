import io
import json
import subprocess
import sys

import pytest

from reidemine import cli, corpus
from reidemine.codec import emit, parse
from reidemine.moves import Kind, apply, detect_sites
from reidemine.reduction import ConfluenceReport

from conftest import TREFOIL_PD


def run(argv, environ=None):
    out, err = io.StringIO(), io.StringIO()
    code = cli.main(argv, out, err, environ or {})
    return code, out.getvalue(), err.getvalue()


def _json_tail(text):
    # the JSON report is the last block starting with a bare "{" line
    i = 0 if text.startswith("{\n") else text.rindex("\n{\n") + 1
    return json.loads(text[i:])


@pytest.fixture
def files(tmp_path):
    t = parse(TREFOIL_PD)
    k = apply(t, detect_sites(t, {Kind.RI_PLUS})[2])
    paths = {
        "trefoil": TREFOIL_PD,
        "kinked": emit(k),
        "loop": "O 0",
        "bad": "X 1 1 2 2\nX 3 3 z 4",
        "clasp": emit(corpus.clasp_diagrams()["3_1+clasp"]),
        "seven": emit(corpus.knot("7_2")),
    }
    out = {}
    for name, text in paths.items():
        p = tmp_path / (name + ".pd")
        p.write_text(text + "\n")
        out[name] = str(p)
    return out


def test_validate(files):
    assert run(["validate", files["trefoil"]])[:2] == (
        0, "crossings=3 arcs=6 faces=5 components=1 ok\n")
    assert run(["validate", files["loop"]])[:2] == (0, "crossings=0 loops=1 ok\n")
    code, out, err = run(["validate", files["bad"]])
    assert code == 1 and out == ""
    assert "line 2" in err


def test_validate_missing_file(tmp_path):
    assert run(["validate", str(tmp_path / "nope.pd")])[0] == 1


def test_reduce(files):
    code, out, _ = run(["reduce", files["kinked"]])
    rep = _json_tail(out)
    assert code == 0 and rep["crossings"] == 3 and rep["steps"] == 1
    assert rep["minimal"] is True and rep["loop_flag"] is False
    code, out2, _ = run(["reduce", files["trefoil"]])
    rep2 = _json_tail(out2)
    assert rep2["steps"] == 0 and rep2["canonical"] == rep["canonical"]
    assert out2.split("{")[0] == out.split("{")[0]


def test_reduce_clasp_keeps_circle(files):
    code, out, _ = run(["reduce", files["clasp"]])
    assert "\nO " in out
    assert _json_tail(out)["loop_flag"] is True


def test_reduce_out_file(files, tmp_path):
    dest = tmp_path / "min.pd"
    code, out, _ = run(["reduce", files["kinked"], "--out", str(dest)])
    assert parse(dest.read_text()).n == 3
    assert out.startswith("{")


def test_confluence(files):
    code, out, _ = run(["confluence", files["kinked"]])
    rep = json.loads(out)
    assert code == 0 and len(rep["distinct_canonical_codes"]) == 1
    code, out, _ = run(["confluence", files["clasp"]])
    rep = json.loads(out)
    assert code == 0
    assert len(rep["distinct_canonical_codes"]) == 2
    assert rep["distinct_crossing_counts"] == [3] and rep["loop_flag"] is True


def test_confluence_mismatch_exit(files, monkeypatch):
    def fake(d, n, seed):
        rep = ConfluenceReport()
        rep.add(corpus.knot("3_1"))
        rep.add(corpus.knot("4_1"))
        return rep
    monkeypatch.setattr(cli, "confluence_check", fake)
    code, out, _ = run(["confluence", files["trefoil"], "--oracle-guard", "0"])
    assert code == 2


def test_confluence_sampled_only_warns(files):
    code, out, err = run(["confluence", files["trefoil"], "--oracle-guard", "2"])
    assert code == 0 and "warning" in err
    assert json.loads(out)["exhaustive"] is False


def test_explore(files):
    code, out, _ = run(["explore", files["trefoil"]])
    rep = _json_tail(out)
    assert code == 0 and rep["r_subset_p"] is True and rep["violations"] == []
    assert out.startswith("digraph classes {")


def test_explore_single_node(files):
    code, out, _ = run(["explore", files["trefoil"], "--radius", "0", "--surplus", "0"])
    dot = out[:out.index("}\n") + 1]
    assert dot.count("[label=") == 1 and "->" not in dot


def test_explore_seven(files):
    code, out, _ = run(["explore", files["seven"]])
    rep = _json_tail(out)
    assert code == 0 and rep["nodes"] >= 1 and rep["r_subset_p"] is True


def test_explore_reduces_first(files):
    code, out, err = run(["explore", files["kinked"], "--surplus", "0"])
    assert code == 0 and _json_tail(out)["reduced_first"] is True
    assert "not minimal" in err


def test_explore_too_large(files):
    code, _, err = run(["explore", files["seven"], "--surplus", "4"])
    assert code == 3 and "guard" in err


def test_bounds_enforced(files):
    with pytest.raises(SystemExit):
        run(["explore", files["trefoil"], "--surplus", "5"])
    with pytest.raises(SystemExit):
        run(["confluence", files["trefoil"], "--runs", "0"])


def test_seed_env_override(files):
    _, out, _ = run(["confluence", files["trefoil"], "--seed", "4"], {"REIDEMINE_SEED": "17"})
    assert json.loads(out)["seed"] == 17
    _, out, _ = run(["confluence", files["trefoil"], "--seed", "4"])
    assert json.loads(out)["seed"] == 4


def test_corpus(tmp_path):
    d = tmp_path / "c"
    assert run(["builtin", str(d)])[0] == 0
    code, out, _ = run(["corpus", str(d)])
    assert code == 0 and out.strip().endswith("failed=0")
    (d / "zz_bad.pd").write_text("X 1 2 3 4\n")
    code, out, _ = run(["corpus", str(d)])
    assert code != 0 and "zz_bad.pd FAIL" in out


def test_corpus_empty(tmp_path):
    code, out, _ = run(["corpus", str(tmp_path)])
    assert code == 0 and out == "total=0 failed=0\n"


def test_identical_invocations_are_byte_identical(files):
    argv = [sys.executable, "-m", "reidemine", "explore", files["trefoil"]]
    a = subprocess.run(argv, capture_output=True)
    b = subprocess.run(argv, capture_output=True)
    assert a.returncode == 0 and a.stdout == b.stdout and a.stdout
