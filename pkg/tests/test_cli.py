import json

import pytest

from gorcheck.cli import main
from gorcheck.construct import cert_from_dict, replay_matches
from gorcheck.graph import parse_graph

K4 = "a b\na c\na d\nb c\nb d\nc d\n"
C3 = "1 2\n2 3\n3 1\n"
C5_CHORD = "1 2\n2 3\n3 4\n4 5\n5 1\n1 3\n"
DOUBLED_C4 = "0 1 2\n1 2 2\n2 3 2\n0 3 2\n"
G5 = "a b\nb c\nc d\nd a\na x\nx c\n"  # K4-e with edge ac subdivided


@pytest.fixture
def files(tmp_path):
    out = {}
    for name, text in [
        ("k4", K4), ("c3", C3), ("c5chord", C5_CHORD),
        ("dc4", DOUBLED_C4), ("g5", G5),
    ]:
        p = tmp_path / f"{name}.txt"
        p.write_text(text)
        out[name] = str(p)
    out["dir"] = tmp_path
    return out


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_check_base_k4(files, capsys):
    code, out = run(capsys, "check", "base", files["k4"])
    doc = json.loads(out)
    assert code == 0
    assert (doc["status"], doc["delta"]) == ("gorenstein", 2)
    assert doc["schema"] == "gorcheck.verdict/1"


def test_check_indep_doubled_c4(files, capsys):
    code, out = run(capsys, "check", "indep", files["dc4"])
    doc = json.loads(out)
    assert code == 0
    assert (doc["status"], doc["delta"], doc["m"]) == ("gorenstein", 3, 2)


def test_check_base_multigraph_typed_error(files, capsys):
    code, _ = run(capsys, "check", "base", files["dc4"])
    assert code == 4


def test_parse_error_exit(files, capsys, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("oops\n")
    code, _ = run(capsys, "check", "base", str(bad))
    assert code == 1


def test_oracle_c3(files, capsys):
    code, out = run(capsys, "oracle", "base", files["c3"], "--hstar")
    doc = json.loads(out)
    assert code == 0
    assert doc["delta"] == 3 and doc["witness_point"] == [2, 2, 2]
    assert doc["polytope"]["facets"] == 3
    assert doc["hstar"] == {"coefficients": [1], "palindromic": True}


def test_oracle_c5_chord_hstar(files, capsys):
    code, out = run(capsys, "oracle", "base", files["c5chord"], "--hstar", "--normality", "2")
    doc = json.loads(out)
    assert code == 0
    assert doc["status"] == "not_gorenstein"
    assert doc["hstar"]["palindromic"] is False
    assert doc["normality"] == "pass"


def test_certify_g5(files, capsys):
    code, out = run(capsys, "certify", "base", files["g5"])
    doc = json.loads(out)
    assert code == 0 and doc["delta"] == 3
    root = doc["certificates"][0]["root"]
    assert root["op"] == "subdivide" and root["child"]["op"] == "glue"
    assert doc["certificates"][0]["replay_matched"] is True
    # the embedded certificate replays back to the input graph
    cert = cert_from_dict(root)
    assert replay_matches(cert, parse_graph(G5))[0]


def test_certify_negative_exit3(files, capsys):
    code, out = run(capsys, "certify", "base", files["c5chord"])
    doc = json.loads(out)
    assert code == 3
    # labels parsed from files are strings
    assert doc["witness"]["flat"] == ["1", "3", "4", "5"]


def test_certify_indep(files, capsys):
    code, out = run(capsys, "certify", "indep", files["dc4"])
    doc = json.loads(out)
    assert code == 0
    assert doc["certificates"][0]["root"]["op"] == "blow_up"


def test_generate_glue(files, capsys, tmp_path):
    out_path = tmp_path / "k4e.txt"
    code, _ = run(
        capsys, "generate", "glue", files["c3"], files["c3"],
        "--delta", "3", "-o", str(out_path),
    )
    assert code == 0
    G = parse_graph(out_path.read_text())
    assert (G.n, G.m) == (4, 5)


def test_generate_seed_and_collide(files, capsys, tmp_path):
    c5 = tmp_path / "c5.txt"
    code, out = run(capsys, "generate", "seed", "--cycle", "5", "-o", str(c5))
    assert code == 0 and parse_graph(c5.read_text()).n == 5
    code, out = run(capsys, "generate", "collide", files["k4"], files["k4"])
    G = parse_graph(out)
    assert (G.n, G.m) == (6, 10)


def test_dot_output(files, capsys, tmp_path):
    dot = tmp_path / "k4.dot"
    code, _ = run(capsys, "check", "base", files["k4"], "--dot", str(dot))
    assert code == 0
    text = dot.read_text()
    assert text.startswith("graph G {") and '"a" -- "b"' in text


def test_sweep_small(files, capsys):
    code, out = run(capsys, "sweep", "--max-vertices", "4", "--kind", "base",
                    "--cross-validate")
    doc = json.loads(out)
    assert code == 0
    assert doc["graphs"] == 5 and doc["mismatches"] == 0
    # census: K2 wildcard, C3@3, C4@4, K4-e@3, K4@2
    assert doc["census_by_delta"] == {"2": 1, "3": 2, "4": 1, "any": 1}


def test_sweep_jobs_deterministic(files, capsys):
    _, out1 = run(capsys, "sweep", "--max-vertices", "4", "--kind", "base")
    _, out2 = run(capsys, "sweep", "--max-vertices", "4", "--kind", "base",
                  "--jobs", "2")
    assert json.loads(out1) == json.loads(out2)


def test_sweep_guard(files, capsys):
    code, _ = run(capsys, "sweep", "--max-vertices", "7", "--cross-validate")
    assert code == 2
