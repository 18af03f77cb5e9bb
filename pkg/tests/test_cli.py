import hashlib
import json

import pytest

from abshift.cli import dispatch

FIG = ["--alpha", "2/7", "--beta", "7/2"]


def run(capsys, *argv):
    rc = dispatch(list(argv))
    cap = capsys.readouterr()
    return rc, cap.out, cap.err


def test_expand_plain_digits(capsys):
    rc, out, _ = run(capsys, "expand", *FIG, "--which", "one", "--digits", "10")
    assert rc == 0
    assert out == "3,3,0,1,2,3,0,3,0,2\n"


def test_expand_json_fields(capsys):
    rc, out, _ = run(
        capsys, "expand", *FIG, "--which", "point", "--point", "1/2",
        "--digits", "3", "--json",
    )
    assert rc == 0
    doc = json.loads(out)
    assert doc["alpha"] == "2/7" and doc["beta"] == "7/2"
    assert doc["digits"] == [2, 0, 1]
    assert doc["orbit"] == ["1/2", "1/28", "23/56"]


def test_expand_is_byte_deterministic(capsys):
    args = ["expand", *FIG, "--which", "one", "--digits", "30", "--json"]
    rc1, out1, _ = run(capsys, *args)
    rc2, out2, _ = run(capsys, *args)
    assert rc1 == rc2 == 0
    assert out1 == out2


def test_decimal_parameters_rejected(capsys):
    rc, out, err = run(capsys, "lang", "check", "--alpha", "0.28",
                       "--beta", "7/2", "--word", "1")
    assert rc == 1
    assert out == ""
    assert "decimal" in err


def test_usage_error_exit_code(capsys):
    assert dispatch(["frobnicate"]) == 2
    capsys.readouterr()
    assert dispatch([]) == 2
    capsys.readouterr()
    # missing a required option inside a subcommand is also usage
    assert dispatch(["expand", "--which", "one", "--digits", "5"]) == 2
    capsys.readouterr()


def test_version_flag(capsys):
    assert dispatch(["--version"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("abshift ")


def test_lang_check_and_count(capsys):
    rc, out, _ = run(capsys, "lang", "check", *FIG, "--word", "3,3,0,1")
    assert (rc, out) == (0, "true\n")
    rc, out, _ = run(capsys, "lang", "check", *FIG, "--word", "3,3,3")
    assert (rc, out) == (0, "false\n")
    rc, out, _ = run(capsys, "lang", "count", *FIG, "--length", "2")
    assert (rc, out) == (0, "15\n")


def test_lang_enum_csv(capsys):
    rc, out, _ = run(capsys, "lang", "enum", *FIG, "--length", "1", "--csv")
    assert rc == 0
    assert out == 'word\n"0"\n"1"\n"2"\n"3"\n'


def test_lang_malformed_word(capsys):
    rc, _, err = run(capsys, "lang", "check", *FIG, "--word", "3,x")
    assert rc == 1 and "malformed" in err


def test_graph_dot_file_and_stats(capsys, tmp_path):
    dot = tmp_path / "g.dot"
    rc, out, _ = run(capsys, "graph", *FIG, "--depth", "4",
                     "--dot", str(dot), "--stats")
    assert rc == 0
    doc = json.loads(out)
    assert doc["depth"] == 4 and doc["vertices"] >= 5
    text = dot.read_text()
    assert text.startswith("digraph follower {") and text.endswith("}\n")


def test_graph_default_prints_dot(capsys):
    rc, out, _ = run(capsys, "graph", *FIG, "--depth", "2")
    assert rc == 0 and out.startswith("digraph follower {")


def test_surgery_ops(capsys):
    rc, out, _ = run(capsys, "surgery", "hat", *FIG, "--word", "1,3")
    assert (rc, out) == (0, "1,2\n")
    rc, out, _ = run(capsys, "surgery", "g", *FIG, "--word", "3,3")
    assert (rc, out) == (0, "0\n")
    rc, out, _ = run(capsys, "surgery", "tilde", *FIG, "--word", "3", "--json")
    doc = json.loads(out)
    assert doc == {"word": [3], "op": "tilde", "result": [2]}


def test_surgery_check_json_report(capsys):
    rc, out, _ = run(capsys, "surgery", "check", *FIG, "--max-n", "5")
    assert rc == 0
    doc = json.loads(out)
    assert doc["all_ok"] is True
    assert doc["max_n"] == 5
    assert doc["checks"]["tilde_multiplicity"]["bound"] == 7


def test_main_mode_refusals(capsys):
    off = ["--alpha", "1/4", "--beta", "5/2"]
    for argv in (
        ["surgery", "hat", *off, "--word", "1"],
        ["gibbs", *off, "--word", "1", "--n", "2", "--epsilon", "0.1"],
        ["pressure", *off, "--restricted", "--m", "3"],
    ):
        rc = dispatch(argv)
        err = capsys.readouterr().err
        assert rc == 1
        assert "main mode" in err


def test_criterion_csv_columns(capsys, tmp_path):
    csv_path = tmp_path / "series.csv"
    rc, out, _ = run(capsys, "criterion", *FIG, "--horizon", "8",
                     "--csv", str(csv_path))
    assert rc == 0
    assert "last quartile max ratio:" in out
    lines = csv_path.read_text().splitlines()
    assert lines[0] == "n,zbar,ratio_num,ratio_den"
    assert lines[1] == "1,0,0,1"
    assert lines[2] == "2,2,1,1"
    assert len(lines) == 9


def test_pressure_json(capsys):
    rc, out, _ = run(capsys, "pressure", *FIG, "--n", "3")
    assert rc == 0
    doc = json.loads(out)
    assert doc["method"] == "en_sum" and doc["n_or_m"] == 3
    assert doc["term_count"] == 7976  # words of length 2n+1 = 7
    assert 1.2 < doc["value"] < 1.4


def test_pressure_restricted_with_bracket(capsys):
    rc, out, err = run(capsys, "pressure", *FIG, "--restricted", "--m", "7",
                       "--epsilon", "0.2")
    assert rc == 0
    doc = json.loads(out)
    assert doc["method"] == "restricted"
    assert "bracket" in doc and "within" in doc["bracket"]
    assert "non-constructive" in err


def test_gibbs_with_potential_file(capsys, tmp_path):
    phi_path = tmp_path / "phi.json"
    phi_path.write_text(json.dumps({"range": 2, "table": {"0,1": 0.4}}))
    rc, out, _ = run(capsys, "gibbs", *FIG, "--word", "3,3", "--n", "4",
                     "--epsilon", "0.1", "--phi", str(phi_path))
    assert rc == 0
    doc = json.loads(out)
    assert doc["word"] == [3, 3] and doc["m"] == 2 and doc["n"] == 4
    assert isinstance(doc["within_bounds"], bool)
    assert doc["K_minus"] < doc["K_plus"]


def test_manifest_records_output_hash(capsys, tmp_path):
    man = tmp_path / "run.json"
    rc, out, _ = run(capsys, "lang", "count", *FIG, "--length", "3",
                     "--manifest", str(man))
    assert rc == 0
    doc = json.loads(man.read_text())
    assert doc["subcommand"] == "lang"
    assert doc["tool_version"]
    assert doc["output_sha256"] == hashlib.sha256(out.encode()).hexdigest()
