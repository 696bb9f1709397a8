import json
import re

import pytest

from hallmark.cli import main
from hallmark.groupfile import canonical_lines, format_group_file, parse_group_file


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def verdicts(text):
    return dict(re.findall(r"^(\w+): (Yes|No|NecessaryOnly)$", text, re.M))


# classify ---------------------------------------------------------------------

def test_classify_psl27(capsys):
    code, out, _ = run(capsys, "classify", "--factors", "PSL(2,7)", "--pi", "3")
    assert code == 0
    v = verdicts(out)
    assert v["hatU"] == "No" and v["U"] == "NecessaryOnly"
    assert "U.necessity: " in out and "blocked_by=PSL(2,7)" in out


def test_classify_soluble(capsys):
    code, out, _ = run(capsys, "classify", "--factors", "C2,C3", "--pi", "2", "--format", "json")
    d = json.loads(out)
    assert code == 0 and d["pi_soluble"] is True
    assert {c["verdict"] for c in d["classes"]} == {"Yes"}


def test_classify_psu331(capsys):
    _, out, _ = run(capsys, "classify", "--factors", "PSU(3,31)", "--pi", "3")
    v = verdicts(out)
    assert v["hatUstar"] == "Yes" and v["hatVstar"] == "Yes"


@pytest.mark.parametrize("factors, pi", [
    ("PSL(2,7)", "3"), ("C2,PSL(2,7)", "3"), ("A5,PSL(2,31)", "2,3"), ("PSU(3,4)", "5,13"),
])
def test_text_and_json_agree(capsys, factors, pi):
    _, text, _ = run(capsys, "classify", "--factors", factors, "--pi", pi)
    _, js, _ = run(capsys, "classify", "--factors", factors, "--pi", pi, "--format", "json")
    d = json.loads(js)
    assert verdicts(text) == {c["class"]: c["verdict"] for c in d["classes"]}
    for c in d["classes"]:
        assert set(c) == {"class", "verdict", "citations", "flags"}
        for cit in c["citations"]:
            assert set(cit) == {"rule", "factor", "statement"}
            assert cit["statement"] in text


@pytest.mark.parametrize("argv", [
    ["classify", "--factors", "PSL(2,7", "--pi", "3"],
    ["classify", "--factors", "C6", "--pi", "3"],
    ["classify", "--factors", "A5", "--pi", ""],
    ["classify", "--factors", "A5", "--pi", "4"],
])
def test_classify_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("error:")


# oracle -----------------------------------------------------------------------

def test_oracle_psl27(capsys):
    code, out, _ = run(capsys, "oracle", "--builtin", "PSL(2,7)", "--pi", "2,3", "--check", "all")
    assert code == 0
    assert "E{2,3}: yes (witness order 24)" in out
    assert "C{2,3}: no (2 classes)" in out
    assert "D{2,3}: no" in out
    assert re.search(r"^  gen \(", out, re.M)


@pytest.mark.parametrize("group, pi", [("PGL(2,7)", "2,3"), ("A5", "2,5")])
def test_oracle_no_hall(capsys, group, pi):
    code, out, _ = run(capsys, "oracle", "--builtin", group, "--pi", pi, "--check", "E")
    assert code == 0 and re.search(r"^E\{.*\}: no$", out, re.M)


def test_oracle_scope(capsys):
    code, _, err = run(capsys, "oracle", "--builtin", "PSL(2,31)", "--pi", "2,3,5", "--check", "C")
    assert code == 4 and "out of scope" in err
    code, out, _ = run(capsys, "oracle", "--builtin", "PSL(2,31)", "--pi", "3,5,31", "--check", "E")
    assert code == 0 and "witness order 465" in out


def test_oracle_resource_cap(capsys, monkeypatch):
    monkeypatch.setenv("HALLMARK_MAX_ELEMENTS", "100")
    code, _, err = run(capsys, "oracle", "--builtin", "PSL(2,7)", "--pi", "2,3")
    assert code == 3 and "resource limit" in err


def test_oracle_unknown_builtin(capsys):
    code, _, err = run(capsys, "oracle", "--builtin", "psl(2,7)", "--pi", "2")
    assert code == 2


def test_group_file_round_trip(capsys, tmp_path):
    path = tmp_path / "psl27.txt"
    code, _, _ = run(capsys, "export", "--builtin", "PSL(2,7)", "--output", str(path))
    assert code == 0
    text = path.read_text()
    G = parse_group_file(text)
    assert G.order() == 168
    assert canonical_lines(format_group_file(G)) == canonical_lines(text)
    code, out, _ = run(capsys, "oracle", "--group-file", str(path), "--pi", "3,7", "--check", "E")
    assert code == 0 and "witness order 21" in out


def test_hand_written_group_file(capsys, tmp_path):
    text = "# A4 on four points\ndegree 4\n  gen (1 2 3)   # a 3-cycle\ngen (1 2)(3 4)\n"
    assert canonical_lines(format_group_file(parse_group_file(text))) == canonical_lines(text)
    path = tmp_path / "a4.txt"
    path.write_text(text)
    code, out, _ = run(capsys, "oracle", "--group-file", str(path), "--pi", "3", "--check", "all")
    assert code == 0 and "group a4 order 12" in out


@pytest.mark.parametrize("text", [
    "gen (1 2)\ndegree 2\n", "degree 3\ngen (1 4)\n", "degree 3\ngen (1 2)(2 3)\n", "degree x\n", "nothing\n",
])
def test_bad_group_files(capsys, tmp_path, text):
    path = tmp_path / "bad.txt"
    path.write_text(text)
    code, _, err = run(capsys, "oracle", "--group-file", str(path), "--pi", "2")
    assert code == 2 and err.startswith("error:")


# crosscheck -------------------------------------------------------------------

def test_crosscheck_tampered_golden(capsys, tmp_path):
    from hallmark.oracle import golden_path

    d = json.loads(golden_path().read_text())
    d["rows"]["PGL(2,7)|{2,3}|E"] = True
    bad = tmp_path / "golden.json"
    bad.write_text(json.dumps(d))
    code, out, _ = run(capsys, "crosscheck", "--max-pi", "1", "--golden", str(bad))
    assert code == 1
    assert "DISAGREE PGL(2,7)|{2,3}|E" in out


def test_crosscheck_unreadable_golden(capsys, tmp_path):
    bad = tmp_path / "golden.json"
    bad.write_text("{")
    code, _, _ = run(capsys, "crosscheck", "--max-pi", "1", "--golden", str(bad))
    assert code == 1


def test_crosscheck_report_file_is_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for p in (a, b):
        code, _, _ = run(capsys, "crosscheck", "--max-pi", "1", "--format", "json", "--report", str(p))
        assert code == 0
    assert a.read_text() == b.read_text()
    d = json.loads(a.read_text())
    keys = {f"{r['group']}|{{{','.join(map(str, r['pi']))}}}|{r['check']}" for r in d["rows"]}
    assert {"PSL(2,7)|{2,3}|E", "PSL(2,7)|{3,7}|E", "PGL(2,7)|{2,3}|E"} <= keys


def test_examples_command(capsys):
    code, out, _ = run(capsys, "examples")
    assert code == 0
    assert "FAIL" not in out and "PASS" in out


# arith ------------------------------------------------------------------------

def test_arith_order(capsys):
    assert run(capsys, "arith", "order", "--q", "3", "--r", "13")[:2] == (0, "3\n")


def test_arith_two_power(capsys):
    code, out, _ = run(capsys, "arith", "two-power", "--sign", "minus", "--bound", "1000000")
    lines = out.strip().splitlines()
    assert code == 0
    assert "3^2 - 1 = 2^3" in lines
    assert lines[-1].startswith("conforms")


def test_arith_three_power(capsys):
    code, out, _ = run(capsys, "arith", "three-power", "--sign", "plus", "--bound", "1000000")
    assert code == 0 and out.strip().splitlines()[-1].startswith("conforms")


def test_arith_mersenne(capsys):
    assert run(capsys, "arith", "mersenne", "--p", "8191")[:2] == (0, "f=13\n")
    assert run(capsys, "arith", "mersenne", "--p", "15")[:2] == (0, "not a Mersenne prime\n")


@pytest.mark.parametrize("argv", [
    ["arith", "order", "--q", "13", "--r", "13"],
    ["arith", "two-power", "--sign", "sideways", "--bound", "10"],
    ["arith", "order", "--q", "3", "--r", "12"],
])
def test_arith_domain_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


# simple -----------------------------------------------------------------------

@pytest.mark.parametrize("group, pi, verdict", [
    ("PSU(3,4)", "3", "Yes"), ("PSU(3,4)", "5", "No"), ("A5", "3", "No"),
])
def test_simple(capsys, group, pi, verdict):
    code, out, _ = run(capsys, "simple", "--group", group, "--pi", pi)
    assert code == 0 and out.splitlines()[0].endswith(verdict)


@pytest.mark.parametrize("group, pi", [("A5", "2"), ("A5", "3,5"), ("C5", "5")])
def test_simple_scope(capsys, group, pi):
    code, _, err = run(capsys, "simple", "--group", group, "--pi", pi)
    assert code == 4 and "classify" in err


def test_exit_codes_are_contained(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["classify"])
    assert exc.value.code == 2
