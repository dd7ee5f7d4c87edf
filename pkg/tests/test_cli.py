import json
import subprocess
import sys

import pytest

from surfbraid.cli import EXIT_EXHAUSTED, EXIT_INVALID, EXIT_OK, main


def run(capsys, *argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        import io
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv, **kw):
    code, out, err = run(capsys, *argv, **kw)
    return code, (json.loads(out) if out else None), err


def test_present_sphere(capsys):
    code, doc, _ = run_json(capsys, "present", "--surface", "sphere:2", "--strands", "2")
    assert code == EXIT_OK
    assert len(doc["generators"]) == 3


def test_present_quotient_and_pi1(capsys):
    _, q, _ = run_json(capsys, "present", "--surface", "o:1,1", "--strands", "2", "--quotient")
    _, b, _ = run_json(capsys, "present", "--surface", "o:1,1", "--strands", "2")
    assert len(q["generators"]) < len(b["generators"])
    _, pi, _ = run_json(capsys, "present", "--surface", "o:2,1", "--strands", "1", "--pi1")
    assert len(pi["generators"]) == 4 and pi["relators"] == []
    _, pi, _ = run_json(capsys, "present", "--surface", "n:2,1", "--strands", "1", "--pi1")
    assert len(pi["generators"]) == 3 and len(pi["relators"]) == 1


def test_classify_sphere_three(capsys):
    code, doc, _ = run_json(capsys, "classify", "--surface", "o:0,0", "--strands", "3")
    assert code == EXIT_OK and doc["verdict"] == "No"
    assert doc["trace"]


def test_goldberg_verify_exit_zero(capsys):
    code, doc, _ = run_json(capsys, "goldberg-verify", "--surface", "o:1,1", "--strands", "2",
                            "--require-verified")
    assert code == EXIT_OK and doc["status"] == "Verified"


def test_goldberg_exhausted_exit_three(capsys):
    argv = ["goldberg-verify", "--surface", "o:2,2", "--strands", "2", "--kb-max-rules", "2"]
    code, doc, _ = run_json(capsys, *argv)
    assert code == EXIT_OK and doc["status"] == "Unverified"
    code, doc, _ = run_json(capsys, *argv, "--require-verified")
    assert code == EXIT_EXHAUSTED and doc["status"] == "Unverified"


@pytest.mark.parametrize("argv", [
    ["present", "--surface", "q:1,1", "--strands", "2"],
    ["present", "--surface", "o:1,1", "--strands", "0"],
    ["goldberg-verify", "--surface", "o:1,0", "--strands", "2"],
    ["classify", "--surface", "n:1,1", "--strands", "2"],
    ["reidemeister", "--matrix", "[[1,2]]"],
    ["reidemeister", "--matrix", "not json"],
    ["reidemeister", "--free", "x=x", "--max-len", "20"],
    ["reidemeister"],
])
def test_invalid_exit_two(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == EXIT_INVALID and out == "" and err


def test_census(capsys):
    code, doc, _ = run_json(capsys, "census", "--surface", "sphere:2", "--strands", "2")
    assert code == EXIT_OK and doc["other"] == []


def test_table(capsys):
    code, doc, _ = run_json(capsys, "table", "--max-g", "1", "--max-p", "1", "--max-n", "2")
    assert code == EXIT_OK and len(doc["cells"]) == 2 * 2 * 2


def test_reidemeister_modes(capsys, tmp_path):
    _, doc, _ = run_json(capsys, "reidemeister", "--matrix", "[[2,1],[1,1]]")
    assert doc == {"R": 1, "method": "abelian"}
    _, doc, _ = run_json(capsys, "reidemeister", "--matrix", "[[0,1],[1,0]]")
    assert doc["R"] == "inf"
    _, doc, _ = run_json(capsys, "reidemeister", "--free", "x=y; y=y^-1 x y", "--max-len", "2")
    assert doc["classes_upper_bound"] <= doc["words"]
    z3 = {"identity": 0, "table": [[(i + j) % 3 for j in range(3)] for i in range(3)]}
    f = tmp_path / "z3.json"
    f.write_text(json.dumps(z3))
    _, doc, _ = run_json(capsys, "reidemeister", "--group", str(f), "--endo", "[0,2,1]", "--classes")
    assert doc["R"] == doc["R_burnside"] == 1 and len(doc["classes"]) == 1
    _, doc, _ = run_json(capsys, "reidemeister", "--group", str(f))
    assert doc["R"] == 1 and doc["method"] == "orbit"
    endo = tmp_path / "endo.json"
    endo.write_text("[0, 1, 2]")
    _, doc, _ = run_json(capsys, "reidemeister", "--group", str(f), "--endo", str(endo))
    assert doc["R"] == 3
    code, _, _ = run(capsys, "reidemeister", "--group", str(f), "--endo", "[0,0,1]")
    assert code == EXIT_INVALID


def test_round_trip_present_abelianize(capsys, tmp_path):
    _, out, _ = run(capsys, "present", "--surface", "o:1,1", "--strands", "2", "--quotient")
    path = tmp_path / "q.json"
    path.write_text(out)
    code, doc, _ = run_json(capsys, "abelianize", "--input", str(path))
    assert code == EXIT_OK and doc == {"free_rank": 4, "torsion": []}
    code, doc, _ = run_json(capsys, "kb-complete", "--input", str(path), "--order", "strand")
    assert code == EXIT_OK and doc["status"] == "Confluent"


def test_abelianize_stdin(capsys, monkeypatch):
    _, out, _ = run(capsys, "present", "--surface", "sphere:3", "--strands", "2")
    code, doc, _ = run_json(capsys, "abelianize", stdin=out, monkeypatch=monkeypatch)
    assert code == EXIT_OK and doc["torsion"] == []


def test_enumerate(capsys, tmp_path):
    p = {"generators": ["a"], "relators": ["a^6"]}
    path = tmp_path / "z6.json"
    path.write_text(json.dumps(p))
    code, doc, _ = run_json(capsys, "enumerate", "--input", str(path), "--group")
    assert code == EXIT_OK and doc["order"] == 6 and len(doc["group"]["table"]) == 6
    code, doc, _ = run_json(capsys, "enumerate", "--input", str(path), "--max-cosets", "3")
    assert code == EXIT_OK and doc["status"] == "Overflow"
    code, _, _ = run(capsys, "enumerate", "--input", str(path), "--max-cosets", "3",
                     "--require-verified")
    assert code == EXIT_EXHAUSTED


def test_bad_input_file(capsys, tmp_path):
    code, _, err = run(capsys, "abelianize", "--input", str(tmp_path / "missing.json"))
    assert code == EXIT_INVALID and "cannot read" in err


def test_json_indent_either_side(capsys):
    a = run(capsys, "--json-indent", "2", "classify", "--surface", "o:0,0", "--strands", "4")[1]
    b = run(capsys, "classify", "--surface", "o:0,0", "--strands", "4", "--json-indent", "2")[1]
    assert a == b and "\n  " in a


@pytest.mark.parametrize("argv", [
    ["goldberg-verify", "--surface", "n:1,2", "--strands", "2"],
    ["table"],
    ["present", "--surface", "o:1,2", "--strands", "3"],
])
def test_byte_identical_across_processes(argv):
    runs = [subprocess.run([sys.executable, "-m", "surfbraid.cli", *argv],
                           capture_output=True, check=True).stdout for _ in range(2)]
    assert runs[0] == runs[1] and runs[0]


def test_reidemeister_certificate(capsys, tmp_path):
    f2 = tmp_path / "f2.json"
    f2.write_text(json.dumps({"generators": ["x", "y"], "relators": []}))
    code, doc, _ = run_json(capsys, "reidemeister", "--presentation", str(f2),
                            "--images", '{"x": "y", "y": "y^-1 x y"}')
    assert code == EXIT_OK and doc["method"] == "certificate"
    assert doc["R"] == "inf" and doc["certified_infinite"] is True
    code, _, _ = run(capsys, "reidemeister", "--presentation", str(f2))
    assert code == EXIT_INVALID
