import json
from pathlib import Path

import pytest
from jsonschema import Draft202012Validator
from referencing import Registry, Resource

from surfbraid.cli import main

SCHEMAS = Path(__file__).resolve().parent.parent / "docs" / "schemas"


def _load():
    docs = {p.name: json.loads(p.read_text()) for p in SCHEMAS.glob("*.schema.json")}
    registry = Registry().with_resources(
        (name, Resource.from_contents(doc)) for name, doc in docs.items())
    return docs, registry


DOCS, REGISTRY = _load()


def validate(name, instance):
    Draft202012Validator.check_schema(DOCS[name])
    Draft202012Validator(DOCS[name], registry=REGISTRY).validate(instance)


def cli(capsys, *argv):
    assert main(list(argv)) == 0
    return json.loads(capsys.readouterr().out)


@pytest.fixture
def z3_file(tmp_path):
    f = tmp_path / "z3.json"
    f.write_text(json.dumps({"order": 3, "identity": 0,
                             "table": [[(i + j) % 3 for j in range(3)] for i in range(3)]}))
    return str(f)


@pytest.mark.parametrize("surface,n", [("sphere:2", 2), ("o:1,1", 2), ("n:2,1", 2)])
def test_presentation_and_certificate(capsys, surface, n):
    validate("presentation.schema.json", cli(capsys, "present", "--surface", surface, "--strands", str(n)))
    validate("certificate.schema.json",
             cli(capsys, "goldberg-verify", "--surface", surface, "--strands", str(n)))


def test_unverified_certificate(capsys):
    doc = cli(capsys, "goldberg-verify", "--surface", "o:2,2", "--strands", "2", "--kb-max-rules", "2")
    assert doc["status"] == "Unverified"
    validate("certificate.schema.json", doc)


def test_classify_and_table(capsys):
    for n in (1, 2, 3):
        validate("classify.schema.json",
                 cli(capsys, "classify", "--surface", "o:0,2", "--strands", str(n), "--flavor", "full"))
    validate("table.schema.json", cli(capsys, "table"))


def test_finite_group_and_reidemeister(capsys, z3_file, tmp_path):
    p = tmp_path / "s3.json"
    p.write_text(json.dumps({"generators": ["a", "b"], "relators": ["a^2", "b^2", "a b a b a b"]}))
    doc = cli(capsys, "enumerate", "--input", str(p), "--group")
    validate("finite_group.schema.json", doc["group"])
    validate("reidemeister.schema.json", cli(capsys, "reidemeister", "--group", z3_file))
    validate("reidemeister.schema.json",
             cli(capsys, "reidemeister", "--group", z3_file, "--endo", "[0,2,1]", "--classes"))
    validate("reidemeister.schema.json", cli(capsys, "reidemeister", "--matrix", "[[1]]"))
    validate("reidemeister.schema.json", cli(capsys, "reidemeister", "--free", "t=t^-1"))


def test_rewrite_system(capsys, tmp_path):
    p = tmp_path / "q.json"
    p.write_text(json.dumps(cli(capsys, "present", "--surface", "o:1,1", "--strands", "2", "--quotient")))
    validate("rewrite_system.schema.json", cli(capsys, "kb-complete", "--input", str(p), "--order", "strand"))
    validate("rewrite_system.schema.json",
             cli(capsys, "kb-complete", "--input", str(p), "--kb-max-rules", "3"))
