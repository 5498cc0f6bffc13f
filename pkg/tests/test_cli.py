import json
import pathlib
import subprocess
import sys

import pytest
from jsonschema import Draft202012Validator
from referencing import Registry, Resource

from chevalley.cli import main
from chevalley.group import GroupWord, X
from chevalley.rings import Ring
from chevalley.words import SEED, Comm, Conj, Elem, Inv, Prod

SCHEMAS = pathlib.Path(__file__).resolve().parents[1] / "schemas"
_docs = {p.name: json.loads(p.read_text()) for p in SCHEMAS.glob("*.json")}
REGISTRY = Registry().with_resources((d["$id"], Resource.from_contents(d)) for d in _docs.values())


def validator(name):
    return Draft202012Validator(_docs[name], registry=REGISTRY)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, (json.loads(out.out) if out.out.strip() else None), out.err


@pytest.fixture
def word_file(tmp_path):
    def make(letters):
        p = tmp_path / ("w%d.json" % len(list(tmp_path.iterdir())))
        p.write_text(json.dumps(GroupWord(tuple(X(r, t) for r, t in letters)).to_json()))
        return str(p)

    return make


def test_schemas_are_valid():
    for d in _docs.values():
        Draft202012Validator.check_schema(d)


def test_object_json_matches_schemas():
    w = GroupWord((X((1, 0), 2), X((-1, -1), 1)))
    validator("groupword.schema.json").validate(w.to_json())
    c = Comm(Conj(SEED, Elem(w)), Prod(Inv(SEED), Elem(w)))
    validator("certificate.schema.json").validate(c.to_json())
    for R in (Ring.gf(5), Ring.mod(4), Ring.integers()):
        validator("ring.schema.json").validate(R.to_json())


def test_roots(capsys):
    code, out, _ = run(capsys, "roots", "--type", "G2")
    assert code == 0 and out["ok"] and out["command"] == "roots"
    validator("report.schema.json").validate(out)
    assert len(out["report"]["roots"]) == 12


def test_table(capsys):
    code, out, _ = run(capsys, "table", "--type", "B2")
    assert code == 0
    validator("report.schema.json").validate(out)


def test_eval_and_decompose(capsys, word_file):
    f = word_file([((1, 0), 2), ((0, -1), 3), ((-1, -1), 1)])
    code, out, _ = run(capsys, "eval", "--type", "A2", "--ring", "gf:5", "--in", f)
    assert code == 0
    for o in ("UBw", "U-Bw"):
        code, out, _ = run(capsys, "decompose", "--type", "A2", "--ring", "gf:5", "--in", f, "--orientation", o)
        assert code == 0 and out["report"]["round_trip"]


def test_extract(capsys, word_file):
    f = word_file([((1, 0), 1), ((-1, 0), 1)])
    code, out, _ = run(capsys, "extract", "--type", "A2", "--ring", "gf:3", "--in", f)
    assert code == 0 and out["report"]["verified"]
    validator("report.schema.json").validate(out)
    validator("extraction_result.schema.json").validate(out["report"])


def test_extract_central_is_an_error(capsys, word_file):
    f = word_file([((1, 0), 0)])
    code, out, _ = run(capsys, "extract", "--type", "A2", "--ring", "gf:3", "--in", f)
    assert code == 1 and not out["ok"] and out["report"]["error"] == "CentralInput"


def test_level_and_sandwich(capsys, word_file):
    f = word_file([((1, 0), 2)])
    code, out, _ = run(capsys, "level", "--type", "A2", "--ring", "mod:4", "--in", f)
    assert code == 0 and out["report"]["ideal"]["generator"] == 2
    code, out, _ = run(capsys, "sandwich", "--type", "A2", "--ring", "mod:4", "--in", f)
    assert code == 0 and out["report"]["ok"]


def test_verify_all_quick_subset(capsys):
    code, out, err = run(capsys, "verify-all", "--quick", "--only", "1,3")
    assert code == 0 and [r["criterion"] for r in out["report"]["results"]] == [1, 3]
    assert err.count("[PASS]") == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["roots", "--type", "E9"],
        ["eval", "--type", "A2", "--ring", "bogus", "--in", "x.json"],
        ["eval", "--type", "A2", "--ring", "gf:5"],
        ["eval", "--type", "A2", "--ring", "gf:5", "--in", "/nonexistent.json"],
        ["generic-check", "--type", "B2"],
    ],
)
def test_usage_errors(capsys, argv):
    assert main(argv) == 2


def test_argparse_errors_exit_2():
    with pytest.raises(SystemExit) as e:
        main(["nosuchcommand"])
    assert e.value.code == 2


def test_deterministic_output(tmp_path, word_file):
    f = word_file([((1, 1), 1), ((0, -1), 2)])
    outs = []
    for k in range(2):
        o = tmp_path / ("out%d.json" % k)
        assert main(["extract", "--type", "B2", "--ring", "gf:3", "--in", f, "--seed", "5", "--out", str(o)]) == 0
        outs.append(o.read_bytes())
    assert outs[0] == outs[1]


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "chevalley.cli", "roots", "--type", "A2"], capture_output=True, text=True)
    assert r.returncode == 0 and json.loads(r.stdout)["report"]
