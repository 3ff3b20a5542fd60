import json
import subprocess
import sys

import pytest

from rfring.cli import main
from rfring.document import DocumentError, WorkspaceDoc
from rfring.kbook import GLReport, KReport
from rfring.presentations import Certificate, recheck


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip() else None), err


def write_doc(tmp_path, data):
    path = tmp_path / "doc.json"
    path.write_text(json.dumps(data))
    return str(path)


def test_classes(capsys, corpus_path):
    code, out, err = run(capsys, "classes", corpus_path, "sl2z")
    assert code == 0 and out["count"] == 8
    assert sorted(c["order"] for c in out["classes"]) == [1, 2, 3, 3, 4, 4, 6, 6]
    assert out["n_p"] == {"2": 4, "3": 3}
    assert "8 torsion classes" in err
    code, out, _ = run(capsys, "classes", corpus_path, "sl2z", "--exclude-identity-np")
    assert out["n_p"] == {"2": 3, "3": 2} and out["identity_included"] is False


def test_ring(capsys, corpus_path):
    code, out, _ = run(capsys, "ring", corpus_path, "sl2z", "--prime", "7")
    assert code == 0 and out["rank"] == 1 and out["unit"] == [1]
    code, out, _ = run(capsys, "ring", corpus_path, "sl2z")
    assert code == 0 and out["rank"] == 8 and out["checks"] == []


def test_verify_search(capsys, corpus_path):
    code, out, err = run(capsys, "verify", corpus_path, "ex14", "--against", "sl2z",
                         "--search-degree-one")
    assert code == 0
    cert = Certificate.from_json(out["certificate"])
    assert cert.ok and recheck(cert)
    assert abs(out["certificate"]["determinant"]) == 1


def test_verify_with_map(capsys, corpus_path):
    base = ("verify", corpus_path, "ex14", "--against", "sl2z", "--map")
    code, out, _ = run(capsys, *base, "w=1,1")
    assert code == 0 and out["certificate"]["ok"]
    code, out, _ = run(capsys, *base, "w=[1,0,1,-1,0,0,1,-1]")
    assert code == 2 and out["report"]["certificate"]["stage"] == "rank"
    code, out, _ = run(capsys, *base, "w=[1,0,0,0,0,0,0,0]")
    assert code == 2 and out["report"]["certificate"]["stage"] == "relations"
    code, out, _ = run(capsys, *base, "w=2,4")
    assert code == 2 and out["report"]["certificate"]["stage"] == "image"
    code, _, _ = run(capsys, "verify", corpus_path, "ex14", "--against", "sl2z")
    assert code == 1
    code, _, _ = run(capsys, "verify", corpus_path, "ex14", "--against", "sl2z", "--map", "w")
    assert code == 1


def test_verify_presentation_only(capsys, corpus_path):
    code, out, err = run(capsys, "verify", corpus_path, "ex15")
    assert code == 0
    assert out["verification"] == "presentation-only"
    assert out["model"]["rank"] == 5 and out["rank_matches"] is True
    assert "presentation-only" in err


def test_verify_rank_mismatch(capsys, tmp_path):
    path = write_doc(tmp_path, {"schema": 1, "presentations": {
        "p": {"text": "ring Z[x] / x^2 - 1 = 0", "expected_rank": 3}}})
    code, out, _ = run(capsys, "verify", path, "p")
    assert code == 2 and out["error"]["code"] == "check.failed"


def test_ktheory(capsys, corpus_path):
    code, out, _ = run(capsys, "ktheory", corpus_path, "sl2z", "--prime", "2")
    assert code == 0
    r = KReport.from_json(out)
    assert (r.v_p, r.rank_K0, r.rank_K1) == (0, 4, 0)
    code, out, _ = run(capsys, "ktheory", corpus_path, "sl2z", "--prime", "4")
    assert code == 1 and out["error"]["code"] == "amalgam.invalid"


def test_glrank(capsys):
    code, out, _ = run(capsys, "glrank", "--p", "23", "--class-number", "3", "--orbits", "2,1")
    assert code == 0 and GLReport.from_json(out).rk_RF == 4
    code, out, _ = run(capsys, "glrank", "--p", "23", "--class-number", "3", "--orbits", "5")
    assert code == 1 and out["error"]["code"] == "kbook.invalid"


def test_chartab_and_oracle(capsys, corpus_path):
    code, out, _ = run(capsys, "chartab", corpus_path, "S3")
    assert code == 0 and out["degrees"] == [1, 1, 2]
    assert out["conductor"] == 6
    assert out["table"][2] == [{"conductor": 6, "coeffs": [v, "0"]} for v in ("2", "0", "-1")]
    code, out, _ = run(capsys, "oracle", corpus_path, "pgl2z", "--oracle-bound", "4")
    assert code == 0 and out["disagreements"] == [] and out["bound"] == 4


def test_input_errors(capsys, tmp_path, corpus_path):
    assert run(capsys, "ring", corpus_path, "missing")[0] == 1
    assert run(capsys, "ring", str(tmp_path / "none.json"), "x")[0] == 1
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "ring", str(bad), "x")[0] == 1
    assert run(capsys, "ring", write_doc(tmp_path, {"schema": 2}), "x")[0] == 1
    assert run(capsys, "ring", corpus_path, "gl2z", "--cap", "4")[0] == 1


def test_document_errors(tmp_path):
    cyc = WorkspaceDoc({"schema": 1, "groups": {"A": {"product": ["B", "C1"]},
                                                "B": {"product": ["A", "C1"]},
                                                "C1": {"cyclic": 1}}})
    with pytest.raises(DocumentError, match="cyclic definition"):
        cyc.group("A")
    doc = WorkspaceDoc({"schema": 1, "groups": {"C2": {"cyclic": 2}, "C4": {"cyclic": 4}},
                        "homs": {"f": {"source": "C2", "target": "C4", "images": {"g": "g^2"}}},
                        "amalgams": {"a": {"left": "C2", "right": "C4", "edge": "C2",
                                           "embed_left": "f", "embed_right": "f"},
                                     "b": {"left": "C4"}}})
    with pytest.raises(DocumentError, match="does not match"):
        doc.amalgam("a")
    with pytest.raises(DocumentError, match="missing"):
        doc.amalgam("b")
    with pytest.raises(DocumentError):
        WorkspaceDoc([])


def test_non_injective_embedding_is_input_error(capsys, tmp_path):
    path = write_doc(tmp_path, {"schema": 1, "groups": {"C2": {"cyclic": 2}, "C4": {"cyclic": 4}},
                                "amalgams": {"a": {"left": "C2", "right": "C2", "edge": "C4",
                                                   "embed_left": {"g": "g"},
                                                   "embed_right": {"g": "g"}}}})
    code, out, _ = run(capsys, "classes", path, "a")
    assert code == 1 and out["error"]["code"] == "amalgam.invalid"


def test_out_file_and_determinism(capsys, tmp_path, corpus_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["ring", corpus_path, "gl2z", "--out", str(a)]) == 0
    assert main(["ring", corpus_path, "gl2z", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert capsys.readouterr().out == ""


def test_module_entry_point(corpus_path):
    runs = [subprocess.run([sys.executable, "-m", "rfring", "classes", corpus_path, "sl2z"],
                           capture_output=True, check=True) for _ in range(2)]
    assert runs[0].stdout == runs[1].stdout
    assert json.loads(runs[0].stdout)["count"] == 8
