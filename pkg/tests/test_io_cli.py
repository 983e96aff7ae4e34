import io
import json

import pytest

from hopfgalois import io as hio
from hopfgalois.cli import main, run_instance
from hopfgalois.galois import connection_axioms
from hopfgalois.groups import regular_gset, symmetric_group
from hopfgalois.hopf import same_structure
from hopfgalois.linalg import QQ, FieldSpec
from hopfgalois.registry import random_gsets, registry


@pytest.fixture(scope="module")
def examples(tmp_path_factory):
    path = tmp_path_factory.mktemp("docs") / "examples.json"
    assert main(["gen", str(path)], io.StringIO()) == 0
    return str(path)


def run(argv):
    buf = io.StringIO()
    code = main(argv, buf)
    return code, buf.getvalue()


def run_json(argv):
    code, text = run(argv + ["--output", "json"])
    return code, json.loads(text)


# file format ---------------------------------------------------------------


def test_round_trip_is_identity():
    objs = registry()
    text = hio.dumps(hio.to_json_dict(objs, QQ))
    doc = hio.parse_document(text)
    again = hio.dumps(hio.to_json_dict(hio.document_objects(doc), doc.field))
    assert again == text


def test_round_trip_over_f3():
    f3 = FieldSpec(3)
    text = hio.dumps(hio.to_json_dict(registry(f3), f3))
    doc = hio.parse_document(text)
    assert hio.dumps(hio.to_json_dict(hio.document_objects(doc), doc.field)) == text


def test_parsed_hopf_matches_registry():
    text = hio.dumps(hio.to_json_dict(registry(), QQ))
    doc = hio.parse_document(text)
    assert same_structure(doc.get("s3-hopf"), registry()["s3-hopf"])


def hopf_doc(scalar):
    return json.dumps({
        "version": 1,
        "field": {"kind": "Q"},
        "objects": {"h": {
            "type": "hopf", "dim": 1,
            "mult": {"rows": 1, "cols": 1, "entries": [[0, 0, scalar]]},
            "unit": ["1"],
            "comult": {"rows": 1, "cols": 1, "entries": [[0, 0, "1"]]},
            "counit": {"rows": 1, "cols": 1, "entries": [[0, 0, "1"]]},
            "antipode": {"rows": 1, "cols": 1, "entries": [[0, 0, "1"]]},
        }},
    })


def test_malformed_scalar_names_token():
    doc = hio.parse_document(hopf_doc("1/0"))
    with pytest.raises(hio.InputError, match="1/0"):
        doc.get("h")


def test_json_syntax_error_has_position():
    with pytest.raises(hio.InputError, match=r":1:\d+"):
        hio.parse_document("{not json", source="bad.json")


def test_unknown_name_lists_available():
    doc = hio.parse_document(hopf_doc("1"))
    with pytest.raises(hio.ResolutionError, match="h"):
        doc.get("nope")


def test_bad_version_rejected():
    with pytest.raises(hio.InputError):
        hio.parse_document(json.dumps({"version": 7, "objects": {}}))


def test_field_flag_parsing():
    assert hio.parse_field_flag("Q") == QQ
    assert hio.parse_field_flag("F5") == FieldSpec(5)
    assert hio.parse_field_flag("Fp:7") == FieldSpec(7)
    with pytest.raises(hio.InputError):
        hio.parse_field_flag("F4")


def test_oversized_dimension_rejected():
    doc = json.loads(hopf_doc("1"))
    doc["objects"]["h"]["dim"] = hio.MAX_DIM + 1
    with pytest.raises(hio.InputError):
        hio.parse_document(json.dumps(doc)).get("h")


# commands and exit codes ---------------------------------------------------


def test_verify_hopf(examples):
    code, rep = run_json(["verify", examples, "z2-hopf"])
    assert code == 0 and rep["verdict"] == "pass"
    assert all(c["status"] == "pass" for c in rep["checks"])


def test_unknown_name_exit_two(examples, capsys):
    code, _ = run(["verify", examples, "no-such-thing"])
    assert code == 2
    err = capsys.readouterr().err
    assert "z2-hopf" in err


def test_parse_error_exit_two(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text(hopf_doc("1/0"))
    assert run(["verify", str(p), "h"])[0] == 2
    assert "1/0" in capsys.readouterr().err


def test_can_commands(examples):
    code, rep = run_json(["can", examples, "z2-free-2"])
    assert code == 0 and rep["data"]["bijective"]
    code, rep = run_json(["can", examples, "z2-fixpoint-3"])
    assert code == 1
    assert rep["data"]["rank"] == 5 and rep["data"]["codomain_dim"] == 6
    code, rep = run_json(["can", examples, "cbrt2", "--base", "Q"])
    assert code == 1
    assert rep["data"]["injective"] is False and rep["data"]["rank"] == 3


def test_connection_emit_and_reverify(examples, tmp_path):
    out = tmp_path / "ell.json"
    code, _ = run(["connection", examples, "z2-free-2", "--emit", str(out)])
    assert code == 0 and out.exists()
    doc = hio.load_document(str(out))
    conn = [doc.get(n) for n in doc.names() if doc.kind(n) == "connection"]
    assert conn
    rec = conn[0]
    assert all(chk.passed for chk in connection_axioms(rec.coaction, rec.connection.ell))
    name = [n for n in doc.names() if doc.kind(n) == "connection"][0]
    assert run(["verify", str(out), name])[0] == 0


def test_connection_infeasible_and_self(examples):
    code, text = run(["connection", examples, "z2-fixpoint-3"])
    assert code == 1 and "infeasible" in text
    assert run(["connection", examples, "z2-hopf-self"])[0] == 0


def test_monoidal_commands(examples):
    code, rep = run_json(["monoidal", examples, "z2-free-2", "--comodules", "z2-trivial,z2-H"])
    assert code == 0
    code, rep = run_json(["monoidal", examples, "z2-fixpoint-3", "--comodules", "z2-trivial,z2-H"])
    assert code == 1
    code, rep = run_json(["monoidal", examples, "z2-free-2"])
    assert code == 0
    assert any("default" in json.dumps(v) for v in rep["data"].values())


def test_monoidal_unknown_comodule(examples):
    assert run(["monoidal", examples, "z2-free-2", "--comodules", "nope"])[0] == 2


def test_fibred_commands(examples):
    code, rep = run_json(["fibred", examples, "fibred-mixed"])
    assert code == 1 and rep["data"]["offending_fibers"] == [1]
    assert run(["fibred", examples, "fibred-all-free"])[0] == 0
    single = run(["fibred", examples, "fibred-single"])[0]
    assert single == run(["can", examples, "z2-fixpoint-3"])[0]


def test_cover_commands(examples):
    assert run(["cover", examples, "s3-irregular-cover"])[0] == 1
    assert run(["cover", examples, "z3-regular-cover"])[0] == 0


def test_field_override(examples):
    code, rep = run_json(["can", examples, "z2-free-2", "--field", "F3"])
    assert code == 0
    code, rep = run_json(["verify", examples, "z2-hopf", "--field", "F2"])
    assert code == 0


def test_json_deterministic(examples):
    a = run_json(["can", examples, "z2-fixpoint-3"])[1]
    b = run_json(["can", examples, "z2-fixpoint-3"])[1]
    a.pop("duration_seconds")
    b.pop("duration_seconds")
    assert a == b


def test_text_output(examples):
    code, text = run(["can", examples, "z2-free-2"])
    assert code == 0 and text.startswith("can z2-free-2: PASS")


# gen and suite ---------------------------------------------------------------


def test_gen_reproducible(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["gen", str(a), "--random", "4", "--seed", "11"], io.StringIO()) == 0
    assert main(["gen", str(b), "--random", "4", "--seed", "11"], io.StringIO()) == 0
    assert a.read_text() == b.read_text()
    doc = hio.load_document(str(a))
    assert "random-3" in doc.names()


def test_random_gsets_seeded():
    assert [s.action for s in random_gsets(3, 5)] == [s.action for s in random_gsets(3, 5)]


def test_suite_trivial_sweep():
    code, rep = run_json(["suite", "--max-points", "1", "--max-order", "3"])
    assert code == 0
    assert rep["data"]["violations"] == []
    assert rep["data"]["summary"].endswith("0 violations, 0 skipped")


def test_suite_reports_skips_in_bad_characteristic():
    code, rep = run_json(["suite", "--max-points", "3", "--max-order", "3", "--field", "F2"])
    assert code == 0
    assert rep["data"]["skipped_checks"] > 0
    statuses = {c["name"]: c["status"] for c in rep["checks"]}
    assert statuses["freeness <=> can"] == "pass"
    assert all(s != "fail" for s in statuses.values())


def test_suite_parallel_matches_serial():
    a = run_json(["suite", "--max-points", "3", "--max-order", "3"])[1]
    b = run_json(["suite", "--max-points", "3", "--max-order", "3", "--jobs", "2"])[1]
    a.pop("duration_seconds")
    b.pop("duration_seconds")
    assert a == b


def test_run_instance_on_s3():
    out = run_instance(regular_gset(symmetric_group(3)), QQ)
    assert out["free"] and out["can_bijective"]
    assert set(out["checks"].values()) == {"pass"}
