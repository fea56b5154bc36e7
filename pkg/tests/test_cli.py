import json

import pytest

from conceptual.cli import main
from conceptual.io import (
    dumps,
    morphism_to_obj,
    parse_classification,
)
from conceptual.bond import Bond, identity_bond
from conceptual.classification import powerset_classification
from conceptual.relalg import Relation

K1_CXT = "B\n\n2\n2\n\n1\n2\na\nb\nX.\nXX\n"


@pytest.fixture
def k1_file(tmp_path):
    path = tmp_path / "k1.cxt"
    path.write_text(K1_CXT)
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


class TestLatticeCommand:
    def test_json_concepts(self, capsys, k1_file):
        code, out = run(capsys, "lattice", k1_file)
        assert code == 0
        got = json.loads(out)
        assert got["concepts"] == [
            {"extent": ["1", "2"], "intent": ["a"]},
            {"extent": ["2"], "intent": ["a", "b"]},
        ]

    def test_dot_output(self, capsys, k1_file):
        code, out = run(capsys, "lattice", k1_file, "--dot")
        assert code == 0
        assert out.startswith("digraph")
        assert out.count("->") == 1

    def test_stdin(self, capsys, monkeypatch):
        import io as stdlib_io

        monkeypatch.setattr("sys.stdin", stdlib_io.StringIO(K1_CXT))
        code, out = run(capsys, "lattice", "-")
        assert code == 0
        assert len(json.loads(out)["concepts"]) == 2


class TestCheckCommand:
    def test_valid_bond_exits_zero(self, capsys, tmp_path, k1):
        path = tmp_path / "bond.json"
        path.write_text(dumps(morphism_to_obj(identity_bond(k1))))
        code, out = run(capsys, "check", "bond", str(path))
        assert code == 0
        assert "ok" in out

    def test_invalid_bond_exits_one_with_witness(self, capsys, tmp_path, k1):
        bad = Bond(k1, k1, Relation.from_pairs(2, 2, [(0, 1)]), validate=False)
        path = tmp_path / "bad.json"
        path.write_text(dumps(morphism_to_obj(bad)))
        code, out = run(capsys, "check", "bond", str(path), "--json")
        assert code == 1
        results = json.loads(out)["results"]
        assert results[0]["ok"] is False
        assert results[0]["witness"]

    def test_kind_mismatch_is_structural_error(self, capsys, tmp_path, k1):
        path = tmp_path / "bond.json"
        path.write_text(dumps(morphism_to_obj(identity_bond(k1))))
        code, _ = run(capsys, "check", "infomorphism", str(path))
        assert code == 3


class TestComposeCommand:
    def test_compose_bonds(self, capsys, tmp_path, k1):
        path = tmp_path / "id.json"
        path.write_text(dumps(morphism_to_obj(identity_bond(k1))))
        code, out = run(capsys, "compose", "bonds", str(path), str(path))
        assert code == 0
        got = json.loads(out)
        assert got["kind"] == "bond"
        assert got["data"]["rel"] == k1.incidence.matrix()


class TestConstructions:
    def test_sum(self, capsys, k1_file):
        code, out = run(capsys, "sum", k1_file, k1_file)
        assert code == 0
        got = json.loads(out)
        assert len(got["apex"]["instances"]) == 4
        assert len(got["apex"]["types"]) == 4

    def test_appose_and_subpose(self, capsys, k1_file):
        code, out = run(capsys, "appose", k1_file, k1_file)
        assert code == 0
        assert len(json.loads(out)["apex"]["types"]) == 4
        code, out = run(capsys, "subpose", k1_file, k1_file)
        assert code == 0
        assert len(json.loads(out)["apex"]["instances"]) == 4

    def test_product(self, capsys, k1_file):
        code, out = run(capsys, "product", k1_file, k1_file)
        assert code == 0
        assert len(json.loads(out)["apex"]["types"]) == 4

    def test_dual(self, capsys, k1_file, k1):
        code, out = run(capsys, "dual", k1_file)
        assert code == 0
        got = parse_classification(out)
        assert got.instances == k1.types

    def test_powerset(self, capsys):
        code, out = run(capsys, "powerset", "x", "y")
        assert code == 0
        got = parse_classification(out)
        assert got == powerset_classification(("x", "y"))

    def test_quotient(self, capsys, tmp_path, k1_file):
        inv = tmp_path / "inv.json"
        inv.write_text(json.dumps({"kept_instances": ["2"], "related_types": [["a", "b"]]}))
        code, out = run(capsys, "quotient", k1_file, str(inv))
        assert code == 0
        got = json.loads(out)
        assert got["classification"]["instances"] == ["2"]
        assert got["classification"]["types"] == ["[a,b]"]

    def test_incompatible_quotient_is_structural_error(self, capsys, tmp_path, k1_file):
        inv = tmp_path / "inv.json"
        inv.write_text(json.dumps({"kept_instances": ["1", "2"], "related_types": [["a", "b"]]}))
        code, _ = run(capsys, "quotient", k1_file, str(inv))
        assert code == 3


class TestVerifyCommand:
    def test_deterministic_output(self, capsys):
        code1, out1 = run(capsys, "verify-equivalences", "--max-size", "2", "--seed", "5", "--json")
        code2, out2 = run(capsys, "verify-equivalences", "--max-size", "2", "--seed", "5", "--json")
        assert code1 == code2 == 0
        assert out1 == out2

    def test_inject_bug_fails(self, capsys):
        code, out = run(capsys, "verify-equivalences", "--max-size", "1", "--seed", "5", "--inject-bug")
        assert code == 1
        assert "FAIL" in out

    def test_no_coverage_flagging(self, capsys):
        code, out = run(capsys, "verify-equivalences", "--max-size", "0", "--seed", "5", "--json")
        assert code == 0
        got = json.loads(out)
        verdicts = {c["verdict"] for c in got["checks"]}
        assert "no-coverage" in verdicts
        assert "fail" not in verdicts


class TestUsage:
    def test_usage_error_exits_two(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["lattice"])
        assert exc.value.code == 2

    def test_missing_file_is_reported(self, capsys):
        code = main(["lattice", "/nonexistent/path.cxt"])
        assert code == 3
