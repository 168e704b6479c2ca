import json

import pytest

from hesslab import cli, serialize
from hesslab.tensor import Sym3Tensor


def run(capsys, *argv):
    code = cli.run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--no-meta")
    return code, json.loads(out), err


class TestGlobalBehavior:
    def test_unknown_subcommand_exits_2(self, capsys):
        assert run(capsys, "bogus")[0] == 2

    def test_schema_field_present(self, capsys):
        code, doc, _ = run_json(capsys, "jets", "--dim", "3", "--cap", "5")
        assert code == 0
        assert doc["schema"] == "hol/1"

    def test_meta_block_toggle(self, capsys):
        code, out, _ = run(capsys, "jets", "--dim", "3", "--cap", "5")
        assert "meta" in json.loads(out)
        code, out, _ = run(capsys, "jets", "--dim", "3", "--cap", "5",
                           "--no-meta")
        assert "meta" not in json.loads(out)

    def test_seeded_commands_bit_reproducible(self, capsys):
        args = ("rank-census", "--dim", "2", "--samples", "3", "--seed", "4",
                "--no-meta")
        _, out1, _ = run(capsys, *args)
        _, out2, _ = run(capsys, *args)
        assert out1 == out2


class TestSubcommands:
    def test_rank_census(self, capsys):
        code, doc, _ = run_json(capsys, "rank-census", "--dim", "3",
                                "--samples", "3", "--seed", "1")
        assert code == 0
        assert doc["max_rank"] == 6

    def test_verify_quad_ok(self, capsys):
        code, doc, _ = run_json(capsys, "verify", "--identity", "quad",
                                "--dim", "4", "--seeds", "3")
        assert code == 0
        assert doc["all_zero"] and doc["failures"] == []

    def test_verify_unknown_identity(self, capsys):
        code, _, err = run(capsys, "verify", "--identity", "nope", "--dim", "4")
        assert code == 2 and "identity" in err

    def test_rho_missing_file(self, capsys):
        code, _, err = run(capsys, "rho", "--in", "/nonexistent/file.json")
        assert code == 2 and "cannot read" in err

    def test_rho_round_trip(self, capsys, tmp_path):
        A = Sym3Tensor.random(3, seed=2, bound=5)
        path = tmp_path / "A.json"
        path.write_text(json.dumps(serialize.tensor_to_json(A)))
        out_path = tmp_path / "R.json"
        code, doc, _ = run_json(capsys, "rho", "--in", str(path),
                                "--out", str(out_path))
        assert code == 0
        from hesslab.hessmap import rho
        stored = serialize.tensor_from_json(json.loads(out_path.read_text()))
        assert stored == rho(A).tensor

    def test_rho_rejects_dense_input(self, capsys, tmp_path):
        from hesslab.tensor import random_rational
        path = tmp_path / "T.json"
        path.write_text(json.dumps(
            serialize.tensor_to_json(random_rational(2, 2, seed=1))))
        code, _, err = run(capsys, "rho", "--in", str(path))
        assert code == 2

    def test_solve3d_exact(self, capsys, tmp_path):
        path = tmp_path / "r.json"
        path.write_text(json.dumps(
            {"rows": [["1/1", "0/1", "0/1"],
                      ["0/1", "2/1", "0/1"],
                      ["0/1", "0/1", "3/1"]]}))
        code, doc, _ = run_json(capsys, "solve3d", "--ricci", str(path))
        assert code == 0
        assert doc["verified"] and doc["residual"] == "0"

    def test_solve3d_tol_misuse(self, capsys, tmp_path):
        path = tmp_path / "r.json"
        path.write_text(json.dumps({"rows": [["1/1"] * 3] * 3}))
        code, _, err = run(capsys, "solve3d", "--ricci", str(path),
                           "--mode", "exact", "--tol", "1e-6")
        assert code == 2 and "tol" in err

    def test_jets_text_output(self, capsys):
        code, out, _ = run(capsys, "jets", "--dim", "3", "--cap", "15",
                           "--output", "text")
        assert code == 0
        assert "crossover k* = 12" in out

    def test_cartan_single(self, capsys):
        code, doc, _ = run_json(capsys, "cartan2d", "--alpha", "1/2",
                                "--beta=-2/3", "--gamma", "7/1")
        assert code == 0
        assert doc["involutive"]

    def test_cartan_sweep(self, capsys):
        code, doc, _ = run_json(capsys, "cartan2d", "--sweep", "10",
                                "--seed", "3")
        assert code == 0
        assert doc["all_identical"]

    def test_validate_good_and_bad(self, capsys, tmp_path):
        good = tmp_path / "g.json"
        good.write_text(json.dumps(
            serialize.tensor_to_json(Sym3Tensor.random(2, seed=1))))
        code, doc, _ = run_json(capsys, "validate", "--in", str(good))
        assert code == 0 and doc["valid"]
        bad = tmp_path / "b.json"
        bad.write_text(json.dumps({"n": 2, "order": 2, "packing": "weird",
                                   "entries": []}))
        code, out, _ = run(capsys, "validate", "--in", str(bad))
        assert code == 1
        assert not json.loads(out)["valid"]

    def test_validate_reports_symmetry_failures(self, capsys, tmp_path):
        doc = {"n": 2, "order": 4, "packing": "dense",
               "entries": [["0 1 0 1", "1/1"]]}  # missing antisymmetric partners
        path = tmp_path / "t.json"
        path.write_text(json.dumps(doc))
        code, out, _ = run_json(capsys, "validate", "--in", str(path))
        assert code == 0
        parsed = out
        assert parsed["curvature_symmetries"] is False
        assert parsed["symmetry_failures"]

    def test_mine_cli(self, capsys):
        code, doc, _ = run_json(capsys, "mine", "--dim", "4", "--degree", "2",
                                "--seed", "3")
        assert code == 0
        assert doc["quotient_dim"] == 1
        assert doc["pattern_count"] == 5
