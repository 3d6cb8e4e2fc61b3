"""Command-line surface: output formats and exit codes."""

import json

import pytest

from cli import build_parser, main
from config import CORPUS_MIXES, CORPUS_SEEDS, EXIT_DISAGREEMENT, EXIT_ERROR, EXIT_OK, EXIT_USAGE, WITNESS_SAMPLES


def _write(tmp_path, name, data):
    path = tmp_path / name
    path.write_text(json.dumps(data), encoding="utf-8")
    return str(path)


@pytest.fixture
def ex34_file(fixtures_dir):
    return str(fixtures_dir / "ex34_pencil.json")


@pytest.fixture
def ex36_file(fixtures_dir):
    return str(fixtures_dir / "ex36_pencil.json")


class TestInvariants:
    def test_ex34(self, ex34_file, capsys):
        assert main(["invariants", ex34_file]) == EXIT_OK
        data = json.loads(capsys.readouterr().out)
        assert data["pairs"] == [{"type": "quad", "alpha": None, "modulus": ["1", "0", "1"], "exp": 1}]
        assert data["minimal_indices"] == []

    def test_ex36(self, ex36_file, capsys):
        assert main(["invariants", ex36_file]) == EXIT_OK
        data = json.loads(capsys.readouterr().out)
        assert data["pairs"] == []
        assert data["minimal_indices"] == [2]

    def test_stable_output(self, ex36_file, capsys):
        main(["invariants", ex36_file])
        first = capsys.readouterr().out
        main(["invariants", ex36_file])
        assert capsys.readouterr().out == first

    def test_non_skew(self, tmp_path, capsys):
        path = _write(tmp_path, "bad.json", {"n": 2, "A": [[0, 1], [1, 0]], "B": [[0, 0], [0, 0]]})
        assert main(["invariants", path]) == EXIT_ERROR
        captured = capsys.readouterr()
        assert captured.out == ""
        assert "skew" in captured.err

    def test_missing_file(self, tmp_path):
        assert main(["invariants", str(tmp_path / "nope.json")]) == EXIT_ERROR


class TestAid:
    @pytest.mark.parametrize("field, expected", [("real", 8), ("closed", 4)])
    def test_ex34(self, ex34_file, field, expected, capsys):
        assert main(["aid", ex34_file, "--field", field]) == EXIT_OK
        assert json.loads(capsys.readouterr().out)["dim_aid"] == expected

    def test_ex44_algebra(self, fixtures_dir, capsys):
        assert main(["aid", str(fixtures_dir / "ex44_algebra.json"), "--field", "real"]) == EXIT_OK
        data = json.loads(capsys.readouterr().out)
        assert data["dim_aid"] == 6
        assert len(data["aid_basis"]) == 6

    def test_bad_field_is_usage_error(self, ex34_file):
        assert main(["aid", ex34_file, "--field", "complex"]) == EXIT_USAGE


class TestFormulaAndCanonical:
    def test_formula(self, tmp_path, capsys):
        path = _write(tmp_path, "inv.json", {
            "n": 11,
            "pairs": [{"type": "inf", "exp": 2}, {"type": "finite", "alpha": "0", "exp": 1}],
            "minimal_indices": [2],
        })
        assert main(["formula", path, "--field", "closed"]) == EXIT_OK
        assert json.loads(capsys.readouterr().out) == {"mode": "closed", "dim_inn": 11, "dim_aid": 14}

    def test_canonical_round_trip(self, ex34_file, tmp_path, capsys):
        main(["invariants", ex34_file])
        inv_path = _write(tmp_path, "inv.json", json.loads(capsys.readouterr().out))
        assert main(["canonical", inv_path]) == EXIT_OK
        pencil_path = _write(tmp_path, "canon.json", json.loads(capsys.readouterr().out))
        assert main(["congruent", pencil_path, ex34_file]) == EXIT_OK
        assert json.loads(capsys.readouterr().out)["congruent"] is True

    def test_real_split_needs_companion_flag(self, fixtures_dir, tmp_path, capsys):
        main(["invariants", str(fixtures_dir / "real_split_pencil.json")])
        inv_path = _write(tmp_path, "inv.json", json.loads(capsys.readouterr().out))
        assert main(["canonical", inv_path]) == EXIT_ERROR
        assert main(["canonical", inv_path, "--companion"]) == EXIT_OK

    def test_randomize_keeps_invariants(self, ex36_file, tmp_path, capsys):
        assert main(["randomize", ex36_file, "--seed", "4"]) == EXIT_OK
        path = _write(tmp_path, "scrambled.json", json.loads(capsys.readouterr().out))
        main(["congruent", path, ex36_file])
        assert json.loads(capsys.readouterr().out)["congruent"] is True

    def test_smith(self, ex36_file, capsys):
        assert main(["smith", ex36_file]) == EXIT_OK
        assert json.loads(capsys.readouterr().out)["diagonal"] == ["1", "1", "1", "1", "0"]

    def test_smith_factors(self, ex34_file, capsys):
        assert main(["smith", ex34_file]) == EXIT_OK
        out = json.loads(capsys.readouterr().out)
        assert out["diagonal"][2:] == ["lam^2 + 1", "lam^2 + 1"]
        assert out["factors"] == [[], [], ["lam^2 + 1"], ["lam^2 + 1"]]


class TestCheck:
    def test_ex36(self, ex36_file, capsys):
        assert main(["check", ex36_file, "--field", "real", "--seeds", "2"]) == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "pencil: (inn 5, aid 6) ✓"
        assert len(lines) == 3

    def test_dependent_pencil(self, tmp_path):
        rows = [[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]]
        path = _write(tmp_path, "same.json", {"n": 4, "A": rows, "B": rows})
        assert main(["check", path, "--seeds", "0"]) == EXIT_ERROR

    def test_sweep_file(self, fixtures_dir, capsys):
        assert main(["check", str(fixtures_dir / "lemma_sweep.json"), "--seeds", "0"]) == EXIT_OK
        assert all(line.endswith("✓") for line in capsys.readouterr().out.splitlines())


def test_missing_subcommand():
    assert main([]) == EXIT_USAGE


@pytest.mark.slow
def test_corpus_writes_files(tmp_path, capsys):
    out = tmp_path / "corpus"
    assert main(["corpus", "--field", "closed", "--out", str(out), "--seeds", "0", "--mixes", "0", "--witness", "0"]) == EXIT_OK
    summary = json.loads((out / "summary.json").read_text(encoding="utf-8"))
    assert summary["all_agree"] is True
    assert len(list(out.glob("case_*.json"))) == len(summary["rows"])
    assert capsys.readouterr().out.startswith("case")


def test_disagreement_code_is_distinct():
    assert EXIT_DISAGREEMENT not in (EXIT_OK, EXIT_ERROR, EXIT_USAGE)


def test_corpus_defaults_to_the_full_run():
    args = build_parser().parse_args(["corpus"])
    assert (args.seeds, args.mixes, args.witness) == (CORPUS_SEEDS, CORPUS_MIXES, WITNESS_SAMPLES)
