"""Tests for the cli module."""

import json
from pathlib import Path

import pytest

from detstrata.cli import (
    EXIT_EMPTY,
    EXIT_MISMATCH,
    build_spec,
    create_parser,
    load_explicit_entries,
)
from detstrata.config import SEED_ENV_VAR, RunConfig
from detstrata.exceptions import DetStrataError

ROOT = Path(__file__).parent.parent


def run(argv: list[str]) -> int:
    """Parse ``argv``, run the command and return its exit code."""
    args = create_parser().parse_args(["--workspace", str(ROOT), *argv])
    with pytest.raises(SystemExit) as excinfo:
        args.func(args)
    return excinfo.value.code


class TestParser:
    def test_subcommands(self):
        """Test that every subcommand is registered."""
        parser = create_parser()
        for argv in (
            ["stratum-info", "--b", "0,0", "--a", "1,1,1", "--n", "2"],
            ["verify", "--b", "0,0", "--a", "1,1,1", "--n", "2", "--theorems", "compthm"],
            ["betti", "--b", "0,0", "--a", "1,1,1", "--n", "2", "--ring", "A"],
            ["ghost", "--spec", "s.json", "--corner", "2,0"],
            ["reproduce", "all"],
        ):
            assert callable(parser.parse_args(argv).func)

    def test_integer_lists(self):
        """Test that degree lists are parsed as integer tuples."""
        args = create_parser().parse_args(["stratum-info", "--b=-1,0", "--a", "1,1,1,1"])
        assert args.b == (-1, 0)
        assert args.a == (1, 1, 1, 1)

    def test_bad_integer_list(self):
        """Test that non-integer degrees are an argparse error."""
        with pytest.raises(SystemExit):
            create_parser().parse_args(["stratum-info", "--b", "0,x"])


class TestStratumInfo:
    def test_text(self, capsys):
        """Test λ_4 = 12, K_3 = 0, K_4 = 4 and λ = 16 for a cubic column in k[x0..x3]."""
        code = run(["stratum-info", "--b", "0,0", "--a", "1,1,1,1,3", "--n", "3"])
        out = capsys.readouterr().out
        assert code == 0
        assert "λ_4 = 12, K_3 = 0, K_4 = 4" in out
        assert "λ = 16" in out

    def test_json(self, capsys):
        """Test that every JSON number carries its method tag."""
        code = run(
            ["stratum-info", "--b", "0,0", "--a", "1,1,2,5", "--n", "2", "--format", "json"]
        )
        data = json.loads(capsys.readouterr().out)
        assert code == 0
        assert data["invariants"]["lambda"] == {"value": 14, "method": "closed-form"}
        assert data["invariants"]["lambda_c"]["value"] == 11
        assert data["invariants"]["K"]["value"] == [3]
        assert data["spec"]["a"] == [1, 1, 2, 5]

    def test_empty_stratum(self):
        """Test the dedicated exit code for an empty stratum."""
        assert run(["stratum-info", "--b", "0,5", "--a", "1,1,1", "--n", "2"]) == EXIT_EMPTY

    def test_incomplete_spec(self):
        """Test that --b without --a and --n is an error."""
        assert run(["stratum-info", "--b", "0,0"]) == EXIT_MISMATCH

    def test_spec_file(self, tmp_path, capsys):
        """Test reading the spec from a schema-checked JSON file."""
        path = tmp_path / "spec.json"
        path.write_text(json.dumps({"n": 2, "b": [-1, 0], "a": [1, 1, 1, 1]}), encoding="utf-8")
        assert run(["stratum-info", "--spec", str(path)]) == 0
        assert "λ = 16" in capsys.readouterr().out

    def test_missing_spec_file(self, tmp_path):
        """Test that a missing spec file is an error."""
        assert run(["stratum-info", "--spec", str(tmp_path / "none.json")]) == EXIT_MISMATCH


class TestVerify:
    def test_unknown_theorem(self):
        """Test that an unknown theorem name is refused."""
        argv = ["verify", "--b", "0,0", "--a", "1,1,1", "--n", "2", "--theorems", "thm9"]
        assert run(argv) == EXIT_MISMATCH

    def test_c2(self, capsys):
        """Test that the c = 2 theorem fires for three points in the plane."""
        argv = ["verify", "--b", "0,0", "--a", "1,1,1", "--n", "2", "--theorems", "elling_c2"]
        assert run(argv) == 0
        assert "✓ elling_c2" in capsys.readouterr().out

    def test_empty_stratum(self):
        """Test the dedicated exit code for an empty stratum."""
        assert run(["verify", "--b", "0,5", "--a", "1,1,1", "--n", "2"]) == EXIT_EMPTY


def test_reproduce_unknown_example():
    """Test that an unknown registry id is an error."""
    assert run(["reproduce", "no-such-example"]) == EXIT_MISMATCH


def test_ghost_without_corner():
    """Test that a degree matrix without corner overlap is refused."""
    assert run(["ghost", "--b", "0,0", "--a", "1,1,1", "--n", "2"]) == EXIT_MISMATCH


class TestBuildSpec:
    def parse(self, argv):
        args = create_parser().parse_args(["--workspace", str(ROOT), *argv])
        return args, RunConfig.from_args(args)

    def test_environment_seed(self, monkeypatch):
        """Test that DETSTRATA_SEED reaches the spec."""
        monkeypatch.setenv(SEED_ENV_VAR, "7")
        args, config = self.parse(["stratum-info", "--b", "0,0", "--a", "1,1,1", "--n", "2"])
        assert build_spec(args, config).seed == 7

    def test_prime_override(self, monkeypatch):
        """Test that --p replaces the default characteristic."""
        monkeypatch.delenv(SEED_ENV_VAR, raising=False)
        args, config = self.parse(
            ["stratum-info", "--b", "0,0", "--a", "1,1,1", "--n", "2", "--p", "32003"]
        )
        spec = build_spec(args, config)
        assert spec.p == 32003
        assert spec.seed == 0

    def test_explicit_entries(self, tmp_path):
        """Test that --explicit attaches the matrix text."""
        path = tmp_path / "matrix.json"
        path.write_text(json.dumps([["x0", "x1", "*"], ["x1", "x2", "0"]]), encoding="utf-8")
        args, config = self.parse(
            ["betti", "--b", "0,0", "--a", "1,1,1", "--n", "2", "--explicit", str(path)]
        )
        assert build_spec(args, config).explicit_entries == (
            ("x0", "x1", "*"),
            ("x1", "x2", "0"),
        )


def test_load_explicit_entries_rejects_non_text(tmp_path):
    """Test that a matrix file must hold rows of strings."""
    path = tmp_path / "matrix.json"
    path.write_text(json.dumps([[1, 2, 3]]), encoding="utf-8")
    with pytest.raises(DetStrataError):
        load_explicit_entries(path)
