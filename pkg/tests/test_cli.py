import json
import subprocess
import sys

import pytest

from pathsig.cli import main
from pathsig.signature import tensor_from_level_json
from pathsig.varieties import polynomial_map_from_json, universal_variety_map
from pathsig.words import Tensor, parse_tensor, tensor_from_json

CUBIC_PATH = {
    "dimension": 2,
    "variables": [],
    "segments": [["t + 2 t^2 + 3 t^3", "4 t + 5 t^2 + 6 t^3"]],
}


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture()
def cubic_path_file(tmp_path):
    target = tmp_path / "z.json"
    target.write_text(json.dumps(CUBIC_PATH))
    return str(target)


def test_sig_word_from_file(capsys, cubic_path_file):
    code, out, _ = run_cli(capsys, "sig", "--path", cubic_path_file, "--word", "[1,2]")
    assert code == 0
    assert out == "427/10\n"


def test_sig_word_inline_json(capsys):
    code, out, _ = run_cli(capsys, "sig", "--path", json.dumps(CUBIC_PATH), "--word", "[1,2]")
    assert code == 0
    assert out == "427/10\n"


def test_sig_level_json_round_trip(capsys, cubic_path_file):
    code, out, _ = run_cli(
        capsys, "sig", "--path", cubic_path_file, "--level", "2", "--format", "json"
    )
    assert code == 0
    tensor = tensor_from_level_json(json.loads(out))
    from pathsig.paths import path_from_json
    from pathsig.signature import sig_level

    assert tensor == sig_level(path_from_json(CUBIC_PATH), 2)


def test_lyndon_words_line(capsys):
    code, out, _ = run_cli(capsys, "lyndon", "words", "--alphabet", "3", "--max-len", "2")
    assert code == 0
    assert out == "[1] [1,2] [1,3] [2] [2,3] [3]\n"


def test_lyndon_basis(capsys):
    code, out, _ = run_cli(capsys, "lyndon", "basis", "[1,2]", "--alphabet", "2")
    assert code == 0
    assert parse_tensor(out, 2) == Tensor.word([1, 2], 2) - Tensor.word([2, 1], 2)


def test_lyndon_decompose(capsys):
    code, out, _ = run_cli(capsys, "lyndon", "decompose", "[1,1]", "--alphabet", "2")
    assert code == 0
    assert out == "1/2 [1]^2\n"


def test_shuffle_output(capsys):
    code, out, _ = run_cli(capsys, "shuffle", "[1]", "[1,2,3]", "--alphabet", "3")
    assert code == 0
    assert out == "[1, 2, 3, 1] + [1, 2, 1, 3] + 2 [1, 1, 2, 3]\n"


def test_half_shuffle_output(capsys):
    code, out, _ = run_cli(capsys, "half-shuffle", "[1,2,3]", "[1]", "--alphabet", "3")
    assert code == 0
    assert out == "[1, 2, 3, 1]\n"


def test_concat_output(capsys):
    code, out, _ = run_cli(capsys, "concat", "[1]", "[2]", "--alphabet", "2")
    assert code == 0
    assert out == "[1, 2]\n"


def test_shuffle_with_polynomial_coefficients(capsys):
    code, out, _ = run_cli(
        capsys, "shuffle", "x [1]", "[2]", "--alphabet", "2", "--vars", "x"
    )
    assert code == 0
    assert out == "x [2, 1] + x [1, 2]\n"


def test_core_monomial_tensor(capsys):
    code, out, _ = run_cli(capsys, "core", "monomial", "--dim", "2", "--level", "1")
    assert code == 0
    assert out == "[2] + [1]\n"


def test_exp_series_and_projection(capsys):
    code, out, _ = run_cli(capsys, "exp", "2 [1]", "--level", "2", "--alphabet", "1")
    assert code == 0
    assert out == "2 [1, 1] + 2 [1] + 1 []\n"
    code, out, _ = run_cli(
        capsys, "exp", "2 [1]", "--level", "2", "--alphabet", "1", "--project"
    )
    assert code == 0
    assert out == "2 [1, 1]\n"


def test_adjoint_command(capsys, tmp_path):
    polys = tmp_path / "polys.json"
    polys.write_text(json.dumps({"variables": ["x", "y"], "polynomials": ["x^2", "y^3", "x - y"]}))
    code, out, _ = run_cli(
        capsys, "adjoint", "--word", "[1]", "--polys", str(polys), "--source-dim", "2"
    )
    assert code == 0
    assert out == "2 [1, 1]\n"


def test_adjoint_dimension_mismatch_is_domain_error(capsys, tmp_path):
    polys = tmp_path / "polys.json"
    polys.write_text(json.dumps({"variables": ["x", "y"], "polynomials": ["x"]}))
    code, _, err = run_cli(
        capsys, "adjoint", "--word", "[1]", "--polys", str(polys), "--source-dim", "3"
    )
    assert code == 1
    assert "error" in err


def test_variety_dim_line(capsys):
    code, out, _ = run_cli(
        capsys,
        "variety", "dim", "--family", "pl", "--dim", "3", "--level", "3",
        "--pieces", "2", "--seed", "7",
    )
    assert code == 0
    assert out == "affine: 6, projective: 5\n"


def test_variety_map_json_round_trip(capsys):
    code, out, _ = run_cli(
        capsys, "variety", "map", "universal", "--dim", "2", "--level", "3",
        "--format", "json",
    )
    assert code == 0
    assert polynomial_map_from_json(json.loads(out)) == universal_variety_map(2, 3)


def test_variety_ideal_counts_line(capsys):
    code, out, _ = run_cli(
        capsys,
        "variety", "ideal-counts", "--family", "universal", "--dim", "2",
        "--level", "3", "--seed", "0",
    )
    assert code == 0
    assert out == "linear: 0, quadrics: 6\n"


def test_variety_export_script(capsys):
    code, out, _ = run_cli(
        capsys,
        "variety", "export", "--family", "universal", "--dim", "2", "--level", "3",
    )
    assert code == 0
    assert "kernel f" in out and out.endswith("\n")


def test_determinism_byte_identical(capsys):
    argv = [
        "variety", "dim", "--family", "poly", "--dim", "2", "--level", "3",
        "--pieces", "2", "--seed", "5",
    ]
    outputs = set()
    for _ in range(2):
        code, out, _ = run_cli(capsys, *argv)
        assert code == 0
        outputs.add(out)
    assert len(outputs) == 1


def test_seed_env_var_override(capsys, monkeypatch):
    monkeypatch.setenv("PATHSIG_SEED", "12345")
    code, out, _ = run_cli(
        capsys, "variety", "dim", "--family", "universal", "--dim", "2", "--level", "2"
    )
    assert code == 0
    assert out.startswith("affine:")


def test_unknown_subcommand_exits_2(capsys):
    code, _, _ = run_cli(capsys, "frobnicate")
    assert code == 2


def test_missing_required_flag_exits_2(capsys):
    code, _, _ = run_cli(capsys, "lyndon", "words", "--alphabet", "3")
    assert code == 2


def test_domain_error_exits_1(capsys):
    code, _, err = run_cli(capsys, "shuffle", "[1,5]", "[1]", "--alphabet", "3")
    assert code == 1
    assert "error" in err


def test_tensor_json_output_round_trip(capsys):
    code, out, _ = run_cli(
        capsys, "shuffle", "[1,2]", "[2]", "--alphabet", "2", "--format", "json"
    )
    assert code == 0
    rebuilt = tensor_from_json(json.loads(out))
    from pathsig.words import shuffle

    assert rebuilt == shuffle(Tensor.word([1, 2], 2), Tensor.word([2], 2))


def test_module_entry_point():
    result = subprocess.run(
        [sys.executable, "-m", "pathsig", "--help"], capture_output=True, text=True
    )
    assert result.returncode == 0
    assert "pathsig" in result.stdout
