import csv

import pytest

from navier_bie.main import main
from navier_bie.models.experiment import build_config, load_config, read_manifest
from navier_bie.utils.errors import ConfigurationError


def _rows(path):
    with path.open() as handle:
        return list(csv.DictReader(handle))


def test_empty_grid_list_is_a_configuration_error(tmp_path):
    assert main(["solve", "--N", "", "--out", str(tmp_path)]) == 2


def test_unknown_geometry_exits_with_code_two(tmp_path):
    assert main(["solve", "--geometry", "peanut", "--N", "16", "--out", str(tmp_path)]) == 2


def test_odd_grid_size_rejected(tmp_path):
    assert main(["solve", "--N", "33", "--out", str(tmp_path)]) == 2


def test_solve_writes_csv(tmp_path, capsys):
    code = main(["solve", "--geometry", "ellipse", "--omega", "10", "--N", "32,64", "--out", str(tmp_path)])
    assert code == 0
    rows = _rows(tmp_path / "solve.csv")
    assert [int(r["N"]) for r in rows] == [32, 64]
    assert list(rows[0]) == [
        "geometry", "N", "kind", "omega", "solver", "iterations", "residual", "farfield_error", "assemble_ms", "solve_ms",
    ]
    assert float(rows[1]["farfield_error"]) < 1e-8
    assert "solve finished" in capsys.readouterr().out


def test_solve_dumps_systems_and_fields(tmp_path):
    code = main(["solve", "--N", "16", "--dump-systems", "--export-fields", "--out", str(tmp_path)])
    assert code == 0
    assert (tmp_path / "ellipse_general_w10_N16.nvbie").exists()
    assert len(_rows(tmp_path / "field_ellipse_general_w10_N16.csv")) > 0


def test_gmres_study_reports_reference(tmp_path):
    code = main(["gmres-study", "--geometry", "ellipse", "--N", "32,64", "--out", str(tmp_path)])
    assert code == 0
    rows = _rows(tmp_path / "gmres.csv")
    assert rows[0]["solver"] == "gmres"
    assert int(rows[0]["reference"]) == 34


def test_convergence_reports_slope(tmp_path):
    assert main(["convergence", "--N", "32,64", "--out", str(tmp_path)]) == 0
    rows = _rows(tmp_path / "convergence.csv")
    assert rows[0]["slope"] == ""
    assert float(rows[1]["slope"]) > 6


def test_spectrum_and_condition_outputs(tmp_path):
    assert main(["spectrum", "--N", "16", "--out", str(tmp_path)]) == 0
    assert len(_rows(tmp_path / "eigenvalues_ellipse_general_w10_N16.csv")) == 32 + 2
    assert main(["condition", "--geometry", "cavity", "--N", "32", "--out", str(tmp_path)]) == 0
    row = _rows(tmp_path / "condition.csv")[0]
    assert float(row["cond_regularized"]) > 1
    assert float(row["reference_regularized"]) == pytest.approx(1.28e3)


def test_manifest_errors_name_the_key(tmp_path):
    manifest = tmp_path / "bad.toml"
    manifest.write_text("[discretization]\nN = [15]\n")
    with pytest.raises(ConfigurationError) as excinfo:
        load_config(manifest)
    assert excinfo.value.field == "discretization.N"

    manifest.write_text("[solver]\nmethod = 'cg'\n")
    with pytest.raises(ConfigurationError) as excinfo:
        load_config(manifest)
    assert excinfo.value.field == "solver.method"


def test_manifest_rejects_unknown_keys(tmp_path):
    manifest = tmp_path / "bad.toml"
    manifest.write_text("[physics]\nfrequency = 10\n")
    with pytest.raises(ConfigurationError) as excinfo:
        read_manifest(manifest)
    assert excinfo.value.field == "physics.frequency"


def test_wavenumbers_must_come_in_pairs():
    with pytest.raises(ConfigurationError):
        build_config({"k_p": 3.0})


def test_command_line_overrides_manifest(tmp_path):
    manifest = tmp_path / "run.toml"
    manifest.write_text("[geometry]\nname = 'kite'\n\n[discretization]\nN = [64, 32]\n")
    config = load_config(manifest, {"N": [128], "solver": None})
    assert config.geometry == ["kite"]
    assert config.N == [128]
    assert load_config(manifest).N == [32, 64]


@pytest.mark.parametrize(
    "physics",
    ["k_p = 5.0\nk_s = 6.0\n", "mu = -1.0\n", "lam = -3.0\n"],
)
def test_invalid_physics_exits_with_code_two(tmp_path, physics):
    manifest = tmp_path / "bad.toml"
    manifest.write_text("[physics]\n" + physics)
    assert main(["solve", "--config", str(manifest), "--N", "16", "--out", str(tmp_path)]) == 2
    with pytest.raises(ConfigurationError) as excinfo:
        load_config(manifest)
    assert excinfo.value.field == "physics"


def test_cavity_uses_an_interior_source(tmp_path):
    assert main(["solve", "--geometry", "cavity", "--N", "256", "--out", str(tmp_path)]) == 0
    assert float(_rows(tmp_path / "solve.csv")[0]["farfield_error"]) < 1e-4
