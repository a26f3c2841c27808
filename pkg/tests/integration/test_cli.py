"""End-to-end tests of the psram-perf command line."""

import json

import pandas as pd
import pytest

from app.cli import EXIT_INVALID, EXIT_OK, main
from psram.config import REFERENCE_CONFIG_PATH


def _run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip() else None


@pytest.fixture
def w16_config(tmp_path):
    raw = json.loads(REFERENCE_CONFIG_PATH.read_text())
    raw["w_bits"] = 16
    path = tmp_path / "w16.json"
    path.write_text(json.dumps(raw))
    return path


class TestModel:
    def test_reference_configuration(self, tmp_path, capsys):
        code, payload = _run(capsys, "--out", str(tmp_path), "model", "--workload", "sst")
        assert code == EXIT_OK
        report = payload[0]["report"]
        assert report["p"] == 32
        assert report["peak"] == pytest.approx(2.048e12)
        assert report["area"] == pytest.approx(25.6)
        assert report["efficiency"] * 1e-12 == pytest.approx(2.5)
        assert (tmp_path / "report.json").exists()
        assert (tmp_path / "report.csv").exists()

    def test_sixteen_bit_words(self, tmp_path, capsys, w16_config):
        code, payload = _run(
            capsys, "--config", str(w16_config), "--out", str(tmp_path), "model"
        )
        assert code == EXIT_OK
        assert {entry["report"]["p"] for entry in payload} == {16}
        assert payload[0]["report"]["peak"] == pytest.approx(1.024e12)

    def test_empty_workload_keeps_fixed_overheads(self, tmp_path, capsys):
        code, payload = _run(
            capsys, "model", "--n-total", "0", "--s-bits", "0", "--out", str(tmp_path)
        )
        assert code == EXIT_OK
        breakdown = payload[0]["report"]["breakdown"]
        assert breakdown["t_comp"] == 0.0
        assert breakdown["t_mem"] == pytest.approx(1e-7)
        assert breakdown["t_conv"] == pytest.approx(1e-8)

    def test_unknown_workload(self, tmp_path, capsys):
        code = main(["--out", str(tmp_path), "model", "--workload", "fft3d"])
        err = capsys.readouterr().err
        assert code == EXIT_INVALID
        assert "mttkrp" in err and "sst" in err and "vlasov" in err

    def test_missing_config(self, tmp_path, capsys):
        code = main(["--config", str(tmp_path / "none.json"), "--out", str(tmp_path), "model"])
        assert code == EXIT_INVALID
        assert "not found" in capsys.readouterr().err

    def test_unknown_log_level(self, tmp_path, capsys):
        code = main(["--log-level", "chatty", "--out", str(tmp_path), "model"])
        assert code == EXIT_INVALID
        assert "unknown log level" in capsys.readouterr().err
        assert not (tmp_path / "manifest.json").exists()


class TestSweep:
    def test_frequency_sweep_table(self, tmp_path, capsys):
        code, _ = _run(
            capsys,
            "sweep",
            "--param",
            "frequency",
            "--axis",
            "16e9",
            "20e9",
            "32e9",
            "48e9",
            "--out",
            str(tmp_path),
        )
        assert code == EXIT_OK
        frame = pd.read_csv(tmp_path / "sweep.csv")
        assert list(frame["energy_per_bit_pj"]) == pytest.approx([0.4, 0.5, 0.8, 1.2])
        assert [round(v, 2) for v in frame["efficiency_tops_per_w"]] == [5.0, 4.0, 2.5, 1.67]

    def test_bandwidth_sweep_non_decreasing(self, tmp_path, capsys):
        code, _ = _run(
            capsys,
            "--out",
            str(tmp_path),
            "sweep",
            "--param",
            "bandwidth",
            "--axis",
            "1e12",
            "5e12",
            "9.8e12",
            "2e13",
        )
        assert code == EXIT_OK
        sustained = list(pd.read_csv(tmp_path / "sweep.csv")["sustained"])
        assert sustained == sorted(sustained)

    def test_arraybits_peaks(self, tmp_path, capsys):
        code, payload = _run(
            capsys,
            "--out",
            str(tmp_path),
            "sweep",
            "--param",
            "arraybits",
            "--axis",
            "256",
            "512",
            "1024",
            "--workload",
            "vlasov",
        )
        assert code == EXIT_OK
        assert payload[0]["peaks"] == pytest.approx([2.048e12, 4.096e12, 8.192e12])

    def test_frequency_series(self, tmp_path, capsys):
        code, payload = _run(
            capsys,
            "--out",
            str(tmp_path),
            "sweep",
            "--param",
            "gridpoints",
            "--axis",
            "100",
            "1000",
            "--frequencies",
            "20e9",
            "32e9",
        )
        assert code == EXIT_OK
        assert [r["series"] for r in payload] == ["f=2e+10", "f=3.2e+10"]

    def test_invalid_axis(self, tmp_path, capsys):
        code = main(
            ["--out", str(tmp_path), "sweep", "--param", "bandwidth", "--axis", "2e12", "1e12"]
        )
        assert code == EXIT_INVALID
        assert "strictly increasing" in capsys.readouterr().err

    def test_unknown_parameter(self, tmp_path, capsys):
        code = main(["--out", str(tmp_path), "sweep", "--param", "voltage", "--axis", "1"])
        assert code == EXIT_INVALID


class TestRoofline:
    def test_default_workloads(self, tmp_path, capsys):
        code, payload = _run(capsys, "--out", str(tmp_path), "roofline")
        assert code == EXIT_OK
        bounds = {p["workload"]: p["bound"] for p in payload["points"]}
        assert bounds == {
            "sst": "ComputeBound",
            "mttkrp": "MemoryBound",
            "vlasov": "ComputeBound",
        }
        assert payload["ridge"] == pytest.approx(1.6718, rel=1e-4)
        assert all(p["ai"] > 0 for p in payload["points"])
        points = pd.read_csv(tmp_path / "roofline_points.csv")
        assert len(points) == 3

    def test_roofs_only(self, tmp_path, capsys):
        code, payload = _run(capsys, "--out", str(tmp_path), "roofline", "--roofs-only")
        assert code == EXIT_OK
        assert payload["points"] == []
        roofs = pd.read_csv(tmp_path / "roofline_roofs.csv")
        assert set(roofs["roof"]) == {"memory", "compute"}

    def test_custom_point_at_ridge(self, tmp_path, capsys):
        ridge = 2.048e12 / 1.225e12
        point = f"knee:{ridge * 1e12!r}:8e12"
        code, payload = _run(capsys, "--out", str(tmp_path), "roofline", "--custom", point)
        assert code == EXIT_OK
        assert payload["points"][0]["bound"] == "Balanced"

    def test_bitwidth_shift(self, tmp_path, capsys):
        code, payload = _run(
            capsys,
            "--out",
            str(tmp_path),
            "roofline",
            "--workload",
            "mttkrp",
            "--shift",
            "bitwidth",
            "--values",
            "4",
            "8",
            "16",
        )
        assert code == EXIT_OK
        ais = [row["ai"] for row in payload["shift"]]
        assert ais[0] > ais[1] > ais[2]
        assert (tmp_path / "roofline_shift.csv").exists()


class TestSimulate:
    def test_sst(self, tmp_path, capsys):
        code, payload = _run(
            capsys,
            "--out",
            str(tmp_path),
            "--seed",
            "1",
            "simulate",
            "--workload",
            "sst",
            "--n",
            "100",
            "--steps",
            "50",
        )
        assert code == EXIT_OK
        assert payload["oracle"]["max_rel_error"] <= 1e-12
        assert payload["stats"]["macs_executed"] == 30 * 100 * 50

    def test_vlasov_energy(self, tmp_path, capsys):
        code, payload = _run(
            capsys, "--out", str(tmp_path), "simulate", "--workload", "vlasov", "--n-modes", "64"
        )
        assert code == EXIT_OK
        assert payload["oracle"]["max_rel_error"] == 0.0
        assert payload["stats"]["switching_events"] == 6 * 64 * 8
        stats = json.loads((tmp_path / "stats.json").read_text())
        assert stats["switching_energy_j"] == pytest.approx(6 * 64 * 8 * 0.8e-12)

    def test_mttkrp_from_file(self, tmp_path, capsys):
        tensor = tmp_path / "x.tns"
        tensor.write_text("# dims: 3 3 3\n1 1 1 2.0\n2 3 1 -1.0\n3 2 2 0.5\n")
        code, payload = _run(
            capsys,
            "--out",
            str(tmp_path / "run"),
            "simulate",
            "--workload",
            "mttkrp",
            "--tensor",
            str(tensor),
            "--rank",
            "4",
        )
        assert code == EXIT_OK
        assert payload["stats"]["macs_executed"] == 2 * 4 * 3
        manifest = json.loads((tmp_path / "run" / "manifest.json").read_text())
        assert str(tensor) in manifest["inputs"]

    def test_missing_tensor(self, tmp_path, capsys):
        code = main(
            [
                "--out",
                str(tmp_path),
                "simulate",
                "--workload",
                "mttkrp",
                "--tensor",
                str(tmp_path / "missing.tns"),
            ]
        )
        assert code == EXIT_INVALID
        assert "not found" in capsys.readouterr().err

    def test_malformed_tensor_reports_line(self, tmp_path, capsys):
        tensor = tmp_path / "bad.tns"
        tensor.write_text("1 1 1 1.0\n1 1 oops 2.0\n")
        code = main(
            ["--out", str(tmp_path), "simulate", "--workload", "mttkrp", "--tensor", str(tensor)]
        )
        assert code == EXIT_INVALID
        assert "line 2" in capsys.readouterr().err

    def test_convolution(self, tmp_path, capsys):
        code, payload = _run(
            capsys, "--out", str(tmp_path), "simulate", "--workload", "convolution", "--n", "64"
        )
        assert code == EXIT_OK
        assert payload["oracle"]["max_rel_error"] <= 1e-9

    def test_unknown_workload(self, tmp_path, capsys):
        code = main(["--out", str(tmp_path), "simulate", "--workload", "fem"])
        assert code == EXIT_INVALID

    def test_sst_from_input_file(self, tmp_path, capsys):
        problem = tmp_path / "sod.json"
        problem.write_text(json.dumps({"n": 20, "steps": 3, "k": 0.05}))
        code, payload = _run(
            capsys,
            "--out",
            str(tmp_path / "run"),
            "simulate",
            "--workload",
            "sst",
            "--input",
            str(problem),
        )
        assert code == EXIT_OK
        assert payload["stats"]["macs_executed"] == 30 * 20 * 3
        manifest = json.loads((tmp_path / "run" / "manifest.json").read_text())
        assert str(problem) in manifest["inputs"]
        assert manifest["resolved"]["sod"]["k"] == 0.05

    def test_vlasov_from_input_file(self, tmp_path, capsys):
        modes = tmp_path / "modes.json"
        parts = {
            "f_real": [1.0, 0.0],
            "f_imag": [1.0, 0.0],
            "k_real": [2.0, 1.0],
            "k_imag": [1.0, 0.0],
            "z_real": [3.0, 4.0],
            "z_imag": [-1.0, 0.0],
        }
        modes.write_text(json.dumps(parts))
        argv = ["--out", str(tmp_path), "simulate", "--workload", "vlasov", "--input", str(modes)]
        code, payload = _run(capsys, *argv)
        assert code == EXIT_OK
        assert payload["oracle"]["max_rel_error"] == 0.0
        frame = pd.read_csv(tmp_path / "outputs.csv")
        assert list(frame["f_real"]) == [8.0, 4.0]
        assert list(frame["f_imag"]) == [2.0, 0.0]

    @pytest.mark.parametrize(
        "workload,record,field",
        [
            ("sst", {"n": 0, "steps": 1, "k": 0.05}, "n: Input should be greater"),
            ("sst", {"n": 10, "k": 0.05, "left": [-1.0, 0.0, 1.0]}, "positive density"),
            ("vlasov", {"f_real": [1.0]}, "k_real"),
        ],
    )
    def test_invalid_input_file(self, tmp_path, capsys, workload, record, field):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(record))
        code = main(
            ["--out", str(tmp_path), "simulate", "--workload", workload, "--input", str(path)]
        )
        assert code == EXIT_INVALID
        assert field in capsys.readouterr().err

    def test_input_rejected_for_other_workloads(self, tmp_path, capsys):
        path = tmp_path / "x.json"
        path.write_text("{}")
        code = main(
            ["--out", str(tmp_path), "simulate", "--workload", "mttkrp", "--input", str(path)]
        )
        assert code == EXIT_INVALID

    @pytest.mark.parametrize(
        "flags",
        [
            ["--workload", "sst", "--n", "0"],
            ["--workload", "convolution", "--n", "0"],
            ["--workload", "vlasov", "--n-modes", "0"],
            ["--workload", "mttkrp", "--rank", "0"],
            ["--workload", "sst", "--n", "8", "--p", "0"],
        ],
    )
    def test_zero_sizes_are_rejected(self, tmp_path, capsys, flags):
        assert main(["--out", str(tmp_path), "simulate"] + flags) == EXIT_INVALID
        assert ">= 1" in capsys.readouterr().err

    def test_manifest_records_resolved_defaults(self, tmp_path, capsys):
        code, _ = _run(capsys, "--out", str(tmp_path), "simulate", "--workload", "sst", "--n", "20")
        assert code == EXIT_OK
        manifest = json.loads((tmp_path / "manifest.json").read_text())
        assert manifest["options"]["steps"] is None
        assert manifest["resolved"]["sod"]["steps"] == 10
        assert manifest["resolved"]["sod"]["n"] == 20
        assert manifest["resolved"]["mesh"]["p"] == 20
        assert manifest["defaults"]["workloads"]["sst"]["steps"] == 10
        assert manifest["defaults"]["tolerances"]["real"]["sst"] == 1e-12


def test_usage_error_exit_code(capsys):
    assert main(["model", "--efficiency", "watts"]) == EXIT_INVALID
    assert main([]) == EXIT_INVALID


def test_global_flags_after_subcommand(tmp_path, capsys):
    argv = ["model", "--workload", "vlasov", "--out", str(tmp_path), "--format", "csv"]
    code, _ = _run(capsys, *argv)
    assert code == EXIT_OK
    assert (tmp_path / "report.csv").exists()
    assert not (tmp_path / "report.json").exists()


@pytest.mark.parametrize(
    "argv",
    [
        ["model"],
        ["sweep", "--param", "gridpoints", "--axis", "100", "1000", "10000"],
        ["roofline"],
        ["simulate", "--workload", "mttkrp", "--seed", "3"],
    ],
)
def test_reruns_are_byte_identical(tmp_path, capsys, argv):
    out = tmp_path / "out"
    assert main(["--out", str(out)] + argv) == EXIT_OK
    first = {p.name: p.read_bytes() for p in out.iterdir()}
    assert main(["--out", str(out)] + argv) == EXIT_OK
    second = {p.name: p.read_bytes() for p in out.iterdir()}
    capsys.readouterr()

    assert first.keys() == second.keys()
    for name in first:
        if name == "manifest.json":
            a, b = json.loads(first[name]), json.loads(second[name])
            a.pop("created_at")
            b.pop("created_at")
            assert a == b
        else:
            assert first[name] == second[name], name


def test_manifest_records_the_run(tmp_path, capsys):
    assert main(["--out", str(tmp_path), "--seed", "7", "roofline"]) == EXIT_OK
    capsys.readouterr()
    manifest = json.loads((tmp_path / "manifest.json").read_text())
    assert manifest["command"] == "roofline"
    assert manifest["seed"] == 7
    assert manifest["config"]["w_bits"] == 8
    assert "roofline.json" in manifest["outputs"]
    assert manifest["version"]
