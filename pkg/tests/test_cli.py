import json
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from curveshift.cli import main
from curveshift.simulate import PATTERNS, SimulationSpec, generate

T = 2.0 * np.pi


def write_curves(path, columns, names=None, times=None):
    columns = [np.asarray(c, dtype=float) for c in columns]
    names = names or [f"curve{i + 1}" for i in range(len(columns))]
    header = (["t"] if times is not None else []) + names
    lines = [",".join(header)]
    for i in range(len(columns[0])):
        cells = ([repr(float(times[i]))] if times is not None else [])
        cells += [repr(float(c[i])) for c in columns]
        lines.append(",".join(cells))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")


def read_csv(path):
    lines = path.read_text().strip().split("\n")
    header = lines[0].split(",")
    data = np.array([[float(v) for v in ln.split(",")] for ln in lines[1:]])
    return header, data


class TestEstimate:
    def test_identical_curves_zero_shifts_aligned_unchanged(self, tmp_path):
        n = 51
        t = np.arange(n) * T / n
        y = np.exp(np.cos(t))
        src = tmp_path / "in.csv"
        write_curves(src, [y, y, y])
        rc = main(["estimate", "--input", str(src), "--output-dir", str(tmp_path / "out")])
        assert rc == 0
        _, shifts = read_csv(tmp_path / "out" / "shifts.csv")
        assert np.array_equal(shifts[:, 1], np.zeros(3))  # theta_hat column
        _, aligned = read_csv(tmp_path / "out" / "aligned.csv")
        assert np.array_equal(aligned, np.column_stack([y, y, y]))

    def test_quarter_period_cosine(self, tmp_path):
        n = 101
        t = np.arange(n) * T / n
        src = tmp_path / "in.csv"
        write_curves(src, [np.cos(t), np.cos(t - np.pi / 2)], times=t)
        out = tmp_path / "out"
        rc = main(["estimate", "--input", str(src), "--output-dir", str(out),
                   "--period", repr(T)])
        assert rc == 0
        report = json.loads((out / "report.json").read_text())
        assert report["theta_hat"][1] == pytest.approx(np.pi / 2, abs=1e-4)
        assert report["schema_version"] == 1

    def test_aligned_csv_round_trip_reproduces_itself(self, tmp_path):
        n = 51
        t = np.arange(n) * T / n
        y = np.exp(np.cos(t))
        src = tmp_path / "in.csv"
        write_curves(src, [y, y], times=t)
        rc = main(["estimate", "--input", str(src), "--output-dir", str(tmp_path / "o1")])
        assert rc == 0
        first = (tmp_path / "o1" / "aligned.csv").read_bytes()
        rc = main(["estimate", "--input", str(tmp_path / "o1" / "aligned.csv"),
                   "--output-dir", str(tmp_path / "o2")])
        assert rc == 0
        second = (tmp_path / "o2" / "aligned.csv").read_bytes()
        assert first == second

    def test_byte_identical_outputs_over_reruns(self, tmp_path):
        spec = SimulationSpec(pattern="sinc15", n_curves=5, n_samples=101, sigma=1.0,
                              replicates=1, seed=6)
        rep = generate(spec, 0)
        src = tmp_path / "in.csv"
        write_curves(src, list(rep.curves.samples))
        for d in ("a", "b"):
            assert main(["estimate", "--input", str(src),
                         "--output-dir", str(tmp_path / d)]) == 0
        for name in ("shifts.csv", "aligned.csv", "mean.csv", "covariance.csv", "report.json"):
            assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()

    def test_aligned_curves_match_reference_for_continuous_shifts(self, tmp_path):
        # Band-limited curves with off-grid shifts: spectral realignment must
        # reproduce the reference curve, not its nearest-grid roll.
        n = 101
        t = np.arange(n) * T / n
        base = np.cos(t) + 0.4 * np.sin(2 * t)
        shifts = [0.0, 0.337, -1.911]
        src = tmp_path / "in.csv"
        write_curves(src, [np.cos(t - s) + 0.4 * np.sin(2 * (t - s)) for s in shifts])
        out = tmp_path / "out"
        rc = main(["estimate", "--input", str(src), "--output-dir", str(out),
                   "--period", repr(T), "--grad-tol", "1e-12"])
        assert rc == 0
        _, aligned = read_csv(out / "aligned.csv")
        for j in range(3):
            assert np.max(np.abs(aligned[:, j] - base)) < 1e-6

    def test_aligned_mean_sharper_than_raw_mean(self, tmp_path):
        spec = SimulationSpec(pattern="sinc15", n_curves=10, n_samples=101, sigma=1.0,
                              replicates=1, seed=1)
        rep = generate(spec, 0)
        src = tmp_path / "in.csv"
        write_curves(src, list(rep.curves.samples))
        out = tmp_path / "out"
        rc = main(["estimate", "--input", str(src), "--output-dir", str(out)])
        assert rc == 0
        header, mean = read_csv(out / "mean.csv")
        raw = mean[:, header.index("raw_mean")]
        aligned = mean[:, header.index("aligned_mean")]
        assert aligned.max() > raw.max()

    def test_even_n_rejected_without_flag(self, tmp_path, capsys):
        src = tmp_path / "in.csv"
        write_curves(src, [np.cos(np.arange(100)), np.sin(np.arange(100))])
        rc = main(["estimate", "--input", str(src), "--output-dir", str(tmp_path / "o")])
        assert rc == 2
        assert "input" in capsys.readouterr().err

    def test_truncate_even_warns_and_succeeds(self, tmp_path, capsys):
        n = 102
        t = np.arange(n) * T / n
        src = tmp_path / "in.csv"
        write_curves(src, [np.cos(t), np.cos(t - 0.4)])
        out = tmp_path / "o"
        rc = main(["estimate", "--input", str(src), "--output-dir", str(out),
                   "--truncate-even", "--period", repr(T)])
        assert rc == 0
        assert "truncated" in capsys.readouterr().err
        report = json.loads((out / "report.json").read_text())
        assert report["n_samples"] == 101
        assert report["n_samples_input"] == 102
        assert any("truncated" in w for w in report["warnings"])

    def test_malformed_csv_exit_2(self, tmp_path, capsys):
        src = tmp_path / "bad.csv"
        src.write_text("a,b\n1.0,2.0\n3.0\n")
        assert main(["estimate", "--input", str(src), "--output-dir", str(tmp_path / "o")]) == 2
        src.write_text("a,b\n1.0,x\n")
        assert main(["estimate", "--input", str(src), "--output-dir", str(tmp_path / "o")]) == 2
        capsys.readouterr()

    def test_non_equispaced_time_rejected(self, tmp_path, capsys):
        src = tmp_path / "in.csv"
        times = np.array([0.0, 1.0, 2.5, 3.0, 4.0])
        write_curves(src, [np.ones(5), np.zeros(5)], times=times)
        rc = main(["estimate", "--input", str(src), "--output-dir", str(tmp_path / "o")])
        assert rc == 2
        assert "equispaced" in capsys.readouterr().err

    def test_zero_weights_exit_3(self, tmp_path, capsys):
        n = 11
        t = np.arange(n) * T / n
        src = tmp_path / "in.csv"
        write_curves(src, [np.cos(t), np.sin(t)])
        wfile = tmp_path / "w.csv"
        wfile.write_text("l,delta\n1,0.0\n2,0.0\n")
        rc = main(["estimate", "--input", str(src), "--output-dir", str(tmp_path / "o"),
                   "--weights", f"file:{wfile}"])
        assert rc == 3
        assert "estimation" in capsys.readouterr().err

    def test_constant_offset_curves_exit_4(self, tmp_path, capsys):
        src = tmp_path / "in.csv"
        write_curves(src, [np.full(101, 5.0), np.full(101, 3.0)])
        rc = main(["estimate", "--input", str(src), "--output-dir", str(tmp_path / "o")])
        assert rc == 4
        assert "inference" in capsys.readouterr().err

    def test_weights_file_round_trip(self, tmp_path):
        n = 101
        t = np.arange(n) * T / n
        src = tmp_path / "in.csv"
        write_curves(src, [np.cos(t), np.cos(t - 0.8)])
        wfile = tmp_path / "w.csv"
        rows = ["l,delta"] + [f"{l},1.0" for l in range(-3, 4) if l != 0]
        wfile.write_text("\n".join(rows) + "\n")
        out = tmp_path / "o"
        rc = main(["estimate", "--input", str(src), "--output-dir", str(out),
                   "--weights", f"file:{wfile}"])
        assert rc == 0
        report = json.loads((out / "report.json").read_text())
        assert report["theta_hat"][1] == pytest.approx(0.8, abs=1e-6)


class TestSimulate:
    def test_figure_grid_layout(self, tmp_path):
        out = tmp_path / "sim"
        rc = main(["simulate", "--output-dir", str(out), "--curves", "2",
                   "--samples", "101", "--sigma", "1,3,5,7",
                   "--weights", "unit,power:1.3,power:2", "--replicates", "2",
                   "--seed", "9", "--shifts", f"0,{np.pi / 3!r}"])
        assert rc == 0
        plot_files = sorted(p.name for p in (out / "plotdata").iterdir())
        assert len(plot_files) == 12
        svg_files = sorted(p.name for p in (out / "figures").iterdir())
        assert len(svg_files) == 12
        header, grid = read_csv(out / "plotdata" / plot_files[0])
        assert header == ["alpha", "criterion"]
        assert grid.shape[0] == 629
        # SVGs parse as XML and carry the generator version marker
        svg_text = (out / "figures" / svg_files[0]).read_text()
        ET.fromstring(svg_text.split("\n", 2)[2])
        assert "curveshift-svg" in svg_text

    def test_summary_structure_and_coverage_bounds(self, tmp_path):
        out = tmp_path / "sim"
        rc = main(["simulate", "--output-dir", str(out), "--curves", "4",
                   "--samples", "51", "--sigma", "0.5", "--replicates", "12",
                   "--seed", "3"])
        assert rc == 0
        summary = json.loads((out / "summary.json").read_text())
        assert summary["schema_version"] == 1
        cell = summary["cells"][0]
        for rate in cell["coverage"]:
            assert 0.0 <= rate <= 1.0
        assert len(cell["bias"]) == 3
        lines = (out / "replicates.csv").read_text().strip().split("\n")
        header = lines[0].split(",")
        assert len(lines) - 1 == 12 * 3  # one row per replicate and curve
        theta_col = header.index("theta_hat")
        assert all(np.isfinite(float(ln.split(",")[theta_col])) for ln in lines[1:])

    def test_zero_noise_single_replicate_bias_exactly_zero(self, tmp_path):
        out = tmp_path / "sim"
        rc = main(["simulate", "--output-dir", str(out), "--curves", "3",
                   "--samples", "51", "--sigma", "0", "--replicates", "1",
                   "--seed", "1", "--shifts", "0,0,0"])
        assert rc == 0
        summary = json.loads((out / "summary.json").read_text())
        assert summary["cells"][0]["bias"] == [0.0, 0.0]

    def test_even_samples_rejected(self, tmp_path, capsys):
        rc = main(["simulate", "--output-dir", str(tmp_path / "s"), "--samples", "100"])
        assert rc == 2
        capsys.readouterr()

    def test_pattern_file(self, tmp_path):
        n = 51
        t = np.arange(n) * T / n
        pfile = tmp_path / "pattern.csv"
        write_curves(pfile, [np.exp(np.cos(t))], names=["f"])
        out = tmp_path / "sim"
        rc = main(["simulate", "--output-dir", str(out), "--curves", "3",
                   "--samples", str(n), "--sigma", "0.1", "--replicates", "3",
                   "--seed", "2", "--pattern", f"file:{pfile}"])
        assert rc == 0
        summary = json.loads((out / "summary.json").read_text())
        assert summary["cells"][0]["rmse_estimator"] < 0.05


class TestCompareLandmark:
    def test_noiseless_grid_shifts_both_exact(self, tmp_path):
        n = 101
        t = np.arange(n) * T / n
        base = np.exp(np.cos(t))
        src = tmp_path / "in.csv"
        write_curves(src, [base, np.roll(base, 10), np.roll(base, -7)])
        out = tmp_path / "cmp"
        rc = main(["compare-landmark", "--input", str(src), "--output-dir", str(out),
                   "--period", repr(T)])
        assert rc == 0
        header, rows = read_csv(out / "comparison.csv")
        est = rows[:, header.index("theta_hat_estimator")]
        lm = rows[:, header.index("theta_hat_landmark")]
        expected = np.array([0.0, 10 * T / n, -7 * T / n])
        assert np.allclose(est, expected, atol=1e-6)
        assert np.allclose(lm, expected, atol=1e-6)

    def test_identical_curves_all_zero(self, tmp_path):
        n = 51
        t = np.arange(n) * T / n
        y = np.exp(np.cos(t))
        src = tmp_path / "in.csv"
        write_curves(src, [y, y])
        out = tmp_path / "cmp"
        rc = main(["compare-landmark", "--input", str(src), "--output-dir", str(out)])
        assert rc == 0
        _, rows = read_csv(out / "comparison.csv")
        assert np.array_equal(rows[:, 1], np.zeros(2))
        assert np.array_equal(rows[:, 2], np.zeros(2))

    def test_flat_curve_flagged_others_proceed(self, tmp_path):
        n = 51
        t = np.arange(n) * T / n
        src = tmp_path / "in.csv"
        write_curves(src, [np.exp(np.cos(t)), np.exp(np.cos(t - 0.5)), np.full(n, 2.0)])
        out = tmp_path / "cmp"
        rc = main(["compare-landmark", "--input", str(src), "--output-dir", str(out)])
        assert rc == 0
        header, rows = read_csv(out / "comparison.csv")
        ok = rows[:, header.index("landmark_ok")]
        assert list(ok) == [1.0, 1.0, 0.0]
        lm = rows[:, header.index("theta_hat_landmark")]
        assert np.isfinite(lm[1]) and np.isnan(lm[2])
        report = json.loads((out / "report.json").read_text())
        assert report["landmark_failures"] == 1

    def test_simulation_mode_reports_rmse(self, tmp_path):
        out = tmp_path / "cmp"
        rc = main(["compare-landmark", "--output-dir", str(out), "--curves", "5",
                   "--samples", "101", "--sigma", "1", "--replicates", "10",
                   "--seed", "14"])
        assert rc == 0
        report = json.loads((out / "report.json").read_text())
        assert report["mode"] == "simulation"
        assert report["rmse_estimator"] > 0.0
        assert report["rmse_landmark"] > 0.0
        _, rows = read_csv(out / "comparison.csv")
        assert rows.shape[0] == 10 * 5


class TestPatternRegistry:
    def test_patterns_available(self):
        assert set(PATTERNS) == {"sinc15", "cosine"}
