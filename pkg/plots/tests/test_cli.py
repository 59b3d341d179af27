import importlib.util
import shutil
import subprocess
import sys

import numpy as np
import pytest
from conftest import mk_record, power_law_records, write_records_csv

from latplots.cli import main
from latplots.figures import fit_series, histogram_table, series_label
from latplots.records import read_records

HAVE_BENCH_CLI = importlib.util.find_spec("ranlattice") is not None

needs_bench_cli = pytest.mark.skipif(
    not HAVE_BENCH_CLI, reason="benchmark CLI is not installed"
)


def bench_cli(*args):
    proc = subprocess.run(
        [sys.executable, "-m", "ranlattice", *args],
        capture_output=True,
        text=True,
        check=True,
    )
    return proc.stdout


def parsed(stdout):
    out = {}
    for line in stdout.splitlines():
        if "=" in line and "," not in line.split("=", 1)[0]:
            key, _, val = line.partition("=")
            out[key.strip()] = val.strip()
    return out


class TestHistogramCommand:
    def test_writes_figure(self, tmp_path, capsys):
        rng = np.random.default_rng(21)
        recs = [
            mk_record("random_z", rep=r, value=v)
            for r, v in enumerate(rng.normal(-4.0, 0.5, 50))
        ]
        path = write_records_csv(tmp_path / "h.csv", recs)
        out = tmp_path / "h.svg"
        assert main(["histogram", "--in", str(path), "--out", str(out)]) == 0
        assert f"wrote {out}" in capsys.readouterr().out
        assert out.exists()

    def test_unknown_estimator_exits(self, tmp_path):
        path = write_records_csv(
            tmp_path / "h.csv", [mk_record("random_z", value=-3.0)]
        )
        with pytest.raises(SystemExit, match="unknown estimator"):
            main(
                [
                    "histogram",
                    "--in",
                    str(path),
                    "--out",
                    str(tmp_path / "h.svg"),
                    "--estimators",
                    "sobol",
                ]
            )

    def test_missing_input_exits(self, tmp_path):
        with pytest.raises(SystemExit, match="error"):
            main(
                [
                    "histogram",
                    "--in",
                    str(tmp_path / "absent.csv"),
                    "--out",
                    str(tmp_path / "h.svg"),
                ]
            )


class TestConvergenceCommand:
    def test_writes_figure_and_prints_slopes(self, tmp_path, capsys):
        recs = power_law_records("alg1", "f2", slope=-2.0)
        recs += power_law_records("mc", "f2", slope=-1.0)
        path = write_records_csv(tmp_path / "c.csv", recs)
        out = tmp_path / "c.svg"
        rc = main(["convergence", "--in", str(path), "--out", str(out)])
        assert rc == 0
        text = capsys.readouterr().out
        assert out.exists()
        lines = [l for l in text.splitlines() if l.startswith("fn=")]
        assert len(lines) == 2
        assert "fn=f2 estimator=alg1 slope=-2.000000" in text
        assert "fn=f2 estimator=mc slope=-1.000000" in text

    def test_too_few_budgets_exits(self, tmp_path):
        path = write_records_csv(
            tmp_path / "c.csv", power_law_records(grid=(32, 64))
        )
        with pytest.raises(SystemExit, match="three budgets"):
            main(
                [
                    "convergence",
                    "--in",
                    str(path),
                    "--out",
                    str(tmp_path / "c.svg"),
                ]
            )


class TestEntryPoints:
    def test_module_help(self):
        proc = subprocess.run(
            [sys.executable, "-m", "latplots", "--help"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert "histogram" in proc.stdout

    @pytest.mark.skipif(
        shutil.which("plots") is None, reason="console script not on PATH"
    )
    def test_console_script(self):
        proc = subprocess.run(
            ["plots", "--help"], capture_output=True, text=True
        )
        assert proc.returncode == 0

    def test_missing_subcommand_fails(self):
        proc = subprocess.run(
            [sys.executable, "-m", "latplots"], capture_output=True, text=True
        )
        assert proc.returncode != 0


@pytest.fixture(scope="module")
def conv_csv(tmp_path_factory):
    path = tmp_path_factory.mktemp("bench") / "conv.csv"
    bench_cli(
        "conv-experiment",
        "--m-grid",
        "32,64,128,256",
        "--reps",
        "10",
        "--seed",
        "5",
        "--workers",
        "2",
        "--out",
        str(path),
    )
    return path


@pytest.fixture(scope="module")
def hist_csv(tmp_path_factory):
    path = tmp_path_factory.mktemp("bench") / "hist.csv"
    bench_cli(
        "hist-experiment", "--trials", "60", "--seed", "9", "--out", str(path)
    )
    return path


@needs_bench_cli
class TestAgainstBenchOutput:
    """Round trips on CSVs produced by the benchmark CLI."""

    def test_histogram_frequencies_sum_to_one(self, hist_csv):
        panels = histogram_table(read_records(hist_csv))
        assert len(panels) == 3
        for p in panels:
            assert abs(p.freqs.sum() - 1.0) <= 1e-12

    def test_histogram_figure_renders(self, hist_csv, tmp_path):
        out = tmp_path / "hist.svg"
        assert main(["histogram", "--in", str(hist_csv), "--out", str(out)]) == 0
        assert "<svg" in out.read_text()[:1000]

    def test_slopes_match_bench_fit(self, conv_csv):
        records = read_records(conv_csv)
        for estimator in ("alg1", "cbc_rand", "mc"):
            for fn in ("f1", "f2", "f3", "f4"):
                got = fit_series(records, estimator, fn, 32, 256)
                want = parsed(
                    bench_cli(
                        "fit",
                        "--in",
                        str(conv_csv),
                        "--estimator",
                        estimator,
                        "--fn",
                        fn,
                        "--m-min",
                        "32",
                        "--m-max",
                        "256",
                    )
                )
                assert got.slope == pytest.approx(float(want["slope"]), abs=1e-9)
                annotated = float(
                    series_label(got).split("slope ")[1].rstrip(")")
                )
                assert annotated == pytest.approx(float(want["slope"]), abs=1e-3)

    def test_convergence_figure_renders(self, conv_csv, tmp_path):
        out = tmp_path / "conv.svg"
        rc = main(
            [
                "convergence",
                "--in",
                str(conv_csv),
                "--out",
                str(out),
                "--fns",
                "f1,f2,f3,f4",
                "--m-min",
                "32",
                "--m-max",
                "256",
            ]
        )
        assert rc == 0
        assert out.exists()
